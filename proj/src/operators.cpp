#include "vmb/operators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "vmb/ladder.hpp"

namespace vmb {

namespace {

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

int degree(const SpectralGrid& g, std::size_t h) {
  const auto m = g.hmulti(h);
  return m[0] + m[1] + m[2];
}

template <class T>
std::array<T, 5> kcomp(int nv, const T* c) {
  const std::size_t nv2 = static_cast<std::size_t>(nv) * nv;
  const std::size_t e[3] = {nv2, static_cast<std::size_t>(nv), 1};
  return {c[0], c[e[0]], c[e[1]], c[e[2]], (c[2 * e[0]] + c[2 * e[1]] + c[2 * e[2]]) * kInvSqrt3};
}

// removes the first `dim` kernel components (5: full L kernel, 4: broken fixture, 1: Lsf)
template <class T>
void remove_kernel(int nv, int dim, T* c) {
  const std::size_t nv2 = static_cast<std::size_t>(nv) * nv;
  const std::size_t e[3] = {nv2, static_cast<std::size_t>(nv), 1};
  if (dim == 1) {
    c[0] = T{};
    return;
  }
  const auto k = kcomp(nv, c);
  c[0] = T{};
  for (int i = 0; i < 3; ++i) c[e[i]] = T{};
  if (dim == 5)
    for (int i = 0; i < 3; ++i) c[2 * e[i]] -= k[4] * kInvSqrt3;
}

int kernel_dim(const CollisionBackend& b, Which w) {
  if (w == Which::Lsf) return 1;
  return b.kind == CollisionBackend::Kind::broken_kernel ? 4 : 5;
}

void apply_generic(const CollisionBackend& b, const SpectralGrid& g, Which w, const cplx* in, cplx* out) {
  const std::size_t nh = g.nh();
  std::copy(in, in + nh, out);
  remove_kernel(g.nv, kernel_dim(b, w), out);
  if (b.kind == CollisionBackend::Kind::spectral_diagonal)
    for (std::size_t h = 0; h < nh; ++h) out[h] *= b.rate(degree(g, h));
}

DistributionField map_modes(const DistributionField& f, const std::function<void(const cplx*, cplx*)>& fn) {
  DistributionField out(f.grid);
  for (std::size_t k = 0; k < f.grid.nk(); ++k) fn(f.mode_ptr(k), out.mode_ptr(k));
  return out;
}

const char* kKernelNames[5] = {"mass (1)", "momentum (v_1)", "momentum (v_2)", "momentum (v_3)", "energy (|v|^2)"};

}  // namespace

CollisionBackend CollisionBackend::spectral_diagonal(std::vector<double> lambda) {
  if (lambda.size() < 2) throw std::invalid_argument("spectral-diagonal backend needs lambda(n) for n >= 1");
  for (std::size_t n = 1; n < lambda.size(); ++n)
    if (!(lambda[n] > 0.0)) throw std::invalid_argument("spectral-diagonal backend needs lambda(n) > 0");
  CollisionBackend b;
  b.kind = Kind::spectral_diagonal;
  b.lambda = std::move(lambda);
  return b;
}

CollisionBackend CollisionBackend::spectral_linear(int max_degree) {
  std::vector<double> l(static_cast<std::size_t>(max_degree) + 1);
  for (int n = 0; n <= max_degree; ++n) l[n] = std::max(1, n);
  return spectral_diagonal(std::move(l));
}

CollisionBackend CollisionBackend::broken_kernel() {
  CollisionBackend b;
  b.kind = Kind::broken_kernel;
  return b;
}

CollisionBackend CollisionBackend::parse(const std::string& name, const std::vector<double>& lambda) {
  if (name == "bgk") return bgk();
  if (name == "spectral-diagonal") return lambda.empty() ? spectral_linear() : spectral_diagonal(lambda);
  if (name == "broken-kernel") return broken_kernel();
  throw std::invalid_argument("unknown collision backend '" + name + "'");
}

double CollisionBackend::rate(int degree) const {
  if (kind != Kind::spectral_diagonal) return 1.0;
  const std::size_t n = std::min(static_cast<std::size_t>(std::max(degree, 0)), lambda.size() - 1);
  return lambda[n];
}

std::string CollisionBackend::name() const {
  switch (kind) {
    case Kind::bgk:
      return "bgk";
    case Kind::spectral_diagonal:
      return "spectral-diagonal";
    case Kind::broken_kernel:
      return "broken-kernel";
  }
  return "?";
}

std::array<cplx, 5> kernel_components(const SpectralGrid& g, const cplx* c) { return kcomp(g.nv, c); }

void add_kernel_vector(const SpectralGrid& g, int m, cplx amp, cplx* c) {
  const std::size_t e[3] = {static_cast<std::size_t>(g.nv) * g.nv, static_cast<std::size_t>(g.nv), 1};
  if (m == 0) {
    c[0] += amp;
  } else if (m <= 3) {
    c[e[m - 1]] += amp;
  } else {
    for (int i = 0; i < 3; ++i) c[2 * e[i]] += amp * kInvSqrt3;
  }
}

void project_L_mode(const SpectralGrid& g, const cplx* in, cplx* out) {
  const auto k = kernel_components(g, in);
  std::fill(out, out + g.nh(), cplx{});
  for (int m = 0; m < 5; ++m) add_kernel_vector(g, m, k[m], out);
}

void project_Lsf_mode(const SpectralGrid& g, const cplx* in, cplx* out) {
  std::fill(out, out + g.nh(), cplx{});
  out[0] = in[0];
}

void apply_L_mode(const CollisionBackend& b, const SpectralGrid& g, const cplx* in, cplx* out) {
  apply_generic(b, g, Which::L, in, out);
}

void apply_Lsf_mode(const CollisionBackend& b, const SpectralGrid& g, const cplx* in, cplx* out) {
  apply_generic(b, g, Which::Lsf, in, out);
}

DistributionField project_P_L(const DistributionField& f) {
  return map_modes(f, [&](const cplx* a, cplx* o) { project_L_mode(f.grid, a, o); });
}

DistributionField project_P_Lsf(const DistributionField& g) {
  return map_modes(g, [&](const cplx* a, cplx* o) { project_Lsf_mode(g.grid, a, o); });
}

DistributionField apply_L(const CollisionBackend& b, const DistributionField& f) {
  return map_modes(f, [&](const cplx* a, cplx* o) { apply_L_mode(b, f.grid, a, o); });
}

DistributionField apply_Lsf(const CollisionBackend& b, const DistributionField& g) {
  return map_modes(g, [&](const cplx* a, cplx* o) { apply_Lsf_mode(b, g.grid, a, o); });
}

MomentSet moments(const CollisionBackend& b, const DistributionField& f, const DistributionField& g) {
  require_same(f.grid, g.grid, "moments");
  const SpectralGrid& gr = f.grid;
  MomentSet m{ScalarField(gr), ScalarField(gr), ScalarField(gr), VectorField3(gr), VectorField3(gr), VectorField3(gr)};
  const std::size_t e[3] = {static_cast<std::size_t>(gr.nv) * gr.nv, static_cast<std::size_t>(gr.nv), 1};
  const double th = std::sqrt(2.0) / 3.0;
  // v-tilde = v / lambda(1) solves Lsf v-tilde = v with zero mean
  const double jt_scale = 1.0 / b.rate(1);
  for (std::size_t k = 0; k < gr.nk(); ++k) {
    const cplx* fk = f.mode_ptr(k);
    const cplx* gk = g.mode_ptr(k);
    m.rho.c[k] = fk[0];
    m.theta.c[k] = th * (fk[2 * e[0]] + fk[2 * e[1]] + fk[2 * e[2]]);
    m.n.c[k] = gk[0];
    for (int i = 0; i < 3; ++i) {
      m.u.c[i][k] = fk[e[i]];
      m.j.c[i][k] = gk[e[i]];
      m.jt.c[i][k] = jt_scale * gk[e[i]];
    }
  }
  return m;
}

DistributionField solve_inverse_L(const CollisionBackend& b, const DistributionField& rhs, Which which, double tol) {
  const SpectralGrid& g = rhs.grid;
  double scale = 0.0;
  for (const auto& v : rhs.c) scale = std::max(scale, std::abs(v));
  const double lim = tol * std::max(1.0, scale);
  const int dim = kernel_dim(b, which);
  for (std::size_t k = 0; k < g.nk(); ++k) {
    const auto kc = kernel_components(g, rhs.mode_ptr(k));
    for (int m = 0; m < dim; ++m)
      if (std::abs(kc[m]) > lim) {
        std::ostringstream os;
        os << "solve_inverse_L: right-hand side not orthogonal to the kernel of "
           << (which == Which::L ? "L" : "Lsf") << "; moment " << kKernelNames[m] << " = " << std::abs(kc[m]);
        throw PreconditionError(os.str());
      }
  }
  return map_modes(rhs, [&](const cplx* a, cplx* o) {
    const std::size_t nh = g.nh();
    std::copy(a, a + nh, o);
    remove_kernel(g.nv, dim, o);
    for (std::size_t h = 0; h < nh; ++h) o[h] /= b.rate(degree(g, h));
  });
}

std::vector<double> project_function(int nv, double (*fn)(double, double, double, const void*), const void* ctx) {
  const int q = nv + 4;
  const auto c = make_collocation(nv, q);
  std::vector<double> vals(static_cast<std::size_t>(q) * q * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int d = 0; d < q; ++d)
        vals[(static_cast<std::size_t>(a) * q + b) * q + d] = fn(c.gh.nodes[a], c.gh.nodes[b], c.gh.nodes[d], ctx);
  std::vector<double> out(static_cast<std::size_t>(nv) * nv * nv), scratch;
  apply_tensor(&c.to_coef, &c.to_coef, &c.to_coef, {q, q, q}, 1, vals.data(), out.data(), scratch);
  return out;
}

TransportCoefficients transport_coefficients(const CollisionBackend& b, int nv) {
  SpectralGrid g;
  g.dx = 1;
  g.nx = 4;
  g.nv = nv;
  g.validate();
  auto as_field = [&](const std::vector<double>& c) {
    DistributionField f(g);
    for (std::size_t h = 0; h < g.nh(); ++h) f.at(0, h) = c[h];
    return f;
  };
  auto dot0 = [&](const DistributionField& a, const DistributionField& c) {
    double s = 0.0;
    for (std::size_t h = 0; h < g.nh(); ++h) s += (std::conj(a.at(0, h)) * c.at(0, h)).real();
    return s;
  };
  struct Ctx {
    int i, j;
  };
  TransportCoefficients tc;
  double sum_a = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Ctx ctx{i, j};
      auto a = as_field(project_function(
          nv,
          [](double x, double y, double z, const void* p) {
            const auto* c = static_cast<const Ctx*>(p);
            const double v[3] = {x, y, z};
            return v[c->i] * v[c->j] - (c->i == c->j ? (x * x + y * y + z * z) / 3.0 : 0.0);
          },
          &ctx));
      sum_a += dot0(a, solve_inverse_L(b, a, Which::L));
    }
  double sum_b = 0.0, sum_v = 0.0;
  for (int i = 0; i < 3; ++i) {
    Ctx ctx{i, i};
    auto bi = as_field(project_function(
        nv,
        [](double x, double y, double z, const void* p) {
          const double v[3] = {x, y, z};
          return 0.5 * v[static_cast<const Ctx*>(p)->i] * (x * x + y * y + z * z - 5.0);
        },
        &ctx));
    sum_b += dot0(bi, solve_inverse_L(b, bi, Which::L));
    auto vi = as_field(project_function(
        nv,
        [](double x, double y, double z, const void* p) {
          const double v[3] = {x, y, z};
          return v[static_cast<const Ctx*>(p)->i];
        },
        &ctx));
    sum_v += dot0(solve_inverse_L(b, vi, Which::Lsf), vi);
  }
  tc.nu = sum_a / 15.0;
  tc.nu_limit = sum_a / 10.0;
  tc.kappa = 2.0 * sum_b / 15.0;
  tc.sigma = sum_v / 3.0;
  return tc;
}

// ---------------------------------------------------------------------------------------------

Collocator::Collocator(const SpectralGrid& g, int q)
    : grid_(g), xs_(g), col_(make_collocation(g.nv, q > 0 ? q : (3 * g.nv - 1) / 2)) {}

void Collocator::product_point(const double* a, const double* b, double* out) {
  const int n = grid_.nv, q = col_.q;
  const std::size_t nq = static_cast<std::size_t>(q) * q * q;
  na_.resize(nq);
  nb_.resize(nq);
  apply_tensor(&col_.to_nodes, &col_.to_nodes, &col_.to_nodes, {n, n, n}, 1, a, na_.data(), scratch_);
  if (b == a) {
    for (std::size_t i = 0; i < nq; ++i) na_[i] *= na_[i];
  } else {
    apply_tensor(&col_.to_nodes, &col_.to_nodes, &col_.to_nodes, {n, n, n}, 1, b, nb_.data(), scratch_);
    for (std::size_t i = 0; i < nq; ++i) na_[i] *= nb_[i];
  }
  apply_tensor(&col_.to_coef, &col_.to_coef, &col_.to_coef, {q, q, q}, 1, na_.data(), out, scratch_);
}

std::vector<double> Collocator::physical(const cplx* spec, std::size_t count) {
  buf_.resize(xs_.npts() * count);
  xs_.to_physical(spec, count, buf_.data());
  std::vector<double> out(buf_.size());
  for (std::size_t i = 0; i < buf_.size(); ++i) out[i] = buf_[i].real();
  return out;
}

void Collocator::spectral(const std::vector<double>& phys, std::size_t count, cplx* spec) {
  buf_.resize(phys.size());
  for (std::size_t i = 0; i < phys.size(); ++i) buf_[i] = phys[i];
  xs_.to_spectral(buf_.data(), count, spec);
}

void Collocator::nonlinear(const DistributionField& f, const DistributionField& g, const VectorField3* E,
                           const VectorField3* B, double alpha, double beta, bool gamma, DistributionField& nf,
                           DistributionField& ng) {
  require_same(f.grid, grid_, "Collocator");
  require_same(g.grid, grid_, "Collocator");
  const int nv = grid_.nv;
  const std::size_t nh = grid_.nh(), np = xs_.npts();
  const bool fields = E != nullptr && B != nullptr;
  const auto pf = physical(f.c.data(), nh);
  const auto pg = physical(g.c.data(), nh);
  std::vector<double> pe;
  if (fields) {
    std::vector<cplx> eb(grid_.nk() * 6);
    for (std::size_t k = 0; k < grid_.nk(); ++k)
      for (int i = 0; i < 3; ++i) {
        eb[k * 6 + i] = E->c[i][k];
        eb[k * 6 + 3 + i] = B->c[i][k];
      }
    pe = physical(eb.data(), 6);
  }
  std::vector<double> of(np * nh, 0.0), og(np * nh, 0.0), tmp(nh);
  for (std::size_t p = 0; p < np; ++p) {
    const double* fr = pf.data() + p * nh;
    const double* gr = pg.data() + p * nh;
    double* o1 = of.data() + p * nh;
    double* o2 = og.data() + p * nh;
    if (fields) {
      const double* eb = pe.data() + p * 6;
      for (int i = 0; i < 3; ++i) {
        if (eb[i] != 0.0) {
          ladder::raise(nv, i, gr, o1, alpha * eb[i]);
          ladder::raise(nv, i, fr, o2, alpha * eb[i]);
        }
        if (eb[3 + i] != 0.0) {
          ladder::rot(nv, i, gr, o1, -beta * eb[3 + i]);
          ladder::rot(nv, i, fr, o2, -beta * eb[3 + i]);
        }
      }
    }
    if (gamma) {
      // node values of f and g, then 1/2 f^2 and g f back to coefficients
      const int q = col_.q;
      const std::size_t nq = static_cast<std::size_t>(q) * q * q;
      na_.resize(nq);
      nb_.resize(nq);
      apply_tensor(&col_.to_nodes, &col_.to_nodes, &col_.to_nodes, {nv, nv, nv}, 1, fr, na_.data(), scratch_);
      apply_tensor(&col_.to_nodes, &col_.to_nodes, &col_.to_nodes, {nv, nv, nv}, 1, gr, nb_.data(), scratch_);
      for (std::size_t i = 0; i < nq; ++i) nb_[i] *= na_[i];
      for (std::size_t i = 0; i < nq; ++i) na_[i] *= 0.5 * na_[i];
      apply_tensor(&col_.to_coef, &col_.to_coef, &col_.to_coef, {q, q, q}, 1, na_.data(), tmp.data(), scratch_);
      remove_kernel(nv, 5, tmp.data());
      for (std::size_t h = 0; h < nh; ++h) o1[h] += tmp[h];
      apply_tensor(&col_.to_coef, &col_.to_coef, &col_.to_coef, {q, q, q}, 1, nb_.data(), tmp.data(), scratch_);
      remove_kernel(nv, 1, tmp.data());
      for (std::size_t h = 0; h < nh; ++h) o2[h] += tmp[h];
    }
  }
  nf = DistributionField(grid_);
  ng = DistributionField(grid_);
  spectral(of, nh, nf.c.data());
  spectral(og, nh, ng.c.data());
}

DistributionField Collocator::gamma_L(const DistributionField& f, const DistributionField& h) {
  require_same(f.grid, grid_, "gamma_L");
  require_same(h.grid, grid_, "gamma_L");
  const std::size_t nh = grid_.nh(), np = xs_.npts();
  const bool same = &f == &h;
  const auto pf = physical(f.c.data(), nh);
  const auto ph = same ? std::vector<double>{} : physical(h.c.data(), nh);
  std::vector<double> out(np * nh);
  for (std::size_t p = 0; p < np; ++p) {
    double* o = out.data() + p * nh;
    const double* a = pf.data() + p * nh;
    product_point(a, same ? a : ph.data() + p * nh, o);
    remove_kernel(grid_.nv, 5, o);
    for (std::size_t i = 0; i < nh; ++i) o[i] *= 0.5;
  }
  DistributionField r(grid_);
  spectral(out, nh, r.c.data());
  return r;
}

DistributionField Collocator::gamma_Lsf(const DistributionField& g, const DistributionField& f) {
  require_same(f.grid, grid_, "gamma_Lsf");
  require_same(g.grid, grid_, "gamma_Lsf");
  const std::size_t nh = grid_.nh(), np = xs_.npts();
  const auto pg = physical(g.c.data(), nh);
  const auto pf = physical(f.c.data(), nh);
  std::vector<double> out(np * nh);
  for (std::size_t p = 0; p < np; ++p) {
    double* o = out.data() + p * nh;
    product_point(pg.data() + p * nh, pf.data() + p * nh, o);
    remove_kernel(grid_.nv, 1, o);
  }
  DistributionField r(grid_);
  spectral(out, nh, r.c.data());
  return r;
}

// ---------------------------------------------------------------------------------------------

namespace {

DistributionField random_field(const SpectralGrid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DistributionField f(g);
  for (std::size_t k = 0; k < g.nk(); ++k) {
    const double decay = 1.0 / (1.0 + g.k2(k));
    for (std::size_t h = 0; h < g.nh(); ++h) {
      const double w = decay / (1.0 + degree(g, h));
      f.at(k, h) = cplx(u(rng), u(rng)) * w;
    }
  }
  symmetrize(f);
  return f;
}

double norm(const DistributionField& f) { return std::sqrt(inner_product(f, f)); }

double max_kernel_defect(const DistributionField& f, int dim) {
  double m = 0.0;
  for (std::size_t k = 0; k < f.grid.nk(); ++k) {
    const auto kc = kernel_components(f.grid, f.mode_ptr(k));
    for (int i = 0; i < dim; ++i) m = std::max(m, std::abs(kc[i]));
  }
  return m;
}

}  // namespace

std::vector<PropertyResult> check_collision(const CollisionBackend& b, int nv, unsigned seed) {
  SpectralGrid g;
  g.dx = 1;
  g.nx = 8;
  g.nv = nv;
  g.validate();
  std::mt19937_64 rng(seed);
  std::vector<PropertyResult> out;
  const int samples = 100;

  {
    PropertyResult r{"self-adjointness of 𝓛, 𝖫 and both projections", true, 0.0, 1e-12, ""};
    for (int s = 0; s < 10; ++s) {
      auto f = random_field(g, rng), h = random_field(g, rng);
      const double sc = norm(f) * norm(h);
      const double d[4] = {inner_product(apply_L(b, f), h) - inner_product(f, apply_L(b, h)),
                           inner_product(apply_Lsf(b, f), h) - inner_product(f, apply_Lsf(b, h)),
                           inner_product(project_P_L(f), h) - inner_product(f, project_P_L(h)),
                           inner_product(project_P_Lsf(f), h) - inner_product(f, project_P_Lsf(h))};
      for (double x : d) r.value = std::max(r.value, std::abs(x) / sc);
    }
    r.passed = r.value <= r.tol;
    out.push_back(r);
  }
  {
    // L must annihilate each kernel vector and nothing else
    PropertyResult r{"kernel space of 𝓛", true, 0.0, 1e-12, ""};
    for (int m = 0; m < 5; ++m) {
      DistributionField phi(g);
      add_kernel_vector(g, m, 1.0, phi.mode_ptr(0));
      const double d = norm(apply_L(b, phi)) / norm(phi);
      if (d > r.value) r.value = d;
      if (d > r.tol) r.detail = std::string("L does not annihilate ") + kKernelNames[m];
    }
    double min_rate = 1e300;
    for (int s = 0; s < 10; ++s) {
      auto f = random_field(g, rng);
      auto fp = f;
      for (std::size_t k = 0; k < g.nk(); ++k) remove_kernel(nv, 5, fp.mode_ptr(k));
      min_rate = std::min(min_rate, inner_product(apply_L(b, fp), fp) / inner_product(fp, fp));
    }
    r.passed = r.value <= r.tol && min_rate > 1e-12;
    if (!(min_rate > 1e-12)) r.detail = "L vanishes on the kernel complement";
    out.push_back(r);
  }
  {
    PropertyResult r{"kernel space of 𝖫", true, 0.0, 1e-12, ""};
    DistributionField one(g);
    one.at(0, 0) = 1.0;
    r.value = norm(apply_Lsf(b, one)) / norm(one);
    double min_rate = 1e300;
    for (int s = 0; s < 10; ++s) {
      auto f = random_field(g, rng);
      for (std::size_t k = 0; k < g.nk(); ++k) f.at(k, 0) = 0.0;
      min_rate = std::min(min_rate, inner_product(apply_Lsf(b, f), f) / inner_product(f, f));
    }
    r.passed = r.value <= r.tol && min_rate > 1e-12;
    out.push_back(r);
  }
  {
    // <L f, f> >= c ||f - P f||^2 with c >= 1
    PropertyResult r{"local coercivity", true, 1e300, 1.0 - 1e-12, ""};
    for (int s = 0; s < samples; ++s) {
      auto f = random_field(g, rng);
      auto pf = project_P_L(f);
      DistributionField perp(g);
      for (std::size_t i = 0; i < f.c.size(); ++i) perp.c[i] = f.c[i] - pf.c[i];
      const double ratio = inner_product(apply_L(b, f), f) / inner_product(perp, perp);
      r.value = std::min(r.value, ratio);
    }
    r.passed = r.value >= r.tol;
    r.detail = "measured coercivity constant";
    out.push_back(r);
  }
  Collocator col(g);
  {
    PropertyResult r{"Γ(g,g) ∈ Ker(𝓛)⊥", true, 0.0, 1e-12, ""};
    for (int s = 0; s < 3; ++s) {
      auto f = random_field(g, rng), h = random_field(g, rng);
      const double sc = norm(f) * norm(h) / g.volume();
      r.value = std::max(r.value, max_kernel_defect(col.gamma_L(f, f), 5) / sc);
      r.value = std::max(r.value, max_kernel_defect(col.gamma_L(f, h), 5) / sc);
    }
    r.passed = r.value <= r.tol;
    out.push_back(r);
  }
  {
    PropertyResult r{"Γ(g,h) ∈ Ker(𝖫)⊥", true, 0.0, 1e-12, ""};
    for (int s = 0; s < 3; ++s) {
      auto f = random_field(g, rng), h = random_field(g, rng);
      const double sc = norm(f) * norm(h) / g.volume();
      r.value = std::max(r.value, max_kernel_defect(col.gamma_Lsf(f, h), 1) / sc);
    }
    r.passed = r.value <= r.tol;
    out.push_back(r);
  }
  // moment identities on macroscopic data: first moment of Γ_Lsf(n, Pf) is n u and
  // the A-moment of Γ_L(Pf, Pf) is u⊗u - |u|^2/3 I
  {
    PropertyResult r1{"first moment of Γ_𝖫(n, Pf) equals n u", true, 0.0, 1e-12, ""};
    PropertyResult r2{"A-moment of Γ_𝓛(Pf, Pf) equals u⊗u − |u|²/3 I", true, 0.0, 1e-12, ""};
    auto f = project_P_L(random_field(g, rng));
    auto gr = project_P_Lsf(random_field(g, rng));
    const auto m = moments(b, f, gr);
    const auto g1 = col.gamma_Lsf(gr, f);
    const auto g2 = col.gamma_L(f, f);
    const std::size_t nk = g.nk();
    // oracle: dealiased pointwise products of the moment fields
    std::vector<cplx> mf(nk * 4);
    for (std::size_t k = 0; k < nk; ++k) {
      mf[k * 4] = m.n.c[k];
      for (int i = 0; i < 3; ++i) mf[k * 4 + 1 + i] = m.u.c[i][k];
    }
    const auto pm = col.physical(mf.data(), 4);
    const std::size_t np = col.xspace().npts();
    std::vector<double> prod(np * 9);
    for (std::size_t p = 0; p < np; ++p) {
      const double* q = pm.data() + p * 4;
      const double u2 = q[1] * q[1] + q[2] * q[2] + q[3] * q[3];
      for (int i = 0; i < 3; ++i) prod[p * 9 + i] = q[0] * q[1 + i];
      prod[p * 9 + 3] = q[1] * q[2];
      prod[p * 9 + 4] = q[1] * q[3];
      prod[p * 9 + 5] = q[2] * q[3];
      for (int i = 0; i < 3; ++i) prod[p * 9 + 6 + i] = q[1 + i] * q[1 + i] - u2 / 3.0;
    }
    std::vector<cplx> ps(nk * 9);
    col.spectral(prod, 9, ps.data());
    const std::size_t e[3] = {static_cast<std::size_t>(nv) * nv, static_cast<std::size_t>(nv), 1};
    const double s2 = std::sqrt(2.0);
    double sc = 0.0;
    for (const auto& v : ps) sc = std::max(sc, std::abs(v));
    sc = std::max(sc, 1e-300);
    for (std::size_t k = 0; k < nk; ++k) {
      for (int i = 0; i < 3; ++i) r1.value = std::max(r1.value, std::abs(g1.at(k, e[i]) - ps[k * 9 + i]) / sc);
      // <A_ij, G> for i != j reads the psi_{e_i+e_j} coefficient
      const cplx off[3] = {g2.at(k, e[0] + e[1]), g2.at(k, e[0] + e[2]), g2.at(k, e[1] + e[2])};
      for (int i = 0; i < 3; ++i) r2.value = std::max(r2.value, std::abs(off[i] - ps[k * 9 + 3 + i]) / sc);
      // <A_ii, G> = sqrt2 (G_{2e_i} - sum_l G_{2e_l} / 3)
      const cplx tr = (g2.at(k, 2 * e[0]) + g2.at(k, 2 * e[1]) + g2.at(k, 2 * e[2])) / 3.0;
      for (int i = 0; i < 3; ++i)
        r2.value = std::max(r2.value, std::abs(s2 * (g2.at(k, 2 * e[i]) - tr) - ps[k * 9 + 6 + i]) / sc);
    }
    r1.passed = r1.value <= r1.tol;
    r2.passed = r2.value <= r2.tol;
    out.push_back(r1);
    out.push_back(r2);
  }
  return out;
}

}  // namespace vmb
