#include "vmb/phase_space.hpp"

#include <cmath>

#include "vmb/ladder.hpp"
#include "vmb/lambda_weight.hpp"

namespace vmb {

void SpectralGrid::validate() const {
  if (dx < 1 || dx > 3) throw std::invalid_argument("grid: d_x must be 1, 2 or 3");
  if (nx < 4 || nx % 2 != 0) throw std::invalid_argument("grid: N_x must be even and >= 4");
  if (nv < 4 || nv > 128) throw std::invalid_argument("grid: N_v must lie in [4, 128]");
  if (!(lx > 0.0)) throw std::invalid_argument("grid: L_x must be positive");
}

std::size_t SpectralGrid::nk() const {
  std::size_t n = 1;
  for (int i = 0; i < dx; ++i) n *= static_cast<std::size_t>(nx);
  return n;
}

double SpectralGrid::volume() const { return std::pow(lx, dx); }

std::array<int, 3> SpectralGrid::mode_index(std::size_t mode) const {
  std::array<int, 3> m{0, 0, 0};
  for (int i = dx - 1; i >= 0; --i) {
    int v = static_cast<int>(mode % nx);
    mode /= nx;
    if (v >= nx / 2) v -= nx;
    m[i] = v;
  }
  return m;
}

std::array<double, 3> SpectralGrid::kvec(std::size_t mode) const {
  const auto m = mode_index(mode);
  const double s = 2.0 * M_PI / lx;
  return {s * m[0], s * m[1], s * m[2]};
}

double SpectralGrid::k2(std::size_t mode) const {
  const auto k = kvec(mode);
  return k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
}

bool SpectralGrid::active(std::size_t mode) const {
  const auto m = mode_index(mode);
  for (int i = 0; i < dx; ++i)
    if (m[i] == -nx / 2) return false;
  return true;
}

std::size_t SpectralGrid::mode_of(const std::array<int, 3>& m) const {
  std::size_t idx = 0;
  for (int i = 0; i < dx; ++i) {
    int v = ((m[i] % nx) + nx) % nx;
    idx = idx * nx + v;
  }
  return idx;
}

std::size_t SpectralGrid::conj_mode(std::size_t mode) const {
  auto m = mode_index(mode);
  for (auto& v : m) v = -v;
  return mode_of(m);
}

DistributionField hermite_mode(const SpectralGrid& g, int n1, int n2, int n3, const ScalarField& profile) {
  require_same(g, profile.grid, "hermite_mode");
  DistributionField f(g);
  const std::size_t h = g.hidx(n1, n2, n3);
  for (std::size_t k = 0; k < g.nk(); ++k) f.at(k, h) = profile.c[k];
  return f;
}

ScalarField constant_field(const SpectralGrid& g, double value) {
  ScalarField s(g);
  s.c[0] = value;
  return s;
}

ScalarField cos_mode(const SpectralGrid& g, const std::array<int, 3>& m, double a) {
  ScalarField s(g);
  std::array<int, 3> mm = m;
  for (auto& v : mm) v = -v;
  if (g.mode_of(m) == g.mode_of(mm)) {
    s.c[g.mode_of(m)] += a;
  } else {
    s.c[g.mode_of(m)] += 0.5 * a;
    s.c[g.mode_of(mm)] += 0.5 * a;
  }
  return s;
}

ScalarField sin_mode(const SpectralGrid& g, const std::array<int, 3>& m, double a) {
  ScalarField s(g);
  std::array<int, 3> mm = m;
  for (auto& v : mm) v = -v;
  if (g.mode_of(m) != g.mode_of(mm)) {
    s.c[g.mode_of(m)] += cplx(0.0, -0.5 * a);
    s.c[g.mode_of(mm)] += cplx(0.0, 0.5 * a);
  }
  return s;
}

double inner_product(const DistributionField& f, const DistributionField& h) {
  require_same(f.grid, h.grid, "inner_product");
  double s = 0.0;
  for (std::size_t i = 0; i < f.c.size(); ++i) s += std::real(std::conj(f.c[i]) * h.c[i]);
  return s * f.grid.volume();
}

double inner_product(const ScalarField& a, const ScalarField& b) {
  require_same(a.grid, b.grid, "inner_product");
  double s = 0.0;
  for (std::size_t i = 0; i < a.c.size(); ++i) s += std::real(std::conj(a.c[i]) * b.c[i]);
  return s * a.grid.volume();
}

double inner_product(const VectorField3& a, const VectorField3& b) {
  require_same(a.grid, b.grid, "inner_product");
  double s = 0.0;
  for (int d = 0; d < 3; ++d)
    for (std::size_t i = 0; i < a.c[d].size(); ++i) s += std::real(std::conj(a.c[d][i]) * b.c[d][i]);
  return s * a.grid.volume();
}

NormMode parse_norm_mode(const std::string& s) {
  if (s == "x-only" || s == "x") return NormMode::x_only;
  if (s == "mixed") return NormMode::mixed;
  if (s == "lambda-x") return NormMode::lambda_x;
  if (s == "lambda-weighted" || s == "lambda") return NormMode::lambda_mixed;
  throw std::invalid_argument("unknown norm mode: " + s);
}

double falling(int n, int j) {
  double r = 1.0;
  for (int i = 0; i < j; ++i) r *= static_cast<double>(n - i);
  return r;
}

namespace {

double kpow(double k2, int i) { return i == 0 ? 1.0 : std::pow(k2, i); }

}  // namespace

double vderiv_mode_sq(const SpectralGrid& g, const cplx* c, int j, bool lambda) {
  const std::size_t nh = g.nh();
  if (!lambda) {
    double s = 0.0;
    for (std::size_t h = 0; h < nh; ++h) {
      const auto n = g.hmulti(h);
      const double w = falling(n[0] + n[1] + n[2], j);
      if (w != 0.0) s += w * std::norm(c[h]);
    }
    return s;
  }
  const auto& lw = LambdaWeight::shared(g.nv);
  if (j == 0) return lw.quad_form(c);
  // all multi-indices m with |m| = j, multiplicity j!/m!, derivatives stacked for one batched form
  std::vector<double> mult;
  std::vector<cplx> stack;
  std::vector<cplx> a(nh), b(nh);
  for (int m1 = 0; m1 <= j; ++m1)
    for (int m2 = 0; m1 + m2 <= j; ++m2) {
      const int m3 = j - m1 - m2;
      mult.push_back(std::tgamma(j + 1.0) / (std::tgamma(m1 + 1.0) * std::tgamma(m2 + 1.0) * std::tgamma(m3 + 1.0)));
      std::copy(c, c + nh, a.begin());
      const int ms[3] = {m1, m2, m3};
      for (int comp = 0; comp < 3; ++comp)
        for (int r = 0; r < ms[comp]; ++r) {
          dv_mode(g, comp, a.data(), b.data(), false, 1.0);
          std::swap(a, b);
        }
      stack.insert(stack.end(), a.begin(), a.end());
    }
  std::vector<double> q(mult.size());
  lw.quad_forms(stack.data(), mult.size(), q.data());
  double total = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) total += mult[i] * q[i];
  return total;
}

double derivative_norm_sq(const DistributionField& f, int i, int j, bool lambda) {
  const auto& g = f.grid;
  double s = 0.0;
  for (std::size_t k = 0; k < g.nk(); ++k) {
    const double kk = kpow(g.k2(k), i);
    if (kk == 0.0) continue;
    s += kk * vderiv_mode_sq(g, f.mode_ptr(k), j, lambda);
  }
  return s * g.volume();
}

double sobolev_norm_sq(const DistributionField& f, int s, NormMode mode) {
  if (s < 0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
  const auto& g = f.grid;
  double total = 0.0;
  switch (mode) {
    case NormMode::x_only:
    case NormMode::lambda_x:
      for (std::size_t k = 0; k < g.nk(); ++k) {
        double wk = 0.0;
        for (int i = 0; i <= s; ++i) wk += kpow(g.k2(k), i);
        total += wk * vderiv_mode_sq(g, f.mode_ptr(k), 0, mode == NormMode::lambda_x);
      }
      return total * g.volume();
    case NormMode::mixed:
    case NormMode::lambda_mixed:
      for (std::size_t k = 0; k < g.nk(); ++k)
        for (int j = 0; j <= s; ++j) {
          double wk = 0.0;
          for (int i = 0; i + j <= s; ++i) wk += kpow(g.k2(k), i);
          if (wk != 0.0) total += wk * vderiv_mode_sq(g, f.mode_ptr(k), j, mode == NormMode::lambda_mixed);
        }
      return total * g.volume();
  }
  return total;
}

double sobolev_norm(const DistributionField& f, int s, NormMode mode) { return std::sqrt(sobolev_norm_sq(f, s, mode)); }

double sobolev_norm_sq(const ScalarField& a, int s) {
  double total = 0.0;
  for (std::size_t k = 0; k < a.grid.nk(); ++k) {
    double wk = 0.0;
    for (int i = 0; i <= s; ++i) wk += kpow(a.grid.k2(k), i);
    total += wk * std::norm(a.c[k]);
  }
  return total * a.grid.volume();
}

double sobolev_norm_sq(const VectorField3& a, int s) {
  double t = 0.0;
  for (int d = 0; d < 3; ++d) t += sobolev_norm_sq(a.component(d), s);
  return t;
}

DistributionField grad_x(const DistributionField& f, int dir) {
  const auto& g = f.grid;
  DistributionField out(g);
  for (std::size_t k = 0; k < g.nk(); ++k) {
    if (!g.active(k)) continue;
    const cplx ik(0.0, g.kvec(k)[dir]);
    const cplx* src = f.mode_ptr(k);
    cplx* dst = out.mode_ptr(k);
    for (std::size_t h = 0; h < g.nh(); ++h) dst[h] = ik * src[h];
  }
  return out;
}

DistributionField grad_v(const DistributionField& f, int comp) {
  const auto& g = f.grid;
  DistributionField out(g);
  for (std::size_t k = 0; k < g.nk(); ++k) dv_mode(g, comp, f.mode_ptr(k), out.mode_ptr(k), false, 1.0);
  return out;
}

ScalarField grad_x(const ScalarField& a, int dir) {
  ScalarField out(a.grid);
  for (std::size_t k = 0; k < a.grid.nk(); ++k)
    if (a.grid.active(k)) out.c[k] = cplx(0.0, a.grid.kvec(k)[dir]) * a.c[k];
  return out;
}

ScalarField div(const VectorField3& a) {
  ScalarField out(a.grid);
  for (std::size_t k = 0; k < a.grid.nk(); ++k) {
    if (!a.grid.active(k)) continue;
    const auto kv = a.grid.kvec(k);
    out.c[k] = cplx(0.0, 1.0) * (kv[0] * a.c[0][k] + kv[1] * a.c[1][k] + kv[2] * a.c[2][k]);
  }
  return out;
}

VectorField3 grad(const ScalarField& a) {
  VectorField3 out(a.grid);
  for (int d = 0; d < 3; ++d) out.c[d] = grad_x(a, d).c;
  return out;
}

VectorField3 curl(const VectorField3& a) {
  VectorField3 out(a.grid);
  const cplx I(0.0, 1.0);
  for (std::size_t k = 0; k < a.grid.nk(); ++k) {
    if (!a.grid.active(k)) continue;
    const auto kv = a.grid.kvec(k);
    out.c[0][k] = I * (kv[1] * a.c[2][k] - kv[2] * a.c[1][k]);
    out.c[1][k] = I * (kv[2] * a.c[0][k] - kv[0] * a.c[2][k]);
    out.c[2][k] = I * (kv[0] * a.c[1][k] - kv[1] * a.c[0][k]);
  }
  return out;
}

Helmholtz helmholtz_decompose(const VectorField3& F) {
  const auto& g = F.grid;
  Helmholtz h{VectorField3(g), VectorField3(g), {0.0, 0.0, 0.0}};
  for (int d = 0; d < 3; ++d) h.mean[d] = std::real(F.c[d][0]);
  for (std::size_t k = 1; k < g.nk(); ++k) {
    const auto kv = g.kvec(k);
    const double kk = kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2];
    if (kk == 0.0) continue;
    const cplx kdotf = kv[0] * F.c[0][k] + kv[1] * F.c[1][k] + kv[2] * F.c[2][k];
    for (int d = 0; d < 3; ++d) {
      h.gradient_part.c[d][k] = kv[d] * kdotf / kk;
      h.divergence_free_part.c[d][k] = F.c[d][k] - h.gradient_part.c[d][k];
    }
  }
  return h;
}

VectorField3 grad_inverse_laplacian(const ScalarField& rho) {
  const auto& g = rho.grid;
  VectorField3 out(g);
  for (std::size_t k = 1; k < g.nk(); ++k) {
    if (!g.active(k)) continue;
    const auto kv = g.kvec(k);
    const double kk = g.k2(k);
    for (int d = 0; d < 3; ++d) out.c[d][k] = cplx(0.0, -kv[d] / kk) * rho.c[k];
  }
  return out;
}

namespace {
void symmetrize_array(const SpectralGrid& g, cplx* base, std::size_t stride, std::size_t width) {
  for (std::size_t k = 0; k < g.nk(); ++k) {
    cplx* a = base + k * stride;
    if (!g.active(k)) {
      for (std::size_t h = 0; h < width; ++h) a[h] = 0.0;
      continue;
    }
    const std::size_t kc = g.conj_mode(k);
    if (kc < k) continue;
    cplx* b = base + kc * stride;
    for (std::size_t h = 0; h < width; ++h) {
      const cplx avg = 0.5 * (a[h] + std::conj(b[h]));
      a[h] = avg;
      b[h] = std::conj(avg);
    }
  }
}
}  // namespace

void symmetrize(DistributionField& f) { symmetrize_array(f.grid, f.c.data(), f.grid.nh(), f.grid.nh()); }
void symmetrize(ScalarField& a) { symmetrize_array(a.grid, a.c.data(), 1, 1); }
void symmetrize(VectorField3& a) {
  for (auto& c : a.c) symmetrize_array(a.grid, c.data(), 1, 1);
}

double reality_defect(const DistributionField& f) {
  const auto& g = f.grid;
  double s = 0.0;
  for (std::size_t k = 0; k < g.nk(); ++k) {
    const std::size_t kc = g.conj_mode(k);
    for (std::size_t h = 0; h < g.nh(); ++h) s += std::norm(f.at(k, h) - std::conj(f.at(kc, h)));
  }
  return std::sqrt(0.25 * s * g.volume());
}

// ----- Hermite ladder actions on a single Fourier mode -----

namespace {
template <class Op>
void ladder_apply(const SpectralGrid& g, cplx* out, bool accumulate, Op op) {
  if (!accumulate) std::fill(out, out + g.nh(), cplx{});
  op();
}
}  // namespace

void raise_mode(const SpectralGrid& g, int comp, const cplx* in, cplx* out, bool accumulate, cplx scale) {
  ladder_apply(g, out, accumulate, [&] { ladder::raise(g.nv, comp, in, out, scale); });
}

void vmul_mode(const SpectralGrid& g, int comp, const cplx* in, cplx* out, bool accumulate, cplx scale) {
  ladder_apply(g, out, accumulate, [&] { ladder::vmul(g.nv, comp, in, out, scale); });
}

void dv_mode(const SpectralGrid& g, int comp, const cplx* in, cplx* out, bool accumulate, cplx scale) {
  ladder_apply(g, out, accumulate, [&] { ladder::lower(g.nv, comp, in, out, scale); });
}

void rot_mode(const SpectralGrid& g, int k, const cplx* in, cplx* out, bool accumulate, cplx scale) {
  ladder_apply(g, out, accumulate, [&] { ladder::rot(g.nv, k, in, out, scale); });
}

}  // namespace vmb
