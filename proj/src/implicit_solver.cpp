#include "vmb/implicit_solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstring>

#include "vmb/ladder.hpp"

namespace vmb {

using Mat5 = Eigen::Matrix<cplx, 5, 5>;
using Mat10 = Eigen::Matrix<cplx, 10, 10>;

struct ImplicitSolver::ModeCache {
  bool axes[3] = {false, false, false};
  bool any_axis = false;
  std::vector<cplx> inv_diag;            // D^{-1} in the eigenbasis
  std::array<std::vector<cplx>, 5> y;    // D^{-1} phi_m
  Eigen::PartialPivLU<Mat5> f_lu;
  Eigen::PartialPivLU<Mat10> g_lu;
};

struct ImplicitSolver::StepCache {
  double h = 0, rate = 1;
  std::vector<ModeCache> modes;
};

ImplicitSolver::ImplicitSolver(const SpectralGrid& g, const CollisionBackend& b, const ScalingRegime& r)
    : grid_(g), backend_(b), regime_(r), eig_(jacobi_eigen(g.nv)) {
  if (b.kind == CollisionBackend::Kind::broken_kernel)
    throw std::invalid_argument("the broken-kernel backend is a test fixture and cannot be integrated");
  r.validate();
}

ImplicitSolver::~ImplicitSolver() = default;

void gather_mode(const KineticState& s, std::size_t k, cplx* out) {
  const std::size_t nh = s.grid().nh();
  std::memcpy(static_cast<void*>(out), s.f.mode_ptr(k), nh * sizeof(cplx));
  std::memcpy(static_cast<void*>(out + nh), s.g.mode_ptr(k), nh * sizeof(cplx));
  for (int i = 0; i < 3; ++i) {
    out[2 * nh + i] = s.E.c[i][k];
    out[2 * nh + 3 + i] = s.B.c[i][k];
  }
}

void scatter_mode(const cplx* in, std::size_t k, KineticState& s) {
  const std::size_t nh = s.grid().nh();
  std::memcpy(static_cast<void*>(s.f.mode_ptr(k)), in, nh * sizeof(cplx));
  std::memcpy(static_cast<void*>(s.g.mode_ptr(k)), in + nh, nh * sizeof(cplx));
  for (int i = 0; i < 3; ++i) {
    s.E.c[i][k] = in[2 * nh + i];
    s.B.c[i][k] = in[2 * nh + 3 + i];
  }
}

void ImplicitSolver::apply_mode(std::size_t k, const cplx* x, cplx* out) const {
  const std::size_t nh = grid_.nh();
  const double eps = regime_.epsilon, e2 = eps * eps;
  const auto kv = grid_.kvec(k);
  const cplx* f = x;
  const cplx* g = x + nh;
  const cplx* E = x + 2 * nh;
  const cplx* B = E + 3;
  cplx* of = out;
  cplx* og = out + nh;
  apply_L_mode(backend_, grid_, f, of);
  apply_Lsf_mode(backend_, grid_, g, og);
  for (std::size_t h = 0; h < nh; ++h) {
    of[h] /= e2;
    og[h] /= e2;
  }
  for (int i = 0; i < grid_.dx; ++i) {
    if (kv[i] == 0.0) continue;
    const cplx s(0.0, kv[i] / eps);
    ladder::vmul(grid_.nv, i, f, of, s);
    ladder::vmul(grid_.nv, i, g, og, s);
  }
  const std::size_t e[3] = {grid_.hidx(1, 0, 0), grid_.hidx(0, 1, 0), grid_.hidx(0, 0, 1)};
  const cplx I(0.0, 1.0);
  cplx* oE = out + 2 * nh;
  cplx* oB = oE + 3;
  for (int m = 0; m < 3; ++m) {
    og[e[m]] -= (regime_.alpha / e2) * E[m];
    const int a = (m + 1) % 3, b = (m + 2) % 3;
    const cplx kxB = kv[a] * B[b] - kv[b] * B[a];
    const cplx kxE = kv[a] * E[b] - kv[b] * E[a];
    oE[m] = -(I / regime_.gamma) * kxB + (regime_.beta / (eps * regime_.gamma)) * g[e[m]];
    oB[m] = (I / regime_.gamma) * kxE;
  }
}

void ImplicitSolver::apply(const KineticState& x, KineticState& out) const {
  require_same(x.grid(), grid_, "ImplicitSolver::apply");
  if (out.grid() != grid_) out = KineticState(grid_);
  std::vector<cplx> a(mode_size()), b(mode_size());
  for (std::size_t k = 0; k < grid_.nk(); ++k) {
    if (!grid_.active(k)) {
      std::fill(b.begin(), b.end(), cplx{});
    } else {
      gather_mode(x, k, a.data());
      apply_mode(k, a.data(), b.data());
    }
    scatter_mode(b.data(), k, out);
  }
  out.t = x.t;
}

void ImplicitSolver::dinv(const ModeCache& mc, const cplx* in, cplx* out, std::vector<double>& scratch) const {
  const std::size_t nh = grid_.nh();
  if (!mc.any_axis) {
    for (std::size_t h = 0; h < nh; ++h) out[h] = mc.inv_diag[0] * in[h];
    return;
  }
  const int n = grid_.nv;
  const AxisMatrix* fwd[3];
  const AxisMatrix* bwd[3];
  for (int i = 0; i < 3; ++i) {
    fwd[i] = mc.axes[i] ? &eig_.to_eig : nullptr;
    bwd[i] = mc.axes[i] ? &eig_.from_eig : nullptr;
  }
  std::vector<cplx> tmp(nh);
  std::vector<double> s2;
  apply_tensor(fwd[0], fwd[1], fwd[2], {n, n, n}, 2, reinterpret_cast<const double*>(in),
               reinterpret_cast<double*>(tmp.data()), scratch);
  for (std::size_t h = 0; h < nh; ++h) tmp[h] *= mc.inv_diag[h];
  apply_tensor(bwd[0], bwd[1], bwd[2], {n, n, n}, 2, reinterpret_cast<const double*>(tmp.data()),
               reinterpret_cast<double*>(out), scratch);
}

ImplicitSolver::StepCache& ImplicitSolver::cache(double h) {
  auto& slot = caches_[h];
  if (slot) return *slot;
  slot = std::make_unique<StepCache>();
  StepCache& c = *slot;
  c.h = h;
  c.rate = backend_.rate(1);
  const double eps = regime_.epsilon, e2 = eps * eps;
  const double cr = h * c.rate / e2;
  const double ca = h * regime_.alpha / e2;
  const std::size_t nh = grid_.nh();
  const int n = grid_.nv;
  c.modes.resize(grid_.nk());
  for (std::size_t k = 0; k < grid_.nk(); ++k) {
    if (!grid_.active(k)) continue;
    ModeCache& mc = c.modes[k];
    const auto kv = grid_.kvec(k);
    for (int i = 0; i < grid_.dx; ++i) mc.axes[i] = kv[i] != 0.0;
    mc.any_axis = mc.axes[0] || mc.axes[1] || mc.axes[2];
    const double a = 1.0 + cr;
    if (!mc.any_axis) {
      mc.inv_diag.assign(1, 1.0 / a);
    } else {
      mc.inv_diag.resize(nh);
      for (std::size_t hh = 0; hh < nh; ++hh) {
        const auto q = grid_.hmulti(hh);
        double kl = 0.0;
        for (int i = 0; i < 3; ++i)
          if (mc.axes[i]) kl += kv[i] * eig_.lambda[q[i]];
        mc.inv_diag[hh] = 1.0 / cplx(a, h * kl / eps);
      }
    }
    for (int m = 0; m < 5; ++m) {
      std::vector<cplx> phi(nh);
      add_kernel_vector(grid_, m, 1.0, phi.data());
      mc.y[m].resize(nh);
      dinv(mc, phi.data(), mc.y[m].data(), scratch_);
    }
    Mat5 S;
    for (int m = 0; m < 5; ++m) {
      const auto comp = kernel_components(grid_, mc.y[m].data());
      for (int l = 0; l < 5; ++l) S(l, m) = comp[l];
    }
    mc.f_lu.compute(Mat5::Identity() - cr * S);

    Mat10 G = Mat10::Identity();
    const cplx I(0.0, 1.0);
    for (int l = 0; l < 4; ++l) {
      G(l, 0) -= cr * S(l, 0);
      for (int i = 0; i < 3; ++i) G(l, 4 + i) -= ca * S(l, 1 + i);
    }
    const double cj = h * regime_.beta / (eps * regime_.gamma), cf = h / regime_.gamma;
    for (int m = 0; m < 3; ++m) {
      const int a1 = (m + 1) % 3, b1 = (m + 2) % 3;
      G(4 + m, 1 + m) += cj;
      // -(h/gamma) i (k x B)_m and +(h/gamma) i (k x E)_m
      G(4 + m, 7 + b1) += -cf * I * kv[a1];
      G(4 + m, 7 + a1) += cf * I * kv[b1];
      G(7 + m, 4 + b1) += cf * I * kv[a1];
      G(7 + m, 4 + a1) += -cf * I * kv[b1];
    }
    mc.g_lu.compute(G);
  }
  (void)n;
  return c;
}

void ImplicitSolver::precondition(const StepCache& c, std::size_t k, cplx* x) const {
  const ModeCache& mc = c.modes[k];
  const std::size_t nh = grid_.nh();
  const double e2 = regime_.epsilon * regime_.epsilon;
  const double cr = c.h * c.rate / e2, ca = c.h * regime_.alpha / e2;
  std::vector<cplx> y(nh);
  // f block
  dinv(mc, x, y.data(), scratch_);
  {
    const auto r5 = kernel_components(grid_, y.data());
    Eigen::Matrix<cplx, 5, 1> rhs;
    for (int m = 0; m < 5; ++m) rhs(m) = r5[m];
    const Eigen::Matrix<cplx, 5, 1> pi = mc.f_lu.solve(rhs);
    for (int m = 0; m < 5; ++m) {
      const cplx s = cr * pi(m);
      const cplx* ym = mc.y[m].data();
      for (std::size_t h = 0; h < nh; ++h) y[h] += s * ym[h];
    }
    std::memcpy(static_cast<void*>(x), y.data(), nh * sizeof(cplx));
  }
  // g block with the fields
  cplx* g = x + nh;
  cplx* E = x + 2 * nh;
  cplx* B = E + 3;
  dinv(mc, g, y.data(), scratch_);
  {
    const std::size_t e[3] = {grid_.hidx(1, 0, 0), grid_.hidx(0, 1, 0), grid_.hidx(0, 0, 1)};
    Eigen::Matrix<cplx, 10, 1> rhs;
    rhs(0) = y[0];
    for (int i = 0; i < 3; ++i) {
      rhs(1 + i) = y[e[i]];
      rhs(4 + i) = E[i];
      rhs(7 + i) = B[i];
    }
    const Eigen::Matrix<cplx, 10, 1> z = mc.g_lu.solve(rhs);
    const cplx s0 = cr * z(0);
    for (std::size_t h = 0; h < nh; ++h) y[h] += s0 * mc.y[0][h];
    for (int i = 0; i < 3; ++i) {
      const cplx si = ca * z(4 + i);
      const cplx* yi = mc.y[1 + i].data();
      for (std::size_t h = 0; h < nh; ++h) y[h] += si * yi[h];
      E[i] = z(4 + i);
      B[i] = z(7 + i);
    }
    std::memcpy(static_cast<void*>(g), y.data(), nh * sizeof(cplx));
  }
}

namespace {

double vnorm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

cplx vdot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace

void ImplicitSolver::solve_mode(double h, std::size_t k, cplx* x) {
  StepCache& c = cache(h);
  if (backend_.is_bgk_like()) {
    precondition(c, k, x);
    return;
  }
  // right-preconditioned restarted GMRES on (I + h A) x = b
  const std::size_t n = mode_size();
  const int m = 60, max_cycles = 40;
  std::vector<cplx> b(x, x + n), sol(n), w(n), tmp(n);
  const double bnorm = vnorm(b);
  if (bnorm == 0.0) return;
  // initial guess: the BGK-form solve
  sol = b;
  precondition(c, k, sol.data());
  auto op = [&](const std::vector<cplx>& in, std::vector<cplx>& out) {
    apply_mode(k, in.data(), out.data());
    for (std::size_t i = 0; i < n; ++i) out[i] = in[i] + h * out[i];
  };
  int iters = 0;
  for (int cycle = 0; cycle < max_cycles; ++cycle) {
    op(sol, w);
    std::vector<cplx> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - w[i];
    const double beta = vnorm(r);
    if (beta <= gmres_tol * bnorm) break;
    std::vector<std::vector<cplx>> V(m + 1, std::vector<cplx>(n)), Z(m, std::vector<cplx>(n));
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
    for (std::size_t i = 0; i < n; ++i) V[0][i] = r[i] / beta;
    std::vector<cplx> cs(m), sn(m), gvec(m + 1);
    gvec[0] = beta;
    int j = 0;
    for (; j < m; ++j) {
      Z[j] = V[j];
      precondition(c, k, Z[j].data());
      op(Z[j], w);
      for (int i = 0; i <= j; ++i) {
        H(i, j) = vdot(V[i], w);
        for (std::size_t t = 0; t < n; ++t) w[t] -= H(i, j) * V[i][t];
      }
      H(j + 1, j) = vnorm(w);
      if (std::abs(H(j + 1, j)) > 0.0)
        for (std::size_t t = 0; t < n; ++t) V[j + 1][t] = w[t] / H(j + 1, j);
      for (int i = 0; i < j; ++i) {
        const cplx t0 = std::conj(cs[i]) * H(i, j) + std::conj(sn[i]) * H(i + 1, j);
        H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
        H(i, j) = t0;
      }
      const double den = std::sqrt(std::norm(H(j, j)) + std::norm(H(j + 1, j)));
      cs[j] = H(j, j) / den;
      sn[j] = H(j + 1, j) / den;
      H(j, j) = den;
      H(j + 1, j) = 0.0;
      gvec[j + 1] = -sn[j] * gvec[j];
      gvec[j] = std::conj(cs[j]) * gvec[j];
      ++iters;
      if (std::abs(gvec[j + 1]) <= gmres_tol * bnorm) {
        ++j;
        break;
      }
    }
    std::vector<cplx> yv(j);
    for (int i = j - 1; i >= 0; --i) {
      cplx s = gvec[i];
      for (int l = i + 1; l < j; ++l) s -= H(i, l) * yv[l];
      yv[i] = s / H(i, i);
    }
    for (int i = 0; i < j; ++i)
      for (std::size_t t = 0; t < n; ++t) sol[t] += yv[i] * Z[i][t];
  }
  gmres_iters_ = std::max(gmres_iters_, iters);
  std::memcpy(static_cast<void*>(x), sol.data(), n * sizeof(cplx));
}

void ImplicitSolver::solve(double h, KineticState& x) {
  require_same(x.grid(), grid_, "ImplicitSolver::solve");
  std::vector<cplx> buf(mode_size());
  gmres_iters_ = 0;
  for (std::size_t k = 0; k < grid_.nk(); ++k) {
    if (!grid_.active(k)) {
      std::fill(buf.begin(), buf.end(), cplx{});
    } else {
      gather_mode(x, k, buf.data());
      solve_mode(h, k, buf.data());
    }
    scatter_mode(buf.data(), k, x);
  }
}

}  // namespace vmb
