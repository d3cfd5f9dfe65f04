#include "vmb/hermite.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "vmb/kernels.hpp"

namespace vmb {

GaussHermite gauss_hermite(int q) {
  if (q < 1) throw std::invalid_argument("gauss_hermite: q must be positive");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(q, q);
  for (int k = 1; k < q; ++k) j(k, k - 1) = j(k - 1, k) = std::sqrt(static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  GaussHermite gh;
  gh.nodes.resize(q);
  gh.weights.resize(q);
  for (int k = 0; k < q; ++k) {
    gh.nodes[k] = es.eigenvalues()(k);
    const double v0 = es.eigenvectors()(0, k);
    gh.weights[k] = v0 * v0;
  }
  // symmetrize to remove eigen-solver noise
  for (int k = 0; k < q / 2; ++k) {
    const double x = 0.5 * (gh.nodes[q - 1 - k] - gh.nodes[k]);
    const double w = 0.5 * (gh.weights[q - 1 - k] + gh.weights[k]);
    gh.nodes[k] = -x;
    gh.nodes[q - 1 - k] = x;
    gh.weights[k] = gh.weights[q - 1 - k] = w;
  }
  if (q % 2 == 1) gh.nodes[q / 2] = 0.0;
  return gh;
}

std::vector<double> hermite_functions(int n, double x) {
  std::vector<double> p(std::max(n, 1));
  p[0] = 1.0;
  if (n > 1) p[1] = x;
  for (int k = 1; k + 1 < n; ++k) p[k + 1] = (x * p[k] - std::sqrt(static_cast<double>(k)) * p[k - 1]) / std::sqrt(k + 1.0);
  p.resize(n);
  return p;
}

AxisMatrix::AxisMatrix(int rows, int cols, std::vector<double> m) : rows_(rows), cols_(cols), m_(std::move(m)) {
  mt_.resize(m_.size());
  mt2_.resize(2 * m_.size());
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const double v = m_[static_cast<std::size_t>(r) * cols + c];
      mt_[static_cast<std::size_t>(c) * rows + r] = v;
      mt2_[static_cast<std::size_t>(c) * 2 * rows + 2 * r] = v;
      mt2_[static_cast<std::size_t>(c) * 2 * rows + 2 * r + 1] = v;
    }
}

void apply_axis(const AxisMatrix& m, int axis, const std::array<int, 3>& shape, int comps, const double* in,
                double* out) {
  const auto& k = kern::active();
  if (shape[axis] != m.cols()) throw std::invalid_argument("apply_axis: shape mismatch");
  const int q = m.rows();
  if (axis < 2) {
    const std::size_t outer = axis == 0 ? 1 : static_cast<std::size_t>(shape[0]);
    const std::size_t len =
        static_cast<std::size_t>(comps) * (axis == 0 ? static_cast<std::size_t>(shape[1]) * shape[2] : shape[2]);
    const int b = m.cols();
    for (std::size_t o = 0; o < outer; ++o) {
      const double* src = in + o * b * len;
      double* dst = out + o * q * len;
      std::memset(dst, 0, sizeof(double) * q * len);
      for (int r = 0; r < q; ++r) {
        const double* mr = m.row(r);
        double* d = dst + r * len;
        for (int c = 0; c < b; ++c)
          if (mr[c] != 0.0) k.axpy(len, mr[c], src + c * len, d);
      }
    }
  } else {
    const std::size_t outer = static_cast<std::size_t>(shape[0]) * shape[1];
    const int b = m.cols();
    for (std::size_t o = 0; o < outer; ++o) {
      const double* src = in + o * b * comps;
      double* dst = out + o * q * comps;
      std::memset(dst, 0, sizeof(double) * q * comps);
      if (comps == 1) {
        for (int c = 0; c < b; ++c)
          if (src[c] != 0.0) k.axpy(q, src[c], m.trow(c), dst);
      } else {
        for (int c = 0; c < b; ++c) {
          const double re = src[2 * c], im = src[2 * c + 1];
          if (re != 0.0 || im != 0.0) k.axpy2(2 * static_cast<std::size_t>(q), re, im, m.trow2(c), dst);
        }
      }
    }
  }
}

void apply_tensor(const AxisMatrix* a0, const AxisMatrix* a1, const AxisMatrix* a2, std::array<int, 3> shape,
                  int comps, const double* in, double* out, std::vector<double>& scratch) {
  const AxisMatrix* ms[3] = {a0, a1, a2};
  int active = 0;
  std::size_t maxsz = static_cast<std::size_t>(shape[0]) * shape[1] * shape[2];
  {
    std::array<int, 3> s = shape;
    for (int ax = 0; ax < 3; ++ax)
      if (ms[ax]) {
        ++active;
        s[ax] = ms[ax]->rows();
        maxsz = std::max(maxsz, static_cast<std::size_t>(s[0]) * s[1] * s[2]);
      }
  }
  std::array<int, 3> outshape = shape;
  for (int ax = 0; ax < 3; ++ax)
    if (ms[ax]) outshape[ax] = ms[ax]->rows();
  const std::size_t outsz = static_cast<std::size_t>(outshape[0]) * outshape[1] * outshape[2] * comps;
  if (active == 0) {
    std::memcpy(out, in, outsz * sizeof(double));
    return;
  }
  scratch.resize(2 * maxsz * comps);
  double* bufs[2] = {scratch.data(), scratch.data() + maxsz * comps};
  const double* cur = in;
  int done = 0, which = 0;
  for (int ax = 0; ax < 3; ++ax) {
    if (!ms[ax]) continue;
    ++done;
    double* dst = done == active ? out : bufs[which];
    apply_axis(*ms[ax], ax, shape, comps, cur, dst);
    shape[ax] = ms[ax]->rows();
    cur = dst;
    which ^= 1;
  }
}

Collocation make_collocation(int n, int q) {
  Collocation c;
  c.n = n;
  c.q = q;
  c.gh = gauss_hermite(q);
  std::vector<double> tn(static_cast<std::size_t>(q) * n), tc(static_cast<std::size_t>(n) * q);
  for (int j = 0; j < q; ++j) {
    const auto p = hermite_functions(n, c.gh.nodes[j]);
    for (int m = 0; m < n; ++m) {
      tn[static_cast<std::size_t>(j) * n + m] = p[m];
      tc[static_cast<std::size_t>(m) * q + j] = c.gh.weights[j] * p[m];
    }
  }
  c.to_nodes = AxisMatrix(q, n, std::move(tn));
  c.to_coef = AxisMatrix(n, q, std::move(tc));
  return c;
}

JacobiEigen jacobi_eigen(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) j(k, k - 1) = j(k - 1, k) = std::sqrt(static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  JacobiEigen je;
  je.n = n;
  je.lambda.resize(n);
  std::vector<double> ut(static_cast<std::size_t>(n) * n), u(static_cast<std::size_t>(n) * n);
  for (int q = 0; q < n; ++q) {
    je.lambda[q] = es.eigenvalues()(q);
    for (int m = 0; m < n; ++m) {
      u[static_cast<std::size_t>(m) * n + q] = es.eigenvectors()(m, q);
      ut[static_cast<std::size_t>(q) * n + m] = es.eigenvectors()(m, q);
    }
  }
  je.to_eig = AxisMatrix(n, n, std::move(ut));
  je.from_eig = AxisMatrix(n, n, std::move(u));
  return je;
}

}  // namespace vmb
