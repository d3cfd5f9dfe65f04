#pragma once
// One-dimensional Hermite machinery and the three-axis tensor transforms built on it.
// psi_n = He_n / sqrt(n!) is orthonormal under the standard normal weight.

#include <array>
#include <complex>
#include <vector>

namespace vmb {

struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;  // sum to 1
};

// Golub-Welsch on the Jacobi matrix of the probabilists' Hermite recurrence.
GaussHermite gauss_hermite(int q);

// psi_0..psi_{n-1} evaluated at x.
std::vector<double> hermite_functions(int n, double x);

// Dense Q x B matrix applied along one axis of a 3-tensor.
class AxisMatrix {
 public:
  AxisMatrix() = default;
  AxisMatrix(int rows, int cols, std::vector<double> m);
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int r, int c) const { return m_[static_cast<std::size_t>(r) * cols_ + c]; }
  const double* row(int r) const { return m_.data() + static_cast<std::size_t>(r) * cols_; }
  const double* trow(int c) const { return mt_.data() + static_cast<std::size_t>(c) * rows_; }
  const double* trow2(int c) const { return mt2_.data() + static_cast<std::size_t>(c) * 2 * rows_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> m_, mt_, mt2_;
};

// Applies M along `axis` of a tensor with shape `shape`; comps = 1 (real) or 2 (interleaved complex).
// Output shape has shape[axis] replaced by M.rows(). `out` must not alias `in`.
void apply_axis(const AxisMatrix& m, int axis, const std::array<int, 3>& shape, int comps, const double* in,
                double* out);

// Applies (A0 ⊗ A1 ⊗ A2) to a cube; a null pointer skips that axis.
void apply_tensor(const AxisMatrix* a0, const AxisMatrix* a1, const AxisMatrix* a2, std::array<int, 3> shape,
                  int comps, const double* in, double* out, std::vector<double>& scratch);

// Coefficient <-> node-value maps for n Hermite modes on q Gauss-Hermite nodes.
struct Collocation {
  int n = 0, q = 0;
  GaussHermite gh;
  AxisMatrix to_nodes;  // q x n : psi_m(xi_j)
  AxisMatrix to_coef;   // n x q : w_j psi_m(xi_j)
};
Collocation make_collocation(int n, int q);

// Eigen-decomposition of the truncated multiplication-by-v matrix (tridiagonal, off-diagonal sqrt(k)).
struct JacobiEigen {
  int n = 0;
  std::vector<double> lambda;  // eigenvalues = n-point Gauss-Hermite nodes
  AxisMatrix to_eig;           // U^T
  AxisMatrix from_eig;         // U
};
JacobiEigen jacobi_eigen(int n);

}  // namespace vmb
