#pragma once
// Gram matrix of the weight 1 + |v| on the tensor Hermite basis.
// |v| is not separable, so it is written as
//   |v| = (2 sqrt(pi))^{-1} \int_0^inf (1 - exp(-t|v|^2)) t^{-3/2} dt,
// whose integrand factorizes over velocity directions; the t-integral uses
// Gauss-Legendre after t = (u/(1-u))^2. The matrix couples only indices of equal
// parity per direction, so it is stored as 8 dense blocks.

#include <complex>
#include <memory>
#include <vector>

namespace vmb {

class LambdaWeight {
 public:
  explicit LambdaWeight(int nv, int t_points = 96);
  int nv() const { return nv_; }
  // sum_{n,m} conj(c_n) (I + W)_{nm} c_m, real part
  double quad_form(const std::complex<double>* c) const;
  // quad_form of `count` tensors stored nv^3 apart, as one matrix product per parity block
  void quad_forms(const std::complex<double>* c, std::size_t count, double* out) const;
  // W_{nm} = \int psi_n psi_m |v| M dv
  double abs_v_entry(std::size_t n, std::size_t m) const;
  static const LambdaWeight& shared(int nv);

 private:
  int nv_;
  std::vector<std::vector<std::size_t>> idx_;  // per parity block
  std::vector<std::vector<double>> w_;         // |v| Gram blocks, row-major
  std::vector<int> block_of_, pos_of_;
};

}  // namespace vmb
