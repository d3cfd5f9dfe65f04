#include "vmb/lambda_weight.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>

#include "vmb/hermite.hpp"

namespace vmb {
namespace {

// Gauss-Legendre on (0,1)
void gauss_legendre01(int n, std::vector<double>& x, std::vector<double>& w) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) j(k, k - 1) = j(k - 1, k) = k / std::sqrt(4.0 * k * k - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  x.resize(n);
  w.resize(n);
  for (int k = 0; k < n; ++k) {
    x[k] = 0.5 * (es.eigenvalues()(k) + 1.0);
    const double v0 = es.eigenvectors()(0, k);
    w[k] = v0 * v0;  // weights on (-1,1) sum to 2, halved by the map
  }
}

}  // namespace

LambdaWeight::LambdaWeight(int nv, int t_points) : nv_(nv) {
  const std::size_t nh = static_cast<std::size_t>(nv) * nv * nv;
  idx_.resize(8);
  block_of_.resize(nh);
  pos_of_.resize(nh);
  for (std::size_t h = 0; h < nh; ++h) {
    const int n1 = static_cast<int>(h / (nv * nv)), n2 = static_cast<int>((h / nv) % nv), n3 = static_cast<int>(h % nv);
    const int b = (n1 & 1) * 4 + (n2 & 1) * 2 + (n3 & 1);
    block_of_[h] = b;
    pos_of_[h] = static_cast<int>(idx_[b].size());
    idx_[b].push_back(h);
  }
  w_.resize(8);
  for (int b = 0; b < 8; ++b) w_[b].assign(idx_[b].size() * idx_[b].size(), 0.0);

  const int q = nv + 2;
  const GaussHermite gh = gauss_hermite(q);
  std::vector<double> us, uw;
  gauss_legendre01(t_points, us, uw);
  const double pref = 1.0 / (2.0 * std::sqrt(M_PI));
  std::vector<double> kt(static_cast<std::size_t>(nv) * nv);
  for (int p = 0; p < t_points; ++p) {
    const double u = us[p];
    const double t = (u / (1.0 - u)) * (u / (1.0 - u));
    const double c = std::sqrt(1.0 + 2.0 * t);
    // K_t[a][b] = \int psi_a psi_b exp(-t v^2) dN(v) = (1/c) E[psi_a(y/c) psi_b(y/c)]
    std::fill(kt.begin(), kt.end(), 0.0);
    for (int j = 0; j < q; ++j) {
      const auto ps = hermite_functions(nv, gh.nodes[j] / c);
      for (int a = 0; a < nv; ++a)
        for (int bb = 0; bb < nv; ++bb) kt[a * nv + bb] += gh.weights[j] * ps[a] * ps[bb] / c;
    }
    // integrand in u: t^{-3/2} dt/du = 2/u^2
    const double wt = pref * uw[p] * 2.0 / (u * u);
    for (int b = 0; b < 8; ++b) {
      const auto& id = idx_[b];
      const std::size_t m = id.size();
      for (std::size_t r = 0; r < m; ++r) {
        const int a1 = static_cast<int>(id[r] / (nv * nv)), a2 = static_cast<int>((id[r] / nv) % nv),
                  a3 = static_cast<int>(id[r] % nv);
        for (std::size_t s = 0; s < m; ++s) {
          const int b1 = static_cast<int>(id[s] / (nv * nv)), b2 = static_cast<int>((id[s] / nv) % nv),
                    b3 = static_cast<int>(id[s] % nv);
          const double prod = kt[a1 * nv + b1] * kt[a2 * nv + b2] * kt[a3 * nv + b3];
          w_[b][r * m + s] += wt * ((r == s ? 1.0 : 0.0) - prod);
        }
      }
    }
  }
}

double LambdaWeight::quad_form(const std::complex<double>* c) const {
  double total = 0.0;
  std::vector<std::complex<double>> loc;
  for (int b = 0; b < 8; ++b) {
    const auto& id = idx_[b];
    const std::size_t m = id.size();
    loc.resize(m);
    for (std::size_t r = 0; r < m; ++r) loc[r] = c[id[r]];
    const double* w = w_[b].data();
    for (std::size_t r = 0; r < m; ++r) {
      std::complex<double> acc = loc[r];  // identity part
      const double* wr = w + r * m;
      for (std::size_t s = 0; s < m; ++s) acc += wr[s] * loc[s];
      total += std::real(std::conj(loc[r]) * acc);
    }
  }
  return total;
}

void LambdaWeight::quad_forms(const std::complex<double>* c, std::size_t count, double* out) const {
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const std::size_t nh = static_cast<std::size_t>(nv_) * nv_ * nv_;
  std::fill(out, out + count, 0.0);
  Eigen::MatrixXd x, y;
  for (int b = 0; b < 8; ++b) {
    const auto& id = idx_[b];
    const Eigen::Index m = static_cast<Eigen::Index>(id.size());
    x.resize(m, 2 * static_cast<Eigen::Index>(count));
    for (std::size_t col = 0; col < count; ++col)
      for (Eigen::Index r = 0; r < m; ++r) {
        const auto v = c[col * nh + id[r]];
        x(r, 2 * col) = v.real();
        x(r, 2 * col + 1) = v.imag();
      }
    Eigen::Map<const RowMat> w(w_[b].data(), m, m);
    y.noalias() = w * x;
    y += x;
    for (std::size_t col = 0; col < count; ++col)
      out[col] += x.col(2 * col).dot(y.col(2 * col)) + x.col(2 * col + 1).dot(y.col(2 * col + 1));
  }
}

double LambdaWeight::abs_v_entry(std::size_t n, std::size_t m) const {
  if (block_of_[n] != block_of_[m]) return 0.0;
  const auto& w = w_[block_of_[n]];
  return w[static_cast<std::size_t>(pos_of_[n]) * idx_[block_of_[n]].size() + pos_of_[m]];
}

const LambdaWeight& LambdaWeight::shared(int nv) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<LambdaWeight>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[nv];
  if (!slot) slot = std::make_unique<LambdaWeight>(nv);
  return *slot;
}

}  // namespace vmb
