#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "vmb/kernels.hpp"
#include "vmb/operators.hpp"

using namespace vmb;

namespace {

std::vector<double> randv(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

double maxdiff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<kern::Isa> simd_variants() {
  std::vector<kern::Isa> out;
  for (auto isa : {kern::Isa::avx2, kern::Isa::neon})
    if (kern::available(isa)) out.push_back(isa);
  return out;
}

}  // namespace

TEST_CASE("simd kernels match the scalar reference on ragged lengths") {
  const auto& ref = kern::table(kern::Isa::scalar);
  for (auto isa : simd_variants()) {
    CAPTURE(kern::name(isa));
    const auto& t = kern::table(isa);
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 7u, 8u, 13u, 64u, 1001u}) {
      CAPTURE(n);
      const auto x = randv(2 * n, 1), y0 = randv(2 * n, 2);
      auto y1 = y0, y2 = y0;
      ref.axpy(n, 0.37, x.data(), y1.data());
      t.axpy(n, 0.37, x.data(), y2.data());
      CHECK(maxdiff(y1, y2) <= 1e-15);

      const std::size_t ne = 2 * (n / 2) * 2;
      y1 = y0, y2 = y0;
      ref.axpy2(ne, 0.5, -1.25, x.data(), y1.data());
      t.axpy2(ne, 0.5, -1.25, x.data(), y2.data());
      CHECK(maxdiff(y1, y2) <= 1e-15);

      std::vector<double> o1(2 * n), o2(2 * n);
      ref.vmul(n, x.data(), y0.data(), o1.data());
      t.vmul(n, x.data(), y0.data(), o2.data());
      CHECK(maxdiff(o1, o2) == 0.0);

      ref.cmul(n, x.data(), y0.data(), o1.data());
      t.cmul(n, x.data(), y0.data(), o2.data());
      CHECK(maxdiff(o1, o2) <= 1e-15);

      const double d1 = ref.dot(n, x.data(), y0.data()), d2 = t.dot(n, x.data(), y0.data());
      CHECK(std::abs(d1 - d2) <= 1e-13 * std::max(1.0, std::abs(d1)));
    }
  }
}

TEST_CASE("collocation products agree between the scalar and dispatched kernels") {
  SpectralGrid g;
  g.dx = 1;
  g.nx = 8;
  g.nv = 5;
  const auto a = randv(g.nh(), 3), b = randv(g.nh(), 4);
  std::vector<double> o1(g.nh()), o2(g.nh());
  const auto active = kern::active().isa;
  {
    kern::force(kern::Isa::scalar);
    Collocator col(g);
    col.product_point(a.data(), b.data(), o1.data());
  }
  for (auto isa : simd_variants()) {
    kern::force(isa);
    Collocator col(g);
    col.product_point(a.data(), b.data(), o2.data());
    double scale = 0;
    for (double v : o1) scale = std::max(scale, std::abs(v));
    CHECK(maxdiff(o1, o2) <= 1e-13 * scale);
  }
  kern::force(active);
}
