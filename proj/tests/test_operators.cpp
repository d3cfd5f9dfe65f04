#include "doctest.h"

#include "oracles.hpp"
#include "vmb/operators.hpp"

using namespace vmb;

namespace {
bool all_pass(const std::vector<PropertyResult>& props) {
  for (const auto& p : props)
    if (!p.passed) return false;
  return !props.empty();
}
}  // namespace

TEST_CASE("property suite passes for the shipped backends") {
  CHECK(all_pass(check_collision(CollisionBackend::bgk(), 8)));
  CHECK(all_pass(check_collision(CollisionBackend::spectral_diagonal({1.0, 1.5, 2.0, 2.5}), 8)));
  CHECK(all_pass(check_collision(CollisionBackend::spectral_linear(), 8)));
}

TEST_CASE("broken kernel fixture fails only the kernel identification") {
  const auto props = check_collision(CollisionBackend::broken_kernel(), 8);
  int failed = 0;
  for (const auto& p : props)
    if (!p.passed) {
      ++failed;
      CHECK(p.name == "kernel space of 𝓛");
    }
  CHECK(failed == 1);
}

TEST_CASE("bgk transport coefficients match the quadrature oracle") {
  const auto q = oracle::bgk_coefficients_quadrature();
  CHECK(q[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(q[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(q[2] == doctest::Approx(1.0).epsilon(1e-12));
  const auto c = transport_coefficients(CollisionBackend::bgk(), 12);
  CHECK(std::abs(c.nu - q[0]) <= 1e-10);
  CHECK(std::abs(c.kappa - q[1]) <= 1e-10);
  CHECK(std::abs(c.sigma - q[2]) <= 1e-10);
  CHECK(c.nu_limit == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("spectral-diagonal coefficients scale with the inverse rates") {
  // A lives in degree 2, B in degree 3, v in degree 1
  const auto c = transport_coefficients(CollisionBackend::spectral_diagonal({1.0, 2.0, 4.0, 5.0}), 10);
  CHECK(c.nu == doctest::Approx(2.0 / 3.0 / 4.0).epsilon(1e-10));
  CHECK(c.kappa == doctest::Approx(0.2).epsilon(1e-10));
  CHECK(c.sigma == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("unknown backend names are rejected") {
  CHECK_THROWS_AS(CollisionBackend::parse("landau"), std::invalid_argument);
}
