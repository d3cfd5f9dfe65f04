#include "doctest.h"

#include <cmath>
#include <limits>
#include <string>

#include "oracles.hpp"
#include "vmb/config.hpp"
#include "vmb/diagnostics.hpp"
#include "vmb/runner.hpp"

using namespace vmb;

TEST_CASE("imex schemes converge at their order against the matrix exponential") {
  const auto o1 = oracle::imex_order(Scheme::imex1);
  const auto o2 = oracle::imex_order(Scheme::imex2);
  CHECK(std::abs(o1.slope - 1.0) <= 0.1);
  CHECK(std::abs(o2.slope - 2.0) <= 0.2);
}

TEST_CASE("a zero-length run records only the initial state") {
  RunConfig c;
  c.grid.nx = 8;
  c.grid.nv = 4;
  c.t_end = 0.0;
  c.equivalence_samples = 0;
  const auto r = run_kinetic(c, false);
  CHECK(r.steps == 0);
  REQUIRE(r.records.size() == 1);
  CHECK(r.records.front().t == 0.0);
  CHECK(r.max_drift == 0.0);
}

TEST_CASE("short runs keep H-tilde non-increasing and the integrals fixed") {
  for (std::string regime : {"NSW", "NSP", "NSF"}) {
    CAPTURE(regime);
    RunConfig c;
    c.grid.nx = 8;
    c.grid.nv = 6;
    c.regime = regime;
    c.epsilon = 0.05;
    c.profile = "mixed";
    c.dt = 0.01;
    c.t_end = 0.1;
    c.equivalence_samples = 0;
    const auto r = run_kinetic(c, false);
    CHECK(r.steps == 10);
    CHECK(r.h_tilde_max_increase <= 1e-10);
    // momentum and energy hold quadratic field parts, conserved to O(dt^2); the rest to roundoff
    for (int i = 0; i < 9; ++i) CHECK(r.drift[i] <= (i <= 3 ? 1e-8 : 1e-14));
    CHECK(r.gauss_max <= 1e-10);
  }
}

TEST_CASE("non-finite states raise a divergence error") {
  SpectralGrid g;
  g.dx = 1;
  g.nx = 4;
  g.nv = 4;
  Integrator integ(g, CollisionBackend::bgk(), ScalingRegime::preset(RegimeTag::NSF, 0.1));
  KineticState s(g);
  s.f.at(g.mode_of({1, 0, 0}), 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(integ.step(s, 0.01), DivergenceError);
}

TEST_CASE("scheme names parse and reject unknowns") {
  CHECK(parse_scheme("IMEX1") == Scheme::imex1);
  CHECK(parse_scheme("IMEX2") == Scheme::imex2);
  CHECK_THROWS_AS(parse_scheme("RK4"), std::invalid_argument);
}
