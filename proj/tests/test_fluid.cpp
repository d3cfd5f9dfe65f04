#include "doctest.h"

#include "oracles.hpp"
#include "vmb/fluid.hpp"

using namespace vmb;

TEST_CASE("fluid heat mode decays as exp(-kappa k^2 t)") {
  CHECK(oracle::fluid_decay_error("heat") <= 1e-6);
}

TEST_CASE("fluid charge mode decays as exp(-(sigma k^2 + sigma) t)") {
  CHECK(oracle::fluid_decay_error("charge") <= 1e-6);
}

TEST_CASE("well-prepared limit temperature matches the kinetic Boussinesq combination") {
  SpectralGrid g;
  g.dx = 1;
  g.nx = 8;
  g.nv = 4;
  const auto d = make_profile(g, "heat-mode", 0.01);
  const auto fl = fluid_initial(d, RegimeTag::NSF);
  const std::size_t k = g.mode_of({1, 0, 0});
  CHECK(std::abs(fl.theta.c[k] - d.theta.c[k]) <= 1e-18);
}

TEST_CASE("fluid config validation") {
  FluidRegimeConfig c;
  c.grid.nx = 8;
  c.grid.nv = 4;
  c.coeffs = transport_coefficients(CollisionBackend::bgk(), 8);
  CHECK_NOTHROW(c.validate());
  c.dt = -1.0;
  CHECK_THROWS(c.validate());
}
