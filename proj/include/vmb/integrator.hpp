#pragma once
// IMEX time stepping: the linear part (transport, relaxation, field source, Maxwell) is implicit,
// Lorentz and bilinear terms are explicit.
//   IMEX1: backward/forward Euler.
//   IMEX2: IMEX-SSP2(3,3,2): three-stage SSP explicit tableau with an L-stable,
//          stiffly accurate diagonally implicit companion.

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

#include "vmb/implicit_solver.hpp"
#include "vmb/operators.hpp"
#include "vmb/regime.hpp"
#include "vmb/state.hpp"

namespace vmb {

enum class Scheme { imex1, imex2 };
Scheme parse_scheme(const std::string& s);
std::string to_string(Scheme s);

struct IntegratorOptions {
  Scheme scheme = Scheme::imex2;
  bool lorentz = true;  // Vlasov force terms
  bool gamma = true;    // bilinear collision terms
  int clean_every = 10; // Gauss cleaning cadence in steps; 0 = monitor only
  double cfl = 0.5;     // bound on dt times the explicit rate
  int quad_nodes = 0;   // Gauss-Hermite nodes per direction for products (0 = exact minimum)
};

struct DivergenceError : std::runtime_error {
  DivergenceError(double t, std::string what)
      : std::runtime_error("integration diverged at t = " + std::to_string(t) + ": non-finite " + what),
        time(t), field(std::move(what)) {}
  double time;
  std::string field;
};

struct CflError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class Integrator {
 public:
  Integrator(const SpectralGrid& g, const CollisionBackend& b, const ScalingRegime& r, IntegratorOptions opt = {});

  const SpectralGrid& grid() const { return grid_; }
  const ScalingRegime& regime() const { return regime_; }
  const CollisionBackend& backend() const { return backend_; }
  const IntegratorOptions& options() const { return opt_; }
  ImplicitSolver& solver() { return solver_; }
  Collocator& collocator() { return col_; }

  // N(X): explicit terms; only f and g are nonzero
  void explicit_rhs(const KineticState& s, KineticState& out);
  // full right-hand side -A X + N(X)
  KineticState rhs_kinetic(const KineticState& s);
  // dt times this rate must stay below options().cfl
  double explicit_rate(const KineticState& s);
  void check_cfl(const KineticState& s, double dt);

  void step(KineticState& s, double dt);

 private:
  SpectralGrid grid_;
  CollisionBackend backend_;
  ScalingRegime regime_;
  IntegratorOptions opt_;
  ImplicitSolver solver_;
  Collocator col_;
};

using Observer = std::function<void(const KineticState&, long step)>;

struct RunResult {
  KineticState final_state;
  long steps = 0;
};

// Advances to t_end with fixed dt (the last step is shortened to land on t_end). The observer sees
// the initial state, every `cadence` steps, and the final state. Gauss cleaning follows the options.
RunResult run(Integrator& integ, KineticState state, double t_end, double dt, long cadence, const Observer& obs);

}  // namespace vmb
