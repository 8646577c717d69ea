#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace fraclap {

class SymmetricToeplitz;

/** Time scheme for the fractional Allen-Cahn equation
 *  u_t + eps^2 (-Delta)^s u + f(u) = g,  f(u) = u(u-1)(2u-1)/2,
 * discretized with lumped mass (mass matrix -> h I). */
enum class TimeScheme { semi_implicit, crank_nicolson };

struct ACConfig {
  double s = 0.75;        // fractional order, in (s0, 1]
  double epsilon = 0.1;   // interface parameter, > 0
  double tau = 0.01;      // time step, > 0
  double T = 1.0;         // final time, > 0
  double a = -1.0;        // domain (a, b)
  double b = 1.0;
  int N = 64;             // mesh elements, >= 4
  TimeScheme scheme = TimeScheme::semi_implicit;
  std::function<double(double)> initial_condition;         // u0(x)
  std::function<double(double, double)> source;            // optional g(x,t)
};

struct ACState {
  std::vector<double> U;  // interior nodal values, length N-1
  double t = 0.0;
  long step = 0;
};

/** Per-step record of min U, max U, and the discrete energy. */
struct MonitorRow {
  double t = 0.0;
  double min_u = 0.0;
  double max_u = 0.0;
  double energy = 0.0;
};
using MonitorTrace = std::vector<MonitorRow>;

/** Double-well density F(u) = u^2 (u-1)^2 / 4 and its derivatives. */
double potential_F(double u);
double reaction_f(double u);    // F'(u) = u(u-1)(2u-1)/2
double reaction_fprime(double u);

/** Discrete energy E_h(U) = (eps^2/2) U^T S U + h sum_j F(U_j), where S is
 * the scaled stiffness operator divided by h (the lumped-mass normalization
 * used by the schemes). Defined so that it is non-increasing step to step
 * under the scheme guarantees.
 */
double discrete_energy(const SymmetricToeplitz& S_over_h, double h,
                       double epsilon, const std::vector<double>& U);

/** Largest time step for which the semi-implicit scheme preserves [0,1]
 * bounds regardless of h: tau <= 2 (from g(x) = x - tau f(x) mapping [0,1]
 * into itself).
 */
double si_step_bound();

/** Stability function phi(s) = cos(s pi) Gamma(4-2s) / (2^{3-2s} - 4) on
 * (s0, 1/2) and (1/2, 1], with the pinned literal pi/(16 ln 2) at s = 1/2.
 * Used only by the sharper diagnostic CN bound below.
 */
double varphi(double s);

/** Guaranteed Crank-Nicolson step bound min{2, h^{2s} / (2 eps^2)}. */
double cn_step_bound(double s, double h, double epsilon);

/** Manufactured source g(x,t) that makes u = exp(-t - lambda^2 x^2) an exact
 * solution on the whole line:
 * g = pi^{-1/2} (2 lambda)^{2s} Gamma(s+1/2) eps^2 e^{-t}
 *       1F1(s+1/2; 1/2; -lambda^2 x^2)
 *     - (1/2) e^{-t - lambda^2 x^2} - (3/2) e^{-2t - 2 lambda^2 x^2}
 *     + e^{-3t - 3 lambda^2 x^2}.
 */
double manufactured_source(double s, double epsilon, double lambda, double x,
                           double t);
double manufactured_solution(double lambda, double x, double t);

/** One step of each scheme, advancing state.U in place (state.t, state.step
 * updated). The Toeplitz operator passed in is I + kappa S-type and is built
 * once per run by run_allen_cahn; these entry points exist for tests.
 */
class ACStepper {
 public:
  ACStepper(const ACConfig& config);
  void step(ACState& state);
  const SymmetricToeplitz& stiffness_over_h() const;
  double mesh_h() const;
  /** Grid x_j for the interior nodes, length N-1. */
  std::vector<double> grid() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

struct ACRunResult {
  ACState final_state;
  MonitorTrace trace;
  bool guarantees_active = false;  // bounds/energy tripwires were armed
};

/** Time-march from t = 0 to T (last step shortened to land on T exactly).
 *
 * When no source is present, the initial data sits in [0,1], s is in
 * (s0, 1], and tau respects the scheme's guaranteed bound, the maximum
 * principle and energy decay are theorems; the run then arms tripwires and
 * throws std::runtime_error if min/max leave [0,1] by more than 1e-12 or the
 * energy increases by more than 1e-12 relative. Otherwise the monitors are
 * informational only. snapshot_times, when given, must be multiples of tau
 * up to rounding; the callback receives (t, U) at those times.
 */
ACRunResult run_allen_cahn(
    const ACConfig& config,
    const std::vector<double>& snapshot_times = {},
    const std::function<void(double, const std::vector<double>&)>&
        on_snapshot = {});

/** Least-squares slope of log|U| vs log|x| over the grid points with
 * |x| in [window_lo, window_hi] and |U| > floor (default 1e-13). For the
 * steady profiles here the expected slope is -(2s+1).
 */
double decay_exponent(const std::vector<double>& U,
                      const std::vector<double>& x, double window_lo,
                      double window_hi, double floor_abs = 1e-13);

/** Interface width: scanning from the left end, the distance between the
 * first upward crossings of lo and hi (linear interpolation between nodes).
 * Throws std::runtime_error if either level is never crossed.
 */
double interfacial_width(const std::vector<double>& U,
                         const std::vector<double>& x, double lo = 0.01,
                         double hi = 0.99);

}  // namespace fraclap
