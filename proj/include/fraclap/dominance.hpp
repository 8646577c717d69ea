#pragma once

#include <vector>

#include "fraclap/kernel.hpp"

namespace fraclap {

/** Diagonal dominance regime of the stiffness matrix as a function of s. */
enum class DominanceRegime {
  strict_dd,         // s in [s0, 1]: dominant for every N (strictly for
                     // s < 1; at s = 1 interior deficits are exactly zero)
  conditional_dd,    // s in (0, s0): dominant iff N <= n0(s)
  interior_non_dd,   // s in (1, 3/2): first row dominant, interior rows not
};

/** Row-wise dominance summary for one (s, N) pair.
 *
 * deficits[k-1] = d_k = |S_kk| - sum_{j != k} |S_kj| for rows k = 1..N-1.
 * n0_formula / n0_exact are only meaningful in the conditional regime and
 * are -1 otherwise.
 */
struct DominanceReport {
  double s = 0.0;
  int N = 0;
  std::vector<double> deficits;
  DominanceRegime regime = DominanceRegime::strict_dd;
  double min_deficit = 0.0;
  int argmin_k = 0;   // 1-based row index attaining min_deficit
  long n0_formula = -1;
  long n0_exact = -1;
};

/** The raw off-diagonal symbol value t_1(s) = 7 + 3^{3-2s} - 2^{5-2s} on
 * (0, 3/2). Its roots are s0 (~0.2374) and exactly s = 1/2; it is negative
 * between them and positive outside. This is the unscaled quantity whose
 * sign drives the dominance classification, not the matrix entry itself.
 */
double t1_of(double s);

/** Unique root s0 of t_1 in (0, 1/2): below s0 the first off-diagonal is
 * positive and dominance eventually fails as N grows; above it t_1 < 0 up to
 * s = 1/2. Bisection to tol, cached per process for the default tol (1e-10).
 * s0 = 0.23737707 to the digits shown; beware the easy transposition to
 * 0.2347, which is not a root (t_1 there is ~8.9e-3).
 */
double find_s0(double tol = 1e-10);

/** Stationary point of t_1 in (0, 1/2),
 * s* = 3/2 - (ln(8 ln 2) - ln(2 ln 3)) / (2 (ln 3 - ln 2)) ~ 0.3584,
 * where t_1 switches from decreasing to increasing. Closed form.
 */
double s_star();

/** All row deficits d_1..d_{N-1} for the given mesh/order, from the scaled
 * first row (O(N) after the row build; prefix sums over |entries|).
 */
std::vector<double> row_deficits(const KernelParams& params);

/** S_m = sum_{p=2}^{m} |t_p| without forming the summands: the fourth-order
 * telescoping t_p = G_{p-1} - G_p collapses the sum to |G_1 - G_m|, where
 * G_q = f_{q-1} - 3 f_q + 3 f_{q+1} - f_{q+2}, f_q = q^{3-2s} (or the
 * (1/2pi) q^2 ln q analogue at s = 1/2). G_q itself is evaluated by a
 * convergent series in 1/(q+1) for q >= 32 and directly below that.
 * Requires m >= 2, s in (0,3/2) with the t_p one-signed on p >= 2
 * (s != 1 excluded; at s = 1 the sum is 0 and that value is returned).
 */
double partial_abs_sum(double s, long m);

/** Closed-form dominance horizon for s in (0, s0):
 * N0 = floor( 2 (gamma(s)/t_1(s))^{1/(2s)} ), gamma(s) = (1-2s)(1-s)(3-2s).
 * Throws std::domain_error outside (0, s0).
 */
long n0_formula(double s);

/** Exact dominance horizon for s in (0, s0): the largest N such that the
 * worst row (k = floor(N/2)) is still strictly dominant at N, found by
 * geometric bracketing + bisection on the monotone deficit, then a +-3
 * window scan to be safe against parity effects. Search capped at 1e6.
 */
long n0_exact(double s);

/** Regime classification with the cached s0. */
DominanceRegime classify(double s);

/** Full report for one (s, N). */
DominanceReport dominance_report(const KernelParams& params);

}  // namespace fraclap
