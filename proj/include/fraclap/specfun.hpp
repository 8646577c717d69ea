#pragma once

namespace fraclap {

/** Gamma function for positive real arguments.
 *
 * Lanczos approximation (g = 7, 9 terms) with the reflection formula for
 * x < 0.5. Relative error is a few 1e-16 across (0.5, 20), degrading mildly
 * toward the poles. Throws std::domain_error for x <= 0.
 */
double gamma_fn(double x);

/** Parameters of a Jacobi polynomial P_n^{(alpha,beta)}. */
struct JacobiParams {
  int n = 0;            // degree, >= 0
  double alpha = 0.0;   // > -1
  double beta = 0.0;    // > -1
};

/** Evaluate P_n^{(alpha,beta)}(x) by the standard three-term recurrence.
 *
 * P_0 = 1, P_1 = (alpha+beta+2)x/2 + (alpha-beta)/2. Stable for the
 * parameter ranges used here (alpha, beta > -1). Throws std::domain_error
 * on invalid degree or parameters.
 */
double jacobi_P(const JacobiParams& params, double x);

/** Confluent hypergeometric function 1F1(a; b; z).
 *
 * For z >= 0 the defining series is summed directly (one-signed for a,b > 0).
 * For z < 0 the Kummer transform 1F1(a;b;z) = e^z 1F1(b-a;b;-z) is always
 * applied so the summed series is not alternating; the direct alternating
 * series loses all digits well before z = -100.
 *
 * b must not be zero or a negative integer. Throws std::domain_error on bad
 * parameters, std::runtime_error if the series does not converge within the
 * term budget.
 */
double kummer_1f1(double a, double b, double z);

}  // namespace fraclap
