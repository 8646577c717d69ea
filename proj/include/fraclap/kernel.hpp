#pragma once

#include <cstddef>
#include <vector>

namespace fraclap {

/** Mesh and order parameters for the stiffness matrix of the integral
 *  fractional Laplacian on (a,b) with a uniform mesh of N elements.
 *
 * The matrix acts on the N-1 interior hat functions; h = (b-a)/N.
 */
struct KernelParams {
  double s = 0.5;   // fractional order, in (0, 1.5)
  double a = -1.0;  // left endpoint
  double b = 1.0;   // right endpoint
  int N = 2;        // number of mesh elements, >= 2

  double h() const { return (b - a) / N; }

  /** Throws std::invalid_argument if any field is out of range. */
  void validate() const;
};

/** Which closed form generated the symbol values. */
enum class SymbolBranch {
  generic,  // s away from 1/2 and 1: scale = A_s h^{1-2s}, values = t_p
  half,     // |s - 1/2| < 1e-6: scale = h^{-2(s-1/2)}, values = fused r-like entries
  unit,     // |s - 1| <= 1e-9: scale = 1/h, values = {2, -1, 0, ...}
};

/** First row (= first column) of the symmetric Toeplitz stiffness matrix.
 *
 * entry(p) is the matrix entry S_{k, k+p}; values has length N-1.
 * The scale/values split keeps the h-dependence and the order-dependent
 * combinatorial factor out of the tabulated sequence, which is what the
 * diagonal-dominance analysis consumes.
 */
struct ToeplitzSymbol {
  std::vector<double> values;
  double scale = 1.0;
  SymbolBranch branch = SymbolBranch::generic;

  double entry(std::size_t p) const { return scale * values[p]; }
  std::size_t size() const { return values.size(); }
};

/** Unscaled symbol value t_p for s in (0, 3/2), s != 1/2.
 *
 * t_p = sum_{i=-2}^{2} c_i |p+i|^{3-2s} with c = {1,-4,6,-4,1}. The naive
 * sum cancels catastrophically for large p (t_p ~ p^{1-2s-2} while the
 * summands grow like p^{3-2s}), so:
 *   p <= 2 : exact rearrangement through expm1 (the identity
 *            sum c_i |p+i|^l = 0 for l = 0,1,2 removes the constant part);
 *   p >= 3 : even-order series t_p = sum_{n>=2} c_n^{(alpha)} / p^{2n-alpha},
 *            alpha = 3-2s, c_n^{(alpha)} = (2^{2n+1}-8) binom(alpha, 2n),
 *            whose terms are one-signed and shrink by ~4/p^2 per term.
 * Throws std::domain_error for s outside (0,3/2) or s = 1/2, or p < 0.
 */
double symbol_t(double s, long p);

/** Order-dependent scale A_s = 1 / (2 Gamma(4-2s) cos(s pi)).
 *
 * Positive for s < 1/2, negative for s in (1/2, 3/2). Throws
 * std::domain_error at s = 1/2 (pole) and outside (0, 3/2).
 */
double scale_As(double s);

/** Symbol value r_p at exactly s = 1/2 (h-independent branch).
 *
 * r_p = (1/2pi) sum_i c_i (p+i)^2 ln|p+i| with 0 ln 0 = 0. Direct for
 * p <= 2, series in 1/p^2 for p >= 3 (same cancellation issue as t_p).
 */
double symbol_half(long p);

/** Build the full first row of the stiffness matrix, picking the branch:
 * |s-1| <= 1e-9 -> unit, |s-1/2| < 1e-6 -> fused near-half evaluation
 * (exact at s = 1/2), otherwise generic. Validates params.
 */
ToeplitzSymbol stiffness_first_row(const KernelParams& params);

/** Normalization constant of the fractional Laplacian,
 * C_s = 2^{2s} s Gamma(s+1/2) / (sqrt(pi) Gamma(1-s)), for s in (0,1).
 * C_{1/2} = 1/pi. Throws std::domain_error outside (0,1).
 */
double normalization_constant(double s);

}  // namespace fraclap
