#include "fraclap/kernel.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "fraclap/specfun.hpp"

namespace fraclap {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfWindow = 1e-6;  // fused branch half-width around s = 1/2
constexpr double kUnitWindow = 1e-9;  // exact-row window around s = 1

// fourth-difference weights c_{-2..2}
constexpr double kC[5] = {1.0, -4.0, 6.0, -4.0, 1.0};

void check_order(double s) {
  if (!(s > 0.0) || !(s < 1.5)) {
    throw std::domain_error("fractional order s must lie in (0, 3/2), got " +
                            std::to_string(s));
  }
}

// t_p for p in {0,1,2}. sum_i c_i |p+i|^l vanishes for l = 0,1,2, so the
// constant 1 inside |p+i|^{3-2s} = m^2 (1 + expm1((1-2s) ln m)) drops out
// exactly and the remaining sum has no leading-order cancellation.
double symbol_t_direct(double s, long p) {
  double w = 1.0 - 2.0 * s;
  double sum = 0.0;
  for (int i = -2; i <= 2; ++i) {
    long m = std::labs(p + i);
    if (m == 0) continue;  // 0 * ln 0 = 0
    double md = static_cast<double>(m);
    sum += kC[i + 2] * md * md * std::expm1(w * std::log(md));
  }
  return sum;
}

// t_p = sum_{n>=2} (2^{2n+1}-8) binom(alpha,2n) p^{alpha-2n}, alpha = 3-2s.
// One-signed from n = 2 on, term ratio -> 4/p^2, so p >= 3 converges fast.
// binom is carried by recurrence so the alpha = 1 (s = 1) case yields an
// exact 0 instead of 0/0 noise.
double symbol_t_series(double s, long p) {
  double alpha = 3.0 - 2.0 * s;
  double pd = static_cast<double>(p);
  double invp2 = 1.0 / (pd * pd);
  double binom = alpha * (alpha - 1.0) * (alpha - 2.0) * (alpha - 3.0) / 24.0;
  double pow2 = 32.0;  // 2^{2n+1} at n = 2
  double powfac = std::pow(pd, alpha - 4.0);
  double term = (pow2 - 8.0) * binom * powfac;
  double sum = term;
  for (int n = 3; n <= 200; ++n) {
    binom *= (alpha - 2.0 * n + 2.0) * (alpha - 2.0 * n + 1.0) /
             ((2.0 * n - 1.0) * (2.0 * n));
    pow2 *= 4.0;
    powfac *= invp2;
    term = (pow2 - 8.0) * binom * powfac;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) return sum;
  }
  throw std::runtime_error("symbol_t: series failed to converge (p >= 3 expected)");
}

// r_p = sum_{n>=2} c_n p^{-(2n-2)}, c_n = (2 - 2^{2n-1}) / (pi n (2n-1) (n-1)).
double symbol_half_series(long p) {
  double pd = static_cast<double>(p);
  double invp2 = 1.0 / (pd * pd);
  double pw = invp2;    // p^{-(2n-2)} at n = 2
  double pow2 = 8.0;    // 2^{2n-1} at n = 2
  double sum = 0.0;
  for (int n = 2; n <= 200; ++n) {
    double cn = (2.0 - pow2) / (kPi * n * (2.0 * n - 1.0) * (n - 1.0));
    double term = cn * pw;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) return sum;
    pow2 *= 4.0;
    pw *= invp2;
  }
  throw std::runtime_error("symbol_half: series failed to converge");
}

// ---- fused near-half evaluation --------------------------------------------
//
// Within |delta| < 1e-6, delta = s - 1/2, the product A_s t_p is evaluated as
// one expression so the pole of A_s at s = 1/2 cancels against the zero of
// t_p. Writing m^{3-2s} = m^2 e^{-2 delta ln m} and using cos(s pi) =
// -sin(delta pi),
//
//   A_s t_p = [1 / (2 Gamma(3-2delta))] sum_i c_i m^2 expm1(-2 delta L_i)
//             / (-sin(delta pi)),   L_i = ln m_i,
//
// and expm1(-2 delta L)/(-sin(delta pi)) = (2L/pi)(1 - delta L
//   + delta^2((2/3)L^2 + pi^2/6) + O(delta^3 L^3)), which is exact at
// delta = 0 (recovering r_p) and below roundoff through the whole window.

double half_fused_direct(double delta, long p) {
  double pref = 1.0 / (kPi * gamma_fn(3.0 - 2.0 * delta));
  double sum = 0.0;
  for (int i = -2; i <= 2; ++i) {
    long m = std::labs(p + i);
    if (m == 0) continue;
    double md = static_cast<double>(m);
    double L = std::log(md);
    double g = L * (1.0 - delta * L +
                    delta * delta * ((2.0 / 3.0) * L * L + kPi * kPi / 6.0));
    sum += kC[i + 2] * md * md * g;
  }
  return pref * sum;
}

// Same quantity through the series: A_s t_p = sum_{n>=2} fc_n p^{alpha-2n}
// with alpha = 2 - 2 delta and
//   fc_n = (2^{2n+1}-8) K prod_{j<=2n-1, j!=2}(alpha-j) / (2n)!,
//   K = (2 delta / sin(delta pi)) / (2 Gamma(3-2delta)).
// The (alpha-2) = -2delta factor of the binomial is what cancels the A_s
// pole, hence the skipped j = 2 and the delta/sin(delta pi) ratio. At
// delta = 0 the coefficients reduce exactly to the r_p series above.
double half_fused_series(double delta, long p) {
  double alpha = 2.0 - 2.0 * delta;
  double K = (delta == 0.0 ? 2.0 / kPi : 2.0 * delta / std::sin(delta * kPi)) /
             (2.0 * gamma_fn(3.0 - 2.0 * delta));
  double pd = static_cast<double>(p);
  double invp2 = 1.0 / (pd * pd);
  double prod = alpha * (alpha - 1.0) * (alpha - 3.0);
  double fact = 24.0;   // (2n)! at n = 2
  double pow2 = 32.0;   // 2^{2n+1} at n = 2
  double powfac = std::pow(pd, alpha - 4.0);
  double term = (pow2 - 8.0) / fact * prod * K * powfac;
  double sum = term;
  for (int n = 3; n <= 200; ++n) {
    prod *= (alpha - 2.0 * (n - 1.0)) * (alpha - 2.0 * (n - 1.0) - 1.0);
    fact *= (2.0 * n - 1.0) * (2.0 * n);
    pow2 *= 4.0;
    powfac *= invp2;
    term = (pow2 - 8.0) / fact * prod * K * powfac;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) return sum;
  }
  throw std::runtime_error("stiffness_first_row: near-half series failed to converge");
}

double half_fused_value(double delta, long p) {
  return p <= 2 ? half_fused_direct(delta, p) : half_fused_series(delta, p);
}

}  // namespace

void KernelParams::validate() const {
  check_order(s);
  if (!(b > a)) {
    throw std::invalid_argument("KernelParams: need b > a");
  }
  if (N < 2) {
    throw std::invalid_argument("KernelParams: need at least 2 elements");
  }
}

double symbol_t(double s, long p) {
  check_order(s);
  if (s == 0.5) {
    throw std::domain_error("symbol_t: s = 1/2 belongs to the half branch");
  }
  if (p < 0) throw std::domain_error("symbol_t: p must be nonnegative");
  return p <= 2 ? symbol_t_direct(s, p) : symbol_t_series(s, p);
}

double scale_As(double s) {
  check_order(s);
  if (s == 0.5) {
    throw std::domain_error("scale_As: pole at s = 1/2");
  }
  // cos(s pi) written as sin((1/2 - s) pi) so it stays fully accurate next
  // to the pole, where cos itself would only be good in absolute terms
  double c = std::sin((0.5 - s) * kPi);
  return 1.0 / (2.0 * gamma_fn(4.0 - 2.0 * s) * c);
}

double symbol_half(long p) {
  if (p < 0) throw std::domain_error("symbol_half: p must be nonnegative");
  if (p >= 3) return symbol_half_series(p);
  double sum = 0.0;
  for (int i = -2; i <= 2; ++i) {
    long m = std::labs(p + i);
    if (m == 0) continue;
    double md = static_cast<double>(m);
    sum += kC[i + 2] * md * md * std::log(md);
  }
  return sum / (2.0 * kPi);
}

ToeplitzSymbol stiffness_first_row(const KernelParams& params) {
  params.validate();
  const double s = params.s;
  const double h = params.h();
  const std::size_t M = static_cast<std::size_t>(params.N) - 1;
  ToeplitzSymbol sym;
  sym.values.resize(M);

  if (std::abs(s - 1.0) <= kUnitWindow) {
    sym.branch = SymbolBranch::unit;
    sym.scale = 1.0 / h;
    sym.values.assign(M, 0.0);
    sym.values[0] = 2.0;
    if (M > 1) sym.values[1] = -1.0;
    return sym;
  }
  if (std::abs(s - 0.5) < kHalfWindow) {
    double delta = s - 0.5;
    sym.branch = SymbolBranch::half;
    sym.scale = std::pow(h, -2.0 * delta);
    for (std::size_t p = 0; p < M; ++p) {
      sym.values[p] = half_fused_value(delta, static_cast<long>(p));
    }
    return sym;
  }
  sym.branch = SymbolBranch::generic;
  sym.scale = scale_As(s) * std::pow(h, 1.0 - 2.0 * s);
  for (std::size_t p = 0; p < M; ++p) {
    sym.values[p] = symbol_t(s, static_cast<long>(p));
  }
  return sym;
}

double normalization_constant(double s) {
  if (!(s > 0.0) || !(s < 1.0)) {
    throw std::domain_error("normalization_constant: s must lie in (0, 1)");
  }
  return std::pow(2.0, 2.0 * s) * s * gamma_fn(s + 0.5) /
         (std::sqrt(kPi) * gamma_fn(1.0 - s));
}

}  // namespace fraclap
