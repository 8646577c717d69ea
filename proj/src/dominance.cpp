#include "fraclap/dominance.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fraclap {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr long kSearchCap = 1000000;

void check_order(double s) {
  if (!(s > 0.0) || !(s < 1.5)) {
    throw std::domain_error("fractional order s must lie in (0, 3/2), got " +
                            std::to_string(s));
  }
}

// G_q = f_{q-1} - 3 f_q + 3 f_{q+1} - f_{q+2} with f_q = q^{3-2s}; the
// third difference of the symbol's power function. t_p = G_{p-1} - G_p, so
// partial sums of t_p telescope through G.
double g_direct(double s, long q) {
  double alpha = 3.0 - 2.0 * s;
  auto f = [alpha](long m) {
    return m == 0 ? 0.0 : std::pow(static_cast<double>(m), alpha);
  };
  return f(q - 1) - 3.0 * f(q) + 3.0 * f(q + 1) - f(q + 2);
}

// G_q = sum_{n>=3} chat_n (q+1)^{alpha-n},
// chat_n = (-1)^n (2^n - (-1)^n - 3) alpha(alpha-1)...(alpha-n+1) / n!.
// Term ratio -> 2/(q+1); used for q >= 32 where the direct third difference
// has lost ~q^3 worth of digits.
double g_series(double s, long q) {
  double alpha = 3.0 - 2.0 * s;
  double base = static_cast<double>(q + 1);
  double invb = 1.0 / base;
  double prod = alpha * (alpha - 1.0) * (alpha - 2.0);  // falling factorial, n = 3
  double fact = 6.0;
  double pow2 = 8.0;        // 2^n at n = 3
  double sgn = -1.0;        // (-1)^n at n = 3
  double powfac = std::pow(base, alpha - 3.0);
  double term = sgn * (pow2 - sgn - 3.0) * prod / fact * powfac;
  double sum = term;
  for (int n = 4; n <= 400; ++n) {
    prod *= (alpha - (n - 1.0));
    fact *= n;
    pow2 *= 2.0;
    sgn = -sgn;
    powfac *= invb;
    term = sgn * (pow2 - sgn - 3.0) * prod / fact * powfac;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) return sum;
  }
  throw std::runtime_error("partial_abs_sum: tail series failed to converge");
}

// Same third difference for the s = 1/2 branch, f_q = (1/2pi) q^2 ln q.
double g_half_direct(long q) {
  auto f = [](long m) {
    if (m == 0) return 0.0;
    double md = static_cast<double>(m);
    return md * md * std::log(md) / (2.0 * kPi);
  };
  return f(q - 1) - 3.0 * f(q) + 3.0 * f(q + 1) - f(q + 2);
}

// G_q at s = 1/2:
// G_q = -(1/pi) sum_{n>=1} (2^{n+2} + (-1)^{n+1} - 3) / (n(n+1)(n+2)) (q+1)^{-n}.
double g_half_series(long q) {
  double base = static_cast<double>(q + 1);
  double invb = 1.0 / base;
  double pow2 = 8.0;   // 2^{n+2} at n = 1
  double sgn = 1.0;    // (-1)^{n+1} at n = 1
  double pw = invb;
  double sum = 0.0;
  for (int n = 1; n <= 400; ++n) {
    double term = -(pow2 + sgn - 3.0) / (kPi * n * (n + 1.0) * (n + 2.0)) * pw;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) return sum;
    pow2 *= 2.0;
    sgn = -sgn;
    pw *= invb;
  }
  throw std::runtime_error("partial_abs_sum: half-branch tail series failed to converge");
}

double g_of(double s, long q) {
  if (s == 0.5) return q >= 32 ? g_half_series(q) : g_half_direct(q);
  return q >= 32 ? g_series(s, q) : g_direct(s, q);
}

// sum_{p=1}^{m} |t_p| including the first off-diagonal, with S_1 = |t_1|.
double abs_sum_from_1(double s, long m, double abs_t1) {
  if (m <= 0) return 0.0;
  if (m == 1) return abs_t1;
  return abs_t1 + partial_abs_sum(s, m);
}

// Deficit of the worst row k = floor(N/2) in unscaled t units; strict
// dominance of the whole matrix at this N is equivalent to positivity here.
double middle_row_deficit(double s, long N, double abs_t0, double abs_t1) {
  long k = N / 2;
  return abs_t0 - abs_sum_from_1(s, k - 1, abs_t1) -
         abs_sum_from_1(s, N - 1 - k, abs_t1);
}

}  // namespace

double t1_of(double s) {
  check_order(s);
  // 9 * 3^{1-2s} - 16 * 2^{1-2s} + 7 via expm1 keeps full precision near the
  // roots, where the plain powers would cancel to ~1e-12
  double w = 1.0 - 2.0 * s;
  return 9.0 * std::expm1(w * std::log(3.0)) - 16.0 * std::expm1(w * std::log(2.0));
}

double s_star() {
  double l2 = std::log(2.0), l3 = std::log(3.0);
  return 1.5 - (std::log(8.0 * l2) - std::log(2.0 * l3)) / (2.0 * (l3 - l2));
}

double find_s0(double tol) {
  if (!(tol > 0.0)) throw std::domain_error("find_s0: tol must be positive");
  auto bisect = [](double tol_) {
    double lo = 0.01, hi = s_star();
    // t_1 > 0 at the left edge, < 0 at the stationary point
    for (int it = 0; it < 200 && (hi - lo) > tol_; ++it) {
      double mid = 0.5 * (lo + hi);
      (t1_of(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  if (tol == 1e-10) {
    static const double cached = bisect(1e-10);
    return cached;
  }
  return bisect(tol);
}

std::vector<double> row_deficits(const KernelParams& params) {
  ToeplitzSymbol sym = stiffness_first_row(params);
  const long M = static_cast<long>(sym.size());  // = N-1 rows
  // prefix[m] = sum_{p=1}^{m} |entry(p)|
  std::vector<double> prefix(M, 0.0);
  for (long m = 1; m < M; ++m) {
    prefix[m] = prefix[m - 1] + std::abs(sym.entry(m));
  }
  double diag = std::abs(sym.entry(0));
  std::vector<double> d(M);
  for (long k = 1; k <= M; ++k) {
    d[k - 1] = diag - prefix[k - 1] - prefix[M - k];
  }
  return d;
}

double partial_abs_sum(double s, long m) {
  check_order(s);
  if (m < 2) throw std::invalid_argument("partial_abs_sum: need m >= 2");
  if (s == 1.0) return 0.0;  // t_p vanishes identically for p >= 2
  // t_p is one-signed on p >= 2, so |sum| = sum of absolute values
  return std::abs(g_of(s, 1) - g_of(s, m));
}

long n0_formula(double s) {
  double s0 = find_s0();
  if (!(s > 0.0) || !(s < s0)) {
    throw std::domain_error("n0_formula: defined for s in (0, s0)");
  }
  double gam = (1.0 - 2.0 * s) * (1.0 - s) * (3.0 - 2.0 * s);
  double val = 2.0 * std::pow(gam / t1_of(s), 1.0 / (2.0 * s));
  if (!(val < 9e18)) {
    throw std::runtime_error("n0_formula: horizon overflows the integer range");
  }
  return static_cast<long>(std::floor(val));
}

long n0_exact(double s) {
  double s0 = find_s0();
  if (!(s > 0.0) || !(s < s0)) {
    throw std::domain_error("n0_exact: defined for s in (0, s0)");
  }
  double t0 = std::abs(symbol_t(s, 0));
  double t1 = std::abs(symbol_t(s, 1));
  auto deficit = [&](long N) { return middle_row_deficit(s, N, t0, t1); };

  long lo = 4;
  if (deficit(lo) <= 0.0) return 3;  // dominance already gone past trivial sizes
  long hi = lo;
  while (deficit(hi) > 0.0) {
    if (hi >= kSearchCap) {
      throw std::runtime_error(
          "n0_exact: still dominant at the search cap (N = 1e6)");
    }
    lo = hi;
    hi = std::min(hi * 2, kSearchCap);
  }
  // invariant: deficit(lo) > 0 >= deficit(hi); the deficit is monotone in N
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    (deficit(mid) > 0.0 ? lo : hi) = mid;
  }
  // parity-safety scan around the crossing
  long best = lo;
  for (long N = std::max<long>(4, lo - 3); N <= std::min(kSearchCap, lo + 3); ++N) {
    if (deficit(N) > 0.0) {
      best = std::max(best, N);
    } else {
      break;
    }
  }
  return best;
}

DominanceRegime classify(double s) {
  check_order(s);
  double s0 = find_s0();
  if (s < s0) return DominanceRegime::conditional_dd;
  if (s <= 1.0) return DominanceRegime::strict_dd;
  return DominanceRegime::interior_non_dd;
}

DominanceReport dominance_report(const KernelParams& params) {
  DominanceReport rep;
  rep.s = params.s;
  rep.N = params.N;
  rep.deficits = row_deficits(params);
  rep.regime = classify(params.s);
  rep.min_deficit = rep.deficits[0];
  rep.argmin_k = 1;
  for (std::size_t i = 1; i < rep.deficits.size(); ++i) {
    if (rep.deficits[i] < rep.min_deficit) {
      rep.min_deficit = rep.deficits[i];
      rep.argmin_k = static_cast<int>(i + 1);
    }
  }
  if (rep.regime == DominanceRegime::conditional_dd) {
    rep.n0_formula = n0_formula(params.s);
    rep.n0_exact = n0_exact(params.s);
  }
  return rep;
}

}  // namespace fraclap
