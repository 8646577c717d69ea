#include "fraclap/poisson.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fraclap/kernel.hpp"
#include "fraclap/specfun.hpp"
#include "fraclap/toeplitz.hpp"

namespace fraclap {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct GaussRule {
  std::vector<double> nodes;    // on (-1,1)
  std::vector<double> weights;
};

// Gauss-Legendre nodes by Newton on the Legendre recurrence; q <= ~60 keeps
// the cos starting guesses in their basins with room to spare.
GaussRule gauss_legendre(int q) {
  if (q < 1 || q > 64) {
    throw std::invalid_argument("gauss_legendre: order out of range");
  }
  GaussRule rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  for (int i = 0; i < (q + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= q; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[q - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[q - 1 - i] = w;
  }
  if (q % 2 == 1) rule.nodes[q / 2] = 0.0;  // exact middle for odd orders
  return rule;
}

void validate(const PoissonProblem& prob) {
  if (!(prob.s > 0.0) || !(prob.s < 1.5)) {
    throw std::invalid_argument("PoissonProblem: s must lie in (0, 3/2)");
  }
  if (prob.n < 1) throw std::invalid_argument("PoissonProblem: n must be >= 1");
  if (prob.N < 4) throw std::invalid_argument("PoissonProblem: N must be >= 4");
  if (prob.quadrature_points < 1) {
    throw std::invalid_argument("PoissonProblem: quadrature_points must be >= 1");
  }
}

}  // namespace

double exact_u(int n, double s, double x) {
  double w = 1.0 - x * x;
  if (w <= 0.0) return 0.0;
  return std::pow(w, n + s);
}

double rhs_f(int n, double s, double x) {
  if (n < 1) throw std::domain_error("rhs_f: n must be >= 1");
  if (!(s > 0.0) || !(s < 1.5)) {
    throw std::domain_error("rhs_f: s must lie in (0, 3/2)");
  }
  // terminating 2F1(-n, s+1/2; 1/2; x^2)
  double x2 = x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < n; ++k) {
    term *= (k - n) * (s + 0.5 + k) / ((0.5 + k) * (k + 1.0)) * x2;
    sum += term;
  }
  double nfact = gamma_fn(n + 1.0);
  double pref = std::pow(2.0, 2.0 * s) * gamma_fn(s + 0.5) *
                gamma_fn(n + s + 1.0) / (std::sqrt(kPi) * nfact);
  return pref * sum;
}

std::vector<double> load_vector(const std::function<double(double)>& f,
                                double a, double b, int N, int q) {
  if (!(b > a) || N < 2) {
    throw std::invalid_argument("load_vector: bad mesh");
  }
  GaussRule rule = gauss_legendre(q);
  double h = (b - a) / N;
  std::vector<double> out(N - 1, 0.0);
  // element e spans [a + e h, a + (e+1) h]; the hat of node j rises on
  // element j-1 and falls on element j
  for (int e = 0; e < N; ++e) {
    double xm = a + (e + 0.5) * h;
    for (int g = 0; g < q; ++g) {
      double xi = rule.nodes[g];
      double x = xm + 0.5 * h * xi;
      double fv = f(x) * rule.weights[g] * 0.5 * h;
      double up = 0.5 * (xi + 1.0);   // weight of the right-end node
      double down = 1.0 - up;         // weight of the left-end node
      if (e + 1 <= N - 1) out[e] += fv * up;        // node j = e+1 rising
      if (e >= 1) out[e - 1] += fv * down;          // node j = e falling
    }
  }
  return out;
}

std::vector<double> solve_poisson(const PoissonProblem& prob) {
  validate(prob);
  KernelParams kp;
  kp.s = prob.s;
  kp.a = -1.0;
  kp.b = 1.0;
  kp.N = prob.N;
  ToeplitzSymbol sym = stiffness_first_row(kp);
  std::vector<double> col(sym.size());
  for (std::size_t p = 0; p < sym.size(); ++p) col[p] = sym.entry(p);
  SymmetricToeplitz T(std::move(col));
  auto f = [&prob](double x) { return rhs_f(prob.n, prob.s, x); };
  std::vector<double> b;
  if (prob.load == LoadAssembly::lumped) {
    double h = kp.h();
    b.resize(sym.size());
    for (std::size_t j = 0; j < b.size(); ++j)
      b[j] = h * f(kp.a + (j + 1) * h);
  } else {
    b = load_vector(f, kp.a, kp.b, prob.N, prob.quadrature_points);
  }
  SolveOptions opts;  // 1e-12, circulant preconditioner
  return solve_spd(T, b, opts);
}

ConvergenceTable convergence_sweep(double s, int n, const std::vector<int>& Ns) {
  if (Ns.empty()) {
    throw std::invalid_argument("convergence_sweep: need at least one size");
  }
  ConvergenceTable tab;
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    PoissonProblem prob;
    prob.s = s;
    prob.n = n;
    prob.N = Ns[i];
    std::vector<double> U = solve_poisson(prob);
    double h = 2.0 / Ns[i];
    double err = 0.0;
    for (int j = 1; j < Ns[i]; ++j) {
      double x = -1.0 + j * h;
      err = std::max(err, std::abs(U[j - 1] - exact_u(n, s, x)));
    }
    tab.h.push_back(h);
    tab.max_error.push_back(err);
    if (i == 0) {
      tab.rate.push_back(std::numeric_limits<double>::quiet_NaN());
    } else {
      tab.rate.push_back(std::log2(tab.max_error[i - 1] / err) /
                         std::log2(tab.h[i - 1] / h));
    }
  }
  return tab;
}

}  // namespace fraclap
