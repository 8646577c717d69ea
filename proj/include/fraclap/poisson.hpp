#pragma once

#include <functional>
#include <vector>

namespace fraclap {

/** Homogeneous Dirichlet problem (-Delta)^s u = f on (-1,1), u = 0 outside,
 * with the manufactured solution u = (1-x^2)^{n+s} whose forcing is known in
 * closed form. n controls the boundary regularity of the test pair.
 */
/** How the source enters the discrete system. The benchmark tables this
 * module reproduces sample f at the nodes (b_j = h f(x_j), the same lumping
 * convention the time-stepping module uses for its reaction term); galerkin
 * assembles the hat-weighted integrals instead. For s = 1 the two differ
 * sharply: the galerkin load makes piecewise-linear elements nodally exact,
 * while the lumped load leaves the familiar O(h^2) truncation error.
 */
enum class LoadAssembly { lumped, galerkin };

struct PoissonProblem {
  double s = 0.5;          // in (0, 3/2); s = 1 is the local Laplacian
  int n = 1;               // family index, >= 1
  int N = 8;               // mesh elements on (-1,1), >= 4
  LoadAssembly load = LoadAssembly::lumped;
  int quadrature_points = 5;  // Gauss-Legendre points per element (galerkin)
};

/** Exact solution u(x) = (1-x^2)^{n+s} on [-1,1], 0 outside. */
double exact_u(int n, double s, double x);

/** Closed-form forcing f = (-Delta)^s (1-x^2)^{n+s}:
 * f(x) = [2^{2s} Gamma(s+1/2) Gamma(n+s+1) / (sqrt(pi) n!)]
 *        * 2F1(-n, s+1/2; 1/2; x^2),
 * a polynomial of degree 2n in x, evaluated through the terminating
 * hypergeometric sum (the equivalent Jacobi form P_n^{(-1/2, s-n)} makes the
 * classical s = 1 limit come out right but its recurrence degenerates at
 * s = 1/2 for n >= 2, so the sum is used directly).
 */
double rhs_f(int n, double s, double x);

/** Load vector b_j = integral of f * hat_j over the two elements supporting
 * the j-th interior hat function, j = 1..N-1, by q-point Gauss-Legendre per
 * element (exact here for q = 5 since deg f = 2n <= 6 in all shipped runs).
 */
std::vector<double> load_vector(const std::function<double(double)>& f,
                                double a, double b, int N, int q);

/** Galerkin solve on the uniform mesh: returns interior nodal values U_1..U_{N-1}. */
std::vector<double> solve_poisson(const PoissonProblem& problem);

/** One row per mesh: h, max interior nodal error, and the observed rate
 * log2(err_{2h}/err_h) (first row's rate is NaN).
 */
struct ConvergenceTable {
  std::vector<double> h;
  std::vector<double> max_error;
  std::vector<double> rate;
};

/** Run the manufactured-solution sweep over a list of mesh sizes
 * (h = 2/N each). Expected rate is min(2, n+s) for s <= 1 in h.
 */
ConvergenceTable convergence_sweep(double s, int n, const std::vector<int>& Ns);

}  // namespace fraclap
