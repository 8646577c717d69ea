#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace fraclap {

/** Symmetric Toeplitz operator defined by its first column.
 *
 * Matvec runs through a circulant embedding of size L = next power of two
 * >= 2M-1 and three FFTs (the generator transform is cached), so one apply
 * is O(L log L). The object owns its FFT plans and scratch buffers; applies
 * are serialized internally, so a const object is safe to share across
 * threads (calls are deterministic regardless).
 *
 * Move-only: the FFT state is not sharable.
 */
class SymmetricToeplitz {
 public:
  explicit SymmetricToeplitz(std::vector<double> first_column);
  ~SymmetricToeplitz();
  SymmetricToeplitz(SymmetricToeplitz&&) noexcept;
  SymmetricToeplitz& operator=(SymmetricToeplitz&&) noexcept;
  SymmetricToeplitz(const SymmetricToeplitz&) = delete;
  SymmetricToeplitz& operator=(const SymmetricToeplitz&) = delete;

  std::size_t size() const;
  const std::vector<double>& first_column() const;

  /** y = T x; x and y have length size() and must not alias. */
  void matvec(const double* x, double* y) const;
  std::vector<double> matvec(const std::vector<double>& x) const;

  /** Application of the inverse of the Strang circulant built from the first
   * column (c_j = t_j up to M/2, mirrored above; eigenvalues clamped away
   * from zero so the preconditioner stays SPD even when T is indefinite).
   * Built lazily and cached.
   */
  void strang_solve(const double* r, double* z) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

enum class Preconditioner { none, diagonal, circulant };

struct SolveOptions {
  double tol = 1e-12;        // on the relative 2-norm residual ||b - Tx||/||b||
  long max_iter = 0;         // 0 means 10 * size()
  Preconditioner precond = Preconditioner::circulant;
  const std::vector<double>* x0 = nullptr;  // optional warm start
  // Called after every iteration with (iteration index, current iterate);
  // for diagnostics and tests. Empty by default.
  std::function<void(long, const std::vector<double>&)> observer;
};

struct SolveStats {
  long iterations = 0;
  double relative_residual = 0.0;
};

/** Conjugate gradients on an SPD T. Throws std::runtime_error (with the
 * final residual in the message) if the tolerance is not reached within
 * max_iter iterations.
 */
std::vector<double> solve_spd(const SymmetricToeplitz& T,
                              const std::vector<double>& b,
                              const SolveOptions& opts = {},
                              SolveStats* stats = nullptr);

/** CG for a general SPD operator given as a matvec callback (used where the
 * operator is Toeplitz-plus-diagonal and cannot be embedded directly).
 * precond, when set, applies an SPD approximate inverse. Same failure
 * contract as solve_spd.
 */
std::vector<double> cg_solve(
    std::size_t n, const std::function<void(const double*, double*)>& apply,
    const std::vector<double>& b, double tol, long max_iter,
    const std::function<void(const double*, double*)>& precond = {},
    const std::vector<double>* x0 = nullptr, SolveStats* stats = nullptr);

struct EigPair {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

/** Extreme eigenvalues of an SPD T.
 *
 * lambda_max by power iteration (deterministic seeded start); the top of the
 * spectrum is a near-cluster with relative gaps O(1/M^2), so plain
 * Rayleigh-quotient-change stopping would stall: the stop rule estimates the
 * remaining error from the geometric tail of the quotient increments and
 * exits when that estimate drops below tol * lambda. lambda_min by inverse
 * iteration (circulant-preconditioned CG inner solves); the bottom gap ratio
 * is bounded away from 1 so this end converges in tens of iterations.
 */
EigPair extreme_eigs(const SymmetricToeplitz& T, double tol);

/** Eigenvalue growth/decay across a ladder of sizes for one order s, with
 * log-log least-squares exponents. Mesh is (0,1) with h = 1/N, so the
 * expected exponents are 2s-1 (max), -1 (min), 2s (condition number).
 */
struct SpectrumReport {
  double s = 0.0;
  std::vector<int> sizes;           // mesh element counts N
  std::vector<double> lambda_min;
  std::vector<double> lambda_max;
  std::vector<double> cond;
  double e_min = 0.0;   // slope of ln(lambda_min) vs ln(N)
  double e_max = 0.0;
  double e_cond = 0.0;
};

SpectrumReport condition_scaling(double s, const std::vector<int>& sizes);

}  // namespace fraclap
