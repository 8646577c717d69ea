#include "fraclap/toeplitz.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "fraclap/kernel.hpp"

namespace fraclap {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t L = 1;
  while (L < n) L <<= 1;
  return L;
}

// Deterministic start vectors for the eigen-iterations (splitmix64).
double seeded_unit(std::vector<double>& v, unsigned long long seed) {
  unsigned long long x = seed;
  for (double& vi : v) {
    x += 0x9e3779b97f4a7c15ull;
    unsigned long long z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z = z ^ (z >> 31);
    vi = static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
  }
  double nrm = 0.0;
  for (double vi : v) nrm += vi * vi;
  nrm = std::sqrt(nrm);
  for (double& vi : v) vi /= nrm;
  return nrm;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

struct SymmetricToeplitz::Impl {
  std::vector<double> col;
  std::size_t M = 0;
  std::size_t L = 0;  // circulant embedding size, power of two >= 2M-1

  // embedding-size transforms and cached generator spectrum (real, since the
  // embedded generator is even)
  double* rbuf = nullptr;
  fftw_complex* cbuf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::vector<double> gen;  // L/2+1 spectrum values

  // Strang circulant state (size-M transforms), built on first use
  bool strang_ready = false;
  double* srbuf = nullptr;
  fftw_complex* scbuf = nullptr;
  fftw_plan sfwd = nullptr;
  fftw_plan sbwd = nullptr;
  std::vector<double> strang_eigs;  // M/2+1 clamped eigenvalues

  mutable std::mutex apply_mutex;

  ~Impl() {
    std::lock_guard<std::mutex> lk(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (sfwd) fftw_destroy_plan(sfwd);
    if (sbwd) fftw_destroy_plan(sbwd);
    if (rbuf) fftw_free(rbuf);
    if (cbuf) fftw_free(cbuf);
    if (srbuf) fftw_free(srbuf);
    if (scbuf) fftw_free(scbuf);
  }
};

SymmetricToeplitz::SymmetricToeplitz(std::vector<double> first_column)
    : impl_(new Impl) {
  if (first_column.empty()) {
    throw std::invalid_argument("SymmetricToeplitz: empty first column");
  }
  impl_->col = std::move(first_column);
  impl_->M = impl_->col.size();
  impl_->L = next_pow2(2 * impl_->M - 1);
  const std::size_t L = impl_->L;

  {
    std::lock_guard<std::mutex> lk(planner_mutex());
    impl_->rbuf = fftw_alloc_real(L);
    impl_->cbuf = fftw_alloc_complex(L / 2 + 1);
    impl_->fwd = fftw_plan_dft_r2c_1d(static_cast<int>(L), impl_->rbuf,
                                      impl_->cbuf, FFTW_ESTIMATE);
    impl_->bwd = fftw_plan_dft_c2r_1d(static_cast<int>(L), impl_->cbuf,
                                      impl_->rbuf, FFTW_ESTIMATE);
  }

  // generator: col wrapped symmetrically, zero-padded in the middle
  std::fill(impl_->rbuf, impl_->rbuf + L, 0.0);
  impl_->rbuf[0] = impl_->col[0];
  for (std::size_t j = 1; j < impl_->M; ++j) {
    impl_->rbuf[j] = impl_->col[j];
    impl_->rbuf[L - j] = impl_->col[j];
  }
  fftw_execute(impl_->fwd);
  impl_->gen.resize(L / 2 + 1);
  for (std::size_t k = 0; k <= L / 2; ++k) {
    impl_->gen[k] = impl_->cbuf[k][0];  // imaginary parts are roundoff
  }
}

SymmetricToeplitz::~SymmetricToeplitz() = default;
SymmetricToeplitz::SymmetricToeplitz(SymmetricToeplitz&&) noexcept = default;
SymmetricToeplitz& SymmetricToeplitz::operator=(SymmetricToeplitz&&) noexcept =
    default;

std::size_t SymmetricToeplitz::size() const { return impl_->M; }

const std::vector<double>& SymmetricToeplitz::first_column() const {
  return impl_->col;
}

void SymmetricToeplitz::matvec(const double* x, double* y) const {
  Impl& im = *impl_;
  std::lock_guard<std::mutex> lk(im.apply_mutex);
  const std::size_t L = im.L, M = im.M;
  std::memcpy(im.rbuf, x, M * sizeof(double));
  std::fill(im.rbuf + M, im.rbuf + L, 0.0);
  fftw_execute(im.fwd);
  const double inv = 1.0 / static_cast<double>(L);
  for (std::size_t k = 0; k <= L / 2; ++k) {
    double g = im.gen[k] * inv;
    im.cbuf[k][0] *= g;
    im.cbuf[k][1] *= g;
  }
  fftw_execute(im.bwd);
  std::memcpy(y, im.rbuf, M * sizeof(double));
}

std::vector<double> SymmetricToeplitz::matvec(const std::vector<double>& x) const {
  if (x.size() != impl_->M) {
    throw std::invalid_argument("SymmetricToeplitz::matvec: size mismatch");
  }
  std::vector<double> y(impl_->M);
  matvec(x.data(), y.data());
  return y;
}

void SymmetricToeplitz::strang_solve(const double* r, double* z) const {
  Impl& im = *impl_;
  std::lock_guard<std::mutex> lk(im.apply_mutex);
  const std::size_t M = im.M;
  if (!im.strang_ready) {
    {
      std::lock_guard<std::mutex> plk(planner_mutex());
      im.srbuf = fftw_alloc_real(M);
      im.scbuf = fftw_alloc_complex(M / 2 + 1);
      im.sfwd = fftw_plan_dft_r2c_1d(static_cast<int>(M), im.srbuf, im.scbuf,
                                     FFTW_ESTIMATE);
      im.sbwd = fftw_plan_dft_c2r_1d(static_cast<int>(M), im.scbuf, im.srbuf,
                                     FFTW_ESTIMATE);
    }
    // Strang's circulant: keep the central diagonals, wrap the rest
    for (std::size_t j = 0; j < M; ++j) {
      im.srbuf[j] = (j <= M / 2) ? im.col[j] : im.col[M - j];
    }
    fftw_execute(im.sfwd);
    im.strang_eigs.resize(M / 2 + 1);
    double peak = 0.0;
    for (std::size_t k = 0; k <= M / 2; ++k) {
      im.strang_eigs[k] = im.scbuf[k][0];
      peak = std::max(peak, std::abs(im.strang_eigs[k]));
    }
    // clamp so the preconditioner stays SPD even if a wrapped eigenvalue
    // dips nonpositive
    double floor_val = std::max(peak, 1.0) * 1e-12;
    for (double& e : im.strang_eigs) e = std::max(e, floor_val);
    im.strang_ready = true;
  }
  std::memcpy(im.srbuf, r, M * sizeof(double));
  fftw_execute(im.sfwd);
  const double inv = 1.0 / static_cast<double>(M);
  for (std::size_t k = 0; k <= M / 2; ++k) {
    double g = inv / im.strang_eigs[k];
    im.scbuf[k][0] *= g;
    im.scbuf[k][1] *= g;
  }
  fftw_execute(im.sbwd);
  std::memcpy(z, im.srbuf, M * sizeof(double));
}

namespace {

std::vector<double> cg_impl(
    std::size_t n, const std::function<void(const double*, double*)>& apply,
    const std::vector<double>& b, double tol, long max_iter,
    const std::function<void(const double*, double*)>& precond,
    const std::vector<double>* x0, SolveStats* stats,
    const std::function<void(long, const std::vector<double>&)>& observer) {
  if (b.size() != n) throw std::invalid_argument("cg_solve: size mismatch");
  std::vector<double> x(n, 0.0);
  double bnorm = norm2(b);
  if (bnorm == 0.0) {
    if (stats) *stats = {0, 0.0};
    return x;
  }
  std::vector<double> r(n), z(n), p(n), w(n);
  if (x0 && !x0->empty()) {
    x = *x0;
    apply(x.data(), w.data());
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - w[i];
  } else {
    r = b;
  }
  auto prec = [&](const std::vector<double>& in, std::vector<double>& out) {
    if (precond) {
      precond(in.data(), out.data());
    } else {
      out = in;
    }
  };
  prec(r, z);
  p = z;
  double rz = dot(r, z);
  double rel = norm2(r) / bnorm;
  if (rel <= tol) {
    if (stats) *stats = {0, rel};
    return x;
  }
  for (long it = 1; it <= max_iter; ++it) {
    apply(p.data(), w.data());
    double pw = dot(p, w);
    if (!(pw > 0.0)) {
      throw std::runtime_error("cg_solve: operator is not positive definite");
    }
    double alpha = rz / pw;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * w[i];
    }
    if (observer) observer(it, x);
    rel = norm2(r) / bnorm;
    if (rel <= tol) {
      if (stats) *stats = {it, rel};
      return x;
    }
    prec(r, z);
    double rz_new = dot(r, z);
    double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  std::ostringstream oss;
  oss << "cg_solve: no convergence in " << max_iter
      << " iterations (relative residual " << rel << ")";
  throw std::runtime_error(oss.str());
}

}  // namespace

std::vector<double> cg_solve(
    std::size_t n, const std::function<void(const double*, double*)>& apply,
    const std::vector<double>& b, double tol, long max_iter,
    const std::function<void(const double*, double*)>& precond,
    const std::vector<double>* x0, SolveStats* stats) {
  return cg_impl(n, apply, b, tol, max_iter, precond, x0, stats, {});
}

std::vector<double> solve_spd(const SymmetricToeplitz& T,
                              const std::vector<double>& b,
                              const SolveOptions& opts, SolveStats* stats) {
  const std::size_t n = T.size();
  if (b.size() != n) throw std::invalid_argument("solve_spd: size mismatch");
  long max_iter = opts.max_iter > 0 ? opts.max_iter : 10 * static_cast<long>(n);

  std::function<void(const double*, double*)> prec;
  switch (opts.precond) {
    case Preconditioner::none:
      break;
    case Preconditioner::diagonal: {
      double d = T.first_column()[0];
      if (!(d > 0.0)) {
        throw std::runtime_error("solve_spd: nonpositive diagonal");
      }
      prec = [d, n](const double* in, double* out) {
        for (std::size_t i = 0; i < n; ++i) out[i] = in[i] / d;
      };
      break;
    }
    case Preconditioner::circulant:
      prec = [&T](const double* in, double* out) { T.strang_solve(in, out); };
      break;
  }

  auto apply = [&T](const double* in, double* out) { T.matvec(in, out); };
  return cg_impl(n, apply, b, opts.tol, max_iter, prec, opts.x0, stats,
                 opts.observer);
}

namespace {

// Shared stop rule for the two eigen-iterations. The Rayleigh quotient
// converges through a continuum of near-degenerate modes, so its increments
// decay algebraically first and geometrically only at the very end; the
// remaining error is estimated from the increment ratio (geometric-tail
// bound, which also covers the algebraic phase within a small factor) and
// the iteration stops once 3x the estimate clears the tolerance twice in a
// row.
class QuotientTail {
 public:
  explicit QuotientTail(double tol) : tol_(tol) {}

  bool converged(double lam) {
    double change = std::abs(lam - prev_);
    bool ok = false;
    if (have_prev_change_) {
      double est;
      if (change == 0.0 && prev_change_ == 0.0) {
        est = 0.0;
      } else if (prev_change_ > 0.0 && change < prev_change_) {
        double rho = change / prev_change_;
        est = change * rho / (1.0 - rho);
      } else {
        est = std::numeric_limits<double>::infinity();
      }
      ok = 3.0 * est <= tol_ * std::abs(lam);
    }
    hits_ = ok ? hits_ + 1 : 0;
    prev_change_ = change;
    have_prev_change_ = true;
    prev_ = lam;
    return hits_ >= 2;
  }

 private:
  double tol_;
  double prev_ = 0.0;
  double prev_change_ = 0.0;
  bool have_prev_change_ = false;
  int hits_ = 0;
};

}  // namespace

EigPair extreme_eigs(const SymmetricToeplitz& T, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("extreme_eigs: tol must be positive");
  const std::size_t M = T.size();
  EigPair out;
  if (M == 1) {
    out.lambda_min = out.lambda_max = T.first_column()[0];
    return out;
  }

  // power iteration for the top
  {
    std::vector<double> v(M), w(M);
    seeded_unit(v, 0x5eed0001ull);
    QuotientTail stop(tol);
    double lam = 0.0;
    bool done = false;
    for (long it = 0; it < 50000000; ++it) {
      T.matvec(v.data(), w.data());
      lam = dot(v, w);
      bool conv = stop.converged(lam);
      if (it >= 5 && conv) {
        done = true;
        break;
      }
      double nrm = norm2(w);
      if (!(nrm > 0.0)) {
        throw std::runtime_error("extreme_eigs: power iteration collapsed");
      }
      for (std::size_t i = 0; i < M; ++i) v[i] = w[i] / nrm;
    }
    if (!done) {
      throw std::runtime_error("extreme_eigs: power iteration did not converge");
    }
    out.lambda_max = lam;
  }

  // inverse iteration for the bottom (quotient of T^{-1}, then invert)
  {
    std::vector<double> v(M), w(M);
    seeded_unit(v, 0x5eed0002ull);
    SolveOptions sopts;
    sopts.tol = 1e-13;
    sopts.precond = Preconditioner::circulant;
    sopts.max_iter = 40 * static_cast<long>(M);
    QuotientTail stop(tol);
    double mu = 0.0;
    bool done = false;
    std::vector<double> guess;
    for (long it = 0; it < 200000; ++it) {
      sopts.x0 = guess.empty() ? nullptr : &guess;
      w = solve_spd(T, v, sopts);
      mu = dot(v, w);
      if (!(mu > 0.0)) {
        throw std::runtime_error("extreme_eigs: operator is not positive definite");
      }
      bool conv = stop.converged(mu);
      if (it >= 5 && conv) {
        done = true;
        break;
      }
      double nrm = norm2(w);
      for (std::size_t i = 0; i < M; ++i) v[i] = w[i] / nrm;
      // the next solve returns roughly v / lambda_min = v * mu
      guess.resize(M);
      for (std::size_t i = 0; i < M; ++i) guess[i] = v[i] * mu;
    }
    if (!done) {
      throw std::runtime_error("extreme_eigs: inverse iteration did not converge");
    }
    out.lambda_min = 1.0 / mu;
  }
  return out;
}

SpectrumReport condition_scaling(double s, const std::vector<int>& sizes) {
  if (sizes.empty()) {
    throw std::invalid_argument("condition_scaling: need at least one size");
  }
  SpectrumReport rep;
  rep.s = s;
  rep.sizes = sizes;
  for (int N : sizes) {
    KernelParams kp;
    kp.s = s;
    kp.a = 0.0;
    kp.b = 1.0;
    kp.N = N;
    ToeplitzSymbol sym = stiffness_first_row(kp);
    std::vector<double> col(sym.size());
    for (std::size_t p = 0; p < sym.size(); ++p) col[p] = sym.entry(p);
    SymmetricToeplitz T(std::move(col));
    EigPair e = extreme_eigs(T, 1e-6);
    rep.lambda_min.push_back(e.lambda_min);
    rep.lambda_max.push_back(e.lambda_max);
    rep.cond.push_back(e.lambda_max / e.lambda_min);
  }
  auto fit = [&](const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = sizes.size();
    for (std::size_t i = 0; i < n; ++i) {
      double lx = std::log(static_cast<double>(sizes[i]));
      double ly = std::log(y[i]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  if (sizes.size() >= 2) {
    rep.e_min = fit(rep.lambda_min);
    rep.e_max = fit(rep.lambda_max);
    rep.e_cond = fit(rep.cond);
  }
  return rep;
}

}  // namespace fraclap
