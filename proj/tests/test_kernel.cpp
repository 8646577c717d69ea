#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fraclap/kernel.hpp"
#include "support/dd.hpp"
#include "support/quadrature_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using fraclap::KernelParams;
using fraclap::scale_As;
using fraclap::stiffness_first_row;
using fraclap::symbol_half;
using fraclap::symbol_t;
using fraclap::SymbolBranch;

namespace {

double rel_err(double got, double want) {
  double denom = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / denom;
}

// t_p summed term by term in double-double, the brute-force version of what
// symbol_t avoids. The five powers agree to ~1e6 digits-of-cancellation at
// p = 1000 and 32 working digits absorb that with room to spare.
double symbol_t_brute(double s, long p) {
  using testsupport::dd;
  static const double c[5] = {1.0, -4.0, 6.0, -4.0, 1.0};
  const double alpha = 3.0 - 2.0 * s;
  dd sum = testsupport::dd_from(0.0);
  for (int i = -2; i <= 2; ++i) {
    long m = std::labs(p + i);
    if (m == 0) continue;
    dd pw = testsupport::dd_pow(static_cast<double>(m), alpha);
    sum = testsupport::dd_add(sum,
                              testsupport::dd_mul(testsupport::dd_from(c[i + 2]), pw));
  }
  return testsupport::to_double(sum);
}

// Same for the s = 1/2 branch: r_p = (1/2pi) sum c_i (p+i)^2 ln|p+i|.
double symbol_half_brute(long p) {
  using testsupport::dd;
  static const double c[5] = {1.0, -4.0, 6.0, -4.0, 1.0};
  dd sum = testsupport::dd_from(0.0);
  for (int i = -2; i <= 2; ++i) {
    long m = std::labs(p + i);
    if (m == 0) continue;
    dd lg = testsupport::dd_log(testsupport::dd_from(static_cast<double>(m)));
    dd term = testsupport::dd_mul(testsupport::dd_from(c[i + 2] * static_cast<double>(m) * static_cast<double>(m)), lg);
    sum = testsupport::dd_add(sum, term);
  }
  dd twopi = testsupport::dd_mul(testsupport::dd_from(2.0), testsupport::kDDPi);
  return testsupport::to_double(testsupport::dd_div(sum, twopi));
}

}  // namespace

TEST_CASE("first symbol values have their elementary closed forms") {
  for (double s : {0.1, 0.3, 0.45, 0.6, 0.8, 1.0, 1.2, 1.4}) {
    double t0 = std::pow(2.0, 4.0 - 2.0 * s) - 8.0;
    double t1 = 7.0 + std::pow(3.0, 3.0 - 2.0 * s) - std::pow(2.0, 5.0 - 2.0 * s);
    CHECK_MESSAGE(rel_err(symbol_t(s, 0), t0) < 1e-13, "s=", s);
    CHECK_MESSAGE(rel_err(symbol_t(s, 1), t1) < 1e-13, "s=", s);
  }
}

TEST_CASE("symbol vanishes beyond the first off-diagonal at s = 1") {
  // alpha = 1 there, and the five-point stencil annihilates linear |.|
  // away from the kink. The direct path (p = 2) cancels through expm1 and
  // keeps a few ulp of noise; the series path is zero term by term.
  CHECK(std::abs(symbol_t(1.0, 2)) < 1e-14);
  for (long p : {3L, 7L, 50L}) {
    CHECK(symbol_t(1.0, p) == 0.0);
  }
}

TEST_CASE("symbol tail matches a 32-digit brute-force sum") {
  // p = 31/32 straddles any series-vs-direct switchover a reasonable
  // implementation might use; 1000 stresses the cancellation hardest.
  for (double s : {0.05, 0.25, 0.49, 0.51, 0.75, 0.99, 1.01, 1.3, 1.45}) {
    for (long p : {3L, 4L, 10L, 31L, 32L, 100L, 1000L}) {
      double want = symbol_t_brute(s, p);
      CHECK_MESSAGE(rel_err(symbol_t(s, p), want) < 1e-12,
                    "s=", s, " p=", p);
    }
  }
}

TEST_CASE("symbol rejects out-of-range order and the half pole") {
  CHECK_THROWS_AS((void)symbol_t(0.0, 3), std::domain_error);
  CHECK_THROWS_AS((void)symbol_t(1.5, 3), std::domain_error);
  CHECK_THROWS_AS((void)symbol_t(0.5, 3), std::domain_error);
  CHECK_THROWS_AS((void)symbol_t(0.7, -1), std::domain_error);
}

TEST_CASE("half-order symbol has its logarithmic closed forms") {
  CHECK(rel_err(symbol_half(0), 4.0 / M_PI * std::log(2.0)) < 1e-14);
  CHECK(rel_err(symbol_half(1),
                (9.0 * std::log(3.0) - 16.0 * std::log(2.0)) / (2.0 * M_PI)) <
        1e-14);
  for (long p : {2L, 3L, 5L, 31L, 32L, 200L, 1000L}) {
    CHECK_MESSAGE(rel_err(symbol_half(p), symbol_half_brute(p)) < 1e-12,
                  "p=", p);
  }
}

TEST_CASE("scale factor has the right values and signs") {
  CHECK(scale_As(1.0) == doctest::Approx(-0.5).epsilon(1e-14));
  for (double s : {0.1, 0.25, 0.4}) {
    double want = 1.0 / (2.0 * std::tgamma(4.0 - 2.0 * s) * std::cos(s * M_PI));
    CHECK(rel_err(scale_As(s), want) < 1e-13);
    CHECK(scale_As(s) > 0.0);
  }
  for (double s : {0.6, 0.9, 1.2, 1.4}) {
    double want = 1.0 / (2.0 * std::tgamma(4.0 - 2.0 * s) * std::cos(s * M_PI));
    CHECK(rel_err(scale_As(s), want) < 1e-13);
    CHECK(scale_As(s) < 0.0);
  }
  CHECK_THROWS_AS((void)scale_As(0.5), std::domain_error);
  CHECK_THROWS_AS((void)scale_As(1.5), std::domain_error);
}

TEST_CASE("parameter validation rejects broken meshes") {
  CHECK_THROWS_AS(stiffness_first_row(KernelParams{0.5, -1.0, 1.0, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(stiffness_first_row(KernelParams{0.5, 1.0, -1.0, 8}),
                  std::invalid_argument);
  // Mesh problems are invalid_argument; an order outside (0, 3/2) is a
  // domain_error like everywhere else in the library.
  CHECK_THROWS_AS(stiffness_first_row(KernelParams{1.6, -1.0, 1.0, 8}),
                  std::domain_error);
  CHECK_THROWS_AS(stiffness_first_row(KernelParams{0.0, -1.0, 1.0, 8}),
                  std::domain_error);
}

TEST_CASE("unit order reproduces the local Laplacian row exactly") {
  KernelParams kp{1.0, 0.0, 1.0, 8};
  auto row = stiffness_first_row(kp);
  CHECK(row.branch == SymbolBranch::unit);
  REQUIRE(row.size() == 7);
  double h = kp.h();
  CHECK(row.entry(0) == 2.0 / h);
  CHECK(row.entry(1) == -1.0 / h);
  for (std::size_t p = 2; p < row.size(); ++p) CHECK(row.entry(p) == 0.0);

  // A hair outside the unit window the generic branch takes over and must
  // land on the same numbers to the perturbation's own order.
  for (double s : {1.0 - 1e-8, 1.0 + 1e-8}) {
    auto near = stiffness_first_row(KernelParams{s, 0.0, 1.0, 8});
    CHECK(near.branch == SymbolBranch::generic);
    CHECK(std::abs(near.entry(0) - 2.0 / h) < 1e-5);
    CHECK(std::abs(near.entry(1) + 1.0 / h) < 1e-5);
    CHECK(std::abs(near.entry(4)) < 1e-5);
  }
}

TEST_CASE("vanishing order degenerates to the lumped mass row") {
  KernelParams kp{1e-9, -1.0, 1.0, 16};
  auto row = stiffness_first_row(kp);
  double h = kp.h();
  CHECK(rel_err(row.entry(0), 2.0 * h / 3.0) < 1e-7);
  CHECK(rel_err(row.entry(1), h / 6.0) < 1e-7);
  for (std::size_t p = 2; p < row.size(); ++p)
    CHECK(std::abs(row.entry(p)) < 1e-7);
}

TEST_CASE("half order uses the h-independent logarithmic branch") {
  auto row_a = stiffness_first_row(KernelParams{0.5, -1.0, 1.0, 8});
  auto row_b = stiffness_first_row(KernelParams{0.5, 0.0, 10.0, 40});
  CHECK(row_a.branch == SymbolBranch::half);
  CHECK(row_a.entry(0) == doctest::Approx(4.0 / M_PI * std::log(2.0)).epsilon(1e-14));
  for (std::size_t p = 0; p < row_a.size(); ++p) {
    CHECK(row_a.entry(p) == doctest::Approx(row_b.entry(p)).epsilon(1e-14));
    CHECK(rel_err(row_a.entry(p), symbol_half(static_cast<long>(p))) < 1e-13);
  }

  // Just off the pole the fused branch must stay glued to the r_p values.
  for (double s : {0.5 - 1e-9, 0.5 + 1e-9}) {
    auto row = stiffness_first_row(KernelParams{s, -1.0, 1.0, 8});
    CHECK(row.branch == SymbolBranch::half);
    for (std::size_t p = 0; p < row.size(); ++p) {
      double want = symbol_half(static_cast<long>(p));
      CHECK(std::abs(row.entry(p) - want) <= 1e-6 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("fused and generic branches agree at the half-window edge") {
  // 1e-6 away from s = 1/2 sits right at the branch boundary; evaluate both
  // a touch inside and a touch outside and require continuity there.
  for (double off : {0.9e-6, 1.1e-6}) {
    for (double sign : {-1.0, 1.0}) {
      double s = 0.5 + sign * off;
      auto row = stiffness_first_row(KernelParams{s, -1.0, 1.0, 16});
      auto want_branch =
          off < 1e-6 ? SymbolBranch::half : SymbolBranch::generic;
      CHECK(row.branch == want_branch);
    }
    double s_in = 0.5 + 0.9e-6, s_out = 0.5 + 1.1e-6;
    auto in = stiffness_first_row(KernelParams{s_in, -1.0, 1.0, 16});
    auto out = stiffness_first_row(KernelParams{s_out, -1.0, 1.0, 16});
    for (std::size_t p = 0; p < in.size(); ++p) {
      CHECK(std::abs(in.entry(p) - out.entry(p)) <
            1e-5 * std::max(1.0, std::abs(in.entry(p))));
    }
  }
}

TEST_CASE("row signs for orders below one") {
  // Positive diagonal, negative off-diagonals from the second one out; the
  // first off-diagonal flips sign at s0 and that is dominance's business.
  for (double s : {0.3, 0.6, 0.9}) {
    auto row = stiffness_first_row(KernelParams{s, -1.0, 1.0, 32});
    CHECK(row.entry(0) > 0.0);
    for (std::size_t p = 2; p < row.size(); ++p) {
      CHECK_MESSAGE(row.entry(p) < 0.0, "s=", s, " p=", p);
    }
  }
}

TEST_CASE("entries match the frequency-space quadrature reference") {
  // The real workout (six orders, every offset) lives in the acceptance
  // suite; here a few spot checks keep the fast path honest day to day.
  struct Probe { double s; long p; };
  for (const Probe& pr : {Probe{0.35, 0}, Probe{0.35, 1}, Probe{0.35, 5},
                          Probe{0.8, 0}, Probe{0.8, 3}, Probe{1.2, 0},
                          Probe{1.2, 4}}) {
    KernelParams kp{pr.s, -1.0, 1.0, 16};
    auto row = stiffness_first_row(kp);
    double want = testsupport::stiffness_entry_reference(pr.s, kp.h(), pr.p);
    CHECK_MESSAGE(rel_err(row.entry(static_cast<std::size_t>(pr.p)), want) < 1e-7,
                  "s=", pr.s, " p=", pr.p);
  }
}

TEST_CASE("normalization constant hits the classical half-order value") {
  CHECK(rel_err(fraclap::normalization_constant(0.5), 1.0 / M_PI) < 1e-13);
  for (double s : {0.1, 0.3, 0.7, 0.9}) {
    double want = std::pow(2.0, 2.0 * s) * s * std::tgamma(s + 0.5) /
                  (std::sqrt(M_PI) * std::tgamma(1.0 - s));
    CHECK(rel_err(fraclap::normalization_constant(s), want) < 1e-13);
  }
  CHECK_THROWS_AS((void)fraclap::normalization_constant(1.0), std::domain_error);
}
