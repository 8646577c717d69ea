#pragma once

// Dense linear-algebra references for the Toeplitz fast paths, built on
// Eigen. Test-only: O(M^2) storage and O(M^3) solves are fine at the sizes
// the tests use, and they exercise none of the FFT code under test.

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace testsupport {

inline Eigen::MatrixXd dense_from_column(const std::vector<double>& col) {
  const auto m = static_cast<Eigen::Index>(col.size());
  if (m == 0) throw std::runtime_error("dense_from_column: empty column");
  Eigen::MatrixXd A(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      A(i, j) = col[static_cast<std::size_t>(std::abs(i - j))];
  return A;
}

inline std::vector<double> dense_matvec(const std::vector<double>& col,
                                        const std::vector<double>& x) {
  Eigen::MatrixXd A = dense_from_column(col);
  Eigen::Map<const Eigen::VectorXd> xv(x.data(),
                                       static_cast<Eigen::Index>(x.size()));
  Eigen::VectorXd y = A * xv;
  return std::vector<double>(y.data(), y.data() + y.size());
}

inline std::vector<double> dense_solve_spd(const std::vector<double>& col,
                                           const std::vector<double>& b) {
  Eigen::MatrixXd A = dense_from_column(col);
  Eigen::Map<const Eigen::VectorXd> bv(b.data(),
                                       static_cast<Eigen::Index>(b.size()));
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("dense_solve_spd: matrix not SPD");
  Eigen::VectorXd x = llt.solve(bv);
  return std::vector<double>(x.data(), x.data() + x.size());
}

struct DenseEigs {
  double min;
  double max;
};

inline DenseEigs dense_extreme_eigs(const std::vector<double>& col) {
  Eigen::MatrixXd A = dense_from_column(col);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A,
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("dense_extreme_eigs: solver failed");
  const auto& ev = es.eigenvalues();
  return DenseEigs{ev(0), ev(ev.size() - 1)};
}

}  // namespace testsupport
