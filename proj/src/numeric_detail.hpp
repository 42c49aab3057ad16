#pragma once

// shared SVD-backed helpers; every rank decision in the library goes through
// the same cutoff rule as numeric_rank

#include <Eigen/Dense>
#include <algorithm>

#include "prony/hankel.hpp"

namespace prony::detail {

inline double rank_cutoff(const Eigen::VectorXd& sigma, Eigen::Index rows, Eigen::Index cols,
                          const Tolerances& tol) {
  if (sigma.size() == 0) return 0.0;
  return tol.rank_rtol * sigma(0) * static_cast<double>(std::max(rows, cols));
}

struct SvdResult {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd;
  int rank = 0;
  double cutoff = 0.0;
};

inline SvdResult full_svd(const Eigen::MatrixXcd& m, const Tolerances& tol) {
  SvdResult r;
  r.svd.compute(m, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const auto& sigma = r.svd.singularValues();
  r.cutoff = rank_cutoff(sigma, m.rows(), m.cols(), tol);
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > r.cutoff) ++r.rank;
  }
  return r;
}

/// Minimum-norm least squares solve of m x = b with the numeric_rank cutoff.
inline Eigen::MatrixXcd lsq_solve(const Eigen::MatrixXcd& m, const Eigen::MatrixXcd& b,
                                  const Tolerances& tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  double cutoff = rank_cutoff(sigma, m.rows(), m.cols(), tol);
  Eigen::MatrixXcd ut_b = svd.matrixU().adjoint() * b;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) {
      ut_b.row(i) /= sigma(i);
    } else {
      ut_b.row(i).setZero();
    }
  }
  return svd.matrixV() * ut_b;
}

/// Moore-Penrose pseudoinverse with the numeric_rank cutoff.
inline Eigen::MatrixXcd pinv(const Eigen::MatrixXcd& m, const Tolerances& tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  double cutoff = rank_cutoff(sigma, m.rows(), m.cols(), tol);
  Eigen::MatrixXcd vs = svd.matrixV();
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) {
      vs.col(i) /= sigma(i);
    } else {
      vs.col(i).setZero();
    }
  }
  return vs * svd.matrixU().adjoint();
}

}  // namespace prony::detail
