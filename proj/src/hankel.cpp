#include "prony/hankel.hpp"

#include <algorithm>
#include <sstream>

#include "prony/error.hpp"

namespace prony {

namespace {

std::string format_points(const std::vector<MultiIndex>& points, std::size_t limit = 8) {
  std::ostringstream out;
  for (std::size_t i = 0; i < points.size() && i < limit; ++i) {
    if (i) out << ", ";
    out << points[i].to_string();
  }
  if (points.size() > limit) out << ", ... (" << points.size() << " total)";
  return out.str();
}

StructuredMatrix build(const LatticeSignal& f, const IndexSet& A, const IndexSet& B, int sign,
                       MatrixKind kind, const char* opname) {
  if (f.dimension() != A.dimension() || f.dimension() != B.dimension()) {
    throw Error("dimension-mismatch", std::string(opname) + " dimension mismatch");
  }
  IndexSet needed = set_sum(A, B, sign);
  auto missing = needed.missing_from(f.window());
  if (!missing.empty()) {
    throw Error("insufficient-window",
                std::string(opname) + " needs samples at " + format_points(missing), missing);
  }
  StructuredMatrix m;
  m.kind = kind;
  m.rows = A;
  m.cols = B;
  m.data.resize(static_cast<Eigen::Index>(A.size()), static_cast<Eigen::Index>(B.size()));
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = 0; j < B.size(); ++j) {
      m.data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          f.at(sign >= 0 ? A[i] + B[j] : A[i] - B[j]);
    }
  }
  return m;
}

}  // namespace

StructuredMatrix hankel_matrix(const LatticeSignal& f, const IndexSet& A, const IndexSet& B) {
  return build(f, A, B, +1, MatrixKind::Hankel, "hankel_matrix");
}

StructuredMatrix toeplitz_matrix(const LatticeSignal& f, const IndexSet& A, const IndexSet& B) {
  return build(f, A, B, -1, MatrixKind::Toeplitz, "toeplitz_matrix");
}

static Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  // divide & conquer pays off once the matrix is no longer tiny
  if (std::min(m.rows(), m.cols()) > 24) {
    return Eigen::BDCSVD<Eigen::MatrixXcd>(m).singularValues();
  }
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
}

int numeric_rank(const Eigen::MatrixXcd& m, const Tolerances& tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::VectorXd sigma = singular_values(m);
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  double cutoff = tol.rank_rtol * sigma(0) * static_cast<double>(std::max(m.rows(), m.cols()));
  int r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) ++r;
  }
  return r;
}

int numeric_rank(const StructuredMatrix& m, const Tolerances& tol) {
  return numeric_rank(m.data, tol);
}

static IndexSet family_set(IndexFamily family, int k, int dim) {
  return family == IndexFamily::Simplex ? IndexSet::simplex(k, dim)
                                        : IndexSet::hyperbolic_cross(k, dim);
}

RankScan rank_scan(const LatticeSignal& f, int k_max, IndexFamily family, const Tolerances& tol) {
  if (k_max < 0) throw Error("bad-argument", "rank_scan requires k_max >= 0");
  int start = family == IndexFamily::Simplex ? 0 : 1;
  if (k_max < start) throw Error("bad-argument", "rank_scan on the hyperbolic cross starts at k = 1");
  RankScan scan;
  for (int k = start; k <= k_max; ++k) {
    IndexSet a = family_set(family, k, f.dimension());
    scan.ranks.emplace_back(k, numeric_rank(hankel_matrix(f, a, a), tol));
  }
  for (std::size_t i = 0; i + 1 < scan.ranks.size(); ++i) {
    if (scan.ranks[i].second == scan.ranks[i + 1].second) {
      scan.k_star = scan.ranks[i].first;
      break;
    }
  }
  return scan;
}

RankScan rank_scan(const ExponentialSumModel& m, int k_max, IndexFamily family,
                   const Tolerances& tol) {
  int start = family == IndexFamily::Simplex ? 0 : 1;
  if (k_max < start) throw Error("bad-argument", "rank_scan k_max too small for the family");
  IndexSet top = family_set(family, k_max, m.dimension());
  return rank_scan(sample(m, set_sum(top, top)), k_max, family, tol);
}

}  // namespace prony
