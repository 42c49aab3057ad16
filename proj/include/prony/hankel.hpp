#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prony/signal_model.hpp"

namespace prony {

enum class MatrixKind { Hankel, Toeplitz, Vandermonde, HermiteVandermonde, BlockDiagonal, Plain };

struct Tolerances {
  double rank_rtol = 1e-10;    // singular value cutoff, relative to sigma_1 * max(rows, cols)
  double cluster_rtol = 1e-6;  // eigenvalue clustering radius, relative to 1 + |theta|
  double residual_atol = 1e-8; // residual bound, scaled by max(1, data magnitude)
};

/// Dense matrix together with the lattice labels of its rows and columns.
/// Vandermonde-style matrices label rows by points instead; those carry
/// human-readable row_labels and an empty `rows`.
struct StructuredMatrix {
  MatrixKind kind = MatrixKind::Plain;
  Eigen::MatrixXcd data;
  IndexSet rows;
  IndexSet cols;
  std::vector<std::string> row_labels;
};

/// H_{A,B}(f) = (f(alpha + beta)); requires window(f) to cover A + B.
StructuredMatrix hankel_matrix(const LatticeSignal& f, const IndexSet& A, const IndexSet& B);

/// T_{A,B}(f) = (f(alpha - beta)) = H_{A,-B}(f); requires A - B covered.
StructuredMatrix toeplitz_matrix(const LatticeSignal& f, const IndexSet& A, const IndexSet& B);

/// Number of singular values above rank_rtol * sigma_1 * max(rows, cols).
int numeric_rank(const Eigen::MatrixXcd& m, const Tolerances& tol = {});
int numeric_rank(const StructuredMatrix& m, const Tolerances& tol = {});

enum class IndexFamily { Simplex, HyperbolicCross };

struct RankScan {
  std::vector<std::pair<int, int>> ranks;  // (k, rank of H_{A_k,A_k})
  std::optional<int> k_star;               // smallest scanned k with rank(k) == rank(k+1)
};

/// Ranks of the square Hankel matrices on the nested family (simplex starts
/// at k = 0, hyperbolic cross at k = 1). The window must cover A_k + A_k for
/// every scanned k.
RankScan rank_scan(const LatticeSignal& f, int k_max, IndexFamily family, const Tolerances& tol = {});
RankScan rank_scan(const ExponentialSumModel& m, int k_max, IndexFamily family, const Tolerances& tol = {});

}  // namespace prony
