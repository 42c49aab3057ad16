#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <vector>

#include "prony/structure.hpp"

namespace prony {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed0001u;

/// Kernel of H_{Gamma_k, Gamma_{k+1}} read as polynomials, plus the normal
/// set and border reductions that define multiplication matrices modulo the
/// annihilating ideal.
struct KernelIdealData {
  int k = 0;
  int rank = 0;
  std::vector<Polynomial> kernel_polys;  // orthonormal coefficient vectors over Gamma_{k+1}
  IndexSet normal_set;                   // N, canonical order, #N = rank
  // border monomial (in N + unit \ N) -> reduction coefficients over N
  std::map<MultiIndex, Eigen::VectorXcd, TermOrderLess> border_coeffs;
};

/// Build the kernel/normal-set data at degree k. Errors: insufficient-window,
/// rank-not-stabilized (square vs extended rank differ), numerical-degeneracy
/// (pivoting cannot reach full rank).
KernelIdealData kernel_basis(const LatticeSignal& f, int k, const Tolerances& tol = {});

/// Multiplication matrices M_j on span(N): column for nu is the reduction of
/// z_j z^nu. Errors: missing-border when a needed reduction is unavailable
/// (increase k).
std::vector<Eigen::MatrixXcd> multiplication_matrices(const KernelIdealData& kd);

struct JointEigenResult {
  std::vector<VarietyPoint> points;   // sum of weights = matrix size
  double commutation_residual = 0.0;  // scaled max commutator entry
};

/// Joint eigenvalues of commuting multiplication matrices: one random real
/// combination (seeded), complex Schur, per-eigenvector Rayleigh quotients
/// clustered within cluster_rtol * (1 + |theta|); each cluster's point is
/// refined on its Schur invariant subspace. Errors: non-commuting,
/// defective-clustering.
JointEigenResult joint_eigen(const std::vector<Eigen::MatrixXcd>& ms,
                             const Tolerances& tol = {},
                             std::uint64_t seed = kDefaultSeed);

/// omega_j = log|theta_j| + i arg(theta_j), arg in (-pi, pi]. Errors:
/// zero-component when some theta_j vanishes.
std::vector<std::vector<Complex>> frequencies_from_points(const std::vector<VarietyPoint>& points);

struct CoefficientRecovery {
  ExponentialSumModel model;
  double residual = 0.0;  // max |f - evaluate(model)| over A
};

/// Solve V(Theta, Q_Theta; A)^T c = f(A) and convert the per-point
/// coefficients into shift-invariant-form coefficient polynomials. Errors:
/// rank-deficient-vandermonde when A is not an interpolation set.
CoefficientRecovery recover_coefficients(const LatticeSignal& f,
                                         const std::vector<VarietyPoint>& points,
                                         const IndexSet& A, const Tolerances& tol = {});

struct ReconstructionReport {
  int rank = 0;
  int k_star = 0;
  std::vector<VarietyPoint> points;
  ExponentialSumModel model;
  double residual = 0.0;
  double commutation_residual = 0.0;
  std::uint64_t seed = kDefaultSeed;
};

/// Full pipeline: stabilized-rank detection, kernel, multiplication
/// matrices, joint eigenvalues, coefficient recovery. Errors:
/// window-too-small / rank-not-stabilized plus anything the stages throw.
ReconstructionReport reconstruct(const LatticeSignal& f, const Tolerances& tol = {},
                                 std::uint64_t seed = kDefaultSeed);

/// max_E |(f ★ q)(alpha)|: how well q annihilates f on E.
double annihilator_check(const LatticeSignal& f, const Polynomial& q, const IndexSet& E);

/// Largest E with E + supp(q) inside the window of f (the admissible
/// annihilation window). Returns the whole window for q = 0.
IndexSet admissible_window(const LatticeSignal& f, const Polynomial& q);

}  // namespace prony
