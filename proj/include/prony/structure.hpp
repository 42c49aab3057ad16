#pragma once

#include <vector>

#include "prony/hankel.hpp"
#include "prony/polynomial.hpp"

namespace prony {

/// Point of the variety together with its multiplicity structure. mult_basis
/// is a basis (D-invariant form: polynomials q acting as q(D)) of the local
/// multiplicity space; weight = its size. For weight > 1 in several
/// variables the basis is a grlex-truncated heuristic and mult_basis_exact
/// is false.
struct VarietyPoint {
  std::vector<Complex> theta;
  std::vector<Polynomial> mult_basis;
  int weight = 1;
  bool mult_basis_exact = true;
};

/// Product over coordinates of x_j (x_j - 1) ... (x_j - alpha_j + 1);
/// empty product (alpha_j = 0) contributes 1, so falling_factorial(0) = 1.
Polynomial falling_factorial(const MultiIndex& alpha);

/// (L f) = sum_alpha (1/alpha!) ((tau - I)^alpha f)(0) z^alpha  --  the
/// forward-difference transform taking shift-invariant spaces to
/// D-invariant ones.
Polynomial L_apply(const Polynomial& p);

/// Inverse of L: sum_alpha c_alpha ff_alpha where c_alpha are the monomial
/// coefficients and ff_alpha the falling factorials. L(L_inverse(p)) = p.
Polynomial L_inverse(const Polynomial& p);

/// sigma_scale: multiply the coefficient of z^alpha by scale^alpha.
Polynomial dilate(const Polynomial& p, const std::vector<Complex>& scale);

/// Given a basis of a shift-invariant polynomial space, return {L b} (a
/// basis of the corresponding D-invariant space). Throws not-shift-invariant
/// when some unit shift of a basis element leaves the span.
std::vector<Polynomial> shift_to_D_invariant(const std::vector<Polynomial>& basis,
                                             const Tolerances& tol = {});

/// V(Theta; A): row per point, entry theta^alpha. A must be nonnegative.
StructuredMatrix vandermonde(const std::vector<std::vector<Complex>>& points, const IndexSet& A);

/// V(Theta, Q_Theta; A): one row per (theta, q in mult_basis), entry
/// (q(D) (.)^alpha)(theta).
StructuredMatrix hermite_vandermonde(const std::vector<VarietyPoint>& points, const IndexSet& A);

struct FactorizationResult {
  StructuredMatrix V_A;
  StructuredMatrix V_B;
  StructuredMatrix F;            // block-diagonal, one block per model term
  std::vector<int> block_sizes;
  double residual = 0.0;         // max |H - V_A^T F V_B| entry
  double off_block_max = 0.0;    // largest off-block entry of the solved F
};

/// Factor H_{A,B}(f) = V_A^T F V_B for the model's signal: Theta = e^Omega,
/// mult bases are sigma_theta(L(hull)) per term, F is solved from the data
/// (unique for full-row-rank Vandermondes) and must come out block-diagonal.
FactorizationResult factorize(const ExponentialSumModel& m, const IndexSet& A,
                              const IndexSet& B, const Tolerances& tol = {});

}  // namespace prony
