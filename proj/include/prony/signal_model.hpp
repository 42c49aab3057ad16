#pragma once

#include <complex>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "prony/index_set.hpp"
#include "prony/polynomial.hpp"

namespace prony {

/// Complex samples on a finite lattice window. Missing points are a hard
/// error everywhere; nothing is ever imputed.
class LatticeSignal {
public:
  explicit LatticeSignal(int dim = 0) : dim_(dim) {}
  LatticeSignal(IndexSet window, std::vector<Complex> values);

  int dimension() const { return dim_; }
  const IndexSet& window() const { return window_; }
  std::size_t size() const { return window_.size(); }

  bool defined_at(const MultiIndex& a) const { return window_.contains(a); }
  Complex at(const MultiIndex& a) const;

  /// g with g(x) = f(x + gamma); the window translates by -gamma.
  LatticeSignal translated(const MultiIndex& gamma) const;

  std::vector<Complex> values_in_window_order() const;
  double max_abs() const;

private:
  int dim_ = 0;
  IndexSet window_;
  std::unordered_map<MultiIndex, Complex, MultiIndexHash> values_;
};

struct ModelTerm {
  std::vector<Complex> omega;  // frequency vector, Im normalized to (-pi, pi]
  Polynomial coeff;            // nonzero coefficient polynomial
};

/// f(x) = sum_omega f_omega(x) e^{omega . x} with pairwise distinct
/// frequencies. Construction normalizes imaginary parts, drops zero
/// coefficient terms and rejects duplicate frequencies.
class ExponentialSumModel {
public:
  explicit ExponentialSumModel(int dim = 0) : dim_(dim) {}
  static ExponentialSumModel make(int dim, std::vector<ModelTerm> terms);

  int dimension() const { return dim_; }
  bool empty() const { return terms_.empty(); }
  const std::vector<ModelTerm>& terms() const { return terms_; }

private:
  int dim_ = 0;
  std::vector<ModelTerm> terms_;
};

/// Fold an angle into (-pi, pi].
double normalize_angle(double a);

Complex evaluate_model(const ExponentialSumModel& m, const MultiIndex& x);
LatticeSignal sample(const ExponentialSumModel& m, const IndexSet& window);

/// Correlation (f ★ g)(alpha) = sum_beta f(alpha + beta) g_beta on E;
/// requires window(f) to cover E + supp(g).
LatticeSignal correlate(const LatticeSignal& f, const Polynomial& g, const IndexSet& E);

/// Convolution (f * g)(alpha) = sum_beta f(alpha - beta) g_beta on E;
/// requires window(f) to cover E - supp(g).
LatticeSignal convolve(const LatticeSignal& f, const Polynomial& g, const IndexSet& E);

/// Orthonormal basis of span{ p(. + gamma) : gamma >= 0 }, computed by
/// closing {p} under the unit forward shifts.
std::vector<Polynomial> shift_invariant_hull(const Polynomial& p);

/// Dimension of S(f): sum over terms of dim span of the coefficient hull.
int sis_dimension(const ExponentialSumModel& m);

/// Seeded random model: Re(omega) in [-0.4, 0.4], Im(omega) in (-pi, pi],
/// e^omega points pairwise separated, unit-modulus random coefficients on
/// all monomials of total degree <= degree_bound. Deterministic per seed.
ExponentialSumModel random_model(int dim, int n_terms, int degree_bound, std::uint64_t seed);

struct ModelMatch {
  bool matched = false;              // same term count, all terms paired
  double max_frequency_error = 0.0;  // sup over components, Im compared mod 2pi
  double max_coefficient_error = 0.0;
};

/// Greedy nearest-frequency pairing of two models' terms.
ModelMatch match_models(const ExponentialSumModel& a, const ExponentialSumModel& b);

}  // namespace prony
