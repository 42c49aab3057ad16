#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "prony/index_set.hpp"
#include "prony/multi_index.hpp"

namespace prony {

using Complex = std::complex<double>;

/// Sparse multivariate polynomial over C, terms kept in canonical order.
/// Exact zeros are never stored; normalized() drops relative dust.
class Polynomial {
public:
  using TermMap = std::map<MultiIndex, Complex, TermOrderLess>;

  explicit Polynomial(int dim = 0) : dim_(dim) {}
  static Polynomial constant(int dim, Complex value);
  static Polynomial monomial(const MultiIndex& alpha, Complex coeff = Complex(1.0, 0.0));

  int dimension() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int total_degree() const;

  const TermMap& terms() const { return terms_; }
  Complex coefficient(const MultiIndex& alpha) const;
  void add_term(const MultiIndex& alpha, Complex coeff);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial scaled(Complex factor) const;

  /// z^alpha * p for alpha >= 0.
  Polynomial times_monomial(const MultiIndex& alpha) const;

  /// p(. + gamma) for integer gamma (binomial expansion per coordinate).
  Polynomial shifted(const MultiIndex& gamma) const;

  Polynomial derivative(int axis) const;

  Complex evaluate(const std::vector<Complex>& point) const;
  Complex evaluate(const MultiIndex& point) const;

  /// Exponents of the stored terms, canonical order.
  IndexSet support() const;

  double max_coefficient() const;

  /// Copy with coefficients of modulus <= rel_threshold * max|coeff| removed.
  Polynomial normalized(double rel_threshold = 1e-12) const;

  std::string to_string() const;

private:
  int dim_ = 0;
  TermMap terms_;
};

}  // namespace prony
