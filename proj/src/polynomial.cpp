#include "prony/polynomial.hpp"

#include <cmath>
#include <sstream>

#include "prony/error.hpp"

namespace prony {

namespace {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double int_pow(double base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

Complex complex_pow(Complex base, int exp) {
  Complex r(1.0, 0.0);
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

Polynomial Polynomial::constant(int dim, Complex value) {
  Polynomial p(dim);
  p.add_term(MultiIndex::zero(dim), value);
  return p;
}

Polynomial Polynomial::monomial(const MultiIndex& alpha, Complex coeff) {
  if (!alpha.nonnegative()) {
    throw Error("bad-argument", "monomial exponent must be nonnegative, got " + alpha.to_string());
  }
  Polynomial p(alpha.dimension());
  p.add_term(alpha, coeff);
  return p;
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& [alpha, c] : terms_) d = std::max(d, alpha.total_degree());
  return d;
}

Complex Polynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

void Polynomial::add_term(const MultiIndex& alpha, Complex coeff) {
  if (alpha.dimension() != dim_) {
    throw Error("dimension-mismatch", "term exponent " + alpha.to_string() +
                                          " does not match polynomial dimension " +
                                          std::to_string(dim_));
  }
  auto [it, inserted] = terms_.emplace(alpha, coeff);
  if (!inserted) it->second += coeff;
  if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.dim_ != dim_) throw Error("dimension-mismatch", "polynomial dimensions differ");
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.dim_ != dim_) throw Error("dimension-mismatch", "polynomial dimensions differ");
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, -c);
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial r(*this);
  r += other;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  Polynomial r(*this);
  r -= other;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (other.dim_ != dim_) throw Error("dimension-mismatch", "polynomial dimensions differ");
  Polynomial r(dim_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : other.terms_) {
      r.add_term(a + b, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::scaled(Complex factor) const {
  Polynomial r(dim_);
  if (factor == Complex(0.0, 0.0)) return r;
  for (const auto& [alpha, c] : terms_) r.add_term(alpha, c * factor);
  return r;
}

Polynomial Polynomial::times_monomial(const MultiIndex& alpha) const {
  if (!alpha.nonnegative()) {
    throw Error("bad-argument", "monomial multiplier must be nonnegative, got " + alpha.to_string());
  }
  Polynomial r(dim_);
  for (const auto& [beta, c] : terms_) r.add_term(beta + alpha, c);
  return r;
}

Polynomial Polynomial::shifted(const MultiIndex& gamma) const {
  if (gamma.dimension() != dim_) throw Error("dimension-mismatch", "shift dimension mismatch");
  Polynomial r(dim_);
  std::vector<int> beta(static_cast<std::size_t>(dim_), 0);
  for (const auto& [alpha, c] : terms_) {
    // expand prod_j (x_j + gamma_j)^{alpha_j} over all beta <= alpha
    for (int j = 0; j < dim_; ++j) beta[static_cast<std::size_t>(j)] = 0;
    while (true) {
      double factor = 1.0;
      for (int j = 0; j < dim_; ++j) {
        int a = alpha[j], b = beta[static_cast<std::size_t>(j)];
        factor *= binom(a, b) * int_pow(static_cast<double>(gamma[j]), a - b);
      }
      if (factor != 0.0) r.add_term(MultiIndex(beta), c * factor);
      int axis = dim_ - 1;
      while (axis >= 0) {
        if (++beta[static_cast<std::size_t>(axis)] <= alpha[axis]) break;
        beta[static_cast<std::size_t>(axis)] = 0;
        --axis;
      }
      if (axis < 0) break;
    }
  }
  return r;
}

Polynomial Polynomial::derivative(int axis) const {
  Polynomial r(dim_);
  for (const auto& [alpha, c] : terms_) {
    if (alpha[axis] == 0) continue;
    std::vector<int> e = alpha.entries();
    e[static_cast<std::size_t>(axis)] -= 1;
    r.add_term(MultiIndex(std::move(e)), c * static_cast<double>(alpha[axis]));
  }
  return r;
}

Complex Polynomial::evaluate(const std::vector<Complex>& point) const {
  if (static_cast<int>(point.size()) != dim_) {
    throw Error("dimension-mismatch", "evaluation point dimension mismatch");
  }
  Complex total(0.0, 0.0);
  for (const auto& [alpha, c] : terms_) {
    Complex term = c;
    for (int j = 0; j < dim_; ++j) term *= complex_pow(point[static_cast<std::size_t>(j)], alpha[j]);
    total += term;
  }
  return total;
}

Complex Polynomial::evaluate(const MultiIndex& point) const {
  if (point.dimension() != dim_) {
    throw Error("dimension-mismatch", "evaluation point dimension mismatch");
  }
  Complex total(0.0, 0.0);
  for (const auto& [alpha, c] : terms_) {
    double factor = 1.0;
    for (int j = 0; j < dim_; ++j) factor *= int_pow(static_cast<double>(point[j]), alpha[j]);
    total += c * factor;
  }
  return total;
}

IndexSet Polynomial::support() const {
  std::vector<MultiIndex> elems;
  elems.reserve(terms_.size());
  for (const auto& [alpha, c] : terms_) elems.push_back(alpha);
  return IndexSet::grlex(dim_, std::move(elems));
}

double Polynomial::max_coefficient() const {
  double m = 0.0;
  for (const auto& [alpha, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

Polynomial Polynomial::normalized(double rel_threshold) const {
  double cutoff = max_coefficient() * rel_threshold;
  Polynomial r(dim_);
  for (const auto& [alpha, c] : terms_) {
    if (std::abs(c) > cutoff) r.add_term(alpha, c);
  }
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [alpha, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.real();
    if (c.imag() != 0.0) out << (c.imag() < 0 ? "" : "+") << c.imag() << "i";
    out << ")";
    for (int j = 0; j < dim_; ++j) {
      if (alpha[j] != 0) {
        out << "*z" << (j + 1);
        if (alpha[j] != 1) out << "^" << alpha[j];
      }
    }
  }
  return out.str();
}

}  // namespace prony
