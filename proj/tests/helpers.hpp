#pragma once

// shared fixtures: the three hand-checked reference models and a few
// independent brute-force oracles used to cross-check library results

#include <cmath>
#include <random>
#include <vector>

#include "prony/prony_solver.hpp"
#include "prony/serialization.hpp"

namespace testutil {

using prony::Complex;
using prony::IndexSet;
using prony::LatticeSignal;
using prony::MultiIndex;
using prony::Polynomial;

const double kLn2 = std::log(2.0);
const double kLn3 = std::log(3.0);
const double kPi = std::acos(-1.0);

// f(a) = 2^a + 3^a
inline prony::ExponentialSumModel e1_model() {
  std::vector<prony::ModelTerm> terms;
  terms.push_back({{Complex(kLn2, 0.0)}, Polynomial::constant(1, Complex(1.0, 0.0))});
  terms.push_back({{Complex(kLn3, 0.0)}, Polynomial::constant(1, Complex(1.0, 0.0))});
  return prony::ExponentialSumModel::make(1, std::move(terms));
}

// f(a) = 1 + 2^{a1} 3^{a2}
inline prony::ExponentialSumModel e2_model() {
  std::vector<prony::ModelTerm> terms;
  terms.push_back({{Complex(0.0, 0.0), Complex(0.0, 0.0)},
                   Polynomial::constant(2, Complex(1.0, 0.0))});
  terms.push_back({{Complex(kLn2, 0.0), Complex(kLn3, 0.0)},
                   Polynomial::constant(2, Complex(1.0, 0.0))});
  return prony::ExponentialSumModel::make(2, std::move(terms));
}

// f(a) = a * 2^a
inline prony::ExponentialSumModel e3_model() {
  std::vector<prony::ModelTerm> terms;
  terms.push_back({{Complex(kLn2, 0.0)}, Polynomial::monomial(MultiIndex{1})});
  return prony::ExponentialSumModel::make(1, std::move(terms));
}

inline IndexSet box1d(int lo, int hi) {
  std::vector<MultiIndex> pts;
  for (int a = lo; a <= hi; ++a) pts.push_back(MultiIndex{a});
  return IndexSet::insertion(1, std::move(pts));
}

inline LatticeSignal e1_signal(int lo = 0, int hi = 4) {
  return prony::sample(e1_model(), box1d(lo, hi));
}

inline LatticeSignal e3_signal(int lo = 0, int hi = 4) {
  return prony::sample(e3_model(), box1d(lo, hi));
}

// rank by Gaussian elimination with complete pivoting; independent of the
// SVD used by the library
inline int gauss_rank(Eigen::MatrixXcd m, double rel_tol = 1e-10) {
  if (m.size() == 0) return 0;
  double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0;
  double cutoff = rel_tol * scale * static_cast<double>(std::max(m.rows(), m.cols()));
  int rank = 0;
  Eigen::Index row = 0, col = 0;
  while (row < m.rows() && col < m.cols()) {
    Eigen::Index pr = row, pc = col;
    double best = 0.0;
    for (Eigen::Index i = row; i < m.rows(); ++i) {
      for (Eigen::Index j = col; j < m.cols(); ++j) {
        if (std::abs(m(i, j)) > best) {
          best = std::abs(m(i, j));
          pr = i;
          pc = j;
        }
      }
    }
    if (best <= cutoff) break;
    m.row(row).swap(m.row(pr));
    m.col(col).swap(m.col(pc));
    for (Eigen::Index i = row + 1; i < m.rows(); ++i) {
      Complex factor = m(i, col) / m(row, col);
      m.row(i) -= factor * m.row(row);
    }
    ++rank;
    ++row;
    ++col;
  }
  return rank;
}

inline double poly_distance(const Polynomial& a, const Polynomial& b) {
  return (a - b).max_coefficient();
}

// |cos angle| between two coefficient vectors over a common index set
inline double coefficient_cosine(const Polynomial& a, const Polynomial& b, const IndexSet& over) {
  Eigen::VectorXcd va = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(over.size()));
  Eigen::VectorXcd vb = va;
  for (const auto& [alpha, c] : a.terms()) va(static_cast<Eigen::Index>(*over.position(alpha))) = c;
  for (const auto& [alpha, c] : b.terms()) vb(static_cast<Eigen::Index>(*over.position(alpha))) = c;
  return std::abs(va.dot(vb)) / (va.norm() * vb.norm());
}

// norm fraction of q's coefficient vector lying inside span{basis} over E
inline double span_cosine(const Polynomial& q, const std::vector<Polynomial>& basis,
                          const IndexSet& over) {
  Eigen::MatrixXcd span(static_cast<Eigen::Index>(over.size()),
                        static_cast<Eigen::Index>(basis.size()));
  span.setZero();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (const auto& [alpha, c] : basis[i].terms()) {
      span(static_cast<Eigen::Index>(*over.position(alpha)), static_cast<Eigen::Index>(i)) = c;
    }
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(over.size()));
  for (const auto& [alpha, c] : q.terms()) v(static_cast<Eigen::Index>(*over.position(alpha))) = c;
  Eigen::VectorXcd proj = span * span.colPivHouseholderQr().solve(v);
  return proj.norm() / v.norm();
}

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// random polynomial with support inside simplex(deg, s)
inline Polynomial random_poly(int s, int deg, std::mt19937_64& rng) {
  Polynomial p(s);
  for (const auto& alpha : IndexSet::simplex(deg, s)) {
    p.add_term(alpha, Complex(uniform01(rng) * 2.0 - 1.0, uniform01(rng) * 2.0 - 1.0));
  }
  return p;
}

// random complex values on an arbitrary window
inline LatticeSignal random_signal(const IndexSet& window, std::mt19937_64& rng) {
  std::vector<Complex> values;
  values.reserve(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) {
    values.emplace_back(uniform01(rng) * 2.0 - 1.0, uniform01(rng) * 2.0 - 1.0);
  }
  return LatticeSignal(window, std::move(values));
}

inline IndexSet box(int s, int lo, int hi) {
  std::vector<MultiIndex> pts;
  std::vector<int> cur(static_cast<std::size_t>(s), lo);
  while (true) {
    pts.emplace_back(cur);
    int axis = s;
    while (axis > 0) {
      --axis;
      if (cur[static_cast<std::size_t>(axis)] < hi) {
        ++cur[static_cast<std::size_t>(axis)];
        for (int j = axis + 1; j < s; ++j) cur[static_cast<std::size_t>(j)] = lo;
        break;
      }
      if (axis == 0) return IndexSet::insertion(s, std::move(pts));
    }
  }
}

}  // namespace testutil
