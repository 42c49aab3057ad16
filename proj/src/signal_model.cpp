#include "prony/signal_model.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <sstream>

#include "prony/error.hpp"

namespace prony {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string format_points(const std::vector<MultiIndex>& points, std::size_t limit = 8) {
  std::ostringstream out;
  for (std::size_t i = 0; i < points.size() && i < limit; ++i) {
    if (i) out << ", ";
    out << points[i].to_string();
  }
  if (points.size() > limit) out << ", ... (" << points.size() << " total)";
  return out.str();
}

// uniform double in [0, 1), reproducible across platforms
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

LatticeSignal::LatticeSignal(IndexSet window, std::vector<Complex> values)
    : dim_(window.dimension()), window_(std::move(window)) {
  if (values.size() != window_.size()) {
    throw Error("bad-argument", "signal value count " + std::to_string(values.size()) +
                                    " does not match window size " + std::to_string(window_.size()));
  }
  values_.reserve(values.size());
  for (std::size_t i = 0; i < window_.size(); ++i) values_.emplace(window_[i], values[i]);
}

Complex LatticeSignal::at(const MultiIndex& a) const {
  auto it = values_.find(a);
  if (it == values_.end()) {
    throw Error("missing-sample", "no sample at " + a.to_string(), {a});
  }
  return it->second;
}

LatticeSignal LatticeSignal::translated(const MultiIndex& gamma) const {
  std::vector<MultiIndex> points;
  std::vector<Complex> values;
  points.reserve(window_.size());
  values.reserve(window_.size());
  for (const auto& w : window_) {
    points.push_back(w - gamma);
    values.push_back(values_.at(w));
  }
  return LatticeSignal(IndexSet::insertion(dim_, std::move(points)), std::move(values));
}

std::vector<Complex> LatticeSignal::values_in_window_order() const {
  std::vector<Complex> out;
  out.reserve(window_.size());
  for (const auto& w : window_) out.push_back(values_.at(w));
  return out;
}

double LatticeSignal::max_abs() const {
  double m = 0.0;
  for (const auto& [a, v] : values_) m = std::max(m, std::abs(v));
  return m;
}

double normalize_angle(double a) {
  double folded = a - 2.0 * kPi * std::ceil((a - kPi) / (2.0 * kPi));
  if (folded <= -kPi) folded += 2.0 * kPi;  // guard rounding at the branch cut
  if (folded > kPi) folded -= 2.0 * kPi;
  return folded;
}

ExponentialSumModel ExponentialSumModel::make(int dim, std::vector<ModelTerm> terms) {
  std::vector<ModelTerm> kept;
  for (auto& t : terms) {
    if (static_cast<int>(t.omega.size()) != dim) {
      throw Error("invalid-model", "frequency vector has wrong dimension");
    }
    if (t.coeff.dimension() != dim) {
      throw Error("invalid-model", "coefficient polynomial has wrong dimension");
    }
    for (auto& w : t.omega) w = Complex(w.real(), normalize_angle(w.imag()));
    t.coeff = t.coeff.normalized();
    if (t.coeff.is_zero()) continue;
    kept.push_back(std::move(t));
  }
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      double sep = 0.0;
      for (int c = 0; c < dim; ++c) {
        double dre = kept[i].omega[static_cast<std::size_t>(c)].real() -
                     kept[j].omega[static_cast<std::size_t>(c)].real();
        double dim_part = normalize_angle(kept[i].omega[static_cast<std::size_t>(c)].imag() -
                                          kept[j].omega[static_cast<std::size_t>(c)].imag());
        sep = std::max(sep, std::max(std::abs(dre), std::abs(dim_part)));
      }
      if (sep <= 1e-12) {
        throw Error("invalid-model", "duplicate frequencies after normalization");
      }
    }
  }
  ExponentialSumModel m(dim);
  m.terms_ = std::move(kept);
  return m;
}

Complex evaluate_model(const ExponentialSumModel& m, const MultiIndex& x) {
  if (x.dimension() != m.dimension()) {
    throw Error("dimension-mismatch", "evaluation point dimension mismatch");
  }
  Complex total(0.0, 0.0);
  for (const auto& t : m.terms()) {
    Complex phase(0.0, 0.0);
    for (int j = 0; j < m.dimension(); ++j) {
      phase += t.omega[static_cast<std::size_t>(j)] * static_cast<double>(x[j]);
    }
    total += t.coeff.evaluate(x) * std::exp(phase);
  }
  return total;
}

LatticeSignal sample(const ExponentialSumModel& m, const IndexSet& window) {
  if (window.dimension() != m.dimension()) {
    throw Error("dimension-mismatch", "window dimension does not match model");
  }
  std::vector<Complex> values;
  values.reserve(window.size());
  for (const auto& x : window) values.push_back(evaluate_model(m, x));
  return LatticeSignal(window, std::move(values));
}

static LatticeSignal sliding_sum(const LatticeSignal& f, const Polynomial& g, const IndexSet& E,
                                 int sign, const char* opname) {
  if (f.dimension() != g.dimension() || f.dimension() != E.dimension()) {
    throw Error("dimension-mismatch", std::string(opname) + " dimension mismatch");
  }
  IndexSet needed = set_sum(E, g.support(), sign);
  auto missing = needed.missing_from(f.window());
  if (!missing.empty()) {
    throw Error("insufficient-window",
                std::string(opname) + " needs samples at " + format_points(missing), missing);
  }
  std::vector<Complex> values;
  values.reserve(E.size());
  for (const auto& alpha : E) {
    Complex acc(0.0, 0.0);
    for (const auto& [beta, c] : g.terms()) {
      acc += f.at(sign >= 0 ? alpha + beta : alpha - beta) * c;
    }
    values.push_back(acc);
  }
  return LatticeSignal(E, std::move(values));
}

LatticeSignal correlate(const LatticeSignal& f, const Polynomial& g, const IndexSet& E) {
  return sliding_sum(f, g, E, +1, "correlate");
}

LatticeSignal convolve(const LatticeSignal& f, const Polynomial& g, const IndexSet& E) {
  return sliding_sum(f, g, E, -1, "convolve");
}

std::vector<Polynomial> shift_invariant_hull(const Polynomial& p) {
  Polynomial seed = p.normalized();
  if (seed.is_zero()) return {};
  int s = seed.dimension();
  IndexSet ambient = IndexSet::simplex(seed.total_degree(), s);

  auto coeff_vec = [&](const Polynomial& q) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(ambient.size()));
    for (const auto& [alpha, c] : q.terms()) {
      v(static_cast<Eigen::Index>(*ambient.position(alpha))) = c;
    }
    return v;
  };
  auto from_vec = [&](const Eigen::VectorXcd& v) {
    Polynomial q(s);
    for (std::size_t i = 0; i < ambient.size(); ++i) {
      Complex c = v(static_cast<Eigen::Index>(i));
      if (c != Complex(0.0, 0.0)) q.add_term(ambient[i], c);
    }
    return q;
  };

  std::vector<Eigen::VectorXcd> basis;
  std::vector<Polynomial> polys;
  std::deque<Polynomial> work{seed};
  while (!work.empty()) {
    Polynomial cur = std::move(work.front());
    work.pop_front();
    Eigen::VectorXcd v = coeff_vec(cur);
    double original = v.norm();
    if (original == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) v -= b.dot(v) * b;
    }
    if (v.norm() <= 1e-10 * original) continue;
    v /= v.norm();
    Polynomial q = from_vec(v);
    basis.push_back(std::move(v));
    polys.push_back(q);
    for (int j = 0; j < s; ++j) work.push_back(q.shifted(MultiIndex::unit(s, j)));
  }
  return polys;
}

int sis_dimension(const ExponentialSumModel& m) {
  int total = 0;
  for (const auto& t : m.terms()) total += static_cast<int>(shift_invariant_hull(t.coeff).size());
  return total;
}

ExponentialSumModel random_model(int dim, int n_terms, int degree_bound, std::uint64_t seed) {
  if (dim < 1 || n_terms < 0 || degree_bound < 0) {
    throw Error("bad-argument", "random_model requires dim >= 1, n_terms >= 0, degree_bound >= 0");
  }
  std::mt19937_64 rng(seed);
  std::vector<ModelTerm> terms;
  std::vector<std::vector<Complex>> points;
  for (int t = 0; t < n_terms; ++t) {
    std::vector<Complex> omega(static_cast<std::size_t>(dim));
    std::vector<Complex> theta(static_cast<std::size_t>(dim));
    bool placed = false;
    for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
      for (int j = 0; j < dim; ++j) {
        double re = -0.4 + 0.8 * uniform01(rng);
        double im = normalize_angle(-kPi + 2.0 * kPi * uniform01(rng));
        omega[static_cast<std::size_t>(j)] = Complex(re, im);
        theta[static_cast<std::size_t>(j)] = std::exp(Complex(re, im));
      }
      placed = true;
      for (const auto& other : points) {
        double sep = 0.0;
        for (int j = 0; j < dim; ++j) {
          sep = std::max(sep, std::abs(theta[static_cast<std::size_t>(j)] -
                                       other[static_cast<std::size_t>(j)]));
        }
        if (sep < 0.3) {
          placed = false;
          break;
        }
      }
    }
    if (!placed) {
      throw Error("bad-argument", "could not place " + std::to_string(n_terms) +
                                      " separated frequencies; reduce the term count");
    }
    points.push_back(theta);
    Polynomial coeff(dim);
    for (const auto& alpha : IndexSet::simplex(degree_bound, dim)) {
      double phase = 2.0 * kPi * uniform01(rng);
      coeff.add_term(alpha, std::exp(Complex(0.0, phase)));
    }
    terms.push_back({std::move(omega), std::move(coeff)});
  }
  return ExponentialSumModel::make(dim, std::move(terms));
}

ModelMatch match_models(const ExponentialSumModel& a, const ExponentialSumModel& b) {
  ModelMatch result;
  if (a.dimension() != b.dimension() || a.terms().size() != b.terms().size()) {
    result.matched = false;
    result.max_frequency_error = std::numeric_limits<double>::infinity();
    result.max_coefficient_error = std::numeric_limits<double>::infinity();
    return result;
  }
  int dim = a.dimension();
  std::size_t n = a.terms().size();

  auto freq_dist = [&](const ModelTerm& x, const ModelTerm& y) {
    double d = 0.0;
    for (int j = 0; j < dim; ++j) {
      double dre = x.omega[static_cast<std::size_t>(j)].real() -
                   y.omega[static_cast<std::size_t>(j)].real();
      double dim_part = normalize_angle(x.omega[static_cast<std::size_t>(j)].imag() -
                                        y.omega[static_cast<std::size_t>(j)].imag());
      d = std::max(d, std::max(std::abs(dre), std::abs(dim_part)));
    }
    return d;
  };

  std::vector<bool> used_a(n, false), used_b(n, false);
  result.matched = true;
  for (std::size_t round = 0; round < n; ++round) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (used_a[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (used_b[j]) continue;
        double d = freq_dist(a.terms()[i], b.terms()[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    used_a[bi] = used_b[bj] = true;
    result.max_frequency_error = std::max(result.max_frequency_error, best);
    Polynomial diff = a.terms()[bi].coeff - b.terms()[bj].coeff;
    result.max_coefficient_error = std::max(result.max_coefficient_error, diff.max_coefficient());
  }
  return result;
}

}  // namespace prony
