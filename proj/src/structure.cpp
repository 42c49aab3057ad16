#include "prony/structure.hpp"

#include <cmath>
#include <map>

#include "numeric_detail.hpp"
#include "prony/error.hpp"

namespace prony {

namespace {

Complex cpow(Complex base, int exp) {
  Complex r(1.0, 0.0);
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

double factorial_of(const MultiIndex& alpha) {
  double r = 1.0;
  for (int j = 0; j < alpha.dimension(); ++j) {
    for (int t = 2; t <= alpha[j]; ++t) r *= t;
  }
  return r;
}

// falling factorial value a (a-1) ... (a-b+1)
double falling_value(int a, int b) {
  double r = 1.0;
  for (int t = 0; t < b; ++t) r *= (a - t);
  return r;
}

void require_nonnegative(const IndexSet& A, const char* opname) {
  for (const auto& alpha : A) {
    if (!alpha.nonnegative()) {
      throw Error("bad-argument",
                  std::string(opname) + " requires nonnegative exponents, got " + alpha.to_string());
    }
  }
}

// Deterministic basis of the same span: reduced row echelon form over the
// canonical monomial order, one monic row per pivot monomial, sorted by
// ascending leading monomial.
std::vector<Polynomial> staircase_basis(const std::vector<Polynomial>& basis, const Tolerances& tol) {
  if (basis.empty()) return {};
  int s = basis.front().dimension();
  int maxdeg = 0;
  for (const auto& b : basis) maxdeg = std::max(maxdeg, b.total_degree());
  IndexSet ambient = IndexSet::simplex(std::max(maxdeg, 0), s);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(basis.size()),
                                              static_cast<Eigen::Index>(ambient.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (const auto& [alpha, c] : basis[i].terms()) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(*ambient.position(alpha))) = c;
    }
  }
  double cutoff = tol.rank_rtol * std::max(1.0, m.cwiseAbs().maxCoeff()) *
                  static_cast<double>(ambient.size());
  Eigen::Index pivot_row = 0;
  std::vector<Eigen::Index> pivot_cols;
  for (Eigen::Index col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    Eigen::Index best = pivot_row;
    for (Eigen::Index r = pivot_row + 1; r < m.rows(); ++r) {
      if (std::abs(m(r, col)) > std::abs(m(best, col))) best = r;
    }
    if (std::abs(m(best, col)) <= cutoff) continue;
    m.row(pivot_row).swap(m.row(best));
    m.row(pivot_row) /= m(pivot_row, col);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r != pivot_row) m.row(r) -= m(r, col) * m.row(pivot_row);
    }
    pivot_cols.push_back(col);
    ++pivot_row;
  }
  std::vector<Polynomial> out;
  out.reserve(static_cast<std::size_t>(pivot_row));
  for (Eigen::Index r = 0; r < pivot_row; ++r) {
    Polynomial p(s);
    double row_max = m.row(r).cwiseAbs().maxCoeff();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (std::abs(m(r, c)) > 1e-12 * row_max) p.add_term(ambient[static_cast<std::size_t>(c)], m(r, c));
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

Polynomial falling_factorial(const MultiIndex& alpha) {
  if (!alpha.nonnegative()) {
    throw Error("bad-argument", "falling factorial needs a nonnegative index, got " + alpha.to_string());
  }
  int s = alpha.dimension();
  Polynomial p = Polynomial::constant(s, Complex(1.0, 0.0));
  for (int j = 0; j < s; ++j) {
    for (int t = 0; t < alpha[j]; ++t) {
      Polynomial factor = Polynomial::monomial(MultiIndex::unit(s, j));
      factor.add_term(MultiIndex::zero(s), Complex(-static_cast<double>(t), 0.0));
      p = p * factor;
    }
  }
  return p;
}

Polynomial L_apply(const Polynomial& p) {
  int s = p.dimension();
  int d = p.total_degree();
  Polynomial out(s);
  if (d < 0) return out;
  // forward differences, each multi-index reached by a unit step from an
  // already-computed parent (canonical order lists parents first)
  std::map<MultiIndex, Polynomial, TermOrderLess> diff;
  diff.emplace(MultiIndex::zero(s), p);
  for (const auto& alpha : IndexSet::simplex(d, s)) {
    if (alpha.total_degree() > 0) {
      int axis = 0;
      while (alpha[axis] == 0) ++axis;
      const Polynomial& parent = diff.at(alpha - MultiIndex::unit(s, axis));
      diff.emplace(alpha, parent.shifted(MultiIndex::unit(s, axis)) - parent);
    }
    Complex value = diff.at(alpha).coefficient(MultiIndex::zero(s));
    if (value != Complex(0.0, 0.0)) out.add_term(alpha, value / factorial_of(alpha));
  }
  return out;
}

Polynomial L_inverse(const Polynomial& p) {
  Polynomial out(p.dimension());
  for (const auto& [alpha, c] : p.terms()) {
    out += falling_factorial(alpha).scaled(c);
  }
  return out;
}

Polynomial dilate(const Polynomial& p, const std::vector<Complex>& scale) {
  if (static_cast<int>(scale.size()) != p.dimension()) {
    throw Error("dimension-mismatch", "dilation scale dimension mismatch");
  }
  Polynomial out(p.dimension());
  for (const auto& [alpha, c] : p.terms()) {
    Complex factor = c;
    for (int j = 0; j < p.dimension(); ++j) factor *= cpow(scale[static_cast<std::size_t>(j)], alpha[j]);
    out.add_term(alpha, factor);
  }
  return out;
}

std::vector<Polynomial> shift_to_D_invariant(const std::vector<Polynomial>& basis,
                                             const Tolerances& tol) {
  if (basis.empty()) return {};
  int s = basis.front().dimension();
  int maxdeg = 0;
  for (const auto& b : basis) {
    if (b.dimension() != s) throw Error("dimension-mismatch", "basis dimensions differ");
    maxdeg = std::max(maxdeg, b.total_degree());
  }
  IndexSet ambient = IndexSet::simplex(std::max(maxdeg, 0), s);
  auto coeff_vec = [&](const Polynomial& q) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(ambient.size()));
    for (const auto& [alpha, c] : q.terms()) {
      auto pos = ambient.position(alpha);
      if (!pos) throw Error("bad-argument", "basis element exceeds its own ambient degree");
      v(static_cast<Eigen::Index>(*pos)) = c;
    }
    return v;
  };
  Eigen::MatrixXcd span(static_cast<Eigen::Index>(ambient.size()),
                        static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) span.col(static_cast<Eigen::Index>(i)) = coeff_vec(basis[i]);

  for (const auto& b : basis) {
    for (int j = 0; j < s; ++j) {
      Eigen::VectorXcd v = coeff_vec(b.shifted(MultiIndex::unit(s, j)));
      Eigen::VectorXcd x = detail::lsq_solve(span, v, tol);
      double res = (span * x - v).norm();
      if (res > tol.residual_atol * std::max(1.0, v.norm())) {
        throw Error("not-shift-invariant",
                    "span is not closed under the forward shift in coordinate " +
                        std::to_string(j + 1) + " (residual " + std::to_string(res) + ")");
      }
    }
  }

  std::vector<Polynomial> out;
  out.reserve(basis.size());
  for (const auto& b : basis) out.push_back(L_apply(b));
  return out;
}

StructuredMatrix vandermonde(const std::vector<std::vector<Complex>>& points, const IndexSet& A) {
  require_nonnegative(A, "vandermonde");
  StructuredMatrix m;
  m.kind = MatrixKind::Vandermonde;
  m.cols = A;
  m.data.resize(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(A.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& theta = points[i];
    if (static_cast<int>(theta.size()) != A.dimension()) {
      throw Error("dimension-mismatch", "vandermonde point dimension mismatch");
    }
    m.row_labels.push_back("theta" + std::to_string(i));
    for (std::size_t a = 0; a < A.size(); ++a) {
      Complex entry(1.0, 0.0);
      for (int j = 0; j < A.dimension(); ++j) entry *= cpow(theta[static_cast<std::size_t>(j)], A[a][j]);
      m.data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) = entry;
    }
  }
  return m;
}

StructuredMatrix hermite_vandermonde(const std::vector<VarietyPoint>& points, const IndexSet& A) {
  require_nonnegative(A, "hermite_vandermonde");
  std::size_t total = 0;
  for (const auto& p : points) total += p.mult_basis.size();
  StructuredMatrix m;
  m.kind = MatrixKind::HermiteVandermonde;
  m.cols = A;
  m.data.resize(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(A.size()));
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& theta = points[i].theta;
    if (static_cast<int>(theta.size()) != A.dimension()) {
      throw Error("dimension-mismatch", "hermite_vandermonde point dimension mismatch");
    }
    for (std::size_t qi = 0; qi < points[i].mult_basis.size(); ++qi) {
      const Polynomial& q = points[i].mult_basis[qi];
      m.row_labels.push_back("theta" + std::to_string(i) + ":q" + std::to_string(qi));
      for (std::size_t a = 0; a < A.size(); ++a) {
        const MultiIndex& alpha = A[a];
        // (q(D) (.)^alpha)(theta) = sum_beta q_beta * prod_j (alpha_j)_{beta_j} * theta^{alpha-beta}
        Complex entry(0.0, 0.0);
        for (const auto& [beta, c] : q.terms()) {
          bool ok = true;
          double factor = 1.0;
          Complex power(1.0, 0.0);
          for (int j = 0; j < A.dimension(); ++j) {
            if (beta[j] > alpha[j]) {
              ok = false;
              break;
            }
            factor *= falling_value(alpha[j], beta[j]);
            power *= cpow(theta[static_cast<std::size_t>(j)], alpha[j] - beta[j]);
          }
          if (ok) entry += c * factor * power;
        }
        m.data(row, static_cast<Eigen::Index>(a)) = entry;
      }
      ++row;
    }
  }
  return m;
}

FactorizationResult factorize(const ExponentialSumModel& model, const IndexSet& A,
                              const IndexSet& B, const Tolerances& tol) {
  require_nonnegative(A, "factorize");
  require_nonnegative(B, "factorize");
  int s = model.dimension();
  if (A.dimension() != s || B.dimension() != s) {
    throw Error("dimension-mismatch", "factorize index sets do not match the model dimension");
  }

  std::vector<VarietyPoint> points;
  std::vector<int> block_sizes;
  for (const auto& term : model.terms()) {
    VarietyPoint p;
    p.theta.reserve(static_cast<std::size_t>(s));
    for (const auto& w : term.omega) p.theta.push_back(std::exp(w));
    // D-invariant multiplicity space of the term: dilation of L applied to
    // the shift-invariant hull of the coefficient polynomial, rewritten as a
    // monic staircase basis so the output does not depend on hull order
    std::vector<Polynomial> raw;
    for (const auto& h : shift_invariant_hull(term.coeff)) {
      raw.push_back(dilate(L_apply(h), p.theta));
    }
    p.mult_basis = staircase_basis(raw, tol);
    if (p.mult_basis.size() != raw.size()) {
      throw Error("numerical-degeneracy", "multiplicity basis lost rank during reduction");
    }
    p.weight = static_cast<int>(p.mult_basis.size());
    p.mult_basis_exact = true;
    points.push_back(std::move(p));
    block_sizes.push_back(points.back().weight);
  }

  FactorizationResult result;
  result.block_sizes = block_sizes;
  result.V_A = hermite_vandermonde(points, A);
  result.V_B = hermite_vandermonde(points, B);

  LatticeSignal f = sample(model, set_sum(A, B));
  StructuredMatrix H = hankel_matrix(f, A, B);

  Eigen::Index total = result.V_A.data.rows();
  if (total == 0) {
    result.F.kind = MatrixKind::BlockDiagonal;
    result.F.data.resize(0, 0);
    result.residual = H.data.size() == 0 ? 0.0 : H.data.cwiseAbs().maxCoeff();
    return result;
  }

  if (numeric_rank(result.V_A.data, tol) < static_cast<int>(total)) {
    throw Error("rank-deficient-vandermonde", "A is not an interpolation set for the model's points");
  }
  if (numeric_rank(result.V_B.data, tol) < static_cast<int>(total)) {
    throw Error("rank-deficient-vandermonde", "B is not an interpolation set for the model's points");
  }

  // H = V_A^T F V_B has a unique solution once both Vandermondes have full
  // row rank; solve it with pseudoinverses instead of forming the big
  // Kronecker system
  Eigen::MatrixXcd va_t = result.V_A.data.transpose();
  Eigen::MatrixXcd solved = detail::pinv(va_t, tol) * H.data * detail::pinv(result.V_B.data, tol);

  double f_scale = std::max(1.0, solved.cwiseAbs().maxCoeff());
  result.off_block_max = 0.0;
  Eigen::Index offset_r = 0;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> ranges;
  for (int w : block_sizes) {
    ranges.emplace_back(offset_r, static_cast<Eigen::Index>(w));
    offset_r += w;
  }
  Eigen::MatrixXcd blocked = Eigen::MatrixXcd::Zero(total, total);
  for (std::size_t bi = 0; bi < ranges.size(); ++bi) {
    for (std::size_t bj = 0; bj < ranges.size(); ++bj) {
      auto [r0, rw] = ranges[bi];
      auto [c0, cw] = ranges[bj];
      if (bi == bj) {
        blocked.block(r0, c0, rw, cw) = solved.block(r0, c0, rw, cw);
      } else {
        double m = solved.block(r0, c0, rw, cw).cwiseAbs().maxCoeff();
        result.off_block_max = std::max(result.off_block_max, m);
      }
    }
  }
  if (result.off_block_max > tol.residual_atol * f_scale) {
    throw Error("non-block-diagonal", "solved factor is not block diagonal (off-block max " +
                                          std::to_string(result.off_block_max) + ")");
  }
  for (std::size_t bi = 0; bi < ranges.size(); ++bi) {
    auto [r0, w] = ranges[bi];
    if (numeric_rank(Eigen::MatrixXcd(blocked.block(r0, r0, w, w)), tol) < static_cast<int>(w)) {
      throw Error("numerical-degeneracy", "singular diagonal block in the solved factor");
    }
  }

  result.F.kind = MatrixKind::BlockDiagonal;
  result.F.data = std::move(blocked);
  result.F.row_labels = result.V_A.row_labels;
  result.residual = (H.data - va_t * result.F.data * result.V_B.data).cwiseAbs().maxCoeff();
  return result;
}

}  // namespace prony
