#include "prony/prony_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "numeric_detail.hpp"
#include "prony/error.hpp"

namespace prony {

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Polynomial polynomial_from_column(const Eigen::VectorXcd& v, const IndexSet& exponents) {
  Polynomial p(exponents.dimension());
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    Complex c = v(static_cast<Eigen::Index>(i));
    if (c != Complex(0.0, 0.0)) p.add_term(exponents[i], c);
  }
  return p;
}

// --- complex Schur utilities -------------------------------------------------

// Exchange the eigenvalues on diagonal positions (i, i+1) of an upper
// triangular T, updating T <- G T G^H and U <- U G^H. Standard Givens swap:
// the rotation maps the eigenvector [T(i,i+1); T(i+1,i+1) - T(i,i)] of the
// trailing eigenvalue onto e_1.
void swap_adjacent(Eigen::MatrixXcd& T, Eigen::MatrixXcd& U, Eigen::Index i) {
  const Eigen::Index n = T.rows();
  Complex f = T(i, i + 1);
  Complex g = T(i + 1, i + 1) - T(i, i);
  double fn = std::abs(f), gn = std::abs(g);
  if (gn == 0.0) return;  // equal diagonal entries, nothing to exchange
  double d = std::hypot(fn, gn);
  Complex cs, sn;
  if (fn == 0.0) {
    cs = Complex(0.0, 0.0);
    sn = std::conj(g) / gn;
  } else {
    cs = Complex(fn / d, 0.0);
    sn = (f / fn) * std::conj(g) / d;
  }
  for (Eigen::Index m = i; m < n; ++m) {  // rows i, i+1 (columns < i are zero)
    Complex t1 = T(i, m), t2 = T(i + 1, m);
    T(i, m) = cs * t1 + sn * t2;
    T(i + 1, m) = -std::conj(sn) * t1 + cs * t2;
  }
  for (Eigen::Index m = 0; m <= i + 1; ++m) {  // columns i, i+1
    Complex t1 = T(m, i), t2 = T(m, i + 1);
    T(m, i) = cs * t1 + std::conj(sn) * t2;
    T(m, i + 1) = -sn * t1 + cs * t2;
  }
  for (Eigen::Index m = 0; m < U.rows(); ++m) {
    Complex t1 = U(m, i), t2 = U(m, i + 1);
    U(m, i) = cs * t1 + std::conj(sn) * t2;
    U(m, i + 1) = -sn * t1 + cs * t2;
  }
  T(i + 1, i) = Complex(0.0, 0.0);
}

// Move the diagonal entries at `indices` (ascending) to the leading block.
void reorder_to_front(Eigen::MatrixXcd& T, Eigen::MatrixXcd& U, const std::vector<int>& indices) {
  Eigen::Index target = 0;
  for (int idx : indices) {
    for (Eigen::Index m = idx; m > target; --m) swap_adjacent(T, U, m - 1);
    ++target;
  }
}

// Unit eigenvector for the diagonal entry at position i, by back
// substitution in the triangular factor (small pivots floored).
Eigen::VectorXcd schur_eigenvector(const Eigen::MatrixXcd& T, const Eigen::MatrixXcd& U,
                                   Eigen::Index i, double pivot_floor) {
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(T.rows());
  x(i) = Complex(1.0, 0.0);
  for (Eigen::Index j = i - 1; j >= 0; --j) {
    Complex acc(0.0, 0.0);
    for (Eigen::Index m = j + 1; m <= i; ++m) acc += T(j, m) * x(m);
    Complex d = T(j, j) - T(i, i);
    if (std::abs(d) < pivot_floor) d = Complex(pivot_floor, 0.0);
    x(j) = -acc / d;
  }
  Eigen::VectorXcd v = U * x;
  v.normalize();
  return v;
}

}  // namespace

KernelIdealData kernel_basis(const LatticeSignal& f, int k, const Tolerances& tol) {
  if (k < 0) throw Error("bad-argument", "kernel_basis requires k >= 0");
  int s = f.dimension();
  IndexSet rows = IndexSet::simplex(k, s);
  IndexSet cols = IndexSet::simplex(k + 1, s);
  StructuredMatrix H = hankel_matrix(f, rows, cols);

  // Gamma_k is a prefix of Gamma_{k+1} in the canonical order, so the
  // square matrix H_{Gamma_k,Gamma_k} is the leading column block
  Eigen::MatrixXcd square = H.data.leftCols(static_cast<Eigen::Index>(rows.size()));
  int rank_square = numeric_rank(square, tol);
  detail::SvdResult svd = detail::full_svd(H.data, tol);
  if (rank_square != svd.rank) {
    throw Error("rank-not-stabilized",
                "rank grows from degree " + std::to_string(k) + " to " + std::to_string(k + 1) +
                    " (" + std::to_string(rank_square) + " vs " + std::to_string(svd.rank) +
                    "); increase k or enlarge the window");
  }

  KernelIdealData kd;
  kd.k = k;
  kd.rank = svd.rank;
  for (Eigen::Index i = svd.rank; i < svd.svd.matrixV().cols(); ++i) {
    kd.kernel_polys.push_back(polynomial_from_column(svd.svd.matrixV().col(i), cols));
  }

  // normal set: rank-revealing pivoted orthogonalization over the columns,
  // near-ties (within 10x of the largest residual norm) resolved in favor
  // of the earliest column in the canonical order
  std::vector<bool> taken(cols.size(), false);
  std::vector<std::size_t> chosen;
  Eigen::MatrixXcd work = H.data;
  std::vector<Eigen::VectorXcd> qvecs;
  for (int step = 0; step < svd.rank; ++step) {
    double max_norm = 0.0;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (!taken[j]) max_norm = std::max(max_norm, work.col(static_cast<Eigen::Index>(j)).norm());
    }
    if (max_norm <= svd.cutoff) {
      throw Error("numerical-degeneracy",
                  "column pivoting stalled before reaching rank " + std::to_string(svd.rank));
    }
    std::size_t pick = cols.size();
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (!taken[j] && work.col(static_cast<Eigen::Index>(j)).norm() >= max_norm / 10.0) {
        pick = j;
        break;
      }
    }
    taken[pick] = true;
    chosen.push_back(pick);
    Eigen::VectorXcd q = work.col(static_cast<Eigen::Index>(pick));
    for (const auto& prev : qvecs) q -= prev.dot(q) * prev;  // reorthogonalize
    q.normalize();
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (!taken[j]) {
        auto col = work.col(static_cast<Eigen::Index>(j));
        col -= q.dot(col) * q;
      }
    }
    qvecs.push_back(std::move(q));
  }
  std::sort(chosen.begin(), chosen.end());
  std::vector<MultiIndex> normal_elems;
  normal_elems.reserve(chosen.size());
  for (std::size_t j : chosen) normal_elems.push_back(cols[j]);
  kd.normal_set = IndexSet::grlex(s, std::move(normal_elems));

  // border reductions: express each column z_j z^nu outside N over the N
  // columns; these are the normal forms feeding the multiplication matrices
  Eigen::MatrixXcd basis(H.data.rows(), static_cast<Eigen::Index>(chosen.size()));
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    basis.col(static_cast<Eigen::Index>(i)) = H.data.col(static_cast<Eigen::Index>(chosen[i]));
  }
  double h_scale = std::max(1.0, H.data.size() == 0 ? 0.0 : H.data.cwiseAbs().maxCoeff());
  for (const auto& nu : kd.normal_set) {
    for (int j = 0; j < s; ++j) {
      MultiIndex mu = nu + MultiIndex::unit(s, j);
      if (kd.normal_set.contains(mu) || kd.border_coeffs.count(mu)) continue;
      auto pos = cols.position(mu);
      if (!pos) {
        throw Error("missing-border", "border monomial " + mu.to_string() +
                                          " falls outside degree " + std::to_string(k + 1) +
                                          "; increase k");
      }
      Eigen::VectorXcd rhs = H.data.col(static_cast<Eigen::Index>(*pos));
      Eigen::VectorXcd x = detail::lsq_solve(basis, rhs, tol);
      double res = (basis * x - rhs).cwiseAbs().maxCoeff();
      if (res > tol.residual_atol * h_scale) {
        throw Error("numerical-degeneracy",
                    "border reduction for " + mu.to_string() + " misses the column span (residual " +
                        std::to_string(res) + ")");
      }
      kd.border_coeffs.emplace(mu, std::move(x));
    }
  }
  return kd;
}

std::vector<Eigen::MatrixXcd> multiplication_matrices(const KernelIdealData& kd) {
  int s = kd.normal_set.dimension();
  int r = kd.rank;
  std::vector<Eigen::MatrixXcd> ms(static_cast<std::size_t>(s),
                                   Eigen::MatrixXcd::Zero(r, r));
  for (int j = 0; j < s; ++j) {
    for (int i = 0; i < r; ++i) {
      MultiIndex mu = kd.normal_set[static_cast<std::size_t>(i)] + MultiIndex::unit(s, j);
      if (auto pos = kd.normal_set.position(mu)) {
        ms[static_cast<std::size_t>(j)](static_cast<Eigen::Index>(*pos), i) = Complex(1.0, 0.0);
      } else {
        auto it = kd.border_coeffs.find(mu);
        if (it == kd.border_coeffs.end()) {
          throw Error("missing-border", "no border reduction for " + mu.to_string());
        }
        ms[static_cast<std::size_t>(j)].col(i) = it->second;
      }
    }
  }
  return ms;
}

JointEigenResult joint_eigen(const std::vector<Eigen::MatrixXcd>& ms, const Tolerances& tol,
                             std::uint64_t seed) {
  if (ms.empty()) throw Error("bad-argument", "joint_eigen needs at least one matrix");
  const Eigen::Index r = ms.front().rows();
  for (const auto& m : ms) {
    if (m.rows() != r || m.cols() != r) {
      throw Error("bad-argument", "joint_eigen matrices must be square and equally sized");
    }
  }
  JointEigenResult out;
  if (r == 0) return out;
  const int s = static_cast<int>(ms.size());

  double scale = 1.0;
  for (const auto& m : ms) scale = std::max(scale, m.cwiseAbs().maxCoeff());
  double worst = 0.0;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      worst = std::max(worst, (ms[i] * ms[j] - ms[j] * ms[i]).cwiseAbs().maxCoeff());
    }
  }
  out.commutation_residual = worst / (scale * scale);
  if (out.commutation_residual > tol.residual_atol) {
    throw Error("non-commuting", "multiplication matrices do not commute (scaled residual " +
                                     std::to_string(out.commutation_residual) + ")");
  }

  // one random real combination; its Schur basis serves every coordinate
  std::mt19937_64 rng(seed);
  Eigen::MatrixXcd mc = Eigen::MatrixXcd::Zero(r, r);
  for (const auto& m : ms) mc += (0.5 + uniform01(rng)) * m;

  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(mc);
  Eigen::MatrixXcd T = schur.matrixT();
  Eigen::MatrixXcd U = schur.matrixU();
  double pivot_floor = std::numeric_limits<double>::epsilon() *
                       std::max(1.0, T.cwiseAbs().maxCoeff());

  // per-eigenvector Rayleigh estimates, used only to group the spectrum
  std::vector<std::vector<Complex>> estimates(static_cast<std::size_t>(r));
  for (Eigen::Index i = 0; i < r; ++i) {
    Eigen::VectorXcd v = schur_eigenvector(T, U, i, pivot_floor);
    auto& est = estimates[static_cast<std::size_t>(i)];
    est.reserve(static_cast<std::size_t>(s));
    for (const auto& m : ms) est.push_back(v.dot(m * v));
  }

  std::vector<std::vector<int>> clusters;
  std::vector<std::vector<Complex>> centers;
  for (Eigen::Index i = 0; i < r; ++i) {
    const auto& est = estimates[static_cast<std::size_t>(i)];
    bool placed = false;
    for (std::size_t c = 0; c < clusters.size() && !placed; ++c) {
      bool close = true;
      for (int j = 0; j < s; ++j) {
        double radius = tol.cluster_rtol * (1.0 + std::abs(centers[c][static_cast<std::size_t>(j)]));
        if (std::abs(est[static_cast<std::size_t>(j)] - centers[c][static_cast<std::size_t>(j)]) >
            radius) {
          close = false;
          break;
        }
      }
      if (close) {
        clusters[c].push_back(static_cast<int>(i));
        double n = static_cast<double>(clusters[c].size());
        for (int j = 0; j < s; ++j) {
          auto& ctr = centers[c][static_cast<std::size_t>(j)];
          ctr += (est[static_cast<std::size_t>(j)] - ctr) / n;
        }
        placed = true;
      }
    }
    if (!placed) {
      clusters.push_back({static_cast<int>(i)});
      centers.push_back(est);
    }
  }

  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const int w = static_cast<int>(clusters[c].size());
    // refine on the cluster's invariant subspace: reorder its eigenvalues to
    // the leading Schur block and take block Rayleigh quotients there
    Eigen::MatrixXcd Tc = T, Uc = U;
    reorder_to_front(Tc, Uc, clusters[c]);
    Eigen::MatrixXcd S = Uc.leftCols(w);
    VarietyPoint point;
    point.weight = w;
    point.theta.reserve(static_cast<std::size_t>(s));
    for (const auto& m : ms) {
      point.theta.push_back((S.adjoint() * m * S).trace() / static_cast<double>(w));
    }
    for (int member : clusters[c]) {
      const auto& est = estimates[static_cast<std::size_t>(member)];
      for (int j = 0; j < s; ++j) {
        double radius = 100.0 * tol.cluster_rtol * (1.0 + std::abs(point.theta[static_cast<std::size_t>(j)]));
        if (std::abs(est[static_cast<std::size_t>(j)] - point.theta[static_cast<std::size_t>(j)]) > radius) {
          throw Error("defective-clustering",
                      "inconsistent Rayleigh quotients inside an eigenvalue cluster");
        }
      }
    }
    // multiplicity space: the first `weight` monomials (exact for simple
    // points and in one variable, a flagged heuristic otherwise)
    IndexSet monomials = IndexSet::simplex(w, s);
    for (int i = 0; i < w; ++i) {
      point.mult_basis.push_back(Polynomial::monomial(monomials[static_cast<std::size_t>(i)]));
    }
    point.mult_basis_exact = (w == 1 || s == 1);
    out.points.push_back(std::move(point));
  }
  return out;
}

std::vector<std::vector<Complex>> frequencies_from_points(const std::vector<VarietyPoint>& points) {
  std::vector<std::vector<Complex>> freqs;
  freqs.reserve(points.size());
  for (const auto& p : points) {
    std::vector<Complex> omega;
    omega.reserve(p.theta.size());
    for (const auto& t : p.theta) {
      if (std::abs(t) <= 1e-12) {
        throw Error("zero-component",
                    "variety point has a vanishing component; upstream solve failed");
      }
      omega.push_back(std::log(t));  // log|t| + i arg(t), arg in (-pi, pi]
    }
    freqs.push_back(std::move(omega));
  }
  return freqs;
}

CoefficientRecovery recover_coefficients(const LatticeSignal& f,
                                         const std::vector<VarietyPoint>& points,
                                         const IndexSet& A, const Tolerances& tol) {
  int s = f.dimension();
  if (A.dimension() != s) throw Error("dimension-mismatch", "A dimension mismatch");
  auto missing = A.missing_from(f.window());
  if (!missing.empty()) {
    throw Error("insufficient-window", "coefficient system needs samples on all of A", missing);
  }

  CoefficientRecovery out;
  int total = 0;
  for (const auto& p : points) total += static_cast<int>(p.mult_basis.size());
  if (total == 0) {
    out.model = ExponentialSumModel(s);
    double res = 0.0;
    for (const auto& a : A) res = std::max(res, std::abs(f.at(a)));
    out.residual = res;
    return out;
  }

  std::vector<std::vector<Complex>> freqs = frequencies_from_points(points);

  StructuredMatrix V = hermite_vandermonde(points, A);
  if (static_cast<int>(A.size()) < total || numeric_rank(V.data, tol) < total) {
    throw Error("rank-deficient-vandermonde",
                "A does not support interpolation at the recovered points");
  }
  Eigen::VectorXcd b(static_cast<Eigen::Index>(A.size()));
  for (std::size_t i = 0; i < A.size(); ++i) b(static_cast<Eigen::Index>(i)) = f.at(A[i]);
  Eigen::VectorXcd c = detail::lsq_solve(V.data.transpose(), b, tol);

  // row (theta, q) acts on exponents as p(alpha) theta^alpha with
  // p = L^{-1}(sigma_{1/theta} q); assemble the coefficient polynomials in
  // that shift-invariant form
  std::vector<ModelTerm> terms;
  Eigen::Index idx = 0;
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    const auto& p = points[pi];
    std::vector<Complex> inv_theta;
    inv_theta.reserve(p.theta.size());
    for (const auto& t : p.theta) inv_theta.push_back(Complex(1.0, 0.0) / t);
    Polynomial coeff(s);
    for (const auto& q : p.mult_basis) {
      coeff += L_inverse(dilate(q, inv_theta)).scaled(c(idx));
      ++idx;
    }
    terms.push_back({freqs[pi], std::move(coeff)});
  }
  out.model = ExponentialSumModel::make(s, std::move(terms));
  double res = 0.0;
  for (const auto& a : A) res = std::max(res, std::abs(evaluate_model(out.model, a) - f.at(a)));
  out.residual = res;
  return out;
}

ReconstructionReport reconstruct(const LatticeSignal& f, const Tolerances& tol,
                                 std::uint64_t seed) {
  int s = f.dimension();
  const IndexSet& window = f.window();

  std::vector<MultiIndex> nonneg;
  for (const auto& w : window) {
    if (w.nonnegative()) nonneg.push_back(w);
  }
  IndexSet A = IndexSet::insertion(s, std::move(nonneg));

  auto covered = [&](const IndexSet& set) { return set.subset_of(window); };

  int K = -1;
  while (covered(IndexSet::simplex(2 * (K + 1) + 1, s))) ++K;
  if (K < 0) {
    IndexSet minimal = IndexSet::simplex(1, s);
    throw Error("window-too-small", "window cannot hold the minimal kernel footprint Gamma_1",
                minimal.missing_from(window));
  }

  auto square_rank = [&](int k) {
    IndexSet g = IndexSet::simplex(k, s);
    return numeric_rank(hankel_matrix(f, g, g), tol);
  };

  std::vector<int> ranks(static_cast<std::size_t>(K) + 2, -1);
  int k_star = -1;
  for (int k = 0; k <= K; ++k) {
    if (ranks[static_cast<std::size_t>(k)] < 0) ranks[static_cast<std::size_t>(k)] = square_rank(k);
    if (!covered(IndexSet::simplex(2 * k + 2, s))) break;
    if (ranks[static_cast<std::size_t>(k) + 1] < 0) {
      ranks[static_cast<std::size_t>(k) + 1] = square_rank(k + 1);
    }
    if (ranks[static_cast<std::size_t>(k)] == ranks[static_cast<std::size_t>(k) + 1]) {
      k_star = k;
      break;
    }
  }
  if (k_star < 0) {
    // at the window boundary accept K when widening the column set alone
    // adds no rank
    if (ranks[static_cast<std::size_t>(K)] < 0) ranks[static_cast<std::size_t>(K)] = square_rank(K);
    int rect = numeric_rank(
        hankel_matrix(f, IndexSet::simplex(K, s), IndexSet::simplex(K + 1, s)), tol);
    if (ranks[static_cast<std::size_t>(K)] == rect) {
      k_star = K;
    } else {
      throw Error("rank-not-stabilized",
                  "rank still grows at the largest supported degree k = " + std::to_string(K) +
                      "; extend the window to cover Gamma_" + std::to_string(2 * K + 3));
    }
  }

  ReconstructionReport report;
  report.k_star = k_star;
  report.rank = ranks[static_cast<std::size_t>(k_star)];
  report.seed = seed;
  if (report.rank == 0) {
    report.model = ExponentialSumModel(s);
    double res = 0.0;
    for (const auto& a : A) res = std::max(res, std::abs(f.at(a)));
    report.residual = res;
    return report;
  }

  KernelIdealData kd = kernel_basis(f, k_star, tol);
  JointEigenResult je = joint_eigen(multiplication_matrices(kd), tol, seed);
  report.points = je.points;
  report.commutation_residual = je.commutation_residual;
  CoefficientRecovery rec = recover_coefficients(f, je.points, A, tol);
  report.model = std::move(rec.model);
  report.residual = rec.residual;
  return report;
}

double annihilator_check(const LatticeSignal& f, const Polynomial& q, const IndexSet& E) {
  if (q.is_zero()) return 0.0;
  return correlate(f, q, E).max_abs();
}

IndexSet admissible_window(const LatticeSignal& f, const Polynomial& q) {
  if (q.is_zero()) return f.window();
  IndexSet supp = q.support();
  IndexSet candidates = set_sum(f.window(), reflect(supp));
  std::vector<MultiIndex> kept;
  for (const auto& alpha : candidates) {
    bool ok = true;
    for (const auto& beta : supp) {
      if (!f.defined_at(alpha + beta)) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(alpha);
  }
  return IndexSet::grlex(f.dimension(), std::move(kept));
}

}  // namespace prony
