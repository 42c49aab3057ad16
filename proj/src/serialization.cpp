#include "prony/serialization.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>

#include "prony/error.hpp"

namespace prony {

namespace {

nlohmann::json complex_to_json(const Complex& c) { return nlohmann::json::array({c.real(), c.imag()}); }

Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error("parse-error", "expected [re, im] pair, got " + j.dump());
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

const nlohmann::json& field(const nlohmann::json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw Error("parse-error", std::string("missing field \"") + name + "\"");
  return *it;
}

std::string kind_name(MatrixKind k) {
  switch (k) {
    case MatrixKind::Hankel: return "hankel";
    case MatrixKind::Toeplitz: return "toeplitz";
    case MatrixKind::Vandermonde: return "vandermonde";
    case MatrixKind::HermiteVandermonde: return "hermite-vandermonde";
    case MatrixKind::BlockDiagonal: return "block-diagonal";
    case MatrixKind::Plain: break;
  }
  return "plain";
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trimmed(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& s, int line_no) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error("parse-error", "bad number \"" + s + "\" on line " + std::to_string(line_no));
  }
}

int parse_int(const std::string& s, int line_no) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error("parse-error", "bad integer \"" + s + "\" on line " + std::to_string(line_no));
  }
}

}  // namespace

nlohmann::json index_set_to_json(const IndexSet& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& a : s) {
    nlohmann::json row = nlohmann::json::array();
    for (int i = 0; i < a.dimension(); ++i) row.push_back(a[i]);
    out.push_back(std::move(row));
  }
  return out;
}

IndexSet index_set_from_json(const nlohmann::json& j, int dim, IndexSet::Order order) {
  if (!j.is_array()) throw Error("parse-error", "index set must be an array of integer arrays");
  std::vector<MultiIndex> elems;
  elems.reserve(j.size());
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw Error("parse-error", "index entry " + row.dump() + " does not have " +
                                     std::to_string(dim) + " components");
    }
    std::vector<int> e(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
      if (!row[static_cast<std::size_t>(i)].is_number_integer()) {
        throw Error("parse-error", "index entry " + row.dump() + " has a non-integer component");
      }
      e[static_cast<std::size_t>(i)] = row[static_cast<std::size_t>(i)].get<int>();
    }
    elems.emplace_back(std::move(e));
  }
  return order == IndexSet::Order::Grlex ? IndexSet::grlex(dim, std::move(elems))
                                         : IndexSet::insertion(dim, std::move(elems));
}

nlohmann::json polynomial_to_json(const Polynomial& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [alpha, c] : p.terms()) {
    nlohmann::json row;
    nlohmann::json expo = nlohmann::json::array();
    for (int i = 0; i < alpha.dimension(); ++i) expo.push_back(alpha[i]);
    row["alpha"] = std::move(expo);
    row["re"] = c.real();
    row["im"] = c.imag();
    out.push_back(std::move(row));
  }
  return out;
}

Polynomial polynomial_from_json(const nlohmann::json& j, int dim) {
  if (!j.is_array()) throw Error("parse-error", "polynomial must be an array of terms");
  Polynomial p(dim);
  for (const auto& t : j) {
    const auto& expo = field(t, "alpha");
    if (!expo.is_array() || static_cast<int>(expo.size()) != dim) {
      throw Error("parse-error", "term exponent " + expo.dump() + " does not have " +
                                     std::to_string(dim) + " components");
    }
    std::vector<int> e(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) e[static_cast<std::size_t>(i)] = expo[static_cast<std::size_t>(i)].get<int>();
    double re = field(t, "re").get<double>();
    double im = field(t, "im").get<double>();
    p.add_term(MultiIndex(std::move(e)), Complex(re, im));
  }
  return p;
}

nlohmann::json polynomial_file_to_json(const Polynomial& p) {
  nlohmann::json out;
  out["s"] = p.dimension();
  out["terms"] = polynomial_to_json(p);
  return out;
}

Polynomial polynomial_file_from_json(const nlohmann::json& j) {
  int dim = field(j, "s").get<int>();
  if (dim < 1) throw Error("parse-error", "polynomial dimension must be positive");
  return polynomial_from_json(field(j, "terms"), dim);
}

nlohmann::json model_to_json(const ExponentialSumModel& m) {
  nlohmann::json out;
  out["s"] = m.dimension();
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : m.terms()) {
    nlohmann::json term;
    nlohmann::json omega = nlohmann::json::array();
    for (const auto& w : t.omega) omega.push_back(complex_to_json(w));
    term["omega"] = std::move(omega);
    term["coeff"] = polynomial_to_json(t.coeff);
    terms.push_back(std::move(term));
  }
  out["terms"] = std::move(terms);
  return out;
}

ExponentialSumModel model_from_json(const nlohmann::json& j) {
  int dim = field(j, "s").get<int>();
  if (dim < 1) throw Error("parse-error", "model dimension must be positive");
  const auto& jterms = field(j, "terms");
  if (!jterms.is_array()) throw Error("parse-error", "\"terms\" must be an array");
  std::vector<ModelTerm> terms;
  terms.reserve(jterms.size());
  for (const auto& t : jterms) {
    const auto& jomega = field(t, "omega");
    if (!jomega.is_array() || static_cast<int>(jomega.size()) != dim) {
      throw Error("parse-error", "frequency " + jomega.dump() + " does not have " +
                                     std::to_string(dim) + " components");
    }
    ModelTerm term;
    term.omega.reserve(jomega.size());
    for (const auto& w : jomega) term.omega.push_back(complex_from_json(w));
    term.coeff = polynomial_from_json(field(t, "coeff"), dim);
    terms.push_back(std::move(term));
  }
  return ExponentialSumModel::make(dim, std::move(terms));
}

void write_signal_csv(std::ostream& out, const LatticeSignal& f) {
  int s = f.dimension();
  for (int i = 0; i < s; ++i) out << 'a' << (i + 1) << ',';
  out << "re,im\n";
  out << std::setprecision(17);
  for (const auto& a : f.window()) {
    for (int i = 0; i < s; ++i) out << a[i] << ',';
    Complex v = f.at(a);
    out << v.real() << ',' << v.imag() << '\n';
  }
}

LatticeSignal read_signal_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error("parse-error", "empty signal file");
  std::vector<std::string> header = split(trimmed(line), ',');
  if (header.size() < 3 || trimmed(header[header.size() - 2]) != "re" ||
      trimmed(header[header.size() - 1]) != "im") {
    throw Error("parse-error", "signal header must be a1,...,as,re,im");
  }
  int dim = static_cast<int>(header.size()) - 2;
  std::vector<MultiIndex> points;
  std::vector<Complex> values;
  std::unordered_set<MultiIndex, MultiIndexHash> seen;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trimmed(line);
    if (body.empty()) continue;
    std::vector<std::string> cells = split(body, ',');
    if (static_cast<int>(cells.size()) != dim + 2) {
      throw Error("parse-error", "line " + std::to_string(line_no) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(dim + 2));
    }
    std::vector<int> a(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) a[static_cast<std::size_t>(i)] = parse_int(trimmed(cells[static_cast<std::size_t>(i)]), line_no);
    double re = parse_double(trimmed(cells[static_cast<std::size_t>(dim)]), line_no);
    double im = parse_double(trimmed(cells[static_cast<std::size_t>(dim) + 1]), line_no);
    MultiIndex alpha(std::move(a));
    if (!seen.insert(alpha).second) {
      throw Error("parse-error", "line " + std::to_string(line_no) + " repeats lattice point " +
                                     alpha.to_string());
    }
    points.push_back(std::move(alpha));
    values.emplace_back(re, im);
  }
  return LatticeSignal(IndexSet::insertion(dim, std::move(points)), std::move(values));
}

nlohmann::json matrix_to_json(const StructuredMatrix& m) {
  nlohmann::json out;
  out["kind"] = kind_name(m.kind);
  if (!m.row_labels.empty()) {
    out["row_labels"] = m.row_labels;
  } else {
    out["rows"] = index_set_to_json(m.rows);
  }
  out["cols"] = index_set_to_json(m.cols);
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.data.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.data.cols(); ++j) row.push_back(complex_to_json(m.data(i, j)));
    data.push_back(std::move(row));
  }
  out["data"] = std::move(data);
  return out;
}

nlohmann::json variety_point_to_json(const VarietyPoint& p) {
  nlohmann::json out;
  nlohmann::json theta = nlohmann::json::array();
  for (const auto& t : p.theta) theta.push_back(complex_to_json(t));
  out["theta"] = std::move(theta);
  out["weight"] = p.weight;
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& q : p.mult_basis) basis.push_back(polynomial_to_json(q));
  out["mult_basis"] = std::move(basis);
  out["mult_basis_exact"] = p.mult_basis_exact;
  return out;
}

nlohmann::json rank_scan_to_json(const RankScan& r) {
  nlohmann::json out;
  nlohmann::json ranks = nlohmann::json::array();
  for (const auto& [k, rank] : r.ranks) ranks.push_back(nlohmann::json::array({k, rank}));
  out["ranks"] = std::move(ranks);
  if (r.k_star) {
    out["k_star"] = *r.k_star;
  } else {
    out["k_star"] = nullptr;
  }
  return out;
}

nlohmann::json report_to_json(const ReconstructionReport& r) {
  nlohmann::json out;
  out["rank"] = r.rank;
  out["k_star"] = r.k_star;
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : r.points) points.push_back(variety_point_to_json(p));
  out["points"] = std::move(points);
  out["model"] = model_to_json(r.model);
  out["residual"] = r.residual;
  out["commutation_residual"] = r.commutation_residual;
  out["seed"] = r.seed;
  return out;
}

nlohmann::json factorization_to_json(const FactorizationResult& r) {
  nlohmann::json out;
  out["V_A"] = matrix_to_json(r.V_A);
  out["V_B"] = matrix_to_json(r.V_B);
  out["F"] = matrix_to_json(r.F);
  out["block_sizes"] = r.block_sizes;
  out["residual"] = r.residual;
  out["off_block_max"] = r.off_block_max;
  return out;
}

}  // namespace prony
