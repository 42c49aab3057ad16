// prony-nd: generate, sample, scan, reconstruct, verify, factorize.
// Reports are JSON on stdout (or --out); human summaries go to stderr.
// Exit codes: 0 success, 1 runtime failure (structured error report on
// stdout), 2 usage error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "prony/error.hpp"
#include "prony/serialization.hpp"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int parse_spec_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad " + what + " \"" + text + "\" in window spec");
  }
}

prony::IndexSet parse_window(const std::string& spec, int s) {
  auto colon = spec.find(':');
  if (colon == std::string::npos || colon + 1 >= spec.size()) {
    throw UsageError("window spec must be simplex:k, cross:n or box:lo..hi[,lo..hi,...]");
  }
  std::string kind = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  if (kind == "simplex") {
    int k = parse_spec_int(rest, "degree");
    if (k < 0) throw UsageError("simplex degree must be >= 0");
    return prony::IndexSet::simplex(k, s);
  }
  if (kind == "cross") {
    int n = parse_spec_int(rest, "weight");
    if (n < 1) throw UsageError("cross weight must be >= 1");
    return prony::IndexSet::hyperbolic_cross(n, s);
  }
  if (kind == "box") {
    std::vector<std::pair<int, int>> ranges;
    std::stringstream ss(rest);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      auto dots = piece.find("..");
      if (dots == std::string::npos) throw UsageError("box range must be lo..hi, got \"" + piece + "\"");
      int lo = parse_spec_int(piece.substr(0, dots), "bound");
      int hi = parse_spec_int(piece.substr(dots + 2), "bound");
      if (lo > hi) throw UsageError("box range has lo > hi: \"" + piece + "\"");
      ranges.emplace_back(lo, hi);
    }
    if (static_cast<int>(ranges.size()) != s) {
      throw UsageError("box spec has " + std::to_string(ranges.size()) + " ranges but dimension is " +
                       std::to_string(s));
    }
    std::vector<prony::MultiIndex> points;
    std::vector<int> cur(ranges.size());
    for (std::size_t i = 0; i < ranges.size(); ++i) cur[i] = ranges[i].first;
    while (true) {
      points.emplace_back(cur);
      std::size_t axis = ranges.size();
      while (axis > 0) {
        --axis;
        if (cur[axis] < ranges[axis].second) {
          ++cur[axis];
          for (std::size_t j = axis + 1; j < ranges.size(); ++j) cur[j] = ranges[j].first;
          break;
        }
        if (axis == 0) return prony::IndexSet::insertion(s, std::move(points));
      }
    }
  }
  throw UsageError("unknown window family \"" + kind + "\"");
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw prony::Error("io-error", "cannot open " + path);
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw prony::Error("parse-error", path + ": " + e.what());
  }
}

prony::LatticeSignal load_signal(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw prony::Error("io-error", "cannot open " + path);
  return prony::read_signal_csv(in);
}

void emit_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw prony::Error("io-error", "cannot write " + out_path);
  out << text;
}

void emit_json(const std::string& out_path, const nlohmann::json& j) {
  emit_text(out_path, j.dump(2) + "\n");
}

nlohmann::json error_report(const prony::Error& e) {
  nlohmann::json err;
  err["code"] = e.code();
  err["message"] = e.what();
  if (!e.missing_points().empty()) {
    nlohmann::json missing = nlohmann::json::array();
    for (const auto& a : e.missing_points()) {
      nlohmann::json row = nlohmann::json::array();
      for (int i = 0; i < a.dimension(); ++i) row.push_back(a[i]);
      missing.push_back(std::move(row));
    }
    err["missing"] = std::move(missing);
  }
  return nlohmann::json{{"error", std::move(err)}};
}

struct Options {
  int s = 1;
  int terms = 1;
  int degree = 0;
  std::uint64_t seed = prony::kDefaultSeed;
  int kmax = 0;
  std::string family = "simplex";
  std::string window;
  std::string in_path;
  std::string model_path;
  std::string poly_path;
  std::string out_path;
  double tol_rank = prony::Tolerances{}.rank_rtol;
  double tol_cluster = prony::Tolerances{}.cluster_rtol;

  prony::Tolerances tolerances() const {
    prony::Tolerances t;
    t.rank_rtol = tol_rank;
    t.cluster_rtol = tol_cluster;
    return t;
  }
};

void run_gen(const Options& o) {
  auto model = prony::random_model(o.s, o.terms, o.degree, o.seed);
  emit_json(o.out_path, prony::model_to_json(model));
  std::cerr << "generated model: s=" << o.s << " terms=" << o.terms << " degree<=" << o.degree
            << " seed=" << o.seed << "\n";
}

void run_sample(const Options& o) {
  auto model = prony::model_from_json(load_json(o.model_path));
  prony::IndexSet window = parse_window(o.window, model.dimension());
  prony::LatticeSignal sig = prony::sample(model, window);
  std::ostringstream csv;
  prony::write_signal_csv(csv, sig);
  emit_text(o.out_path, csv.str());
  std::cerr << "sampled " << window.size() << " lattice points\n";
}

void run_rankscan(const Options& o) {
  if (o.in_path.empty() == o.model_path.empty()) {
    throw UsageError("rankscan needs exactly one of --in or --model");
  }
  prony::IndexFamily family =
      o.family == "cross" ? prony::IndexFamily::HyperbolicCross : prony::IndexFamily::Simplex;
  prony::RankScan scan;
  if (!o.in_path.empty()) {
    scan = prony::rank_scan(load_signal(o.in_path), o.kmax, family, o.tolerances());
  } else {
    scan = prony::rank_scan(prony::model_from_json(load_json(o.model_path)), o.kmax, family,
                            o.tolerances());
  }
  emit_json(o.out_path, prony::rank_scan_to_json(scan));
  if (scan.k_star) {
    std::cerr << "rank stabilizes at k=" << *scan.k_star << "\n";
  } else {
    std::cerr << "rank did not stabilize up to k=" << o.kmax << "\n";
  }
}

void run_reconstruct(const Options& o) {
  prony::LatticeSignal sig = load_signal(o.in_path);
  prony::ReconstructionReport rep = prony::reconstruct(sig, o.tolerances(), o.seed);
  emit_json(o.out_path, prony::report_to_json(rep));
  std::cerr << "rank " << rep.rank << ", k*=" << rep.k_star << ", residual " << rep.residual
            << "\n";
}

void run_verify(const Options& o) {
  prony::LatticeSignal sig = load_signal(o.in_path);
  prony::Polynomial q = prony::polynomial_file_from_json(load_json(o.poly_path));
  if (q.dimension() != sig.dimension()) {
    throw prony::Error("dimension-mismatch", "polynomial dimension " + std::to_string(q.dimension()) +
                                                 " vs signal dimension " +
                                                 std::to_string(sig.dimension()));
  }
  prony::IndexSet window =
      o.window.empty() ? prony::admissible_window(sig, q) : parse_window(o.window, sig.dimension());
  double residual = prony::annihilator_check(sig, q, window);
  nlohmann::json out;
  out["residual"] = residual;
  out["window"] = prony::index_set_to_json(window);
  emit_json(o.out_path, out);
  std::cerr << "max |f * q| = " << residual << " over " << window.size() << " points\n";
}

void run_factorize(const Options& o) {
  auto model = prony::model_from_json(load_json(o.model_path));
  int rank = prony::sis_dimension(model);
  prony::IndexSet window = o.window.empty()
                               ? prony::IndexSet::simplex(rank, model.dimension())
                               : parse_window(o.window, model.dimension());
  prony::FactorizationResult result = prony::factorize(model, window, window, o.tolerances());
  emit_json(o.out_path, prony::factorization_to_json(result));
  std::cerr << "factorized: blocks";
  for (int b : result.block_sizes) std::cerr << ' ' << b;
  std::cerr << ", residual " << result.residual << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multivariate Prony toolbox for exponential sums on lattice windows"};
  app.require_subcommand(1);
  Options o;

  CLI::App* gen = app.add_subcommand("gen", "generate a random model");
  gen->add_option("--s", o.s, "dimension")->check(CLI::Range(1, 16));
  gen->add_option("--terms", o.terms, "number of terms")->required()->check(CLI::Range(1, 1000));
  gen->add_option("--degree", o.degree, "coefficient degree bound")->check(CLI::Range(0, 32));
  gen->add_option("--seed", o.seed, "random seed");
  gen->add_option("--out", o.out_path, "output path (default stdout)");

  CLI::App* samp = app.add_subcommand("sample", "sample a model on a lattice window");
  samp->add_option("--model", o.model_path, "model JSON path")->required();
  samp->add_option("--window", o.window, "simplex:k | cross:n | box:lo..hi[,...]")->required();
  samp->add_option("--out", o.out_path, "output path (default stdout)");

  CLI::App* scan = app.add_subcommand("rankscan", "scan Hankel ranks over a nested family");
  scan->add_option("--in", o.in_path, "signal CSV path");
  scan->add_option("--model", o.model_path, "model JSON path (sampled on demand)");
  scan->add_option("--kmax", o.kmax, "largest degree to scan")->required()->check(CLI::Range(0, 64));
  scan->add_option("--family", o.family, "index family")
      ->check(CLI::IsMember({"simplex", "cross"}));
  scan->add_option("--tol-rank", o.tol_rank, "rank cutoff (relative)");
  scan->add_option("--out", o.out_path, "output path (default stdout)");

  CLI::App* rec = app.add_subcommand("reconstruct", "reconstruct a model from samples");
  rec->add_option("--in", o.in_path, "signal CSV path")->required();
  rec->add_option("--seed", o.seed, "random seed for the eigenvalue combination");
  rec->add_option("--tol-rank", o.tol_rank, "rank cutoff (relative)");
  rec->add_option("--tol-cluster", o.tol_cluster, "eigenvalue clustering radius (relative)");
  rec->add_option("--out", o.out_path, "output path (default stdout)");

  CLI::App* ver = app.add_subcommand("verify", "check how well a polynomial annihilates a signal");
  ver->add_option("--in", o.in_path, "signal CSV path")->required();
  ver->add_option("--poly", o.poly_path, "polynomial JSON path")->required();
  ver->add_option("--window", o.window, "evaluation window (default: largest admissible)");
  ver->add_option("--out", o.out_path, "output path (default stdout)");

  CLI::App* fac = app.add_subcommand("factorize", "Vandermonde factorization of a model's Hankel matrix");
  fac->add_option("--model", o.model_path, "model JSON path")->required();
  fac->add_option("--window", o.window, "row/column window (default simplex:rank)");
  fac->add_option("--tol-rank", o.tol_rank, "rank cutoff (relative)");
  fac->add_option("--out", o.out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(gen)) run_gen(o);
    else if (app.got_subcommand(samp)) run_sample(o);
    else if (app.got_subcommand(scan)) run_rankscan(o);
    else if (app.got_subcommand(rec)) run_reconstruct(o);
    else if (app.got_subcommand(ver)) run_verify(o);
    else if (app.got_subcommand(fac)) run_factorize(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const prony::Error& e) {
    std::cout << error_report(e).dump(2) << "\n";
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
