#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "prony/serialization.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("prony_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const TempDir& dir, const std::string& args) {
  std::string out_file = dir.file("stdout.txt");
  std::string err_file = dir.file("stderr.txt");
  std::string cmd = std::string(PRONY_CLI_PATH) + " " + args + " >" + out_file + " 2>" + err_file;
  int status = std::system(cmd.c_str());
  RunResult r;
  if (status == -1) return r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string write_e1_model(const TempDir& dir) {
  std::string path = dir.file("e1.json");
  write_file(path, prony::model_to_json(testutil::e1_model()).dump(2));
  return path;
}

std::string write_e1_signal(const TempDir& dir) {
  std::string path = dir.file("e1.csv");
  std::ostringstream csv;
  prony::write_signal_csv(csv, testutil::e1_signal());
  write_file(path, csv.str());
  return path;
}

}  // namespace

TEST_CASE("gen produces a valid deterministic model") {
  TempDir dir;
  std::string out1 = dir.file("m1.json");
  RunResult r1 = run_cli(dir, "gen --s 1 --terms 2 --seed 7 --out " + out1);
  REQUIRE(r1.exit_code == 0);
  auto model = prony::model_from_json(json::parse(slurp(out1)));
  REQUIRE(model.terms().size() == 2);
  CHECK(std::abs(model.terms()[0].omega[0] - model.terms()[1].omega[0]) > 1e-6);

  std::string out2 = dir.file("m2.json");
  RunResult r2 = run_cli(dir, "gen --s 1 --terms 2 --seed 7 --out " + out2);
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(out1) == slurp(out2));

  RunResult r3 = run_cli(dir, "gen --s 1 --terms 2 --seed 8 --out " + dir.file("m3.json"));
  REQUIRE(r3.exit_code == 0);
  CHECK(slurp(out1) != slurp(dir.file("m3.json")));
}

TEST_CASE("gen usage errors") {
  TempDir dir;
  CHECK(run_cli(dir, "gen --s 1 --terms 0").exit_code == 2);  // out of range
  CHECK(run_cli(dir, "gen --s 1").exit_code == 2);            // --terms required
}

TEST_CASE("sample writes the expected csv") {
  TempDir dir;
  std::string model = write_e1_model(dir);
  std::string csv = dir.file("sig.csv");
  RunResult r = run_cli(dir, "sample --model " + model + " --window box:0..4 --out " + csv);
  REQUIRE(r.exit_code == 0);

  std::ifstream in(csv);
  prony::LatticeSignal sig = prony::read_signal_csv(in);
  REQUIRE(sig.size() == 5);
  double expected[] = {2, 5, 13, 35, 97};
  for (int a = 0; a <= 4; ++a) {
    CHECK(std::abs(sig.at(prony::MultiIndex{a}) - prony::Complex(expected[a], 0)) < 1e-12);
  }
}

TEST_CASE("sample window spec errors") {
  TempDir dir;
  std::string model = write_e1_model(dir);
  CHECK(run_cli(dir, "sample --model " + model + " --window \"\"").exit_code == 2);
  CHECK(run_cli(dir, "sample --model " + model + " --window box:5..1").exit_code == 2);
  CHECK(run_cli(dir, "sample --model " + model + " --window orbit:3").exit_code == 2);
  CHECK(run_cli(dir, "sample --model " + model + " --window box:0..1,0..1").exit_code == 2);
}

TEST_CASE("rankscan on a signal file") {
  TempDir dir;
  std::string csv = write_e1_signal(dir);
  RunResult r = run_cli(dir, "rankscan --in " + csv + " --kmax 2");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["ranks"] == json::array({json::array({0, 1}), json::array({1, 2}), json::array({2, 2})}));
  CHECK(j["k_star"] == 1);
}

TEST_CASE("rankscan on a model with the cross family") {
  TempDir dir;
  std::string model = dir.file("e2.json");
  write_file(model, prony::model_to_json(testutil::e2_model()).dump(2));
  RunResult r = run_cli(dir, "rankscan --model " + model + " --kmax 3 --family cross");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["ranks"] == json::array({json::array({1, 1}), json::array({2, 2}), json::array({3, 2})}));
  CHECK(j["k_star"] == 2);
}

TEST_CASE("rankscan input validation") {
  TempDir dir;
  std::string csv = write_e1_signal(dir);
  std::string model = write_e1_model(dir);
  CHECK(run_cli(dir, "rankscan --kmax 1").exit_code == 2);
  CHECK(run_cli(dir, "rankscan --in " + csv + " --model " + model + " --kmax 1").exit_code == 2);
}

TEST_CASE("rankscan reports an insufficient window") {
  TempDir dir;
  std::string csv = write_e1_signal(dir);
  RunResult r = run_cli(dir, "rankscan --in " + csv + " --kmax 3");
  REQUIRE(r.exit_code == 1);
  json j = json::parse(r.out);
  CHECK(j["error"]["code"] == "insufficient-window");
}

TEST_CASE("reconstruct recovers the model") {
  TempDir dir;
  std::string csv = write_e1_signal(dir);
  std::string out = dir.file("rep.json");
  RunResult r = run_cli(dir, "reconstruct --in " + csv + " --out " + out);
  REQUIRE(r.exit_code == 0);
  json j = json::parse(slurp(out));
  CHECK(j["rank"] == 2);
  CHECK(j["k_star"] == 1);
  CHECK(j["residual"].get<double>() < 1e-10);

  auto model = prony::model_from_json(j["model"]);
  REQUIRE(model.terms().size() == 2);
  std::vector<double> freqs = {model.terms()[0].omega[0].real(), model.terms()[1].omega[0].real()};
  std::sort(freqs.begin(), freqs.end());
  CHECK(std::abs(freqs[0] - testutil::kLn2) < 1e-8);
  CHECK(std::abs(freqs[1] - testutil::kLn3) < 1e-8);
  for (const auto& t : model.terms()) {
    CHECK(std::abs(t.coeff.coefficient(prony::MultiIndex{0}) - prony::Complex(1, 0)) < 1e-8);
    CHECK(std::abs(t.omega[0].imag()) < 1e-10);
  }

  std::string out2 = dir.file("rep2.json");
  RunResult r2 = run_cli(dir, "reconstruct --in " + csv + " --out " + out2);
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(out) == slurp(out2));  // same seed, same bytes
}

TEST_CASE("reconstruct reports window-too-small with the missing points") {
  TempDir dir;
  std::string csv = dir.file("tiny.csv");
  write_file(csv, "a1,re,im\n0,2,0\n");
  RunResult r = run_cli(dir, "reconstruct --in " + csv);
  REQUIRE(r.exit_code == 1);
  json j = json::parse(r.out);
  CHECK(j["error"]["code"] == "window-too-small");
  REQUIRE(j["error"].contains("missing"));
  CHECK(!j["error"]["missing"].empty());
}

TEST_CASE("verify annihilator residuals") {
  TempDir dir;
  std::string csv = write_e1_signal(dir);
  prony::Polynomial q(1);  // z - 2
  q.add_term(prony::MultiIndex{0}, prony::Complex(-2, 0));
  q.add_term(prony::MultiIndex{1}, prony::Complex(1, 0));
  std::string poly = dir.file("q.json");
  write_file(poly, prony::polynomial_file_to_json(q).dump(2));

  RunResult full = run_cli(dir, "verify --in " + csv + " --poly " + poly);
  REQUIRE(full.exit_code == 0);
  json jf = json::parse(full.out);
  CHECK(jf["residual"].get<double>() == doctest::Approx(27.0));
  CHECK(jf["window"].size() == 4);  // shifts 0..3 are admissible

  RunResult origin = run_cli(dir, "verify --in " + csv + " --poly " + poly + " --window box:0..0");
  REQUIRE(origin.exit_code == 0);
  CHECK(json::parse(origin.out)["residual"].get<double>() == doctest::Approx(1.0));

  prony::Polynomial ann(1);  // z^2 - 5z + 6 annihilates the signal
  ann.add_term(prony::MultiIndex{0}, prony::Complex(6, 0));
  ann.add_term(prony::MultiIndex{1}, prony::Complex(-5, 0));
  ann.add_term(prony::MultiIndex{2}, prony::Complex(1, 0));
  std::string annp = dir.file("ann.json");
  write_file(annp, prony::polynomial_file_to_json(ann).dump(2));
  RunResult rann = run_cli(dir, "verify --in " + csv + " --poly " + annp);
  REQUIRE(rann.exit_code == 0);
  CHECK(json::parse(rann.out)["residual"].get<double>() < 1e-12);
}

TEST_CASE("verify rejects mismatched dimensions") {
  TempDir dir;
  std::string csv = write_e1_signal(dir);
  std::string poly = dir.file("q2.json");
  write_file(poly, prony::polynomial_file_to_json(
                       prony::Polynomial::monomial(prony::MultiIndex{1, 1})).dump(2));
  RunResult r = run_cli(dir, "verify --in " + csv + " --poly " + poly);
  REQUIRE(r.exit_code == 1);
  CHECK(json::parse(r.out)["error"]["code"] == "dimension-mismatch");
}

TEST_CASE("factorize a model file") {
  TempDir dir;
  std::string model = write_e1_model(dir);
  RunResult r = run_cli(dir, "factorize --model " + model);
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["block_sizes"] == json::array({1, 1}));
  CHECK(j["residual"].get<double>() < 1e-10);
  CHECK(j["off_block_max"].get<double>() < 1e-10);
}

TEST_CASE("top level usage errors") {
  TempDir dir;
  CHECK(run_cli(dir, "").exit_code == 2);
  CHECK(run_cli(dir, "frobnicate").exit_code == 2);
  CHECK(run_cli(dir, "--help").exit_code == 0);
  CHECK(run_cli(dir, "reconstruct --in " + dir.file("nonexistent.csv")).exit_code == 1);
}
