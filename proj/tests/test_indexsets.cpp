#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "prony/error.hpp"
#include "prony/index_set.hpp"

using namespace prony;

namespace {

// brute-force enumeration over a bounding box, independent of the library's
// odometer
std::vector<MultiIndex> brute_simplex(int k, int s) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(s), 0);
  while (true) {
    int deg = 0;
    for (int v : cur) deg += v;
    if (deg <= k) out.emplace_back(cur);
    int axis = s;
    bool done = true;
    while (axis > 0) {
      --axis;
      if (cur[static_cast<std::size_t>(axis)] < k) {
        ++cur[static_cast<std::size_t>(axis)];
        for (int j = axis + 1; j < s; ++j) cur[static_cast<std::size_t>(j)] = 0;
        done = false;
        break;
      }
    }
    if (done) break;
  }
  return out;
}

std::vector<MultiIndex> brute_cross(int n, int s) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(s), 0);
  while (true) {
    long prod = 1;
    for (int v : cur) prod *= (1 + v);
    if (prod <= n) out.emplace_back(cur);
    int axis = s;
    bool done = true;
    while (axis > 0) {
      --axis;
      if (cur[static_cast<std::size_t>(axis)] < n) {
        ++cur[static_cast<std::size_t>(axis)];
        for (int j = axis + 1; j < s; ++j) cur[static_cast<std::size_t>(j)] = 0;
        done = false;
        break;
      }
    }
    if (done) break;
  }
  return out;
}

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("multi-index basics") {
  MultiIndex a{1, 2};
  CHECK(a.dimension() == 2);
  CHECK(a.total_degree() == 3);
  CHECK(a.nonnegative());
  CHECK(MultiIndex::zero(3) == MultiIndex{0, 0, 0});
  CHECK(MultiIndex::unit(3, 1) == MultiIndex{0, 1, 0});
  CHECK(a + MultiIndex{2, -1} == MultiIndex{3, 1});
  CHECK(a - MultiIndex{2, -1} == MultiIndex{-1, 3});
  CHECK(-a == MultiIndex{-1, -2});
  CHECK_FALSE(MultiIndex{0, -1}.nonnegative());
  CHECK(MultiIndex{0, -1}.total_degree() == -1);
  CHECK(a.to_string() == "(1,2)");
}

TEST_CASE("grlex comparison") {
  CHECK(compare_grlex(MultiIndex{0, 0}, MultiIndex{1, 0}) == Ordering::Less);
  CHECK(compare_grlex(MultiIndex{1, 0}, MultiIndex{0, 1}) == Ordering::Greater);
  CHECK(compare_grlex(MultiIndex{2, 0}, MultiIndex{0, 3}) == Ordering::Less);
  CHECK(compare_grlex(MultiIndex{1, 1}, MultiIndex{1, 1}) == Ordering::Equal);
  CHECK_THROWS_AS(compare_grlex(MultiIndex{1}, MultiIndex{1, 0}), Error);
  try {
    compare_grlex(MultiIndex{1}, MultiIndex{1, 0});
  } catch (const Error& e) {
    CHECK(e.code() == "dimension-mismatch");
  }
}

TEST_CASE("grlex total order on simplex(3,3)") {
  IndexSet g = IndexSet::simplex(3, 3);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      Ordering ij = compare_grlex(g[i], g[j]);
      Ordering ji = compare_grlex(g[j], g[i]);
      if (i == j) {
        CHECK(ij == Ordering::Equal);
      } else {
        CHECK(ij != Ordering::Equal);
        CHECK((ij == Ordering::Less) == (ji == Ordering::Greater));
      }
    }
  }
  // transitivity of the canonical listing order
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    CHECK(term_order_less(g[i], g[i + 1]));
  }
}

TEST_CASE("canonical listing order") {
  IndexSet g = IndexSet::simplex(2, 2);
  std::vector<MultiIndex> expected = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  REQUIRE(g.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(g[i] == expected[i]);
}

TEST_CASE("simplex examples") {
  IndexSet g12 = IndexSet::simplex(1, 2);
  REQUIRE(g12.size() == 3);
  CHECK(g12[0] == MultiIndex{0, 0});
  CHECK(g12[1] == MultiIndex{1, 0});
  CHECK(g12[2] == MultiIndex{0, 1});

  IndexSet g03 = IndexSet::simplex(0, 3);
  REQUIRE(g03.size() == 1);
  CHECK(g03[0] == MultiIndex{0, 0, 0});

  CHECK(IndexSet::simplex(2, 2).size() == 6);
}

TEST_CASE("simplex cardinality vs brute force") {
  for (int s = 1; s <= 4; ++s) {
    for (int k = 0; k <= 6; ++k) {
      IndexSet g = IndexSet::simplex(k, s);
      CHECK(static_cast<long>(g.size()) == binomial(k + s, s));
      auto brute = brute_simplex(k, s);
      REQUIRE(g.size() == brute.size());
      for (const auto& a : brute) CHECK(g.contains(a));
    }
  }
}

TEST_CASE("hyperbolic cross examples and brute force") {
  for (int s = 1; s <= 3; ++s) {
    IndexSet u = IndexSet::hyperbolic_cross(1, s);
    REQUIRE(u.size() == 1);
    CHECK(u[0] == MultiIndex::zero(s));
  }

  IndexSet u22 = IndexSet::hyperbolic_cross(2, 2);
  REQUIRE(u22.size() == 3);
  CHECK(u22[0] == MultiIndex{0, 0});
  CHECK(u22[1] == MultiIndex{1, 0});
  CHECK(u22[2] == MultiIndex{0, 1});

  IndexSet u42 = IndexSet::hyperbolic_cross(4, 2);
  CHECK(u42.contains(MultiIndex{3, 0}));
  CHECK(u42.contains(MultiIndex{1, 1}));
  CHECK_FALSE(u42.contains(MultiIndex{2, 1}));

  for (int s = 1; s <= 3; ++s) {
    for (int n = 1; n <= 8; ++n) {
      IndexSet u = IndexSet::hyperbolic_cross(n, s);
      auto brute = brute_cross(n, s);
      REQUIRE(u.size() == brute.size());
      for (const auto& a : brute) CHECK(u.contains(a));
      // cross is contained in the simplex of one degree less
      CHECK(u.subset_of(IndexSet::simplex(n - 1, s)));
    }
  }
}

TEST_CASE("set sum examples") {
  IndexSet a = testutil::box1d(0, 1);
  IndexSet plus = set_sum(a, a, +1);
  REQUIRE(plus.size() == 3);
  CHECK(plus.contains(MultiIndex{0}));
  CHECK(plus.contains(MultiIndex{1}));
  CHECK(plus.contains(MultiIndex{2}));

  IndexSet minus = set_sum(a, a, -1);
  REQUIRE(minus.size() == 3);
  CHECK(minus.contains(MultiIndex{-1}));
  CHECK(minus.contains(MultiIndex{0}));
  CHECK(minus.contains(MultiIndex{1}));

  IndexSet g1 = IndexSet::simplex(1, 2);
  IndexSet doubled = set_sum(g1, g1, +1);
  IndexSet g2 = IndexSet::simplex(2, 2);
  REQUIRE(doubled.size() == g2.size());
  CHECK(doubled.subset_of(g2));
  CHECK(g2.subset_of(doubled));
}

TEST_CASE("set sum / reflect identity") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    int s = 1 + static_cast<int>(rng() % 3);
    auto random_set = [&](std::size_t count) {
      std::vector<MultiIndex> pts;
      for (std::size_t i = 0; i < count; ++i) {
        std::vector<int> e(static_cast<std::size_t>(s));
        for (int j = 0; j < s; ++j) e[static_cast<std::size_t>(j)] = static_cast<int>(rng() % 7) - 3;
        pts.emplace_back(std::move(e));
      }
      return IndexSet::insertion(s, std::move(pts));
    };
    IndexSet a = random_set(4 + rng() % 4);
    IndexSet b = random_set(4 + rng() % 4);
    IndexSet lhs = set_sum(a, b, -1);
    IndexSet rhs = set_sum(a, reflect(b), +1);
    REQUIRE(lhs.size() == rhs.size());
    CHECK(lhs.subset_of(rhs));
  }
}

TEST_CASE("reflect preserves order") {
  IndexSet a = IndexSet::insertion(1, {MultiIndex{2}, MultiIndex{0}, MultiIndex{1}});
  IndexSet r = reflect(a);
  REQUIRE(r.size() == 3);
  CHECK(r[0] == MultiIndex{-2});
  CHECK(r[1] == MultiIndex{0});
  CHECK(r[2] == MultiIndex{-1});
}

TEST_CASE("index set bookkeeping") {
  IndexSet g = IndexSet::grlex(2, {MultiIndex{1, 1}, MultiIndex{0, 0}, MultiIndex{1, 1}, MultiIndex{1, 0}});
  REQUIRE(g.size() == 3);  // duplicate removed
  CHECK(g[0] == MultiIndex{0, 0});
  CHECK(g[1] == MultiIndex{1, 0});
  CHECK(g[2] == MultiIndex{1, 1});
  CHECK(g.position(MultiIndex{1, 0}).value() == 1);
  CHECK_FALSE(g.position(MultiIndex{0, 1}).has_value());

  IndexSet ins = IndexSet::insertion(2, {MultiIndex{1, 1}, MultiIndex{0, 0}, MultiIndex{1, 1}});
  REQUIRE(ins.size() == 2);
  CHECK(ins[0] == MultiIndex{1, 1});
  CHECK(ins[1] == MultiIndex{0, 0});

  IndexSet small = IndexSet::simplex(1, 2);
  IndexSet big = IndexSet::simplex(2, 2);
  CHECK(small.subset_of(big));
  CHECK_FALSE(big.subset_of(small));
  auto missing = big.missing_from(small);
  REQUIRE(missing.size() == 3);
  CHECK(missing[0] == MultiIndex{2, 0});
}
