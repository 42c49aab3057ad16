#include "prony/index_set.hpp"

#include <algorithm>

#include "prony/error.hpp"

namespace prony {

void IndexSet::rebuild_positions() {
  positions_.clear();
  positions_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) positions_.emplace(elements_[i], i);
}

static void check_dims(int dim, const std::vector<MultiIndex>& elements) {
  for (const auto& e : elements) {
    if (e.dimension() != dim) {
      throw Error("dimension-mismatch",
                  "index set element " + e.to_string() + " does not have dimension " +
                      std::to_string(dim));
    }
  }
}

IndexSet IndexSet::grlex(int dim, std::vector<MultiIndex> elements) {
  check_dims(dim, elements);
  std::sort(elements.begin(), elements.end(), TermOrderLess{});
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  IndexSet s;
  s.dim_ = dim;
  s.order_ = Order::Grlex;
  s.elements_ = std::move(elements);
  s.rebuild_positions();
  return s;
}

IndexSet IndexSet::insertion(int dim, std::vector<MultiIndex> elements) {
  check_dims(dim, elements);
  IndexSet s;
  s.dim_ = dim;
  s.order_ = Order::Insertion;
  s.elements_.reserve(elements.size());
  for (auto& e : elements) {
    if (s.positions_.find(e) == s.positions_.end()) {
      s.positions_.emplace(e, s.elements_.size());
      s.elements_.push_back(std::move(e));
    }
  }
  s.dim_ = dim;
  return s;
}

IndexSet IndexSet::simplex(int degree, int dim) {
  if (degree < 0 || dim < 1) {
    throw Error("bad-argument", "simplex requires degree >= 0 and dim >= 1 (got degree=" +
                                    std::to_string(degree) + ", dim=" + std::to_string(dim) + ")");
  }
  std::vector<MultiIndex> elems;
  std::vector<int> current(static_cast<std::size_t>(dim), 0);
  // odometer over the box [0, degree]^dim, filtered to |alpha| <= degree
  while (true) {
    int total = 0;
    for (int v : current) total += v;
    if (total <= degree) elems.emplace_back(current);
    int axis = dim - 1;
    while (axis >= 0) {
      if (++current[static_cast<std::size_t>(axis)] <= degree) break;
      current[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return grlex(dim, std::move(elems));
}

IndexSet IndexSet::hyperbolic_cross(int bound, int dim) {
  if (bound < 1 || dim < 1) {
    throw Error("bad-argument", "hyperbolic cross requires bound >= 1 and dim >= 1 (got bound=" +
                                    std::to_string(bound) + ", dim=" + std::to_string(dim) + ")");
  }
  std::vector<MultiIndex> elems;
  std::vector<int> current(static_cast<std::size_t>(dim), 0);
  while (true) {
    long long prod = 1;
    for (int v : current) prod *= (1 + v);
    if (prod <= bound) elems.emplace_back(current);
    int axis = dim - 1;
    while (axis >= 0) {
      if (++current[static_cast<std::size_t>(axis)] <= bound - 1) break;
      current[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return grlex(dim, std::move(elems));
}

std::optional<std::size_t> IndexSet::position(const MultiIndex& a) const {
  auto it = positions_.find(a);
  if (it == positions_.end()) return std::nullopt;
  return it->second;
}

bool IndexSet::subset_of(const IndexSet& other) const {
  for (const auto& e : elements_)
    if (!other.contains(e)) return false;
  return true;
}

std::vector<MultiIndex> IndexSet::missing_from(const IndexSet& window) const {
  std::vector<MultiIndex> missing;
  for (const auto& e : elements_)
    if (!window.contains(e)) missing.push_back(e);
  return missing;
}

IndexSet set_sum(const IndexSet& a, const IndexSet& b, int sign) {
  if (a.dimension() != b.dimension()) {
    throw Error("dimension-mismatch", "set_sum operands have different dimensions");
  }
  std::vector<MultiIndex> elems;
  elems.reserve(a.size() * b.size());
  for (const auto& alpha : a) {
    for (const auto& beta : b) {
      elems.push_back(sign >= 0 ? alpha + beta : alpha - beta);
    }
  }
  return IndexSet::grlex(a.dimension(), std::move(elems));
}

IndexSet reflect(const IndexSet& a) {
  std::vector<MultiIndex> elems;
  elems.reserve(a.size());
  for (const auto& alpha : a) elems.push_back(-alpha);
  // keep the source order so reflected column sets stay aligned
  return IndexSet::insertion(a.dimension(), std::move(elems));
}

}  // namespace prony
