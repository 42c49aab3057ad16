#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "prony/multi_index.hpp"

namespace prony {

/// Ordered set of distinct multi-indices of a common dimension with O(1)
/// position lookup. Grlex-tagged sets are stored in the canonical term order
/// (see term_order_less); insertion-tagged sets keep the caller's order
/// (sample windows, CSV files).
class IndexSet {
public:
  enum class Order { Grlex, Insertion };

  IndexSet() = default;

  static IndexSet grlex(int dim, std::vector<MultiIndex> elements);
  static IndexSet insertion(int dim, std::vector<MultiIndex> elements);

  /// Gamma_k: all alpha >= 0 with |alpha| <= degree, canonical order.
  static IndexSet simplex(int degree, int dim);

  /// Upsilon_n: all alpha >= 0 with prod_j (1 + alpha_j) <= bound, bound >= 1.
  static IndexSet hyperbolic_cross(int bound, int dim);

  int dimension() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  Order order_tag() const { return order_; }

  const MultiIndex& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<MultiIndex>& elements() const { return elements_; }

  std::optional<std::size_t> position(const MultiIndex& a) const;
  bool contains(const MultiIndex& a) const { return position(a).has_value(); }
  bool subset_of(const IndexSet& other) const;

  /// Elements of this set absent from `window`, in stored order.
  std::vector<MultiIndex> missing_from(const IndexSet& window) const;

  std::vector<MultiIndex>::const_iterator begin() const { return elements_.begin(); }
  std::vector<MultiIndex>::const_iterator end() const { return elements_.end(); }

private:
  int dim_ = 0;
  Order order_ = Order::Insertion;
  std::vector<MultiIndex> elements_;
  std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> positions_;

  void rebuild_positions();
};

/// {alpha + sign*beta : alpha in a, beta in b}, deduplicated, canonical order.
IndexSet set_sum(const IndexSet& a, const IndexSet& b, int sign = +1);

/// {-alpha : alpha in a}, order preserved.
IndexSet reflect(const IndexSet& a);

}  // namespace prony
