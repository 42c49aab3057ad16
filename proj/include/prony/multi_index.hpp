#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace prony {

enum class Ordering { Less, Equal, Greater };

/// Lattice exponent in Z^s. Entries may be negative (Toeplitz footprints);
/// most algebraic uses require nonnegative entries.
class MultiIndex {
public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {}
  MultiIndex(std::initializer_list<int> entries) : entries_(entries) {}

  static MultiIndex zero(int dim);
  static MultiIndex unit(int dim, int axis);

  int dimension() const { return static_cast<int>(entries_.size()); }
  int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& entries() const { return entries_; }

  /// Sum of entries (may be negative for general lattice points).
  int total_degree() const;
  bool nonnegative() const;

  MultiIndex operator+(const MultiIndex& other) const;
  MultiIndex operator-(const MultiIndex& other) const;
  MultiIndex operator-() const;
  bool operator==(const MultiIndex& other) const = default;

  std::string to_string() const;  // "(1,0)"

private:
  std::vector<int> entries_;
};

/// Graded lexicographic comparison: total degree first, ties broken
/// lexicographically on the entries read left to right (first coordinate
/// most significant), so (1,0) > (0,1).
Ordering compare_grlex(const MultiIndex& a, const MultiIndex& b);

/// Canonical term-listing order used everywhere a set of exponents is
/// enumerated: total degree ascending, and within a degree the
/// compare_grlex-greater element first. This is the usual monomial listing
/// 1, x, y, x^2, xy, y^2, ... and it defines the row/column order of every
/// structured matrix as well as the kernel-vector <-> polynomial map.
bool term_order_less(const MultiIndex& a, const MultiIndex& b);

struct TermOrderLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return term_order_less(a, b);
  }
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& a) const;
};

}  // namespace prony
