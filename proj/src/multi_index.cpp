#include "prony/multi_index.hpp"

#include <sstream>

#include "prony/error.hpp"

namespace prony {

namespace {

void require_same_dim(const MultiIndex& a, const MultiIndex& b) {
  if (a.dimension() != b.dimension()) {
    throw Error("dimension-mismatch",
                "multi-index dimensions differ: " + a.to_string() + " vs " + b.to_string());
  }
}

}  // namespace

MultiIndex MultiIndex::zero(int dim) {
  return MultiIndex(std::vector<int>(static_cast<std::size_t>(dim), 0));
}

MultiIndex MultiIndex::unit(int dim, int axis) {
  std::vector<int> e(static_cast<std::size_t>(dim), 0);
  e[static_cast<std::size_t>(axis)] = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::total_degree() const {
  int d = 0;
  for (int v : entries_) d += v;
  return d;
}

bool MultiIndex::nonnegative() const {
  for (int v : entries_)
    if (v < 0) return false;
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  require_same_dim(*this, other);
  std::vector<int> e(entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.entries_[i];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  require_same_dim(*this, other);
  std::vector<int> e(entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= other.entries_[i];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator-() const {
  std::vector<int> e(entries_);
  for (int& v : e) v = -v;
  return MultiIndex(std::move(e));
}

std::string MultiIndex::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out << ',';
    out << entries_[i];
  }
  out << ')';
  return out.str();
}

Ordering compare_grlex(const MultiIndex& a, const MultiIndex& b) {
  require_same_dim(a, b);
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? Ordering::Less : Ordering::Greater;
  for (int i = 0; i < a.dimension(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? Ordering::Less : Ordering::Greater;
  }
  return Ordering::Equal;
}

bool term_order_less(const MultiIndex& a, const MultiIndex& b) {
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  // within a degree the grlex-greater exponent comes first
  return compare_grlex(a, b) == Ordering::Greater;
}

std::size_t MultiIndexHash::operator()(const MultiIndex& a) const {
  std::size_t h = 1469598103934665603ull;
  for (int v : a.entries()) {
    h ^= static_cast<std::size_t>(static_cast<unsigned int>(v));
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace prony
