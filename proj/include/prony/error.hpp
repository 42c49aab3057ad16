#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "prony/multi_index.hpp"

namespace prony {

/// Library error with a stable machine-readable code. Codes in use:
///   dimension-mismatch, bad-argument, insufficient-window, window-too-small,
///   rank-not-stabilized, numerical-degeneracy, missing-border,
///   non-commuting, defective-clustering, zero-component,
///   rank-deficient-vandermonde, not-shift-invariant, non-block-diagonal,
///   invalid-model, missing-sample, io-error, parse-error
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  Error(std::string code, const std::string& message, std::vector<MultiIndex> missing)
      : std::runtime_error(message), code_(std::move(code)), missing_(std::move(missing)) {}

  const std::string& code() const { return code_; }

  /// Lattice points the failing precondition named (e.g. samples absent
  /// from a window). Empty when not applicable.
  const std::vector<MultiIndex>& missing_points() const { return missing_; }

private:
  std::string code_;
  std::vector<MultiIndex> missing_;
};

}  // namespace prony
