#pragma once

#include <cstddef>

#include "apnim/game.hpp"
#include "apnim/word.hpp"

namespace apnim {

/// Nim sequence written as prefix · period^ω.
struct PeriodDecomposition {
  Word prefix;
  Word period;

  Symbol at(Position n) const;
  /// First `length` symbols of prefix · period^ω.
  Word expand(std::size_t length) const;
  friend bool operator==(const PeriodDecomposition&, const PeriodDecomposition&) = default;
};

struct PeriodOptions {
  /// Initial table length; doubled until a period is certified.
  std::size_t initial_length = 50;
  /// Largest table length tried before giving up with ResourceLimitError.
  std::size_t max_length = std::size_t{1} << 22;
};

/// Minimal prefix and period of the Nim sequence of a finite nonempty set.
/// Candidates are tested shortest first; a candidate v is certified when the
/// table ends in enough copies of v to cover twice the largest move, then v is
/// rotated to shrink the prefix.
PeriodDecomposition period_and_prefix(const SubtractionSet& s, const PeriodOptions& options = {});

/// Same search on an already computed table of the Nim sequence of `s`.
/// Returns nothing when the table is too short to certify a period.
std::optional<PeriodDecomposition> period_and_prefix_of(std::span<const Symbol> table,
                                                        const SubtractionSet& s);

/// Compares nim_sequence(s, horizon) with the expansion of `d`.
CheckReport verify_decomposition(const SubtractionSet& s, const PeriodDecomposition& d,
                                 Position horizon);

}  // namespace apnim
