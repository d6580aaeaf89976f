#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apnim/word.hpp"

namespace apnim {

/// Heap size / move size.
using Position = std::uint64_t;

/// Upper bound on DP table lengths; anything larger is a ResourceLimitError.
struct Limits {
  std::size_t max_length = 10'000'000;
};

/// A set of positive move sizes. Either an explicit finite list or a rule
/// given by a membership predicate (residue classes, sets derived from a
/// representing sequence, arbitrary predicates).
class SubtractionSet {
 public:
  enum class Kind { Finite, Residue, Derived, Predicate };

  using Membership = std::function<bool(Position)>;
  /// Optional fast enumeration; must agree with the membership predicate.
  using Enumerator = std::function<std::vector<Position>(Position bound)>;

  /// Duplicates are removed; zero is rejected.
  static SubtractionSet finite(std::vector<Position> elements);
  /// {n >= 1 : n mod modulus == residue}.
  static SubtractionSet residue(Position modulus, Position residue);
  /// All positive integers.
  static SubtractionSet all();
  static SubtractionSet rule(Kind kind, std::string description, Membership member,
                             Enumerator enumerate = {});

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  const std::string& description() const { return description_; }

  bool contains(Position n) const;
  /// Sorted elements in [1, bound].
  std::vector<Position> elements_up_to(Position bound) const;

  /// Elements of a finite set; PreconditionError for rules.
  std::span<const Position> elements() const;
  /// Largest element of a finite set.
  Position max_element() const;
  /// Smallest element not exceeding `bound`, if any.
  std::optional<Position> min_element(Position bound) const;

  /// S ∩ [1, bound] as an explicit set.
  SubtractionSet truncated(Position bound) const;
  /// g·S.
  SubtractionSet scaled(Position g) const;

 private:
  SubtractionSet() = default;

  Kind kind_ = Kind::Finite;
  std::string description_;
  std::vector<Position> elements_;
  Membership member_;
  Enumerator enumerate_;
};

/// Least nonnegative integer not in `values`.
Symbol mex(std::span<const Symbol> values);

/// First `length` Sprague-Grundy values of the subtraction game on S.
Word nim_sequence(const SubtractionSet& s, std::size_t length, const Limits& limits = {});

/// Grows its table on demand; answers value and move queries for one set.
class Solver {
 public:
  explicit Solver(SubtractionSet s, Limits limits = {});

  Symbol value(Position n);
  /// A winning move from n, or nothing when n is a P-position.
  std::optional<Position> best_move(Position n);
  const SubtractionSet& set() const { return set_; }

 private:
  void extend_to(Position n);

  SubtractionSet set_;
  Limits limits_;
  Word table_;
  std::vector<Position> moves_;
  Position moves_bound_ = 0;
};

std::optional<Position> best_move(const SubtractionSet& s, Position n, const Limits& limits = {});

/// Outcome of a structural check on a computed table.
struct CheckReport {
  bool passed = true;
  /// Position of the first violation.
  std::optional<Position> violation;
  std::string detail;
};

/// With s = min S and k the least j >= 1 with j*s outside S: values
/// below k-1 are followed s later by their successor, and positive values up
/// to k-1 are preceded s earlier by their predecessor. Checks every m with
/// m + s < min(values.size(), horizon + 1); a violation is reported at m.
CheckReport check_generalized_ferguson(std::span<const Symbol> values, const SubtractionSet& s,
                                       Position horizon);

/// SG of g·S at n equals SG of S at floor(n/g) for n <= horizon.
CheckReport check_gcd_scaling(const SubtractionSet& s, Position g, Position horizon);

/// The table up to horizon is (0^s 1^s)^ω with s = min S. Throws
/// PreconditionError if a value >= 2 occurs.
CheckReport check_binary_period(const SubtractionSet& s, Position horizon);

}  // namespace apnim
