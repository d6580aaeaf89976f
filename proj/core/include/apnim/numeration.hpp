#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace apnim {

using Term = std::uint64_t;
using Digit = std::uint64_t;

/// Strictly increasing positive integers starting at 1, either a finite list
/// or generated by a rule. Rule terms are materialized lazily; the cache can
/// be shared between threads.
class RepresentingSequence {
 public:
  /// Next term from all previous ones; nothing when it would overflow Term.
  using Rule = std::function<std::optional<Term>(std::span<const Term> previous)>;

  /// A finite sequence. Must start at 1 and increase strictly.
  static RepresentingSequence finite(std::vector<Term> terms);
  /// `seed` is checked like a finite list; `rule` supplies every later term.
  static RepresentingSequence from_rule(std::string name, std::vector<Term> seed, Rule rule);
  /// term(i) = f(i) for every i (f(0) must be 1).
  static RepresentingSequence from_function(std::string name,
                                            std::function<std::optional<Term>(std::size_t)> f);
  /// a_i = sum_j coefficients[j] * a_{i-1-j}, seeded by `initial`.
  static RepresentingSequence linear(std::string name, std::vector<Term> initial,
                                     std::vector<std::int64_t> coefficients);

  /// 1, 2, 5, 13, 34, ...  (every other Fibonacci number).
  static RepresentingSequence odd_fibonacci();
  /// 1, 2, 3, 5, 8, ...  (Zeckendorf numeration).
  static RepresentingSequence zeckendorf();
  /// 1, b, b^2, ...
  static RepresentingSequence powers(Term base);
  /// 1, 2, 5, 8, 11, ...: a_0 = 1, a_i = 3i - 1.
  static RepresentingSequence residue_one_mod_three();

  const std::string& name() const;
  bool is_finite() const;

  /// term(i), or nothing past the end of a finite sequence.
  /// Throws OverflowError when a rule term does not fit in Term.
  std::optional<Term> try_term(std::size_t i) const;
  /// term(i); past the end of a finite sequence is a PreconditionError.
  Term term(std::size_t i) const;
  Term operator[](std::size_t i) const { return term(i); }

  /// Terms needed to represent every n <= bound: all terms <= bound, plus the
  /// next one when it exists and fits.
  std::shared_ptr<const std::vector<Term>> terms_covering(Term bound) const;
  /// First `count` terms (fewer if the sequence is finite).
  std::vector<Term> prefix(std::size_t count) const;

 private:
  struct State;
  explicit RepresentingSequence(std::shared_ptr<State> state);

  std::shared_ptr<State> state_;
};

/// Digits of a greedy expansion, stored least significant place first.
struct DigitString {
  std::vector<Digit> digits;

  DigitString() = default;
  explicit DigitString(std::vector<Digit> lsb_first) : digits(std::move(lsb_first)) {}

  /// Parses most-significant-first text: "101001" or "12,0,3".
  static DigitString parse(std::string_view msb_first);

  /// Most-significant-first rendering; comma-separated when some digit > 9.
  std::string to_string() const;
  bool empty() const { return digits.empty(); }
  std::size_t size() const { return digits.size(); }
  Digit operator[](std::size_t place) const { return place < digits.size() ? digits[place] : 0; }
  /// Drops zero digits at the most significant end.
  DigitString& trim();
  std::size_t trailing_zeros() const;
  friend bool operator==(const DigitString&, const DigitString&) = default;
};

/// Greedy expansion of n. Zero is the empty string. On a finite sequence the
/// top place takes whatever digit is needed.
DigitString represent(const RepresentingSequence& seq, Term n);

/// Sum of digit * term over places.
Term value_of(const RepresentingSequence& seq, const DigitString& d);

/// j with term(j) <= n < term(j+1). Requires n >= 1.
std::size_t index_of(const RepresentingSequence& seq, Term n);

/// The representation of n + 1 ends in at least m zeros.
bool is_volatile(const RepresentingSequence& seq, Term n, std::size_t m = 1);

/// The representation of n ends in 0. Zero counts as a zend.
bool is_zend(const RepresentingSequence& seq, Term n);

/// Largest digit that can appear at place j: the leading digit of the
/// representation of term(j+1) - 1. Nothing for the top place of a finite
/// sequence.
std::optional<Digit> place_bound(const RepresentingSequence& seq, std::size_t j);

}  // namespace apnim
