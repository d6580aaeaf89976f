#pragma once

#include <cstddef>

#include "apnim/game.hpp"
#include "apnim/numeration.hpp"
#include "apnim/repword.hpp"
#include "apnim/word.hpp"

namespace apnim {

/// F(n) with F(1) = F(2) = 1. OverflowError above F(93).
Term fib(std::size_t n);
/// F(2i + 1): 1, 2, 5, 13, ...
Term fib_repseq(std::size_t i);

/// w_1 = 01, w_i = w_{i-1}^2 (w_{i-2} ... w_1) 2. Returns w_depth.
Word build_word_prefix(std::size_t depth, const Limits& limits = {});

/// φ(0) = 001, φ(1) = 01.
const Morphism& phi_morphism();
/// ψ(0) = 01, ψ(1) = 2.
const Morphism& psi_morphism();
/// ψ(φ^m(0)).
Word morphic_word_prefix(std::size_t m, const Limits& limits = {});

/// Digits (least significant first) end in 2 1^m 0 for some m >= 0.
bool ends_in_two_block(const DigitString& d);
/// n = 1, or the odd-Fibonacci representation of n ends in a two-block.
bool in_I(Term n);
/// Every 2 is followed, toward the low places, by a run of 1s and then a 0.
/// Digits above 2 are invalid.
bool valid_ternary_rep(const DigitString& d);

/// Converts an odd-Fibonacci representation ending in 0 but not in a
/// two-block into the Zeckendorf representation of the same number: spread
/// the digits onto odd places, clear 2s with 2F(n) = F(n+1) + F(n-2) from the
/// top down, then clear adjacent 1s until none remain.
DigitString odd_fib_to_zeck(const DigitString& d);

/// Over [0, horizon]: w[n] = 0, n ∈ W_U, n a non-volatile zend and odd
/// Zeckendorf trailing zeros all agree; a zend is volatile exactly when it
/// ends in a two-block; and (W_U + I) ∩ W_U = ∅.
VerificationReport verify_wythoff_zeros(Position horizon);

/// The ternary aperiodic construction bundled together.
class TernaryConstruction {
 public:
  TernaryConstruction();

  const RepresentingSequence& sequence() const { return seq_; }
  const RepWord& word() const { return word_; }
  const DerivedSets& sets() const { return sets_; }
  /// {1} ∪ {n : representation ends in a two-block}.
  const SubtractionSet& I() const { return i_; }
  /// {F(2i+1) - 1 : i >= 1}.
  const SubtractionSet& T() const { return t_; }

 private:
  RepresentingSequence seq_;
  RepWord word_;
  DerivedSets sets_;
  SubtractionSet i_;
  SubtractionSet t_;
};

/// The j-promotion of `base`.
RepresentingSequence promote(const RepresentingSequence& base, std::size_t j = 1);

/// A base sequence, its j-promotion, and the j-promotion function f with
/// f(term(i)) = promoted term(i).
class PromotionMap {
 public:
  PromotionMap(RepresentingSequence base, std::size_t j = 1);

  const RepresentingSequence& base() const { return base_; }
  std::size_t j() const { return j_; }
  const RepresentingSequence& promoted() const { return promoted_; }
  Term operator()(Term n) const;

 private:
  RepresentingSequence base_;
  std::size_t j_;
  RepresentingSequence promoted_;
};

/// The j-promotion function f(n). For j = 1 this is n plus the number of
/// zeros of the representation word of `base` before n.
Term promotion_value(const RepresentingSequence& base, std::size_t j, Term n);

/// 0 -> 01, i -> i + 1.
Word promote_word(std::span<const Symbol> w);

/// f(S) ∪ {1} for the 1-promotion function of `base`.
SubtractionSet promoted_subtraction_set(const SubtractionSet& s, const RepresentingSequence& base);

struct Family {
  RepresentingSequence sequence;
  RepWord word;
  SubtractionSet T;
};

/// The alphabet-k construction: the odd-Fibonacci sequence promoted k - 2 times.
Family family(Symbol k);

/// a_0 = 1, a_1 = k, a_i = 3a_{i-1} - a_{i-2}. For k >= 3 this is not the
/// promoted sequence; kept for comparison.
RepresentingSequence family_closed_form(Symbol k);

}  // namespace apnim
