#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "apnim/game.hpp"
#include "apnim/numeration.hpp"
#include "apnim/word.hpp"

namespace apnim {

/// The representation word of a representing sequence: position n holds
/// term(1) when n is 2-volatile and the last digit of n otherwise.
class RepWord {
 public:
  /// Needs term(1) to exist and fit in a Symbol.
  explicit RepWord(RepresentingSequence seq);

  const RepresentingSequence& sequence() const { return seq_; }
  /// Alphabet bound, term(1).
  Symbol k() const { return k_; }

  /// Straight from the definition (two greedy expansions).
  Symbol symbol_by_definition(Term n) const;
  /// Through w[n] = w[n - term(ind n)] with the two base cases.
  Symbol symbol_by_recursion(Term n) const;
  Symbol operator[](Term n) const { return symbol_by_recursion(n); }

  /// First `length` symbols; cached and safe to call from several threads.
  Word prefix(std::size_t length) const;

 private:
  struct Cache;

  RepresentingSequence seq_;
  Symbol k_ = 0;
  std::shared_ptr<Cache> cache_;
};

/// For 0 <= i < k-1 every i is followed by i+1 and every i+1 preceded by i.
/// Positions at the window edges are not constrained. Symbols above k fail.
bool is_fergusonian(std::span<const Symbol> w, Symbol k);
/// Fergusonian and no two adjacent k's.
bool is_strongly_fergusonian(std::span<const Symbol> w, Symbol k);

struct FergusonianCriterion {
  bool fergusonian = false;
  /// Every k after position 0 follows k-1 or k.
  bool k_follows_k_or_k_minus_one = false;
  /// w[n] = k exactly on volatile zends.
  bool k_exactly_on_volatile_zends = false;
  /// The three statements agree.
  bool consistent() const {
    return fergusonian == k_follows_k_or_k_minus_one &&
           fergusonian == k_exactly_on_volatile_zends;
  }
};

/// Evaluates the three equivalent statements on positions [0, horizon].
FergusonianCriterion fergusonian_criterion(const RepWord& rw, Position horizon);

/// Exponent of w_ℓ inside w_i, for 1 <= ℓ < i.
using ExponentMatrix = std::function<std::size_t(std::size_t i, std::size_t ell)>;

struct GeneratedWord {
  Word word;
  /// 1, |w_1|, ..., |w_depth|.
  std::vector<Term> lengths;
};

/// w_1 = 01...(k-1), w_i = (prod_{j=1}^{i-1} w_{i-j}^{p(i,i-j)}) k. Throws
/// PreconditionError unless p(i,ℓ) >= p(i+1,ℓ) and p(i,1) >= 1 on the range used.
GeneratedWord generate_fergusonian(Symbol k, const ExponentMatrix& p, std::size_t depth);

/// p(i, i-1) = 2 and every other exponent 1.
ExponentMatrix doubled_last_exponents();

/// The sets read off a representing sequence with k = term(1).
class DerivedSets {
 public:
  explicit DerivedSets(RepresentingSequence seq);

  const RepresentingSequence& sequence() const { return seq_; }

  /// {term(i) - 1 : i >= 2} ∪ [k-1].
  bool in_T(Term n) const;
  /// Non-volatile zends (0 included).
  bool in_N(Term n) const;
  /// Volatile zends.
  bool in_W(Term n) const;
  /// W ∪ [k-1].
  bool in_V(Term n) const;
  /// Complement of N.
  bool in_L(Term n) const { return !in_N(n); }

  std::vector<Term> T(Term bound) const;
  std::vector<Term> N(Term bound) const;
  std::vector<Term> W(Term bound) const;
  std::vector<Term> V(Term bound) const;
  std::vector<Term> L(Term bound) const;

  SubtractionSet T_set() const;
  SubtractionSet V_set() const;

 private:
  RepresentingSequence seq_;
  Term k_ = 0;
};

/// One condition of a verification report.
struct Condition {
  std::string name;
  bool passed = true;
  std::optional<Position> counterexample;
  std::string detail;
};

struct VerificationReport {
  std::vector<Condition> conditions;
  bool passed() const;
  const Condition* find(const std::string& name) const;
};

/// Checks on [0, horizon] that the word is strongly Fergusonian, T ⊆ S ⊆ I,
/// (N+I) ∩ N = ∅, and finally that the Nim sequence of S equals the word.
VerificationReport verify_absmain(const RepWord& rw, const SubtractionSet& s,
                                  const SubtractionSet& i, Position horizon);

/// For S_i = {s ∈ S : s < term(i)}: the side condition a + term(i) - S_i ⊆ L
/// for zends a ∈ N below term(i) (through the doubling shortcut when
/// term(i+1) > 2 term(i)), then nim_sequence(S_i, horizon) against
/// (w[0..term(i)))^ω.
VerificationReport verify_truncation(const RepWord& rw, const SubtractionSet& s, std::size_t i,
                                     Position horizon);

struct ExtractedSequence {
  RepresentingSequence sequence;
  /// The window ended before a further term was forced.
  bool periodic_in_window = false;
};

/// Least representing sequence whose word agrees with `w` on the window: each
/// new term is one past the first position where w leaves the periodic
/// extension of the current prefix. ExtractionError when w does not have k at
/// such a position or the start is not 01...(k-1).
ExtractedSequence extract_representation_sequence(std::span<const Symbol> w, Symbol k,
                                                  std::size_t depth);

/// The same terms computed from a subtraction set S containing [k-1] whose
/// Nim sequence is the word: c_i = 1 + least s ∈ S above c_{i-1} - 1 whose
/// addition changes the Nim sequence at position s.
std::vector<Term> representation_sequence_from_set(const SubtractionSet& s, Symbol k,
                                                   std::size_t depth, Position horizon);

}  // namespace apnim
