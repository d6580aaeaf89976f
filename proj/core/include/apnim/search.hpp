#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "apnim/game.hpp"
#include "apnim/numeration.hpp"
#include "apnim/periodicity.hpp"

namespace apnim {

/// Candidates tested. One unit is one candidate pushed through an acceptance test.
using Budget = std::uint64_t;

struct SearchOptions {
  /// Total candidates the whole run may test.
  Budget budget = 1'000'000;
  /// Candidates one level may test before the chain backtracks.
  Budget level_budget = 100'000;
  /// Worker threads for candidate batches; 0 means hardware concurrency.
  unsigned threads = 0;
  /// Candidates handed out per batch.
  std::size_t batch = 16;
  PeriodOptions period;
};

/// Result of one extension attempt.
struct Extension {
  /// The accepted element, or nothing when the budget ran out first.
  std::optional<Position> accepted;
  /// Period of the extended set (sets) or period word (sequences).
  Word period;
  /// Candidates charged: up to and including the accepted one.
  Budget tested = 0;
};

/// Acceptance test of the set search: S ∪ {i} is purely periodic, its
/// period differs from `current_period` and stays within Σ_k.
/// Returns the period when accepted.
std::optional<Word> accept_set_candidate(std::span<const Position> s, Position i, Symbol k,
                                         std::span<const Symbol> current_period,
                                         const PeriodOptions& options = {});

/// Least i >= start passing accept_set_candidate, testing at most `budget`.
/// Requires S purely periodic within Σ_k and start > max S.
Extension extend_set(std::span<const Position> s, Position start, Symbol k, Budget budget,
                     const SearchOptions& options = {});

/// The representation word of the finite sequence `terms` is exactly the Nim
/// sequence of its T set.
bool rep_word_is_nim_sequence(std::span<const Term> terms);

/// Least j >= start such that appending j changes the representation word and
/// keeps it the Nim sequence of T. Requires that of `terms` itself.
Extension extend_rep_seq(std::span<const Term> terms, Term start, Budget budget,
                         const SearchOptions& options = {});

struct ChainStep {
  Position element = 0;
  std::size_t period_length = 0;
  Budget candidates = 0;
  friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

/// Resumable state of a chain search.
struct SearchState {
  /// "set" for subtraction-set chains, "repseq" for representing sequences.
  std::string mode = "set";
  Symbol k = 2;
  bool doubling = true;
  std::vector<Position> chain;
  Position next_start = 0;
  Budget budget_spent = 0;
  /// Candidates already tested at the level currently being extended.
  Budget level_spent = 0;
  std::vector<ChainStep> history;
  friend bool operator==(const SearchState&, const SearchState&) = default;
};

enum class SearchStatus { Complete, BudgetExhausted };

struct SearchResult {
  SearchStatus status = SearchStatus::Complete;
  SearchState state;
};

/// Called after every accepted extension (for checkpoints).
using AcceptHook = std::function<void(const SearchState&)>;

/// Depth-first greedy set chain starting from `seed`, until the chain has
/// `depth` elements. With doubling every new element exceeds twice the
/// current period length. A level that uses up its budget drops the last
/// element and resumes that element's search after it.
SearchResult greedy_chain(Symbol k, std::size_t depth, bool doubling,
                          const SearchOptions& options = {},
                          std::vector<Position> seed = {1, 4}, const AcceptHook& hook = {});

/// The representing-sequence counterpart, seeded with (1); with doubling each
/// new term is at least twice the previous one.
SearchResult greedy_rep_chain(std::size_t depth, bool doubling, const SearchOptions& options = {},
                              std::vector<Term> seed = {1}, const AcceptHook& hook = {});

/// Continues either kind of chain from a saved state.
SearchResult resume_chain(SearchState state, std::size_t depth, const SearchOptions& options = {},
                          const AcceptHook& hook = {});

/// Checkpoint records: one JSON object per line.
void write_checkpoint(std::ostream& out, const SearchState& state);
/// Parses one record. Throws ParseError on malformed input or unknown version.
SearchState parse_checkpoint(const std::string& line);
/// Last record of a checkpoint stream, if any.
std::optional<SearchState> read_last_checkpoint(std::istream& in);

struct ExplorationStep {
  Term term = 0;
  bool verified = false;
};

struct ExplorationReport {
  std::vector<Term> seed;
  /// The seed's representation word is the Nim sequence of its T set.
  bool seed_verified = false;
  /// For the second explorer: the seed already follows the recurrence.
  bool recurrence_precondition = true;
  std::vector<ExplorationStep> steps;
  std::optional<std::size_t> first_failure;
  bool all_verified() const { return seed_verified && !first_failure; }
};

/// Extends `seed` by b_i = 3b_{i-1} - b_{i-2} for `steps` terms and checks
/// each prefix. Terms beyond `horizon` raise ResourceLimitError.
ExplorationReport explore_conjecture1(std::vector<Term> seed, std::size_t steps, Term horizon);

/// Same with b_i = (m+1) b_{i-1} - (m-1) b_{i-2}.
ExplorationReport explore_conjecture2(std::vector<Term> seed, unsigned m, std::size_t steps,
                                      Term horizon);

}  // namespace apnim
