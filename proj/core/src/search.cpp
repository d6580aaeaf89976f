#include "apnim/search.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "apnim/errors.hpp"
#include "apnim/repword.hpp"

namespace apnim {

namespace {

unsigned worker_count(const SearchOptions& options) {
  unsigned n = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  return std::max(1u, n);
}

// Tests candidates first, first+1, ... (at most `count`) with `accept`, in
// parallel batches. Returns the offset of the least accepted candidate.
// The result does not depend on the number of threads.
template <typename Accept>
std::optional<std::size_t> first_accepted(std::size_t count, const SearchOptions& options,
                                          Accept accept) {
  const unsigned threads = worker_count(options);
  const std::size_t batch = std::max<std::size_t>(options.batch, 1) * threads;
  for (std::size_t base = 0; base < count; base += batch) {
    const std::size_t end = std::min(count, base + batch);
    if (threads == 1) {
      for (std::size_t off = base; off < end; ++off) {
        if (accept(off)) return off;
      }
      continue;
    }
    std::atomic<std::size_t> next{base};
    std::atomic<std::size_t> best{end};
    auto work = [&] {
      for (;;) {
        const std::size_t off = next.fetch_add(1);
        if (off >= end || off >= best.load()) return;
        if (accept(off)) {
          std::size_t cur = best.load();
          while (off < cur && !best.compare_exchange_weak(cur, off)) {
          }
        }
      }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    pool.clear();
    if (best.load() < end) return best.load();
  }
  return std::nullopt;
}

std::vector<Position> with_element(std::span<const Position> s, Position i) {
  std::vector<Position> out(s.begin(), s.end());
  out.push_back(i);
  std::sort(out.begin(), out.end());
  return out;
}

bool periodic_words_equal(std::span<const Symbol> a, std::span<const Symbol> b) {
  // Two periodic words agree everywhere once they agree on |a| + |b| places.
  const std::size_t n = a.size() + b.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i % a.size()] != b[i % b.size()]) return false;
  }
  return true;
}

}  // namespace

std::optional<Word> accept_set_candidate(std::span<const Position> s, Position i, Symbol k,
                                         std::span<const Symbol> current_period,
                                         const PeriodOptions& options) {
  const auto set = SubtractionSet::finite(with_element(s, i));
  // Any prefix that leaves Σ_k already rejects; the table only grows from here.
  std::size_t n = std::max<std::size_t>(options.initial_length, 4 * (i + 1));
  while (true) {
    if (n > options.max_length) {
      throw ResourceLimitError("candidate " + std::to_string(i) + ": no period within " +
                               std::to_string(options.max_length) + " terms");
    }
    const Word table = nim_sequence(set, n, Limits{options.max_length});
    if (std::any_of(table.begin(), table.end(), [k](Symbol v) { return v > k; })) {
      return std::nullopt;
    }
    if (auto d = period_and_prefix_of(table, set)) {
      if (!d->prefix.empty()) return std::nullopt;
      if (std::equal(d->period.begin(), d->period.end(), current_period.begin(),
                     current_period.end())) {
        return std::nullopt;
      }
      return std::move(d->period);
    }
    n *= 2;
  }
}

Extension extend_set(std::span<const Position> s, Position start, Symbol k, Budget budget,
                     const SearchOptions& options) {
  if (s.empty()) throw PreconditionError("extend_set needs a nonempty set");
  const auto set = SubtractionSet::finite({s.begin(), s.end()});
  if (start <= set.max_element()) throw PreconditionError("start must exceed max S");
  const PeriodDecomposition current = period_and_prefix(set, options.period);
  if (!current.prefix.empty()) throw PreconditionError("S must be purely periodic");
  if (*std::max_element(current.period.begin(), current.period.end()) > k) {
    throw PreconditionError("period of S leaves the alphabet");
  }
  const std::vector<Position> sorted(set.elements().begin(), set.elements().end());
  Extension ext;
  std::mutex found_mutex;
  std::map<std::size_t, Word> periods;
  const auto hit = first_accepted(budget, options, [&](std::size_t off) {
    auto p = accept_set_candidate(sorted, start + off, k, current.period, options.period);
    if (!p) return false;
    std::lock_guard lock(found_mutex);
    periods[off] = std::move(*p);
    return true;
  });
  if (!hit) {
    ext.tested = budget;
    return ext;
  }
  ext.accepted = start + *hit;
  ext.period = std::move(periods[*hit]);
  ext.tested = *hit + 1;
  return ext;
}

bool rep_word_is_nim_sequence(std::span<const Term> terms) {
  if (terms.size() < 2) throw PreconditionError("need at least (1, k)");
  const auto seq = RepresentingSequence::finite({terms.begin(), terms.end()});
  const RepWord rw(seq);
  const DerivedSets sets(seq);
  const auto t = SubtractionSet::finite(sets.T(terms.back()));
  const Term period = terms.back();
  const Term top = t.elements().empty() ? 0 : t.max_element();
  // With period L and largest move M, agreement on [0, L + M) propagates.
  const std::size_t window = period + top;
  const Word word = rw.prefix(window);
  return nim_sequence(t, window) == word;
}

Extension extend_rep_seq(std::span<const Term> terms, Term start, Budget budget,
                         const SearchOptions& options) {
  if (terms.empty() || terms.front() != 1) throw PreconditionError("sequence must start at 1");
  if (start <= terms.back()) throw PreconditionError("start must exceed the last term");
  const bool one_term = terms.size() == 1;
  if (!one_term && !rep_word_is_nim_sequence(terms)) {
    throw PreconditionError("the word of the seed is not the Nim sequence of its T set");
  }
  Word current{0};
  if (!one_term) current = RepWord(RepresentingSequence::finite({terms.begin(), terms.end()})).prefix(terms.back());
  std::mutex mutex;
  std::map<std::size_t, Word> words;
  const auto hit = first_accepted(budget, options, [&](std::size_t off) {
    std::vector<Term> next(terms.begin(), terms.end());
    next.push_back(start + off);
    const Word w = RepWord(RepresentingSequence::finite(next)).prefix(next.back());
    if (periodic_words_equal(w, current)) return false;
    if (!rep_word_is_nim_sequence(next)) return false;
    std::lock_guard lock(mutex);
    words[off] = w;
    return true;
  });
  Extension ext;
  if (!hit) {
    ext.tested = budget;
    return ext;
  }
  ext.accepted = start + *hit;
  ext.period = std::move(words[*hit]);
  ext.tested = *hit + 1;
  return ext;
}

namespace {

Position next_start_for(const SearchState& st, std::size_t period_length) {
  const Position last = st.chain.back();
  if (st.mode == "set") {
    return st.doubling ? std::max<Position>(last + 1, 2 * period_length + 1) : last + 1;
  }
  return st.doubling ? std::max<Position>(last + 1, 2 * last) : last + 1;
}

std::size_t period_length_of(const SearchState& st, const PeriodOptions& options) {
  if (st.mode == "set") {
    return period_and_prefix(SubtractionSet::finite(st.chain), options).period.size();
  }
  return st.chain.size() == 1 ? 1 : st.chain.back();
}

}  // namespace

SearchResult resume_chain(SearchState st, std::size_t depth, const SearchOptions& options,
                          const AcceptHook& hook) {
  if (st.mode != "set" && st.mode != "repseq") throw PreconditionError("unknown search mode " + st.mode);
  if (st.chain.empty()) throw PreconditionError("search state has an empty chain");
  // Seed elements carry no candidate count and are never dropped.
  const auto root = static_cast<std::size_t>(std::count_if(
      st.history.begin(), st.history.end(), [](const ChainStep& h) { return h.candidates == 0; }));
  while (st.chain.size() < depth) {
    if (st.budget_spent >= options.budget) return {SearchStatus::BudgetExhausted, st};
    const Budget level_left = options.level_budget > st.level_spent ? options.level_budget - st.level_spent : 0;
    const Budget allowed = std::min(level_left, options.budget - st.budget_spent);
    Extension ext;
    if (st.mode == "set") {
      ext = extend_set(st.chain, st.next_start, st.k, allowed, options);
    } else {
      ext = extend_rep_seq(st.chain, st.next_start, allowed, options);
    }
    st.budget_spent += ext.tested;
    st.level_spent += ext.tested;
    if (ext.accepted) {
      st.chain.push_back(*ext.accepted);
      st.history.push_back({*ext.accepted, ext.period.size(), st.level_spent});
      st.level_spent = 0;
      st.next_start = next_start_for(st, ext.period.size());
      if (hook) hook(st);
      continue;
    }
    if (st.budget_spent >= options.budget) return {SearchStatus::BudgetExhausted, st};
    // This level is out of budget: drop the last element and look past it.
    if (st.chain.size() <= root) return {SearchStatus::BudgetExhausted, st};
    const ChainStep dropped = st.history.back();
    st.history.pop_back();
    st.chain.pop_back();
    st.next_start = dropped.element + 1;
    st.level_spent = dropped.candidates;
  }
  return {SearchStatus::Complete, st};
}

SearchResult greedy_chain(Symbol k, std::size_t depth, bool doubling, const SearchOptions& options,
                          std::vector<Position> seed, const AcceptHook& hook) {
  if (seed.empty()) throw PreconditionError("greedy_chain needs a seed");
  SearchState st;
  st.mode = "set";
  st.k = k;
  st.doubling = doubling;
  std::sort(seed.begin(), seed.end());
  for (Position x : seed) {
    st.chain.push_back(x);
    st.history.push_back({x, period_length_of(st, options.period), 0});
  }
  st.next_start = next_start_for(st, st.history.back().period_length);
  return resume_chain(std::move(st), depth, options, hook);
}

SearchResult greedy_rep_chain(std::size_t depth, bool doubling, const SearchOptions& options,
                              std::vector<Term> seed, const AcceptHook& hook) {
  if (seed.empty() || seed.front() != 1) throw PreconditionError("seed must start at 1");
  SearchState st;
  st.mode = "repseq";
  st.doubling = doubling;
  for (Term x : seed) {
    st.chain.push_back(x);
    st.history.push_back({x, period_length_of(st, options.period), 0});
  }
  st.k = st.chain.size() > 1 ? static_cast<Symbol>(st.chain[1]) : 2;
  st.next_start = next_start_for(st, st.history.back().period_length);
  return resume_chain(std::move(st), depth, options, hook);
}

namespace {

ExplorationReport explore(std::vector<Term> seed, std::size_t steps, Term horizon,
                          std::int64_t c1, std::int64_t c2) {
  if (seed.size() < 2) throw PreconditionError("explorers need a seed of at least two terms");
  ExplorationReport report;
  report.seed = seed;
  report.seed_verified = rep_word_is_nim_sequence(seed);
  std::vector<Term> terms = seed;
  for (std::size_t step = 0; step < steps; ++step) {
    __extension__ using Wide = __int128;
    const Wide next = static_cast<Wide>(c1) * terms[terms.size() - 1] -
                      static_cast<Wide>(c2) * terms[terms.size() - 2];
    if (next <= static_cast<Wide>(terms.back())) {
      throw PreconditionError("recurrence does not increase");
    }
    if (next > static_cast<Wide>(horizon)) {
      throw ResourceLimitError("term " + std::to_string(static_cast<Term>(next)) +
                               " exceeds the horizon " + std::to_string(horizon));
    }
    terms.push_back(static_cast<Term>(next));
    const bool ok = rep_word_is_nim_sequence(terms);
    report.steps.push_back({terms.back(), ok});
    if (!ok && !report.first_failure) report.first_failure = step;
  }
  return report;
}

}  // namespace

ExplorationReport explore_conjecture1(std::vector<Term> seed, std::size_t steps, Term horizon) {
  return explore(std::move(seed), steps, horizon, 3, 1);
}

ExplorationReport explore_conjecture2(std::vector<Term> seed, unsigned m, std::size_t steps,
                                      Term horizon) {
  if (m < 1) throw PreconditionError("m must be at least 1");
  if (seed.size() < 3) throw PreconditionError("the second explorer needs a seed of length 3");
  const std::int64_t c1 = m + 1;
  const std::int64_t c2 = static_cast<std::int64_t>(m) - 1;
  const auto n = seed.size();
  const bool pre = static_cast<std::int64_t>(seed[n - 1]) ==
                   c1 * static_cast<std::int64_t>(seed[n - 2]) -
                       c2 * static_cast<std::int64_t>(seed[n - 3]);
  ExplorationReport report = explore(std::move(seed), steps, horizon, c1, c2);
  report.recurrence_precondition = pre;
  return report;
}

}  // namespace apnim
