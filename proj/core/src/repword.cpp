#include "apnim/repword.hpp"

#include <algorithm>
#include <limits>
#include <mutex>

#include "apnim/errors.hpp"

namespace apnim {

struct RepWord::Cache {
  std::mutex mutex;
  Word word;
};

RepWord::RepWord(RepresentingSequence seq)
    : seq_(std::move(seq)), cache_(std::make_shared<Cache>()) {
  const auto k = seq_.try_term(1);
  if (!k) throw PreconditionError("a representation word needs term(1); got " + seq_.name());
  if (*k > std::numeric_limits<Symbol>::max()) throw OverflowError("term(1) too large");
  k_ = static_cast<Symbol>(*k);
}

Symbol RepWord::symbol_by_definition(Term n) const {
  if (is_volatile(seq_, n, 2)) return k_;
  if (n == 0) return 0;
  return static_cast<Symbol>(represent(seq_, n).digits.front());
}

Symbol RepWord::symbol_by_recursion(Term n) const {
  const auto terms = seq_.terms_covering(n);
  const auto& t = *terms;
  std::size_t j = t.size();
  while (n >= k_) {
    // Terms only shrink as n does, so the index search can resume from j.
    while (j > 0 && t[j - 1] > n) --j;
    const std::size_t idx = j - 1;
    if (idx + 1 < t.size() && n == t[idx + 1] - 1) return k_;
    n -= t[idx];
  }
  return static_cast<Symbol>(n);
}

Word RepWord::prefix(std::size_t length) const {
  std::lock_guard lock(cache_->mutex);
  Word& w = cache_->word;
  if (w.size() < length) {
    const auto terms = seq_.terms_covering(length == 0 ? 0 : length - 1);
    const auto& t = *terms;
    w.reserve(length);
    std::size_t j = 0;
    for (std::size_t n = w.size(); n < length; ++n) {
      if (n < k_) {
        w.push_back(static_cast<Symbol>(n));
        continue;
      }
      while (j + 1 < t.size() && t[j + 1] <= n) ++j;
      if (j + 1 < t.size() && n == t[j + 1] - 1) {
        w.push_back(k_);
      } else {
        w.push_back(w[n - t[j]]);
      }
    }
  }
  return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(length));
}

bool is_fergusonian(std::span<const Symbol> w, Symbol k) {
  for (std::size_t n = 0; n < w.size(); ++n) {
    const Symbol h = w[n];
    if (h > k) return false;
    if (h + 1 < k && n + 1 < w.size() && w[n + 1] != h + 1) return false;
    if (h >= 1 && h < k && n >= 1 && w[n - 1] != h - 1) return false;
  }
  return true;
}

bool is_strongly_fergusonian(std::span<const Symbol> w, Symbol k) {
  if (!is_fergusonian(w, k)) return false;
  for (std::size_t n = 1; n < w.size(); ++n) {
    if (w[n] == k && w[n - 1] == k) return false;
  }
  return true;
}

FergusonianCriterion fergusonian_criterion(const RepWord& rw, Position horizon) {
  // One extra symbol so the last position has a successor.
  const Word w = rw.prefix(horizon + 2);
  const Symbol k = rw.k();
  FergusonianCriterion c;
  c.fergusonian = is_fergusonian(std::span<const Symbol>(w), k);
  c.k_follows_k_or_k_minus_one = true;
  c.k_exactly_on_volatile_zends = true;
  for (Position n = 0; n <= horizon; ++n) {
    if (n >= 1 && w[n] == k && w[n - 1] != k && w[n - 1] + 1 != k) {
      c.k_follows_k_or_k_minus_one = false;
    }
    const bool vz = is_zend(rw.sequence(), n) && is_volatile(rw.sequence(), n);
    if ((w[n] == k) != vz) c.k_exactly_on_volatile_zends = false;
  }
  return c;
}

GeneratedWord generate_fergusonian(Symbol k, const ExponentMatrix& p, std::size_t depth) {
  if (k < 2) throw PreconditionError("generate_fergusonian needs k >= 2");
  if (depth < 1) throw PreconditionError("generate_fergusonian needs depth >= 1");
  for (std::size_t i = 2; i <= depth; ++i) {
    if (p(i, 1) < 1) {
      throw PreconditionError("exponent p(" + std::to_string(i) + ",1) must be at least 1");
    }
    for (std::size_t ell = 1; ell < i && i + 1 <= depth; ++ell) {
      if (p(i, ell) < p(i + 1, ell)) {
        throw PreconditionError("exponents must not grow down a column: p(" +
                                std::to_string(i) + "," + std::to_string(ell) + ") < p(" +
                                std::to_string(i + 1) + "," + std::to_string(ell) + ")");
      }
    }
  }
  std::vector<Word> blocks;
  Word first(k);
  for (Symbol h = 0; h < k; ++h) first[h] = h;
  blocks.push_back(std::move(first));
  for (std::size_t i = 2; i <= depth; ++i) {
    Word next;
    for (std::size_t j = 1; j < i; ++j) {
      const Word& piece = blocks[i - j - 1];
      for (std::size_t r = 0; r < p(i, i - j); ++r) {
        next.insert(next.end(), piece.begin(), piece.end());
      }
    }
    next.push_back(k);
    blocks.push_back(std::move(next));
  }
  GeneratedWord out;
  out.lengths.push_back(1);
  for (const Word& b : blocks) out.lengths.push_back(b.size());
  out.word = std::move(blocks.back());
  return out;
}

ExponentMatrix doubled_last_exponents() {
  return [](std::size_t i, std::size_t ell) -> std::size_t { return ell + 1 == i ? 2 : 1; };
}

DerivedSets::DerivedSets(RepresentingSequence seq) : seq_(std::move(seq)) {
  k_ = seq_.term(1);
}

bool DerivedSets::in_T(Term n) const {
  if (n >= 1 && n < k_) return true;
  if (n == std::numeric_limits<Term>::max()) return false;
  const auto terms = seq_.terms_covering(n + 1);
  const auto it = std::lower_bound(terms->begin(), terms->end(), n + 1);
  return it != terms->end() && *it == n + 1 && (it - terms->begin()) >= 2;
}

bool DerivedSets::in_N(Term n) const {
  return is_zend(seq_, n) && !is_volatile(seq_, n);
}

bool DerivedSets::in_W(Term n) const {
  return is_zend(seq_, n) && is_volatile(seq_, n);
}

bool DerivedSets::in_V(Term n) const { return (n >= 1 && n < k_) || in_W(n); }

namespace {

template <typename Pred>
std::vector<Term> scan(Term from, Term bound, Pred pred) {
  std::vector<Term> out;
  for (Term n = from; n <= bound; ++n) {
    if (pred(n)) out.push_back(n);
    if (n == std::numeric_limits<Term>::max()) break;
  }
  return out;
}

}  // namespace

std::vector<Term> DerivedSets::T(Term bound) const {
  std::vector<Term> out;
  for (Term n = 1; n < k_ && n <= bound; ++n) out.push_back(n);
  for (std::size_t i = 2;; ++i) {
    const auto t = seq_.try_term(i);
    if (!t || *t - 1 > bound) break;
    out.push_back(*t - 1);
  }
  return out;
}

std::vector<Term> DerivedSets::N(Term bound) const {
  return scan(0, bound, [this](Term n) { return in_N(n); });
}

std::vector<Term> DerivedSets::W(Term bound) const {
  return scan(0, bound, [this](Term n) { return in_W(n); });
}

std::vector<Term> DerivedSets::V(Term bound) const {
  return scan(1, bound, [this](Term n) { return in_V(n); });
}

std::vector<Term> DerivedSets::L(Term bound) const {
  return scan(0, bound, [this](Term n) { return in_L(n); });
}

SubtractionSet DerivedSets::T_set() const {
  auto self = *this;
  return SubtractionSet::rule(
      SubtractionSet::Kind::Derived, "T" + seq_.name(),
      [self](Position n) { return self.in_T(n); }, [self](Position b) { return self.T(b); });
}

SubtractionSet DerivedSets::V_set() const {
  auto self = *this;
  return SubtractionSet::rule(
      SubtractionSet::Kind::Derived, "V" + seq_.name(),
      [self](Position n) { return self.in_V(n); }, [self](Position b) { return self.V(b); });
}

bool VerificationReport::passed() const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const Condition& c) { return c.passed; });
}

const Condition* VerificationReport::find(const std::string& name) const {
  for (const Condition& c : conditions) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

Condition fail(std::string name, Position at, std::string detail) {
  Condition c;
  c.name = std::move(name);
  c.passed = false;
  c.counterexample = at;
  c.detail = std::move(detail);
  return c;
}

Condition pass(std::string name, std::string detail = {}) {
  Condition c;
  c.name = std::move(name);
  c.detail = std::move(detail);
  return c;
}

// Positions of N in [0, horizon] as a bitmap.
std::vector<bool> n_bitmap(const DerivedSets& sets, Position horizon) {
  std::vector<bool> in(horizon + 1, false);
  for (Term n : sets.N(horizon)) in[n] = true;
  return in;
}

Condition disjoint_sum(const std::string& name, const std::vector<bool>& in_n,
                       std::span<const Position> moves) {
  const Position horizon = in_n.size() - 1;
  for (Position a = 0; a <= horizon; ++a) {
    if (!in_n[a]) continue;
    for (Position s : moves) {
      if (a + s > horizon) break;
      if (in_n[a + s]) {
        return fail(name, a + s,
                    std::to_string(a) + " + " + std::to_string(s) + " = " +
                        std::to_string(a + s) + " lies in N");
      }
    }
  }
  return pass(name);
}

Condition compare_words(const std::string& name, std::span<const Symbol> got,
                        std::span<const Symbol> want) {
  const auto [g, w] = std::mismatch(got.begin(), got.end(), want.begin(), want.end());
  if (g == got.end() && w == want.end()) return pass(name);
  const auto at = static_cast<Position>(g - got.begin());
  std::string detail = "first difference at " + std::to_string(at);
  if (g != got.end() && w != want.end()) {
    detail += ": Nim value " + std::to_string(*g) + ", word " + std::to_string(*w);
  }
  return fail(name, at, detail);
}

}  // namespace

VerificationReport verify_absmain(const RepWord& rw, const SubtractionSet& s,
                                  const SubtractionSet& i, Position horizon) {
  VerificationReport report;
  const Word w = rw.prefix(horizon + 1);
  const DerivedSets sets(rw.sequence());

  if (is_strongly_fergusonian(w, rw.k())) {
    report.conditions.push_back(pass("strongly_fergusonian"));
  } else {
    report.conditions.push_back(fail("strongly_fergusonian", 0, "word is not strongly Fergusonian"));
  }

  const auto t = sets.T(horizon);
  const auto s_elems = s.elements_up_to(horizon);
  const auto i_elems = i.elements_up_to(horizon);

  Condition ts = pass("T_subset_S");
  for (Term x : t) {
    if (!s.contains(x)) {
      ts = fail("T_subset_S", x, std::to_string(x) + " in T but not in S");
      break;
    }
  }
  report.conditions.push_back(ts);

  Condition si = pass("S_subset_I");
  for (Position x : s_elems) {
    if (!i.contains(x)) {
      si = fail("S_subset_I", x, std::to_string(x) + " in S but not in I");
      break;
    }
  }
  report.conditions.push_back(si);

  const auto in_n = n_bitmap(sets, horizon);
  report.conditions.push_back(disjoint_sum("N_plus_I_misses_N", in_n, i_elems));

  const Word nim = nim_sequence(s, horizon + 1);
  report.conditions.push_back(compare_words("nim_sequence_equals_word", nim, w));
  return report;
}

VerificationReport verify_truncation(const RepWord& rw, const SubtractionSet& s, std::size_t i,
                                     Position horizon) {
  VerificationReport report;
  const auto& seq = rw.sequence();
  const Term ai = seq.term(i);
  const auto next = seq.try_term(i + 1);
  const SubtractionSet si = s.truncated(ai - 1);
  const auto moves = si.elements();
  const DerivedSets sets(seq);
  const Position reach = std::max<Position>(horizon, 2 * ai);
  const auto in_n = n_bitmap(sets, reach);

  if (next && *next > 2 * ai) {
    // a + term(i) stays in N for every a in N below term(i); together with
    // (N+S) ∩ N = ∅ that gives the side condition.
    Condition c = disjoint_sum("side_condition", in_n, s.elements_up_to(reach));
    if (c.passed) {
      for (Position a = 0; a < ai; ++a) {
        if (in_n[a] && !in_n[a + ai]) {
          c = fail("side_condition", a, std::to_string(a) + " + term(i) is not in N");
          break;
        }
      }
    }
    if (c.passed) c.detail = "doubling shortcut";
    report.conditions.push_back(c);
  } else {
    Condition c = pass("side_condition", "direct");
    for (Position a = 0; a < ai && c.passed; ++a) {
      if (!in_n[a]) continue;
      for (Position x : moves) {
        const Position m = a + ai - x;
        if (in_n[m]) {
          c = fail("side_condition", a,
                   std::to_string(a) + " + term(i) - " + std::to_string(x) + " lies in N");
          break;
        }
      }
    }
    report.conditions.push_back(c);
  }

  const Word period = rw.prefix(ai);
  const Word nim = nim_sequence(si, horizon + 1);
  report.conditions.push_back(
      compare_words("nim_sequence_equals_period", nim, periodic_prefix(period, horizon + 1)));
  return report;
}

ExtractedSequence extract_representation_sequence(std::span<const Symbol> w, Symbol k,
                                                  std::size_t depth) {
  if (k < 1 || w.size() < k) throw ExtractionError("window shorter than k");
  for (Symbol h = 0; h < k; ++h) {
    if (w[h] != h) throw ExtractionError("word does not start with 01...(k-1)");
  }
  std::vector<Term> c{1, k};
  bool periodic = false;
  while (c.size() < depth) {
    const Term len = c.back();
    std::optional<Position> diff;
    for (Position n = len; n < w.size(); ++n) {
      if (w[n] != w[n % len]) {
        diff = n;
        break;
      }
    }
    if (!diff) {
      periodic = true;
      break;
    }
    if (w[*diff] != k) {
      throw ExtractionError("position " + std::to_string(*diff) + " leaves the periodic shadow with " +
                            std::to_string(w[*diff]) + " instead of k");
    }
    c.push_back(*diff + 1);
  }
  return {RepresentingSequence::finite(std::move(c)), periodic};
}

std::vector<Term> representation_sequence_from_set(const SubtractionSet& s, Symbol k,
                                                   std::size_t depth, Position horizon) {
  std::vector<Term> c{1, k};
  const auto elems = s.elements_up_to(horizon);
  std::size_t pos = 0;
  while (c.size() < depth) {
    const Term floor = c.back() - 1;
    bool found = false;
    for (; pos < elems.size(); ++pos) {
      const Position x = elems[pos];
      if (x <= floor) continue;
      const Word without = nim_sequence(s.truncated(x - 1), x + 1);
      const Word with = nim_sequence(s.truncated(x), x + 1);
      if (without[x] != with[x]) {
        c.push_back(x + 1);
        ++pos;
        found = true;
        break;
      }
    }
    if (!found) break;
  }
  return c;
}

}  // namespace apnim
