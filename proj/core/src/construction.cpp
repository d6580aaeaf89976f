#include "apnim/construction.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "apnim/errors.hpp"
#include "apnim/wythoff.hpp"

namespace apnim {

Term fib(std::size_t n) {
  if (n > 93) throw OverflowError("F(" + std::to_string(n) + ") does not fit in 64 bits");
  Term a = 0;
  Term b = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Term c = a + b;
    a = b;
    b = c;
  }
  return a;
}

Term fib_repseq(std::size_t i) {
  if (i > 46) throw OverflowError("F(2i+1) does not fit in 64 bits for i = " + std::to_string(i));
  return fib(2 * i + 1);
}

Word build_word_prefix(std::size_t depth, const Limits& limits) {
  if (depth < 1) throw PreconditionError("build_word_prefix needs depth >= 1");
  if (fib_repseq(depth) > limits.max_length) {
    throw ResourceLimitError("w_" + std::to_string(depth) + " has " +
                             std::to_string(fib_repseq(depth)) + " symbols");
  }
  return generate_fergusonian(2, doubled_last_exponents(), depth).word;
}

const Morphism& phi_morphism() {
  static const Morphism m({{0, 0, 1}, {0, 1}});
  return m;
}

const Morphism& psi_morphism() {
  static const Morphism m({{0, 1}, {2}});
  return m;
}

Word morphic_word_prefix(std::size_t m, const Limits& limits) {
  // |ψ(φ^m(0))| = F(2m+3).
  if (m + 1 > 46 || fib_repseq(m + 1) > limits.max_length) {
    throw ResourceLimitError("morphic prefix " + std::to_string(m) + " too long");
  }
  return psi_morphism().apply(phi_morphism().iterate({0}, m));
}

bool ends_in_two_block(const DigitString& d) {
  if (d.size() < 2 || d[0] != 0) return false;
  std::size_t p = 1;
  while (p < d.size() && d[p] == 1) ++p;
  return p < d.size() && d[p] == 2;
}

bool in_I(Term n) {
  if (n == 1) return true;
  if (n == 0) return false;
  return ends_in_two_block(represent(RepresentingSequence::odd_fibonacci(), n));
}

bool valid_ternary_rep(const DigitString& d) {
  for (std::size_t p = 0; p < d.size(); ++p) {
    if (d[p] > 2) return false;
    if (d[p] != 2) continue;
    std::size_t q = p;
    while (q > 0 && d[q - 1] == 1) --q;
    if (q == 0 || d[q - 1] != 0) return false;
  }
  return true;
}

namespace {

Term zeck_value(const std::vector<Digit>& e) {
  Term total = 0;
  for (std::size_t i = 0; i < e.size(); ++i) total += e[i] * fib(i + 2);
  return total;
}

[[maybe_unused]] bool odd_trailing_zeros(const std::vector<Digit>& e) {
  std::size_t z = 0;
  while (z < e.size() && e[z] == 0) ++z;
  return z == e.size() || z % 2 == 1;
}

}  // namespace

DigitString odd_fib_to_zeck(const DigitString& d) {
  if (d.empty()) return {};
  if (d[0] != 0) throw PreconditionError("odd_fib_to_zeck needs a last digit of 0");
  if (ends_in_two_block(d)) throw PreconditionError("odd_fib_to_zeck rejects a two-block ending");
  if (!valid_ternary_rep(d)) throw PreconditionError("not a valid odd-Fibonacci representation");

  std::vector<Digit> e(2 * d.size() + 2, 0);
  e[0] = d[0];
  for (std::size_t i = 1; i < d.size(); ++i) e[2 * i - 1] = d[i];
  [[maybe_unused]] const Term n = zeck_value(e);
  assert(odd_trailing_zeros(e));

  auto top = [&e]() {
    std::size_t j = e.size();
    while (j > 0 && e[j - 1] == 0) --j;
    return j == 0 ? std::size_t{0} : j - 1;
  };

  // Two-removals.
  for (std::size_t i = top(); i >= 2; --i) {
    if (e[i] == 2) {
      e[i] = 0;
      if (i + 1 >= e.size()) e.resize(i + 2, 0);
      ++e[i + 1];
      ++e[i - 2];
    }
  }
  assert(zeck_value(e) == n);
  assert(odd_trailing_zeros(e));
  assert(std::all_of(e.begin(), e.end(), [](Digit x) { return x <= 1; }));

  // One-removals.
  auto has_adjacent_ones = [&e]() {
    for (std::size_t i = 1; i < e.size(); ++i) {
      if (e[i] == 1 && e[i - 1] == 1) return true;
    }
    return false;
  };
  while (has_adjacent_ones()) {
    for (std::size_t i = top(); i >= 1; --i) {
      if (e[i] == 1 && e[i - 1] == 1) {
        e[i] = 0;
        e[i - 1] = 0;
        if (i + 1 >= e.size()) e.resize(i + 2, 0);
        ++e[i + 1];
      }
    }
    assert(zeck_value(e) == n);
    assert(odd_trailing_zeros(e));
  }
  DigitString out(std::move(e));
  out.trim();
  return out;
}

VerificationReport verify_wythoff_zeros(Position horizon) {
  VerificationReport report;
  const auto seq = RepresentingSequence::odd_fibonacci();
  const RepWord rw(seq);
  const Word w = rw.prefix(horizon + 1);
  const DerivedSets sets(seq);

  Condition zeros{"zeros_are_upper_wythoff", true, std::nullopt, {}};
  Condition zends{"zeros_are_nonvolatile_zends", true, std::nullopt, {}};
  Condition parity{"zeckendorf_parity_matches", true, std::nullopt, {}};
  Condition blocks{"volatile_zends_end_in_two_block", true, std::nullopt, {}};
  auto flag = [](Condition& c, Position n, std::string detail) {
    if (!c.passed) return;
    c.passed = false;
    c.counterexample = n;
    c.detail = std::move(detail);
  };
  std::vector<bool> upper(horizon + 1, false);
  for (Position n = 0; n <= horizon; ++n) {
    const bool exact = in_upper_wythoff(n);
    upper[n] = exact;
    const bool zero = w[n] == 0;
    if (zero != exact) flag(zeros, n, "w[n]=" + std::to_string(w[n]));
    if (sets.in_N(n) != exact) flag(zends, n, "non-volatile zend test disagrees");
    if ((wythoff_class(n) == WythoffClass::Upper) != exact) {
      flag(parity, n, "Zeckendorf parity disagrees");
    }
    if (is_zend(seq, n) && n > 0) {
      const bool vol = is_volatile(seq, n);
      if (vol != ends_in_two_block(represent(seq, n))) flag(blocks, n, "two-block test disagrees");
    }
  }
  report.conditions = {zeros, zends, parity, blocks};

  Condition sum{"upper_plus_I_misses_upper", true, std::nullopt, {}};
  std::vector<Position> moves;
  for (Position s = 1; s <= horizon; ++s) {
    if (in_I(s)) moves.push_back(s);
  }
  for (Position a = 0; a <= horizon && sum.passed; ++a) {
    if (!upper[a]) continue;
    for (Position s : moves) {
      if (a + s > horizon) break;
      if (upper[a + s]) {
        flag(sum, a + s, std::to_string(a) + " + " + std::to_string(s));
        break;
      }
    }
  }
  report.conditions.push_back(sum);
  return report;
}

namespace {

SubtractionSet make_I() {
  return SubtractionSet::rule(SubtractionSet::Kind::Derived, "I", [](Position n) { return in_I(n); });
}

}  // namespace

TernaryConstruction::TernaryConstruction()
    : seq_(RepresentingSequence::odd_fibonacci()),
      word_(seq_),
      sets_(seq_),
      i_(make_I()),
      t_(sets_.T_set()) {}

}  // namespace apnim
