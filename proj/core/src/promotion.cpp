#include "apnim/construction.hpp"

#include <algorithm>
#include <limits>

#include "apnim/errors.hpp"

namespace apnim {

namespace {

// Σ d_ℓ b_ℓ with the place-(j-1) digit raised by one when it is nonzero.
std::optional<Term> promoted_sum(const DigitString& d, std::span<const Term> b, std::size_t j) {
  Term total = 0;
  for (std::size_t place = 0; place < d.size(); ++place) {
    Digit digit = d[place];
    if (place + 1 == j && digit > 0) ++digit;
    if (digit == 0) continue;
    Term part = 0;
    if (__builtin_mul_overflow(digit, b[place], &part) ||
        __builtin_add_overflow(total, part, &total)) {
      return std::nullopt;
    }
  }
  return total;
}

}  // namespace

RepresentingSequence promote(const RepresentingSequence& base, std::size_t j) {
  if (j < 1) throw PreconditionError("promotion position must be at least 1");
  auto rule = [base, j](std::span<const Term> b) -> std::optional<Term> {
    const std::size_t i = b.size();
    std::optional<Term> a;
    try {
      a = base.try_term(i);
    } catch (const OverflowError&) {
      return std::nullopt;
    }
    if (!a) return std::nullopt;
    if (i < j) return *a;
    const auto sum = promoted_sum(represent(base, *a - 1), b, j);
    if (!sum || *sum == std::numeric_limits<Term>::max()) return std::nullopt;
    return *sum + 1;
  };
  std::vector<Term> seed{1};
  return RepresentingSequence::from_rule(base.name() + "^" + std::to_string(j), std::move(seed),
                                         std::move(rule));
}

PromotionMap::PromotionMap(RepresentingSequence base, std::size_t j)
    : base_(std::move(base)), j_(j), promoted_(promote(base_, j)) {}

Term PromotionMap::operator()(Term n) const {
  if (j_ >= 2 && n < base_.term(j_ - 1)) return n;
  if (n == 0) return 0;
  const DigitString d = represent(base_, n);
  std::vector<Term> b;
  b.reserve(d.size());
  for (std::size_t place = 0; place < d.size(); ++place) b.push_back(promoted_.term(place));
  const auto sum = promoted_sum(d, b, j_);
  if (!sum) throw OverflowError("promotion of " + std::to_string(n) + " overflows");
  return *sum;
}

Term promotion_value(const RepresentingSequence& base, std::size_t j, Term n) {
  return PromotionMap(base, j)(n);
}

Word promote_word(std::span<const Symbol> w) {
  Word out;
  out.reserve(w.size() * 2);
  for (Symbol s : w) {
    if (s == 0) {
      out.push_back(0);
      out.push_back(1);
    } else {
      out.push_back(s + 1);
    }
  }
  return out;
}

SubtractionSet promoted_subtraction_set(const SubtractionSet& s, const RepresentingSequence& base) {
  const PromotionMap f(base, 1);
  auto member = [s, f](Position m) {
    if (m == 1) return true;
    // f is strictly increasing with f(n) >= n.
    Position lo = 0;
    Position hi = m;
    while (lo < hi) {
      const Position mid = lo + (hi - lo) / 2;
      if (f(mid) < m) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return f(lo) == m && s.contains(lo);
  };
  auto enumerate = [s, f](Position bound) {
    std::vector<Position> out;
    if (bound >= 1) out.push_back(1);
    for (Position x : s.elements_up_to(bound)) {
      const Term y = f(x);
      if (y > bound) break;
      if (y != 1) out.push_back(y);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  return SubtractionSet::rule(SubtractionSet::Kind::Derived, "f(" + s.description() + ")+{1}",
                              member, enumerate);
}

Family family(Symbol k) {
  if (k < 2) throw PreconditionError("family needs k >= 2");
  RepresentingSequence seq = RepresentingSequence::odd_fibonacci();
  for (Symbol step = 2; step < k; ++step) seq = promote(seq, 1);
  RepWord word(seq);
  DerivedSets sets(seq);
  return Family{seq, word, sets.T_set()};
}

RepresentingSequence family_closed_form(Symbol k) {
  if (k < 2) throw PreconditionError("family needs k >= 2");
  return RepresentingSequence::linear("closed:k=" + std::to_string(k), {1, k}, {3, -1});
}

}  // namespace apnim
