#include "apnim/numeration.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <mutex>

#include "apnim/errors.hpp"

namespace apnim {

struct RepresentingSequence::State {
  std::string name;
  bool finite = false;
  Rule rule;

  std::mutex mutex;
  std::shared_ptr<const std::vector<Term>> terms = std::make_shared<std::vector<Term>>();
  // Set once the rule has no further representable term.
  bool overflowed = false;

  std::shared_ptr<const std::vector<Term>> snapshot() {
    std::lock_guard lock(mutex);
    return terms;
  }

  // Grows the cache until `done(terms)` holds or no further term exists.
  template <typename Pred>
  std::shared_ptr<const std::vector<Term>> grow_until(Pred done) {
    std::lock_guard lock(mutex);
    if (finite || overflowed || done(*terms)) return terms;
    auto next = std::make_shared<std::vector<Term>>(*terms);
    while (!done(*next)) {
      const auto t = rule(*next);
      if (!t) {
        overflowed = true;
        break;
      }
      if (*t <= next->back()) {
        throw PreconditionError(name + ": rule produced a non-increasing term " +
                                std::to_string(*t));
      }
      next->push_back(*t);
    }
    terms = std::move(next);
    return terms;
  }
};

namespace {

void check_increasing(const std::string& name, const std::vector<Term>& terms) {
  if (terms.empty() || terms.front() != 1) {
    throw PreconditionError(name + ": a representing sequence starts at 1");
  }
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i] <= terms[i - 1]) {
      throw PreconditionError(name + ": terms must increase strictly");
    }
  }
}

std::optional<Term> checked_mul(Term a, Term b) {
  Term r = 0;
  if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
  return r;
}

}  // namespace

RepresentingSequence::RepresentingSequence(std::shared_ptr<State> state)
    : state_(std::move(state)) {}

RepresentingSequence RepresentingSequence::finite(std::vector<Term> terms) {
  auto state = std::make_shared<State>();
  std::string name = "(";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) name += ',';
    name += std::to_string(terms[i]);
  }
  state->name = name + ")";
  check_increasing(state->name, terms);
  state->finite = true;
  state->terms = std::make_shared<const std::vector<Term>>(std::move(terms));
  return RepresentingSequence(std::move(state));
}

RepresentingSequence RepresentingSequence::from_rule(std::string name, std::vector<Term> seed,
                                                     Rule rule) {
  check_increasing(name, seed);
  auto state = std::make_shared<State>();
  state->name = std::move(name);
  state->rule = std::move(rule);
  state->terms = std::make_shared<const std::vector<Term>>(std::move(seed));
  return RepresentingSequence(std::move(state));
}

RepresentingSequence RepresentingSequence::from_function(
    std::string name, std::function<std::optional<Term>(std::size_t)> f) {
  const auto first = f(0);
  if (!first) throw OverflowError(name + ": first term does not fit");
  return from_rule(std::move(name), {*first},
                   [f = std::move(f)](std::span<const Term> prev) { return f(prev.size()); });
}

RepresentingSequence RepresentingSequence::linear(std::string name, std::vector<Term> initial,
                                                  std::vector<std::int64_t> coefficients) {
  if (initial.size() < coefficients.size()) {
    throw PreconditionError(name + ": recurrence needs as many seed terms as coefficients");
  }
  auto rule = [coefficients = std::move(coefficients)](std::span<const Term> prev)
      -> std::optional<Term> {
    __extension__ using Wide = __int128;
    Wide sum = 0;
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
      sum += static_cast<Wide>(coefficients[j]) * static_cast<Wide>(prev[prev.size() - 1 - j]);
    }
    if (sum < 0 || sum > static_cast<Wide>(std::numeric_limits<Term>::max())) {
      return std::nullopt;
    }
    return static_cast<Term>(sum);
  };
  return from_rule(std::move(name), std::move(initial), std::move(rule));
}

RepresentingSequence RepresentingSequence::odd_fibonacci() {
  return linear("oddfib", {1, 2}, {3, -1});
}

RepresentingSequence RepresentingSequence::zeckendorf() {
  return linear("zeck", {1, 2}, {1, 1});
}

RepresentingSequence RepresentingSequence::powers(Term base) {
  if (base < 2) throw PreconditionError("powers need a base of at least 2");
  return from_rule("pow:" + std::to_string(base), {1},
                   [base](std::span<const Term> prev) { return checked_mul(prev.back(), base); });
}

RepresentingSequence RepresentingSequence::residue_one_mod_three() {
  return from_function("residue", [](std::size_t i) -> std::optional<Term> {
    if (i == 0) return 1;
    const auto t = checked_mul(3, i);
    if (!t) return std::nullopt;
    return *t - 1;
  });
}

const std::string& RepresentingSequence::name() const { return state_->name; }

bool RepresentingSequence::is_finite() const { return state_->finite; }

std::optional<Term> RepresentingSequence::try_term(std::size_t i) const {
  auto terms = state_->snapshot();
  if (i < terms->size()) return (*terms)[i];
  if (state_->finite) return std::nullopt;
  terms = state_->grow_until([i](const std::vector<Term>& t) { return t.size() > i; });
  if (i < terms->size()) return (*terms)[i];
  throw OverflowError(name() + ": term " + std::to_string(i) + " does not fit in 64 bits");
}

Term RepresentingSequence::term(std::size_t i) const {
  const auto t = try_term(i);
  if (!t) {
    throw PreconditionError(name() + " has only " + std::to_string(state_->snapshot()->size()) +
                            " terms");
  }
  return *t;
}

std::shared_ptr<const std::vector<Term>> RepresentingSequence::terms_covering(Term bound) const {
  auto terms = state_->snapshot();
  if (state_->finite || terms->back() > bound) return terms;
  return state_->grow_until([bound](const std::vector<Term>& t) { return t.back() > bound; });
}

std::vector<Term> RepresentingSequence::prefix(std::size_t count) const {
  std::vector<Term> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto t = try_term(i);
    if (!t) break;
    out.push_back(*t);
  }
  return out;
}

DigitString DigitString::parse(std::string_view text) {
  std::vector<Digit> msb;
  if (text.find(',') == std::string_view::npos) {
    for (char c : text) {
      if (c < '0' || c > '9') throw ParseError("bad digit string: " + std::string(text));
      msb.push_back(static_cast<Digit>(c - '0'));
    }
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t comma = std::min(text.find(',', pos), text.size());
      const auto item = text.substr(pos, comma - pos);
      Digit d = 0;
      const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), d);
      if (item.empty() || ec != std::errc{} || end != item.data() + item.size()) {
        throw ParseError("bad digit string: " + std::string(text));
      }
      msb.push_back(d);
      pos = comma + 1;
    }
  }
  std::reverse(msb.begin(), msb.end());
  return DigitString(std::move(msb));
}

std::string DigitString::to_string() const {
  const bool small = std::all_of(digits.begin(), digits.end(), [](Digit d) { return d <= 9; });
  std::string out;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (small) {
      out.push_back(static_cast<char>('0' + digits[i]));
    } else {
      if (!out.empty()) out.push_back(',');
      out += std::to_string(digits[i]);
    }
  }
  return out;
}

DigitString& DigitString::trim() {
  while (!digits.empty() && digits.back() == 0) digits.pop_back();
  return *this;
}

std::size_t DigitString::trailing_zeros() const {
  std::size_t z = 0;
  while (z < digits.size() && digits[z] == 0) ++z;
  return z;
}

namespace {

// j with terms[j] <= n < terms[j+1], where terms covers n.
std::size_t index_in(const std::vector<Term>& terms, Term n) {
  const auto it = std::upper_bound(terms.begin(), terms.end(), n);
  return static_cast<std::size_t>(it - terms.begin()) - 1;
}

}  // namespace

std::size_t index_of(const RepresentingSequence& seq, Term n) {
  if (n == 0) throw PreconditionError("index_of needs n >= 1");
  return index_in(*seq.terms_covering(n), n);
}

DigitString represent(const RepresentingSequence& seq, Term n) {
  DigitString out;
  if (n == 0) return out;
  const auto terms = seq.terms_covering(n);
  const std::size_t top = index_in(*terms, n);
  out.digits.assign(top + 1, 0);
  for (std::size_t j = top + 1; j-- > 0;) {
    out.digits[j] = n / (*terms)[j];
    n %= (*terms)[j];
  }
  return out;
}

Term value_of(const RepresentingSequence& seq, const DigitString& d) {
  Term total = 0;
  for (std::size_t j = 0; j < d.digits.size(); ++j) {
    if (d.digits[j] == 0) continue;
    const auto t = seq.try_term(j);
    if (!t) throw PreconditionError("digit at place " + std::to_string(j) + " has no term");
    Term part = 0;
    if (__builtin_mul_overflow(d.digits[j], *t, &part) ||
        __builtin_add_overflow(total, part, &total)) {
      throw OverflowError("value of " + d.to_string() + " does not fit in 64 bits");
    }
  }
  return total;
}

bool is_volatile(const RepresentingSequence& seq, Term n, std::size_t m) {
  if (n == std::numeric_limits<Term>::max()) throw OverflowError("n + 1 overflows");
  return represent(seq, n + 1).trailing_zeros() >= m;
}

bool is_zend(const RepresentingSequence& seq, Term n) {
  if (n == 0) return true;
  return represent(seq, n).digits.front() == 0;
}

std::optional<Digit> place_bound(const RepresentingSequence& seq, std::size_t j) {
  const auto next = seq.try_term(j + 1);
  if (!next) return std::nullopt;
  const DigitString d = represent(seq, *next - 1);
  return d.digits.size() == j + 1 ? d.digits.back() : 0;
}

}  // namespace apnim
