#include "apnim/game.hpp"

#include <algorithm>
#include <utility>

#include "apnim/errors.hpp"

namespace apnim {

SubtractionSet SubtractionSet::finite(std::vector<Position> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!elements.empty() && elements.front() == 0) {
    throw PreconditionError("subtraction sets contain positive integers only");
  }
  SubtractionSet out;
  out.kind_ = Kind::Finite;
  std::string d = "{";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) d += ',';
    d += std::to_string(elements[i]);
  }
  out.description_ = d + "}";
  out.elements_ = std::move(elements);
  return out;
}

SubtractionSet SubtractionSet::residue(Position modulus, Position residue) {
  if (modulus == 0) throw PreconditionError("residue rule needs a positive modulus");
  const Position r = residue % modulus;
  auto member = [modulus, r](Position n) { return n >= 1 && n % modulus == r; };
  auto enumerate = [modulus, r](Position bound) {
    std::vector<Position> out;
    for (Position n = (r == 0 ? modulus : r); n <= bound; n += modulus) out.push_back(n);
    return out;
  };
  return rule(Kind::Residue, "mod" + std::to_string(modulus) + ":" + std::to_string(r), member,
              enumerate);
}

SubtractionSet SubtractionSet::all() {
  return rule(Kind::Predicate, "all", [](Position n) { return n >= 1; });
}

SubtractionSet SubtractionSet::rule(Kind kind, std::string description, Membership member,
                                    Enumerator enumerate) {
  if (kind == Kind::Finite) throw PreconditionError("use SubtractionSet::finite for lists");
  if (!member) throw PreconditionError("rule needs a membership predicate");
  SubtractionSet out;
  out.kind_ = kind;
  out.description_ = std::move(description);
  out.member_ = std::move(member);
  out.enumerate_ = std::move(enumerate);
  return out;
}

bool SubtractionSet::contains(Position n) const {
  if (n == 0) return false;
  if (is_finite()) return std::binary_search(elements_.begin(), elements_.end(), n);
  return member_(n);
}

std::vector<Position> SubtractionSet::elements_up_to(Position bound) const {
  if (is_finite()) {
    return {elements_.begin(), std::upper_bound(elements_.begin(), elements_.end(), bound)};
  }
  if (enumerate_) return enumerate_(bound);
  std::vector<Position> out;
  for (Position n = 1; n <= bound; ++n) {
    if (member_(n)) out.push_back(n);
  }
  return out;
}

std::span<const Position> SubtractionSet::elements() const {
  if (!is_finite()) throw PreconditionError("elements() needs a finite set, got " + description_);
  return elements_;
}

Position SubtractionSet::max_element() const {
  const auto e = elements();
  if (e.empty()) throw PreconditionError("empty subtraction set has no maximum");
  return e.back();
}

std::optional<Position> SubtractionSet::min_element(Position bound) const {
  if (is_finite()) {
    if (elements_.empty() || elements_.front() > bound) return std::nullopt;
    return elements_.front();
  }
  for (Position n = 1; n <= bound; ++n) {
    if (member_(n)) return n;
  }
  return std::nullopt;
}

SubtractionSet SubtractionSet::truncated(Position bound) const {
  return finite(elements_up_to(bound));
}

SubtractionSet SubtractionSet::scaled(Position g) const {
  if (g == 0) throw PreconditionError("scale factor must be positive");
  if (is_finite()) {
    std::vector<Position> e;
    e.reserve(elements_.size());
    for (Position x : elements_) e.push_back(x * g);
    return finite(std::move(e));
  }
  auto base = *this;
  return rule(
      kind_, std::to_string(g) + "*(" + description_ + ")",
      [base, g](Position n) { return n % g == 0 && base.contains(n / g); },
      [base, g](Position bound) {
        auto e = base.elements_up_to(bound / g);
        for (auto& x : e) x *= g;
        return e;
      });
}

Symbol mex(std::span<const Symbol> values) {
  std::vector<bool> seen(values.size() + 1, false);
  for (Symbol v : values) {
    if (v < seen.size()) seen[v] = true;
  }
  Symbol m = 0;
  while (seen[m]) ++m;
  return m;
}

namespace {

void check_length(std::size_t length, const Limits& limits) {
  if (length > limits.max_length) {
    throw ResourceLimitError("table length " + std::to_string(length) + " exceeds limit " +
                             std::to_string(limits.max_length));
  }
}

// Appends values for positions table.size() .. length-1. `moves` must hold
// every element of S below `length`, sorted.
void fill(Word& table, std::span<const Position> moves, std::size_t length) {
  std::vector<std::uint32_t> stamp(moves.size() + 2, 0);
  std::uint32_t round = 0;
  table.reserve(length);
  for (std::size_t n = table.size(); n < length; ++n) {
    if (++round == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      round = 1;
    }
    for (Position s : moves) {
      if (s > n) break;
      const Symbol v = table[n - s];
      if (v < stamp.size()) stamp[v] = round;
    }
    Symbol m = 0;
    while (stamp[m] == round) ++m;
    table.push_back(m);
  }
}

}  // namespace

Word nim_sequence(const SubtractionSet& s, std::size_t length, const Limits& limits) {
  check_length(length, limits);
  Word table;
  if (length == 0) return table;
  const auto moves = s.elements_up_to(length - 1);
  fill(table, moves, length);
  return table;
}

Solver::Solver(SubtractionSet s, Limits limits) : set_(std::move(s)), limits_(limits) {}

void Solver::extend_to(Position n) {
  if (n < table_.size()) return;
  std::size_t target = std::max<std::size_t>(64, table_.size());
  while (target <= n) target *= 2;
  target = std::min<std::size_t>(target, limits_.max_length);
  if (n >= target) check_length(n + 1, limits_);
  if (target - 1 > moves_bound_ || moves_.empty()) {
    moves_ = set_.elements_up_to(target - 1);
    moves_bound_ = target - 1;
  }
  fill(table_, moves_, target);
}

Symbol Solver::value(Position n) {
  extend_to(n);
  return table_[n];
}

std::optional<Position> Solver::best_move(Position n) {
  extend_to(n);
  if (table_[n] == 0) return std::nullopt;
  for (Position s : moves_) {
    if (s > n) break;
    if (table_[n - s] == 0) return s;
  }
  return std::nullopt;
}

std::optional<Position> best_move(const SubtractionSet& s, Position n, const Limits& limits) {
  check_length(n + 1, limits);
  const Word table = nim_sequence(s, n + 1, limits);
  if (table[n] == 0) return std::nullopt;
  for (Position m : s.elements_up_to(n)) {
    if (table[n - m] == 0) return m;
  }
  return std::nullopt;
}

CheckReport check_generalized_ferguson(std::span<const Symbol> values, const SubtractionSet& s,
                                       Position horizon) {
  CheckReport report;
  const std::size_t limit = std::min<std::size_t>(values.size(), horizon + 1);
  const auto smin = s.min_element(limit == 0 ? 0 : limit - 1);
  if (!smin) {
    report.detail = "no moves below horizon";
    return report;
  }
  const Position step = *smin;
  // Value bound: the least j with j*step outside S. Taking the multiple
  // itself as the bound is wrong as soon as step > 1 ({2,5} breaks it).
  Position bound = 1;
  while (s.contains(bound * step)) ++bound;
  for (std::size_t m = 0; m + step < limit; ++m) {
    const Symbol here = values[m];
    const Symbol next = values[m + step];
    if (here + 1 < bound && next != here + 1) {
      report.passed = false;
      report.violation = m;
      report.detail = "SG(" + std::to_string(m) + ")=" + std::to_string(here) + " but SG(" +
                      std::to_string(m + step) + ")=" + std::to_string(next);
      return report;
    }
    if (next > 0 && next + 1 <= bound && here + 1 != next) {
      report.passed = false;
      report.violation = m;
      report.detail = "SG(" + std::to_string(m + step) + ")=" + std::to_string(next) +
                      " but SG(" + std::to_string(m) + ")=" + std::to_string(here);
      return report;
    }
  }
  return report;
}

CheckReport check_gcd_scaling(const SubtractionSet& s, Position g, Position horizon) {
  if (g < 2) throw PreconditionError("scaling factor must be at least 2");
  CheckReport report;
  const Word base = nim_sequence(s, horizon / g + 1);
  const Word scaled = nim_sequence(s.scaled(g), horizon + 1);
  for (Position n = 0; n <= horizon; ++n) {
    if (scaled[n] != base[n / g]) {
      report.passed = false;
      report.violation = n;
      report.detail = "SG_gS(" + std::to_string(n) + ")=" + std::to_string(scaled[n]) +
                      " but SG_S(" + std::to_string(n / g) + ")=" + std::to_string(base[n / g]);
      return report;
    }
  }
  return report;
}

CheckReport check_binary_period(const SubtractionSet& s, Position horizon) {
  const Word table = nim_sequence(s, horizon + 1);
  for (Position n = 0; n <= horizon; ++n) {
    if (table[n] >= 2) {
      throw PreconditionError("Nim sequence of " + s.description() + " is not binary: SG(" +
                              std::to_string(n) + ")=" + std::to_string(table[n]));
    }
  }
  CheckReport report;
  const auto smin = s.min_element(horizon);
  if (!smin) {
    // No moves: the all-zero table is the s = infinity case.
    report.passed = std::all_of(table.begin(), table.end(), [](Symbol v) { return v == 0; });
    return report;
  }
  const Position step = *smin;
  for (Position n = 0; n <= horizon; ++n) {
    const Symbol expected = (n / step) % 2;
    if (table[n] != expected) {
      report.passed = false;
      report.violation = n;
      report.detail = "SG(" + std::to_string(n) + ")=" + std::to_string(table[n]) +
                      ", pattern wants " + std::to_string(expected);
      return report;
    }
  }
  return report;
}

}  // namespace apnim
