#include "apnim/periodicity.hpp"

#include <algorithm>
#include <string>

#include "apnim/errors.hpp"

namespace apnim {

Symbol PeriodDecomposition::at(Position n) const {
  if (n < prefix.size()) return prefix[n];
  if (period.empty()) throw PreconditionError("decomposition has an empty period");
  return period[(n - prefix.size()) % period.size()];
}

Word PeriodDecomposition::expand(std::size_t length) const {
  Word out(length);
  for (std::size_t n = 0; n < length; ++n) out[n] = at(n);
  return out;
}

namespace {

// x[j] == mex{x[j-s] : s in S} for j in [max S, |x|).
bool satisfies_recurrence(std::span<const Symbol> x, std::span<const Position> moves) {
  const Position top = moves.back();
  std::vector<std::uint32_t> stamp(moves.size() + 2, 0);
  std::uint32_t round = 0;
  for (std::size_t j = top; j < x.size(); ++j) {
    ++round;
    for (Position s : moves) {
      const Symbol v = x[j - s];
      if (v < stamp.size()) stamp[v] = round;
    }
    Symbol m = 0;
    while (stamp[m] == round) ++m;
    if (x[j] != m) return false;
  }
  return true;
}

}  // namespace

std::optional<PeriodDecomposition> period_and_prefix_of(std::span<const Symbol> w,
                                                        const SubtractionSet& s) {
  const auto moves = s.elements();
  if (moves.empty()) throw PreconditionError("period_and_prefix needs a nonempty set");
  const std::size_t top = moves.back();
  const std::size_t n = w.size();
  if (n < 2 * top + 1) return std::nullopt;
  // i runs from n-1 down to 2*max S, so q = n - i runs upward.
  for (std::size_t q = 1; q + 2 * top <= n; ++q) {
    const std::size_t copies = (2 * top + q - 1) / q + 1;
    const std::size_t xlen = q * copies;
    if (xlen > n) continue;
    // w ends in v^copies iff w[t] == w[t-q] over the last xlen - q places.
    bool tail_ok = true;
    for (std::size_t t = n; t-- > n - xlen + q;) {
      if (w[t] != w[t - q]) {
        tail_ok = false;
        break;
      }
    }
    if (!tail_ok) continue;
    const auto x = w.subspan(n - xlen);
    if (!satisfies_recurrence(x, moves)) continue;
    PeriodDecomposition d;
    d.prefix.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n - xlen));
    d.period.assign(w.end() - static_cast<std::ptrdiff_t>(q), w.end());
    while (!d.prefix.empty() && d.prefix.back() == d.period.back()) {
      std::rotate(d.period.rbegin(), d.period.rbegin() + 1, d.period.rend());
      d.prefix.pop_back();
    }
    return d;
  }
  return std::nullopt;
}

PeriodDecomposition period_and_prefix(const SubtractionSet& s, const PeriodOptions& options) {
  if (!s.is_finite()) throw PreconditionError("period_and_prefix needs a finite set");
  if (s.elements().empty()) throw PreconditionError("period_and_prefix needs a nonempty set");
  std::size_t n = std::max<std::size_t>(options.initial_length, 1);
  while (true) {
    if (n > options.max_length) {
      throw ResourceLimitError("no period of " + s.description() + " certified within " +
                               std::to_string(options.max_length) + " terms");
    }
    const Word w = nim_sequence(s, n, Limits{options.max_length});
    if (auto d = period_and_prefix_of(w, s)) return *std::move(d);
    n *= 2;
  }
}

CheckReport verify_decomposition(const SubtractionSet& s, const PeriodDecomposition& d,
                                 Position horizon) {
  CheckReport report;
  if (d.period.empty()) {
    report.passed = false;
    report.detail = "empty period";
    return report;
  }
  const Word w = nim_sequence(s, horizon);
  for (Position n = 0; n < horizon; ++n) {
    if (w[n] != d.at(n)) {
      report.passed = false;
      report.violation = n;
      report.detail = "position " + std::to_string(n) + ": SG " + std::to_string(w[n]) +
                      ", decomposition " + std::to_string(d.at(n));
      return report;
    }
  }
  return report;
}

}  // namespace apnim
