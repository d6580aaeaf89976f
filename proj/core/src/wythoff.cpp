#include "apnim/wythoff.hpp"

#include <cmath>
#include <limits>

#include "apnim/errors.hpp"

namespace apnim {

namespace {

__extension__ using U128 = unsigned __int128;

U128 isqrt(U128 v) {
  U128 x = static_cast<U128>(std::sqrt(static_cast<long double>(v)));
  while (x * x > v) --x;
  while ((x + 1) * (x + 1) <= v) ++x;
  return x;
}

// Largest n whose floor(n·φ²) fits in 64 bits.
constexpr Term kMaxIndex = 7'046'029'254'386'353'130ULL;

}  // namespace

Term wythoff_lower(Term n) {
  if (n > kMaxIndex) throw OverflowError("Wythoff index " + std::to_string(n) + " too large");
  const U128 wide = n;
  // sqrt(5) n is irrational for n > 0, so floor((n + sqrt(5n²)) / 2) only
  // needs the integer square root.
  return static_cast<Term>((wide + isqrt(5 * wide * wide)) / 2);
}

Term wythoff_upper(Term n) { return wythoff_lower(n) + n; }

bool in_lower_wythoff(Term m) {
  if (m == 0) return false;
  if (m > kMaxIndex) throw OverflowError("Wythoff membership of " + std::to_string(m));
  // floor(n·φ) = m forces n = ceil(m/φ), and floor(m/φ) = floor(m·φ) - m.
  const Term guess = wythoff_lower(m) - m;
  for (Term n = guess; n <= guess + 1; ++n) {
    if (n >= 1 && wythoff_lower(n) == m) return true;
  }
  return false;
}

bool in_upper_wythoff(Term m) { return m == 0 || !in_lower_wythoff(m); }

WythoffClass wythoff_class(Term n) {
  if (n == 0) return WythoffClass::Upper;
  const DigitString z = represent(RepresentingSequence::zeckendorf(), n);
  return z.trailing_zeros() % 2 == 1 ? WythoffClass::Upper : WythoffClass::Lower;
}

WythoffClass wythoff_class_exact(Term n) {
  return in_upper_wythoff(n) ? WythoffClass::Upper : WythoffClass::Lower;
}

std::int64_t floor_phi_squared(std::int64_t ell) {
  if (ell == 0) return 0;
  const Term mag = ell > 0 ? static_cast<Term>(ell) : static_cast<Term>(-(ell + 1)) + 1;
  const Term up = wythoff_upper(mag);
  if (up > static_cast<Term>(std::numeric_limits<std::int64_t>::max()) - 1) {
    throw OverflowError("floor(ℓφ²) out of range");
  }
  const auto v = static_cast<std::int64_t>(up);
  // ℓφ² is irrational, so floor(-x) = -floor(x) - 1.
  return ell > 0 ? v : -v - 1;
}

BeattyWitness beatty_difference_witness(Term a, Term b) {
  constexpr auto kMax = static_cast<Term>(std::numeric_limits<std::int64_t>::max());
  if (a > kMax / 4 || b > kMax / 4) throw OverflowError("Beatty index too large");
  BeattyWitness w;
  w.ell = static_cast<std::int64_t>(a) - static_cast<std::int64_t>(b);
  const auto m = a == 0 ? 0 : static_cast<std::int64_t>(wythoff_upper(a));
  const auto n = b == 0 ? 0 : static_cast<std::int64_t>(wythoff_upper(b));
  w.difference = m - n;
  const std::int64_t lo = floor_phi_squared(w.ell);
  const std::int64_t hi = w.ell == 0 ? 0 : lo + 1;
  if (w.difference == lo) {
    w.side = BeattyWitness::Side::Floor;
  } else if (w.difference == hi) {
    w.side = BeattyWitness::Side::Ceiling;
  }
  return w;
}

}  // namespace apnim
