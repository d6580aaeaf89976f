#pragma once

#include <cstdint>

#include "apnim/numeration.hpp"

namespace apnim {

/// floor(n·φ), exact. OverflowError when floor(n·φ²) would not fit in 64 bits.
Term wythoff_lower(Term n);
/// floor(n·φ²) = floor(n·φ) + n, exact.
Term wythoff_upper(Term n);

/// m = floor(n·φ) for some n >= 1.
bool in_lower_wythoff(Term m);
/// m = floor(n·φ²) for some n >= 1, or m = 0.
bool in_upper_wythoff(Term m);

enum class WythoffClass { Lower, Upper };

/// By parity of trailing zeros of the Zeckendorf representation: odd (or
/// n = 0) is Upper, even is Lower.
WythoffClass wythoff_class(Term n);
/// By exact Beatty membership.
WythoffClass wythoff_class_exact(Term n);

/// floor(ℓ·φ²) for any integer ℓ.
std::int64_t floor_phi_squared(std::int64_t ell);

struct BeattyWitness {
  enum class Side { Floor, Ceiling, Neither };
  std::int64_t ell = 0;
  std::int64_t difference = 0;
  Side side = Side::Neither;
};

/// For m = floor(a·φ²) and n = floor(b·φ²): ℓ = a - b and whether m - n is
/// floor(ℓ·φ²) or ceil(ℓ·φ²).
BeattyWitness beatty_difference_witness(Term a, Term b);

}  // namespace apnim
