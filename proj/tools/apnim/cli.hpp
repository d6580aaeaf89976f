#pragma once

#include <iosfwd>
#include <string_view>

#include "apnim/game.hpp"
#include "apnim/numeration.hpp"

namespace apnim::cli {

enum ExitCode : int { kOk = 0, kFail = 1, kLimit = 2, kUsage = 3 };

/// Set specifications:
///   1,4,12                  explicit list
///   mod3:1                  n >= 1 with n % 3 == 1
///   all                     every positive integer
///   construction:k=2:T      T, V or I of the alphabet-k construction (I needs k = 2)
///   3*(1,2,3)               a scaled set
SubtractionSet parse_set_spec(std::string_view spec);

/// Sequence specifications: oddfib, zeck, pow:B, residue, family:k=K,
/// closed:k=K, promote:SPEC, or an explicit list "1,2,5,13".
RepresentingSequence parse_seq_spec(std::string_view spec);

/// Teletype game against the engine from position `start`. The human moves
/// first unless `engine_first`.
int play(const SubtractionSet& s, Position start, bool engine_first, std::istream& in,
         std::ostream& out);

/// Entry point; argv[0] is the program name.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace apnim::cli
