#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace apnim {

/// One letter of a word over the nonnegative integers.
using Symbol = std::uint32_t;

/// Finite word; Nim sequences and representation words are stored this way.
using Word = std::vector<Symbol>;

/// Renders symbols as one character each when all are <= 9, otherwise as a
/// comma-separated list.
std::string to_string(std::span<const Symbol> word);

/// Inverse of to_string. Accepts "0101" or "0,10,3"; an empty string is the empty word.
Word parse_word(std::string_view text);

/// `word` concatenated with itself `times` times.
Word repeat(std::span<const Symbol> word, std::size_t times);

/// First `length` symbols of word^omega. `word` must be nonempty.
Word periodic_prefix(std::span<const Symbol> word, std::size_t length);

bool is_prefix(std::span<const Symbol> prefix, std::span<const Symbol> word);

/// True when `word` is not a proper power of a shorter word.
bool is_primitive(std::span<const Symbol> word);

/// Smallest p >= 1 with word[n] == word[n + p] over the whole window, or
/// word.size() when there is none.
std::size_t smallest_period(std::span<const Symbol> word);

/// A morphism on words, given by the image of each letter 0..images.size()-1.
class Morphism {
 public:
  explicit Morphism(std::vector<Word> images);

  /// Image of `word`. Letters without an image are a PreconditionError.
  Word apply(std::span<const Symbol> word) const;

  /// The `times`-fold iterate applied to `seed`.
  Word iterate(Word seed, std::size_t times) const;

  const std::vector<Word>& images() const { return images_; }

 private:
  std::vector<Word> images_;
};

}  // namespace apnim
