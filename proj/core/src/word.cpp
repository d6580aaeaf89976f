#include "apnim/word.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "apnim/errors.hpp"

namespace apnim {

std::string to_string(std::span<const Symbol> word) {
  const bool single_digits =
      std::all_of(word.begin(), word.end(), [](Symbol s) { return s <= 9; });
  std::string out;
  if (single_digits) {
    out.reserve(word.size());
    for (Symbol s : word) out.push_back(static_cast<char>('0' + s));
    return out;
  }
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i != 0) out.push_back(',');
    out += std::to_string(word[i]);
  }
  return out;
}

Word parse_word(std::string_view text) {
  Word out;
  if (text.empty()) return out;
  if (text.find(',') == std::string_view::npos) {
    out.reserve(text.size());
    for (char c : text) {
      if (c < '0' || c > '9') throw ParseError("bad symbol in word: " + std::string(text));
      out.push_back(static_cast<Symbol>(c - '0'));
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    Symbol value = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc{} || end != item.data() + item.size() || item.empty()) {
      throw ParseError("bad symbol in word: " + std::string(text));
    }
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

Word repeat(std::span<const Symbol> word, std::size_t times) {
  Word out;
  out.reserve(word.size() * times);
  for (std::size_t i = 0; i < times; ++i) out.insert(out.end(), word.begin(), word.end());
  return out;
}

Word periodic_prefix(std::span<const Symbol> word, std::size_t length) {
  if (word.empty()) throw PreconditionError("periodic_prefix: empty period");
  Word out(length);
  for (std::size_t i = 0; i < length; ++i) out[i] = word[i % word.size()];
  return out;
}

bool is_prefix(std::span<const Symbol> prefix, std::span<const Symbol> word) {
  return prefix.size() <= word.size() && std::equal(prefix.begin(), prefix.end(), word.begin());
}

std::size_t smallest_period(std::span<const Symbol> word) {
  // Failure function of the word; the shortest period is |w| - border(w).
  const std::size_t n = word.size();
  if (n == 0) return 0;
  std::vector<std::size_t> border(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t b = border[i - 1];
    while (b > 0 && word[i] != word[b]) b = border[b - 1];
    if (word[i] == word[b]) ++b;
    border[i] = b;
  }
  return n - border[n - 1];
}

bool is_primitive(std::span<const Symbol> word) {
  const std::size_t n = word.size();
  if (n == 0) return false;
  const std::size_t p = smallest_period(word);
  return p == n || n % p != 0;
}

Morphism::Morphism(std::vector<Word> images) : images_(std::move(images)) {}

Word Morphism::apply(std::span<const Symbol> word) const {
  Word out;
  for (Symbol s : word) {
    if (s >= images_.size()) {
      throw PreconditionError("morphism has no image for letter " + std::to_string(s));
    }
    const Word& image = images_[s];
    out.insert(out.end(), image.begin(), image.end());
  }
  return out;
}

Word Morphism::iterate(Word seed, std::size_t times) const {
  for (std::size_t i = 0; i < times; ++i) seed = apply(seed);
  return seed;
}

}  // namespace apnim
