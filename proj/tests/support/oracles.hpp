#pragma once

// Brute-force reference implementations. Kept deliberately naive and free of
// library calls so they can check the optimised code paths.

#include <cstdint>
#include <fstream>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace apnim::oracle {

using Values = std::vector<std::uint32_t>;
using Number = std::uint64_t;

inline Values nim_values(const std::function<bool(Number)>& in_set, std::size_t len) {
  Values g(len);
  for (std::size_t n = 0; n < len; ++n) {
    std::set<std::uint32_t> seen;
    for (Number s = 1; s <= n; ++s) {
      if (in_set(s)) seen.insert(g[n - s]);
    }
    std::uint32_t m = 0;
    while (seen.count(m)) ++m;
    g[n] = m;
  }
  return g;
}

inline Values nim_values(const std::vector<Number>& set, std::size_t len) {
  const std::set<Number> members(set.begin(), set.end());
  return nim_values([&](Number s) { return members.count(s) > 0; }, len);
}

// Greedy digits, least significant first.
inline std::vector<Number> greedy_digits(const std::vector<Number>& terms, Number n) {
  std::size_t j = 0;
  while (j + 1 < terms.size() && terms[j + 1] <= n) ++j;
  std::vector<Number> d(n == 0 ? 0 : j + 1, 0);
  for (std::size_t i = d.size(); i-- > 0;) {
    d[i] = n / terms[i];
    n %= terms[i];
  }
  return d;
}

inline std::string digits_msb(const std::vector<Number>& d) {
  std::string s;
  for (std::size_t i = d.size(); i-- > 0;) s += std::to_string(d[i]);
  return s;
}

inline std::vector<Number> fibonacci_terms(std::size_t count) {
  // 1, 2, 3, 5, 8, ...
  std::vector<Number> f{1, 2};
  while (f.size() < count) f.push_back(f[f.size() - 1] + f[f.size() - 2]);
  f.resize(count);
  return f;
}

inline std::vector<Number> odd_fibonacci_terms(std::size_t count) {
  std::vector<Number> f{1, 2};
  while (f.size() < count) f.push_back(3 * f[f.size() - 1] - f[f.size() - 2]);
  f.resize(count);
  return f;
}

// Smallest p such that w[n] == w[n + p] on the whole window, or 0.
inline std::size_t window_period(const Values& w, std::size_t max_p) {
  for (std::size_t p = 1; p <= max_p && p < w.size(); ++p) {
    bool ok = true;
    for (std::size_t n = 0; ok && n + p < w.size(); ++n) ok = w[n] == w[n + p];
    if (ok) return p;
  }
  return 0;
}

inline Values parse_digits(const std::string& text) {
  Values w;
  for (char c : text) w.push_back(static_cast<std::uint32_t>(c - '0'));
  return w;
}

inline Values cycle(const std::string& period, std::size_t len) {
  const Values p = parse_digits(period);
  Values w(len);
  for (std::size_t i = 0; i < len; ++i) w[i] = p[i % p.size()];
  return w;
}

// OEIS b-file: "index value" per line.
inline std::vector<std::pair<Number, Number>> read_bfile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing fixture " + path);
  std::vector<std::pair<Number, Number>> rows;
  Number i = 0;
  Number v = 0;
  while (in >> i >> v) rows.emplace_back(i, v);
  return rows;
}

inline std::string fixture(const std::string& name) { return std::string(APNIM_FIXTURE_DIR) + "/" + name; }

}  // namespace apnim::oracle
