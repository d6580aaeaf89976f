#include <istream>
#include <ostream>
#include <string>

#include "apnim/errors.hpp"
#include "apnim/search.hpp"
#include "json.hpp"

namespace apnim {

namespace {

constexpr const char* kFormat = "apnim.search.checkpoint";
constexpr int kVersion = 1;

}  // namespace

void write_checkpoint(std::ostream& out, const SearchState& state) {
  nlohmann::json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["mode"] = state.mode;
  j["k"] = state.k;
  j["doubling"] = state.doubling;
  j["chain"] = state.chain;
  j["next_start"] = state.next_start;
  j["budget_spent"] = state.budget_spent;
  j["level_spent"] = state.level_spent;
  auto& history = j["history"] = nlohmann::json::array();
  for (const ChainStep& h : state.history) {
    history.push_back(
        {{"element", h.element}, {"period_length", h.period_length}, {"candidates", h.candidates}});
  }
  out << j.dump() << '\n';
  out.flush();
}

SearchState parse_checkpoint(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("checkpoint is not JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kFormat) throw ParseError("not a search checkpoint");
    if (j.at("version").get<int>() != kVersion) {
      throw ParseError("unsupported checkpoint version " + j.at("version").dump());
    }
    SearchState st;
    st.mode = j.at("mode").get<std::string>();
    st.k = j.at("k").get<Symbol>();
    st.doubling = j.at("doubling").get<bool>();
    st.chain = j.at("chain").get<std::vector<Position>>();
    st.next_start = j.at("next_start").get<Position>();
    st.budget_spent = j.at("budget_spent").get<Budget>();
    st.level_spent = j.at("level_spent").get<Budget>();
    for (const auto& h : j.at("history")) {
      st.history.push_back({h.at("element").get<Position>(), h.at("period_length").get<std::size_t>(),
                            h.at("candidates").get<Budget>()});
    }
    if (st.history.size() != st.chain.size()) throw ParseError("history and chain lengths differ");
    return st;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed checkpoint: ") + e.what());
  }
}

std::optional<SearchState> read_last_checkpoint(std::istream& in) {
  std::optional<SearchState> last;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    last = parse_checkpoint(line);
  }
  return last;
}

}  // namespace apnim
