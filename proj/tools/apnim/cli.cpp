#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "apnim/construction.hpp"
#include "apnim/errors.hpp"
#include "apnim/periodicity.hpp"
#include "apnim/repword.hpp"
#include "apnim/search.hpp"
#include "apnim/wythoff.hpp"
#include "json.hpp"

namespace apnim::cli {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_number(std::string_view text, std::string_view what) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
    throw ParseError("bad " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::uint64_t> parse_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    out.push_back(parse_number(text.substr(pos, comma - pos), "list element"));
    pos = comma + 1;
  }
  return out;
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

// "k=K" -> K
Symbol parse_k(std::string_view text) {
  if (!starts_with(text, "k=")) throw ParseError("expected k=K, got '" + std::string(text) + "'");
  const auto k = parse_number(text.substr(2), "k");
  if (k < 2 || k > 64) throw ParseError("k must lie in [2, 64]");
  return static_cast<Symbol>(k);
}

std::string render(const Word& w) { return w.empty() ? "ε" : to_string(w); }

std::string join(const std::vector<std::uint64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::uint64_t env_or(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  return parse_number(v, name);
}

struct Output {
  std::ostream& out;
  bool structured = false;

  void emit(json record) const { out << record.dump() << '\n'; }
};

}  // namespace

SubtractionSet parse_set_spec(std::string_view spec) {
  spec = trim(spec);
  if (spec.empty()) throw ParseError("empty set specification");
  if (spec == "all") return SubtractionSet::all();
  if (const auto star = spec.find("*("); star != std::string_view::npos) {
    if (spec.back() != ')') throw ParseError("scaled set needs a closing parenthesis");
    const auto g = parse_number(spec.substr(0, star), "scale factor");
    if (g < 1) throw ParseError("scale factor must be positive");
    return parse_set_spec(spec.substr(star + 2, spec.size() - star - 3)).scaled(g);
  }
  if (starts_with(spec, "mod")) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) throw ParseError("residue rule is modM:R");
    const auto m = parse_number(spec.substr(3, colon - 3), "modulus");
    const auto r = parse_number(spec.substr(colon + 1), "residue");
    if (m == 0) throw ParseError("modulus must be positive");
    return SubtractionSet::residue(m, r);
  }
  if (starts_with(spec, "construction:")) {
    const auto rest = spec.substr(13);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw ParseError("construction set is construction:k=K:T|V|I");
    const Symbol k = parse_k(rest.substr(0, colon));
    const auto which = rest.substr(colon + 1);
    const Family fam = family(k);
    if (which == "T") return fam.T;
    if (which == "V") return DerivedSets(fam.sequence).V_set();
    if (which == "I") {
      if (k != 2) throw ParseError("the set I is defined for k = 2 only");
      return TernaryConstruction().I();
    }
    throw ParseError("construction set must be T, V or I");
  }
  const auto list = parse_list(spec);
  if (std::find(list.begin(), list.end(), 0) != list.end()) {
    throw ParseError("subtraction sets hold positive integers");
  }
  return SubtractionSet::finite(list);
}

RepresentingSequence parse_seq_spec(std::string_view spec) {
  spec = trim(spec);
  if (spec == "oddfib") return RepresentingSequence::odd_fibonacci();
  if (spec == "zeck" || spec == "fib") return RepresentingSequence::zeckendorf();
  if (spec == "residue") return RepresentingSequence::residue_one_mod_three();
  if (starts_with(spec, "pow:")) return RepresentingSequence::powers(parse_number(spec.substr(4), "base"));
  if (starts_with(spec, "family:")) return family(parse_k(spec.substr(7))).sequence;
  if (starts_with(spec, "closed:")) return family_closed_form(parse_k(spec.substr(7)));
  if (starts_with(spec, "promote:")) return promote(parse_seq_spec(spec.substr(8)), 1);
  if (spec.empty()) throw ParseError("empty sequence specification");
  if (spec.front() < '0' || spec.front() > '9') {
    throw ParseError("unknown sequence '" + std::string(spec) + "'");
  }
  return RepresentingSequence::finite(parse_list(spec));
}

int play(const SubtractionSet& s, Position start, bool engine_first, std::istream& in,
         std::ostream& out) {
  Solver solver(s);
  Position pos = start;
  bool human = !engine_first;
  out << "subtraction set " << s.description() << ", position " << pos << '\n';
  while (true) {
    const auto moves = s.elements_up_to(pos);
    const Symbol g = solver.value(pos);
    out << "position " << pos << " (SG " << g << ", " << (g == 0 ? "P" : "N") << "-position)\n";
    if (moves.empty()) {
      out << (human ? "no moves left; engine wins\n" : "no moves left; you win\n");
      return kOk;
    }
    if (human) {
      Position m = 0;
      while (true) {
        out << "your move> " << std::flush;
        std::string line;
        if (!std::getline(in, line)) {
          out << "\ninput closed\n";
          return kOk;
        }
        try {
          m = parse_number(line, "move");
        } catch (const ParseError&) {
          out << "enter a move size\n";
          continue;
        }
        if (m > pos || !s.contains(m)) {
          out << "illegal move " << m << "\n";
          continue;
        }
        break;
      }
      pos -= m;
    } else {
      const auto best = solver.best_move(pos);
      const Position m = best ? *best : moves.front();
      out << "engine takes " << m << (best ? "" : " (no winning move)") << '\n';
      pos -= m;
    }
    human = !human;
  }
}

namespace {

int cmd_nimseq(const Output& o, const std::string& set_spec, std::size_t len) {
  const auto s = parse_set_spec(set_spec);
  const Word w = nim_sequence(s, len);
  if (o.structured) {
    o.emit({{"command", "nimseq"}, {"status", "ok"}, {"set", s.description()}, {"length", len},
            {"values", w}});
  } else {
    o.out << to_string(w) << '\n';
  }
  return kOk;
}

int cmd_period(const Output& o, const std::string& set_spec, std::size_t max_length) {
  const auto s = parse_set_spec(set_spec);
  if (!s.is_finite()) throw ParseError("period needs a finite set");
  PeriodOptions opts;
  opts.max_length = max_length;
  const auto d = period_and_prefix(s, opts);
  if (o.structured) {
    o.emit({{"command", "period"}, {"status", "ok"}, {"set", s.description()},
            {"prefix", d.prefix}, {"period", d.period}, {"period_length", d.period.size()}});
  } else {
    o.out << "prefix " << render(d.prefix) << '\n';
    o.out << "period " << render(d.period) << '\n';
    o.out << "period_length " << d.period.size() << '\n';
  }
  return kOk;
}

int cmd_construct(const Output& o, Symbol k, std::size_t depth, const std::string& view) {
  const Family fam = family(k);
  const Term length = fam.sequence.term(depth);
  json record{{"command", "construct"}, {"status", "ok"}, {"k", k}, {"depth", depth}, {"view", view}};
  std::string text;
  if (view == "word") {
    const Word w = k == 2 ? build_word_prefix(depth) : fam.word.prefix(length);
    record["word"] = to_string(w);
    text = to_string(w);
  } else if (view == "morphic") {
    if (k != 2) throw ParseError("the morphic view exists for k = 2 only");
    const Word w = morphic_word_prefix(depth - 1);
    record["word"] = to_string(w);
    text = to_string(w);
  } else if (view == "sequence") {
    const auto terms = fam.sequence.prefix(depth + 1);
    record["terms"] = terms;
    text = join(terms);
  } else if (view == "T" || view == "V" || view == "I") {
    const auto s = parse_set_spec("construction:k=" + std::to_string(k) + ":" + view);
    const auto e = s.elements_up_to(length);
    record["elements"] = e;
    text = join(e);
  } else {
    throw ParseError("view must be word, morphic, sequence, T, V or I");
  }
  if (o.structured) {
    o.emit(record);
  } else {
    o.out << text << '\n';
  }
  return kOk;
}

int cmd_convert(const Output& o, std::optional<Term> n, const std::string& digits,
                const std::string& seq_spec) {
  const auto seq = parse_seq_spec(seq_spec);
  DigitString d;
  if (n) {
    d = represent(seq, *n);
  } else if (!digits.empty()) {
    d = DigitString::parse(digits);
    d.trim();
  } else {
    throw ParseError("convert needs --n or --digits");
  }
  const Term value = value_of(seq, d);
  if (represent(seq, value) != d) throw ParseError("'" + d.to_string() + "' is not a greedy representation");
  json record{{"command", "convert"}, {"status", "ok"}, {"sequence", seq.name()}, {"n", value},
              {"digits", d.to_string()}};
  std::string text;
  if (seq_spec == "oddfib") {
    const bool direct = d.empty() || (d[0] == 0 && !ends_in_two_block(d));
    const DigitString z =
        direct ? odd_fib_to_zeck(d) : represent(RepresentingSequence::zeckendorf(), value);
    const bool upper = wythoff_class(value) == WythoffClass::Upper;
    record["zeckendorf"] = z.to_string();
    record["method"] = direct ? "odd-to-zeckendorf" : "greedy";
    record["wythoff"] = upper ? "upper" : "lower";
    text = z.empty() ? "0" : z.to_string();
  } else {
    text = d.empty() ? "0" : d.to_string();
  }
  if (o.structured) {
    o.emit(record);
  } else {
    o.out << text << '\n';
  }
  return kOk;
}

int report_conditions(const Output& o, const std::string& command, const VerificationReport& r,
                      json record) {
  const bool ok = r.passed();
  if (o.structured) {
    json conds = json::array();
    for (const Condition& c : r.conditions) {
      json cj{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
      if (c.counterexample) cj["counterexample"] = *c.counterexample;
      conds.push_back(cj);
    }
    record["command"] = command;
    record["status"] = ok ? "ok" : "fail";
    record["conditions"] = conds;
    o.emit(record);
  } else {
    for (const Condition& c : r.conditions) {
      o.out << c.name << ": " << (c.passed ? "pass" : "FAIL");
      if (c.counterexample) o.out << " at " << *c.counterexample;
      if (!c.detail.empty()) o.out << " (" << c.detail << ")";
      o.out << '\n';
    }
    o.out << (ok ? "verified" : "not verified") << '\n';
  }
  return ok ? kOk : kFail;
}

int cmd_verify(const Output& o, const std::string& seq_spec, const std::string& set_spec,
               const std::string& i_spec, Position horizon, std::optional<std::size_t> truncation) {
  const auto seq = parse_seq_spec(seq_spec);
  const RepWord rw(seq);
  const DerivedSets sets(seq);
  const SubtractionSet s = set_spec.empty() ? sets.T_set() : parse_set_spec(set_spec);
  json record{{"sequence", seq.name()}, {"set", s.description()}, {"horizon", horizon}};
  if (truncation) {
    record["truncation"] = *truncation;
    return report_conditions(o, "verify", verify_truncation(rw, s, *truncation, horizon), record);
  }
  const SubtractionSet i = i_spec.empty() ? sets.V_set() : parse_set_spec(i_spec);
  record["I"] = i.description();
  return report_conditions(o, "verify", verify_absmain(rw, s, i, horizon), record);
}

json state_json(const SearchState& st) {
  json h = json::array();
  for (const auto& step : st.history) {
    h.push_back({{"element", step.element}, {"period_length", step.period_length},
                 {"candidates", step.candidates}});
  }
  return {{"mode", st.mode}, {"k", st.k}, {"doubling", st.doubling}, {"chain", st.chain},
          {"next_start", st.next_start}, {"budget_spent", st.budget_spent}, {"history", h}};
}

struct SearchArgs {
  std::string mode = "set";
  std::size_t depth = 9;
  Symbol k = 2;
  bool no_doubling = false;
  Budget budget = 0;
  Budget level_budget = 100'000;
  unsigned threads = 0;
  std::string checkpoint;
  bool resume = false;
  std::string seed;
};

int cmd_search(const Output& o, const SearchArgs& a) {
  SearchOptions opts;
  opts.budget = a.budget;
  opts.level_budget = a.level_budget;
  opts.threads = a.threads;
  std::unique_ptr<std::ofstream> sink;
  std::optional<SearchState> resumed;
  if (!a.checkpoint.empty()) {
    if (a.resume) {
      std::ifstream in(a.checkpoint);
      if (in) resumed = read_last_checkpoint(in);
    }
    sink = std::make_unique<std::ofstream>(a.checkpoint, std::ios::app);
    if (!*sink) throw ParseError("cannot open checkpoint " + a.checkpoint);
  } else if (a.resume) {
    throw ParseError("--resume needs --checkpoint");
  }
  AcceptHook hook;
  if (sink) hook = [&sink](const SearchState& st) { write_checkpoint(*sink, st); };
  SearchResult r;
  if (resumed) {
    r = resume_chain(*resumed, a.depth, opts, hook);
  } else if (a.mode == "set") {
    std::vector<Position> seed{1, 4};
    if (!a.seed.empty()) seed = parse_list(a.seed);
    r = greedy_chain(a.k, a.depth, !a.no_doubling, opts, seed, hook);
  } else if (a.mode == "repseq") {
    std::vector<Term> seed{1};
    if (!a.seed.empty()) seed = parse_list(a.seed);
    r = greedy_rep_chain(a.depth, !a.no_doubling, opts, seed, hook);
  } else {
    throw ParseError("search mode must be set or repseq");
  }
  const bool done = r.status == SearchStatus::Complete;
  if (o.structured) {
    json record = state_json(r.state);
    record["command"] = "search";
    record["status"] = done ? "ok" : "budget";
    o.emit(record);
  } else {
    o.out << join(r.state.chain) << '\n';
    if (!done) o.out << "budget exhausted after " << r.state.budget_spent << " candidates\n";
  }
  return done ? kOk : kLimit;
}

int cmd_explore(const Output& o, int conjecture, const std::string& seed_text, unsigned m,
                std::size_t steps, Term horizon) {
  const auto seed = parse_list(seed_text);
  const ExplorationReport r = conjecture == 1 ? explore_conjecture1(seed, steps, horizon)
                                              : explore_conjecture2(seed, m, steps, horizon);
  const bool ok = r.all_verified() && r.recurrence_precondition;
  if (o.structured) {
    json st = json::array();
    for (const auto& s : r.steps) st.push_back({{"term", s.term}, {"verified", s.verified}});
    json record{{"command", "explore"}, {"status", ok ? "ok" : "fail"}, {"conjecture", conjecture},
                {"seed", r.seed}, {"seed_verified", r.seed_verified},
                {"recurrence_precondition", r.recurrence_precondition}, {"steps", st}};
    if (r.first_failure) record["first_failure"] = *r.first_failure;
    o.emit(record);
  } else {
    o.out << "seed " << join(r.seed) << (r.seed_verified ? " verified" : " NOT verified") << '\n';
    if (!r.recurrence_precondition) o.out << "seed does not follow the recurrence\n";
    for (const auto& s : r.steps) o.out << s.term << (s.verified ? " verified" : " FAILS") << '\n';
  }
  return ok ? kOk : kFail;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nim sequences of subtraction games"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "text or json (one record per line)")
      ->check(CLI::IsMember({"text", "json"}));

  Position default_horizon = 1000;
  Budget default_budget = 1'000'000;
  try {
    default_horizon = env_or("APNIM_HORIZON", default_horizon);
    default_budget = env_or("APNIM_BUDGET", default_budget);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::string set_spec;
  std::size_t len = 0;
  auto* nimseq = app.add_subcommand("nimseq", "Print Sprague-Grundy values");
  nimseq->add_option("--set", set_spec, "Subtraction set")->required();
  nimseq->add_option("--len", len, "Number of values")->required()->check(CLI::PositiveNumber);

  std::size_t max_length = std::size_t{1} << 22;
  auto* period = app.add_subcommand("period", "Prefix and period of a finite set");
  period->add_option("--set", set_spec, "Finite subtraction set")->required();
  period->add_option("--max-length", max_length, "Largest table tried");

  Symbol k = 2;
  std::size_t depth = 4;
  std::string view = "word";
  auto* construct = app.add_subcommand("construct", "The aperiodic construction");
  construct->add_option("--k", k, "Alphabet bound")->check(CLI::Range(2, 64));
  construct->add_option("--depth", depth, "Block index")->check(CLI::Range(1, 40));
  construct->add_option("--view", view, "word, morphic, sequence, T, V or I");

  std::optional<Term> conv_n;
  std::string digits;
  std::string seq_spec = "oddfib";
  auto* convert = app.add_subcommand("convert", "Representations and Zeckendorf conversion");
  auto* n_opt = convert->add_option("--n", conv_n, "Number to convert");
  convert->add_option("--digits", digits, "Digit string, most significant first")->excludes(n_opt);
  convert->add_option("--seq", seq_spec, "Representing sequence");

  std::string verify_set;
  std::string verify_i;
  Position horizon = default_horizon;
  std::optional<std::size_t> truncation;
  auto* verify = app.add_subcommand("verify", "Check that a representation word is a Nim sequence");
  verify->add_option("--seq", seq_spec, "Representing sequence");
  verify->add_option("--set", verify_set, "Subtraction set (default T)");
  verify->add_option("--I", verify_i, "Upper set I (default V)");
  verify->add_option("--horizon", horizon, "Positions checked");
  verify->add_option("--truncation", truncation, "Check the truncated set below term(i)");

  SearchArgs sargs;
  sargs.budget = default_budget;
  auto* search = app.add_subcommand("search", "Greedy chain search");
  search->add_option("--mode", sargs.mode, "set or repseq");
  search->add_option("--depth", sargs.depth, "Chain length to reach");
  search->add_option("--k", sargs.k, "Alphabet bound for set chains");
  search->add_flag("--no-doubling", sargs.no_doubling, "Drop the doubling constraint");
  search->add_option("--budget", sargs.budget, "Total candidates");
  search->add_option("--level-budget", sargs.level_budget, "Candidates per level before backtracking");
  search->add_option("--threads", sargs.threads, "Worker threads (0: all cores)");
  search->add_option("--checkpoint", sargs.checkpoint, "Append a record after each accepted element");
  search->add_flag("--resume", sargs.resume, "Continue from the last checkpoint record");
  search->add_option("--seed", sargs.seed, "Starting chain");

  Position pos = 0;
  bool engine_first = false;
  auto* play_cmd = app.add_subcommand("play", "Play against the engine");
  play_cmd->add_option("--set", set_spec, "Subtraction set")->required();
  play_cmd->add_option("--pos", pos, "Starting position")->required();
  play_cmd->add_flag("--engine-first", engine_first, "Let the engine move first");

  int conjecture = 1;
  std::string seed;
  unsigned m = 2;
  std::size_t steps = 3;
  Term explore_horizon = 100'000;
  auto* explore = app.add_subcommand("explore", "Extend a sequence by a fixed recurrence and verify");
  explore->add_option("--conjecture", conjecture, "1: 3b-b', 2: (m+1)b-(m-1)b'")->check(CLI::Range(1, 2));
  explore->add_option("--seed", seed, "Seed sequence")->required();
  explore->add_option("--m", m, "Recurrence parameter for 2");
  explore->add_option("--steps", steps, "Terms to add");
  explore->add_option("--horizon", explore_horizon, "Largest term allowed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const Output o{out, format == "json"};
  try {
    if (*nimseq) return cmd_nimseq(o, set_spec, len);
    if (*period) return cmd_period(o, set_spec, max_length);
    if (*construct) return cmd_construct(o, k, depth, view);
    if (*convert) return cmd_convert(o, conv_n, digits, seq_spec);
    if (*verify) return cmd_verify(o, seq_spec, verify_set, verify_i, horizon, truncation);
    if (*search) return cmd_search(o, sargs);
    if (*play_cmd) return play(parse_set_spec(set_spec), pos, engine_first, in, out);
    if (*explore) return cmd_explore(o, conjecture, seed, m, steps, explore_horizon);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceLimitError& e) {
    err << "limit: " << e.what() << '\n';
    return kLimit;
  } catch (const OverflowError& e) {
    err << "limit: " << e.what() << '\n';
    return kLimit;
  }
  return kUsage;
}

}  // namespace apnim::cli
