#ifdef APNIM_HAVE_CLI

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "apnim/errors.hpp"
#include "cli.hpp"
#include "json.hpp"

namespace apnim::cli {
namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args, const std::string& input = {}) {
  args.insert(args.begin(), "apnim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(APNIM_GOLDEN_DIR) + "/" + name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(SetSpec, Forms) {
  EXPECT_EQ(parse_set_spec("1,4,12").elements_up_to(100), (std::vector<Position>{1, 4, 12}));
  EXPECT_EQ(parse_set_spec("mod3:1").elements_up_to(10), (std::vector<Position>{1, 4, 7, 10}));
  EXPECT_EQ(parse_set_spec("all").elements_up_to(3), (std::vector<Position>{1, 2, 3}));
  EXPECT_EQ(parse_set_spec("3*(1,2,3)").elements_up_to(20), (std::vector<Position>{3, 6, 9}));
  EXPECT_EQ(parse_set_spec("construction:k=2:T").elements_up_to(40), (std::vector<Position>{1, 4, 12, 33}));
  EXPECT_EQ(parse_set_spec("construction:k=2:I").elements_up_to(12), (std::vector<Position>{1, 4, 9, 12}));
  EXPECT_EQ(parse_set_spec("construction:k=2:V").elements_up_to(13), (std::vector<Position>{1, 4, 9, 12}));
  EXPECT_EQ(parse_set_spec("construction:k=3:T").elements_up_to(20), (std::vector<Position>{1, 2, 6, 17}));
  for (const char* bad : {"", "1,,2", "mod0:1", "x", "construction:k=3:I", "0,1", "2*(1"}) {
    EXPECT_THROW(parse_set_spec(bad), ParseError) << bad;
  }
}

TEST(SeqSpec, Forms) {
  EXPECT_EQ(parse_seq_spec("oddfib").prefix(4), (std::vector<Term>{1, 2, 5, 13}));
  EXPECT_EQ(parse_seq_spec("zeck").prefix(4), (std::vector<Term>{1, 2, 3, 5}));
  EXPECT_EQ(parse_seq_spec("pow:2").prefix(4), (std::vector<Term>{1, 2, 4, 8}));
  EXPECT_EQ(parse_seq_spec("family:k=3").prefix(4), (std::vector<Term>{1, 3, 7, 18}));
  EXPECT_EQ(parse_seq_spec("closed:k=3").prefix(4), (std::vector<Term>{1, 3, 8, 21}));
  EXPECT_EQ(parse_seq_spec("promote:zeck").prefix(4), (std::vector<Term>{1, 3, 4, 7}));
  EXPECT_EQ(parse_seq_spec("1,2,5,10,13").prefix(9), (std::vector<Term>{1, 2, 5, 10, 13}));
  EXPECT_THROW(parse_seq_spec("fibonacci"), ParseError);
}

TEST(Cli, NimSeq) {
  EXPECT_EQ(invoke({"nimseq", "--set", "1,2,3", "--len", "8"}).out, "01230123\n");
  EXPECT_EQ(invoke({"nimseq", "--set", "construction:k=2:T", "--len", "13"}).out, "0101201012012\n");
  EXPECT_EQ(invoke({"nimseq", "--set", "1", "--len", "4"}).out, "0101\n");
}

TEST(Cli, Golden) {
  EXPECT_EQ(invoke({"search", "--depth", "9", "--threads", "1"}).out, golden("search_chain.txt"));
  EXPECT_EQ(invoke({"nimseq", "--set", "construction:k=2:T", "--len", "13"}).out, golden("section_word.txt"));
  EXPECT_EQ(invoke({"convert", "--n", "19", "--seq", "zeck"}).out, golden("zeckendorf_19.txt"));
  EXPECT_EQ(invoke({"period", "--set", "1,4,12"}).out, golden("period_1_4_12.txt"));
}

TEST(Cli, PeriodAndConvert) {
  const auto p = invoke({"period", "--set", "1,4"});
  EXPECT_EQ(p.code, kOk);
  EXPECT_NE(p.out.find("prefix ε"), std::string::npos);
  EXPECT_NE(p.out.find("period 01012\n"), std::string::npos);
  EXPECT_EQ(invoke({"convert", "--n", "10", "--seq", "oddfib"}).out, "10010\n");
  EXPECT_EQ(invoke({"convert", "--digits", "200"}).out, "10010\n");
  EXPECT_EQ(invoke({"convert", "--digits", "22"}).code, kUsage);
}

TEST(Cli, Construct) {
  EXPECT_EQ(invoke({"construct", "--depth", "3"}).out, "0101201012012\n");
  EXPECT_EQ(invoke({"construct", "--depth", "3", "--view", "morphic"}).out, "0101201012012\n");
  EXPECT_EQ(invoke({"construct", "--depth", "5", "--view", "sequence"}).out, "1,2,5,13,34,89\n");
  EXPECT_EQ(invoke({"construct", "--depth", "3", "--view", "T"}).out, "1,4,12\n");
  EXPECT_EQ(invoke({"construct", "--k", "3", "--depth", "2", "--view", "word"}).out, "0120123\n");
}

TEST(Cli, VerifyExitCodes) {
  EXPECT_EQ(invoke({"verify", "--horizon", "377"}).code, kOk);
  EXPECT_EQ(invoke({"verify", "--seq", "1,2,7,10,13", "--horizon", "200"}).code, kFail);
  EXPECT_EQ(invoke({"verify", "--truncation", "3", "--horizon", "300"}).code, kOk);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kUsage);
  EXPECT_EQ(invoke({"nimseq", "--set", "1,2"}).code, kUsage);
  EXPECT_EQ(invoke({"nimseq", "--set", "1,a", "--len", "3"}).code, kUsage);
  EXPECT_EQ(invoke({"--format", "xml", "nimseq", "--set", "1", "--len", "3"}).code, kUsage);
  EXPECT_EQ(invoke({"--help"}).code, kOk);
}

TEST(Cli, LimitsAreExitCodeTwo) {
  EXPECT_EQ(invoke({"period", "--set", "1,4,12", "--max-length", "10"}).code, kLimit);
  EXPECT_EQ(invoke({"search", "--depth", "7", "--budget", "20", "--threads", "1"}).code, kLimit);
}

TEST(Cli, StructuredRecords) {
  const std::vector<std::vector<std::string>> commands{
      {"nimseq", "--set", "1,4", "--len", "10"},
      {"period", "--set", "1,4"},
      {"construct", "--depth", "3"},
      {"convert", "--n", "19"},
      {"verify", "--horizon", "100"},
      {"search", "--depth", "5", "--threads", "1"},
      {"explore", "--seed", "1,2,5,13", "--steps", "2"}};
  for (auto args : commands) {
    args.insert(args.begin(), {"--format", "json"});
    const auto r = invoke(args);
    ASSERT_EQ(r.code, kOk) << args[2] << r.err;
    std::istringstream lines(r.out);
    std::string line;
    int records = 0;
    while (std::getline(lines, line)) {
      const auto j = nlohmann::json::parse(line);
      EXPECT_EQ(j.at("command"), args[2]);
      EXPECT_EQ(j.at("status"), "ok");
      ++records;
    }
    EXPECT_EQ(records, 1) << args[2];
  }
  const auto p = nlohmann::json::parse(invoke({"--format", "json", "period", "--set", "1,4"}).out);
  EXPECT_EQ(p.at("period"), (std::vector<int>{0, 1, 0, 1, 2}));
  EXPECT_TRUE(p.at("prefix").empty());
}

TEST(Cli, SearchCheckpointAndResume) {
  const auto path = std::filesystem::temp_directory_path() / "apnim_cli_checkpoint.jsonl";
  std::filesystem::remove(path);
  const auto first = invoke({"search", "--depth", "6", "--threads", "1", "--checkpoint", path.string()});
  EXPECT_EQ(first.out, "1,4,12,28,73,163\n");
  const auto resumed =
      invoke({"search", "--depth", "8", "--threads", "1", "--checkpoint", path.string(), "--resume"});
  EXPECT_EQ(resumed.out, "1,4,12,28,73,163,343,867\n");
  std::ifstream in(path);
  std::string line;
  std::size_t records = 0;
  while (std::getline(in, line)) ++records;
  // one record per accepted element beyond the seed {1,4}
  EXPECT_EQ(records, 4u + 2u);
  std::filesystem::remove(path);
}

TEST(Cli, EnvironmentDefaults) {
  ::setenv("APNIM_BUDGET", "20", 1);
  EXPECT_EQ(invoke({"search", "--depth", "7", "--threads", "1"}).code, kLimit);
  ::unsetenv("APNIM_BUDGET");
  ::setenv("APNIM_HORIZON", "bogus", 1);
  EXPECT_EQ(invoke({"verify"}).code, kUsage);
  ::unsetenv("APNIM_HORIZON");
}

TEST(Play, EngineWinsFromAPPosition) {
  // SG(20) = 0 for {1,4,12}; whatever the human opens with, the engine answers
  // into P-positions and the human runs out of moves.
  for (const char* opening : {"1", "4", "12"}) {
    std::string script = std::string(opening) + "\n";
    for (int i = 0; i < 30; ++i) script += "1\n";
    const auto r = invoke({"play", "--set", "1,4,12", "--pos", "20"}, script);
    EXPECT_EQ(r.code, kOk);
    EXPECT_NE(r.out.find("position 20 (SG 0, P-position)"), std::string::npos);
    EXPECT_NE(r.out.find("engine wins"), std::string::npos) << opening << "\n" << r.out;
  }
}

TEST(Play, IllegalMovesRePrompt) {
  const auto r = invoke({"play", "--set", "1,4", "--pos", "3"}, "4\nabc\n1\n1\n");
  EXPECT_NE(r.out.find("illegal move 4"), std::string::npos);
  EXPECT_NE(r.out.find("enter a move size"), std::string::npos);
}

}  // namespace
}  // namespace apnim::cli

#endif
