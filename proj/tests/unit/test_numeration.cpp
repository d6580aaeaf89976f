#include <gtest/gtest.h>

#include "apnim/errors.hpp"
#include "apnim/numeration.hpp"
#include "oracles.hpp"
#include "properties.hpp"

namespace apnim {
namespace {

const auto kTernary = RepresentingSequence::odd_fibonacci();

std::string rep(const RepresentingSequence& s, Term n) { return represent(s, n).to_string(); }

TEST(RepresentingSequence, NamedSequences) {
  EXPECT_EQ(kTernary.prefix(7), (std::vector<Term>{1, 2, 5, 13, 34, 89, 233}));
  EXPECT_EQ(RepresentingSequence::zeckendorf().prefix(6), (std::vector<Term>{1, 2, 3, 5, 8, 13}));
  EXPECT_EQ(RepresentingSequence::powers(3).prefix(4), (std::vector<Term>{1, 3, 9, 27}));
  EXPECT_EQ(RepresentingSequence::residue_one_mod_three().prefix(5), (std::vector<Term>{1, 2, 5, 8, 11}));
}

TEST(RepresentingSequence, FiniteAndValidation) {
  const auto f = RepresentingSequence::finite({1, 2, 5, 13});
  EXPECT_TRUE(f.is_finite());
  EXPECT_EQ(f.try_term(4), std::nullopt);
  EXPECT_THROW(f.term(4), PreconditionError);
  EXPECT_THROW(RepresentingSequence::finite({2, 3}), PreconditionError);
  EXPECT_THROW(RepresentingSequence::finite({1, 3, 3}), PreconditionError);
}

TEST(RepresentingSequence, OverflowIsReported) {
  const auto p = RepresentingSequence::powers(2);
  EXPECT_EQ(p.term(63), Term{1} << 63);
  EXPECT_THROW(p.term(64), OverflowError);
}

TEST(Represent, Examples) {
  EXPECT_EQ(rep(RepresentingSequence::zeckendorf(), 19), "101001");
  EXPECT_EQ(rep(kTernary, 12), "210");
  EXPECT_EQ(rep(kTernary, 0), "");
  EXPECT_EQ(rep(kTernary, 4), "20");
  EXPECT_EQ(rep(RepresentingSequence::powers(10), 907), "907");
}

TEST(Represent, MatchesBruteForceGreedy) {
  const auto terms = oracle::odd_fibonacci_terms(20);
  const auto fibs = oracle::fibonacci_terms(30);
  for (Term n = 0; n < 5000; ++n) {
    EXPECT_EQ(rep(kTernary, n), oracle::digits_msb(oracle::greedy_digits(terms, n)));
    EXPECT_EQ(rep(RepresentingSequence::zeckendorf(), n), oracle::digits_msb(oracle::greedy_digits(fibs, n)));
  }
}

TEST(ValueOf, Examples) {
  EXPECT_EQ(value_of(RepresentingSequence::finite({1, 2, 5}), DigitString::parse("20")), 4u);
  EXPECT_EQ(value_of(RepresentingSequence::finite({1, 2, 5, 13}), DigitString::parse("210")), 12u);
  EXPECT_EQ(value_of(kTernary, DigitString{}), 0u);
  EXPECT_THROW(value_of(RepresentingSequence::finite({1, 2}), DigitString::parse("100")), PreconditionError);
}

TEST(IndexOf, Examples) {
  EXPECT_EQ(index_of(RepresentingSequence::powers(2), 5), 2u);
  const auto f = RepresentingSequence::finite({1, 2, 5, 13});
  EXPECT_EQ(index_of(f, 4), 1u);
  EXPECT_EQ(index_of(f, 13), 3u);
  EXPECT_THROW(index_of(f, 0), PreconditionError);
}

TEST(Volatility, Examples) {
  const auto f = RepresentingSequence::finite({1, 2, 5, 13});
  EXPECT_TRUE(is_volatile(f, 4, 2));
  EXPECT_TRUE(is_volatile(f, 1, 1));
  EXPECT_FALSE(is_volatile(f, 1, 2));
  EXPECT_TRUE(is_volatile(RepresentingSequence::powers(10), 99, 2));
  EXPECT_TRUE(is_zend(f, 0));
  EXPECT_TRUE(is_zend(f, 4));
  EXPECT_FALSE(is_zend(f, 3));
}

TEST(DigitString, ParseAndPrint) {
  const auto d = DigitString::parse("210");
  EXPECT_EQ(d.digits, (std::vector<Digit>{0, 1, 2}));
  EXPECT_EQ(d.to_string(), "210");
  EXPECT_EQ(d.trailing_zeros(), 1u);
  EXPECT_EQ(d[7], 0u);
  EXPECT_EQ(DigitString::parse("1,12,0").to_string(), "1,12,0");
  EXPECT_THROW(DigitString::parse("2a"), ParseError);
}

TEST(PlaceBound, LeadingDigitOfTermMinusOne) {
  EXPECT_EQ(place_bound(kTernary, 0), std::optional<Digit>{1});
  EXPECT_EQ(place_bound(kTernary, 1), std::optional<Digit>{2});
  EXPECT_EQ(place_bound(RepresentingSequence::powers(10), 3), std::optional<Digit>{9});
  EXPECT_EQ(place_bound(RepresentingSequence::finite({1, 2}), 1), std::nullopt);
}

TEST(NumerationProperties, RandomInstances) {
  std::uint64_t seed = 1;
  for (const auto& seq : props::numeration_corpus()) {
    EXPECT_EQ(props::numeration_properties(seq, 500, seed++), "");
  }
}

TEST(GameProperties, RandomSets) { EXPECT_EQ(props::game_properties(40, 9), ""); }

}  // namespace
}  // namespace apnim
