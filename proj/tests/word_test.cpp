#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "whitebind/word.hpp"

using namespace whitebind;

namespace {

Word W(const std::string& s, int g = 26) { return parse_word(s, Rank(g)); }
CyclicWord C(const std::string& s, int g) { return CyclicWord::from_word(W(s, g), Rank(g)); }

std::vector<Letter> letters(const std::string& s) { return parse_letters(s).letters; }

}  // namespace

TEST(ParseWord, CompactForm) {
  const Word w = W("abab", 2);
  ASSERT_EQ(w.size(), 4U);
  EXPECT_EQ(w[0], Letter(1, +1));
  EXPECT_EQ(w[1], Letter(2, +1));
  EXPECT_EQ(to_string(w), "abab");
}

TEST(ParseWord, EmptyIsIdentity) {
  EXPECT_TRUE(W("", 2).empty());
  EXPECT_TRUE(W("aA", 1).empty());
}

TEST(ParseWord, IndexedForm) {
  EXPECT_EQ(W("x1 x2 X1 X2", 2), W("abAB", 2));
  EXPECT_EQ(W("x1 X1", 1), Word());
  EXPECT_EQ(W("  x3\tX2  ", 3), W("cB", 3));
  EXPECT_EQ(to_string(W("x27 X1", 27)), "x27 X1");
}

TEST(ParseWord, Errors) {
  EXPECT_THROW(W("ab1", 2), SyntaxError);
  EXPECT_THROW(W("ab x1", 2), SyntaxError);
  EXPECT_THROW(W("x1 ab", 2), SyntaxError);
  EXPECT_THROW(W("x1b", 2), SyntaxError);
  EXPECT_THROW(W("x0", 2), SyntaxError);
  EXPECT_THROW(W("a-b", 2), SyntaxError);
  EXPECT_THROW(W("1", 2), SyntaxError);
  EXPECT_THROW(W("abc", 2), RankExceeded);
  EXPECT_THROW(W("x3", 2), RankExceeded);
  try {
    W("aC", 2);
    FAIL();
  } catch (const RankExceeded& e) {
    EXPECT_EQ(e.generator(), 3);
    EXPECT_EQ(e.rank(), 2);
  }
}

TEST(ParseWord, CompactXIsAGenerator) {
  // "xy" is compact: x24 x25, not an indexed token.
  EXPECT_EQ(W("xy", 26).max_generator(), 25);
}

TEST(FreeReduce, Examples) {
  EXPECT_EQ(to_string(free_reduce(letters("abBAa"))), "a");
  EXPECT_EQ(to_string(free_reduce(letters("ab"))), "ab");
  EXPECT_TRUE(free_reduce(letters("aAaA")).empty());
}

TEST(FreeReduce, IdempotentAndNonIncreasing) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    std::string raw;
    for (int i = 0; i < 20; ++i) raw.push_back(oracle::random_letter(rng, 3));
    const Word once = free_reduce(letters(raw));
    EXPECT_LE(once.size(), raw.size());
    EXPECT_EQ(free_reduce(once.letters()), once);
    EXPECT_EQ(to_string(once), oracle::reduce(raw));
  }
}

TEST(InvertConcat, Examples) {
  EXPECT_EQ(to_string(invert(W("ab"))), "BA");
  EXPECT_TRUE(concat(W("ab"), W("BA")).empty());
  EXPECT_EQ(to_string(concat(W("ab"), W("Bc"))), "ac");
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Word w = W(oracle::random_reduced(rng, 4, 12));
    EXPECT_TRUE(concat(w, invert(w)).empty());
  }
}

TEST(CyclicReduce, Examples) {
  const Rank g2(2);
  auto r = cyclic_reduce(W("Babb", 2), g2);
  EXPECT_EQ(to_string(r.core), "ab");
  EXPECT_EQ(to_string(r.conjugator), "B");

  r = cyclic_reduce(W("abab", 2), g2);
  EXPECT_EQ(to_string(r.core), "abab");
  EXPECT_TRUE(r.conjugator.empty());

  r = cyclic_reduce(W("aBA", 2), g2);
  EXPECT_EQ(to_string(r.core), "B");
  EXPECT_EQ(to_string(r.conjugator), "a");

  EXPECT_TRUE(cyclic_reduce(Word(), g2).core.empty());
}

TEST(CyclicReduce, ReassemblesWord) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const Rank rank(1 + trial % 4);
    const Word w = W(oracle::random_reduced(rng, rank.value(), 1 + trial % 16), rank.value());
    const auto r = cyclic_reduce(w, rank);
    EXPECT_EQ(concat(concat(r.conjugator, r.core.as_word()), invert(r.conjugator)), w);
  }
}

TEST(CyclicReduce, ConjugationInvariance) {
  std::mt19937 rng(1000);
  for (int trial = 0; trial < 1000; ++trial) {
    const int g = 1 + trial % 4;
    const Rank rank(g);
    std::uniform_int_distribution<std::size_t> len(0, 16);
    const Word w = W(oracle::random_reduced(rng, g, len(rng)), g);
    const Word u = W(oracle::random_reduced(rng, g, len(rng)), g);
    const Word conj = concat(concat(u, w), invert(u));
    EXPECT_EQ(cyclic_reduce(conj, rank).core, cyclic_reduce(w, rank).core);
  }
}

TEST(CyclicWord, CanonicalRotationMatchesBruteForce) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const int g = 1 + trial % 3;
    const std::string s = oracle::random_cyclic(rng, g, 14);
    EXPECT_EQ(to_string(C(s, g)), oracle::least_rotation(s)) << s;
    for (std::size_t r = 1; r < s.size(); ++r)
      EXPECT_EQ(C(s.substr(r) + s.substr(0, r), g), C(s, g));
  }
  // x1 < X1 < x2 < X2
  EXPECT_EQ(to_string(C("Ba", 2)), "aB");
  EXPECT_EQ(to_string(C("Aa", 2)), "");
  EXPECT_EQ(to_string(C("bA", 2)), "Ab");
}

TEST(CyclicRoot, Examples) {
  auto r = cyclic_root(C("abab", 2));
  EXPECT_EQ(to_string(r.root), "ab");
  EXPECT_EQ(r.exponent, 2);

  // Direct scan: no proper period of ababbb divides 6.
  EXPECT_EQ(oracle::period("ababbb"), 6U);
  r = cyclic_root(C("ababbb", 2));
  EXPECT_EQ(to_string(r.root), "ababbb");
  EXPECT_EQ(r.exponent, 1);

  r = cyclic_root(C("aaa", 1));
  EXPECT_EQ(to_string(r.root), "a");
  EXPECT_EQ(r.exponent, 3);

  EXPECT_THROW(cyclic_root(CyclicWord(Rank(2))), EmptyWord);
}

TEST(CyclicRoot, RoundTripAndPeriodOracle) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 400; ++trial) {
    const int g = 1 + trial % 3;
    std::string base = oracle::random_cyclic(rng, g, 5);
    std::string s;
    const int k = 1 + trial % 4;
    for (int i = 0; i < k; ++i) s += base;
    const CyclicWord c = C(s, g);
    const CyclicRoot r = cyclic_root(c);
    EXPECT_EQ(c.size() / static_cast<std::size_t>(r.exponent), oracle::period(to_string(c)));
    std::string rebuilt;
    for (int i = 0; i < r.exponent; ++i) rebuilt += to_string(r.root);
    EXPECT_EQ(C(rebuilt, g), c);
  }
}

TEST(Support, Examples) {
  EXPECT_EQ(support(C("aabb", 2)), (std::set<int>{1, 2}));
  EXPECT_EQ(support(C("aa", 2)), (std::set<int>{1}));
  EXPECT_TRUE(support(CyclicWord(Rank(2))).empty());
  EXPECT_EQ(first_omitted_generator(C("aa", 2)), 2);
  EXPECT_EQ(first_omitted_generator(C("ab", 2)), 0);
  EXPECT_EQ(first_omitted_generator(CyclicWord(Rank(3))), 1);
}

TEST(Rank, RejectsNonPositive) {
  EXPECT_THROW(Rank(0), std::invalid_argument);
  EXPECT_THROW(CyclicWord::from_word(W("c"), Rank(2)), RankExceeded);
}
