#include <gtest/gtest.h>

#include "whitebind/handlebody.hpp"

using namespace whitebind;

namespace {

Word W(const std::string& s, int g) { return parse_word(s, Rank(g)); }

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
  for (const std::string& s : v)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Handlebody, ReportBindingWord) {
  const auto r = report(HandlebodyContext(2), W("ababbb", 2));
  EXPECT_TRUE(r.binds);
  EXPECT_TRUE(r.fills_up);
  EXPECT_TRUE(r.boundary_complement_incompressible);
  EXPECT_TRUE(mentions(r.citations, "Lemma 1.1"));
  EXPECT_TRUE(mentions(r.citations, "Lemma 1.4"));
  EXPECT_TRUE(mentions(r.citations, "SBKC"));
  EXPECT_FALSE(r.note.empty());
}

TEST(Handlebody, ReportSeparableWord) {
  const auto r = report(HandlebodyContext(2), W("abab", 2));
  EXPECT_FALSE(r.binds);
  EXPECT_FALSE(r.fills_up);
  EXPECT_FALSE(r.boundary_complement_incompressible);
}

TEST(Handlebody, FlagsFollowDecide) {
  for (const char* w : {"ab", "abAB", "aabb", "ababbb", "abab", "aab", ""}) {
    const HandlebodyContext ctx(2);
    const bool b = decide(W(w, 2), Rank(2)).binds();
    const auto f = fills_up(ctx, W(w, 2));
    const auto i = boundary_complement_incompressible(ctx, W(w, 2));
    EXPECT_EQ(f.value, b) << w;
    EXPECT_EQ(i.value, b) << w;
    EXPECT_TRUE(mentions(f.explanation, "Lemma 1.4 (converse)"));
    EXPECT_TRUE(mentions(f.explanation, "SBKC"));
    EXPECT_TRUE(mentions(i.explanation, "Lemma 1.1"));
    EXPECT_TRUE(mentions(i.explanation, "realizability"));
  }
}

TEST(Handlebody, SampleWordFillsUp) {
  for (int g = 1; g <= 3; ++g) {
    const HandlebodyContext ctx(g);
    EXPECT_TRUE(fills_up(ctx, sample_binding_word(ctx.rank()).as_word()).value);
  }
}

TEST(Handlebody, JsonIsDeterministic) {
  const auto a = to_json(report(HandlebodyContext(2), W("ababbb", 2))).dump();
  const auto b = to_json(report(HandlebodyContext(2), W("ababbb", 2))).dump();
  EXPECT_EQ(a, b);
  const auto j = json::parse(a);
  EXPECT_EQ(j.at("genus"), 2);
  EXPECT_EQ(j.at("word"), "ababbb");
  EXPECT_EQ(j.at("citations").size(), 4U);
  EXPECT_EQ(j.at("verdict").at("verdict"), "binds");
}

TEST(Handlebody, GenusMustBePositive) { EXPECT_THROW(HandlebodyContext(0), std::invalid_argument); }
