#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "support/oracles.hpp"
#include "whitebind/whitehead_graph.hpp"

using namespace whitebind;

namespace {

CyclicWord C(const std::string& s, int g) { return CyclicWord::from_word(parse_word(s, Rank(g)), Rank(g)); }
WhiteheadGraph G(const std::string& s, int g) { return WhiteheadGraph::build(C(s, g)); }

std::set<int> keys(const std::set<Letter>& ls) {
  std::set<int> out;
  for (Letter l : ls) out.insert(l.order_key());
  return out;
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(WHITEBIND_GOLDEN_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(WhiteheadGraph, CommutatorIsFourCycle) {
  const auto g = G("abAB", 2);
  EXPECT_EQ(g.edges().size(), 4U);
  EXPECT_TRUE(is_connected(g));
  EXPECT_TRUE(cut_vertices(g).empty());
  EXPECT_EQ(stallings_criterion(g), StallingsResult::binds_certified);
}

TEST(WhiteheadGraph, MissingGeneratorDisconnects) {
  const auto g = G("aa", 2);
  EXPECT_FALSE(is_connected(g));
  EXPECT_EQ(stallings_criterion(g), StallingsResult::inconclusive);
}

TEST(WhiteheadGraph, AbabbbHasCutVertices) {
  // Path a - B - b - A in the simple graph: both x2 and x2^-1 are cut vertices.
  const auto g = G("ababbb", 2);
  EXPECT_TRUE(is_connected(g));
  const auto cuts = cut_vertices(g);
  EXPECT_TRUE(cuts.count(Letter(2, -1)));
  EXPECT_EQ(keys(cuts), oracle::cut_vertices(oracle::whitehead_adjacency("ababbb", 2)));
  EXPECT_EQ(cuts, (std::set<Letter>{Letter(2, +1), Letter(2, -1)}));
  EXPECT_EQ(stallings_criterion(g), StallingsResult::inconclusive);
}

TEST(WhiteheadGraph, AabbIsCycle) {
  EXPECT_EQ(stallings_criterion(C("aabb", 2)), StallingsResult::binds_certified);
}

TEST(WhiteheadGraph, EmptyWordRejected) { EXPECT_THROW(WhiteheadGraph::build(CyclicWord(Rank(2))), EmptyWord); }

TEST(WhiteheadGraph, CutVerticesMatchDeletionOracle) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const int g = 1 + trial % 4;
    const std::string s = oracle::random_cyclic(rng, g, 14);
    const CyclicWord c = C(s, g);
    const auto graph = WhiteheadGraph::build(c);
    const auto adj = oracle::whitehead_adjacency(to_string(c), g);
    EXPECT_EQ(keys(cut_vertices(graph)), oracle::cut_vertices(adj)) << s;
    EXPECT_EQ(is_connected(graph), oracle::components(adj, -1) == 1) << s;
    EXPECT_EQ(graph.edges().size(), c.size());
  }
}

TEST(WhiteheadGraph, RotationAndInversionInvariance) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const int g = 2 + trial % 2;
    const std::string s = oracle::random_cyclic(rng, g, 12);
    const auto base = G(s, g);
    for (std::size_t r = 1; r < s.size(); ++r)
      EXPECT_EQ(G(s.substr(r) + s.substr(0, r), g).edges(), base.edges());
    // Inverting the word gives the same multigraph.
    EXPECT_EQ(G(oracle::invert(s), g).edges(), base.edges());
  }
}

TEST(WhiteheadGraph, DotMatchesGolden) {
  EXPECT_EQ(to_dot(G("abAB", 2)), golden("abAB_rank2.dot"));
  EXPECT_EQ(to_dot(G("aa", 2)), golden("aa_rank2.dot"));
  EXPECT_EQ(to_dot(G("a", 1)), golden("a_rank1.dot"));
}

TEST(WhiteheadGraph, JsonExport) {
  EXPECT_EQ(to_json(G("abAB", 2)).dump(),
            R"({"edges":[["x1","x2"],["x1","X2"],["X1","x2"],["X1","X2"]],"vertices":["x1","X1","x2","X2"]})");
  EXPECT_EQ(to_json(G("abAB", 2)).dump(), to_json(G("BabA", 2)).dump());
}
