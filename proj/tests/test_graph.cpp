#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "liftlab/liftlab.hpp"

using namespace liftlab;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::io_error;
}

}  // namespace

TEST(RegularGraph, NormalizesAndSortsEdges) {
  RegularGraph g(3, 2, {{2, 1}, {1, 0}, {0, 2}});
  ASSERT_EQ(g.edge_count(), 3U);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1}));
  EXPECT_EQ(g.edges()[1], (Edge{0, 2}));
  EXPECT_EQ(g.edges()[2], (Edge{1, 2}));
  EXPECT_TRUE(g.has_edge(2, 0));
  auto nb = g.neighbors(1);
  EXPECT_EQ(std::vector<Vertex>(nb.begin(), nb.end()), (std::vector<Vertex>{0, 2}));
}

TEST(RegularGraph, RejectsInvalidInput) {
  EXPECT_EQ(code_of([] { RegularGraph(3, 2, {{0, 0}, {1, 2}, {0, 2}}); }), ErrorCode::validation_error);
  EXPECT_EQ(code_of([] { RegularGraph(3, 2, {{0, 1}, {1, 0}, {0, 2}}); }), ErrorCode::validation_error);
  EXPECT_EQ(code_of([] { RegularGraph(3, 2, {{0, 1}, {1, 3}, {0, 2}}); }), ErrorCode::validation_error);
  EXPECT_EQ(code_of([] { RegularGraph(3, 1, {{0, 1}}); }), ErrorCode::validation_error);  // n*d odd
  // right edge count, wrong degrees
  EXPECT_EQ(code_of([] { RegularGraph(4, 2, {{0, 1}, {0, 2}, {0, 3}, {1, 2}}); }), ErrorCode::validation_error);
}

TEST(Generators, BasicFamilies) {
  auto k5 = complete_graph(5);
  EXPECT_EQ(k5.n(), 5U);
  EXPECT_EQ(k5.d(), 4U);
  EXPECT_EQ(k5.edge_count(), 10U);
  EXPECT_FALSE(is_bipartite(k5));

  auto k33 = complete_bipartite(3);
  EXPECT_EQ(k33.n(), 6U);
  EXPECT_TRUE(is_bipartite(k33));
  EXPECT_FALSE(k33.has_edge(0, 1));
  EXPECT_TRUE(k33.has_edge(0, 3));

  EXPECT_TRUE(is_bipartite(cycle_graph(6)));
  EXPECT_FALSE(is_bipartite(cycle_graph(7)));

  auto copies = disjoint_copies(complete_graph(4), 3);
  EXPECT_EQ(copies.n(), 12U);
  EXPECT_EQ(component_count(copies), 3U);
  EXPECT_FALSE(copies.has_edge(3, 4));
}

TEST(RandomRegular, ProducesSimpleRegularGraphs) {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{10, 3}, {12, 4}, {50, 5}, {500, 6}, {400, 4}}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto g = random_regular(n, d, seed);  // the constructor validates simplicity and regularity
      EXPECT_EQ(g.n(), static_cast<std::size_t>(n));
      EXPECT_EQ(g.d(), static_cast<std::size_t>(d));
    }
  }
}

TEST(RandomRegular, DeterministicPerSeed) {
  EXPECT_EQ(random_regular(30, 3, 11), random_regular(30, 3, 11));
  EXPECT_NE(random_regular(30, 3, 11), random_regular(30, 3, 12));
}

TEST(RandomRegular, RejectsImpossibleParameters) {
  EXPECT_THROW(random_regular(5, 3, 0), Error);  // n*d odd
  EXPECT_THROW(random_regular(4, 4, 0), Error);  // d >= n
}

TEST(RandomRegular, SpreadsOverAllGraphsOnFourVertices) {
  // 2-regular on 4 labelled vertices: the three 4-cycles, equally likely
  // under the configuration model conditioned on simplicity.
  std::map<std::vector<Edge>, int> seen;
  const int draws = 3000;
  for (int s = 0; s < draws; ++s) ++seen[random_regular(4, 2, static_cast<std::uint64_t>(s)).edges()];
  ASSERT_EQ(seen.size(), 3U);
  for (const auto& [edges, count] : seen) EXPECT_NEAR(count, draws / 3.0, 4.0 * std::sqrt(draws * 2.0 / 9.0));
}

TEST(EdgesBetween, CountsOrderedIncidences) {
  auto g = complete_graph(4);
  const VertexSubset s({0, 1});
  EXPECT_EQ(edges_between(g, s, s), 2U);  // (0,1) and (1,0)
  EXPECT_EQ(edges_between(g, s, VertexSubset({2, 3})), 4U);
  EXPECT_EQ(edges_between(g, VertexSubset::range(0, 4), VertexSubset::range(0, 4)), 12U);
}

TEST(VertexSubset, MaskAndRange) {
  EXPECT_EQ(VertexSubset::from_mask(0b1011).members(), (std::vector<Vertex>{0, 1, 3}));
  EXPECT_EQ(VertexSubset::range(2, 5).members(), (std::vector<Vertex>{2, 3, 4}));
  EXPECT_EQ(VertexSubset({3, 1, 3}).members(), (std::vector<Vertex>{1, 3}));
}

TEST(GraphIo, RoundTrip) {
  auto g = random_regular(20, 3, 5);
  std::stringstream ss;
  write_graph(ss, g);
  EXPECT_EQ(read_graph(ss), g);
}

TEST(GraphIo, AcceptsCrlfAndBlankLines) {
  std::stringstream ss("3 2\r\n\r\n0 1\r\n1 2\r\n0 2\r\n");
  EXPECT_EQ(read_graph(ss), complete_graph(3));
}

TEST(GraphIo, ParseErrorsNameTheLine) {
  std::stringstream bad("3 2\n0 1\n1 x\n0 2\n");
  try {
    read_graph(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse_error);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  std::stringstream dup("3 2\n0 1\n1 0\n0 2\n");
  EXPECT_EQ(code_of([&] { read_graph(dup); }), ErrorCode::validation_error);
  std::stringstream empty("");
  EXPECT_EQ(code_of([&] { read_graph(empty); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { read_graph_file("/nonexistent/graph.txt"); }), ErrorCode::io_error);
}
