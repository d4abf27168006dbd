#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "trustgrow/trustgrow.hpp"

using namespace trustgrow;

TEST(Fraction, NormalizesSign) {
  Fraction f(6, -8);
  EXPECT_EQ(f.num(), -3);
  EXPECT_EQ(f.den(), 4);
  EXPECT_EQ(f.str(), "-3/4");
  EXPECT_EQ(Fraction(4, 2).str(), "2");
}

TEST(Fraction, ZeroDenominatorThrows) { EXPECT_THROW(Fraction(1, 0), std::exception); }

TEST(Fraction, ParsesDecimalsExactly) {
  EXPECT_EQ(Fraction::parse("0.375"), Fraction(3, 8));
  EXPECT_EQ(Fraction::parse("3/8"), Fraction(3, 8));
  EXPECT_EQ(Fraction::parse(".5"), Fraction(1, 2));
  EXPECT_EQ(Fraction::parse("-2"), Fraction(-2));
  EXPECT_EQ(Fraction::parse("0.1") * Fraction(3), Fraction(3, 10));
  for (const char* bad : {"", "a", "1/0", "1..2", "1/", "--1"}) EXPECT_THROW(Fraction::parse(bad), Error) << bad;
}

TEST(Fraction, ArithmeticAndOrdering) {
  const Fraction a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Fraction(1, 2));
  EXPECT_EQ(a - b, Fraction(1, 6));
  EXPECT_EQ(a * b, Fraction(1, 18));
  EXPECT_EQ(a / b, Fraction(2));
  EXPECT_LT(b, a);
  EXPECT_GT(Fraction(-1, 2), Fraction(-2, 3));
  EXPECT_THROW(a / Fraction(0), std::exception);
}

TEST(Fraction, OverflowIsReported) {
  const Fraction big(INT64_MAX / 2 + 1, 1);
  EXPECT_THROW(big * Fraction(4), std::overflow_error);
}

TEST(Fraction, RandomFieldIdentities) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(-50, 50);
  for (int i = 0; i < 500; ++i) {
    const int an = pick(rng), bn = pick(rng);
    const int ad = pick(rng) == 0 ? 1 : std::abs(pick(rng)) + 1, bd = std::abs(pick(rng)) + 1;
    const Fraction a(an, ad), b(bn, bd);
    EXPECT_EQ((a + b) - b, a);
    EXPECT_EQ(a * b, b * a);
    if (b != Fraction(0)) {
      EXPECT_EQ((a / b) * b, a);
    }
    EXPECT_EQ(a < b, an * bd < bn * ad);
    EXPECT_EQ(Fraction::parse(a.str()), a);
  }
}

TEST(VertexSet, SetAlgebra) {
  auto a = VertexSet::of(130, {0, 64, 129});
  auto b = VertexSet::of(130, {64, 100});
  EXPECT_EQ((a | b).size(), 4u);
  EXPECT_EQ((a & b).members(), std::vector<VertexId>{64});
  EXPECT_EQ((a - b).members(), (std::vector<VertexId>{0, 129}));
  EXPECT_EQ(a.complement().size(), 127u);
  EXPECT_TRUE((a & b).is_subset_of(a));
  EXPECT_TRUE(a.intersects(b));
  EXPECT_FALSE(VertexSet::of(130, {1}).intersects(b));
  EXPECT_EQ(VertexSet::full(130).size(), 130u);
  EXPECT_THROW(a.insert(130), Error);
}

TEST(TrustGraph, BuilderRejectsBadEdges) {
  GraphBuilder b(3);
  b.add_edge(0, 1);
  EXPECT_THROW(b.add_edge(1, 0), Error);
  EXPECT_THROW(b.add_edge(2, 2), Error);
  EXPECT_THROW(b.add_edge(0, 3), Error);
  EXPECT_FALSE(b.try_add_edge(0, 1));
  EXPECT_TRUE(b.try_add_edge(1, 2));
  const auto g = b.build();
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(0, 2));
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(TrustGraph, CutVolumeBoundaryMatchDefinitions) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = support::random_connected(12, 0.3, seed);
    std::mt19937_64 rng(seed);
    VertexSet a(12);
    for (VertexId v = 0; v < 12; ++v)
      if (rng() % 2) a.insert(v);
    const auto c = a.complement();
    std::size_t cut = 0, vol = 0;
    for (const auto& [u, v] : g.edges()) {
      if (a.contains(u) != a.contains(v)) ++cut;
      vol += a.contains(u) + a.contains(v);
    }
    EXPECT_EQ(cut_size(g, a, c), cut);
    EXPECT_EQ(volume(g, a), vol);
    std::size_t boundary = 0;
    a.for_each([&](VertexId x) {
      for (VertexId y : g.neighbors(x))
        if (c.contains(y)) {
          ++boundary;
          break;
        }
    });
    EXPECT_EQ(inner_boundary(g, a, c), boundary);
  }
}

TEST(TrustGraph, InducedSubgraphKeepsInternalEdges) {
  const auto g = support::complete(6);
  const auto sub = induced_subgraph(g, VertexSet::of(6, {1, 3, 5}));
  EXPECT_EQ(sub.graph.vertex_count(), 3u);
  EXPECT_EQ(sub.graph.edge_count(), 3u);
  EXPECT_EQ(sub.original, (std::vector<VertexId>{1, 3, 5}));
  EXPECT_THROW(induced_subgraph(g, VertexSet(6)), Error);
}

TEST(TrustGraph, DegreeBoundsAreExact) {
  const auto g = support::cycle(5);
  EXPECT_TRUE(degree_bounds_ok(g, Fraction(1), 2));
  EXPECT_TRUE(degree_bounds_ok(g, Fraction(2, 3), 3));   // 2 >= 2
  EXPECT_FALSE(degree_bounds_ok(g, Fraction(3, 4), 3));  // 2 < 9/4
  EXPECT_FALSE(degree_bounds_ok(g, Fraction(1, 2), 1));  // 2 > 1
  EXPECT_TRUE(is_regular(g));
  EXPECT_TRUE(is_connected(g));
  EXPECT_FALSE(is_connected(make_graph(4, {{0, 1}, {2, 3}})));
}
