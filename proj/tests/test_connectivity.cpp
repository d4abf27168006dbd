#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "trustgrow/trustgrow.hpp"

using namespace trustgrow;

TEST(Spectral, ClosedForms) {
  // K_n: lambda2 = -1/(n-1). C_n: lambda2 = cos(2 pi / n).
  for (std::size_t n : {3u, 4u, 7u, 12u}) EXPECT_NEAR(lambda2(support::complete(n)).lambda2, -1.0 / (n - 1.0), 1e-9);
  for (std::size_t n : {4u, 5u, 9u, 30u})
    EXPECT_NEAR(lambda2(support::cycle(n)).lambda2, std::cos(2 * M_PI / static_cast<double>(n)), 1e-9);
  // Complete bipartite graphs are bipartite with lambda2 = 0.
  GraphBuilder b(7);
  for (VertexId u = 0; u < 3; ++u)
    for (VertexId v = 3; v < 7; ++v) b.add_edge(u, v);
  EXPECT_NEAR(lambda2(b.build()).lambda2, 0.0, 1e-9);
}

TEST(Spectral, MatchesDenseSolver) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 3 + seed % 40;
    const auto g = support::random_connected(n, 0.15, seed);
    const auto r = lambda2(g);
    EXPECT_FALSE(r.disconnected);
    EXPECT_NEAR(r.lambda2, support::dense_lambda2(g), 1e-8) << "seed " << seed;
    EXPECT_LE(r.residual, 1e-9);
  }
}

TEST(Spectral, RestartsWhenTheBasisIsCapped) {
  const auto g = support::random_connected(120, 0.05, 5);
  LanczosOptions opts;
  opts.max_basis = 12;
  const auto r = lambda2(g, opts);
  EXPECT_NEAR(r.lambda2, support::dense_lambda2(g), 1e-7);
}

TEST(Spectral, DisconnectedAndDegenerateInputs) {
  const auto r = lambda2(make_graph(4, {{0, 1}, {2, 3}}));
  EXPECT_TRUE(r.disconnected);
  EXPECT_EQ(r.lambda2, 1.0);
  EXPECT_THROW(lambda2(make_graph(3, {{0, 1}})), Error);  // isolated vertex
  EXPECT_THROW(lambda2(make_graph(1, {})), Error);
}

TEST(Spectral, NonConvergenceIsAnAnalysisError) {
  const auto g = support::random_connected(200, 0.03, 9);
  LanczosOptions opts;
  opts.max_matvecs = 3;
  opts.max_basis = 2;
  try {
    lambda2(g, opts);
    FAIL() << "expected an analysis error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::analysis);
  }
}

TEST(Conductance, ClosedForms) {
  EXPECT_EQ(conductance_exact(support::complete(4)).value, Fraction(2, 3));
  EXPECT_EQ(conductance_exact(support::cycle(4)).value, Fraction(1, 2));
  EXPECT_EQ(vertex_expansion_exact(support::complete(4)).value, Fraction(1));
  EXPECT_EQ(vertex_expansion_exact(support::cycle(6)).value, Fraction(2, 3));
  // Even cliques: (n/2)^2 / ((n/2)(n-1)).
  EXPECT_EQ(conductance_exact(support::complete(10)).value, Fraction(5, 9));
  // Two triangles joined by one edge: the bridge over a triangle's volume.
  const auto two = make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
  EXPECT_EQ(conductance_exact(two).value, Fraction(1, 7));
  EXPECT_EQ(vertex_expansion_exact(two).value, Fraction(1, 3));
}

TEST(Conductance, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const std::size_t n = 2 + seed % 12;
    const double p = 0.1 + 0.1 * static_cast<double>(seed % 6);
    const auto g = support::random_connected(n, p, seed);
    EXPECT_EQ(conductance_exact(g).value, support::brute_conductance(g)) << "seed " << seed;
    EXPECT_EQ(vertex_expansion_exact(g).value, support::brute_vertex_expansion(g)) << "seed " << seed;
  }
}

TEST(Conductance, WitnessAttainsTheMinimum) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = support::random_connected(10, 0.3, seed);
    const auto ce = conductance_exact(g);
    const auto comp = ce.witness.complement();
    const auto vol = std::min(volume(g, ce.witness), volume(g, comp));
    EXPECT_EQ(Fraction(static_cast<std::int64_t>(cut_size(g, ce.witness, comp)), static_cast<std::int64_t>(vol)),
              ce.value);
    const auto ve = vertex_expansion_exact(g);
    EXPECT_LE(2 * ve.witness.size(), 10u);
    EXPECT_EQ(Fraction(static_cast<std::int64_t>(inner_boundary(g, ve.witness, ve.witness.complement())),
                       static_cast<std::int64_t>(ve.witness.size())),
              ve.value);
  }
}

TEST(Conductance, DisconnectedAndEdgeless) {
  const auto dis = make_graph(4, {{0, 1}, {2, 3}});
  EXPECT_EQ(conductance_exact(dis).value, Fraction(0));
  EXPECT_EQ(vertex_expansion_exact(dis).value, Fraction(0));
  const auto none = conductance_exact(make_graph(3, {}));
  EXPECT_TRUE(none.degenerate);
  EXPECT_EQ(none.value, Fraction(0));
  const auto isolated = make_graph(4, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_EQ(conductance_exact(isolated).value, Fraction(0));
}

TEST(Conductance, ScaleLimit) {
  const auto g = support::cycle(26);
  try {
    conductance_exact(g);
    FAIL() << "expected a scale error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::scale);
  }
  EXPECT_THROW(vertex_expansion_exact(g, 25), Error);
  EXPECT_NO_THROW(vertex_expansion_exact(support::cycle(20)));
}

TEST(Conductance, RangeOnRandomGraphs) {
  // Both quantities lie in [0, 1]. Conductance is not capped at 1/2: dense
  // graphs exceed it (K4 gives 2/3, K6 gives 3/5).
  bool above_half = false;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = support::random_connected(6 + seed % 8, 0.1 + 0.05 * static_cast<double>(seed % 10), seed);
    const auto v = conductance_exact(g).value;
    EXPECT_GE(v, Fraction(0));
    EXPECT_LE(v, Fraction(1));
    above_half = above_half || v > Fraction(1, 2);
    const auto pv = vertex_expansion_exact(g).value;
    EXPECT_GE(pv, Fraction(0));
    EXPECT_LE(pv, Fraction(1));
  }
  EXPECT_TRUE(above_half);
  EXPECT_EQ(conductance_exact(support::complete(6)).value, Fraction(3, 5));
  EXPECT_GT(conductance_exact(support::complete(4)).value, Fraction(1, 2));
}

TEST(Conductance, CheegerSandwich) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = support::random_connected(4 + seed % 12, 0.25, seed);
    const auto b = conductance_bounds_spectral(g);
    const double exact = conductance_exact(g).value.to_double();
    EXPECT_LE(b.lower, exact + 1e-12);
    EXPECT_GE(b.upper_raw, exact - 1e-12);
  }
}

TEST(Conductance, RegularRelationAndSpectralVertexBound) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t d = 3 + seed % 3;
    const std::size_t n = (d % 2 == 1) ? 12 : 11;
    const auto g = gen_random_regular(n, d, seed);
    const auto pe = conductance_exact(g).value;
    const auto pv = vertex_expansion_exact(g).value;
    EXPECT_LE(pv / Fraction(static_cast<std::int64_t>(d)), pe);
    EXPECT_LE(pe, pv);
    if (is_connected(g)) {
      const auto lb = vertex_expansion_lower_bound(g);
      EXPECT_TRUE(lb.regular);
      EXPECT_FALSE(lb.heuristic);
      EXPECT_LE(lb.value, pv.to_double() + 1e-12);
    }
  }
  const auto star = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  EXPECT_TRUE(vertex_expansion_lower_bound(star).heuristic);
}

TEST(Thresholds, ValuesAndFeasibility) {
  const auto t = threshold_conductance(Fraction(1), Fraction(1, 5), Fraction(1, 10));
  EXPECT_EQ(t.value, Fraction(2, 5));
  EXPECT_TRUE(t.feasible);
  EXPECT_FALSE(threshold_conductance(Fraction(1), Fraction(1, 5), Fraction(1, 8)).feasible);  // exactly 1/2
  const auto tv = threshold_vertex_expansion(Fraction(1, 3), Fraction(1, 5));
  EXPECT_EQ(tv.value, Fraction(3, 5));
  EXPECT_TRUE(tv.feasible);
  EXPECT_TRUE(threshold_vertex_expansion(Fraction(1, 3), Fraction(1, 3)).feasible);
  EXPECT_FALSE(threshold_vertex_expansion(Fraction(1, 3), Fraction(1, 2)).feasible);
  try {
    threshold_conductance(Fraction(1), Fraction(0), Fraction(1, 10));
    FAIL() << "expected a config error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::config);
  }
}

TEST(Analyze, ReportsExactAndSpectral) {
  const auto r = analyze(support::complete(4));
  ASSERT_TRUE(r.phi_e_exact && r.phi_v_exact && r.spectral);
  EXPECT_EQ(*r.phi_e_exact, Fraction(2, 3));
  EXPECT_EQ(*r.phi_v_exact, Fraction(1));
  EXPECT_NEAR(r.spectral->lambda2, -1.0 / 3.0, 1e-9);
  EXPECT_NEAR(r.spectral->lower, 2.0 / 3.0, 1e-9);  // tight on K4

  const auto dis = analyze(make_graph(4, {{0, 1}, {2, 3}}));
  EXPECT_TRUE(dis.disconnected);
  EXPECT_EQ(*dis.phi_e_exact, Fraction(0));

  const auto big = support::cycle(40);
  EXPECT_THROW(analyze(big), Error);
  AnalyzeOptions opts;
  opts.spectral = true;
  const auto sr = analyze(big, opts);
  EXPECT_FALSE(sr.phi_e_exact.has_value());
  EXPECT_FALSE(sr.phi_v_exact.has_value());
  EXPECT_EQ(sr.method, Method::spectral);
  EXPECT_TRUE(sr.spectral.has_value());
}
