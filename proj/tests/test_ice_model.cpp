#include <gtest/gtest.h>

#include <set>

#include "iceasm/enumerator.hpp"
#include "iceasm/grids.hpp"

using namespace iceasm;

namespace {

struct Case {
  Family family;
  int size;
  SymClass cls;
  int n;  // matrix size of the class
};

const std::vector<Case> kCases{
    {Family::DWBC, 1, SymClass::Plain, 1}, {Family::DWBC, 2, SymClass::Plain, 2}, {Family::DWBC, 3, SymClass::Plain, 3},
    {Family::DWBC, 4, SymClass::Plain, 4}, {Family::HTEven, 2, SymClass::HT, 2},  {Family::HTEven, 4, SymClass::HT, 4},
    {Family::HTEven, 6, SymClass::HT, 6},  {Family::HTOdd, 3, SymClass::HT, 3},   {Family::HTOdd, 5, SymClass::HT, 5},
    {Family::HTOdd, 7, SymClass::HT, 7},   {Family::QTEven, 4, SymClass::QT, 4},  {Family::QTEven, 8, SymClass::QT, 8},
    {Family::QTOdd, 2, SymClass::QQT, 2},  {Family::QTOdd, 6, SymClass::QQT, 6},  {Family::QTOdd, 10, SymClass::QQT, 10},
};

IceGraph single_vertex() {
  IceGraph g(make_space({"p"}));
  int v = g.add_vertex({1});
  for (int s = 0; s < 4; ++s) g.boundary(v, s, std::nullopt);
  return g;
}

}  // namespace

TEST(Vertex, ClassificationCoversSixConfigurations) {
  std::set<VertexConfig> seen;
  int admissible = 0;
  for (int mask = 0; mask < 16; ++mask) {
    std::array<bool, 4> in{bool(mask & 1), bool(mask & 2), bool(mask & 4), bool(mask & 8)};
    auto c = classify_vertex(in);
    EXPECT_EQ(c.has_value(), std::popcount(unsigned(mask)) == 2);
    if (c) {
      ++admissible;
      seen.insert(*c);
    }
  }
  EXPECT_EQ(admissible, 6);
  EXPECT_EQ(seen.size(), 6u);
  EXPECT_EQ(classify_vertex({true, false, true, false}), VertexConfig::PlusOne);
  EXPECT_EQ(classify_vertex({false, true, false, true}), VertexConfig::MinusOne);
}

TEST(Vertex, WeightsAtGenericA) {
  IceGraph g = single_vertex();
  auto T = make_space({"a", "p"});
  SymbolicWeights w(T);
  auto table = boundary_partition_functions(g, Binding::identity(g.params(), T), w);
  ASSERT_EQ(table.size(), 6u);
  auto s = [&](int a, int p) { return sigma_mono<Rational>(T, {a, p}); };
  // Keys are inward flags for E, N, W, S.
  EXPECT_EQ(table.at({true, false, true, false}), s(2, 0));
  EXPECT_EQ(table.at({false, true, false, true}), s(2, 0));
  EXPECT_EQ(table.at({false, true, true, false}), s(1, 1));
  EXPECT_EQ(table.at({true, false, false, true}), s(1, 1));
  EXPECT_EQ(table.at({false, false, true, true}), s(1, -1));
  EXPECT_EQ(table.at({true, true, false, false}), s(1, -1));
}

TEST(Vertex, EngineAgreementOnOneVertex) {
  IceGraph g = single_vertex();
  auto T = make_space({"a", "p"});
  VarAssignment at{{"a", CycloRational::omega()}, {"p", Rational(3, 2)}};
  SymbolicWeights sym(T);
  NumericWeights num(T, at);
  auto b = Binding::identity(g.params(), T);
  auto st = boundary_partition_functions(g, b, sym);
  auto nt = boundary_partition_functions(g, b, num);
  ASSERT_EQ(st.size(), nt.size());
  for (const auto& [k, v] : st) {
    EXPECT_EQ(eval(v, at), nt.at(k));
    StateConstraints c;
    c.external = k;
    EXPECT_EQ(graph_partition_function(g, b, num, c), nt.at(k));
  }
}

TEST(Graph, ConstructionErrors) {
  IceGraph g(make_space({"p"}));
  EXPECT_THROW(g.add_vertex({1, 2}), std::invalid_argument);
  int v = g.add_vertex({1});
  int u = g.add_vertex({0});
  g.connect(v, East, u, West);
  EXPECT_THROW(g.connect(v, East, u, North), std::invalid_argument);
  EXPECT_THROW(g.boundary(v, 7, true), std::invalid_argument);
  EXPECT_THROW(g.insert_bivalent_pair(g.dangling(true)), std::invalid_argument);
  int b = g.add_bivalent();
  EXPECT_THROW(g.dot_around(b), std::invalid_argument);
}

TEST(Graph, SelfLoopCountsEachStateOnce) {
  IceGraph g(make_space({"p"}));
  int v = g.add_vertex({1});
  g.boundary(v, West, true);
  g.boundary(v, South, false);
  g.connect(v, East, v, North);
  // W in, S out: the loop must supply one in and one out, both orientations work.
  EXPECT_EQ(graph_states(g).size(), 2u);
}

TEST(Grid, SizeAndParityChecks) {
  EXPECT_THROW(build_grid(Family::HTEven, 3), std::invalid_argument);
  EXPECT_THROW(build_grid(Family::HTOdd, 4), std::invalid_argument);
  EXPECT_THROW(build_grid(Family::QTEven, 6), std::invalid_argument);
  EXPECT_THROW(build_grid(Family::QTOdd, 4), std::invalid_argument);
  EXPECT_THROW(build_grid(Family::DWBC, 0), std::invalid_argument);
  try {
    build_grid(Family::HTEven, 14);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("cap 12"), std::string::npos);
  }
  EXPECT_EQ(parse_family("ht", 4), Family::HTEven);
  EXPECT_EQ(parse_family("ht", 5), Family::HTOdd);
  EXPECT_EQ(parse_family("qt", 8), Family::QTEven);
  EXPECT_EQ(parse_family("qt", 6), Family::QTOdd);
  EXPECT_THROW(parse_family("square", 4), std::invalid_argument);
}

TEST(Grid, StatesBijectWithClassMembers) {
  for (const auto& c : kCases) {
    GridSpec g = build_grid(c.family, c.size);
    auto states = grid_states(g);
    EXPECT_EQ(BigInt(static_cast<unsigned long>(states.size())), count_class(c.cls, c.n).count)
        << to_string(c.family) << " " << c.size;
    std::set<IceState> from_grid(states.begin(), states.end());
    std::set<IceState> lifted;
    enumerate_class(c.cls, c.n, [&](const Asm& a) {
      lifted.insert(lift_state(g, a));
      return true;
    });
    EXPECT_EQ(lifted, from_grid) << to_string(c.family) << " " << c.size;
  }
}

TEST(Grid, CentralSplitMatchesCenterClass) {
  GridSpec g = build_grid(Family::QTOdd, 6);
  ASSERT_GE(g.central_edge, 0);
  EXPECT_EQ(grid_states(g, g.tag_true).size() + grid_states(g, g.tag_false).size(), grid_states(g).size());
  std::set<std::size_t> sizes{grid_states(g, g.tag_true).size(), grid_states(g, g.tag_false).size()};
  EXPECT_EQ(sizes, (std::set<std::size_t>{2, 4}));
  EXPECT_THROW(g.tag_value("sideways"), std::invalid_argument);
  EXPECT_THROW(build_grid(Family::DWBC, 2).tag_value("up"), std::invalid_argument);
  EXPECT_EQ(build_grid(Family::HTEven, 4).tags(), (std::vector<std::string>{"up", "down"}));
}

TEST(Grid, AllOnesValueIsStateCountTimesCommonWeight) {
  for (const auto& c : kCases) {
    GridSpec g = build_grid(c.family, c.size);
    CycloRational expected = i_sqrt3().pow(g.graph.tetravalent_count()) * long(grid_states(g).size());
    EXPECT_EQ(partition_function_value(g, all_ones_at_omega(g)), expected) << to_string(c.family) << " " << c.size;
  }
}

TEST(Grid, EnginesAgree) {
  GridSpec g = build_grid(Family::HTOdd, 3);
  QPoly sym = partition_function_symbolic(g);
  VarAssignment at{{"a", Rational(2)}, {"x1", Rational(3)}, {"x2", Rational(5, 3)}, {"x", Rational(7)}, {"y", Rational(-2, 5)}};
  EXPECT_EQ(eval(sym, at), partition_function_value(g, at));
  VarAssignment partial{{"a", CycloRational::omega()}, {"x1", Rational(3)}};
  WPoly spec = partition_function_specialized(g, partial);
  EXPECT_EQ(*spec.space(), *make_space({"x2", "x", "y"}));
  EXPECT_EQ(spec, specialize(sym, spec.space(), partial));
}

TEST(Grid, DwbcRowSymmetry) {
  GridSpec g = build_grid(Family::DWBC, 2);
  QPoly z = partition_function_symbolic(g);
  EXPECT_EQ(z.swap_vars("x1", "x2"), z);
  EXPECT_EQ(z.swap_vars("x3", "x4"), z);
  EXPECT_NE(z.swap_vars("x1", "x3"), z);
}

TEST(Grid, BivalentInsertionPreservesValues) {
  GridSpec g = build_grid(Family::HTEven, 4);
  VarAssignment at{{"a", Rational(2)}, {"x1", Rational(3)}, {"x2", Rational(5)}, {"x3", Rational(7, 2)}, {"x", Rational(11)}, {"y", Rational(1, 3)}};
  CycloRational before = partition_function_value(g, at);
  std::size_t states = grid_states(g).size();
  GridSpec h = g;
  for (std::size_t e = 0; e < g.graph.edges().size(); ++e) {
    if (!g.graph.edges()[e].to.is_boundary()) {
      h.graph.insert_bivalent_pair(static_cast<int>(e));
      break;
    }
  }
  h.graph.dot_around(0);
  EXPECT_EQ(h.graph.bivalent_count(), 6);
  EXPECT_EQ(graph_states(h.graph).size(), states);
  NumericWeights w(h.symbolic_space(), at);
  EXPECT_EQ(graph_partition_function(h.graph, Binding::identity(h.lines(), h.symbolic_space()), w), before);
}

TEST(Grid, StateWeightSumsToPartitionFunction) {
  GridSpec g = build_grid(Family::QTEven, 4);
  SpacePtr T = g.symbolic_space();
  SymbolicWeights w(T);
  Binding b = Binding::identity(g.lines(), T);
  QPoly total = w.zero();
  for (const auto& s : grid_states(g)) total += state_weight(g.graph, b, w, s);
  EXPECT_EQ(total, partition_function_symbolic(g));
  IceState junk(g.graph.edges().size(), 0);
  EXPECT_THROW(state_weight(g.graph, b, w, junk), std::invalid_argument);
}
