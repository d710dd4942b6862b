#include <gtest/gtest.h>

#include <set>

#include "iceasm/suite.hpp"

using namespace iceasm;

namespace {

std::vector<std::string> registry_ids() {
  std::vector<std::string> out;
  for (const auto& e : check_registry()) out.push_back(e.id);
  return out;
}

}  // namespace

class RegisteredCheck : public ::testing::TestWithParam<std::string> {};

TEST_P(RegisteredCheck, Passes) {
  const CheckEntry* e = find_check(GetParam());
  ASSERT_NE(e, nullptr);
  CheckReport r = run_check(*e, CheckOptions{});
  EXPECT_TRUE(r.pass) << r.witness;
  EXPECT_GT(r.cases, 0);
  EXPECT_EQ(r.id, GetParam());
}

INSTANTIATE_TEST_SUITE_P(Registry, RegisteredCheck, ::testing::ValuesIn(registry_ids()),
                         [](const ::testing::TestParamInfo<std::string>& info) {
                           std::string s = info.param;
                           for (char& c : s)
                             if (c == '-') c = '_';
                           return s;
                         });

TEST(Registry, IdsAreUniqueAndDescribed) {
  std::set<std::string> seen;
  for (const auto& e : check_registry()) {
    EXPECT_TRUE(seen.insert(e.id).second) << e.id;
    EXPECT_FALSE(e.summary.empty()) << e.id;
  }
  for (const char* id : {"yang-baxter", "theorem-main-4n", "theorem-main-4n2", "half-widths", "stroganov", "mod4"}) {
    EXPECT_NE(find_check(id), nullptr) << id;
  }
  EXPECT_EQ(find_check("no-such-check"), nullptr);
}

TEST(Registry, SizeCapIsReported) {
  CheckOptions o;
  o.n = 50;
  EXPECT_THROW(run_check(*find_check("count-qt4n"), o), SizeCapError);
}

TEST(Registry, ExplicitSizeRunsOneInstance) {
  CheckOptions o;
  o.n = 1;
  CheckReport r = run_check(*find_check("theorem-main-4n2"), o);
  EXPECT_TRUE(r.pass) << r.witness;
  bool has_n = false;
  for (const auto& [k, v] : r.params) has_n = has_n || (k == "n" && v == "1");
  EXPECT_TRUE(has_n);
}

TEST(Registry, ReportJsonIsStable) {
  CheckReport a = run_check(*find_check("loop"), CheckOptions{});
  CheckReport b = run_check(*find_check("loop"), CheckOptions{});
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
  auto j = a.to_json();
  for (const char* k : {"id", "title", "params", "verdict", "cases", "witness", "notes"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_FALSE(j.contains("seconds"));
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_TRUE(j["witness"].is_null());
}

TEST(Report, FirstWitnessIsKept) {
  CheckReport r;
  r.expect(true, "fine");
  r.expect(false, "first");
  r.expect_equal(CycloRational(1), CycloRational(2), "second");
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.cases, 3);
  EXPECT_EQ(r.witness, "first");
  EXPECT_EQ(r.to_json()["verdict"], "fail");
  CheckReport outer;
  outer.absorb(r);
  EXPECT_FALSE(outer.pass);
  EXPECT_EQ(outer.cases, 3);
}

TEST(SamplePointsTest, DeterministicDistinctAndFixed) {
  SpacePtr S = make_space({"a", "x1", "x2", "x3", "x4"});
  SamplePoints p1(7), p2(7), p3(8);
  VarAssignment v1 = p1.draw(S), v2 = p2.draw(S), v3 = p3.draw(S);
  EXPECT_EQ(describe(v1), describe(v2));
  EXPECT_NE(describe(v1), describe(v3));
  std::set<std::string> values;
  for (const auto& [k, x] : v1.values()) values.insert(x.str());
  EXPECT_EQ(values.size(), 5u);
  VarAssignment f = p1.draw(S, {}, {{"a", CycloRational::omega()}});
  EXPECT_EQ(*f.find("a"), CycloRational::omega());
  // sigma(x1/x2) must not vanish, so x1 != +-x2.
  for (int i = 0; i < 50; ++i) {
    VarAssignment v = p1.draw(S, {mono(*S, {{"x1", 1}, {"x2", -1}})});
    EXPECT_NE(*v.find("x1"), *v.find("x2"));
  }
}

TEST(Prefactor, SmallExamples) {
  SpacePtr T = space_with_a({"x1", "x2", "x3"});
  auto s = [&](std::initializer_list<std::pair<std::string, int>> e) { return sigma_mono<Rational>(T, mono(*T, e)); };
  // A with pivot x2, first group {x1}, second group {x3}.
  EXPECT_EQ(specialization_prefactor(PrefactorKind::A, {"x2", {"x1"}, {"x3"}}, T),
            s({{"a", 1}, {"x1", 1}, {"x2", -1}}) * s({{"a", 2}, {"x2", 1}, {"x3", -1}}));
  EXPECT_EQ(specialization_prefactor(PrefactorKind::ABar, {"x2", {"x1"}, {"x3"}}, T),
            s({{"a", 1}, {"x2", 1}, {"x1", -1}}) * s({{"a", 2}, {"x3", 1}, {"x2", -1}}));
  // At a = w the second-group shape collapses to the first-group one.
  EXPECT_EQ(reduce_generic_a(specialization_prefactor(PrefactorKind::A, {"x2", {"x1"}, {"x3"}}, T)),
            reduce_generic_a(specialization_prefactor_omega(PrefactorKind::A, {"x2", {"x1"}, {"x3"}}, T)));
  EXPECT_NE(specialization_prefactor(PrefactorKind::A, {"x2", {"x1"}, {"x3"}}, T),
            specialization_prefactor_omega(PrefactorKind::A, {"x2", {"x1"}, {"x3"}}, T));
}
