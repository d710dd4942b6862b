#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "iceasm/asm.hpp"

using namespace iceasm;

namespace {

// Rows whose nonzero entries alternate 1, -1, ..., 1.
std::vector<std::vector<int>> asm_rows(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> row(n, 0);
  std::function<void(int, int)> go = [&](int j, int sum) {
    if (j == n) {
      if (sum == 1) out.push_back(row);
      return;
    }
    for (int v : {0, 1, -1}) {
      if (sum + v < 0 || sum + v > 1) continue;
      row[j] = v;
      go(j + 1, sum + v);
    }
    row[j] = 0;
  };
  go(0, 0);
  return out;
}

// Every ASM of size n, by filtering products of valid rows.
std::vector<Asm> naive_asms(int n) {
  auto rows = asm_rows(n);
  std::vector<Asm> out;
  std::vector<std::size_t> pick(n, 0);
  SignMatrix m(n);
  std::function<void(int)> go = [&](int i) {
    if (i == n) {
      if (is_asm(m)) out.push_back(validate(m));
      return;
    }
    for (const auto& r : rows) {
      for (int j = 0; j < n; ++j) m.set(i + 1, j + 1, r[j]);
      go(i + 1);
    }
  };
  go(0);
  return out;
}

SignMatrix half_turn(const SignMatrix& m) { return quarter_rotate(quarter_rotate(m)); }

Asm permutation(const std::vector<int>& p) {
  SignMatrix m(static_cast<int>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) m.set(static_cast<int>(i) + 1, p[i], 1);
  return validate(m);
}

}  // namespace

TEST(Asm, ValidationErrors) {
  EXPECT_THROW(validate(SignMatrix(0)), InvalidAsm);
  EXPECT_THROW(validate(std::vector<std::vector<int>>{{1, 0}, {0}}), InvalidAsm);
  EXPECT_THROW(validate(std::vector<std::vector<int>>{{2, 0}, {0, 1}}), InvalidAsm);
  EXPECT_THROW(validate(std::vector<std::vector<int>>{{1, 1}, {0, 0}}), InvalidAsm);
  EXPECT_THROW(validate(std::vector<std::vector<int>>{{0, 1, 0}, {1, 0, 0}, {0, 1, 0}}), InvalidAsm);
  EXPECT_THROW(validate(std::vector<std::vector<int>>{{-1, 1, 1}, {1, 0, 0}, {1, 0, 0}}), InvalidAsm);
  EXPECT_NO_THROW(validate(std::vector<std::vector<int>>{{0, 1, 0}, {1, -1, 1}, {0, 1, 0}}));
}

TEST(Asm, NaiveOracleCounts) {
  const std::vector<std::size_t> expected{1, 2, 7, 42, 429};
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(naive_asms(n).size(), expected[n - 1]) << n;
}

TEST(Asm, ClassificationAgreesWithDirectSymmetry) {
  // Reference counts of half-turn and quarter-turn symmetric ASMs, sizes 1..5.
  const std::vector<int> ht{1, 2, 3, 10, 25};
  const std::vector<int> qt{1, 0, 1, 2, 3};
  for (int n = 1; n <= 5; ++n) {
    int h = 0, q = 0;
    for (const auto& a : naive_asms(n)) {
      Symmetries s = classify_symmetries(a);
      EXPECT_EQ(s.is_ht, half_turn(a.matrix()) == a.matrix());
      EXPECT_EQ(s.is_qt, quarter_rotate(a) == a.matrix());
      EXPECT_EQ(s.qqt.has_value(), n == 2 && a.at(1, 1) == 1);
      h += s.is_ht;
      q += s.is_qt;
    }
    EXPECT_EQ(h, ht[n - 1]) << n;
    EXPECT_EQ(q, qt[n - 1]) << n;
  }
}

TEST(Asm, QuarterRotationIsOrderFour) {
  for (const auto& a : naive_asms(4)) {
    SignMatrix r = quarter_rotate(a);
    EXPECT_TRUE(is_asm(r));
    EXPECT_EQ(quarter_rotate(quarter_rotate(quarter_rotate(r))), a.matrix());
  }
  // Output (i, j) = input (j, n+1-i).
  Asm p = permutation({2, 3, 1});
  SignMatrix r = quarter_rotate(p);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) EXPECT_EQ(r.at(i, j), p.at(j, 4 - i));
}

TEST(Asm, CenterPatterns) {
  EXPECT_THROW(center_pattern(permutation({1, 2, 3, 4})), std::invalid_argument);
  CenterPattern pos = center_pattern(permutation({1, 2}));
  EXPECT_EQ(pos.kind, CenterClass::Pos);
  CenterPattern neg = center_pattern(permutation({2, 1}));
  EXPECT_EQ(neg.kind, CenterClass::Other);
  // Size 2: only the identity has a permitted center pattern.
  Symmetries s = classify_symmetries(permutation({1, 2}));
  ASSERT_TRUE(s.qqt.has_value());
  EXPECT_EQ(s.qqt->kind, CenterClass::Pos);
  EXPECT_FALSE(classify_symmetries(permutation({2, 1})).qqt.has_value());
  EXPECT_TRUE(is_central_cell(6, 3, 4));
  EXPECT_FALSE(is_central_cell(6, 2, 3));
  EXPECT_FALSE(is_central_cell(4, 2, 2));
  EXPECT_STREQ(to_string(CenterClass::Neg), "neg");
}

TEST(Asm, IceRoundTripAllSmallSizes) {
  for (int n = 1; n <= 4; ++n) {
    std::set<std::vector<std::vector<bool>>> seen;
    for (const auto& a : naive_asms(n)) {
      FullIceState s = ice_orientation(a);
      EXPECT_EQ(asm_from_ice(s), a);
      seen.insert(s.horiz_west);
      for (int i = 1; i <= n; ++i) {
        EXPECT_FALSE(s.horiz_west[i][0]);
        EXPECT_TRUE(s.horiz_west[i][n]);
      }
    }
    EXPECT_EQ(seen.size(), naive_asms(n).size());
  }
}

TEST(Asm, IceRejectsBadStates) {
  FullIceState s = ice_orientation(permutation({1, 2}));
  FullIceState bad = s;
  bad.horiz_west[1][0] = true;
  EXPECT_THROW(asm_from_ice(bad), InvalidAsm);
  bad = s;
  bad.horiz_west[1][1] = !bad.horiz_west[1][1];
  EXPECT_THROW(asm_from_ice(bad), InvalidAsm);
  FullIceState empty;
  EXPECT_THROW(asm_from_ice(empty), InvalidAsm);
}

TEST(Asm, TextParsing) {
  Asm a = parse_asm_text("0 1 0\n1 -1 1\n0 1 0\n");
  EXPECT_EQ(a.at(2, 2), -1);
  EXPECT_EQ(parse_asm_text(a.str()), a);
  EXPECT_THROW(parse_asm_text("1 x\n0 1\n"), InvalidAsm);
  EXPECT_THROW(parse_asm_text("0 1\n0 1\n"), InvalidAsm);
}
