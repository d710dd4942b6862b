#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "iceasm/enumerator.hpp"

using namespace iceasm;

namespace {

BigInt count_of(SymClass c, int n, int jobs = 1) { return count_class(c, n, jobs).count; }

struct TempFile {
  std::filesystem::path path;
  TempFile() {
    path = std::filesystem::temp_directory_path() /
           ("iceasm_cache_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name() + ".jsonl");
    std::filesystem::remove(path);
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST(Enumerator, KnownSequences) {
  const std::vector<long> plain{1, 2, 7, 42, 429, 7436, 218348, 10850216, 911835460};
  const std::vector<long> ht{1, 2, 3, 10, 25, 140, 588, 5544, 39204, 622908};
  const std::vector<long> qt{1, 0, 1, 2, 3, 0, 12, 40, 100, 0};
  for (int n = 1; n <= 9; ++n) EXPECT_EQ(count_of(SymClass::Plain, n), plain[n - 1]) << n;
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(count_of(SymClass::HT, n), ht[n - 1]) << n;
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(count_of(SymClass::QT, n), qt[n - 1]) << n;
  EXPECT_EQ(count_of(SymClass::Plain, 10), BigInt("129534272700"));
  EXPECT_EQ(count_of(SymClass::Plain, 12), BigInt("12611311859677500"));
}

TEST(Enumerator, QuarterTurnUpToCenterSplits) {
  CountRecord r2 = count_class(SymClass::QQT, 2);
  EXPECT_EQ(r2.count, 1);
  ASSERT_TRUE(r2.split);
  EXPECT_EQ(r2.split->first, 0);
  EXPECT_EQ(r2.split->second, 1);
  CountRecord r6 = count_class(SymClass::QQT, 6);
  EXPECT_EQ(r6.count, 6);
  EXPECT_EQ(r6.split, std::make_optional(std::make_pair(BigInt(2), BigInt(4))));
  EXPECT_EQ(count_of(SymClass::QQTNeg, 6), 2);
  EXPECT_EQ(count_of(SymClass::QQTPos, 6), 4);
  CountRecord r10 = count_class(SymClass::QQT, 10, 4);
  EXPECT_EQ(r10.count, 350);
  EXPECT_EQ(r10.split, std::make_optional(std::make_pair(BigInt(140), BigInt(210))));
}

TEST(Enumerator, ThreadCountDoesNotChangeResults) {
  for (SymClass c : {SymClass::QT, SymClass::QQT}) {
    int n = c == SymClass::QT ? 8 : 6;
    CountRecord one = count_class(c, n, 1);
    for (int jobs : {2, 3, 8, 64}) EXPECT_EQ(count_class(c, n, jobs), one) << jobs;
  }
}

TEST(Enumerator, StreamingAgreesWithCounts) {
  for (SymClass c : {SymClass::Plain, SymClass::HT, SymClass::QT}) {
    for (int n = 1; n <= 7; ++n) {
      auto all = enumerate_class(c, n);
      EXPECT_EQ(BigInt(static_cast<unsigned long>(all.size())), count_of(c, n)) << to_string(c) << " " << n;
      std::set<Asm> distinct(all.begin(), all.end());
      EXPECT_EQ(distinct.size(), all.size());
      for (const auto& a : all) {
        ASSERT_TRUE(is_asm(a.matrix()));
        Symmetries s = classify_symmetries(a);
        if (c == SymClass::HT) {
          EXPECT_TRUE(s.is_ht);
        }
        if (c == SymClass::QT) {
          EXPECT_TRUE(s.is_qt);
        }
      }
    }
  }
  for (SymClass c : {SymClass::QQT, SymClass::QQTNeg, SymClass::QQTPos}) {
    auto all = enumerate_class(c, 6);
    EXPECT_EQ(BigInt(static_cast<unsigned long>(all.size())), count_of(c, 6));
    for (const auto& a : all) {
      Symmetries s = classify_symmetries(a);
      ASSERT_TRUE(s.qqt.has_value());
      if (c == SymClass::QQTNeg) {
        EXPECT_EQ(s.qqt->kind, CenterClass::Neg);
      }
      if (c == SymClass::QQTPos) {
        EXPECT_EQ(s.qqt->kind, CenterClass::Pos);
      }
    }
  }
}

TEST(Enumerator, EarlyStop) {
  int seen = 0;
  enumerate_class(SymClass::Plain, 6, [&](const Asm&) { return ++seen < 10; });
  EXPECT_EQ(seen, 10);
}

TEST(Enumerator, SizeChecks) {
  EXPECT_THROW(count_class(SymClass::Plain, 13), SizeCapError);
  try {
    count_class(SymClass::QT, 20);
    FAIL();
  } catch (const SizeCapError& e) {
    EXPECT_NE(std::string(e.what()).find("12"), std::string::npos);
  }
  EXPECT_THROW(count_class(SymClass::Plain, 0), std::invalid_argument);
  EXPECT_THROW(count_class(SymClass::QQT, 4), std::invalid_argument);
  EXPECT_THROW(enumerate_class(SymClass::QQTNeg, 7), std::invalid_argument);
}

TEST(Enumerator, ClassNames) {
  for (SymClass c : {SymClass::Plain, SymClass::HT, SymClass::QT, SymClass::QQT, SymClass::QQTNeg, SymClass::QQTPos}) {
    EXPECT_EQ(parse_sym_class(to_string(c)), c);
  }
  EXPECT_FALSE(parse_sym_class("QT").has_value());
}

TEST(CountCache, StoreIsIdempotentAndPersistent) {
  TempFile f;
  CountRecord r = count_class(SymClass::QQT, 6);
  {
    CountCache c(f.path.string());
    EXPECT_EQ(c.size(), 0u);
    c.store(r);
    c.store(r);
    EXPECT_EQ(c.lookup(SymClass::QQT, 6), r);
    EXPECT_FALSE(c.lookup(SymClass::QQT, 10).has_value());
  }
  std::ifstream in(f.path);
  std::string line, all;
  int lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    all = line;
  }
  EXPECT_EQ(lines, 1);
  EXPECT_EQ(all, R"({"class":"qqt","count":"6","n":6,"split":["2","4"]})");
  CountCache reopened(f.path.string());
  EXPECT_EQ(reopened.lookup(SymClass::QQT, 6), r);
  CountRecord wrong = r;
  wrong.count = 7;
  wrong.split = std::make_pair(BigInt(3), BigInt(4));
  EXPECT_THROW(reopened.store(wrong), std::runtime_error);
}

TEST(CountCache, CorruptLinesAreSkippedWithWarning) {
  TempFile f;
  {
    std::ofstream out(f.path);
    out << R"({"class":"ht","count":"25","n":5,"split":null})" << "\n";
    out << "not json\n";
    out << R"({"class":"bogus","count":"1","n":1,"split":null})" << "\n";
    out << R"({"class":"qqt","count":"6","n":6,"split":["1","4"]})" << "\n";
    out << R"({"class":"ht","count":"26","n":5,"split":null})" << "\n";
    out << "\n";
  }
  std::ostringstream warn;
  CountCache c(f.path.string(), &warn);
  EXPECT_EQ(c.size(), 1u);
  ASSERT_TRUE(c.lookup(SymClass::HT, 5));
  EXPECT_EQ(c.lookup(SymClass::HT, 5)->count, 25);
  const std::string w = warn.str();
  for (const char* where : {":2:", ":3:", ":4:", ":5:"}) EXPECT_NE(w.find(where), std::string::npos) << where;
  EXPECT_EQ(w.find(":6:"), std::string::npos);
}
