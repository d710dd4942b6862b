#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Result {
  int code = -1;
  std::string out;  // stdout only
  std::string all;  // stdout and stderr
};

std::string capture(const std::string& cmd, int& code) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

Result run(const std::string& args, const std::string& env = "env -u ICEASM_CACHE") {
  Result r;
  const std::string base = env + " " + std::string(ICEASM_BIN) + " " + args;
  r.all = capture(base + " 2>&1", r.code);
  int code2 = -1;
  r.out = capture(base + " 2>/dev/null", code2);
  return r;
}

bool ascii(const std::string& s) {
  for (unsigned char c : s)
    if (c > 127) return false;
  return true;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("iceasm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST(Cli, CountQuarterTurnUpToCenter) {
  Result r = run("count --class qqt --n 6");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "qqt n=6: 6 (split neg/pos 2/4)\n");
}

TEST(Cli, CountQuarterTurnVanishes) {
  Result r = run("count --class qt --n 6");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "qt n=6: 0\n");
}

TEST(Cli, CountJson) {
  Result r = run("--json count --class ht --n 5");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"class\":\"ht\",\"count\":\"25\",\"n\":5,\"split\":null}\n");
}

TEST(Cli, VerifyMainFactorizationSmallest) {
  Result r = run("verify --id theorem-main-4n2 --n 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("PASS theorem-main-4n2", 0), 0u) << r.out;
}

TEST(Cli, VerifyJsonIsDeterministic) {
  Result a = run("--json verify --id yang-baxter");
  Result b = run("--json --jobs 3 verify --id yang-baxter");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"verdict\": \"pass\""), std::string::npos) << a.out;
}

TEST(Cli, VerifyList) {
  Result r = run("verify --list");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("stroganov"), std::string::npos);
  EXPECT_TRUE(ascii(r.out));
}

TEST(Cli, UsageErrorsExitTwo) {
  for (const char* args : {"", "bogus", "count --class xyz --n 4", "count --class qqt --n 4", "verify --id nope",
                           "verify --all --n 2", "zdump --family ht --size 3 --at q=2", "zdump --family ht --size 3 --at x1=0",
                           "zdump --family ht --size 4 --tag sideways", "--jobs 0 count --class ht --n 4", "cache"}) {
    Result r = run(args);
    EXPECT_EQ(r.code, 2) << args << "\n" << r.all;
  }
}

TEST(Cli, SizeCapRefusalNamesCap) {
  for (const char* args : {"count --class plain --n 13", "zdump --family dwbc --size 13", "verify --id count-qt4n --n 9"}) {
    Result r = run(args);
    EXPECT_EQ(r.code, 2) << args;
    EXPECT_NE(r.all.find("12"), std::string::npos) << args << "\n" << r.all;
  }
  Result r = run("zdump --family qt --size 8 --at symbolic");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.all.find("cap is 16"), std::string::npos) << r.all;
}

TEST(Cli, HelpExitsZero) {
  Result r = run("--help");
  EXPECT_EQ(r.code, 0);
  for (const char* sub : {"count", "table", "verify", "zdump", "cache"}) EXPECT_NE(r.out.find(sub), std::string::npos) << sub;
}

TEST(Cli, ZdumpForms) {
  Result ones = run("zdump --family qt --size 6 --at ones");
  EXPECT_EQ(ones.code, 0);
  EXPECT_NE(ones.out.find("value: 486"), std::string::npos) << ones.out;
  Result tag = run("zdump --family qt --size 6 --at ones --tag downright");
  EXPECT_EQ(tag.code, 0);
  Result sym = run("zdump --family ht --size 3 --at a=w,x1=2");
  EXPECT_EQ(sym.code, 0);
  EXPECT_NE(sym.out.find("polynomial: "), std::string::npos);
  EXPECT_TRUE(ascii(sym.out));
  Result j1 = run("--json zdump --family ht --size 3 --at a=w,x1=2,x2=3/2,x=5,y=7");
  Result j2 = run("--json zdump --family ht --size 3 --at a=w,x1=2,x2=3/2,x=5,y=7");
  EXPECT_EQ(j1.code, 0);
  EXPECT_EQ(j1.out, j2.out);
  for (const char* k : {"\"family\"", "\"mode\"", "\"polynomial\": null", "\"value\"", "\"state_count\": 3"})
    EXPECT_NE(j1.out.find(k), std::string::npos) << k << "\n" << j1.out;
}

TEST(Cli, TableCrossChecks) {
  Result r = run("table --max-n 10");
  EXPECT_EQ(r.code, 0) << r.all;
  EXPECT_NE(r.out.find("350 (140/210)"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("A_qQT(4N+2) = A_HT(2N+1) A(N) A(N+1), N=2: 350 = 25*2*7"), std::string::npos) << r.out;
  Result a = run("--json table --max-n 6");
  Result b = run("--json table --max-n 6");
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, CacheIsIdempotentAndToleratesCorruption) {
  TempDir d;
  const std::string flag = "--cache " + d.path.string() + " ";
  EXPECT_EQ(run(flag + "count --class ht --n 8").code, 0);
  EXPECT_EQ(run(flag + "count --class ht --n 8").code, 0);
  const auto file = d.path / "counts.jsonl";
  {
    std::ifstream in(file);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) ++lines;
    EXPECT_EQ(lines, 1);
  }
  {
    std::ofstream out(file, std::ios::app);
    out << "garbage\n";
  }
  Result list = run(flag + "cache");
  EXPECT_EQ(list.code, 0);
  EXPECT_NE(list.out.find("ht n=8: 5544"), std::string::npos) << list.all;
  EXPECT_NE(list.all.find("warning"), std::string::npos);
  Result path = run("cache --path", "ICEASM_CACHE=" + d.path.string());
  EXPECT_EQ(path.code, 0);
  EXPECT_NE(path.out.find("counts.jsonl"), std::string::npos) << path.all;
}
