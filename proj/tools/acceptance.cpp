// One PASS/FAIL line per acceptance criterion. Exit status 0 iff all pass.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "iceasm/suite.hpp"

namespace {

using namespace iceasm;

struct Part {
  std::string id;
  std::optional<int> n;
};

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;  // 0 means no limit
  std::vector<Part> parts;
};

std::string seconds_text(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << s << "s";
  return os.str();
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "A_QT(4N) = A_HT(2N) A(N)^2 at N=1,2, enumerated", 60, {{"count-qt4n", 1}, {"count-qt4n", 2}}},
      {2, "A_QT(4N-1) and A_QT(4N+1) relations at N=1, enumerated", 5, {{"count-qt-odd", 1}}},
      {3, "A_qQT(4N+2) = A_HT(2N+1) A(N) A(N+1) at N=1 and size 10", 600, {{"count-qqt", 1}, {"count-qqt", 2}}},
      {4, "Main factorizations at a = w, full and split; N=1 symbolic, N=2 at 5 points", 120,
       {{"theorem-main-4n", std::nullopt}, {"theorem-main-4n2", std::nullopt}}},
      {5, "All-ones values at a = w for every family, two smallest sizes", 30, {{"all-ones", std::nullopt}}},
      {6, "Split half-widths 2N-1, 2N-2, 2N, 2N-1, centered, N=1,2", 0, {{"half-widths", std::nullopt}}},
      {7, "Triangle exchange, 64 cases symbolic; unconstrained control fails", 10,
       {{"yang-baxter", std::nullopt}, {"yang-baxter-control", std::nullopt}}},
      {8, "Local lemmas: exchange, U-turn, loop, pass-through, symmetries, specializations, prefactors", 120,
       {{"line-exchange", std::nullopt},
        {"uturn-exchange", std::nullopt},
        {"loop", std::nullopt},
        {"pass-through", std::nullopt},
        {"symmetries", std::nullopt},
        {"pseudo-symmetry", std::nullopt},
        {"spec-z", std::nullopt},
        {"spec-ht", std::nullopt},
        {"spec-qt", std::nullopt},
        {"prefactor-forms", std::nullopt},
        {"extra-spec", std::nullopt},
        {"extra-spec-control", std::nullopt}}},
      {9, "Z(2) symmetric across groups at a = w, not at generic a", 0,
       {{"stroganov", std::nullopt}, {"stroganov-control", std::nullopt}}},
      {10, "Negative-center proportion 1/3 at sizes 6 and 3; 2/5 at sizes 10 and 5", 0, {{"one-over-n", 1}, {"one-over-n", 2}}},
      {11, "Structure: mod 4, ice round trip, state counts, bivalent insertion, engine equivalence", 0,
       {{"mod4", std::nullopt},
        {"ice-roundtrip", std::nullopt},
        {"state-counts", std::nullopt},
        {"bivalent-insertion", std::nullopt},
        {"engine-equivalence", std::nullopt}}},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    long cases = 0;
    std::vector<std::string> problems;
    for (const auto& p : c.parts) {
      const CheckEntry* e = find_check(p.id);
      CheckOptions o;
      o.n = p.n;
      CheckReport r;
      if (!e) {
        r.id = p.id;
        r.fail("no such check");
      } else {
        try {
          r = run_check(*e, o);
        } catch (const std::exception& ex) {
          r.id = p.id;
          r.fail(ex.what());
        }
      }
      cases += r.cases;
      if (!r.pass) {
        ok = false;
        problems.push_back(r.id + (p.n ? " N=" + std::to_string(*p.n) : "") + ": " + r.witness);
      }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string timing = seconds_text(secs);
    if (c.limit_seconds > 0) {
      timing += " (limit " + seconds_text(c.limit_seconds) + ")";
      if (secs >= c.limit_seconds) {
        ok = false;
        problems.push_back("time limit exceeded");
      }
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << " [" << cases << " cases, " << timing << "]\n";
    for (const auto& p : problems) std::cout << "     " << p << "\n";
    failed += !ok;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
