#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "iceasm/asm.hpp"
#include "iceasm/cyclo.hpp"

namespace iceasm {

enum class SymClass { Plain, HT, QT, QQT, QQTNeg, QQTPos };

inline const char* to_string(SymClass c) {
  switch (c) {
    case SymClass::Plain: return "plain";
    case SymClass::HT: return "ht";
    case SymClass::QT: return "qt";
    case SymClass::QQT: return "qqt";
    case SymClass::QQTNeg: return "qqt-neg";
    case SymClass::QQTPos: return "qqt-pos";
  }
  return "?";
}

inline std::optional<SymClass> parse_sym_class(const std::string& s) {
  for (SymClass c : {SymClass::Plain, SymClass::HT, SymClass::QT, SymClass::QQT, SymClass::QQTNeg, SymClass::QQTPos}) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

inline bool is_qqt_class(SymClass c) { return c == SymClass::QQT || c == SymClass::QQTNeg || c == SymClass::QQTPos; }

struct CountRecord {
  SymClass cls = SymClass::Plain;
  int n = 0;
  BigInt count = 0;
  std::optional<std::pair<BigInt, BigInt>> split;  // (neg, pos) for QQT

  friend bool operator==(const CountRecord& l, const CountRecord& r) {
    return l.cls == r.cls && l.n == r.n && l.count == r.count && l.split == r.split;
  }
};

class SizeCapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kEnumeratorCap = 12;

inline void check_class_size(SymClass c, int n) {
  if (n < 1) throw std::invalid_argument("size must be at least 1");
  if (n > kEnumeratorCap) {
    throw SizeCapError("size " + std::to_string(n) + " exceeds the cap n <= " + std::to_string(kEnumeratorCap));
  }
  if (is_qqt_class(c) && n % 4 != 2) {
    throw std::invalid_argument(std::string(to_string(c)) + " requires n = 2 mod 4, got " + std::to_string(n));
  }
}

namespace detail {

using Mask = std::uint32_t;

// Row i of the matrix is s_i - s_{i-1}, where s_i is the 0/1 vector of column
// partial sums after row i (bit j-1 for column j).
class RowSearch {
 public:
  RowSearch(SymClass c, int n) : cls_(c), n_(n), m_(n) {}

  // Visits every member; `on_match` returns false to stop early.
  // `first_rows` restricts row 1 to the given masks when non-empty.
  void run(const std::function<bool(const SignMatrix&, CenterClass)>& on_match, const std::vector<Mask>& first_rows = {}) {
    emit_ = &on_match;
    stop_ = false;
    if (!first_rows.empty()) {
      for (Mask q : first_rows) {
        if (stop_) break;
        if (!apply_row(1, 0, q)) continue;
        descend(2, q);
      }
      return;
    }
    descend(1, 0);
  }

  // Candidate masks for row 1.
  std::vector<Mask> first_row_candidates() {
    std::vector<Mask> out;
    std::vector<int> forced(n_ + 1, kFree);
    rows_for(1, 0, forced, [&](Mask q) { out.push_back(q); });
    return out;
  }

 private:
  static constexpr int kFree = 2;

  // Value forced on (i, j) by the symmetry and cells already placed, or kFree.
  int forced(int i, int j) const {
    const int n = n_;
    auto placed = [&](int r, int) { return r < i; };
    switch (cls_) {
      case SymClass::Plain:
        return kFree;
      case SymClass::HT: {
        int r = n + 1 - i, c = n + 1 - j;
        if (placed(r, c)) return m_.at(r, c);
        return kFree;
      }
      default: {
        if (is_qqt_class(cls_) && is_central_cell(n, i, j)) return kFree;
        int r = i, c = j;
        for (int k = 0; k < 3; ++k) {
          int nr = c, nc = n + 1 - r;  // M(r,c) = M(c, n+1-r)
          r = nr;
          c = nc;
          if (placed(r, c)) return m_.at(r, c);
        }
        return kFree;
      }
    }
  }

  // Cells of row i whose symmetry images lie in row i itself.
  bool row_self_consistent(int i) const {
    const int n = n_;
    for (int j = 1; j <= n; ++j) {
      switch (cls_) {
        case SymClass::Plain:
          return true;
        case SymClass::HT:
          if (n + 1 - i == i && m_.at(i, n + 1 - j) != m_.at(i, j)) return false;
          break;
        default: {
          if (is_qqt_class(cls_) && is_central_cell(n, i, j)) break;
          int r = i, c = j;
          for (int k = 0; k < 3; ++k) {
            int nr = c, nc = n + 1 - r;
            r = nr;
            c = nc;
            if (r == i && m_.at(r, c) != m_.at(i, j)) return false;
          }
        }
      }
    }
    return true;
  }

  template <class F>
  void rows_for(int i, Mask prev, const std::vector<int>& f, F&& out) {
    // Depth-first over columns; r is the running row sum, must stay in {0,1}.
    struct Frame {
      int j;
      int r;
      Mask q;
    };
    std::vector<Frame> stack{{1, 0, 0}};
    while (!stack.empty()) {
      Frame fr = stack.back();
      stack.pop_back();
      if (fr.j > n_) {
        if (fr.r == 1) out(fr.q);
        continue;
      }
      int p = (prev >> (fr.j - 1)) & 1;
      for (int qb = 1; qb >= 0; --qb) {
        int e = qb - p;
        int r = fr.r + e;
        if (r < 0 || r > 1) continue;
        if (f[fr.j] != kFree && f[fr.j] != e) continue;
        stack.push_back({fr.j + 1, r, fr.q | (static_cast<Mask>(qb) << (fr.j - 1))});
      }
    }
    (void)i;
  }

  bool apply_row(int i, Mask prev, Mask q) {
    for (int j = 1; j <= n_; ++j) {
      int e = static_cast<int>((q >> (j - 1)) & 1) - static_cast<int>((prev >> (j - 1)) & 1);
      int f = forced(i, j);
      if (f != kFree && f != e) return false;
      m_.set(i, j, e);
    }
    if (!row_self_consistent(i)) return false;
    if (is_qqt_class(cls_) && i == n_ / 2 + 1) {
      CenterClass k = center_pattern(m_).kind;
      if (k == CenterClass::Other) return false;
      if (cls_ == SymClass::QQTNeg && k != CenterClass::Neg) return false;
      if (cls_ == SymClass::QQTPos && k != CenterClass::Pos) return false;
    }
    return true;
  }

  void descend(int i, Mask prev) {
    if (stop_) return;
    if (i > n_) {
      CenterClass k = is_qqt_class(cls_) ? center_pattern(m_).kind : CenterClass::Other;
      if (!(*emit_)(m_, k)) stop_ = true;
      return;
    }
    std::vector<int> f(n_ + 1, kFree);
    for (int j = 1; j <= n_; ++j) f[j] = forced(i, j);
    std::vector<Mask> cands;
    rows_for(i, prev, f, [&](Mask q) { cands.push_back(q); });
    for (Mask q : cands) {
      if (stop_) return;
      if (!apply_row(i, prev, q)) continue;
      descend(i + 1, q);
    }
  }

  SymClass cls_;
  int n_;
  SignMatrix m_;
  const std::function<bool(const SignMatrix&, CenterClass)>* emit_ = nullptr;
  bool stop_ = false;
};

// Valid successors of each partial-sum mask, grouped by source.
inline std::vector<std::vector<Mask>> transitions(int n) {
  std::vector<std::vector<Mask>> out(std::size_t{1} << n);
  for (Mask p = 0; p < (Mask{1} << n); ++p) {
    for (Mask q = 0; q < (Mask{1} << n); ++q) {
      if (std::popcount(q) != std::popcount(p) + 1) continue;
      int r = 0;
      bool ok = true;
      for (int j = 0; j < n && ok; ++j) {
        r += static_cast<int>((q >> j) & 1) - static_cast<int>((p >> j) & 1);
        ok = r == 0 || r == 1;
      }
      if (ok) out[p].push_back(q);
    }
  }
  return out;
}

// Layer-by-layer DP: ways[s] = number of valid row sequences ending in s.
inline std::vector<BigInt> layer_counts(int n, int layers, const std::vector<std::vector<Mask>>& tr) {
  std::vector<BigInt> ways(std::size_t{1} << n, 0);
  ways[0] = 1;
  for (int i = 0; i < layers; ++i) {
    std::vector<BigInt> next(ways.size(), 0);
    for (Mask p = 0; p < ways.size(); ++p) {
      if (ways[p] == 0) continue;
      for (Mask q : tr[p]) next[q] += ways[p];
    }
    ways = std::move(next);
  }
  return ways;
}

// s(j) -> 1 - s(n+1-j): partial sums of the half-turned matrix.
inline Mask complement_reverse(Mask s, int n) {
  Mask out = 0;
  for (int j = 0; j < n; ++j) {
    if (!((s >> j) & 1)) out |= Mask{1} << (n - 1 - j);
  }
  return out;
}

inline bool is_transition(Mask p, Mask q, int n) {
  if (std::popcount(q) != std::popcount(p) + 1) return false;
  int r = 0;
  for (int j = 0; j < n; ++j) {
    r += static_cast<int>((q >> j) & 1) - static_cast<int>((p >> j) & 1);
    if (r < 0 || r > 1) return false;
  }
  return true;
}

}  // namespace detail

// Streams every member of the class; the callback returns false to stop.
inline void enumerate_class(SymClass c, int n, const std::function<bool(const Asm&)>& visit) {
  check_class_size(c, n);
  detail::RowSearch s(c, n);
  s.run([&](const SignMatrix& m, CenterClass) { return visit(Asm::trusted(m)); });
}

inline std::vector<Asm> enumerate_class(SymClass c, int n) {
  std::vector<Asm> out;
  enumerate_class(c, n, [&](const Asm& a) {
    out.push_back(a);
    return true;
  });
  return out;
}

namespace detail {

inline CountRecord count_by_search(SymClass c, int n, int jobs) {
  RowSearch probe(c, n);
  std::vector<Mask> firsts = probe.first_row_candidates();
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(firsts.size())));
  std::vector<BigInt> total(jobs, 0), neg(jobs, 0), pos(jobs, 0);
  auto work = [&](int w) {
    std::vector<Mask> mine;
    for (std::size_t k = w; k < firsts.size(); k += jobs) mine.push_back(firsts[k]);
    if (mine.empty()) return;
    RowSearch s(c, n);
    s.run(
        [&](const SignMatrix&, CenterClass k) {
          ++total[w];
          if (k == CenterClass::Neg) ++neg[w];
          if (k == CenterClass::Pos) ++pos[w];
          return true;
        },
        mine);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  CountRecord r{c, n, 0, std::nullopt};
  BigInt ng = 0, ps = 0;
  for (int w = 0; w < jobs; ++w) {
    r.count += total[w];
    ng += neg[w];
    ps += pos[w];
  }
  if (c == SymClass::QQT) r.split = std::make_pair(ng, ps);
  return r;
}

}  // namespace detail

// Counts without materializing matrices. Plain and HT use a partial-sum DP;
// the quarter-turn classes use the row search, split across `jobs` threads
// by the first row.
inline CountRecord count_class(SymClass c, int n, int jobs = 1) {
  check_class_size(c, n);
  using detail::Mask;
  switch (c) {
    case SymClass::Plain: {
      auto tr = detail::transitions(n);
      auto ways = detail::layer_counts(n, n, tr);
      return {c, n, ways[(Mask{1} << n) - 1], std::nullopt};
    }
    case SymClass::HT: {
      auto tr = detail::transitions(n);
      const int L = n / 2;
      auto ways = detail::layer_counts(n, L, tr);
      BigInt total = 0;
      for (Mask s = 0; s < ways.size(); ++s) {
        if (ways[s] == 0) continue;
        Mask mirror = detail::complement_reverse(s, n);
        bool ok = n % 2 == 0 ? mirror == s : detail::is_transition(s, mirror, n);
        if (ok) total += ways[s];
      }
      return {c, n, total, std::nullopt};
    }
    default:
      return detail::count_by_search(c, n, jobs);
  }
}

// Append-only JSON-lines cache of counts.
class CountCache {
 public:
  explicit CountCache(std::string path, std::ostream* warn = &std::cerr) : path_(std::move(path)), warn_(warn) { load(); }

  const std::string& path() const { return path_; }
  std::size_t size() const { return records_.size(); }

  std::optional<CountRecord> lookup(SymClass c, int n) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = records_.find({c, n});
    if (it == records_.end()) return std::nullopt;
    return it->second;
  }

  // Idempotent; a conflicting record for the same key is rejected.
  void store(const CountRecord& r) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = records_.find({r.cls, r.n});
    if (it != records_.end()) {
      if (it->second == r) return;
      throw std::runtime_error("cache conflict for " + std::string(to_string(r.cls)) + " n=" + std::to_string(r.n));
    }
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot write cache file " + path_);
    out << to_json(r).dump() << "\n";
    records_.emplace(std::make_pair(r.cls, r.n), r);
  }

  std::vector<CountRecord> records() const {
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<CountRecord> out;
    for (const auto& [k, v] : records_) out.push_back(v);
    return out;
  }

  static nlohmann::json to_json(const CountRecord& r) {
    nlohmann::json j;
    j["class"] = to_string(r.cls);
    j["n"] = r.n;
    j["count"] = r.count.get_str();
    if (r.split) {
      j["split"] = {r.split->first.get_str(), r.split->second.get_str()};
    } else {
      j["split"] = nullptr;
    }
    return j;
  }

  static CountRecord from_json(const nlohmann::json& j) {
    CountRecord r;
    auto c = parse_sym_class(j.at("class").get<std::string>());
    if (!c) throw std::invalid_argument("unknown class");
    r.cls = *c;
    r.n = j.at("n").get<int>();
    r.count = BigInt(j.at("count").get<std::string>());
    if (r.count < 0) throw std::invalid_argument("negative count");
    const auto& s = j.at("split");
    if (!s.is_null()) {
      if (!s.is_array() || s.size() != 2) throw std::invalid_argument("bad split");
      r.split = std::make_pair(BigInt(s[0].get<std::string>()), BigInt(s[1].get<std::string>()));
      if (r.split->first + r.split->second != r.count) throw std::invalid_argument("split does not sum to count");
    }
    return r;
  }

 private:
  void load() {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        CountRecord r = from_json(nlohmann::json::parse(line));
        auto key = std::make_pair(r.cls, r.n);
        auto it = records_.find(key);
        if (it != records_.end() && !(it->second == r)) throw std::invalid_argument("conflicts with an earlier line");
        records_.emplace(key, r);
      } catch (const std::exception& e) {
        if (warn_) *warn_ << "warning: " << path_ << ":" << lineno << ": skipping corrupt cache line (" << e.what() << ")\n";
      }
    }
  }

  std::string path_;
  std::ostream* warn_;
  mutable std::mutex mu_;
  std::map<std::pair<SymClass, int>, CountRecord> records_;
};

}  // namespace iceasm
