#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "iceasm/asm.hpp"
#include "iceasm/enumerator.hpp"
#include "iceasm/grids.hpp"
#include "iceasm/ice_graph.hpp"
#include "iceasm/laurent.hpp"

namespace iceasm {

// ---------------------------------------------------------------------------
// Reports

struct CheckReport {
  std::string id;
  std::string title;
  std::vector<std::pair<std::string, std::string>> params;
  bool pass = true;
  long cases = 0;
  std::string witness;  // first failing instance
  std::vector<std::string> notes;
  double seconds = 0;  // wall time; not part of the JSON form

  void param(const std::string& k, const std::string& v) { params.emplace_back(k, v); }
  void note(const std::string& s) { notes.push_back(s); }
  void fail(const std::string& w) {
    if (pass) witness = w;
    pass = false;
  }
  // Counts one comparison; records the witness on the first mismatch.
  template <class T>
  bool expect_equal(const T& lhs, const T& rhs, const std::string& where);
  void expect(bool ok, const std::string& where) {
    ++cases;
    if (!ok) fail(where);
  }
  void absorb(const CheckReport& sub) {
    cases += sub.cases;
    for (const auto& n : sub.notes) notes.push_back(n);
    if (!sub.pass) fail(sub.id + ": " + sub.witness);
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["id"] = id;
    j["title"] = title;
    nlohmann::json p = nlohmann::json::object();
    for (const auto& [k, v] : params) p[k] = v;
    j["params"] = p;
    j["verdict"] = pass ? "pass" : "fail";
    j["cases"] = cases;
    j["witness"] = pass ? nlohmann::json(nullptr) : nlohmann::json(witness);
    j["notes"] = notes;
    return j;
  }
};

namespace detail {

inline std::string clip(const std::string& s, std::size_t n = 240) {
  return s.size() <= n ? s : s.substr(0, n) + "...";
}
inline std::string text(const QPoly& p) { return p.str(); }
inline std::string text(const WPoly& p) { return p.str(); }
inline std::string text(const CycloRational& c) { return c.str(); }
inline std::string text(const BigInt& c) { return c.get_str(); }
inline std::string text(const Rational& c) { return c.get_str(); }

}  // namespace detail

template <class T>
bool CheckReport::expect_equal(const T& lhs, const T& rhs, const std::string& where) {
  ++cases;
  if (lhs == rhs) return true;
  fail(where + ": lhs = " + detail::clip(detail::text(lhs)) + ", rhs = " + detail::clip(detail::text(rhs)));
  return false;
}

struct CheckOptions {
  std::optional<int> n;       // restricts parameterized checks to one N
  std::uint64_t seed = 1;     // sample-point stream
  int points = 5;             // evaluated checks: assignments per instance
  int jobs = 1;
};

// ---------------------------------------------------------------------------
// Sample points

// Values drawn from {2/1, 3/2, 5/3, 7/5, 11/7, ...} (ratios of consecutive
// primes), distinct within one assignment.
class SamplePoints {
 public:
  explicit SamplePoints(std::uint64_t seed) : rng_(seed) {}

  static const std::vector<Rational>& pool() {
    static const std::vector<Rational> p = [] {
      const int primes[] = {1, 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67};
      std::vector<Rational> out;
      for (std::size_t k = 1; k < std::size(primes); ++k) out.emplace_back(primes[k], primes[k - 1]);
      for (auto& q : out) q.canonicalize();
      return out;
    }();
    return p;
  }

  // Assigns every name a distinct pool value; `denominators` are monomials
  // (over `space`) whose sigma must not vanish, resampling otherwise.
  VarAssignment draw(const SpacePtr& space, const std::vector<Exponents>& denominators = {},
                     const std::map<std::string, CycloRational>& fixed = {}) {
    const auto& P = pool();
    for (int attempt = 0; attempt < 1000; ++attempt) {
      std::vector<std::size_t> idx(P.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::shuffle(idx.begin(), idx.end(), rng_);
      VarAssignment v;
      std::size_t k = 0;
      for (const auto& n : space->names()) {
        auto f = fixed.find(n);
        v.set(n, f != fixed.end() ? f->second : CycloRational(P[idx[k++]]));
      }
      bool ok = true;
      for (const auto& d : denominators) {
        CycloRational m(1);
        for (std::size_t i = 0; i < d.size(); ++i)
          if (d[i] != 0) m *= v.find(space->name(i))->pow(d[i]);
        if (sigma(m).is_zero()) ok = false;
      }
      if (ok) return v;
    }
    throw std::runtime_error("SamplePoints: could not avoid denominator zeros");
  }

 private:
  std::mt19937_64 rng_;
};

inline std::string describe(const VarAssignment& v) {
  std::string s;
  for (const auto& [k, x] : v.values()) s += (s.empty() ? "" : ", ") + k + "=" + x.str();
  return "{" + s + "}";
}

// ---------------------------------------------------------------------------
// Evaluation contexts

inline SpacePtr space_with_a(const std::vector<std::string>& vars) {
  std::vector<std::string> names{"a"};
  names.insert(names.end(), vars.begin(), vars.end());
  return make_space(std::move(names));
}

inline SpacePtr drop_a(const SpacePtr& s) {
  std::vector<std::string> rest;
  for (const auto& n : s->names())
    if (n != "a") rest.push_back(n);
  return make_space(std::move(rest));
}

inline SpecializedWeights omega_weights(const SpacePtr& target) {
  return SpecializedWeights(target, drop_a(target), VarAssignment{{"a", CycloRational::omega()}});
}

// Partition functions and sigma products for one weight model over `target`.
template <class W>
class Eval {
 public:
  using Ring = typename W::Ring;
  explicit Eval(W& w) : w_(w), target_(w.space()) {}

  const SpacePtr& target() const { return target_; }

  // Monomial over the target space.
  Exponents m(std::initializer_list<std::pair<std::string, int>> parts) const { return mono(*target_, parts); }
  Exponents var(const std::string& n) const { return mono(*target_, {{n, 1}}); }
  std::vector<Exponents> vars(const std::vector<std::string>& names) const {
    std::vector<Exponents> out;
    for (const auto& n : names) out.push_back(var(n));
    return out;
  }

  Ring one() const { return w_.one(); }
  Ring constant(long c) const { return w_.constant(c); }
  Ring s(const Exponents& e) const { return w_.sigma_of(e); }

  // Z of a family with line parameters bound to `args` (in line order).
  // DWBC of size 0 is the empty grid, Z = 1.
  Ring z(Family f, int size, const std::vector<Exponents>& args, const std::optional<std::string>& tag = std::nullopt) {
    if (f == Family::DWBC && size == 0) {
      if (!args.empty()) throw std::invalid_argument("Z(0) takes no arguments");
      return one();
    }
    const GridSpec& g = grid(f, size);
    if (args.size() != g.lines()->size()) {
      throw std::invalid_argument(std::string("argument count mismatch for ") + to_string(f) + " size " + std::to_string(size));
    }
    return graph(g.graph, Binding{target_, args}, split_constraints(g, tag));
  }

  Ring graph(const IceGraph& g, const Binding& b, const StateConstraints& c = {}) {
    return graph_partition_function(g, b, w_, c);
  }

 private:
  const GridSpec& grid(Family f, int size) {
    auto key = std::make_pair(static_cast<int>(f), size);
    auto it = grids_.find(key);
    if (it == grids_.end()) it = grids_.emplace(key, build_grid(f, size)).first;
    return it->second;
  }

  W& w_;
  SpacePtr target_;
  std::map<std::pair<int, int>, GridSpec> grids_;
};

inline std::vector<std::string> xs(int from, int to) {
  std::vector<std::string> out;
  for (int k = from; k <= to; ++k) out.push_back("x" + std::to_string(k));
  return out;
}

inline std::vector<std::string> cat(std::vector<std::string> l, const std::vector<std::string>& r) {
  l.insert(l.end(), r.begin(), r.end());
  return l;
}

// Runs `body(eval, label)` in the requested mode: symbolic generic a,
// symbolic at a = w, or exact evaluation at seeded points (generic a when
// `omega` is false).
enum class Mode { Symbolic, Omega, Points };

inline const char* to_string(Mode m) {
  switch (m) {
    case Mode::Symbolic: return "symbolic";
    case Mode::Omega: return "symbolic-at-w";
    case Mode::Points: return "evaluated";
  }
  return "?";
}

template <class Body>
void run_mode(Mode mode, const SpacePtr& target, const CheckOptions& o, bool omega_points, Body&& body,
              const std::vector<Exponents>& denominators = {}) {
  switch (mode) {
    case Mode::Symbolic: {
      SymbolicWeights w(target);
      Eval<SymbolicWeights> e(w);
      body(e, std::string("symbolic"));
      break;
    }
    case Mode::Omega: {
      SpecializedWeights w = omega_weights(target);
      Eval<SpecializedWeights> e(w);
      body(e, std::string("a=w"));
      break;
    }
    case Mode::Points: {
      SamplePoints sp(o.seed);
      std::map<std::string, CycloRational> fixed;
      if (omega_points) fixed["a"] = CycloRational::omega();
      for (int k = 0; k < o.points; ++k) {
        VarAssignment v = sp.draw(target, denominators, fixed);
        NumericWeights w(target, v);
        Eval<NumericWeights> e(w);
        body(e, describe(v));
      }
      break;
    }
  }
}

// ---------------------------------------------------------------------------
// Specialization prefactors

enum class PrefactorKind { A, ABar, AH1, AH1Bar, AH0, AH0Bar, AQ, AQBar };

inline const char* to_string(PrefactorKind k) {
  switch (k) {
    case PrefactorKind::A: return "A";
    case PrefactorKind::ABar: return "Abar";
    case PrefactorKind::AH1: return "AH1";
    case PrefactorKind::AH1Bar: return "AH1bar";
    case PrefactorKind::AH0: return "AH0";
    case PrefactorKind::AH0Bar: return "AH0bar";
    case PrefactorKind::AQ: return "AQ";
    case PrefactorKind::AQBar: return "AQbar";
  }
  return "?";
}

// Pivot variable p and the two index groups of the displayed product. The
// quarter-turn kinds use `first` only. Lists may contain the pivot itself.
struct PrefactorArgs {
  std::string pivot;
  std::vector<std::string> first;
  std::vector<std::string> second;
};

namespace detail {

// Factor shapes: s1 = sigma(a x_k/p), s1b = sigma(a p/x_k),
// s2 = sigma(a^2 p/x_k), s2b = sigma(a^2 x_k/p).
enum class Shape { S1, S1b, S2, S2b };

inline Exponents shape_arg(const VarSpace& sp, Shape s, const std::string& p, const std::string& k) {
  switch (s) {
    case Shape::S1: return mono(sp, {{"a", 1}, {k, 1}, {p, -1}});
    case Shape::S1b: return mono(sp, {{"a", 1}, {p, 1}, {k, -1}});
    case Shape::S2: return mono(sp, {{"a", 2}, {p, 1}, {k, -1}});
    case Shape::S2b: return mono(sp, {{"a", 2}, {k, 1}, {p, -1}});
  }
  return {};
}

struct KindShapes {
  std::vector<Shape> first, second;
  bool barred;
};

inline KindShapes kind_shapes(PrefactorKind k) {
  using S = Shape;
  switch (k) {
    case PrefactorKind::A: return {{S::S1}, {S::S2}, false};
    case PrefactorKind::ABar: return {{S::S1b}, {S::S2b}, true};
    case PrefactorKind::AH1: return {{S::S2}, {S::S1}, false};
    case PrefactorKind::AH1Bar: return {{S::S2b}, {S::S1b}, true};
    case PrefactorKind::AH0: return {{S::S1}, {S::S2}, false};
    case PrefactorKind::AH0Bar: return {{S::S1b}, {S::S2b}, true};
    case PrefactorKind::AQ: return {{S::S2, S::S1}, {}, false};
    case PrefactorKind::AQBar: return {{S::S2b, S::S1b}, {}, true};
  }
  return {};
}

}  // namespace detail

// The displayed product over `space` (which must contain "a"), generic a.
inline QPoly specialization_prefactor(PrefactorKind kind, const PrefactorArgs& args, const SpacePtr& space) {
  auto ks = detail::kind_shapes(kind);
  QPoly out = QPoly::constant(space, 1);
  for (const auto& k : args.first)
    for (auto s : ks.first) out *= sigma_mono<Rational>(space, detail::shape_arg(*space, s, args.pivot, k));
  for (const auto& k : args.second)
    for (auto s : ks.second) out *= sigma_mono<Rational>(space, detail::shape_arg(*space, s, args.pivot, k));
  return out;
}

// The compact form valid at a = w: every factor becomes sigma(a x_k/p)
// (unbarred kinds) or sigma(a p/x_k) (barred kinds). Returned over `space`
// with a still symbolic; compare after reduce_generic_a.
inline QPoly specialization_prefactor_omega(PrefactorKind kind, const PrefactorArgs& args, const SpacePtr& space) {
  auto ks = detail::kind_shapes(kind);
  auto shape = ks.barred ? detail::Shape::S1b : detail::Shape::S1;
  QPoly out = QPoly::constant(space, 1);
  auto mul = [&](const std::vector<std::string>& list, std::size_t per) {
    for (const auto& k : list)
      for (std::size_t i = 0; i < per; ++i) out *= sigma_mono<Rational>(space, detail::shape_arg(*space, shape, args.pivot, k));
  };
  mul(args.first, ks.first.size());
  mul(args.second, ks.second.size());
  return out;
}

// Prefactor in an evaluation context.
template <class E>
typename E::Ring prefactor(E& e, PrefactorKind kind, const PrefactorArgs& args) {
  auto ks = detail::kind_shapes(kind);
  auto out = e.one();
  for (const auto& k : args.first)
    for (auto s : ks.first) out = out * e.s(detail::shape_arg(*e.target(), s, args.pivot, k));
  for (const auto& k : args.second)
    for (auto s : ks.second) out = out * e.s(detail::shape_arg(*e.target(), s, args.pivot, k));
  return out;
}

// ---------------------------------------------------------------------------
// Gadgets. Parameter spaces list the gadget's own names; bind them with a
// Binding into the target space.

// Yang-Baxter triangles. External points are named by their angle in degrees
// (30, 90, ..., 330) and get free-edge indices 0..5 in that order.
inline IceGraph yang_baxter_graph(bool left) {
  IceGraph g(make_space({"x", "y", "z"}));
  const SpacePtr& P = g.params();
  int vx = g.add_vertex(mono(*P, {{"x", 1}}), "x");
  int vy = g.add_vertex(mono(*P, {{"y", 1}}), "y");
  int vz = g.add_vertex(mono(*P, {{"z", 1}}), "z");
  g.connect(vx, East, vy, North);
  g.connect(vx, North, vz, East);
  g.connect(vy, East, vz, North);
  // (vertex, slot) for each external point 30, 90, 150, 210, 270, 330.
  std::array<std::pair<int, int>, 6> ext;
  if (left) {
    ext = {{{vx, West}, {vx, South}, {vy, West}, {vy, South}, {vz, West}, {vz, South}}};
  } else {
    ext = {{{vy, South}, {vz, West}, {vz, South}, {vx, West}, {vx, South}, {vy, West}}};
  }
  for (auto [v, s] : ext) g.boundary(v, s, std::nullopt);
  return g;
}

// Two rows (bottom "x", top "y") crossing columns t1..tw; left ends point in.
// Column ends are free: bottoms are externals 0..w-1, tops w..2w-1.
enum class StripEnd { FixedIn, UTurn, Free };

struct StripSpec {
  int width = 1;
  StripEnd right = StripEnd::FixedIn;
  bool top_right_in = true;     // used when `right_fixed_pair`
  bool bottom_right_in = true;
  bool right_fixed_pair = false;
};

inline IceGraph strip_graph(const StripSpec& s) {
  std::vector<std::string> names{"x", "y"};
  for (int c = 1; c <= s.width; ++c) names.push_back("t" + std::to_string(c));
  IceGraph g(make_space(names));
  const SpacePtr& P = g.params();
  std::vector<std::array<int, 2>> v(s.width + 1);
  for (int c = 1; c <= s.width; ++c) {
    for (int r = 0; r < 2; ++r) {
      v[c][r] = g.add_vertex(mono(*P, {{r == 0 ? "x" : "y", 1}, {"t" + std::to_string(c), -1}}));
    }
  }
  for (int c = 1; c <= s.width; ++c) g.boundary(v[c][0], South, std::nullopt);
  for (int c = 1; c <= s.width; ++c) g.boundary(v[c][1], North, std::nullopt);
  for (int c = 1; c <= s.width; ++c) g.connect(v[c][0], North, v[c][1], South);
  for (int r = 0; r < 2; ++r) {
    g.boundary(v[1][r], West, true);
    for (int c = 1; c < s.width; ++c) g.connect(v[c][r], East, v[c + 1][r], West);
  }
  if (s.right_fixed_pair) {
    g.boundary(v[s.width][0], East, s.bottom_right_in);
    g.boundary(v[s.width][1], East, s.top_right_in);
  } else if (s.right == StripEnd::UTurn) {
    g.connect(v[s.width][0], East, v[s.width][1], East);
  } else {
    for (int r = 0; r < 2; ++r) g.boundary(v[s.width][r], East, true);
  }
  return g;
}

// One crossing with parameter z whose East and North ends are joined. The
// West end is external 0 and the South end external 1.
inline IceGraph loop_graph() {
  IceGraph g(make_space({"z"}));
  int v = g.add_vertex(mono(*g.params(), {{"z", 1}}));
  g.boundary(v, West, std::nullopt);
  g.boundary(v, South, std::nullopt);
  g.connect(v, East, v, North);
  return g;
}

// An r x c grid (rows u1..ur, columns t1..tc, all ends free) with a bent line
// whose horizontal part carries "x" across the columns and whose vertical
// part carries "xb" (bound to x/a) across the rows. `around_top_right`
// places the bend above-right of the grid, otherwise below-left. Externals:
// row left ends, row right ends, column bottoms, column tops, then the bent
// line's top-left end and bottom-right end.
inline IceGraph pass_through_graph(int rows, int cols, bool around_top_right) {
  std::vector<std::string> names{"x", "xb"};
  for (int r = 1; r <= rows; ++r) names.push_back("u" + std::to_string(r));
  for (int c = 1; c <= cols; ++c) names.push_back("t" + std::to_string(c));
  IceGraph g(make_space(names));
  const SpacePtr& P = g.params();
  auto u = [](int r) { return "u" + std::to_string(r); };
  auto t = [](int c) { return "t" + std::to_string(c); };
  // Full layout: grid cells (r, c), r = 1..rows, c = 1..cols, plus an extra
  // row of bent-line vertices (horizontal part) and an extra column
  // (vertical part). The vertical part is traversed downwards, so its
  // geometric South/North are swapped relative to a standard column.
  std::vector<std::vector<int>> cell(rows + 2, std::vector<int>(cols + 2, -1));
  const int hr = around_top_right ? rows + 1 : 0;  // row index of the horizontal part
  const int vc = around_top_right ? cols + 1 : 0;  // column index of the vertical part
  for (int r = 1; r <= rows; ++r)
    for (int c = 1; c <= cols; ++c) cell[r][c] = g.add_vertex(mono(*P, {{u(r), 1}, {t(c), -1}}));
  for (int c = 1; c <= cols; ++c) cell[hr][c] = g.add_vertex(mono(*P, {{"x", 1}, {t(c), -1}}));
  for (int r = 1; r <= rows; ++r) cell[r][vc] = g.add_vertex(mono(*P, {{u(r), 1}, {"xb", -1}}));
  auto at = [&](int r, int c) { return (r < 0 || c < 0 || r > rows + 1 || c > cols + 1) ? -1 : cell[r][c]; };
  // Horizontal links along rows 1..rows (including through the vertical part).
  for (int r = 1; r <= rows; ++r)
    for (int c = 0; c <= cols; ++c)
      if (at(r, c) >= 0 && at(r, c + 1) >= 0) g.connect(at(r, c), East, at(r, c + 1), West);
  for (int c = 1; c <= cols; ++c)
    for (int r = 0; r <= rows; ++r)
      if (at(r, c) >= 0 && at(r + 1, c) >= 0) g.connect(at(r, c), North, at(r + 1, c), South);
  // Horizontal part links.
  for (int c = 1; c < cols; ++c) g.connect(at(hr, c), East, at(hr, c + 1), West);
  // Vertical part links (standard column frame: South below, North above).
  for (int r = 1; r < rows; ++r) g.connect(at(r, vc), North, at(r + 1, vc), South);
  // Free ends of the grid.
  const int first_c = around_top_right ? 1 : 0, last_c = around_top_right ? cols + 1 : cols;
  const int first_r = around_top_right ? 1 : 0, last_r = around_top_right ? rows + 1 : rows;
  (void)last_r;
  (void)first_r;
  for (int r = 1; r <= rows; ++r) g.boundary(at(r, first_c), West, std::nullopt);
  for (int r = 1; r <= rows; ++r) g.boundary(at(r, last_c), East, std::nullopt);
  for (int c = 1; c <= cols; ++c) g.boundary(at(around_top_right ? 1 : 0, c), South, std::nullopt);
  for (int c = 1; c <= cols; ++c) g.boundary(at(around_top_right ? rows + 1 : rows, c), North, std::nullopt);
  if (around_top_right) {
    // Top-left end enters the horizontal part; bend joins its East end to the
    // top of the vertical part; bottom-right end leaves the vertical part.
    g.boundary(at(hr, 1), West, std::nullopt);
    g.connect(at(hr, cols), East, at(rows, vc), North);
    g.boundary(at(1, vc), South, std::nullopt);
  } else {
    g.boundary(at(rows, vc), North, std::nullopt);
    g.connect(at(1, vc), South, at(hr, 1), West);
    g.boundary(at(hr, cols), East, std::nullopt);
  }
  return g;
}

inline std::vector<bool> bits(unsigned mask, int n) {
  std::vector<bool> out(n);
  for (int i = 0; i < n; ++i) out[i] = (mask >> i) & 1;
  return out;
}

inline std::string bits_text(const std::vector<bool>& b) {
  std::string s;
  for (bool x : b) s += x ? 'i' : 'o';
  return s;
}

}  // namespace iceasm
