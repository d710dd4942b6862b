#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iceasm/identities.hpp"

namespace iceasm {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::string N_str(int N) { return "N=" + std::to_string(N); }

namespace detail {

inline CheckReport report(const std::string& id, const std::string& title) {
  CheckReport r;
  r.id = id;
  r.title = title;
  return r;
}

// N values for a parameterized check: the override or the defaults, with
// `max_n` enforcing the size cap.
inline std::vector<int> n_values(const CheckOptions& o, std::vector<int> defaults, int max_n, const std::string& size_expr) {
  if (!o.n) return defaults;
  if (*o.n < 1) throw UsageError("--n must be at least 1");
  if (*o.n > max_n) {
    throw SizeCapError("N = " + std::to_string(*o.n) + " needs size " + size_expr + " beyond the cap n <= " +
                       std::to_string(kSizeCap));
  }
  return {*o.n};
}

inline std::vector<std::string> ns(const std::vector<int>& v) {
  std::vector<std::string> out;
  for (int x : v) out.push_back(std::to_string(x));
  return out;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep = ",") {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : sep) + x;
  return s;
}

// Swapped copy of an argument list.
inline std::vector<std::string> swapped(std::vector<std::string> v, const std::string& a, const std::string& b) {
  for (auto& x : v) {
    if (x == a) {
      x = b;
    } else if (x == b) {
      x = a;
    }
  }
  return v;
}

// Per-boundary partition functions with absent assignments read as zero.
template <class W>
class BoundaryTable {
 public:
  BoundaryTable(const IceGraph& g, const Binding& b, W& w) : zero_(w.zero()), table_(boundary_partition_functions(g, b, w)) {}
  const typename W::Ring& operator()(const std::vector<bool>& ext) const {
    auto it = table_.find(ext);
    return it == table_.end() ? zero_ : it->second;
  }

 private:
  typename W::Ring zero_;
  std::map<std::vector<bool>, typename W::Ring> table_;
};

// Every boundary assignment of a graph's free externals.
template <class F>
void for_each_boundary(int externals, F&& f) {
  for (unsigned m = 0; m < (1u << externals); ++m) f(bits(m, externals));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Local gadgets

inline CheckReport check_yang_baxter(const CheckOptions&) {
  auto r = detail::report("yang-baxter", "Triangle exchange with xyz = 1/a, all boundary assignments, symbolic");
  IceGraph L = yang_baxter_graph(true), R = yang_baxter_graph(false);
  SpacePtr T = space_with_a({"x", "y"});
  SymbolicWeights w(T);
  Binding b{T, {mono(*T, {{"x", 1}}), mono(*T, {{"y", 1}}), mono(*T, {{"a", -1}, {"x", -1}, {"y", -1}})}};
  int nonzero = 0;
  detail::BoundaryTable<SymbolicWeights> zl(L, b, w), zr(R, b, w);
  detail::for_each_boundary(6, [&](const std::vector<bool>& ext) {
    const auto& lhs = zl(ext);
    const auto& rhs = zr(ext);
    if (!lhs.is_zero()) ++nonzero;
    r.expect_equal(lhs, rhs, "boundary " + bits_text(ext));
  });
  r.param("z", "1/(a x y)");
  r.note(std::to_string(nonzero) + " of 64 boundary assignments have nonzero weight");
  return r;
}

// Passes when the unconstrained exchange fails somewhere.
inline CheckReport check_yang_baxter_control(const CheckOptions&) {
  auto r = detail::report("yang-baxter-control", "Triangle exchange with independent z must fail (a=2, x=3, y=5, z=7)");
  IceGraph L = yang_baxter_graph(true), R = yang_baxter_graph(false);
  SpacePtr T = space_with_a({"x", "y", "z"});
  NumericWeights w(T, VarAssignment{{"a", 2}, {"x", 3}, {"y", 5}, {"z", 7}});
  Binding b = Binding::identity(L.params(), T);
  std::optional<std::string> differs;
  detail::for_each_boundary(6, [&](const std::vector<bool>& ext) {
    StateConstraints c{ext, {}};
    auto lhs = graph_partition_function(L, b, w, c), rhs = graph_partition_function(R, b, w, c);
    ++r.cases;
    if (!differs && lhs != rhs) differs = "boundary " + bits_text(ext) + ": lhs = " + lhs.str() + ", rhs = " + rhs.str();
  });
  r.param("point", "a=2, x=3, y=5, z=7");
  if (differs) {
    r.note("control detected inequality at " + *differs);
  } else {
    r.fail("exchange held at every boundary assignment without the constraint");
  }
  return r;
}

inline CheckReport check_line_exchange(const CheckOptions&) {
  auto r = detail::report("line-exchange", "Two parallel lines with inward ends commute, widths 1-3, symbolic");
  for (int wd = 1; wd <= 3; ++wd) {
    StripSpec s;
    s.width = wd;
    IceGraph g = strip_graph(s);
    SpacePtr T = space_with_a(g.params()->names());
    SymbolicWeights w(T);
    Binding b = Binding::identity(g.params(), T), sw = b;
    std::swap(sw.images[0], sw.images[1]);
    detail::BoundaryTable<SymbolicWeights> zb(g, b, w), zs(g, sw, w);
    detail::for_each_boundary(2 * wd, [&](const std::vector<bool>& ext) {
      r.expect_equal(zb(ext), zs(ext),
                     "width " + std::to_string(wd) + " boundary " + bits_text(ext));
    });
  }
  r.param("widths", "1,2,3");
  return r;
}

inline CheckReport check_uturn_exchange(const CheckOptions&) {
  auto r = detail::report("uturn-exchange", "Line exchange next to a U-turn and with fixed right ends, denominators cleared");
  for (int wd = 1; wd <= 3; ++wd) {
    StripSpec s;
    s.width = wd;
    StripSpec us = s;
    us.right = StripEnd::UTurn;
    IceGraph gu = strip_graph(us);
    auto fixed = [&](bool top_in, bool bottom_in) {
      StripSpec f = s;
      f.right_fixed_pair = true;
      f.top_right_in = top_in;
      f.bottom_right_in = bottom_in;
      return strip_graph(f);
    };
    IceGraph g_oi = fixed(false, true), g_io = fixed(true, false);
    SpacePtr T = space_with_a(gu.params()->names());
    SymbolicWeights w(T);
    Binding b = Binding::identity(gu.params(), T), sw = b;
    std::swap(sw.images[0], sw.images[1]);
    auto lhs_factor = w.sigma_of(mono(*T, {{"a", 2}, {"y", 1}, {"x", -1}}));
    auto s_a2 = w.sigma_of(mono(*T, {{"a", 2}}));
    auto s_xy = w.sigma_of(mono(*T, {{"x", 1}, {"y", -1}}));
    const std::string tag = "width " + std::to_string(wd);
    using Table = detail::BoundaryTable<SymbolicWeights>;
    Table u(gu, b, w), u_s(gu, sw, w), oi(g_oi, b, w), oi_s(g_oi, sw, w), io(g_io, b, w), io_s(g_io, sw, w);
    detail::for_each_boundary(2 * wd, [&](const std::vector<bool>& ext) {
      r.expect_equal(lhs_factor * u(ext), (s_a2 + s_xy) * u_s(ext), tag + " u-turn boundary " + bits_text(ext));
      r.expect_equal(lhs_factor * oi(ext), s_xy * io_s(ext) + s_a2 * oi_s(ext),
                     tag + " top-out/bottom-in boundary " + bits_text(ext));
      r.expect_equal(lhs_factor * io(ext), s_xy * oi_s(ext) + s_a2 * io_s(ext),
                     tag + " top-in/bottom-out boundary " + bits_text(ext));
    });
  }
  r.param("widths", "1,2,3");
  return r;
}

inline CheckReport check_loop(const CheckOptions&) {
  auto r = detail::report("loop", "Crossing closed on itself equals sigma(az)+sigma(a^2) when exactly one end points in");
  IceGraph g = loop_graph();
  SpacePtr T = space_with_a({"z"});
  SymbolicWeights w(T);
  Binding b = Binding::identity(g.params(), T);
  auto factor = w.sigma_of(mono(*T, {{"a", 1}, {"z", 1}})) + w.sigma_of(mono(*T, {{"a", 2}}));
  detail::for_each_boundary(2, [&](const std::vector<bool>& ext) {
    auto z = graph_partition_function(g, b, w, StateConstraints{ext, {}});
    r.expect_equal(z, ext[0] != ext[1] ? factor : w.zero(), "boundary " + bits_text(ext));
  });
  return r;
}

inline CheckReport check_pass_through(const CheckOptions&) {
  auto r = detail::report("pass-through", "Bent line with parameters x and x/a moves across a grid, symbolic");
  const std::vector<std::pair<int, int>> shapes{{1, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 3}};
  for (auto [rows, cols] : shapes) {
    IceGraph L = pass_through_graph(rows, cols, true), R = pass_through_graph(rows, cols, false);
    std::vector<std::string> names;
    for (const auto& n : L.params()->names())
      if (n != "xb") names.push_back(n);
    SpacePtr T = space_with_a(names);
    SymbolicWeights w(T);
    Binding b{T, {}};
    for (const auto& n : L.params()->names()) {
      b.images.push_back(n == "xb" ? mono(*T, {{"a", -1}, {"x", 1}}) : mono(*T, {{n, 1}}));
    }
    const std::string tag = std::to_string(rows) + "x" + std::to_string(cols);
    detail::BoundaryTable<SymbolicWeights> zl(L, b, w), zr(R, b, w);
    detail::for_each_boundary(L.free_external_count(), [&](const std::vector<bool>& ext) {
      r.expect_equal(zl(ext), zr(ext),
                     tag + " boundary " + bits_text(ext));
    });
  }
  r.param("grids", "1x1,1x2,2x1,2x2,2x3");
  return r;
}

// ---------------------------------------------------------------------------
// Symmetries

namespace detail {

struct SymmetryCase {
  Family family;
  int size;
  std::vector<std::vector<std::string>> groups;  // each group is symmetric
};

inline std::vector<SymmetryCase> symmetry_cases(int N) {
  return {
      {Family::DWBC, N, {xs(1, N), xs(N + 1, 2 * N)}},
      {Family::HTOdd, 2 * N + 1, {xs(1, N), xs(N + 1, 2 * N)}},
      {Family::HTEven, 2 * N, {xs(1, N - 1), xs(N, 2 * N - 1)}},
      {Family::QTEven, 4 * N, {xs(1, 2 * N - 1)}},
      {Family::QTOdd, 4 * N + 2, {xs(1, 2 * N), {"x", "y"}}},
  };
}

}  // namespace detail

inline CheckReport check_symmetries(const CheckOptions& o) {
  auto r = detail::report("symmetries", "Partition functions are symmetric within each variable group");
  auto Ns = detail::n_values(o, {1, 2}, 2, "4N+2");
  for (int N : Ns) {
    for (const auto& sc : detail::symmetry_cases(N)) {
      GridSpec g = build_grid(sc.family, sc.size);
      const auto names = g.lines()->names();
      const std::string where = std::string(to_string(sc.family)) + "(" + std::to_string(sc.size) + ")";
      // Large grids: exact evaluation at seeded points; otherwise symbolic.
      const bool symbolic = g.graph.tetravalent_count() <= 16;
      run_mode(symbolic ? Mode::Symbolic : Mode::Points, g.symbolic_space(), o, false, [&](auto& e, const std::string& label) {
        auto base = e.z(sc.family, sc.size, e.vars(names));
        for (const auto& grp : sc.groups) {
          for (std::size_t k = 0; k + 1 < grp.size(); ++k) {
            auto sw = detail::swapped(names, grp[k], grp[k + 1]);
            r.expect_equal(base, e.z(sc.family, sc.size, e.vars(sw)), where + " swap " + grp[k] + "<->" + grp[k + 1] + " " + label);
          }
        }
      });
    }
  }
  r.param("N", detail::join(detail::ns(Ns)));
  r.note("grids above 16 vertices are compared at seeded points, the rest symbolically");
  return r;
}

inline CheckReport check_pseudo_symmetry(const CheckOptions& o) {
  auto r = detail::report("pseudo-symmetry",
                          "sigma(a^2 y/x) Z(x,y) = (sigma(a^2)+sigma(x/y)) Z(y,x) for the even quarter-turn and half-turn grids");
  auto Ns = detail::n_values(o, {1, 2}, 3, "4N");
  for (int N : Ns) {
    for (auto [f, size] : {std::pair{Family::QTEven, 4 * N}, std::pair{Family::HTEven, 2 * N}}) {
      GridSpec g = build_grid(f, size);
      const auto names = g.lines()->names();
      const bool symbolic = g.graph.tetravalent_count() <= 16;
      const std::string where = std::string(to_string(f)) + "(" + std::to_string(size) + ")";
      SpacePtr T = g.symbolic_space();
      std::vector<Exponents> dens{mono(*T, {{"a", 2}, {"y", 1}, {"x", -1}})};
      run_mode(symbolic ? Mode::Symbolic : Mode::Points, T, o, false, [&](auto& e, const std::string& label) {
        auto lhs = e.s(e.m({{"a", 2}, {"y", 1}, {"x", -1}})) * e.z(f, size, e.vars(names));
        auto rhs = (e.s(e.m({{"a", 2}})) + e.s(e.m({{"x", 1}, {"y", -1}}))) * e.z(f, size, e.vars(detail::swapped(names, "x", "y")));
        r.expect_equal(lhs, rhs, where + " " + label);
      }, dens);
    }
  }
  r.param("N", detail::join(detail::ns(Ns)));
  return r;
}

inline CheckReport check_stroganov(const CheckOptions& o) {
  auto r = detail::report("stroganov", "At a = w, Z(N) is symmetric across its two variable groups");
  auto Ns = detail::n_values(o, {2}, 3, "N");
  for (int N : Ns) {
    const auto names = xs(1, 2 * N);
    run_mode(Mode::Omega, space_with_a(names), o, false, [&](auto& e, const std::string& label) {
      auto base = e.z(Family::DWBC, N, e.vars(names));
      for (int k = 1; k <= N; ++k) {
        const std::string u = "x" + std::to_string(k), v = "x" + std::to_string(N + k);
        r.expect_equal(base, e.z(Family::DWBC, N, e.vars(detail::swapped(names, u, v))), N_str(N) + " swap " + u + "<->" + v + " " + label);
      }
    });
  }
  r.param("N", detail::join(detail::ns(Ns)));
  return r;
}

inline CheckReport check_stroganov_control(const CheckOptions& o) {
  auto r = detail::report("stroganov-control", "At generic a, Z(N) is not symmetric across its variable groups");
  auto Ns = detail::n_values(o, {2}, 3, "N");
  for (int N : Ns) {
    const auto names = xs(1, 2 * N);
    SpacePtr T = space_with_a(names);
    SymbolicWeights w(T);
    Eval<SymbolicWeights> e(w);
    const std::string u = "x1", v = "x" + std::to_string(N + 1);
    auto base = e.z(Family::DWBC, N, e.vars(names));
    auto sw = e.z(Family::DWBC, N, e.vars(detail::swapped(names, u, v)));
    ++r.cases;
    if (base == sw) {
      r.fail(N_str(N) + ": swap " + u + "<->" + v + " left Z unchanged at generic a");
    } else {
      r.note(N_str(N) + ": swap " + u + "<->" + v + " changes Z at generic a, as required");
    }
  }
  r.param("N", detail::join(detail::ns(Ns)));
  return r;
}

// ---------------------------------------------------------------------------
// Specializations

namespace detail {

// Compares one specialization equation. Full partition functions must agree;
// for split grids, each left tag must match exactly one right tag, forming
// a bijection equal to `expected`.
template <class E>
void compare_specialization(CheckReport& r, E& e, const std::string& where, Family lf, int ls,
                            const std::vector<Exponents>& la, const typename E::Ring& pre, Family rf, int rs,
                            const std::vector<Exponents>& ra, const std::map<std::string, std::string>& expected) {
  r.expect_equal(e.z(lf, ls, la), pre * e.z(rf, rs, ra), where + " full");
  if (expected.empty()) return;
  GridSpec lg = build_grid(lf, ls);
  std::vector<std::string> rtags = rf == Family::DWBC ? std::vector<std::string>{} : build_grid(rf, rs).tags();
  std::map<std::string, std::vector<std::string>> found;
  std::map<std::string, typename E::Ring> rvals;
  for (const auto& rt : rtags) rvals.emplace(rt, pre * e.z(rf, rs, ra, rt));
  std::string derived;
  for (const auto& lt : lg.tags()) {
    auto lv = e.z(lf, ls, la, lt);
    for (const auto& [rt, rv] : rvals)
      if (lv == rv) found[lt].push_back(rt);
    derived += (derived.empty() ? "" : ", ") + lt + "->" + (found[lt].size() == 1 ? found[lt][0] : "?");
  }
  std::set<std::string> images;
  bool ok = true;
  for (const auto& lt : lg.tags()) {
    if (found[lt].size() != 1) {
      ok = false;
    } else {
      images.insert(found[lt][0]);
      auto it = expected.find(lt);
      if (it == expected.end() || it->second != found[lt][0]) ok = false;
    }
  }
  if (images.size() != lg.tags().size()) ok = false;
  r.expect(ok, where + " split tags: derived " + derived);
}

inline std::string tag_map_text(const std::map<std::string, std::string>& m) {
  std::string s;
  for (const auto& [k, v] : m) s += (s.empty() ? "" : ", ") + k + "->" + v;
  return s;
}

}  // namespace detail

inline CheckReport check_spec_z(const CheckOptions& o) {
  auto r = detail::report("spec-z", "Z(N) with its first row parameter pinned to a^(+-1) x_{N+1} factors through Z(N-1)");
  auto Ns = detail::n_values(o, {1, 2}, 3, "N");
  for (int N : Ns) {
    const auto names = xs(1, 2 * N);
    const std::string p = "x" + std::to_string(N + 1);
    const auto rest = cat(xs(2, N), xs(N + 2, 2 * N));
    run_mode(N <= 2 ? Mode::Symbolic : Mode::Points, space_with_a(names), o, false, [&](auto& e, const std::string& label) {
      for (int bar = 0; bar < 2; ++bar) {
        auto la = e.vars(names);
        la[0] = e.m({{"a", bar ? -1 : 1}, {p, 1}});
        auto pre = prefactor(e, bar ? PrefactorKind::ABar : PrefactorKind::A, {p, xs(2, N), xs(N + 1, 2 * N)});
        detail::compare_specialization(r, e, N_str(N) + (bar ? " x1=" + p + "/a " : " x1=a*" + p + " ") + label, Family::DWBC, N, la, pre,
                                       Family::DWBC, N - 1, e.vars(rest), {});
      }
      if (N >= 2) {
        // Degenerate case: x2 = x_{N+1}/a kills a prefactor term and the left side.
        auto la = e.vars(names);
        la[0] = e.m({{"a", 1}, {p, 1}});
        la[1] = e.m({{"a", -1}, {p, 1}});
        r.expect_equal(e.z(Family::DWBC, N, la), e.constant(0), N_str(N) + " degenerate x2=" + p + "/a " + label);
      }
    });
  }
  r.param("N", detail::join(detail::ns(Ns)));
  return r;
}

inline CheckReport check_spec_ht(const CheckOptions& o) {
  auto r = detail::report("spec-ht", "Half-turn grids with y or x pinned factor through the next smaller half-turn grid");
  auto Ns = detail::n_values(o, {1, 2}, 2, "2N+1");
  const std::map<std::string, std::string> odd_ax{{"downright", "down"}, {"upleft", "up"}};
  const std::map<std::string, std::string> odd_bax{{"downright", "up"}, {"upleft", "down"}};
  const std::map<std::string, std::string> even_ax{{"up", "downright"}, {"down", "upleft"}};
  const std::map<std::string, std::string> even_bax{{"down", "downright"}, {"up", "upleft"}};
  for (int N : Ns) {
    const Mode mode = N <= 2 ? Mode::Symbolic : Mode::Points;
    {
      const auto X = xs(1, 2 * N);
      run_mode(mode, space_with_a(cat(X, {"x"})), o, false, [&](auto& e, const std::string& label) {
        auto la = e.vars(cat(X, {"x"}));
        la.push_back(e.m({{"a", 1}, {"x1", 1}}));
        auto ra = e.vars(cat(xs(2, 2 * N), {"x1", "x"}));
        auto pre = prefactor(e, PrefactorKind::AH1, {"x1", xs(1, N), xs(N + 1, 2 * N)});
        detail::compare_specialization(r, e, "odd " + N_str(N) + " y=a*x1 " + label, Family::HTOdd, 2 * N + 1, la, pre, Family::HTEven, 2 * N,
                                       ra, odd_ax);
        la.back() = e.m({{"a", -1}, {"x1", 1}});
        ra = e.vars(cat(xs(2, 2 * N), {"x", "x1"}));
        pre = prefactor(e, PrefactorKind::AH1Bar, {"x1", xs(1, N), xs(N + 1, 2 * N)});
        detail::compare_specialization(r, e, "odd " + N_str(N) + " y=x1/a " + label, Family::HTOdd, 2 * N + 1, la, pre, Family::HTEven, 2 * N,
                                       ra, odd_bax);
      });
    }
    {
      const auto X = xs(1, 2 * N - 1);
      const std::string xN = "x" + std::to_string(N);
      const auto rest = cat(xs(1, N - 1), xs(N + 1, 2 * N - 1));
      run_mode(mode, space_with_a(cat(X, {"x", "y"})), o, false, [&](auto& e, const std::string& label) {
        auto la = e.vars(cat(X, {"x"}));
        la.push_back(e.m({{"a", 1}, {xN, 1}}));
        auto ra = e.vars(cat(rest, {"x", xN}));
        auto pre = e.s(e.m({{"a", 1}, {"x", 1}, {xN, -1}})) * prefactor(e, PrefactorKind::AH0, {xN, xs(1, N - 1), xs(N, 2 * N - 1)});
        detail::compare_specialization(r, e, "even " + N_str(N) + " y=a*" + xN + " " + label, Family::HTEven, 2 * N, la, pre, Family::HTOdd,
                                       2 * N - 1, ra, even_ax);
        la = e.vars(X);
        la.push_back(e.m({{"a", -1}, {xN, 1}}));
        la.push_back(e.var("y"));
        ra = e.vars(cat(rest, {"y", xN}));
        pre = e.s(e.m({{"a", 1}, {xN, 1}, {"y", -1}})) * prefactor(e, PrefactorKind::AH0Bar, {xN, xs(1, N - 1), xs(N, 2 * N - 1)});
        detail::compare_specialization(r, e, "even " + N_str(N) + " x=" + xN + "/a " + label, Family::HTEven, 2 * N, la, pre, Family::HTOdd,
                                       2 * N - 1, ra, even_bax);
      });
    }
  }
  r.param("N", detail::join(detail::ns(Ns)));
  r.param("tags odd y=a*x1", detail::tag_map_text(odd_ax));
  r.param("tags odd y=x1/a", detail::tag_map_text(odd_bax));
  r.param("tags even y=a*xN", detail::tag_map_text(even_ax));
  r.param("tags even x=xN/a", detail::tag_map_text(even_bax));
  return r;
}

inline CheckReport check_spec_qt(const CheckOptions& o) {
  auto r = detail::report("spec-qt", "Quarter-turn grids with x or y pinned factor through the quarter-turn grid of size 2 less");
  // m = size/2; default covers sizes 4, 6, 8 symbolically and 10 at points.
  std::vector<int> ms{2, 3, 4, 5};
  if (o.n) {
    auto Ns = detail::n_values(o, {}, 2, "4N+2");
    ms = {2 * Ns[0], 2 * Ns[0] + 1};
  }
  for (int m : ms) {
    const bool even = m % 2 == 0;
    const Family lf = even ? Family::QTEven : Family::QTOdd, rf = even ? Family::QTOdd : Family::QTEven;
    // The central orientation swaps only when m is even.
    const std::map<std::string, std::string> bax = even ? std::map<std::string, std::string>{{"conv", "upleft"}, {"div", "downright"}}
                                                        : std::map<std::string, std::string>{{"downright", "conv"}, {"upleft", "div"}};
    const std::map<std::string, std::string> ax = even ? std::map<std::string, std::string>{{"conv", "downright"}, {"div", "upleft"}}
                                                       : std::map<std::string, std::string>{{"upleft", "conv"}, {"downright", "div"}};
    const auto X = xs(1, m - 1);
    const auto rest = xs(2, m - 1);
    const std::string where = "size " + std::to_string(2 * m);
    run_mode(2 * m <= 8 ? Mode::Symbolic : Mode::Points, space_with_a(cat(X, {"x", "y"})), o, false, [&](auto& e, const std::string& label) {
      auto la = e.vars(X);
      la.push_back(e.m({{"a", -1}, {"x1", 1}}));
      la.push_back(e.var("y"));
      auto pre = e.s(e.m({{"a", 1}, {"x1", 1}, {"y", -1}})) * prefactor(e, PrefactorKind::AQBar, {"x1", X, {}});
      detail::compare_specialization(r, e, where + " x=x1/a " + label, lf, 2 * m, la, pre, rf, 2 * m - 2, e.vars(cat(rest, {"y", "x1"})), bax);
      la = e.vars(cat(X, {"x"}));
      la.push_back(e.m({{"a", 1}, {"x1", 1}}));
      pre = e.s(e.m({{"a", 1}, {"x", 1}, {"x1", -1}})) * prefactor(e, PrefactorKind::AQ, {"x1", X, {}});
      detail::compare_specialization(r, e, where + " y=a*x1 " + label, lf, 2 * m, la, pre, rf, 2 * m - 2, e.vars(cat(rest, {"x1", "x"})), ax);
    });
  }
  r.param("sizes", detail::join(detail::ns([&] {
            std::vector<int> s;
            for (int m : ms) s.push_back(2 * m);
            return s;
          }())));
  return r;
}

inline CheckReport check_prefactor_forms(const CheckOptions&) {
  auto r = detail::report("prefactor-forms", "Specialization prefactors equal their compact products at a = w");
  const std::vector<PrefactorKind> kinds{PrefactorKind::A,   PrefactorKind::ABar,   PrefactorKind::AH1, PrefactorKind::AH1Bar,
                                         PrefactorKind::AH0, PrefactorKind::AH0Bar, PrefactorKind::AQ,  PrefactorKind::AQBar};
  for (int m = 1; m <= 3; ++m) {
    SpacePtr T = space_with_a(xs(1, 2 * m));
    for (auto k : kinds) {
      PrefactorArgs args{"x1", xs(1, m), xs(m + 1, 2 * m)};
      if (k == PrefactorKind::AQ || k == PrefactorKind::AQBar) args = {"x1", xs(2, m + 1), {}};
      r.expect_equal(reduce_generic_a(specialization_prefactor(k, args, T)), reduce_generic_a(specialization_prefactor_omega(k, args, T)),
                     std::string(to_string(k)) + " size " + std::to_string(m));
    }
  }
  SpacePtr T = space_with_a({"x1", "x2"});
  auto s = [&](std::initializer_list<std::pair<std::string, int>> e) { return sigma_mono<Rational>(T, mono(*T, e)); };
  r.expect_equal(specialization_prefactor(PrefactorKind::AQ, {"x1", {"x2"}, {}}, T), s({{"a", 2}, {"x1", 1}, {"x2", -1}}) * s({{"a", 1}, {"x2", 1}, {"x1", -1}}),
                 "AQ pivot x1 list {x2}");
  auto c = s({{"a", 1}, {"x1", 1}, {"x2", -1}});
  r.expect_equal(reduce_generic_a(specialization_prefactor(PrefactorKind::AQBar, {"x1", {"x2"}, {}}, T)), reduce_generic_a(c * c),
                 "AQbar pivot x1 list {x2} at a=w");
  return r;
}

// ---------------------------------------------------------------------------
// Main factorizations at a = w

namespace detail {

inline CheckReport theorem_report(bool four_n2) {
  return report(four_n2 ? "theorem-main-4n2" : "theorem-main-4n",
                four_n2 ? "sigma(a) Z_QT(4N+2) = Z_HT(2N+1) Z(N) Z(N+1) at a = w, full and split"
                        : "sigma(a) Z_QT(4N) = Z_HT(2N) Z(N; x) Z(N; y) at a = w, full and split");
}

}  // namespace detail

inline CheckReport check_theorem(bool four_n2, const CheckOptions& o) {
  auto r = detail::theorem_report(four_n2);
  auto Ns = four_n2 ? detail::n_values(o, {1, 2}, 2, "4N+2") : detail::n_values(o, {1, 2}, 3, "4N");
  for (int N : Ns) {
    const Mode mode = N == 1 ? Mode::Omega : Mode::Points;
    const auto X = four_n2 ? xs(1, 2 * N) : xs(1, 2 * N - 1);
    const auto names = cat(X, {"x", "y"});
    run_mode(mode, space_with_a(names), o, true, [&](auto& e, const std::string& label) {
      auto sa = e.s(e.m({{"a", 1}}));
      const auto args = e.vars(names);
      const std::string where = N_str(N) + " " + label;
      if (!four_n2) {
        auto zx = e.z(Family::DWBC, N, e.vars(cat(X, {"x"})));
        auto zy = e.z(Family::DWBC, N, e.vars(cat(X, {"y"})));
        auto factor = zx * zy;
        r.expect_equal(sa * e.z(Family::QTEven, 4 * N, args), e.z(Family::HTEven, 2 * N, args) * factor, where + " full");
        for (auto [q, h] : {std::pair<const char*, const char*>{"conv", "up"}, {"div", "down"}}) {
          r.expect_equal(sa * e.z(Family::QTEven, 4 * N, args, q), e.z(Family::HTEven, 2 * N, args, h) * factor,
                         where + " " + q + "/" + h);
        }
      } else {
        auto factor = e.z(Family::DWBC, N + 1, args) * e.z(Family::DWBC, N, e.vars(X));
        r.expect_equal(sa * e.z(Family::QTOdd, 4 * N + 2, args), e.z(Family::HTOdd, 2 * N + 1, args) * factor, where + " full");
        for (const char* t : {"downright", "upleft"}) {
          r.expect_equal(sa * e.z(Family::QTOdd, 4 * N + 2, args, t), e.z(Family::HTOdd, 2 * N + 1, args, t) * factor, where + " " + t);
        }
      }
    });
    r.param(N_str(N), to_string(mode));
  }
  if (!four_n2) r.param("split pairs", "conv->up, div->down");
  if (four_n2) r.param("split pairs", "downright->downright, upleft->upleft");
  return r;
}

namespace detail {

// Both sides of the x = a y factorizations for one evaluation context.
// `compact` replaces sigma(a^2 y/x_k) by sigma(a x_k/y), valid at a = w.
template <class E>
struct ExtraSpecSides {
  typename E::Ring q_lhs, q_rhs, h_lhs, h_rhs;
};

template <class E>
ExtraSpecSides<E> extra_spec_sides(E& e, int N, bool compact) {
  const auto X = xs(1, 2 * N);
  const std::string last = "x" + std::to_string(2 * N), xN = "x" + std::to_string(N);
  auto la = e.vars(X);
  la.push_back(e.m({{"a", 1}, {"y", 1}}));
  la.push_back(e.var("y"));
  auto second = [&](const std::string& k) {
    return compact ? e.s(e.m({{"a", 1}, {k, 1}, {"y", -1}})) : e.s(e.m({{"a", 2}, {"y", 1}, {k, -1}}));
  };
  auto qpre = e.s(e.m({{"a", 1}}));
  for (const auto& k : X) qpre = qpre * e.s(e.m({{"a", 1}, {k, 1}, {"y", -1}})) * second(k);
  auto hpre = e.one();
  for (const auto& k : xs(1, N)) hpre = hpre * e.s(e.m({{"a", 1}, {k, 1}, {"y", -1}}));
  for (const auto& k : xs(N + 1, 2 * N)) hpre = hpre * second(k);
  return {e.z(Family::QTOdd, 4 * N + 2, la), qpre * e.z(Family::QTEven, 4 * N, e.vars(cat(xs(1, 2 * N - 1), {last, last}))),
          e.z(Family::HTOdd, 2 * N + 1, la),
          hpre * e.z(Family::HTEven, 2 * N, e.vars(cat(cat(xs(1, N - 1), xs(N + 1, 2 * N)), {xN, xN})))};
}

}  // namespace detail

inline CheckReport check_extra_spec(const CheckOptions& o) {
  auto r = detail::report("extra-spec", "Setting x = a y factors the odd-size grids; the compact prefactors agree at a = w");
  auto Ns = detail::n_values(o, {1}, 2, "4N+2");
  for (int N : Ns) {
    const Mode mode = N == 1 ? Mode::Omega : Mode::Points;
    run_mode(mode, space_with_a(cat(xs(1, 2 * N), {"y"})), o, true, [&](auto& e, const std::string& label) {
      for (bool compact : {false, true}) {
        auto sides = detail::extra_spec_sides(e, N, compact);
        const std::string where = N_str(N) + (compact ? " compact " : " displayed ") + label;
        r.expect_equal(sides.q_lhs, sides.q_rhs, where + " quarter-turn");
        r.expect_equal(sides.h_lhs, sides.h_rhs, where + " half-turn");
      }
    });
  }
  r.param("N", detail::join(detail::ns(Ns)));
  return r;
}

// Passes when both compact forms fail at some generic-a point. The
// displayed forms hold for every a.
inline CheckReport check_extra_spec_control(const CheckOptions& o) {
  auto r = detail::report("extra-spec-control", "The compact x = a y prefactors fail at generic a");
  const int N = 1;
  std::optional<std::string> q_differs, h_differs;
  run_mode(Mode::Points, space_with_a(cat(xs(1, 2 * N), {"y"})), o, false, [&](auto& e, const std::string& label) {
    auto displayed = detail::extra_spec_sides(e, N, false);
    r.expect_equal(displayed.q_lhs, displayed.q_rhs, "displayed quarter-turn " + label);
    r.expect_equal(displayed.h_lhs, displayed.h_rhs, "displayed half-turn " + label);
    auto compact = detail::extra_spec_sides(e, N, true);
    if (!q_differs && compact.q_lhs != compact.q_rhs) q_differs = label;
    if (!h_differs && compact.h_lhs != compact.h_rhs) h_differs = label;
  });
  if (q_differs) {
    r.note("compact quarter-turn form fails at " + *q_differs);
  } else {
    r.fail("compact quarter-turn form held at every generic-a point");
  }
  if (h_differs) {
    r.note("compact half-turn form fails at " + *h_differs);
  } else {
    r.fail("compact half-turn form held at every generic-a point");
  }
  r.param("N", "1");
  return r;
}

// ---------------------------------------------------------------------------
// Counting relations

namespace detail {

inline BigInt count_of(SymClass c, int n, int jobs) { return count_class(c, n, jobs).count; }

inline BigInt plain_count(int N, int jobs) { return N == 0 ? BigInt(1) : count_of(SymClass::Plain, N, jobs); }

}  // namespace detail

inline CheckReport check_count_qt4n(const CheckOptions& o) {
  auto r = detail::report("count-qt4n", "A_QT(4N) = A_HT(2N) A(N)^2, both sides enumerated");
  auto Ns = detail::n_values(o, {1, 2, 3}, 3, "4N");
  for (int N : Ns) {
    BigInt lhs = detail::count_of(SymClass::QT, 4 * N, o.jobs);
    BigInt a = detail::plain_count(N, o.jobs);
    BigInt rhs = detail::count_of(SymClass::HT, 2 * N, o.jobs) * a * a;
    r.expect_equal(lhs, rhs, N_str(N));
    r.param(N_str(N), lhs.get_str());
  }
  return r;
}

inline CheckReport check_count_qt_odd(const CheckOptions& o) {
  auto r = detail::report("count-qt-odd", "A_QT(4N-1) = A_HT(2N-1) A(N)^2 and A_QT(4N+1) = A_HT(2N+1) A(N)^2, enumerated");
  auto Ns = detail::n_values(o, {1, 2}, 2, "4N+1");
  for (int N : Ns) {
    BigInt a = detail::plain_count(N, o.jobs);
    for (int s : {-1, 1}) {
      BigInt lhs = detail::count_of(SymClass::QT, 4 * N + s, o.jobs);
      BigInt rhs = detail::count_of(SymClass::HT, 2 * N + s, o.jobs) * a * a;
      r.expect_equal(lhs, rhs, N_str(N) + " size " + std::to_string(4 * N + s));
      r.param("A_QT(" + std::to_string(4 * N + s) + ")", lhs.get_str());
    }
  }
  return r;
}

inline CheckReport check_count_qqt(const CheckOptions& o) {
  auto r = detail::report("count-qqt", "Quasi quarter-turn count at 4N+2 equals A_HT(2N+1) A(N) A(N+1), enumerated");
  auto Ns = detail::n_values(o, {1, 2}, 2, "4N+2");
  for (int N : Ns) {
    BigInt lhs = detail::count_of(SymClass::QQT, 4 * N + 2, o.jobs);
    BigInt rhs = detail::count_of(SymClass::HT, 2 * N + 1, o.jobs) * detail::plain_count(N, o.jobs) * detail::plain_count(N + 1, o.jobs);
    r.expect_equal(lhs, rhs, N_str(N));
    r.param("size " + std::to_string(4 * N + 2), lhs.get_str());
  }
  return r;
}

inline CheckReport check_mod4(const CheckOptions& o) {
  auto r = detail::report("mod4", "No quarter-turn symmetric ASM has size 2 mod 4");
  std::vector<int> sizes{2, 6, 10};
  if (o.n) {
    if (*o.n % 4 != 2) throw UsageError("mod4 takes a size n = 2 mod 4");
    if (*o.n > kEnumeratorCap) throw SizeCapError("size " + std::to_string(*o.n) + " exceeds the cap n <= " + std::to_string(kEnumeratorCap));
    sizes = {*o.n};
  }
  for (int n : sizes) r.expect_equal(detail::count_of(SymClass::QT, n, o.jobs), BigInt(0), "n=" + std::to_string(n));
  r.param("sizes", detail::join(detail::ns(sizes)));
  return r;
}

inline CheckReport check_one_over_n(const CheckOptions& o) {
  auto r = detail::report("one-over-n", "Negative-center proportion is N/(2N+1) for quasi quarter-turn and odd half-turn ASMs");
  auto Ns = detail::n_values(o, {1, 2}, 2, "4N+2");
  for (int N : Ns) {
    const Rational expected(N, 2 * N + 1);
    CountRecord q = count_class(SymClass::QQT, 4 * N + 2, o.jobs);
    Rational qf(q.split->first, q.count);
    qf.canonicalize();
    r.expect_equal(qf, expected, "quasi quarter-turn size " + std::to_string(4 * N + 2));
    const int n = 2 * N + 1, c = N + 1;
    BigInt neg = 0, total = 0;
    enumerate_class(SymClass::HT, n, [&](const Asm& m) {
      ++total;
      if (m.at(c, c) == -1) ++neg;
      return true;
    });
    Rational hf(neg, total);
    hf.canonicalize();
    r.expect_equal(hf, expected, "half-turn size " + std::to_string(n));
    r.param(N_str(N), qf.get_str() + " / " + hf.get_str());
  }
  return r;
}

// ---------------------------------------------------------------------------
// All-ones values, half-widths

namespace detail {

inline CycloRational ones_value(Family f, int size) {
  GridSpec g = build_grid(f, size);
  return partition_function_value(g, all_ones_at_omega(g));
}

}  // namespace detail

inline CheckReport check_all_ones(const CheckOptions& o) {
  auto r = detail::report("all-ones", "At a = w with all parameters 1, each partition function is a fixed multiple of its count");
  const CycloRational is3 = i_sqrt3();
  auto cnt = [&](SymClass c, int n) { return CycloRational(Rational(detail::count_of(c, n, o.jobs))); };
  auto p3 = [](long k) { return CycloRational(Rational(BigInt(3)) ).pow(k); };
  for (int N = 1; N <= 3; ++N) r.expect_equal(detail::ones_value(Family::DWBC, N), is3.pow(N * N) * cnt(SymClass::Plain, N), "Z " + N_str(N));
  for (int N = 1; N <= 2; ++N) {
    r.expect_equal(detail::ones_value(Family::HTEven, 2 * N), CycloRational(N % 2 ? -1 : 1) * p3(N * N) * cnt(SymClass::HT, 2 * N),
                   "half-turn even " + N_str(N));
    r.expect_equal(detail::ones_value(Family::HTOdd, 2 * N + 1), p3(N * N + N) * cnt(SymClass::HT, 2 * N + 1), "half-turn odd " + N_str(N));
    auto zq = detail::ones_value(Family::QTEven, 4 * N);
    auto aq = cnt(SymClass::QT, 4 * N);
    r.expect_equal(zq * zq, CycloRational(-1) * p3(4 * N * N - 1) * aq * aq, "quarter-turn 4N (squared) " + N_str(N));
    r.expect_equal(detail::ones_value(Family::QTOdd, 4 * N + 2), p3(2 * N * N + 2 * N) * cnt(SymClass::QQT, 4 * N + 2),
                   "quarter-turn 4N+2 " + N_str(N));
  }
  r.param("sizes", "Z: N<=3; others: N<=2");
  return r;
}

inline CheckReport check_half_widths(const CheckOptions& o) {
  auto r = detail::report("half-widths",
                          "Both sides of the split factorizations are centered in x with half-widths 2N-1, 2N-2, 2N, 2N-1");
  auto Ns = detail::n_values(o, {1, 2}, 2, "4N+2");
  for (int N : Ns) {
    struct Case {
      Family q;
      std::string qtag;
      Family h;
      std::string htag;
      int width;
      int parity;  // of the exponents of x on the quarter-turn side
      int hparity;
    };
    const std::vector<Case> cases{
        {Family::QTEven, "conv", Family::HTEven, "up", 2 * N - 1, 1, N % 2},
        {Family::QTEven, "div", Family::HTEven, "down", 2 * N - 2, 0, (N + 1) % 2},
        {Family::QTOdd, "downright", Family::HTOdd, "downright", 2 * N, 0, N % 2},
        {Family::QTOdd, "upleft", Family::HTOdd, "upleft", 2 * N - 1, 1, (N + 1) % 2},
    };
    const auto X = xs(1, 2 * N);
    SamplePoints sp(o.seed);
    // a = w and every parameter but x at a seeded point.
    SpacePtr full = space_with_a(cat(X, {"x", "y"}));
    VarAssignment drawn = sp.draw(full, {}, {{"a", CycloRational::omega()}});
    VarAssignment v;
    for (const auto& [k, x] : drawn.values())
      if (k != "x") v.set(k, x);
    SpecializedWeights w(full, make_space({"x"}), v);
    Eval<SpecializedWeights> e(w);
    for (const auto& c : cases) {
      const bool four_n = c.q == Family::QTEven;
      const int qs = four_n ? 4 * N : 4 * N + 2, hs = four_n ? 2 * N : 2 * N + 1;
      const auto Xq = four_n ? xs(1, 2 * N - 1) : X;
      const auto args = e.vars(cat(Xq, {"x", "y"}));
      WPoly lhs = e.z(c.q, qs, args, c.qtag);
      WPoly h = e.z(c.h, hs, args, c.htag);
      WPoly rhs = four_n ? h * e.z(Family::DWBC, N, e.vars(cat(Xq, {"x"}))) * e.z(Family::DWBC, N, e.vars(cat(Xq, {"y"})))
                         : h * e.z(Family::DWBC, N + 1, args) * e.z(Family::DWBC, N, e.vars(Xq));
      const std::string where = N_str(N) + " " + c.qtag + "/" + c.htag;
      for (const auto& [side, p] : {std::pair<std::string, const WPoly*>{"lhs", &lhs}, {"rhs", &rhs}}) {
        HalfWidth hw = p->half_width("x");
        r.expect(hw.centered && hw.width == c.width, where + " " + side + ": half-width " + std::to_string(hw.width) +
                                                          (hw.centered ? " centered" : " not centered") + ", expected " +
                                                          std::to_string(c.width));
        auto [even, odd] = p->parity_split("x");
        r.expect((c.parity == 0 ? odd : even).is_zero(), where + " " + side + ": mixed parity in x");
      }
      auto [heven, hodd] = h.parity_split("x");
      r.expect((c.hparity == 0 ? hodd : heven).is_zero(), where + ": half-turn part has the wrong parity in x");
    }
    r.param(N_str(N), describe(v));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Structural checks

namespace detail {

struct FamilyClass {
  Family family;
  int size;
  SymClass cls;
  int asm_size;
};

inline std::vector<FamilyClass> family_classes(int N) {
  return {{Family::DWBC, N, SymClass::Plain, N},
          {Family::HTEven, 2 * N, SymClass::HT, 2 * N},
          {Family::HTOdd, 2 * N + 1, SymClass::HT, 2 * N + 1},
          {Family::QTEven, 4 * N, SymClass::QT, 4 * N},
          {Family::QTOdd, 4 * N + 2, SymClass::QQT, 4 * N + 2}};
}

}  // namespace detail

inline CheckReport check_state_counts(const CheckOptions& o) {
  auto r = detail::report("state-counts", "Ice states of each grid are as many as the matching ASMs");
  auto Ns = detail::n_values(o, {1, 2}, 2, "4N+2");
  for (int N : Ns) {
    for (const auto& fc : detail::family_classes(N)) {
      GridSpec g = build_grid(fc.family, fc.size);
      const std::string where = std::string(to_string(fc.family)) + "(" + std::to_string(fc.size) + ")";
      r.expect_equal(BigInt(static_cast<long>(grid_states(g).size())), detail::count_of(fc.cls, fc.asm_size, o.jobs), where);
      if (fc.cls == SymClass::QQT) {
        CountRecord q = count_class(SymClass::QQT, fc.asm_size, o.jobs);
        r.expect_equal(BigInt(static_cast<long>(grid_states(g, "upleft").size())), q.split->first, where + " upleft vs neg");
        r.expect_equal(BigInt(static_cast<long>(grid_states(g, "downright").size())), q.split->second, where + " downright vs pos");
      }
    }
  }
  r.param("N", detail::join(detail::ns(Ns)));
  return r;
}

inline CheckReport check_engine_equivalence(const CheckOptions& o) {
  auto r = detail::report("engine-equivalence", "Backtracking ice states equal the states lifted from enumerated ASMs");
  auto Ns = detail::n_values(o, {1, 2}, 2, "4N+2");
  for (int N : Ns) {
    for (const auto& fc : detail::family_classes(N)) {
      GridSpec g = build_grid(fc.family, fc.size);
      auto states = grid_states(g);
      std::set<IceState> walked(states.begin(), states.end()), lifted;
      enumerate_class(fc.cls, fc.asm_size, [&](const Asm& m) {
        lifted.insert(lift_state(g, m));
        return true;
      });
      r.expect(walked == lifted && walked.size() == states.size(),
               std::string(to_string(fc.family)) + "(" + std::to_string(fc.size) + "): " + std::to_string(walked.size()) + " walked vs " +
                   std::to_string(lifted.size()) + " lifted");
    }
  }
  r.param("N", detail::join(detail::ns(Ns)));
  return r;
}

inline CheckReport check_ice_roundtrip(const CheckOptions& o) {
  auto r = detail::report("ice-roundtrip", "ASM to ice orientation and back is the identity");
  for (int n = 1; n <= 4; ++n) {
    long seen = 0;
    enumerate_class(SymClass::Plain, n, [&](const Asm& m) {
      ++seen;
      r.expect(asm_from_ice(ice_orientation(m)) == m, "n=" + std::to_string(n) + "\n" + m.str());
      return true;
    });
    r.expect_equal(BigInt(seen), detail::count_of(SymClass::Plain, n, o.jobs), "n=" + std::to_string(n) + " count");
  }
  r.param("sizes", "1-4");
  return r;
}

inline CheckReport check_bivalent_insertion(const CheckOptions& o) {
  auto r = detail::report("bivalent-insertion", "Sign-reversing bivalent vertices inserted in pairs or around a vertex leave Z unchanged");
  auto check = [&](const GridSpec& g, const IceGraph& modified, const std::string& where) {
    SpacePtr T = g.symbolic_space();
    SymbolicWeights w(T);
    r.expect_equal(graph_partition_function(modified, Binding::identity(g.lines(), T), w),
                   graph_partition_function(g.graph, Binding::identity(g.lines(), T), w), where);
  };
  {
    GridSpec g = build_grid(Family::DWBC, 1);
    for (int e = 0; e < static_cast<int>(g.graph.edges().size()); ++e) {
      IceGraph m = g.graph;
      m.insert_bivalent_pair(e);
      check(g, m, "dwbc(1) edge " + std::to_string(e));
    }
  }
  {
    GridSpec g = build_grid(Family::DWBC, 2);
    for (int e = 0; e < static_cast<int>(g.graph.edges().size()); ++e) {
      IceGraph m = g.graph;
      m.insert_bivalent_pair(e);
      check(g, m, "dwbc(2) edge " + std::to_string(e));
    }
    IceGraph twice = g.graph;
    twice.insert_bivalent_pair(0);
    twice.insert_bivalent_pair(0);
    check(g, twice, "dwbc(2) double insertion");
    for (int v = 0; v < static_cast<int>(g.graph.vertices().size()); ++v) {
      IceGraph m = g.graph;
      m.dot_around(v);
      check(g, m, "dwbc(2) dots around vertex " + std::to_string(v));
    }
  }
  std::mt19937_64 rng(o.seed);
  for (auto [f, size] : {std::pair{Family::HTOdd, 3}, std::pair{Family::HTEven, 4}, std::pair{Family::QTEven, 4}, std::pair{Family::QTOdd, 6}}) {
    GridSpec g = build_grid(f, size);
    std::vector<int> eligible;
    for (int e = 0; e < static_cast<int>(g.graph.edges().size()); ++e)
      if (!g.graph.edges()[e].to.is_boundary()) eligible.push_back(e);
    IceGraph m = g.graph;
    for (int k = 0; k < 3; ++k) m.insert_bivalent_pair(eligible[rng() % eligible.size()]);
    check(g, m, std::string(to_string(f)) + "(" + std::to_string(size) + ") three random insertions");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Registry

struct CheckEntry {
  std::string id;
  std::string summary;
  std::function<CheckReport(const CheckOptions&)> run;
};

inline const std::vector<CheckEntry>& check_registry() {
  static const std::vector<CheckEntry> entries{
      {"yang-baxter", "triangle exchange, 64 boundary cases", check_yang_baxter},
      {"yang-baxter-control", "triangle exchange fails without the constraint", check_yang_baxter_control},
      {"line-exchange", "parallel lines commute", check_line_exchange},
      {"uturn-exchange", "line exchange at a U-turn", check_uturn_exchange},
      {"loop", "closed crossing", check_loop},
      {"pass-through", "bent line crosses a grid", check_pass_through},
      {"symmetries", "variable-group symmetries", check_symmetries},
      {"pseudo-symmetry", "x/y exchange with prefactor", check_pseudo_symmetry},
      {"stroganov", "full symmetry of Z at a = w", check_stroganov},
      {"stroganov-control", "no full symmetry at generic a", check_stroganov_control},
      {"spec-z", "specialization of Z", check_spec_z},
      {"spec-ht", "specializations of half-turn grids", check_spec_ht},
      {"spec-qt", "specializations of quarter-turn grids", check_spec_qt},
      {"prefactor-forms", "prefactors at a = w", check_prefactor_forms},
      {"theorem-main-4n", "quarter-turn 4N factorization", [](const CheckOptions& o) { return check_theorem(false, o); }},
      {"theorem-main-4n2", "quarter-turn 4N+2 factorization", [](const CheckOptions& o) { return check_theorem(true, o); }},
      {"extra-spec", "x = a y factorizations", check_extra_spec},
      {"extra-spec-control", "compact x = a y prefactors fail at generic a", check_extra_spec_control},
      {"count-qt4n", "A_QT(4N) relation", check_count_qt4n},
      {"count-qt-odd", "A_QT(4N+-1) relations", check_count_qt_odd},
      {"count-qqt", "quasi quarter-turn 4N+2 relation", check_count_qqt},
      {"mod4", "no quarter-turn ASM of size 2 mod 4", check_mod4},
      {"one-over-n", "negative-center proportion", check_one_over_n},
      {"all-ones", "values at a = w with unit parameters", check_all_ones},
      {"half-widths", "degree bounds of split partition functions", check_half_widths},
      {"state-counts", "ice states vs ASM counts", check_state_counts},
      {"engine-equivalence", "backtracking vs lifted states", check_engine_equivalence},
      {"ice-roundtrip", "ASM/ice round trip", check_ice_roundtrip},
      {"bivalent-insertion", "bivalent vertex invariance", check_bivalent_insertion},
  };
  return entries;
}

inline const CheckEntry* find_check(const std::string& id) {
  for (const auto& e : check_registry())
    if (e.id == id) return &e;
  return nullptr;
}

// Runs one check, turning exceptions other than usage and cap errors into
// a failing report.
inline CheckReport run_check(const CheckEntry& entry, const CheckOptions& o) {
  auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  try {
    r = entry.run(o);
  } catch (const UsageError&) {
    throw;
  } catch (const SizeCapError&) {
    throw;
  } catch (const std::exception& e) {
    r = detail::report(entry.id, entry.summary);
    r.fail(std::string("error: ") + e.what());
  }
  if (o.n) r.param("n", std::to_string(*o.n));
  r.param("seed", std::to_string(o.seed));
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace iceasm
