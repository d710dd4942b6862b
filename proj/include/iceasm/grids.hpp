#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iceasm/asm.hpp"
#include "iceasm/ice_graph.hpp"

namespace iceasm {

enum class Family { DWBC, HTEven, HTOdd, QTEven, QTOdd };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::DWBC: return "dwbc";
    case Family::HTEven: return "ht2n";
    case Family::HTOdd: return "ht2n1";
    case Family::QTEven: return "qt4n";
    case Family::QTOdd: return "qt4n2";
  }
  return "?";
}

// Accepts "dwbc"/"z", "ht" and "qt" (parity picked from the size), or the exact names above.
inline Family parse_family(const std::string& name, int size) {
  if (name == "dwbc" || name == "z" || name == "plain") return Family::DWBC;
  if (name == "ht") return size % 2 == 0 ? Family::HTEven : Family::HTOdd;
  if (name == "qt") return size % 4 == 0 ? Family::QTEven : Family::QTOdd;
  if (name == "ht2n") return Family::HTEven;
  if (name == "ht2n1") return Family::HTOdd;
  if (name == "qt4n") return Family::QTEven;
  if (name == "qt4n2") return Family::QTOdd;
  throw std::invalid_argument("unknown family: " + name);
}

// A graph edge as an edge of the full n x n DWBC grid. `horizontal` edges are
// (row i, between columns j and j+1); vertical ones (between rows i and i+1,
// column j). `true_means_west_or_north` gives the meaning of orientation bit 1.
struct LiftRef {
  bool horizontal = true;
  int i = 0, j = 0;
  bool true_means_west_or_north = false;
};

struct GridSpec {
  Family family = Family::DWBC;
  int size = 0;  // N for DWBC, matrix size otherwise
  int N = 0;
  int full_n = 0;  // size of the matrices the states biject with
  IceGraph graph{make_space({})};
  std::vector<std::optional<LiftRef>> lift;  // per edge
  int central_edge = -1;
  std::string tag_true, tag_false;  // central-edge tags for orientation bit 1 / 0

  const SpacePtr& lines() const { return graph.params(); }

  // Symbolic target space: "a" followed by the line names.
  SpacePtr symbolic_space() const {
    std::vector<std::string> names{"a"};
    for (const auto& n : lines()->names()) names.push_back(n);
    return make_space(std::move(names));
  }

  std::vector<std::string> tags() const {
    if (central_edge < 0) return {};
    return {tag_true, tag_false};
  }

  bool tag_value(const std::string& tag) const {
    if (central_edge < 0) throw std::invalid_argument("family has no central edge");
    if (tag == tag_true) return true;
    if (tag == tag_false) return false;
    throw std::invalid_argument("unknown central tag '" + tag + "' (expected " + tag_true + " or " + tag_false + ")");
  }
};

namespace detail {

class GridBuilder {
 public:
  GridBuilder(GridSpec& g, int n) : g_(g), n_(n), id_(n + 2, std::vector<int>(n + 2, -1)) {}

  void add_cell(int i, int j, const std::string& row, const std::string& col) {
    Exponents p(g_.graph.params()->size(), 0);
    p[g_.graph.params()->index(row)] += 1;
    p[g_.graph.params()->index(col)] -= 1;
    id_[i][j] = g_.graph.add_vertex(p, "(" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  int at(int i, int j) const { return (i < 1 || j < 1 || i > n_ || j > n_) ? -1 : id_[i][j]; }

  int edge(int u, int su, int v, int sv, std::optional<LiftRef> ref) {
    int e = g_.graph.connect(u, su, v, sv);
    record(e, ref);
    return e;
  }
  int bound(int v, int s, bool inward, LiftRef ref) {
    int e = g_.graph.boundary(v, s, inward);
    record(e, ref);
    return e;
  }
  void record(int e, std::optional<LiftRef> ref) {
    if (static_cast<int>(g_.lift.size()) <= e) g_.lift.resize(e + 1);
    g_.lift[e] = ref;
  }

  // Connects neighbouring cells and the outer DWBC boundary. Slots with no
  // neighbouring cell stay open for family-specific wiring.
  void wire_regular() {
    for (int i = 1; i <= n_; ++i) {
      for (int j = 1; j <= n_; ++j) {
        int v = at(i, j);
        if (v < 0) continue;
        if (j == 1) bound(v, West, true, {true, i, 0, false});
        if (i == 1) bound(v, South, false, {false, 0, j, true});
        if (j == n_) bound(v, East, true, {true, i, n_, true});
        if (i == n_) bound(v, North, false, {false, n_, j, false});
        if (at(i, j + 1) >= 0) edge(v, East, at(i, j + 1), West, LiftRef{true, i, j, false});
        if (at(i + 1, j) >= 0) edge(v, North, at(i + 1, j), South, LiftRef{false, i, j, true});
      }
    }
  }

 private:
  GridSpec& g_;
  int n_;
  std::vector<std::vector<int>> id_;
};

inline std::string xname(int k) { return "x" + std::to_string(k); }

inline std::vector<std::string> line_names(int count, bool with_xy) {
  std::vector<std::string> out;
  for (int k = 1; k <= count; ++k) out.push_back(xname(k));
  if (with_xy) {
    out.push_back("x");
    out.push_back("y");
  }
  return out;
}

}  // namespace detail

// Maximum matrix size accepted by grid builders and enumerators.
inline constexpr int kSizeCap = 12;

// Builds one of the five grid families. `size` is N for DWBC and the matrix
// size for the symmetric families (2N, 2N+1, 4N, 4N+2).
inline GridSpec build_grid(Family family, int size) {
  using detail::xname;
  GridSpec g;
  g.family = family;
  g.size = size;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(std::string(to_string(family)) + ": size " + std::to_string(size) + " " + what);
  };
  need(size >= 1, "must be positive");
  switch (family) {
    case Family::DWBC: {
      const int N = size;
      need(N <= kSizeCap, "exceeds the cap " + std::to_string(kSizeCap));
      g.N = N;
      g.full_n = N;
      g.graph = IceGraph(make_space(detail::line_names(2 * N, false)));
      detail::GridBuilder b(g, N);
      for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) b.add_cell(i, j, xname(i), xname(N + j));
      b.wire_regular();
      break;
    }
    case Family::HTEven: {
      need(size % 2 == 0, "must be even");
      need(size <= kSizeCap, "exceeds the cap " + std::to_string(kSizeCap));
      const int N = size / 2, n = size;
      g.N = N;
      g.full_n = n;
      g.graph = IceGraph(make_space(detail::line_names(2 * N - 1, true)));
      detail::GridBuilder b(g, n);
      for (int r = 1; r <= n; ++r) {
        std::string row = r <= N - 1 ? xname(r) : r == N ? "x" : r == N + 1 ? "y" : xname(2 * N + 1 - r);
        for (int c = 1; c <= N; ++c) b.add_cell(r, c, row, xname(N - 1 + c));
      }
      b.wire_regular();
      for (int r = 1; r <= N; ++r) {
        int e = b.edge(b.at(r, N), East, b.at(2 * N + 1 - r, N), East, LiftRef{true, r, N, false});
        if (r == N) g.central_edge = e;
      }
      g.tag_true = "up";
      g.tag_false = "down";
      break;
    }
    case Family::HTOdd: {
      need(size % 2 == 1, "must be odd");
      need(size <= kSizeCap, "exceeds the cap " + std::to_string(kSizeCap));
      const int N = size / 2, n = size;
      g.N = N;
      g.full_n = n;
      g.graph = IceGraph(make_space(detail::line_names(2 * N, true)));
      detail::GridBuilder b(g, n);
      for (int r = 1; r <= n; ++r) {
        std::string row = r <= N ? xname(r) : r == N + 1 ? "x" : xname(2 * N + 2 - r);
        for (int c = 1; c <= N; ++c) b.add_cell(r, c, row, xname(N + c));
        if (r <= N) b.add_cell(r, N + 1, row, "y");
      }
      b.wire_regular();
      for (int r = 1; r <= N; ++r) b.edge(b.at(r, N + 1), East, b.at(2 * N + 2 - r, N), East, LiftRef{true, r, N + 1, false});
      if (N == 0) {
        g.central_edge = g.graph.dangling(true, "center");
        b.record(g.central_edge, std::nullopt);
      } else {
        g.central_edge = b.edge(b.at(N + 1, N), East, b.at(N, N + 1), North, LiftRef{true, N + 1, N, false});
      }
      g.tag_true = "downright";
      g.tag_false = "upleft";
      break;
    }
    case Family::QTEven:
    case Family::QTOdd: {
      const bool even = family == Family::QTEven;
      need(size % 4 == (even ? 0 : 2), even ? "must be a multiple of 4" : "must be 2 mod 4");
      need(size <= kSizeCap, "exceeds the cap " + std::to_string(kSizeCap));
      const int n = size, h = n / 2;
      const int N = even ? n / 4 : (n - 2) / 4;
      g.N = N;
      g.full_n = n;
      g.graph = IceGraph(make_space(detail::line_names(h - 1, true)));
      detail::GridBuilder b(g, n);
      for (int r = 1; r <= h; ++r) {
        for (int c = 1; c <= h; ++c) {
          if (r == h && c == h) continue;
          b.add_cell(r, c, r < h ? xname(r) : "x", c < h ? xname(c) : "y");
        }
      }
      b.wire_regular();
      for (int r = 1; r < h; ++r) {
        int bv = g.graph.add_bivalent("bend" + std::to_string(r));
        b.edge(b.at(r, h), East, bv, 0, LiftRef{true, r, h, false});
        b.edge(bv, 1, b.at(h, r), North, LiftRef{false, h, r, false});
      }
      if (h == 1) {
        g.central_edge = g.graph.dangling(true, "center");
        b.record(g.central_edge, std::nullopt);
      } else if (even) {
        int cv = g.graph.add_bivalent("center");
        g.central_edge = b.edge(b.at(h, h - 1), East, cv, 0, LiftRef{true, h, h - 1, false});
        b.edge(b.at(h - 1, h), North, cv, 1, LiftRef{false, h - 1, h, true});
      } else {
        g.central_edge = b.edge(b.at(h, h - 1), East, b.at(h - 1, h), North, LiftRef{true, h, h - 1, false});
      }
      g.tag_true = even ? "conv" : "downright";
      g.tag_false = even ? "div" : "upleft";
      break;
    }
  }
  g.lift.resize(g.graph.edges().size());
  return g;
}

// Restriction of the full ice state of an ASM to the grid's edges.
inline IceState lift_state(const GridSpec& g, const Asm& m) {
  if (m.size() != g.full_n) throw std::invalid_argument("lift_state: matrix size mismatch");
  FullIceState f = ice_orientation(m);
  IceState s(g.graph.edges().size(), 0);
  for (std::size_t e = 0; e < s.size(); ++e) {
    const auto& ref = g.lift[e];
    if (!ref) {
      s[e] = *g.graph.edges()[e].fixed;
      continue;
    }
    bool wn = ref->horizontal ? f.horiz_west[ref->i][ref->j] : f.vert_north[ref->i][ref->j];
    s[e] = wn == ref->true_means_west_or_north;
  }
  return s;
}

inline StateConstraints split_constraints(const GridSpec& g, const std::optional<std::string>& tag) {
  StateConstraints c;
  if (tag) c.overrides[g.central_edge] = g.tag_value(*tag);
  return c;
}

inline std::vector<IceState> grid_states(const GridSpec& g, const std::optional<std::string>& tag = std::nullopt) {
  return graph_states(g.graph, split_constraints(g, tag));
}

// Symbolic partition function over symbolic_space() (generic a).
inline QPoly partition_function_symbolic(const GridSpec& g, const std::optional<std::string>& tag = std::nullopt) {
  SpacePtr target = g.symbolic_space();
  SymbolicWeights w(target);
  return graph_partition_function(g.graph, Binding::identity(g.lines(), target), w, split_constraints(g, tag));
}

// Partition function with the variables in `values` substituted; the rest
// stay symbolic in the returned polynomial's space (names in line order).
inline WPoly partition_function_specialized(const GridSpec& g, const VarAssignment& values,
                                            const std::optional<std::string>& tag = std::nullopt) {
  SpacePtr full = g.symbolic_space();
  std::vector<std::string> rest;
  for (const auto& n : full->names())
    if (!values.find(n)) rest.push_back(n);
  SpecializedWeights w(full, make_space(std::move(rest)), values);
  return graph_partition_function(g.graph, Binding::identity(g.lines(), full), w, split_constraints(g, tag));
}

// Exact value at a full assignment of "a" and every line.
inline CycloRational partition_function_value(const GridSpec& g, const VarAssignment& values,
                                              const std::optional<std::string>& tag = std::nullopt) {
  SpacePtr full = g.symbolic_space();
  NumericWeights w(full, values);
  return graph_partition_function(g.graph, Binding::identity(g.lines(), full), w, split_constraints(g, tag));
}

// a = w and every line parameter 1.
inline VarAssignment all_ones_at_omega(const GridSpec& g) {
  VarAssignment v;
  v.set("a", CycloRational::omega());
  for (const auto& n : g.lines()->names()) v.set(n, 1);
  return v;
}

}  // namespace iceasm
