#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iceasm/laurent.hpp"

namespace iceasm {

// Local frame of a tetravalent vertex. The vertex parameter sits in the angle
// between the West and South half-edges.
enum Slot : int { East = 0, North = 1, West = 2, South = 3 };

enum class VertexKind { Tetravalent, Bivalent };

// The six admissible 2-in/2-out configurations. PlusOne has both horizontal
// half-edges inward, MinusOne both vertical ones; the four "through"
// configurations are named by the arrow directions they carry.
enum class VertexConfig { PlusOne, MinusOne, WestNorth, EastSouth, EastNorth, WestSouth };

inline const char* to_string(VertexConfig c) {
  switch (c) {
    case VertexConfig::PlusOne: return "+1";
    case VertexConfig::MinusOne: return "-1";
    case VertexConfig::WestNorth: return "WN";
    case VertexConfig::EastSouth: return "ES";
    case VertexConfig::EastNorth: return "EN";
    case VertexConfig::WestSouth: return "WS";
  }
  return "?";
}

// Classifies a tetravalent vertex from in-ness of its E, N, W, S half-edges.
inline std::optional<VertexConfig> classify_vertex(const std::array<bool, 4>& in) {
  int count = in[East] + in[North] + in[West] + in[South];
  if (count != 2) return std::nullopt;
  if (in[West] && in[East]) return VertexConfig::PlusOne;
  if (in[North] && in[South]) return VertexConfig::MinusOne;
  if (in[East] && in[South]) return VertexConfig::WestNorth;
  if (in[West] && in[North]) return VertexConfig::EastSouth;
  if (in[West] && in[South]) return VertexConfig::EastNorth;
  return VertexConfig::WestSouth;
}

// Exponent of a in the sigma argument and whether the parameter is inverted:
// sigma(a^2) for the +-1 vertices, sigma(a p) and sigma(a / p) otherwise.
struct WeightShape {
  int a_power;
  int param_power;
};
inline WeightShape weight_shape(VertexConfig c) {
  switch (c) {
    case VertexConfig::PlusOne:
    case VertexConfig::MinusOne:
      return {2, 0};
    case VertexConfig::WestNorth:
    case VertexConfig::EastSouth:
      return {1, 1};
    case VertexConfig::EastNorth:
    case VertexConfig::WestSouth:
      return {1, -1};
  }
  return {0, 0};
}

struct EdgeEnd {
  int vertex = -1;  // -1: boundary terminal
  int slot = -1;
  bool is_boundary() const { return vertex < 0; }
};

// Orientation `true` means the edge points from `from` towards `to`.
struct Edge {
  EdgeEnd from;
  EdgeEnd to;
  std::optional<bool> fixed;
  int external = -1;  // index among free boundary edges, -1 if not free
  std::string label;
};

struct Vertex {
  VertexKind kind = VertexKind::Tetravalent;
  std::array<int, 4> edges{-1, -1, -1, -1};
  Exponents param;  // over the graph's parameter space; unused for bivalent
  std::string label;
};

using IceState = std::vector<std::int8_t>;  // one orientation bit per edge

// Planar ice graph with vertices of degree 1 (boundary terminals), 2 or 4.
class IceGraph {
 public:
  explicit IceGraph(SpacePtr params) : params_(std::move(params)) {}

  const SpacePtr& params() const { return params_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int free_external_count() const { return free_external_; }

  int tetravalent_count() const {
    int k = 0;
    for (const auto& v : vertices_) k += v.kind == VertexKind::Tetravalent;
    return k;
  }
  int bivalent_count() const { return static_cast<int>(vertices_.size()) - tetravalent_count(); }

  int add_vertex(Exponents param, std::string label = {}) {
    if (param.size() != params_->size()) throw std::invalid_argument("IceGraph: parameter arity mismatch");
    vertices_.push_back({VertexKind::Tetravalent, {-1, -1, -1, -1}, std::move(param), std::move(label)});
    return static_cast<int>(vertices_.size()) - 1;
  }
  int add_bivalent(std::string label = {}) {
    vertices_.push_back({VertexKind::Bivalent, {-1, -1, -1, -1}, Exponents(params_->size(), 0), std::move(label)});
    return static_cast<int>(vertices_.size()) - 1;
  }

  // Internal edge; orientation true points from (u, su) to (v, sv).
  int connect(int u, int su, int v, int sv, std::string label = {}) {
    return push_edge({{u, su}, {v, sv}, std::nullopt, -1, std::move(label)});
  }

  // Boundary half-edge at (v, s). `inward` fixes its orientation relative to v;
  // nullopt makes it a free external edge (orientation supplied per boundary
  // assignment, true meaning inward).
  int boundary(int v, int s, std::optional<bool> inward, std::string label = {}) {
    Edge e{{}, {v, s}, inward, -1, std::move(label)};
    if (!inward) e.external = free_external_++;
    return push_edge(std::move(e));
  }

  // An edge with both ends on the boundary and a fixed orientation.
  int dangling(bool orientation, std::string label = {}) {
    return push_edge({{}, {}, orientation, -1, std::move(label)});
  }

  // Does edge e point into vertex v through slot s under orientation bit o?
  bool points_into(int e, int v, int s, bool o) const {
    const Edge& ed = edges_[e];
    if (ed.to.vertex == v && ed.to.slot == s) return o;
    return !o;
  }

  // Splits edge e with two bivalent vertices in series. Two sign-reversing
  // dots on one line cancel, so partition functions are unchanged.
  // The piece attached to the original `from` end keeps the fixed or free
  // orientation data.
  void insert_bivalent_pair(int e) {
    Edge old = edges_.at(e);
    if (old.to.is_boundary()) throw std::invalid_argument("insert_bivalent_pair: edge has no `to` vertex");
    int b1 = add_bivalent("dot");
    int b2 = add_bivalent("dot");
    vertices_[old.to.vertex].edges[old.to.slot] = -1;
    edges_[e].to = {b1, 0};
    vertices_[b1].edges[0] = e;
    connect(b1, 1, b2, 0, old.label + "'");
    connect(b2, 1, old.to.vertex, old.to.slot, old.label + "''");
  }

  // Puts one bivalent vertex on each edge at v, next to v. All four
  // half-edges at v reverse, which preserves the vertex weight.
  void dot_around(int v) {
    if (vertices_.at(v).kind != VertexKind::Tetravalent) throw std::invalid_argument("dot_around: not tetravalent");
    for (int s = 0; s < 4; ++s) {
      int e = vertices_[v].edges[s];
      int b = add_bivalent("dot");
      Edge& ed = edges_[e];
      if (ed.to.vertex == v && ed.to.slot == s) {
        ed.to = {b, 0};
      } else {
        ed.from = {b, 0};
      }
      vertices_[b].edges[0] = e;
      vertices_[v].edges[s] = -1;
      connect(b, 1, v, s, "dot");
    }
  }

 private:
  int push_edge(Edge e) {
    int id = static_cast<int>(edges_.size());
    for (const EdgeEnd* end : {&e.from, &e.to}) {
      if (end->is_boundary()) continue;
      Vertex& vx = vertices_.at(end->vertex);
      int deg = vx.kind == VertexKind::Tetravalent ? 4 : 2;
      if (end->slot < 0 || end->slot >= deg) throw std::invalid_argument("IceGraph: bad slot");
      if (vx.edges[end->slot] != -1) throw std::invalid_argument("IceGraph: slot already used");
      vx.edges[end->slot] = id;
    }
    edges_.push_back(std::move(e));
    return id;
  }

  SpacePtr params_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  int free_external_ = 0;
};

// Each graph parameter slot mapped to a monomial over a target space.
struct Binding {
  SpacePtr target;
  std::vector<Exponents> images;

  Exponents apply(const Exponents& p) const {
    Exponents out(target->size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0) continue;
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += p[i] * images[i][j];
    }
    return out;
  }

  // Graph slot names bound to the same-named target variables.
  static Binding identity(const SpacePtr& graph_params, const SpacePtr& target) {
    Binding b{target, {}};
    for (const auto& n : graph_params->names()) {
      Exponents e(target->size(), 0);
      e[target->index(n)] = 1;
      b.images.push_back(std::move(e));
    }
    return b;
  }
  Binding& bind(const SpacePtr& graph_params, const std::string& slot, Exponents image) {
    images.at(graph_params->index(slot)) = std::move(image);
    return *this;
  }
};

// Symbolic weights over Q[a^+-1, vars^+-1]; the target space must contain "a".
class SymbolicWeights {
 public:
  using Ring = QPoly;
  explicit SymbolicWeights(SpacePtr space) : space_(std::move(space)), a_(space_->index("a")) {}

  Ring one() const { return QPoly::constant(space_, 1); }
  Ring zero() const { return QPoly::zero(space_); }
  Ring constant(long c) const { return QPoly::constant(space_, c); }
  Ring sigma_of(const Exponents& e) const { return sigma_mono<Rational>(space_, e); }
  const SpacePtr& space() const { return space_; }
  const Ring& vertex(VertexConfig c, const Exponents& param) {
    WeightShape w = weight_shape(c);
    Exponents arg = mono_pow(param, w.param_power);
    arg[a_] += w.a_power;
    auto it = cache_.find(arg);
    if (it == cache_.end()) it = cache_.emplace(arg, sigma_mono<Rational>(space_, arg)).first;
    return it->second;
  }

 private:
  SpacePtr space_;
  std::size_t a_;
  std::map<Exponents, QPoly> cache_;
};

// Weights with some variables (typically a = w) replaced by values; the rest
// stay symbolic in `reduced`.
class SpecializedWeights {
 public:
  using Ring = WPoly;
  SpecializedWeights(SpacePtr full, SpacePtr reduced, VarAssignment values)
      : inner_(full), full_(std::move(full)), reduced_(std::move(reduced)), values_(std::move(values)) {}

  Ring one() const { return WPoly::constant(reduced_, 1); }
  Ring zero() const { return WPoly::zero(reduced_); }
  Ring constant(long c) const { return WPoly::constant(reduced_, c); }
  Ring sigma_of(const Exponents& e) const { return specialize(sigma_mono<Rational>(full_, e), reduced_, values_); }
  const SpacePtr& space() const { return full_; }
  const Ring& vertex(VertexConfig c, const Exponents& param) {
    auto key = std::make_pair(weight_shape(c).param_power * 8 + weight_shape(c).a_power, param);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, specialize(inner_.vertex(c, param), reduced_, values_)).first;
    return it->second;
  }

 private:
  SymbolicWeights inner_;
  SpacePtr full_, reduced_;
  VarAssignment values_;
  std::map<std::pair<int, Exponents>, WPoly> cache_;
};

// Exact numeric weights in Q(w); every variable of the space must be assigned.
class NumericWeights {
 public:
  using Ring = CycloRational;
  NumericWeights(SpacePtr space, const VarAssignment& values) : space_(std::move(space)) {
    for (const auto& n : space_->names()) {
      const CycloRational* v = values.find(n);
      if (!v) throw std::invalid_argument("NumericWeights: unassigned variable " + n);
      vals_.push_back(*v);
    }
  }

  Ring one() const { return CycloRational(1); }
  Ring zero() const { return CycloRational(0); }
  Ring constant(long c) const { return CycloRational(c); }
  Ring sigma_of(const Exponents& e) const { return sigma(monomial_value(e)); }
  const SpacePtr& space() const { return space_; }
  Ring vertex(VertexConfig c, const Exponents& param) const {
    WeightShape w = weight_shape(c);
    Exponents arg = mono_pow(param, w.param_power);
    if (auto a = space_->find("a")) arg[*a] += w.a_power;
    return sigma(monomial_value(arg));
  }
  CycloRational monomial_value(const Exponents& e) const {
    CycloRational x(1);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) x *= vals_[i].pow(e[i]);
    }
    return x;
  }

 private:
  SpacePtr space_;
  std::vector<CycloRational> vals_;
};

// Orientation constraints applied before the search: fixed edges, free
// external edges (by external index) and optional per-edge overrides.
struct StateConstraints {
  std::vector<bool> external;                 // inward flags for free boundary edges
  std::map<int, bool> overrides;              // edge id -> orientation bit
  bool free_externals = false;                // leave free boundary edges unconstrained
};

namespace detail {

class StateWalker {
 public:
  StateWalker(const IceGraph& g, const StateConstraints& c) : g_(g), dir_(g.edges().size(), -1) {
    const auto& edges = g.edges();
    if (!c.free_externals && static_cast<int>(c.external.size()) != g.free_external_count()) {
      throw std::invalid_argument("boundary assignment size mismatch");
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const Edge& ed = edges[e];
      if (ed.fixed) dir_[e] = *ed.fixed;
      if (ed.external >= 0 && !c.free_externals) dir_[e] = c.external[ed.external];
    }
    for (const auto& [e, o] : c.overrides) {
      if (dir_.at(e) >= 0 && dir_[e] != o) consistent_ = false;
      dir_[e] = o;
    }
  }

  template <class Acc, class Step, class Leaf>
  void run(const Acc& start, Step&& step, Leaf&& leaf) {
    if (!consistent_) return;
    for (std::size_t v = 0; v < g_.vertices().size(); ++v) {
      if (!feasible(static_cast<int>(v))) return;
    }
    visit(0, start, step, leaf);
  }

  const IceState& state() const { return dir_; }

 private:
  int degree(const Vertex& v) const { return v.kind == VertexKind::Tetravalent ? 4 : 2; }

  // Partial check: in-count and out-count must stay within limits.
  bool feasible(int v) const {
    const Vertex& vx = g_.vertices()[v];
    int in = 0, out = 0;
    for (int s = 0; s < degree(vx); ++s) {
      int e = vx.edges[s];
      if (e < 0) throw std::logic_error("IceGraph: vertex with unconnected slot");
      if (dir_[e] < 0) continue;
      (g_.points_into(e, v, s, dir_[e]) ? in : out)++;
    }
    if (vx.kind == VertexKind::Tetravalent) return in <= 2 && out <= 2;
    return in == 0 || out == 0;
  }

  template <class Acc, class Step, class Leaf>
  void visit(std::size_t v, const Acc& acc, Step& step, Leaf& leaf) {
    const auto& vs = g_.vertices();
    if (v == vs.size()) {
      leaf(dir_, acc);
      return;
    }
    const Vertex& vx = vs[v];
    const int deg = degree(vx);
    int free_slots[4];
    int nfree = 0;
    for (int s = 0; s < deg; ++s) {
      int e = vx.edges[s];
      if (dir_[e] >= 0) continue;
      bool seen = false;  // a self-loop occupies two slots
      for (int k = 0; k < nfree; ++k) seen = seen || vx.edges[free_slots[k]] == e;
      if (!seen) free_slots[nfree++] = s;
    }
    for (int mask = 0; mask < (1 << nfree); ++mask) {
      for (int k = 0; k < nfree; ++k) dir_[vx.edges[free_slots[k]]] = (mask >> k) & 1;
      std::array<bool, 4> in{};
      for (int s = 0; s < deg; ++s) {
        int e = vx.edges[s];
        in[s] = g_.points_into(e, static_cast<int>(v), s, dir_[e]);
      }
      bool ok = true;
      std::optional<VertexConfig> cfg;
      if (vx.kind == VertexKind::Tetravalent) {
        cfg = classify_vertex(in);
        ok = cfg.has_value();
      } else {
        ok = in[0] == in[1];
      }
      // Neighbours touched by the new assignments must remain satisfiable.
      for (int k = 0; ok && k < nfree; ++k) {
        const Edge& ed = g_.edges()[vx.edges[free_slots[k]]];
        for (const EdgeEnd* end : {&ed.from, &ed.to}) {
          if (!end->is_boundary() && end->vertex != static_cast<int>(v) && !feasible(end->vertex)) ok = false;
        }
      }
      if (ok) {
        if (cfg) {
          visit(v + 1, step(acc, static_cast<int>(v), *cfg), step, leaf);
        } else {
          visit(v + 1, acc, step, leaf);
        }
      }
    }
    for (int k = 0; k < nfree; ++k) dir_[vx.edges[free_slots[k]]] = -1;
  }

  const IceGraph& g_;
  IceState dir_;
  bool consistent_ = true;
};

}  // namespace detail

inline std::vector<IceState> graph_states(const IceGraph& g, const StateConstraints& c = {}) {
  std::vector<IceState> out;
  detail::StateWalker w(g, c);
  struct None {};
  w.run(None{}, [](const None& n, int, VertexConfig) { return n; },
        [&](const IceState& s, const None&) { out.push_back(s); });
  return out;
}

// Sum over ice states of the product of vertex weights.
template <class Weights>
typename Weights::Ring graph_partition_function(const IceGraph& g, const Binding& b, Weights& weights,
                                                const StateConstraints& c = {}) {
  using Ring = typename Weights::Ring;
  std::vector<Exponents> params;
  params.reserve(g.vertices().size());
  for (const auto& v : g.vertices()) params.push_back(b.apply(v.param));
  Ring total = weights.zero();
  detail::StateWalker w(g, c);
  w.run(
      weights.one(),
      [&](const Ring& acc, int v, VertexConfig cfg) { return Ring(acc * weights.vertex(cfg, params[v])); },
      [&](const IceState&, const Ring& acc) { total += acc; });
  return total;
}

// Partition function for every assignment of the free externals in one
// walk, keyed by the inward flags; assignments without states are absent.
template <class Weights>
std::map<std::vector<bool>, typename Weights::Ring> boundary_partition_functions(const IceGraph& g, const Binding& b,
                                                                                 Weights& weights) {
  using Ring = typename Weights::Ring;
  std::vector<Exponents> params;
  params.reserve(g.vertices().size());
  for (const auto& v : g.vertices()) params.push_back(b.apply(v.param));
  std::vector<int> ext_edge(g.free_external_count(), -1);
  for (std::size_t e = 0; e < g.edges().size(); ++e)
    if (g.edges()[e].external >= 0) ext_edge[g.edges()[e].external] = static_cast<int>(e);
  StateConstraints c;
  c.free_externals = true;
  std::map<std::vector<bool>, Ring> out;
  std::vector<bool> key(ext_edge.size());
  detail::StateWalker w(g, c);
  w.run(
      weights.one(),
      [&](const Ring& acc, int v, VertexConfig cfg) { return Ring(acc * weights.vertex(cfg, params[v])); },
      [&](const IceState& s, const Ring& acc) {
        for (std::size_t i = 0; i < ext_edge.size(); ++i) key[i] = s[ext_edge[i]] == 1;
        auto it = out.find(key);
        if (it == out.end()) {
          out.emplace(key, acc);
        } else {
          it->second += acc;
        }
      });
  return out;
}

// Weight of a single given state.
template <class Weights>
typename Weights::Ring state_weight(const IceGraph& g, const Binding& b, Weights& weights, const IceState& s) {
  using Ring = typename Weights::Ring;
  Ring acc = weights.one();
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    const Vertex& vx = g.vertices()[v];
    if (vx.kind != VertexKind::Tetravalent) continue;
    std::array<bool, 4> in{};
    for (int sl = 0; sl < 4; ++sl) in[sl] = g.points_into(vx.edges[sl], static_cast<int>(v), sl, s[vx.edges[sl]]);
    auto cfg = classify_vertex(in);
    if (!cfg) throw std::invalid_argument("state_weight: not an ice state");
    acc = acc * weights.vertex(*cfg, b.apply(vx.param));
  }
  return acc;
}

}  // namespace iceasm
