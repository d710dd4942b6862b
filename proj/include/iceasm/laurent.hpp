#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "iceasm/cyclo.hpp"

namespace iceasm {

// Named variable slots shared by a family of polynomials. By convention the
// global weight parameter, when present symbolically, is slot 0 named "a".
class VarSpace {
 public:
  explicit VarSpace(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (names_[i] == names_[j]) throw std::invalid_argument("VarSpace: duplicate variable " + names_[i]);
      }
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  bool has_a() const { return !names_.empty() && names_[0] == "a"; }

  std::optional<std::size_t> find(const std::string& n) const {
    auto it = std::find(names_.begin(), names_.end(), n);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }
  std::size_t index(const std::string& n) const {
    auto i = find(n);
    if (!i) throw std::invalid_argument("VarSpace: unknown variable " + n);
    return *i;
  }

  friend bool operator==(const VarSpace& l, const VarSpace& r) { return l.names_ == r.names_; }

 private:
  std::vector<std::string> names_;
};

using SpacePtr = std::shared_ptr<const VarSpace>;

inline SpacePtr make_space(std::vector<std::string> names) {
  return std::make_shared<const VarSpace>(std::move(names));
}

inline bool same_space(const SpacePtr& l, const SpacePtr& r) { return l == r || *l == *r; }

// Exponent vector of fixed arity; doubles as a unit-coefficient monomial.
using Exponents = std::vector<int>;

inline Exponents mono_mul(const Exponents& l, const Exponents& r) {
  Exponents out(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) out[i] = l[i] + r.at(i);
  return out;
}
inline Exponents mono_inv(const Exponents& m) {
  Exponents out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = -m[i];
  return out;
}
inline Exponents mono_pow(const Exponents& m, int k) {
  Exponents out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = m[i] * k;
  return out;
}

// Builds a monomial from (name, exponent) pairs, e.g. mono(S, {{"a", -1}, {"x1", 1}}).
inline Exponents mono(const VarSpace& space, std::initializer_list<std::pair<std::string, int>> parts) {
  Exponents e(space.size(), 0);
  for (const auto& [n, k] : parts) e[space.index(n)] += k;
  return e;
}

struct HalfWidth {
  int width = 0;
  bool centered = false;
};

template <class C>
class LaurentPoly {
 public:
  using Coeff = C;
  using TermMap = std::map<Exponents, C>;

  explicit LaurentPoly(SpacePtr space) : space_(std::move(space)) {}

  static LaurentPoly zero(SpacePtr space) { return LaurentPoly(std::move(space)); }
  static LaurentPoly constant(SpacePtr space, const C& c) {
    LaurentPoly p(space);
    p.add_term(Exponents(p.arity(), 0), c);
    return p;
  }
  static LaurentPoly monomial(SpacePtr space, Exponents e, const C& c = C(1)) {
    if (e.size() != space->size()) throw std::invalid_argument("LaurentPoly: exponent arity mismatch");
    LaurentPoly p(std::move(space));
    p.add_term(std::move(e), c);
    return p;
  }
  static LaurentPoly variable(SpacePtr space, const std::string& name, int power = 1) {
    Exponents e(space->size(), 0);
    e[space->index(name)] = power;
    return monomial(std::move(space), std::move(e));
  }

  const SpacePtr& space() const { return space_; }
  std::size_t arity() const { return space_->size(); }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  void add_term(const Exponents& e, const C& c) {
    if (iceasm::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (iceasm::is_zero(it->second)) terms_.erase(it);
    }
  }

  LaurentPoly operator-() const {
    LaurentPoly out(space_);
    for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, -c);
    return out;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_space(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_space(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend LaurentPoly operator+(LaurentPoly l, const LaurentPoly& r) { return l += r; }
  friend LaurentPoly operator-(LaurentPoly l, const LaurentPoly& r) { return l -= r; }
  friend LaurentPoly operator*(const LaurentPoly& l, const LaurentPoly& r) {
    l.check_space(r);
    LaurentPoly out(l.space_);
    const std::size_t n = l.arity();
    Exponents e(n);
    for (const auto& [le, lc] : l.terms_) {
      for (const auto& [re, rc] : r.terms_) {
        for (std::size_t i = 0; i < n; ++i) e[i] = le[i] + re[i];
        out.add_term(e, lc * rc);
      }
    }
    return out;
  }
  friend LaurentPoly operator*(LaurentPoly l, const C& c) {
    if (iceasm::is_zero(c)) return LaurentPoly(l.space_);
    for (auto& [e, v] : l.terms_) v *= c;
    return l;
  }

  friend bool operator==(const LaurentPoly& l, const LaurentPoly& r) {
    return same_space(l.space_, r.space_) && l.terms_ == r.terms_;
  }
  friend bool operator!=(const LaurentPoly& l, const LaurentPoly& r) { return !(l == r); }

  LaurentPoly pow(unsigned k) const {
    LaurentPoly result = constant(space_, C(1));
    for (unsigned i = 0; i < k; ++i) result *= *this;
    return result;
  }

  int max_degree(std::size_t var) const {
    require_nonzero("max_degree");
    int m = terms_.begin()->first.at(var);
    for (const auto& [e, c] : terms_) m = std::max(m, e[var]);
    return m;
  }
  int min_degree(std::size_t var) const {
    require_nonzero("min_degree");
    int m = terms_.begin()->first.at(var);
    for (const auto& [e, c] : terms_) m = std::min(m, e[var]);
    return m;
  }

  // Even part collects terms whose exponent of `var` is even.
  std::pair<LaurentPoly, LaurentPoly> parity_split(std::size_t var) const {
    LaurentPoly even(space_), odd(space_);
    for (const auto& [e, c] : terms_) {
      auto& target = (e.at(var) % 2 == 0) ? even : odd;
      target.terms_.emplace_hint(target.terms_.end(), e, c);
    }
    return {std::move(even), std::move(odd)};
  }
  std::pair<LaurentPoly, LaurentPoly> parity_split(const std::string& var) const {
    return parity_split(space_->index(var));
  }

  HalfWidth half_width(std::size_t var) const {
    require_nonzero("half_width");
    int hi = max_degree(var), lo = min_degree(var);
    return {hi, lo == -hi};
  }
  HalfWidth half_width(const std::string& var) const { return half_width(space_->index(var)); }

  // Monomial substitution: source slot i becomes images[i], a monomial over `target`.
  LaurentPoly remap(const SpacePtr& target, const std::vector<Exponents>& images) const {
    if (images.size() != arity()) throw std::invalid_argument("remap: image count mismatch");
    LaurentPoly out(target);
    Exponents e(target->size());
    for (const auto& [se, c] : terms_) {
      std::fill(e.begin(), e.end(), 0);
      for (std::size_t i = 0; i < se.size(); ++i) {
        if (se[i] == 0) continue;
        const Exponents& img = images[i];
        for (std::size_t j = 0; j < e.size(); ++j) e[j] += se[i] * img.at(j);
      }
      out.add_term(e, c);
    }
    return out;
  }

  // Same-space substitution of a single variable by a monomial.
  LaurentPoly substitute(const std::string& var, const Exponents& image) const {
    std::vector<Exponents> images;
    for (std::size_t i = 0; i < arity(); ++i) {
      Exponents unit(arity(), 0);
      unit[i] = 1;
      images.push_back(std::move(unit));
    }
    images[space_->index(var)] = image;
    return remap(space_, images);
  }

  // Exchanges two variables.
  LaurentPoly swap_vars(const std::string& u, const std::string& v) const {
    std::vector<Exponents> images;
    for (std::size_t i = 0; i < arity(); ++i) {
      Exponents unit(arity(), 0);
      unit[i] = 1;
      images.push_back(std::move(unit));
    }
    std::swap(images[space_->index(u)], images[space_->index(v)]);
    return remap(space_, images);
  }

  // Textual dump: "coeff * a^e0 x1^e1 ..." terms joined by " + " in lexicographic
  // exponent order; non-rational coefficients are parenthesized.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) out += " + ";
      first = false;
      std::string cs = to_string(c);
      bool paren = cs.find_first_of("+-", 1) != std::string::npos && cs.find('w') != std::string::npos;
      out += paren ? "(" + cs + ")" : cs;
      bool any = false;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        out += any ? " " : " * ";
        any = true;
        out += space_->name(i) + "^" + std::to_string(e[i]);
      }
    }
    return out;
  }

 private:
  void check_space(const LaurentPoly& o) const {
    if (!same_space(space_, o.space_)) throw std::invalid_argument("LaurentPoly: variable registries differ");
  }
  void require_nonzero(const char* what) const {
    if (terms_.empty()) throw std::invalid_argument(std::string(what) + ": zero polynomial");
  }

  SpacePtr space_;
  TermMap terms_;
};

using QPoly = LaurentPoly<Rational>;
using WPoly = LaurentPoly<CycloRational>;

// sigma(m) = m - 1/m for an invertible (single-term) polynomial.
template <class C>
LaurentPoly<C> sigma(const LaurentPoly<C>& m) {
  if (!m.is_monomial()) throw std::invalid_argument("sigma: argument is not a monomial");
  const auto& [e, c] = *m.terms().begin();
  LaurentPoly<C> out = m;
  out.add_term(mono_inv(e), -(C(1) / c));
  return out;
}

// sigma of a unit-coefficient monomial, built directly.
template <class C>
LaurentPoly<C> sigma_mono(const SpacePtr& space, const Exponents& e) {
  LaurentPoly<C> out(space);
  out.add_term(e, C(1));
  out.add_term(mono_inv(e), C(-1));
  return out;
}

inline WPoly to_cyclo(const QPoly& p) {
  WPoly out(p.space());
  for (const auto& [e, c] : p.terms()) out.add_term(e, CycloRational(c));
  return out;
}

// Values assigned to named variables; every value must be invertible.
class VarAssignment {
 public:
  VarAssignment() = default;
  VarAssignment(std::initializer_list<std::pair<const std::string, CycloRational>> init) {
    for (const auto& [k, v] : init) set(k, v);
  }

  void set(const std::string& name, const CycloRational& v) {
    if (v.is_zero()) throw std::invalid_argument("VarAssignment: zero value for " + name);
    values_[name] = v;
  }
  const CycloRational* find(const std::string& name) const {
    auto it = values_.find(name);
    return it == values_.end() ? nullptr : &it->second;
  }
  const std::map<std::string, CycloRational>& values() const { return values_; }

 private:
  std::map<std::string, CycloRational> values_;
};

// Partial evaluation: variables present in `values` are replaced by their
// values, the rest move to same-named slots of `target`.
template <class C>
WPoly specialize(const LaurentPoly<C>& p, const SpacePtr& target, const VarAssignment& values) {
  const VarSpace& src = *p.space();
  std::vector<std::optional<std::size_t>> slot(src.size());
  std::vector<const CycloRational*> val(src.size(), nullptr);
  for (std::size_t i = 0; i < src.size(); ++i) {
    val[i] = values.find(src.name(i));
    if (!val[i]) {
      slot[i] = target->find(src.name(i));
      if (!slot[i]) throw std::invalid_argument("specialize: variable " + src.name(i) + " has no value and no target slot");
    }
  }
  // Cache powers of assigned values per slot.
  std::vector<std::map<int, CycloRational>> powers(src.size());
  auto power = [&](std::size_t i, int k) -> const CycloRational& {
    auto it = powers[i].find(k);
    if (it == powers[i].end()) it = powers[i].emplace(k, val[i]->pow(k)).first;
    return it->second;
  };
  WPoly out(target);
  Exponents e(target->size());
  for (const auto& [se, c] : p.terms()) {
    std::fill(e.begin(), e.end(), 0);
    CycloRational coeff{c};
    for (std::size_t i = 0; i < se.size(); ++i) {
      if (se[i] == 0) continue;
      if (val[i]) {
        coeff *= power(i, se[i]);
      } else {
        e[*slot[i]] += se[i];
      }
    }
    out.add_term(e, coeff);
  }
  return out;
}

// Replaces the symbolic global parameter (slot 0, "a") by w = exp(i*pi/3).
inline WPoly reduce_generic_a(const QPoly& p) {
  if (!p.space()->has_a()) throw std::invalid_argument("reduce_generic_a: polynomial has no a-slot");
  std::vector<std::string> rest(p.space()->names().begin() + 1, p.space()->names().end());
  VarAssignment at_omega{{"a", CycloRational::omega()}};
  return specialize(p, make_space(std::move(rest)), at_omega);
}

// Full evaluation; every variable must be assigned.
template <class C>
CycloRational eval(const LaurentPoly<C>& p, const VarAssignment& values) {
  static const SpacePtr empty = make_space({});
  for (const auto& n : p.space()->names()) {
    if (!values.find(n)) throw std::invalid_argument("eval: unassigned variable " + n);
  }
  WPoly r = specialize(p, empty, values);
  if (r.is_zero()) return CycloRational(0);
  return r.terms().begin()->second;
}

}  // namespace iceasm
