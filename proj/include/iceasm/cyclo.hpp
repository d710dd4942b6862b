#pragma once

#include <gmpxx.h>

#include <array>
#include <cctype>
#include <ostream>
#include <stdexcept>
#include <string>

namespace iceasm {

using Rational = mpq_class;
using BigInt = mpz_class;

class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Element re + om*w of Q(w), w = exp(i*pi/3). Reduction uses w^2 = w - 1.
class CycloRational {
 public:
  CycloRational() = default;
  CycloRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  CycloRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  CycloRational(Rational re, Rational om) : re_(std::move(re)), om_(std::move(om)) {
    re_.canonicalize();
    om_.canonicalize();
  }

  static CycloRational omega() { return {0, 1}; }

  // w^k for any integer k; w has order 6.
  static CycloRational omega_pow(long k) {
    static const std::array<CycloRational, 6> table = [] {
      std::array<CycloRational, 6> t;
      t[0] = CycloRational(1);
      for (int i = 1; i < 6; ++i) t[i] = t[i - 1] * omega();
      return t;
    }();
    long r = k % 6;
    if (r < 0) r += 6;
    return table[static_cast<std::size_t>(r)];
  }

  const Rational& re() const { return re_; }
  const Rational& om() const { return om_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(om_) == 0; }
  bool is_rational() const { return sgn(om_) == 0; }

  // N(re + om*w) = re^2 + re*om + om^2, never zero for a nonzero element.
  Rational norm() const { return re_ * re_ + re_ * om_ + om_ * om_; }

  // Complex conjugate: conj(w) = 1 - w.
  CycloRational conj() const { return {re_ + om_, -om_}; }

  CycloRational inverse() const {
    if (is_zero()) throw ArithmeticError("CycloRational: division by zero");
    Rational n = norm();
    CycloRational c = conj();
    return {c.re_ / n, c.om_ / n};
  }

  CycloRational operator-() const { return {-re_, -om_}; }

  CycloRational& operator+=(const CycloRational& o) {
    re_ += o.re_;
    om_ += o.om_;
    return *this;
  }
  CycloRational& operator-=(const CycloRational& o) {
    re_ -= o.re_;
    om_ -= o.om_;
    return *this;
  }
  CycloRational& operator*=(const CycloRational& o) {
    // (p + qw)(r + sw) = pr - qs + (ps + qr + qs) w
    Rational qs = om_ * o.om_;
    Rational new_om = re_ * o.om_ + om_ * o.re_ + qs;
    re_ = re_ * o.re_ - qs;
    om_ = std::move(new_om);
    return *this;
  }
  CycloRational& operator/=(const CycloRational& o) { return *this *= o.inverse(); }

  friend CycloRational operator+(CycloRational l, const CycloRational& r) { return l += r; }
  friend CycloRational operator-(CycloRational l, const CycloRational& r) { return l -= r; }
  friend CycloRational operator*(CycloRational l, const CycloRational& r) { return l *= r; }
  friend CycloRational operator/(CycloRational l, const CycloRational& r) { return l /= r; }

  friend bool operator==(const CycloRational& l, const CycloRational& r) {
    return l.re_ == r.re_ && l.om_ == r.om_;
  }
  friend bool operator!=(const CycloRational& l, const CycloRational& r) { return !(l == r); }

  CycloRational pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    CycloRational result(1), base = *this;
    while (k > 0) {
      if (k & 1) result *= base;
      base *= base;
      k >>= 1;
    }
    return result;
  }

  // ASCII form "p+q*w" (or "p-q*w"); a pure rational prints without the w part.
  std::string str() const {
    if (is_rational()) return re_.get_str();
    std::string s = sgn(re_) == 0 ? std::string() : re_.get_str();
    if (sgn(om_) < 0) {
      s += "-";
      Rational m = -om_;
      s += (m == 1 ? std::string() : m.get_str() + "*") + "w";
    } else {
      if (!s.empty()) s += "+";
      s += (om_ == 1 ? std::string() : om_.get_str() + "*") + "w";
    }
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const CycloRational& c) { return os << c.str(); }

 private:
  Rational re_{0};
  Rational om_{0};
};

inline bool is_zero(const CycloRational& c) { return c.is_zero(); }
inline std::string to_string(const CycloRational& c) { return c.str(); }

enum class CycloOp { add, mul, div };

inline CycloRational cyclo_arith(const CycloRational& lhs, const CycloRational& rhs, CycloOp op) {
  switch (op) {
    case CycloOp::add:
      return lhs + rhs;
    case CycloOp::mul:
      return lhs * rhs;
    case CycloOp::div:
      return lhs / rhs;
  }
  throw std::logic_error("cyclo_arith: bad op");
}

// sigma(x) = x - 1/x on nonzero field elements.
inline CycloRational sigma(const CycloRational& x) { return x - x.inverse(); }

// i*sqrt(3) = 2w - 1, the common vertex weight at a = w and unit parameters.
inline CycloRational i_sqrt3() { return {-1, 2}; }

// Parses the str() form: signed terms "p/q", "w", "p/q*w" or "p/qw".
inline CycloRational parse_cyclo(const std::string& text) {
  auto bad = [&]() { return std::invalid_argument("cannot parse value '" + text + "' (expected forms like 3/2, w, 1-2*w)"); };
  std::string s;
  bool gap = false;  // whitespace is allowed only next to an operator
  for (char c : text) {
    if (c == ' ') {
      gap = !s.empty();
      continue;
    }
    bool op = c == '+' || c == '-' || c == '*';
    if (gap && !op && s.back() != '+' && s.back() != '-' && s.back() != '*') throw bad();
    gap = false;
    s += c;
  }
  if (s.empty()) throw bad();
  CycloRational out(0);
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw bad();
    }
    std::size_t j = i;
    while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
    Rational coeff(1);
    if (j > i) {
      const std::string num = s.substr(i, j - i);
      if (num.front() == '/' || num.back() == '/' || num.find('/') != num.rfind('/')) throw bad();
      if (coeff.set_str(num, 10) != 0 || coeff.get_den() == 0) throw bad();
      coeff.canonicalize();
    }
    bool omega = false;
    if (j < s.size() && s[j] == '*') {
      if (j == i) throw bad();
      ++j;
      if (j >= s.size() || s[j] != 'w') throw bad();
    }
    if (j < s.size() && s[j] == 'w') {
      omega = true;
      ++j;
    }
    if (j == i) throw bad();
    coeff *= sign;
    out += omega ? CycloRational(0, coeff) : CycloRational(coeff);
    i = j;
  }
  return out;
}

}  // namespace iceasm
