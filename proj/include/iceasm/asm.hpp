#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace iceasm {

class InvalidAsm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Square matrix over {-1, 0, 1}. Public indices are 1-based (row i, column j);
// storage is row-major and 0-based. A SignMatrix need not be an ASM.
class SignMatrix {
 public:
  SignMatrix() = default;
  explicit SignMatrix(int n) : n_(n), cells_(static_cast<std::size_t>(n) * n, 0) {}

  int size() const { return n_; }
  int at(int i, int j) const { return cells_[idx(i, j)]; }
  void set(int i, int j, int v) { cells_[idx(i, j)] = static_cast<std::int8_t>(v); }
  const std::vector<std::int8_t>& cells() const { return cells_; }

  std::vector<std::vector<int>> rows() const {
    std::vector<std::vector<int>> out(n_, std::vector<int>(n_));
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j) out[i - 1][j - 1] = at(i, j);
    return out;
  }

  friend bool operator==(const SignMatrix& l, const SignMatrix& r) { return l.n_ == r.n_ && l.cells_ == r.cells_; }
  friend bool operator!=(const SignMatrix& l, const SignMatrix& r) { return !(l == r); }
  friend bool operator<(const SignMatrix& l, const SignMatrix& r) {
    return l.n_ != r.n_ ? l.n_ < r.n_ : l.cells_ < r.cells_;
  }

  std::string str() const {
    std::ostringstream os;
    for (int i = 1; i <= n_; ++i) {
      for (int j = 1; j <= n_; ++j) os << (j > 1 ? " " : "") << at(i, j);
      os << "\n";
    }
    return os.str();
  }

 private:
  std::size_t idx(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_) throw std::out_of_range("SignMatrix index");
    return static_cast<std::size_t>(i - 1) * n_ + (j - 1);
  }

  int n_ = 0;
  std::vector<std::int8_t> cells_;
};

// A SignMatrix whose rows and columns have partial sums in {0, 1} ending at 1.
class Asm {
 public:
  int size() const { return m_.size(); }
  int at(int i, int j) const { return m_.at(i, j); }
  const SignMatrix& matrix() const { return m_; }
  std::string str() const { return m_.str(); }

  friend bool operator==(const Asm& l, const Asm& r) { return l.m_ == r.m_; }
  friend bool operator!=(const Asm& l, const Asm& r) { return !(l == r); }
  friend bool operator<(const Asm& l, const Asm& r) { return l.m_ < r.m_; }

  friend Asm validate(const SignMatrix& m);
  // Skips validation; for generators whose output is valid by construction.
  static Asm trusted(SignMatrix m) {
    Asm a;
    a.m_ = std::move(m);
    return a;
  }

 private:
  SignMatrix m_;
};

inline Asm validate(const SignMatrix& m) {
  const int n = m.size();
  if (n < 1) throw InvalidAsm("empty matrix");
  for (int i = 1; i <= n; ++i) {
    int row = 0, col = 0;
    for (int j = 1; j <= n; ++j) {
      row += m.at(i, j);
      col += m.at(j, i);
      if (row < 0 || row > 1) throw InvalidAsm("row " + std::to_string(i) + ": partial sum leaves {0,1}");
      if (col < 0 || col > 1) throw InvalidAsm("column " + std::to_string(i) + ": partial sum leaves {0,1}");
    }
    if (row != 1) throw InvalidAsm("row " + std::to_string(i) + ": sum is not 1");
    if (col != 1) throw InvalidAsm("column " + std::to_string(i) + ": sum is not 1");
  }
  Asm a;
  a.m_ = m;
  return a;
}

inline Asm validate(const std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(rows.size());
  SignMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw InvalidAsm("matrix is not square");
    for (int j = 0; j < n; ++j) {
      int v = rows[i][j];
      if (v < -1 || v > 1) {
        throw InvalidAsm("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is not in {-1,0,1}");
      }
      m.set(i + 1, j + 1, v);
    }
  }
  return validate(m);
}

inline bool is_asm(const SignMatrix& m) {
  try {
    validate(m);
    return true;
  } catch (const InvalidAsm&) {
    return false;
  }
}

// Output (i, j) = input (j, n+1-i).
inline SignMatrix quarter_rotate(const SignMatrix& m) {
  const int n = m.size();
  SignMatrix out(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) out.set(i, j, m.at(j, n + 1 - i));
  return out;
}
inline SignMatrix quarter_rotate(const Asm& m) { return quarter_rotate(m.matrix()); }

enum class CenterClass { Neg, Pos, Other };

inline const char* to_string(CenterClass c) {
  switch (c) {
    case CenterClass::Neg:
      return "neg";
    case CenterClass::Pos:
      return "pos";
    case CenterClass::Other:
      return "other";
  }
  return "?";
}

struct CenterPattern {
  int cc = 0, cd = 0, dc = 0, dd = 0;  // M(c,c), M(c,c+1), M(c+1,c), M(c+1,c+1), c = n/2
  CenterClass kind = CenterClass::Other;
};

inline CenterPattern center_pattern(const SignMatrix& m) {
  const int n = m.size();
  if (n % 4 != 2) throw std::invalid_argument("center_pattern: size must be 4N+2, got " + std::to_string(n));
  const int c = n / 2;
  CenterPattern p{m.at(c, c), m.at(c, c + 1), m.at(c + 1, c), m.at(c + 1, c + 1), CenterClass::Other};
  if (p.cc == 0 && p.cd == -1 && p.dc == -1 && p.dd == 0) p.kind = CenterClass::Neg;
  if (p.cc == 1 && p.cd == 0 && p.dc == 0 && p.dd == 1) p.kind = CenterClass::Pos;
  return p;
}
inline CenterPattern center_pattern(const Asm& m) { return center_pattern(m.matrix()); }

inline bool is_central_cell(int n, int i, int j) {
  if (n % 4 != 2) return false;
  const int c = n / 2;
  return (i == c || i == c + 1) && (j == c || j == c + 1);
}

struct Symmetries {
  bool is_ht = false;
  bool is_qt = false;
  std::optional<CenterPattern> qqt;  // set iff n = 4N+2 and the matrix is a qQTASM
};

inline Symmetries classify_symmetries(const Asm& a) {
  const SignMatrix& m = a.matrix();
  const int n = m.size();
  Symmetries s;
  s.is_ht = true;
  s.is_qt = true;
  bool outer_qt = true;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (m.at(n + 1 - i, n + 1 - j) != m.at(i, j)) s.is_ht = false;
      if (m.at(j, n + 1 - i) != m.at(i, j)) {
        s.is_qt = false;
        if (!is_central_cell(n, i, j)) outer_qt = false;
      }
    }
  }
  if (n % 4 == 2 && outer_qt) {
    CenterPattern p = center_pattern(m);
    if (p.kind != CenterClass::Other) s.qqt = p;
  }
  return s;
}

// Orientation of every edge of the n x n grid, grid row i counted from the
// bottom and column j from the left (matching matrix indices).
//   horiz_west[i][j]: edge between columns j and j+1 of row i (j = 0..n) points West.
//   vert_north[i][j]: edge between rows i and i+1 of column j (i = 0..n) points North.
struct FullIceState {
  int n = 0;
  std::vector<std::vector<bool>> horiz_west;  // [1..n][0..n], row 0 unused
  std::vector<std::vector<bool>> vert_north;  // [0..n][1..n], column 0 unused

  friend bool operator==(const FullIceState&, const FullIceState&) = default;
};

inline FullIceState ice_orientation(const Asm& a) {
  const int n = a.size();
  FullIceState s;
  s.n = n;
  s.horiz_west.assign(n + 1, std::vector<bool>(n + 1, false));
  s.vert_north.assign(n + 1, std::vector<bool>(n + 1, false));
  for (int i = 1; i <= n; ++i) {
    int sum = 0;
    for (int j = 0; j <= n; ++j) {
      if (j > 0) sum += a.at(i, j);
      s.horiz_west[i][j] = (sum == 1);
    }
  }
  for (int j = 1; j <= n; ++j) {
    int sum = 0;
    for (int i = 0; i <= n; ++i) {
      if (i > 0) sum += a.at(i, j);
      s.vert_north[i][j] = (sum == 1);
    }
  }
  return s;
}

inline Asm asm_from_ice(const FullIceState& s) {
  const int n = s.n;
  if (n < 1 || static_cast<int>(s.horiz_west.size()) != n + 1 || static_cast<int>(s.vert_north.size()) != n + 1) {
    throw InvalidAsm("asm_from_ice: malformed state");
  }
  for (int i = 1; i <= n; ++i) {
    if (s.horiz_west[i][0] || !s.horiz_west[i][n]) throw InvalidAsm("asm_from_ice: horizontal boundary not inward");
  }
  for (int j = 1; j <= n; ++j) {
    if (s.vert_north[0][j] || !s.vert_north[n][j]) throw InvalidAsm("asm_from_ice: vertical boundary not outward");
  }
  SignMatrix m(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      bool w_in = !s.horiz_west[i][j - 1];  // west edge points East, into the vertex
      bool e_in = s.horiz_west[i][j];
      bool s_in = s.vert_north[i - 1][j];
      bool n_in = !s.vert_north[i][j];
      int ins = w_in + e_in + s_in + n_in;
      if (ins != 2) throw InvalidAsm("asm_from_ice: vertex (" + std::to_string(i) + "," + std::to_string(j) + ") is not 2-in 2-out");
      int h = static_cast<int>(s.horiz_west[i][j]) - static_cast<int>(s.horiz_west[i][j - 1]);
      int v = static_cast<int>(s.vert_north[i][j]) - static_cast<int>(s.vert_north[i - 1][j]);
      if (h != v) throw InvalidAsm("asm_from_ice: inconsistent vertex");
      m.set(i, j, h);
    }
  }
  return validate(m);
}

// Whitespace-separated rows, one row per line.
inline Asm parse_asm_text(const std::string& text) {
  std::vector<std::vector<int>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<int> row;
    int v;
    while (ls >> v) row.push_back(v);
    if (!ls.eof()) throw InvalidAsm("parse error in line: " + line);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return validate(rows);
}

}  // namespace iceasm
