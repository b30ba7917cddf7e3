#pragma once

// Exact dense linear algebra over the rationals and prime fields.
//
// A Field is a runtime value carried by every Scalar and Matrix. Mixing
// fields throws FieldMismatch; nothing is ever coerced.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dorbit {

class FieldMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Field {
 public:
  Field() = default;

  static Field rationals() { return Field{}; }

  static Field prime(std::uint64_t p) {
    if (p < 2 || p >= (std::uint64_t{1} << 32)) {
      throw std::invalid_argument("prime field characteristic out of range: " + std::to_string(p));
    }
    for (std::uint64_t k = 2; k * k <= p; ++k) {
      if (p % k == 0) throw std::invalid_argument(std::to_string(p) + " is not prime");
    }
    Field f;
    f.p_ = p;
    return f;
  }

  /// Parses "q" or "fp:P".
  static Field parse(const std::string& spec) {
    if (spec == "q" || spec == "Q") return rationals();
    if (spec.rfind("fp:", 0) == 0) return prime(std::stoull(spec.substr(3)));
    throw std::invalid_argument("unknown field spec '" + spec + "' (expected q or fp:P)");
  }

  bool is_rational() const { return p_ == 0; }
  std::uint64_t characteristic() const { return p_; }
  std::string to_string() const { return p_ == 0 ? "q" : "fp:" + std::to_string(p_); }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint64_t p_ = 0;
};

inline void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) throw FieldMismatch("field mismatch: " + a.to_string() + " vs " + b.to_string());
}

namespace detail {

inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

inline std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mod_mul(r, a, p);
    a = mod_mul(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw std::domain_error("division by zero in prime field");
  return mod_pow(a, p - 2, p);
}

inline std::uint64_t reduce_mod(const mpz_class& z, std::uint64_t p) {
  mpz_class r = z % static_cast<unsigned long>(p);
  if (r < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

}  // namespace detail

/// An element of a Field. Rationals are kept canonical (lowest terms,
/// positive denominator); residues lie in [0, p).
class Scalar {
 public:
  Scalar() = default;

  Scalar(const Field& f, long v) : field_(f) {
    if (f.is_rational()) {
      q_ = v;
    } else {
      long m = v % static_cast<long>(f.characteristic());
      r_ = static_cast<std::uint64_t>(m < 0 ? m + static_cast<long>(f.characteristic()) : m);
    }
  }

  Scalar(const Field& f, const mpq_class& v) : field_(f) {
    if (f.is_rational()) {
      // copy num/den separately: mpq_set misbehaves on a negative denominator
      q_.get_num() = v.get_num();
      q_.get_den() = v.get_den();
      q_.canonicalize();
    } else {
      std::uint64_t p = f.characteristic();
      std::uint64_t num = detail::reduce_mod(v.get_num(), p);
      std::uint64_t den = detail::reduce_mod(v.get_den(), p);
      r_ = detail::mod_mul(num, detail::mod_inv(den, p), p);
    }
  }

  static Scalar residue(const Field& f, std::uint64_t r) {
    Scalar s;
    s.field_ = f;
    s.r_ = r % f.characteristic();
    return s;
  }

  /// Inverse of to_string: "p/q", "p", or "r mod p".
  static Scalar parse(const std::string& text, const Field& f) {
    auto pos = text.find(" mod ");
    if (pos != std::string::npos) {
      Field g = Field::prime(std::stoull(text.substr(pos + 5)));
      require_same_field(f, g);
      return Scalar(f, std::stol(text.substr(0, pos)));
    }
    if (!f.is_rational()) throw FieldMismatch("rational literal '" + text + "' for field " + f.to_string());
    mpq_class v(text);
    v.canonicalize();
    return Scalar(f, v);
  }

  const Field& field() const { return field_; }
  const mpq_class& rational() const { return q_; }
  std::uint64_t residue() const { return r_; }

  bool is_zero() const { return field_.is_rational() ? sgn(q_) == 0 : r_ == 0; }
  bool is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }

  std::string to_string() const {
    if (field_.is_rational()) return q_.get_str();
    return std::to_string(r_) + " mod " + std::to_string(field_.characteristic());
  }

  Scalar operator-() const {
    Scalar s = *this;
    if (field_.is_rational()) {
      s.q_ = -q_;
    } else if (r_ != 0) {
      s.r_ = field_.characteristic() - r_;
    }
    return s;
  }

  Scalar& operator+=(const Scalar& o) {
    require_same_field(field_, o.field_);
    if (field_.is_rational()) {
      q_ += o.q_;
    } else {
      r_ = (r_ + o.r_) % field_.characteristic();
    }
    return *this;
  }
  Scalar& operator-=(const Scalar& o) { return *this += -o; }
  Scalar& operator*=(const Scalar& o) {
    require_same_field(field_, o.field_);
    if (field_.is_rational()) {
      q_ *= o.q_;
    } else {
      r_ = detail::mod_mul(r_, o.r_, field_.characteristic());
    }
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    require_same_field(field_, o.field_);
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (field_.is_rational()) {
      q_ /= o.q_;
    } else {
      r_ = detail::mod_mul(r_, detail::mod_inv(o.r_, field_.characteristic()), field_.characteristic());
    }
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (!(a.field_ == b.field_)) return false;
    return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  Field field_;
  mpq_class q_;
  std::uint64_t r_ = 0;
};

using Vector = std::vector<Scalar>;

/// Dense row-major matrix. Storage is typed by field: rationals live in
/// `q_`, residues in `m_`; exactly one of them is populated.
class Matrix {
 public:
  Matrix() = default;

  Matrix(const Field& f, std::size_t rows, std::size_t cols) : field_(f), rows_(rows), cols_(cols) {
    if (f.is_rational()) {
      q_.assign(rows * cols, mpq_class(0));
    } else {
      m_.assign(rows * cols, 0);
    }
  }

  static Matrix zero(const Field& f, std::size_t rows, std::size_t cols) { return Matrix(f, rows, cols); }

  static Matrix identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set_int(i, i, 1);
    return m;
  }

  static Matrix from_ints(const Field& f, const std::vector<std::vector<long>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged matrix literal");
      for (std::size_t j = 0; j < c; ++j) m.set_int(i, j, rows[i][j]);
    }
    return m;
  }

  static Matrix column(std::span<const Scalar> v, const Field& f) {
    Matrix m(f, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar at(std::size_t i, std::size_t j) const {
    if (field_.is_rational()) return Scalar(field_, q_[i * cols_ + j]);
    return Scalar::residue(field_, m_[i * cols_ + j]);
  }

  void set(std::size_t i, std::size_t j, const Scalar& s) {
    require_same_field(field_, s.field());
    if (field_.is_rational()) {
      q_[i * cols_ + j] = s.rational();
    } else {
      m_[i * cols_ + j] = s.residue();
    }
  }

  void set_int(std::size_t i, std::size_t j, long v) { set(i, j, Scalar(field_, v)); }

  bool is_zero_at(std::size_t i, std::size_t j) const {
    return field_.is_rational() ? sgn(q_[i * cols_ + j]) == 0 : m_[i * cols_ + j] == 0;
  }

  bool is_zero() const {
    for (std::size_t k = 0; k < rows_ * cols_; ++k) {
      if (field_.is_rational() ? sgn(q_[k]) != 0 : m_[k] != 0) return false;
    }
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (field_.is_rational()) {
          t.q_[j * rows_ + i] = q_[i * cols_ + j];
        } else {
          t.m_[j * rows_ + i] = m_[i * cols_ + j];
        }
      }
    }
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    require_same_field(field_, o.field_);
    if (cols_ != o.rows_) {
      throw DimensionMismatch("matrix product " + shape() + " * " + o.shape());
    }
    Matrix r(field_, rows_, o.cols_);
    if (field_.is_rational()) {
      mpq_class tmp;
      for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
          const mpq_class& a = q_[i * cols_ + k];
          if (sgn(a) == 0) continue;
          for (std::size_t j = 0; j < o.cols_; ++j) {
            const mpq_class& b = o.q_[k * o.cols_ + j];
            if (sgn(b) == 0) continue;
            tmp = a * b;
            r.q_[i * o.cols_ + j] += tmp;
          }
        }
      }
    } else {
      const std::uint64_t p = field_.characteristic();
      for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
          std::uint64_t a = m_[i * cols_ + k];
          if (a == 0) continue;
          for (std::size_t j = 0; j < o.cols_; ++j) {
            std::uint64_t& c = r.m_[i * o.cols_ + j];
            c = (c + a * o.m_[k * o.cols_ + j]) % p;
          }
        }
      }
    }
    return r;
  }

  Vector operator*(std::span<const Scalar> v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix-vector product " + shape());
    Vector out(rows_, Scalar(field_, 0));
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!is_zero_at(i, j)) out[i] += at(i, j) * v[j];
      }
    }
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    if (field_.is_rational()) {
      for (std::size_t k = 0; k < q_.size(); ++k) q_[k] += o.q_[k];
    } else {
      for (std::size_t k = 0; k < m_.size(); ++k) m_[k] = (m_[k] + o.m_[k]) % field_.characteristic();
    }
    return *this;
  }

  Matrix& operator-=(const Matrix& o) { return *this += -o; }

  Matrix operator-() const {
    Matrix r = *this;
    if (field_.is_rational()) {
      for (auto& x : r.q_) x = -x;
    } else {
      for (auto& x : r.m_) x = x ? field_.characteristic() - x : 0;
    }
    return r;
  }

  Matrix scaled(const Scalar& s) const {
    Matrix r = *this;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!is_zero_at(i, j)) r.set(i, j, at(i, j) * s);
      }
    }
    return r;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.q_ == b.q_ && a.m_ == b.m_;
  }

  /// Copies `src` into this matrix with its top-left corner at (r0, c0).
  void paste(const Matrix& src, std::size_t r0, std::size_t c0) {
    require_same_field(field_, src.field_);
    if (r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_) throw DimensionMismatch("paste out of bounds");
    for (std::size_t i = 0; i < src.rows_; ++i) {
      for (std::size_t j = 0; j < src.cols_; ++j) {
        if (field_.is_rational()) {
          q_[(r0 + i) * cols_ + c0 + j] = src.q_[i * src.cols_ + j];
        } else {
          m_[(r0 + i) * cols_ + c0 + j] = src.m_[i * src.cols_ + j];
        }
      }
    }
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of bounds");
    Matrix b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = 0; j < nc; ++j) {
        if (field_.is_rational()) {
          b.q_[i * nc + j] = q_[(r0 + i) * cols_ + c0 + j];
        } else {
          b.m_[i * nc + j] = m_[(r0 + i) * cols_ + c0 + j];
        }
      }
    }
    return b;
  }

  Matrix columns(std::span<const std::size_t> idx) const {
    Matrix b(field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < idx.size(); ++j) b.set(i, j, at(i, idx[j]));
    }
    return b;
  }

  Vector column_vector(std::size_t j) const {
    Vector v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  // Typed storage access for the elimination kernels.
  std::vector<mpq_class>& rational_data() { return q_; }
  const std::vector<mpq_class>& rational_data() const { return q_; }
  std::vector<std::uint64_t>& residue_data() { return m_; }
  const std::vector<std::uint64_t>& residue_data() const { return m_; }

 private:
  void require_same_shape(const Matrix& o) const {
    require_same_field(field_, o.field_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("shape " + shape() + " vs " + o.shape());
  }

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpq_class> q_;
  std::vector<std::uint64_t> m_;
};

/// Stacks matrices vertically; all must share column count and field.
inline Matrix vstack(std::span<const Matrix> parts, const Field& f, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw DimensionMismatch("vstack column mismatch");
    rows += p.rows();
  }
  Matrix out(f, rows, cols);
  std::size_t r = 0;
  for (const auto& p : parts) {
    out.paste(p, r, 0);
    r += p.rows();
  }
  return out;
}

inline Matrix hstack(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack row mismatch");
  Matrix out(a.field(), a.rows(), a.cols() + b.cols());
  out.paste(a, 0, 0);
  out.paste(b, 0, a.cols());
  return out;
}

inline Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  Matrix out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  out.paste(a, 0, 0);
  out.paste(b, a.rows(), a.cols());
  return out;
}

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

namespace detail {

struct RationalOps {
  using T = mpq_class;
  static bool zero(const T& x) { return sgn(x) == 0; }
  static void normalize_row(T* row, std::size_t from, std::size_t n) {
    T inv = 1 / row[from];
    for (std::size_t j = from; j < n; ++j) {
      if (sgn(row[j]) != 0) row[j] *= inv;
    }
  }
  // row -= f * prow over the listed columns
  static void axpy(T* row, const T* prow, const std::vector<std::size_t>& nz, T& tmp) {
    T f = row[nz.front()];
    for (std::size_t j : nz) {
      tmp = f * prow[j];
      row[j] -= tmp;
    }
  }
};

struct ResidueOps {
  using T = std::uint64_t;
  std::uint64_t p;
  bool zero(const T& x) const { return x == 0; }
  void normalize_row(T* row, std::size_t from, std::size_t n) const {
    T inv = mod_inv(row[from], p);
    for (std::size_t j = from; j < n; ++j) row[j] = mod_mul(row[j], inv, p);
  }
  void axpy(T* row, const T* prow, const std::vector<std::size_t>& nz, T&) const {
    T f = row[nz.front()];
    for (std::size_t j : nz) row[j] = (row[j] + (p - mod_mul(f, prow[j], p))) % p;
  }
};

// Gauss-Jordan with the first nonzero entry of each column as pivot.
// Row operations only touch the nonzero columns of the pivot row.
template <class Ops>
std::vector<std::size_t> gauss_jordan(std::vector<typename Ops::T>& a, std::size_t rows, std::size_t cols,
                                      const Ops& ops, std::size_t col_limit) {
  using T = typename Ops::T;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> nz;
  T tmp{};
  std::size_t rank = 0;
  for (std::size_t c = 0; c < col_limit && rank < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (!ops.zero(a[r * cols + c])) {
        piv = r;
        break;
      }
    }
    if (piv == rows) continue;
    if (piv != rank) {
      std::swap_ranges(a.begin() + static_cast<long>(piv * cols), a.begin() + static_cast<long>((piv + 1) * cols),
                       a.begin() + static_cast<long>(rank * cols));
    }
    T* prow = &a[rank * cols];
    ops.normalize_row(prow, c, cols);
    nz.clear();
    for (std::size_t j = c; j < cols; ++j) {
      if (!ops.zero(prow[j])) nz.push_back(j);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      T* row = &a[r * cols];
      if (ops.zero(row[c])) continue;
      ops.axpy(row, prow, nz, tmp);
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

inline std::vector<std::size_t> gauss_jordan_in_place(Matrix& m, std::size_t col_limit) {
  if (m.field().is_rational()) {
    return gauss_jordan(m.rational_data(), m.rows(), m.cols(), RationalOps{}, col_limit);
  }
  return gauss_jordan(m.residue_data(), m.rows(), m.cols(), ResidueOps{m.field().characteristic()}, col_limit);
}

}  // namespace detail

inline Echelon rref(Matrix m) {
  auto piv = detail::gauss_jordan_in_place(m, m.cols());
  return Echelon{std::move(m), std::move(piv)};
}

inline std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  return rref(m).pivots.size();
}

/// Basis of the right null space. Each vector has a 1 in one free column,
/// zeros in the other free columns, and is then scaled so that its first
/// nonzero entry is 1. The order follows the free columns left to right.
inline std::vector<Vector> kernel_basis(const Matrix& m) {
  const Field& f = m.field();
  std::vector<Vector> basis;
  if (m.cols() == 0) return basis;
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), Scalar(f, 0));
    v[free] = Scalar(f, 1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      if (!e.reduced.is_zero_at(r, free)) v[e.pivots[r]] = -e.reduced.at(r, free);
    }
    auto lead = std::find_if(v.begin(), v.end(), [](const Scalar& s) { return !s.is_zero(); });
    if (!lead->is_one()) {
      Scalar inv = Scalar(f, 1) / *lead;
      for (auto& s : v) {
        if (!s.is_zero()) s *= inv;
      }
    }
    basis.push_back(std::move(v));
  }
#ifdef DORBIT_CHECKED
  if (basis.size() + e.pivots.size() != m.cols()) throw std::logic_error("rank-nullity violated");
#endif
  return basis;
}

/// The image of a rational matrix in F_p, or nullopt if some denominator is
/// divisible by p.
inline std::optional<Matrix> reduce_mod(const Matrix& m, std::uint64_t p) {
  if (!m.field().is_rational()) throw std::invalid_argument("reduce_mod needs a rational matrix");
  Field fp = Field::prime(p);
  Matrix out(fp, m.rows(), m.cols());
  mpz_class pz(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m.is_zero_at(i, j)) continue;
      const mpq_class& v = m.rational_data()[i * m.cols() + j];
      if (mpz_divisible_p(v.get_den().get_mpz_t(), pz.get_mpz_t())) return std::nullopt;
      out.set(i, j, Scalar(fp, v));
    }
  }
  return out;
}

inline std::size_t nullity(const Matrix& m) { return m.cols() - rank(m); }

/// One solution of m x = b (free variables set to zero), or nullopt.
inline std::optional<Vector> solve(const Matrix& m, std::span<const Scalar> b) {
  if (b.size() != m.rows()) {
    throw DimensionMismatch("solve: right-hand side has " + std::to_string(b.size()) + " entries, matrix is " +
                            m.shape());
  }
  const Field& f = m.field();
  Matrix aug(f, m.rows(), m.cols() + 1);
  aug.paste(m, 0, 0);
  for (std::size_t i = 0; i < b.size(); ++i) aug.set(i, m.cols(), b[i]);
  auto piv = detail::gauss_jordan_in_place(aug, m.cols());
  for (std::size_t r = piv.size(); r < m.rows(); ++r) {
    if (!aug.is_zero_at(r, m.cols())) return std::nullopt;
  }
  Vector x(m.cols(), Scalar(f, 0));
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(r, m.cols());
  return x;
}

/// Solves m X = b column by column; nullopt if any column is inconsistent.
inline std::optional<Matrix> solve_matrix(const Matrix& m, const Matrix& b) {
  if (b.rows() != m.rows()) throw DimensionMismatch("solve_matrix shape mismatch");
  const Field& f = m.field();
  Matrix aug = hstack(m, b);
  auto piv = detail::gauss_jordan_in_place(aug, m.cols());
  for (std::size_t r = piv.size(); r < m.rows(); ++r) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (!aug.is_zero_at(r, m.cols() + j)) return std::nullopt;
    }
  }
  Matrix x(f, m.cols(), b.cols());
  for (std::size_t r = 0; r < piv.size(); ++r) {
    for (std::size_t j = 0; j < b.cols(); ++j) x.set(piv[r], j, aug.at(r, m.cols() + j));
  }
  return x;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  if (rank(m) != m.rows()) return std::nullopt;
  return solve_matrix(m, Matrix::identity(m.field(), m.rows()));
}

inline bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

/// Columns of the result form a basis of the column space of m, chosen
/// among m's own columns (the pivot columns).
inline Matrix column_space_basis(const Matrix& m) {
  if (m.empty()) return Matrix(m.field(), m.rows(), 0);
  Echelon e = rref(m);
  return m.columns(e.pivots);
}

/// Standard basis positions that complement the column space of `sub`
/// inside k^n: the non-pivot rows of the echelon form of sub^T.
inline std::vector<std::size_t> echelon_complement(const Matrix& sub) {
  std::size_t n = sub.rows();
  std::vector<bool> taken(n, false);
  if (sub.cols() > 0) {
    for (auto c : rref(sub.transpose()).pivots) taken[c] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!taken[i]) out.push_back(i);
  }
  return out;
}

}  // namespace dorbit
