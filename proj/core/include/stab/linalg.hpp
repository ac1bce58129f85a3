#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace stab {

/// Raised when matrix or complex shapes do not fit together.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a constructed object fails its own validation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Scalar = std::uint32_t;

/// Arithmetic in the prime field F_p.
class Field {
 public:
  explicit Field(std::uint32_t p = 2);

  std::uint32_t prime() const { return p_; }
  Scalar reduce(long long v) const;
  Scalar add(Scalar a, Scalar b) const { return (a + b) % p_; }
  Scalar sub(Scalar a, Scalar b) const { return (a + p_ - b) % p_; }
  Scalar mul(Scalar a, Scalar b) const {
    return static_cast<Scalar>((std::uint64_t{a} * b) % p_);
  }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar inv(Scalar a) const;
  /// (-1)^e as a field element.
  Scalar sign(long long e) const { return (e % 2 == 0) ? 1 : neg(1); }

  bool operator==(const Field& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t p);

/// Dense row-major matrix over F_p.
class Matrix {
 public:
  Matrix() : p_(2) {}
  Matrix(std::uint32_t p, std::size_t rows, std::size_t cols);

  static Matrix zero(std::uint32_t p, std::size_t rows, std::size_t cols) {
    return Matrix(p, rows, cols);
  }
  static Matrix identity(std::uint32_t p, std::size_t n);
  static Matrix scalar(std::uint32_t p, std::size_t n, long long c);
  static Matrix from_rows(std::uint32_t p,
                          const std::vector<std::vector<long long>>& rows);
  /// Build from row-major entries; `entries.size()` must equal rows*cols.
  static Matrix from_entries(std::uint32_t p, std::size_t rows,
                             std::size_t cols,
                             const std::vector<long long>& entries);

  std::uint32_t prime() const { return p_; }
  Field field() const { return Field(p_); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, long long v);
  /// Add v to entry (r, c).
  void accumulate(std::size_t r, std::size_t c, long long v);
  const std::vector<Scalar>& entries() const { return data_; }
  const Scalar* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  Matrix scaled(long long c) const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const;
  bool is_zero() const;
  bool is_identity() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr,
               std::size_t nc) const;
  /// Write `m` into this matrix with its top-left corner at (r0, c0).
  void paste(std::size_t r0, std::size_t c0, const Matrix& m);
  Matrix column(std::size_t c) const { return block(0, c, rows_, 1); }

  static Matrix hstack(const std::vector<Matrix>& parts);
  static Matrix vstack(const std::vector<Matrix>& parts);
  static Matrix block_diag(const std::vector<Matrix>& parts);
  /// Kronecker product: (a ⊗ b)(i*b.rows + k, j*b.cols + l) = a(i,j) b(k,l).
  static Matrix kron(const Matrix& a, const Matrix& b);

  std::string to_string() const;

 private:
  void check_same_shape(const Matrix& o, const char* op) const;

  std::uint32_t p_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Reduced row echelon form with the leftmost-pivot rule.
struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

RowEchelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Basis of {v : m v = 0} as a list of column vectors (cols x 1 matrices),
/// one per free column in increasing order, with a 1 at that free column.
std::vector<Matrix> kernel_basis(const Matrix& m);
/// The kernel basis assembled as the columns of a single matrix.
Matrix kernel_matrix(const Matrix& m);
/// Rows spanning the cokernel: a full-row-rank Q with ker Q = im m.
Matrix cokernel_projection(const Matrix& m);

/// One solution X of a X = b, if any.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
/// One solution X of X a = b, if any.
std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b);
/// A right inverse of a full-row-rank matrix.
Matrix right_inverse(const Matrix& a);
/// A left inverse of a full-column-rank matrix.
Matrix left_inverse(const Matrix& a);
/// Inverse of a square invertible matrix.
Matrix inverse(const Matrix& a);

/// A system of matrix equations  sum_k  A_k · H_{u_k} · B_k  =  C,
/// solved jointly for the unknown matrices H_u. Sharing an unknown index
/// across equations identifies those unknowns.
class LinearSystem {
 public:
  explicit LinearSystem(std::uint32_t p) : p_(p) {}

  /// Register an unknown matrix of the given shape, returning its index.
  std::size_t add_unknown(std::size_t rows, std::size_t cols);

  struct Term {
    Matrix left;
    std::size_t unknown;
    Matrix right;
  };

  /// Add the equation sum(terms) = rhs.
  void add_equation(const std::vector<Term>& terms, const Matrix& rhs);

  std::size_t unknown_count() const { return shapes_.size(); }
  std::size_t variable_count() const { return total_; }

  /// One exact solution with free variables set to zero, or nullopt.
  std::optional<std::vector<Matrix>> solve() const;

  /// The full affine solution set: particular solution plus a basis of the
  /// homogeneous solutions.
  struct SolutionSpace {
    std::vector<Matrix> particular;
    std::vector<std::vector<Matrix>> homogeneous;
  };
  std::optional<SolutionSpace> solution_space() const;

  /// Check a candidate assignment against every equation exactly.
  bool satisfied_by(const std::vector<Matrix>& values) const;

 private:
  struct Equation {
    std::vector<Term> terms;
    Matrix rhs;
  };
  Matrix assemble(Matrix& rhs) const;
  std::vector<Matrix> unpack(const std::vector<Scalar>& flat) const;

  std::uint32_t p_;
  std::vector<std::pair<std::size_t, std::size_t>> shapes_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
  std::vector<Equation> equations_;
};

/// Random element of an affine solution space.
std::vector<Matrix> sample(const LinearSystem::SolutionSpace& space,
                           std::mt19937_64& rng);

Matrix random_matrix(std::uint32_t p, std::size_t rows, std::size_t cols,
                     std::mt19937_64& rng);

}  // namespace stab
