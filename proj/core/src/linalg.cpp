#include "stab/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace stab {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Field::Field(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) {
    throw std::invalid_argument("field characteristic " + std::to_string(p) +
                                " is not prime");
  }
}

Scalar Field::reduce(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Scalar>(r);
}

Scalar Field::inv(Scalar a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero in F_p");
  // Fermat: a^(p-2).
  std::uint64_t result = 1, base = a % p_;
  std::uint32_t e = p_ - 2;
  while (e > 0) {
    if (e & 1u) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<Scalar>(result);
}

// ---------------------------------------------------------------------------

Matrix::Matrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(std::uint32_t p, std::size_t n) {
  return scalar(p, n, 1);
}

Matrix Matrix::scalar(std::uint32_t p, std::size_t n, long long c) {
  Matrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, c);
  return m;
}

Matrix Matrix::from_rows(std::uint32_t p,
                         const std::vector<std::vector<long long>>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows.front().size();
  Matrix m(p, rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc) throw ShapeError("ragged matrix rows");
    for (std::size_t c = 0; c < nc; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

Matrix Matrix::from_entries(std::uint32_t p, std::size_t rows, std::size_t cols,
                            const std::vector<long long>& entries) {
  if (entries.size() != rows * cols) {
    throw ShapeError("expected " + std::to_string(rows * cols) +
                     " matrix entries (" + std::to_string(rows) + "x" +
                     std::to_string(cols) + "), got " +
                     std::to_string(entries.size()));
  }
  Matrix m(p, rows, cols);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    m.data_[i] = Field(p).reduce(entries[i]);
  }
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, long long v) {
  long long x = v % static_cast<long long>(p_);
  if (x < 0) x += p_;
  data_[r * cols_ + c] = static_cast<Scalar>(x);
}

void Matrix::accumulate(std::size_t r, std::size_t c, long long v) {
  long long x = v % static_cast<long long>(p_);
  if (x < 0) x += p_;
  Scalar& e = data_[r * cols_ + c];
  e = static_cast<Scalar>((e + x) % p_);
}

void Matrix::check_same_shape(const Matrix& o, const char* op) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_) {
    throw ShapeError(std::string("matrix ") + op + ": shape " +
                     std::to_string(rows_) + "x" + std::to_string(cols_) +
                     " vs " + std::to_string(o.rows_) + "x" +
                     std::to_string(o.cols_));
  }
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_ || p_ != o.p_) {
    throw ShapeError("matrix product: " + std::to_string(rows_) + "x" +
                     std::to_string(cols_) + " times " +
                     std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
  }
  Matrix out(p_, rows_, o.cols_);
  if (out.data_.empty() || cols_ == 0) return out;
  std::vector<std::uint64_t> acc(o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    const Scalar* a = row_ptr(i);
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar aik = a[k];
      if (aik == 0) continue;
      const Scalar* b = o.row_ptr(k);
      for (std::size_t j = 0; j < o.cols_; ++j) acc[j] += std::uint64_t{aik} * b[j];
      // Keep accumulators bounded for large inner dimensions.
      if ((k & 1023u) == 1023u) {
        for (auto& v : acc) v %= p_;
      }
    }
    Scalar* dst = out.data_.data() + i * out.cols_;
    for (std::size_t j = 0; j < o.cols_; ++j) dst[j] = static_cast<Scalar>(acc[j] % p_);
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_same_shape(o, "sum");
  Matrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    out.data_[i] = (data_[i] + o.data_[i]) % p_;
  }
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  check_same_shape(o, "difference");
  Matrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    out.data_[i] = (data_[i] + p_ - o.data_[i]) % p_;
  }
  return out;
}

Matrix Matrix::operator-() const { return scaled(-1); }

Matrix Matrix::scaled(long long c) const {
  Field f(p_);
  const Scalar s = f.reduce(c);
  Matrix out(*this);
  for (auto& v : out.data_) v = f.mul(v, s);
  return out;
}

bool Matrix::operator==(const Matrix& o) const {
  return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

Matrix Matrix::transpose() const {
  Matrix out(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.data_[c * rows_ + r] = (*this)(r, c);
  }
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Scalar v) { return v == 0; });
}

bool Matrix::is_identity() const {
  return rows_ == cols_ && *this == identity(p_, rows_);
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                     std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("block out of range");
  Matrix out(p_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    std::copy_n(row_ptr(r0 + r) + c0, nc, out.data_.data() + r * nc);
  }
  return out;
}

void Matrix::paste(std::size_t r0, std::size_t c0, const Matrix& m) {
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) {
    throw ShapeError("paste out of range");
  }
  for (std::size_t r = 0; r < m.rows_; ++r) {
    std::copy_n(m.row_ptr(r), m.cols_, data_.data() + (r0 + r) * cols_ + c0);
  }
}

Matrix Matrix::hstack(const std::vector<Matrix>& parts) {
  if (parts.empty()) throw ShapeError("hstack of nothing");
  std::size_t nc = 0;
  for (const auto& m : parts) {
    if (m.rows_ != parts.front().rows_) throw ShapeError("hstack row mismatch");
    nc += m.cols_;
  }
  Matrix out(parts.front().p_, parts.front().rows_, nc);
  std::size_t c = 0;
  for (const auto& m : parts) {
    out.paste(0, c, m);
    c += m.cols_;
  }
  return out;
}

Matrix Matrix::vstack(const std::vector<Matrix>& parts) {
  if (parts.empty()) throw ShapeError("vstack of nothing");
  std::size_t nr = 0;
  for (const auto& m : parts) {
    if (m.cols_ != parts.front().cols_) throw ShapeError("vstack column mismatch");
    nr += m.rows_;
  }
  Matrix out(parts.front().p_, nr, parts.front().cols_);
  std::size_t r = 0;
  for (const auto& m : parts) {
    out.paste(r, 0, m);
    r += m.rows_;
  }
  return out;
}

Matrix Matrix::block_diag(const std::vector<Matrix>& parts) {
  if (parts.empty()) throw ShapeError("block_diag of nothing");
  std::size_t nr = 0, nc = 0;
  for (const auto& m : parts) {
    nr += m.rows_;
    nc += m.cols_;
  }
  Matrix out(parts.front().p_, nr, nc);
  std::size_t r = 0, c = 0;
  for (const auto& m : parts) {
    out.paste(r, c, m);
    r += m.rows_;
    c += m.cols_;
  }
  return out;
}

Matrix Matrix::kron(const Matrix& a, const Matrix& b) {
  Field f(a.p_);
  Matrix out(a.p_, a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) {
      const Scalar x = a(i, j);
      if (x == 0) continue;
      for (std::size_t k = 0; k < b.rows_; ++k) {
        for (std::size_t l = 0; l < b.cols_; ++l) {
          out.data_[(i * b.rows_ + k) * out.cols_ + j * b.cols_ + l] = f.mul(x, b(k, l));
        }
      }
    }
  }
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

// In-place reduction of a row-major buffer to RREF over the first
// `pivot_cols` columns. Returns pivot columns.
std::vector<std::size_t> reduce_in_place(std::vector<Scalar>& a, std::size_t rows,
                                         std::size_t cols, std::size_t pivot_cols,
                                         const Field& f) {
  const std::uint32_t p = f.prime();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (a[i * cols + c] != 0) {
        piv = i;
        break;
      }
    }
    if (piv == rows) continue;
    if (piv != r) {
      std::swap_ranges(a.begin() + piv * cols, a.begin() + (piv + 1) * cols,
                       a.begin() + r * cols);
    }
    Scalar* prow = a.data() + r * cols;
    const Scalar inv = f.inv(prow[c]);
    if (inv != 1) {
      for (std::size_t j = c; j < cols; ++j) prow[j] = f.mul(prow[j], inv);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      Scalar* row = a.data() + i * cols;
      const Scalar factor = row[c];
      if (factor == 0) continue;
      const Scalar m = p - factor;
      for (std::size_t j = c; j < cols; ++j) {
        if (prow[j] != 0) {
          row[j] = static_cast<Scalar>((row[j] + std::uint64_t{m} * prow[j]) % p);
        }
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

RowEchelon rref(const Matrix& m) {
  RowEchelon out;
  std::vector<Scalar> buf = m.entries();
  out.pivots = reduce_in_place(buf, m.rows(), m.cols(), m.cols(), m.field());
  out.reduced = Matrix(m.prime(), m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out.reduced.set(r, c, buf[r * m.cols() + c]);
  }
  return out;
}

std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  // Reduce whichever orientation has fewer columns to eliminate across.
  if (m.rows() < m.cols()) {
    std::vector<Scalar> buf = m.transpose().entries();
    return reduce_in_place(buf, m.cols(), m.rows(), m.rows(), m.field()).size();
  }
  std::vector<Scalar> buf = m.entries();
  return reduce_in_place(buf, m.rows(), m.cols(), m.cols(), m.field()).size();
}

std::vector<Matrix> kernel_basis(const Matrix& m) {
  const Field f = m.field();
  RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Matrix> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Matrix v(m.prime(), m.cols(), 1);
    v.set(free, 0, 1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      v.set(e.pivots[r], 0, f.neg(e.reduced(r, free)));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix kernel_matrix(const Matrix& m) {
  auto basis = kernel_basis(m);
  if (basis.empty()) return Matrix(m.prime(), m.cols(), 0);
  return Matrix::hstack(basis);
}

Matrix cokernel_projection(const Matrix& m) {
  return kernel_matrix(m.transpose()).transpose();
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ShapeError("solve: row mismatch");
  const Field f = a.field();
  const std::size_t n = a.cols(), k = b.cols(), cols = n + k;
  std::vector<Scalar> buf(a.rows() * cols);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::copy_n(a.row_ptr(r), n, buf.data() + r * cols);
    std::copy_n(b.row_ptr(r), k, buf.data() + r * cols + n);
  }
  auto pivots = reduce_in_place(buf, a.rows(), cols, n, f);
  // Inconsistent iff a zero row of the left block has a nonzero right part.
  for (std::size_t r = pivots.size(); r < a.rows(); ++r) {
    for (std::size_t j = 0; j < k; ++j) {
      if (buf[r * cols + n + j] != 0) return std::nullopt;
    }
  }
  Matrix x(a.prime(), n, k);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    for (std::size_t j = 0; j < k; ++j) x.set(pivots[r], j, buf[r * cols + n + j]);
  }
  return x;
}

std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b) {
  auto xt = solve(a.transpose(), b.transpose());
  if (!xt) return std::nullopt;
  return xt->transpose();
}

Matrix right_inverse(const Matrix& a) {
  auto x = solve(a, Matrix::identity(a.prime(), a.rows()));
  if (!x) throw ValidationError("right_inverse: matrix is not surjective");
  return *x;
}

Matrix left_inverse(const Matrix& a) {
  auto x = solve_left(a, Matrix::identity(a.prime(), a.cols()));
  if (!x) throw ValidationError("left_inverse: matrix is not injective");
  return *x;
}

Matrix inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw ShapeError("inverse of non-square matrix");
  return right_inverse(a);
}

// ---------------------------------------------------------------------------

std::size_t LinearSystem::add_unknown(std::size_t rows, std::size_t cols) {
  shapes_.emplace_back(rows, cols);
  offsets_.push_back(total_);
  total_ += rows * cols;
  return shapes_.size() - 1;
}

void LinearSystem::add_equation(const std::vector<Term>& terms, const Matrix& rhs) {
  for (const auto& t : terms) {
    if (t.unknown >= shapes_.size()) throw ShapeError("unknown index out of range");
    const auto [ur, uc] = shapes_[t.unknown];
    if (t.left.cols() != ur || t.right.rows() != uc ||
        t.left.rows() != rhs.rows() || t.right.cols() != rhs.cols()) {
      throw ShapeError("linear system term has inconsistent dimensions");
    }
  }
  equations_.push_back({terms, rhs});
}

Matrix LinearSystem::assemble(Matrix& rhs_out) const {
  std::size_t nrows = 0;
  for (const auto& e : equations_) nrows += e.rhs.rows() * e.rhs.cols();
  Matrix coeff(p_, nrows, total_);
  rhs_out = Matrix(p_, nrows, 1);
  const Field f(p_);
  std::size_t row0 = 0;
  for (const auto& e : equations_) {
    const std::size_t R = e.rhs.rows(), C = e.rhs.cols();
    for (std::size_t r = 0; r < R; ++r) {
      for (std::size_t c = 0; c < C; ++c) rhs_out.set(row0 + r * C + c, 0, e.rhs(r, c));
    }
    // (A H B)(r,c) = sum_{i,j} A(r,i) H(i,j) B(j,c)
    for (const auto& t : e.terms) {
      const std::size_t off = offsets_[t.unknown];
      const std::size_t hc = shapes_[t.unknown].second;
      for (std::size_t r = 0; r < R; ++r) {
        for (std::size_t i = 0; i < t.left.cols(); ++i) {
          const Scalar a = t.left(r, i);
          if (a == 0) continue;
          for (std::size_t j = 0; j < t.right.rows(); ++j) {
            for (std::size_t c = 0; c < C; ++c) {
              const Scalar b = t.right(j, c);
              if (b == 0) continue;
              coeff.accumulate(row0 + r * C + c, off + i * hc + j, f.mul(a, b));
            }
          }
        }
      }
    }
    row0 += R * C;
  }
  return coeff;
}

std::vector<Matrix> LinearSystem::unpack(const std::vector<Scalar>& flat) const {
  std::vector<Matrix> out;
  for (std::size_t u = 0; u < shapes_.size(); ++u) {
    const auto [r, c] = shapes_[u];
    Matrix m(p_, r, c);
    for (std::size_t i = 0; i < r * c; ++i) m.set(i / c, i % c, flat[offsets_[u] + i]);
    out.push_back(std::move(m));
  }
  return out;
}

std::optional<LinearSystem::SolutionSpace> LinearSystem::solution_space() const {
  Matrix rhs;
  Matrix coeff = assemble(rhs);
  auto x = stab::solve(coeff, rhs);
  if (!x) return std::nullopt;
  SolutionSpace space;
  std::vector<Scalar> flat(total_);
  for (std::size_t i = 0; i < total_; ++i) flat[i] = (*x)(i, 0);
  space.particular = unpack(flat);
  for (const auto& v : kernel_basis(coeff)) {
    for (std::size_t i = 0; i < total_; ++i) flat[i] = v(i, 0);
    space.homogeneous.push_back(unpack(flat));
  }
  return space;
}

std::optional<std::vector<Matrix>> LinearSystem::solve() const {
  Matrix rhs;
  Matrix coeff = assemble(rhs);
  auto x = stab::solve(coeff, rhs);
  if (!x) return std::nullopt;
  std::vector<Scalar> flat(total_);
  for (std::size_t i = 0; i < total_; ++i) flat[i] = (*x)(i, 0);
  auto values = unpack(flat);
  if (!satisfied_by(values)) {
    throw ValidationError("linear system solution failed re-evaluation");
  }
  return values;
}

bool LinearSystem::satisfied_by(const std::vector<Matrix>& values) const {
  if (values.size() != shapes_.size()) return false;
  for (const auto& e : equations_) {
    Matrix acc(p_, e.rhs.rows(), e.rhs.cols());
    for (const auto& t : e.terms) acc = acc + t.left * values[t.unknown] * t.right;
    if (acc != e.rhs) return false;
  }
  return true;
}

std::vector<Matrix> sample(const LinearSystem::SolutionSpace& space,
                           std::mt19937_64& rng) {
  std::vector<Matrix> out = space.particular;
  if (out.empty()) return out;
  const std::uint32_t p = out.front().prime();
  std::uniform_int_distribution<std::uint32_t> coef(0, p - 1);
  for (const auto& h : space.homogeneous) {
    const auto c = coef(rng);
    if (c == 0) continue;
    for (std::size_t u = 0; u < out.size(); ++u) out[u] = out[u] + h[u].scaled(c);
  }
  return out;
}

Matrix random_matrix(std::uint32_t p, std::size_t rows, std::size_t cols,
                     std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> coef(0, p - 1);
  Matrix m(p, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, coef(rng));
  }
  return m;
}

}  // namespace stab
