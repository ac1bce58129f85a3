#include "stab/chain.hpp"

#include <algorithm>
#include <sstream>

namespace stab {

namespace {

void require_same_prime(std::uint32_t a, std::uint32_t b, const char* what) {
  if (a != b) {
    throw ShapeError(std::string(what) + ": characteristic mismatch (" +
                     std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

// -- ChainComplex -----------------------------------------------------------

ChainComplex::ChainComplex(std::uint32_t p, std::vector<std::size_t> dims,
                           std::vector<Matrix> diffs)
    : ChainComplex(p, std::move(dims), std::move(diffs), true) {}

ChainComplex ChainComplex::trusted(std::uint32_t p, std::vector<std::size_t> dims,
                                   std::vector<Matrix> diffs) {
  return ChainComplex(p, std::move(dims), std::move(diffs), false);
}

ChainComplex::ChainComplex(std::uint32_t p, std::vector<std::size_t> dims,
                           std::vector<Matrix> diffs, bool check)
    : p_(p), dims_(std::move(dims)) {
  (void)Field(p);  // validates the prime
  if (diffs.size() + 1 == dims_.size()) {
    diffs.insert(diffs.begin(), Matrix(p, 0, dims_.empty() ? 0 : dims_[0]));
  }
  if (dims_.empty() && diffs.size() <= 1) diffs.clear();
  if (diffs.size() != dims_.size()) {
    throw ShapeError("chain complex: expected " + std::to_string(dims_.size()) +
                     " differentials, got " + std::to_string(diffs.size()));
  }
  for (std::size_t n = 0; n < dims_.size(); ++n) {
    const std::size_t rows = n == 0 ? 0 : dims_[n - 1];
    if (diffs[n].rows() != rows || diffs[n].cols() != dims_[n]) {
      throw ShapeError("chain complex: d_" + std::to_string(n) + " must be " +
                       std::to_string(rows) + "x" + std::to_string(dims_[n]) +
                       ", got " + std::to_string(diffs[n].rows()) + "x" +
                       std::to_string(diffs[n].cols()));
    }
    if (diffs[n].prime() != p) throw ShapeError("chain complex: mixed primes");
  }
  while (!dims_.empty() && dims_.back() == 0) {
    dims_.pop_back();
    diffs.pop_back();
  }
  diffs_ = std::move(diffs);
  if (!check) return;
  for (std::size_t n = 2; n < dims_.size(); ++n) {
    if (!(diffs_[n - 1] * diffs_[n]).is_zero()) {
      throw ValidationError("chain complex: d_" + std::to_string(n - 1) + " ∘ d_" +
                            std::to_string(n) + " != 0");
    }
  }
}

ChainComplex ChainComplex::unit(std::uint32_t p) { return sphere(p, 0); }

ChainComplex ChainComplex::sphere(std::uint32_t p, int d) {
  if (d < 0) throw std::invalid_argument("sphere degree must be >= 0");
  std::vector<std::size_t> dims(static_cast<std::size_t>(d) + 1, 0);
  dims.back() = 1;
  std::vector<Matrix> diffs;
  for (int n = 0; n <= d; ++n) diffs.emplace_back(p, n == 0 ? 0 : dims[n - 1], dims[n]);
  return ChainComplex(p, dims, diffs);
}

ChainComplex ChainComplex::disk(std::uint32_t p, int d) {
  if (d < 1) throw std::invalid_argument("disk degree must be >= 1");
  std::vector<std::size_t> dims(static_cast<std::size_t>(d) + 1, 0);
  dims[d] = 1;
  dims[d - 1] = 1;
  std::vector<Matrix> diffs;
  for (int n = 0; n <= d; ++n) {
    diffs.push_back(n == d ? Matrix::identity(p, 1)
                           : Matrix(p, n == 0 ? 0 : dims[n - 1], dims[n]));
  }
  return ChainComplex(p, dims, diffs);
}

ChainComplex ChainComplex::interval(std::uint32_t p) {
  return ChainComplex(p, {2, 1}, {Matrix::from_rows(p, {{-1}, {1}})});
}

Matrix ChainComplex::diff(int n) const {
  if (n >= 1 && n <= top()) return diffs_[static_cast<std::size_t>(n)];
  return Matrix(p_, dim(n - 1), dim(n));
}

std::size_t ChainComplex::total_dim() const {
  std::size_t t = 0;
  for (auto d : dims_) t += d;
  return t;
}

int ChainComplex::bottom() const {
  for (int n = 0; n <= top(); ++n) {
    if (dim(n) != 0) return n;
  }
  return 0;
}

bool ChainComplex::operator==(const ChainComplex& o) const {
  return p_ == o.p_ && dims_ == o.dims_ && diffs_ == o.diffs_;
}

std::string ChainComplex::describe() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t n = 0; n < dims_.size(); ++n) os << (n ? "," : "") << dims_[n];
  os << ")";
  return os.str();
}

// -- ChainMap ---------------------------------------------------------------

ChainMap::ChainMap(ChainComplex source, ChainComplex target, std::vector<Matrix> mats)
    : ChainMap(std::move(source), std::move(target), std::move(mats), true) {}

ChainMap ChainMap::trusted(ChainComplex source, ChainComplex target, std::vector<Matrix> mats) {
  return ChainMap(std::move(source), std::move(target), std::move(mats), false);
}

ChainMap::ChainMap(ChainComplex source, ChainComplex target, std::vector<Matrix> mats, bool check)
    : source_(std::move(source)), target_(std::move(target)) {
  require_same_prime(source_.prime(), target_.prime(), "chain map");
  const int top = std::max(source_.top(), target_.top());
  if (static_cast<int>(mats.size()) > top + 1) {
    for (std::size_t n = static_cast<std::size_t>(top + 1); n < mats.size(); ++n) {
      if (!mats[n].empty()) throw ShapeError("chain map: components beyond the top degree");
    }
    mats.resize(static_cast<std::size_t>(top + 1));
  }
  while (static_cast<int>(mats.size()) < top + 1) {
    const int n = static_cast<int>(mats.size());
    mats.emplace_back(source_.prime(), target_.dim(n), source_.dim(n));
  }
  for (int n = 0; n <= top; ++n) {
    const Matrix& m = mats[n];
    if (m.rows() != target_.dim(n) || m.cols() != source_.dim(n)) {
      throw ShapeError("chain map: f_" + std::to_string(n) + " must be " +
                       std::to_string(target_.dim(n)) + "x" +
                       std::to_string(source_.dim(n)) + ", got " +
                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
  }
  mats_ = std::move(mats);
  if (!check) return;
  for (int n = 1; n <= top; ++n) {
    if (mats_[n - 1] * source_.diff(n) != target_.diff(n) * mats_[n]) {
      throw ValidationError("chain map: f d != d f in degree " + std::to_string(n));
    }
  }
}

ChainMap ChainMap::identity(const ChainComplex& c) { return scalar(c, 1); }

ChainMap ChainMap::zero(const ChainComplex& s, const ChainComplex& t) {
  return ChainMap(s, t, {});
}

ChainMap ChainMap::scalar(const ChainComplex& c, long long k) {
  std::vector<Matrix> mats;
  for (int n = 0; n <= c.top(); ++n) mats.push_back(Matrix::scalar(c.prime(), c.dim(n), k));
  return trusted(c, c, mats);
}

Matrix ChainMap::mat(int n) const {
  if (n >= 0 && n <= top()) return mats_[static_cast<std::size_t>(n)];
  return Matrix(source_.prime(), target_.dim(n), source_.dim(n));
}

ChainMap ChainMap::operator*(const ChainMap& f) const {
  if (f.target_ != source_) throw ShapeError("composition: target/source mismatch");
  std::vector<Matrix> mats;
  const int top = std::max(f.source_.top(), target_.top());
  for (int n = 0; n <= top; ++n) mats.push_back(mat(n) * f.mat(n));
  return trusted(f.source_, target_, mats);
}

ChainMap ChainMap::operator+(const ChainMap& o) const {
  if (o.source_ != source_ || o.target_ != target_) throw ShapeError("sum of maps: shape mismatch");
  std::vector<Matrix> mats;
  for (int n = 0; n <= top(); ++n) mats.push_back(mat(n) + o.mat(n));
  return trusted(source_, target_, mats);
}

ChainMap ChainMap::operator-(const ChainMap& o) const { return *this + o.scaled(-1); }

ChainMap ChainMap::scaled(long long k) const {
  std::vector<Matrix> mats;
  for (const auto& m : mats_) mats.push_back(m.scaled(k));
  return trusted(source_, target_, mats);
}

bool ChainMap::operator==(const ChainMap& o) const {
  return source_ == o.source_ && target_ == o.target_ && mats_ == o.mats_;
}

bool ChainMap::is_zero() const {
  return std::all_of(mats_.begin(), mats_.end(), [](const Matrix& m) { return m.is_zero(); });
}

bool ChainMap::is_identity() const {
  return source_ == target_ &&
         std::all_of(mats_.begin(), mats_.end(), [](const Matrix& m) { return m.is_identity(); });
}

// -- ChainHomotopy ----------------------------------------------------------

Matrix ChainHomotopy::comp(int n) const {
  if (n >= 0 && n < static_cast<int>(comps.size())) return comps[static_cast<std::size_t>(n)];
  return Matrix(from.prime(), from.target().dim(n + 1), from.source().dim(n));
}

bool ChainHomotopy::valid() const {
  if (from.source() != to.source() || from.target() != to.target()) return false;
  const ChainComplex& a = from.source();
  const ChainComplex& b = from.target();
  for (int n = 0; n <= std::max(a.top(), b.top()); ++n) {
    const Matrix lhs = b.diff(n + 1) * comp(n) + comp(n - 1) * a.diff(n);
    if (lhs != to.mat(n) - from.mat(n)) return false;
  }
  return true;
}

ChainHomotopy make_homotopy(ChainMap from, ChainMap to, std::vector<Matrix> comps) {
  ChainHomotopy h{std::move(from), std::move(to), std::move(comps)};
  for (std::size_t n = 0; n < h.comps.size(); ++n) {
    const int d = static_cast<int>(n);
    if (h.comps[n].rows() != h.from.target().dim(d + 1) ||
        h.comps[n].cols() != h.from.source().dim(d)) {
      throw ShapeError("chain homotopy: h_" + std::to_string(n) + " has the wrong shape");
    }
  }
  if (!h.valid()) throw ValidationError("chain homotopy: d h + h d != to - from");
  return h;
}

// -- homology ---------------------------------------------------------------

std::size_t homology(const ChainComplex& x, int k) {
  if (k < 0) return 0;
  return x.dim(k) - rank(x.diff(k)) - rank(x.diff(k + 1));
}

std::vector<std::size_t> homology_dims(const ChainComplex& x, int max_degree) {
  std::vector<std::size_t> out;
  for (int k = 0; k <= max_degree; ++k) out.push_back(homology(x, k));
  return out;
}

std::size_t induced_rank(const ChainMap& f, int k) {
  // rank of H_k(f) = rank [B_Y | f Z_X] - rank B_Y
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  if (x.dim(k) == 0 || y.dim(k) == 0) return 0;
  const Matrix z = kernel_matrix(x.diff(k));
  const Matrix b = y.diff(k + 1);
  const Matrix fz = f.mat(k) * z;
  return rank(Matrix::hstack({b, fz})) - rank(b);
}

bool is_quasi_iso_upto(const ChainMap& f, int max_degree) {
  const int top = std::min(max_degree, std::max(f.source().top(), f.target().top()));
  for (int k = 0; k <= top; ++k) {
    const std::size_t hx = homology(f.source(), k);
    const std::size_t hy = homology(f.target(), k);
    if (hx != hy || induced_rank(f, k) != hx) return false;
  }
  return true;
}

bool is_quasi_iso(const ChainMap& f) {
  return is_quasi_iso_upto(f, std::max(f.source().top(), f.target().top()));
}

bool is_injective(const ChainMap& f) {
  for (int n = 0; n <= f.source().top(); ++n) {
    if (rank(f.mat(n)) != f.source().dim(n)) return false;
  }
  return true;
}

bool is_surjective(const ChainMap& f, int from_degree) {
  for (int n = std::max(0, from_degree); n <= f.target().top(); ++n) {
    if (rank(f.mat(n)) != f.target().dim(n)) return false;
  }
  return true;
}

bool is_iso(const ChainMap& f) { return is_injective(f) && is_surjective(f); }

ChainMap inverse(const ChainMap& f) {
  if (!is_iso(f)) throw ValidationError("inverse: map is not an isomorphism");
  std::vector<Matrix> mats;
  for (int n = 0; n <= f.top(); ++n) mats.push_back(stab::inverse(f.mat(n)));
  return ChainMap(f.target(), f.source(), mats);
}

MapClass classify_map(const ChainMap& f) {
  return {is_injective(f), is_surjective(f, 1), is_quasi_iso(f)};
}

// -- tensor -----------------------------------------------------------------

TensorIndex::TensorIndex(const ChainComplex& a, const ChainComplex& b) : a_(a), b_(b) {
  const int top = (a.is_zero() || b.is_zero()) ? -1 : a.top() + b.top();
  for (int n = 0; n <= top; ++n) {
    std::vector<std::size_t> off;
    std::size_t acc = 0;
    for (int p = 0; p <= n; ++p) {
      off.push_back(acc);
      acc += a.dim(p) * b.dim(n - p);
    }
    offsets_.push_back(std::move(off));
    dims_.push_back(acc);
  }
}

std::size_t TensorIndex::offset(int n, int p) const {
  return offsets_.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(p));
}

std::size_t TensorIndex::dim(int n) const {
  return (n < 0 || n >= static_cast<int>(dims_.size())) ? 0 : dims_[static_cast<std::size_t>(n)];
}

ChainComplex tensor(const ChainComplex& a, const ChainComplex& b) {
  require_same_prime(a.prime(), b.prime(), "tensor");
  const std::uint32_t p = a.prime();
  const Field f(p);
  TensorIndex idx(a, b);
  const int top = (a.is_zero() || b.is_zero()) ? -1 : a.top() + b.top();
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int n = 0; n <= top; ++n) dims.push_back(idx.dim(n));
  for (int n = 0; n <= top; ++n) {
    Matrix d(p, idx.dim(n - 1), idx.dim(n));
    if (n >= 1) {
      for (int pa = 0; pa <= n; ++pa) {
        const int q = n - pa;
        const std::size_t da = a.dim(pa), db = b.dim(q);
        if (da == 0 || db == 0) continue;
        const Matrix dA = a.diff(pa);
        const Matrix dB = b.diff(q);
        const Scalar sgn = f.sign(pa);
        for (std::size_t i = 0; i < da; ++i) {
          for (std::size_t j = 0; j < db; ++j) {
            const std::size_t col = idx.index(n, pa, i, j);
            // dx ⊗ y
            if (pa >= 1) {
              for (std::size_t r = 0; r < dA.rows(); ++r) {
                if (dA(r, i) != 0) d.accumulate(idx.index(n - 1, pa - 1, r, j), col, dA(r, i));
              }
            }
            // (−1)^{|x|} x ⊗ dy
            if (q >= 1) {
              for (std::size_t r = 0; r < dB.rows(); ++r) {
                if (dB(r, j) != 0) {
                  d.accumulate(idx.index(n - 1, pa, i, r), col, f.mul(sgn, dB(r, j)));
                }
              }
            }
          }
        }
      }
    }
    diffs.push_back(std::move(d));
  }
  return ChainComplex::trusted(p, dims, diffs);
}

ChainMap tensor(const ChainMap& f, const ChainMap& g) {
  const ChainComplex src = tensor(f.source(), g.source());
  const ChainComplex tgt = tensor(f.target(), g.target());
  TensorIndex is(f.source(), g.source()), it(f.target(), g.target());
  std::vector<Matrix> mats;
  for (int n = 0; n <= std::max(src.top(), tgt.top()); ++n) {
    Matrix m(f.prime(), tgt.dim(n), src.dim(n));
    for (int p = 0; p <= n; ++p) {
      const Matrix fp = f.mat(p), gq = g.mat(n - p);
      if (fp.empty() || gq.empty()) continue;
      m.paste(it.offset(n, p), is.offset(n, p), Matrix::kron(fp, gq));
    }
    mats.push_back(std::move(m));
  }
  return ChainMap::trusted(src, tgt, mats);
}

ChainMap twist(const ChainComplex& a, const ChainComplex& b) {
  const ChainComplex src = tensor(a, b), tgt = tensor(b, a);
  TensorIndex is(a, b), it(b, a);
  const Field f(a.prime());
  std::vector<Matrix> mats;
  for (int n = 0; n <= src.top(); ++n) {
    Matrix m(a.prime(), tgt.dim(n), src.dim(n));
    for (int p = 0; p <= n; ++p) {
      const int q = n - p;
      for (std::size_t i = 0; i < a.dim(p); ++i) {
        for (std::size_t j = 0; j < b.dim(q); ++j) {
          m.set(it.index(n, q, j, i), is.index(n, p, i, j), f.sign(static_cast<long long>(p) * q));
        }
      }
    }
    mats.push_back(std::move(m));
  }
  return ChainMap(src, tgt, mats);
}

ChainMap associator(const ChainComplex& a, const ChainComplex& b, const ChainComplex& c) {
  const ChainComplex ab = tensor(a, b), bc = tensor(b, c);
  const ChainComplex src = tensor(ab, c), tgt = tensor(a, bc);
  TensorIndex iab(a, b), ibc(b, c), is(ab, c), it(a, bc);
  std::vector<Matrix> mats;
  for (int n = 0; n <= src.top(); ++n) {
    Matrix m(a.prime(), tgt.dim(n), src.dim(n));
    for (int p = 0; p <= n; ++p) {
      for (int q = 0; p + q <= n; ++q) {
        const int r = n - p - q;
        for (std::size_t i = 0; i < a.dim(p); ++i) {
          for (std::size_t j = 0; j < b.dim(q); ++j) {
            for (std::size_t k = 0; k < c.dim(r); ++k) {
              const std::size_t s = is.index(n, p + q, iab.index(p + q, p, i, j), k);
              const std::size_t t = it.index(n, p, i, ibc.index(q + r, q, j, k));
              m.set(t, s, 1);
            }
          }
        }
      }
    }
    mats.push_back(std::move(m));
  }
  return ChainMap(src, tgt, mats);
}

ChainMap associator_inverse(const ChainComplex& a, const ChainComplex& b,
                            const ChainComplex& c) {
  const ChainMap f = associator(a, b, c);
  std::vector<Matrix> mats;
  for (int n = 0; n <= f.top(); ++n) mats.push_back(f.mat(n).transpose());
  return ChainMap(f.target(), f.source(), mats);
}

ChainComplex tensor_power(const ChainComplex& k, int n) {
  if (n < 0) throw std::invalid_argument("negative tensor power");
  if (n == 0) return ChainComplex::unit(k.prime());
  ChainComplex out = k;
  for (int i = 1; i < n; ++i) out = tensor(out, k);
  return out;
}

// -- sums -------------------------------------------------------------------

ChainComplex direct_sum_of(const std::vector<ChainComplex>& parts) {
  if (parts.empty()) throw ShapeError("direct sum of nothing");
  const std::uint32_t p = parts.front().prime();
  int top = -1;
  for (const auto& c : parts) {
    require_same_prime(p, c.prime(), "direct sum");
    top = std::max(top, c.top());
  }
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int n = 0; n <= top; ++n) {
    std::size_t dn = 0;
    for (const auto& c : parts) dn += c.dim(n);
    dims.push_back(dn);
  }
  for (int n = 0; n <= top; ++n) {
    Matrix d(p, n == 0 ? 0 : dims[n - 1], dims[n]);
    std::size_t r = 0, col = 0;
    for (const auto& c : parts) {
      if (n >= 1) d.paste(r, col, c.diff(n));
      r += c.dim(n - 1);
      col += c.dim(n);
    }
    diffs.push_back(std::move(d));
  }
  return ChainComplex(p, dims, diffs);
}

DirectSum direct_sum(const ChainComplex& a, const ChainComplex& b) {
  const ChainComplex s = direct_sum_of({a, b});
  const std::uint32_t p = a.prime();
  std::vector<Matrix> ia, ib, pa, pb;
  for (int n = 0; n <= s.top(); ++n) {
    const std::size_t da = a.dim(n), db = b.dim(n);
    Matrix ma(p, da + db, da), mb(p, da + db, db);
    ma.paste(0, 0, Matrix::identity(p, da));
    mb.paste(da, 0, Matrix::identity(p, db));
    pa.push_back(ma.transpose());
    pb.push_back(mb.transpose());
    ia.push_back(std::move(ma));
    ib.push_back(std::move(mb));
  }
  return {s, ChainMap(a, s, ia), ChainMap(b, s, ib), ChainMap(s, a, pa), ChainMap(s, b, pb)};
}

ChainMap copair(const DirectSum& s, const ChainMap& f, const ChainMap& g) {
  return f * s.pr_a + g * s.pr_b;
}

ChainMap pair(const DirectSum& s, const ChainMap& f, const ChainMap& g) {
  return s.in_a * f + s.in_b * g;
}

// -- kernels and cokernels --------------------------------------------------

Sub subcomplex(const ChainComplex& c, const std::vector<Matrix>& bases) {
  const std::uint32_t p = c.prime();
  auto basis = [&](int n) {
    if (n >= 0 && n < static_cast<int>(bases.size())) return bases[static_cast<std::size_t>(n)];
    return Matrix(p, c.dim(n), 0);
  };
  const int top = c.top();
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs, incl;
  for (int n = 0; n <= top; ++n) {
    const Matrix b = basis(n);
    if (b.rows() != c.dim(n)) throw ShapeError("subcomplex: basis has the wrong length");
    dims.push_back(b.cols());
    incl.push_back(b);
  }
  for (int n = 0; n <= top; ++n) {
    if (n == 0) {
      diffs.emplace_back(p, 0, dims[0]);
      continue;
    }
    const Matrix image = c.diff(n) * incl[n];
    auto d = solve(incl[n - 1], image);
    if (!d) throw ValidationError("subcomplex: span is not closed under d in degree " + std::to_string(n));
    diffs.push_back(*d);
  }
  ChainComplex sub(p, dims, diffs);
  return {sub, ChainMap(sub, c, incl)};
}

Sub kernel(const ChainMap& f) {
  std::vector<Matrix> bases;
  for (int n = 0; n <= f.source().top(); ++n) bases.push_back(kernel_matrix(f.mat(n)));
  return subcomplex(f.source(), bases);
}

Quotient cokernel(const ChainMap& f) {
  const ChainComplex& v = f.target();
  const std::uint32_t p = v.prime();
  std::vector<Matrix> proj, rinv;
  std::vector<std::size_t> dims;
  for (int n = 0; n <= v.top(); ++n) {
    Matrix q = cokernel_projection(f.mat(n));
    dims.push_back(q.rows());
    rinv.push_back(right_inverse(q));
    proj.push_back(std::move(q));
  }
  std::vector<Matrix> diffs;
  for (int n = 0; n <= v.top(); ++n) {
    if (n == 0) {
      diffs.emplace_back(p, 0, dims[0]);
    } else {
      diffs.push_back(proj[n - 1] * v.diff(n) * rinv[n]);
    }
  }
  ChainComplex q(p, dims, diffs);
  return {q, ChainMap(v, q, proj)};
}

ChainMap factor_through_surjection(const ChainMap& m, const ChainMap& proj) {
  if (m.source() != proj.source()) throw ShapeError("factor_through_surjection: source mismatch");
  std::vector<Matrix> mats;
  for (int n = 0; n <= proj.target().top(); ++n) {
    auto x = solve_left(proj.mat(n), m.mat(n));
    if (!x) {
      throw ValidationError("factor_through_surjection: map does not vanish on the kernel in degree " +
                            std::to_string(n));
    }
    mats.push_back(*x);
  }
  ChainMap out(proj.target(), m.target(), mats);
  if (out * proj != m) throw ValidationError("factor_through_surjection: factorization check failed");
  return out;
}

ChainMap factor_through_injection(const ChainMap& m, const ChainMap& incl) {
  if (m.target() != incl.target()) throw ShapeError("factor_through_injection: target mismatch");
  std::vector<Matrix> mats;
  for (int n = 0; n <= m.source().top(); ++n) {
    auto x = solve(incl.mat(n), m.mat(n));
    if (!x) {
      throw ValidationError("factor_through_injection: image not contained in degree " +
                            std::to_string(n));
    }
    mats.push_back(*x);
  }
  ChainMap out(m.source(), incl.source(), mats);
  if (incl * out != m) throw ValidationError("factor_through_injection: factorization check failed");
  return out;
}

Pushout pushout(const ChainMap& f, const ChainMap& g) {
  if (f.source() != g.source()) throw ShapeError("pushout: source mismatch");
  DirectSum s = direct_sum(f.target(), g.target());
  Quotient q = cokernel(pair(s, f, -g));
  return {q.complex, q.projection * s.in_a, q.projection * s.in_b};
}

ChainMap induced_from_pushout(const Pushout& po, const ChainMap& u, const ChainMap& v) {
  DirectSum s = direct_sum(po.from_b.source(), po.from_c.source());
  const ChainMap proj = copair(s, po.from_b, po.from_c);
  return factor_through_surjection(copair(s, u, v), proj);
}

Pullback pullback(const ChainMap& f, const ChainMap& g) {
  if (f.target() != g.target()) throw ShapeError("pullback: target mismatch");
  DirectSum s = direct_sum(f.source(), g.source());
  Sub k = kernel(copair(s, f, -g));
  return {k.complex, s.pr_a * k.inclusion, s.pr_b * k.inclusion};
}

ChainMap induced_to_pullback(const Pullback& pb, const ChainMap& u, const ChainMap& v) {
  DirectSum s = direct_sum(pb.to_b.target(), pb.to_c.target());
  return factor_through_injection(pair(s, u, v), pair(s, pb.to_b, pb.to_c));
}

Quotient coequalizer(const ChainMap& f, const ChainMap& g) { return cokernel(f - g); }

// -- internal hom -----------------------------------------------------------

std::size_t hom_offset(const ChainComplex& k, const ChainComplex& x, int n, int m) {
  std::size_t off = 0;
  for (int j = 0; j < m; ++j) off += x.dim(j + n) * k.dim(j);
  return off;
}

std::size_t hom_dim(const ChainComplex& k, const ChainComplex& x, int n) {
  return hom_offset(k, x, n, k.top() + 1);
}

Matrix hom_diff(const ChainComplex& k, const ChainComplex& x, int n) {
  // (Df)_m = d_x f_m − (−1)^n f_{m−1} d_k  : k_m → x_{m+n−1}
  const std::uint32_t p = x.prime();
  const Field fl(p);
  Matrix D(p, hom_dim(k, x, n - 1), hom_dim(k, x, n));
  const Scalar sgn = fl.neg(fl.sign(n));
  for (int m = 0; m <= k.top(); ++m) {
    const std::size_t km = k.dim(m);
    const std::size_t xs = x.dim(m + n);
    if (km == 0 || xs == 0) continue;
    const std::size_t src_off = hom_offset(k, x, n, m);
    // d_x f_m lands in block m of Hom_{n−1}.
    if (x.dim(m + n - 1) > 0) {
      const Matrix dx = x.diff(m + n);
      const std::size_t dst_off = hom_offset(k, x, n - 1, m);
      for (std::size_t i = 0; i < xs; ++i) {
        for (std::size_t j = 0; j < km; ++j) {
          for (std::size_t r = 0; r < dx.rows(); ++r) {
            if (dx(r, i) != 0) D.accumulate(dst_off + r * km + j, src_off + i * km + j, dx(r, i));
          }
        }
      }
    }
    // −(−1)^n f_m d_k lands in block m+1 of Hom_{n−1}: k_{m+1} → x_{m+n}.
    if (m + 1 <= k.top() && k.dim(m + 1) > 0) {
      const Matrix dk = k.diff(m + 1);  // km x k_{m+1}
      const std::size_t k1 = k.dim(m + 1);
      const std::size_t dst_off = hom_offset(k, x, n - 1, m + 1);
      for (std::size_t i = 0; i < xs; ++i) {
        for (std::size_t j = 0; j < km; ++j) {
          for (std::size_t c = 0; c < k1; ++c) {
            if (dk(j, c) != 0) {
              D.accumulate(dst_off + i * k1 + c, src_off + i * km + j, fl.mul(sgn, dk(j, c)));
            }
          }
        }
      }
    }
  }
  return D;
}

LoopsData loops_data(const ChainComplex& x, const ChainComplex& k) {
  require_same_prime(x.prime(), k.prime(), "loops_U");
  const std::uint32_t p = x.prime();
  LoopsData out;
  out.cycles0 = kernel_matrix(hom_diff(k, x, 0));
  out.cycles0_left = out.cycles0.cols() == 0 ? Matrix(p, 0, out.cycles0.rows())
                                             : left_inverse(out.cycles0);
  const int top = x.top();
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int n = 0; n <= std::max(top, 0); ++n) {
    dims.push_back(n == 0 ? out.cycles0.cols() : hom_dim(k, x, n));
  }
  for (int n = 0; n <= std::max(top, 0); ++n) {
    if (n == 0) {
      diffs.emplace_back(p, 0, dims[0]);
    } else if (n == 1) {
      diffs.push_back(out.cycles0_left * hom_diff(k, x, 1));
    } else {
      diffs.push_back(hom_diff(k, x, n));
    }
  }
  out.complex = ChainComplex(p, dims, diffs);
  return out;
}

ChainComplex loops_U(const ChainComplex& x, const ChainComplex& k) {
  return loops_data(x, k).complex;
}

ChainMap loops_U(const ChainMap& f, const ChainComplex& k) {
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  const LoopsData lx = loops_data(x, k), ly = loops_data(y, k);
  const std::uint32_t p = x.prime();
  std::vector<Matrix> mats;
  const int top = std::max(lx.complex.top(), ly.complex.top());
  for (int n = 0; n <= top; ++n) {
    Matrix m(p, hom_dim(k, y, n), hom_dim(k, x, n));
    for (int j = 0; j <= k.top(); ++j) {
      const std::size_t kj = k.dim(j);
      const Matrix fj = f.mat(j + n);
      if (kj == 0 || fj.empty()) continue;
      // block j: f_{j+n} ⊗ id_{k_j} in (row = x index, col = k index) layout
      m.paste(hom_offset(k, y, n, j), hom_offset(k, x, n, j),
              Matrix::kron(fj, Matrix::identity(p, kj)));
    }
    if (n == 0) m = ly.cycles0_left * m * lx.cycles0;
    mats.push_back(std::move(m));
  }
  return ChainMap(lx.complex, ly.complex, mats);
}

ChainMap adjoint_GU(const ChainMap& phi, const ChainComplex& a, const ChainComplex& k) {
  if (phi.source() != tensor(a, k)) throw ShapeError("adjoint: source is not a⊗K");
  const ChainComplex& x = phi.target();
  const LoopsData lx = loops_data(x, k);
  TensorIndex ti(a, k);
  const std::uint32_t p = x.prime();
  std::vector<Matrix> mats;
  for (int n = 0; n <= std::max(a.top(), lx.complex.top()); ++n) {
    Matrix m(p, hom_dim(k, x, n), a.dim(n));
    for (std::size_t s = 0; s < a.dim(n); ++s) {
      for (int j = 0; j <= k.top(); ++j) {
        const Matrix pj = phi.mat(n + j);
        for (std::size_t kk = 0; kk < k.dim(j); ++kk) {
          const std::size_t src = ti.index(n + j, n, s, kk);
          for (std::size_t i = 0; i < x.dim(n + j); ++i) {
            m.set(hom_offset(k, x, n, j) + i * k.dim(j) + kk, s, pj(i, src));
          }
        }
      }
    }
    if (n == 0) m = lx.cycles0_left * m;
    mats.push_back(std::move(m));
  }
  return ChainMap(a, lx.complex, mats);
}

ChainMap adjoint_UG(const ChainMap& psi, const ChainComplex& x, const ChainComplex& k) {
  const LoopsData lx = loops_data(x, k);
  if (psi.target() != lx.complex) throw ShapeError("adjoint: target is not U(x)");
  const ChainComplex& a = psi.source();
  const ChainComplex ak = tensor(a, k);
  TensorIndex ti(a, k);
  const std::uint32_t p = x.prime();
  std::vector<Matrix> mats;
  for (int t = 0; t <= std::max(ak.top(), x.top()); ++t) mats.emplace_back(p, x.dim(t), ak.dim(t));
  for (int n = 0; n <= a.top(); ++n) {
    Matrix hom = psi.mat(n);
    if (n == 0) hom = lx.cycles0 * hom;
    for (std::size_t s = 0; s < a.dim(n); ++s) {
      for (int j = 0; j <= k.top(); ++j) {
        if (n + j > x.top()) continue;
        for (std::size_t kk = 0; kk < k.dim(j); ++kk) {
          const std::size_t col = ti.index(n + j, n, s, kk);
          for (std::size_t i = 0; i < x.dim(n + j); ++i) {
            mats[n + j].set(i, col, hom(hom_offset(k, x, n, j) + i * k.dim(j) + kk, s));
          }
        }
      }
    }
  }
  return ChainMap(ak, x, mats);
}

ChainMap unit_GU(const ChainComplex& a, const ChainComplex& k) {
  return adjoint_GU(ChainMap::identity(tensor(a, k)), a, k);
}

ChainMap counit_GU(const ChainComplex& x, const ChainComplex& k) {
  return adjoint_UG(ChainMap::identity(loops_U(x, k)), x, k);
}

// -- lifting ----------------------------------------------------------------

std::optional<ChainMap> has_lift(const ChainMap& i, const ChainMap& p, const ChainMap& f,
                                 const ChainMap& g) {
  const ChainComplex& a = i.source();
  const ChainComplex& b = i.target();
  const ChainComplex& x = p.source();
  const ChainComplex& y = p.target();
  if (f.source() != a || f.target() != x || g.source() != b || g.target() != y) {
    throw ShapeError("has_lift: square shapes do not match");
  }
  if (p * f != g * i) throw ValidationError("has_lift: square does not commute");
  const std::uint32_t pr = a.prime();
  LinearSystem sys(pr);
  const int top = std::max(b.top(), x.top());
  std::vector<std::size_t> h;
  for (int n = 0; n <= top; ++n) h.push_back(sys.add_unknown(x.dim(n), b.dim(n)));
  for (int n = 0; n <= top; ++n) {
    sys.add_equation({{Matrix::identity(pr, x.dim(n)), h[n], i.mat(n)}}, f.mat(n));
    sys.add_equation({{p.mat(n), h[n], Matrix::identity(pr, b.dim(n))}}, g.mat(n));
    if (n >= 1) {
      sys.add_equation({{x.diff(n), h[n], Matrix::identity(pr, b.dim(n))},
                        {Matrix::scalar(pr, x.dim(n - 1), -1), h[n - 1], b.diff(n)}},
                       Matrix(pr, x.dim(n - 1), b.dim(n)));
    }
  }
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  ChainMap lift(b, x, *sol);
  if (lift * i != f || p * lift != g) throw ValidationError("has_lift: lift failed re-validation");
  return lift;
}

std::optional<ChainHomotopy> find_homotopy(const ChainMap& f, const ChainMap& g) {
  if (f.source() != g.source() || f.target() != g.target()) {
    throw ShapeError("find_homotopy: maps are not parallel");
  }
  const ChainComplex& a = f.source();
  const ChainComplex& b = f.target();
  const std::uint32_t pr = a.prime();
  LinearSystem sys(pr);
  const int top = std::max(a.top(), b.top());
  std::vector<std::size_t> h;
  for (int n = 0; n <= top; ++n) h.push_back(sys.add_unknown(b.dim(n + 1), a.dim(n)));
  for (int n = 0; n <= top; ++n) {
    std::vector<LinearSystem::Term> terms{
        {b.diff(n + 1), h[n], Matrix::identity(pr, a.dim(n))}};
    if (n >= 1) terms.push_back({Matrix::identity(pr, b.dim(n)), h[n - 1], a.diff(n)});
    sys.add_equation(terms, g.mat(n) - f.mat(n));
  }
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  return make_homotopy(f, g, *sol);
}

// -- random generation ------------------------------------------------------

ChainComplex random_complex(std::uint32_t p, std::mt19937_64& rng, const RandomSizes& sizes) {
  std::uniform_int_distribution<std::size_t> dim_dist(0, sizes.max_dim);
  const int top = std::uniform_int_distribution<int>(0, sizes.max_degree)(rng);
  std::vector<std::size_t> dims;
  for (int n = 0; n <= top; ++n) dims.push_back(dim_dist(rng));
  std::vector<Matrix> diffs;
  diffs.emplace_back(p, 0, dims[0]);
  for (int n = 1; n <= top; ++n) {
    // Columns of d_n must lie in ker d_{n−1}.
    const Matrix z = n == 1 ? Matrix::identity(p, dims[0]) : kernel_matrix(diffs[n - 1]);
    diffs.push_back(z * random_matrix(p, z.cols(), dims[n], rng));
  }
  return ChainComplex(p, dims, diffs);
}

LinearSystem::SolutionSpace chain_map_space(const ChainComplex& a, const ChainComplex& b) {
  const std::uint32_t pr = a.prime();
  LinearSystem sys(pr);
  const int top = std::max(a.top(), b.top());
  std::vector<std::size_t> f;
  for (int n = 0; n <= top; ++n) f.push_back(sys.add_unknown(b.dim(n), a.dim(n)));
  for (int n = 1; n <= top; ++n) {
    sys.add_equation({{b.diff(n), f[n], Matrix::identity(pr, a.dim(n))},
                      {Matrix::scalar(pr, b.dim(n - 1), -1), f[n - 1], a.diff(n)}},
                     Matrix(pr, b.dim(n - 1), a.dim(n)));
  }
  return *sys.solution_space();
}

ChainMap random_chain_map(const ChainComplex& a, const ChainComplex& b, std::mt19937_64& rng) {
  return ChainMap(a, b, sample(chain_map_space(a, b), rng));
}

}  // namespace stab
