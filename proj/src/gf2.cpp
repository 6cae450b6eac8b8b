#include "psfam/gf2.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace psfam::gf2 {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw DimensionMismatch("dimension must be in [1, " + std::to_string(kMaxDim) +
                            "], got " + std::to_string(dim));
  }
}

std::uint64_t mask_of(int dim) {
  return dim == 64 ? ~0ull : (1ull << dim) - 1;
}

}  // namespace

BitVector::BitVector(int dim, std::uint64_t label) : dim_(dim), bits_(label) {
  check_dim(dim);
  if (label > mask_of(dim)) {
    throw DimensionMismatch("label " + std::to_string(label) + " does not fit in " +
                            std::to_string(dim) + " bits");
  }
}

bool BitVector::component(int a) const {
  if (a < 0 || a >= dim_) throw DimensionMismatch("component index out of range");
  return (bits_ >> (dim_ - 1 - a)) & 1u;
}

BitVector& BitVector::operator^=(const BitVector& o) {
  if (o.dim_ != dim_) throw DimensionMismatch("BitVector dims differ");
  bits_ ^= o.bits_;
  return *this;
}

bool dot(const BitVector& a, const BitVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("BitVector dims differ");
  return std::popcount(a.label() & b.label()) & 1u;
}

BitMatrix::BitMatrix(int dim) : dim_(dim), rows_(static_cast<std::size_t>(dim), 0) {
  check_dim(dim);
}

BitMatrix BitMatrix::identity(int dim) {
  BitMatrix m(dim);
  for (int r = 0; r < dim; ++r) m.rows_[static_cast<std::size_t>(r)] = 1ull << (dim - 1 - r);
  return m;
}

BitMatrix BitMatrix::from_rows(int dim, std::vector<std::uint64_t> row_labels) {
  check_dim(dim);
  if (static_cast<int>(row_labels.size()) != dim) {
    throw DimensionMismatch("expected " + std::to_string(dim) + " rows");
  }
  BitMatrix m(dim);
  for (int r = 0; r < dim; ++r) {
    if (row_labels[static_cast<std::size_t>(r)] > mask_of(dim)) {
      throw DimensionMismatch("row label does not fit the dimension");
    }
    m.rows_[static_cast<std::size_t>(r)] = row_labels[static_cast<std::size_t>(r)];
  }
  return m;
}

bool BitMatrix::at(int r, int c) const {
  if (r < 0 || r >= dim_ || c < 0 || c >= dim_) {
    throw DimensionMismatch("matrix index out of range");
  }
  return (rows_[static_cast<std::size_t>(r)] >> (dim_ - 1 - c)) & 1u;
}

void BitMatrix::set(int r, int c, bool value) {
  if (r < 0 || r >= dim_ || c < 0 || c >= dim_) {
    throw DimensionMismatch("matrix index out of range");
  }
  const std::uint64_t bit = 1ull << (dim_ - 1 - c);
  if (value) {
    rows_[static_cast<std::size_t>(r)] |= bit;
  } else {
    rows_[static_cast<std::size_t>(r)] &= ~bit;
  }
}

BitVector BitMatrix::row(int r) const {
  if (r < 0 || r >= dim_) throw DimensionMismatch("row index out of range");
  return BitVector(dim_, rows_[static_cast<std::size_t>(r)]);
}

BitVector BitMatrix::apply(const BitVector& v) const {
  if (v.dim() != dim_) throw DimensionMismatch("matrix/vector dims differ");
  return BitVector(dim_, apply_label(v.label()));
}

std::uint64_t BitMatrix::apply_label(std::uint64_t v) const {
  std::uint64_t out = 0;
  for (int r = 0; r < dim_; ++r) {
    if (std::popcount(rows_[static_cast<std::size_t>(r)] & v) & 1) {
      out |= 1ull << (dim_ - 1 - r);
    }
  }
  return out;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(dim_);
  for (int r = 0; r < dim_; ++r) {
    std::uint64_t row = rows_[static_cast<std::size_t>(r)];
    while (row) {
      const int bit = std::countr_zero(row);
      row &= row - 1;
      t.rows_[static_cast<std::size_t>(dim_ - 1 - bit)] |= 1ull << (dim_ - 1 - r);
    }
  }
  return t;
}

BitMatrix BitMatrix::pow(std::uint64_t e) const {
  BitMatrix result = identity(dim_);
  BitMatrix base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

bool BitMatrix::is_symmetric() const { return *this == transposed(); }

bool BitMatrix::is_identity() const { return *this == identity(dim_); }

bool BitMatrix::is_invertible() const {
  std::vector<std::uint64_t> work = rows_;
  int rank = 0;
  for (int c = 0; c < dim_ && rank < dim_; ++c) {
    const std::uint64_t bit = 1ull << (dim_ - 1 - c);
    int pivot = -1;
    for (int r = rank; r < dim_; ++r) {
      if (work[static_cast<std::size_t>(r)] & bit) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return false;
    std::swap(work[static_cast<std::size_t>(pivot)], work[static_cast<std::size_t>(rank)]);
    for (int r = 0; r < dim_; ++r) {
      if (r != rank && (work[static_cast<std::size_t>(r)] & bit)) {
        work[static_cast<std::size_t>(r)] ^= work[static_cast<std::size_t>(rank)];
      }
    }
    ++rank;
  }
  return rank == dim_;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("matrix dims differ");
  BitMatrix out(a.dim_);
  for (int r = 0; r < a.dim_; ++r) {
    std::uint64_t acc = 0;
    std::uint64_t row = a.rows_[static_cast<std::size_t>(r)];
    while (row) {
      const int bit = std::countr_zero(row);
      row &= row - 1;
      acc ^= b.rows_[static_cast<std::size_t>(a.dim_ - 1 - bit)];
    }
    out.rows_[static_cast<std::size_t>(r)] = acc;
  }
  return out;
}

BitMatrix operator+(const BitMatrix& a, const BitMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("matrix dims differ");
  BitMatrix out(a.dim_);
  for (int r = 0; r < a.dim_; ++r) {
    out.rows_[static_cast<std::size_t>(r)] =
        a.rows_[static_cast<std::size_t>(r)] ^ b.rows_[static_cast<std::size_t>(r)];
  }
  return out;
}

std::string BitMatrix::str() const {
  std::ostringstream os;
  for (int r = 0; r < dim_; ++r) {
    if (r) os << '\n';
    os << '[';
    for (int c = 0; c < dim_; ++c) {
      if (c) os << ", ";
      os << (at(r, c) ? '1' : '0');
    }
    os << ']';
  }
  return os.str();
}

std::string to_json(const BitMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (int r = 0; r < m.dim(); ++r) {
    if (r) os << ',';
    os << '[';
    for (int c = 0; c < m.dim(); ++c) {
      if (c) os << ',';
      os << (m.at(r, c) ? 1 : 0);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

BitMatrix mat_inverse(const BitMatrix& m) {
  const int dim = m.dim();
  std::vector<std::uint64_t> left(static_cast<std::size_t>(dim));
  std::vector<std::uint64_t> right(static_cast<std::size_t>(dim));
  for (int r = 0; r < dim; ++r) {
    left[static_cast<std::size_t>(r)] = m.row_label(r);
    right[static_cast<std::size_t>(r)] = 1ull << (dim - 1 - r);
  }
  for (int c = 0; c < dim; ++c) {
    const std::uint64_t bit = 1ull << (dim - 1 - c);
    int pivot = -1;
    for (int r = c; r < dim; ++r) {
      if (left[static_cast<std::size_t>(r)] & bit) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw SingularMatrix("matrix has rank < dim");
    std::swap(left[static_cast<std::size_t>(pivot)], left[static_cast<std::size_t>(c)]);
    std::swap(right[static_cast<std::size_t>(pivot)], right[static_cast<std::size_t>(c)]);
    for (int r = 0; r < dim; ++r) {
      if (r != c && (left[static_cast<std::size_t>(r)] & bit)) {
        left[static_cast<std::size_t>(r)] ^= left[static_cast<std::size_t>(c)];
        right[static_cast<std::size_t>(r)] ^= right[static_cast<std::size_t>(c)];
      }
    }
  }
  return BitMatrix::from_rows(dim, std::move(right));
}

PolyGF2::PolyGF2(int degree, std::uint64_t coeffs) : degree_(degree), coeffs_(coeffs) {
  check_dim(degree);
  if (!((coeffs >> degree) & 1u)) throw DimensionMismatch("polynomial is not monic");
  if (coeffs >> (degree + 1)) throw DimensionMismatch("coefficients exceed the degree");
}

namespace {

// Remainder of a mod g over GF(2); g != 0.
std::uint64_t poly_mod(std::uint64_t a, std::uint64_t g) {
  const int gd = 63 - std::countl_zero(g);
  while (a) {
    const int ad = 63 - std::countl_zero(a);
    if (ad < gd) break;
    a ^= g << (ad - gd);
  }
  return a;
}

// a * b mod f, f monic of degree m.
std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t f, int m) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if ((a >> m) & 1u) a ^= f;
  }
  return r;
}

std::uint64_t poly_powmod(std::uint64_t base, std::uint64_t e, std::uint64_t f, int m) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1u) r = poly_mulmod(r, base, f, m);
    base = poly_mulmod(base, base, f, m);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_irreducible(const PolyGF2& p) {
  const int m = p.degree();
  if (m == 1) return true;
  for (int d = 1; d <= m / 2; ++d) {
    for (std::uint64_t g = 1ull << d; g < (2ull << d); ++g) {
      if (poly_mod(p.coeffs(), g) == 0) return false;
    }
  }
  return true;
}

bool has_full_period(const PolyGF2& p) {
  const int m = p.degree();
  const std::uint64_t n = (1ull << m) - 1;
  if (poly_powmod(2, n, p.coeffs(), m) != 1) return false;
  for (std::uint64_t q : prime_factors(n)) {
    if (poly_powmod(2, n / q, p.coeffs(), m) == 1) return false;
  }
  return true;
}

PolyGF2 primitive_poly(int m) {
  check_dim(m);
  if (m == 1) return PolyGF2(1, 0b11);  // x + 1; bare x is excluded
  // Constant term must be 1, otherwise x divides the polynomial.
  for (std::uint64_t c = (1ull << m) | 1u; c < (2ull << m); c += 2) {
    PolyGF2 cand(m, c);
    if (is_irreducible(cand) && has_full_period(cand)) return cand;
  }
  throw std::logic_error("no primitive polynomial found");  // unreachable
}

BitMatrix companion_matrix(const PolyGF2& p) {
  const int m = p.degree();
  BitMatrix c(m);
  for (int r = 0; r + 1 < m; ++r) c.set(r, r + 1, true);
  for (int col = 0; col < m; ++col) c.set(m - 1, col, p.coeff(col));
  return c;
}

BitMatrix build_d(const PolyGF2& p) {
  const int m = p.degree();
  std::vector<int> b(static_cast<std::size_t>(m));
  b[0] = 1;
  for (int i = 1; i < m; ++i) {
    int s = 0;
    for (int k = 0; k < i; ++k) s ^= (p.coeff(m - i + k) ? b[static_cast<std::size_t>(k)] : 0);
    b[static_cast<std::size_t>(i)] = s;
  }
  BitMatrix d(m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      if (r + c >= m - 1) d.set(r, c, b[static_cast<std::size_t>(r + c - (m - 1))]);
    }
  }
  return d;
}

BitMatrix build_lambda(const BitMatrix& d) {
  const int m = d.dim();
  int a = -1;
  for (int i = 0; i < m; ++i) {
    if (d.at(i, i)) {
      a = i;
      break;
    }
  }
  if (a < 0) throw NoUnitDiagonal("D has no unit diagonal entry");
  BitMatrix lambda = BitMatrix::identity(m);
  for (int j = 0; j < m; ++j) {
    if (j != a && !d.at(j, j)) lambda.set(a, j, true);
  }
  return lambda;
}

namespace {

bool submatrix_invertible(const BitMatrix& m, const std::vector<int>& idx) {
  const int k = static_cast<int>(idx.size());
  BitMatrix sub(k);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      sub.set(r, c, m.at(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]));
    }
  }
  return sub.is_invertible();
}

}  // namespace

BitMatrix cholesky_gf2(const BitMatrix& m) {
  const int dim = m.dim();
  if (!m.is_symmetric()) throw DecompositionFailure("input is not symmetric");
  for (int i = 0; i < dim; ++i) {
    if (!m.at(i, i)) throw DecompositionFailure("diagonal entry is not 1");
  }
  if (!m.is_invertible()) throw DecompositionFailure("input is singular");

  // Build the peel order: order[s] is removed at step s (last position first).
  std::vector<int> order(static_cast<std::size_t>(dim));
  std::vector<int> live(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) live[static_cast<std::size_t>(i)] = i;
  for (int size = dim; size >= 2; --size) {
    int chosen = -1;
    std::vector<int> rest(live.begin(), live.end() - 1);
    if (submatrix_invertible(m, rest)) {
      chosen = live.back();
    } else {
      for (int cand : live) {
        rest.clear();
        for (int i : live) {
          if (i != cand) rest.push_back(i);
        }
        if (submatrix_invertible(m, rest)) {
          chosen = cand;
          break;
        }
      }
    }
    if (chosen < 0) throw DecompositionFailure("no invertible principal minor");
    order[static_cast<std::size_t>(size - 1)] = chosen;
    live.erase(std::find(live.begin(), live.end(), chosen));
  }
  order[0] = live[0];

  // Unit lower-triangular factor of the permuted matrix; row s is filled by
  // forward substitution against the border column eta.
  std::vector<std::vector<int>> lt(static_cast<std::size_t>(dim),
                                   std::vector<int>(static_cast<std::size_t>(dim), 0));
  lt[0][0] = 1;
  for (int s = 1; s < dim; ++s) {
    std::vector<int> w(static_cast<std::size_t>(s));
    for (int r = 0; r < s; ++r) {
      int acc = m.at(order[static_cast<std::size_t>(r)], order[static_cast<std::size_t>(s)]) ? 1 : 0;
      for (int c = 0; c < r; ++c) {
        acc ^= lt[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] &
               w[static_cast<std::size_t>(c)];
      }
      w[static_cast<std::size_t>(r)] = acc;
    }
    int par = 0;
    for (int v : w) par ^= v;
    if (par != 0) throw DecompositionFailure("border parity is odd");
    for (int c = 0; c < s; ++c) lt[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)] = w[static_cast<std::size_t>(c)];
    lt[static_cast<std::size_t>(s)][static_cast<std::size_t>(s)] = 1;
  }

  // Undo the permutation on rows: row i of L is the peeled row of index i.
  std::vector<int> pos(static_cast<std::size_t>(dim));
  for (int p = 0; p < dim; ++p) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] = p;
  BitMatrix l(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      l.set(i, j, lt[static_cast<std::size_t>(pos[static_cast<std::size_t>(i)])][static_cast<std::size_t>(j)] != 0);
    }
  }
  return l;
}

BitMatrix build_symmetric_generator(int m) {
  check_dim(m);
  const PolyGF2 p = primitive_poly(m);
  const BitMatrix c = companion_matrix(p);
  const BitMatrix d = build_d(p);
  const BitMatrix lambda = build_lambda(d);
  const BitMatrix mm = lambda.transposed() * d * lambda;
  const BitMatrix l = cholesky_gf2(mm);
  const BitMatrix b = mat_inverse(lambda.transposed()) * l;
  const BitMatrix a = mat_inverse(b) * c * b;
  if (!a.is_symmetric()) throw DecompositionFailure("generator is not symmetric");
  return a;
}

}  // namespace psfam::gf2
