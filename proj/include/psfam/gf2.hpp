#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace psfam::gf2 {

inline constexpr int kMaxDim = 32;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoUnitDiagonal : std::logic_error {
  using std::logic_error::logic_error;
};

struct DecompositionFailure : std::logic_error {
  using std::logic_error::logic_error;
};

// Vector over GF(2) with 1 <= dim <= kMaxDim components.
//
// A vector is identified with the integer label whose binary digits are its
// components: component a is bit (dim-1-a) of the label, so label 3 at dim 4
// reads (0,0,1,1) top to bottom.  Addition mod 2 is label XOR.
class BitVector {
 public:
  BitVector(int dim, std::uint64_t label);

  int dim() const { return dim_; }
  std::uint64_t label() const { return bits_; }
  bool component(int a) const;

  BitVector& operator^=(const BitVector& o);
  friend BitVector operator^(BitVector a, const BitVector& b) {
    a ^= b;
    return a;
  }
  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  int dim_;
  std::uint64_t bits_;
};

// <a, b> over GF(2) (parity of the overlap).
bool dot(const BitVector& a, const BitVector& b);

// Square bit matrix; each row is stored as a label word (see BitVector).
// Over GF(2) subtraction equals addition, so A - B is spelled A + B here.
class BitMatrix {
 public:
  explicit BitMatrix(int dim);
  static BitMatrix identity(int dim);
  static BitMatrix from_rows(int dim, std::vector<std::uint64_t> row_labels);

  int dim() const { return dim_; }
  bool at(int r, int c) const;
  void set(int r, int c, bool value);
  std::uint64_t row_label(int r) const { return rows_[static_cast<std::size_t>(r)]; }
  BitVector row(int r) const;

  BitVector apply(const BitVector& v) const;
  std::uint64_t apply_label(std::uint64_t v) const;

  BitMatrix transposed() const;
  BitMatrix pow(std::uint64_t e) const;
  bool is_symmetric() const;
  bool is_identity() const;
  bool is_invertible() const;

  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);
  friend BitMatrix operator+(const BitMatrix& a, const BitMatrix& b);
  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  // One line per row, e.g. "[1, 1]\n[1, 0]".
  std::string str() const;

 private:
  int dim_;
  std::vector<std::uint64_t> rows_;
};

BitMatrix mat_inverse(const BitMatrix& m);

// Monic polynomial over GF(2); coefficient a_i sits at bit i, a_degree = 1.
class PolyGF2 {
 public:
  PolyGF2(int degree, std::uint64_t coeffs);

  int degree() const { return degree_; }
  std::uint64_t coeffs() const { return coeffs_; }
  bool coeff(int i) const { return (coeffs_ >> i) & 1u; }

  friend bool operator==(const PolyGF2&, const PolyGF2&) = default;

 private:
  int degree_;
  std::uint64_t coeffs_;
};

// Trial division against every monic polynomial of degree <= m/2.
bool is_irreducible(const PolyGF2& p);

// True when x has multiplicative order 2^m - 1 modulo p, i.e. the companion
// matrix cycles through all nonzero vectors.
bool has_full_period(const PolyGF2& p);

// Smallest (by integer encoding of the coefficients) monic degree-m
// polynomial that is irreducible and has full period.  Irreducibility alone
// is not enough: a non-primitive choice (e.g. x^8+x^4+x^3+x+1) makes the
// companion-matrix orbit split into several short cycles.
PolyGF2 primitive_poly(int m);

// Rows 0..m-2 carry a single 1 on the superdiagonal; the bottom row carries
// (a_0 ... a_{m-1}).
BitMatrix companion_matrix(const PolyGF2& p);

// Symmetric anti-triangular D with constant anti-diagonals b_0..b_{m-1},
// b_0 = 1, b_i = sum_{k<i} a_{m-i+k} b_k; satisfies C D = D C^T.
BitMatrix build_d(const PolyGF2& p);

// Lambda = I plus one corrective row so that Lambda^T D Lambda has a unit
// diagonal.  The pivot row is the smallest index a with D[a][a] = 1.
BitMatrix build_lambda(const BitMatrix& d);

// Factor a symmetric invertible unit-diagonal M as L L^T with L invertible.
// Peels one index per step through a chain of invertible principal minors;
// indices are peeled in descending order, falling back to the smallest index
// whose removal leaves an invertible minor.  The accumulated permutation is
// folded into L, so L is invertible but not necessarily triangular.
BitMatrix cholesky_gf2(const BitMatrix& m);

// Full chain: primitive_poly -> companion_matrix -> build_d -> build_lambda
// -> cholesky_gf2 -> B = Lambda^{-T} L -> A = B^{-1} C B.  A is symmetric,
// has order 2^m - 1, and A^i + A^j is invertible for distinct powers.
BitMatrix build_symmetric_generator(int m);

std::string to_json(const BitMatrix& m);

}  // namespace psfam::gf2
