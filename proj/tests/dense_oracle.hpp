#pragma once

// Brute-force dense-matrix oracle for the tests.  Everything is built from
// explicit 2x2 tensor factors and naive matrix algebra, independent of the
// bit-mask implementation it checks.

#include <cassert>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "psfam/measure.hpp"

namespace oracle {

using cd = std::complex<double>;

struct Mat {
  std::size_t n = 0;
  std::vector<cd> a;

  Mat() = default;
  explicit Mat(std::size_t n_) : n(n_), a(n_ * n_, cd{0.0, 0.0}) {}
  cd& at(std::size_t r, std::size_t c) { return a[r * n + c]; }
  const cd& at(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

inline Mat identity(std::size_t n) {
  Mat m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

inline Mat kron(const Mat& x, const Mat& y) {
  Mat out(x.n * y.n);
  for (std::size_t r1 = 0; r1 < x.n; ++r1)
    for (std::size_t c1 = 0; c1 < x.n; ++c1)
      for (std::size_t r2 = 0; r2 < y.n; ++r2)
        for (std::size_t c2 = 0; c2 < y.n; ++c2)
          out.at(r1 * y.n + r2, c1 * y.n + c2) = x.at(r1, c1) * y.at(r2, c2);
  return out;
}

inline Mat mul(const Mat& x, const Mat& y) {
  assert(x.n == y.n);
  Mat out(x.n);
  for (std::size_t r = 0; r < x.n; ++r)
    for (std::size_t k = 0; k < x.n; ++k) {
      const cd v = x.at(r, k);
      if (v == cd{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < x.n; ++c) out.at(r, c) += v * y.at(k, c);
    }
  return out;
}

inline Mat dagger(const Mat& x) {
  Mat out(x.n);
  for (std::size_t r = 0; r < x.n; ++r)
    for (std::size_t c = 0; c < x.n; ++c) out.at(r, c) = std::conj(x.at(c, r));
  return out;
}

inline double max_abs_diff(const Mat& x, const Mat& y) {
  assert(x.n == y.n);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i) worst = std::max(worst, std::abs(x.a[i] - y.a[i]));
  return worst;
}

inline Mat pauli_1q(char ch) {
  Mat m(2);
  switch (ch) {
    case 'I': m.at(0, 0) = 1; m.at(1, 1) = 1; break;
    case 'X': m.at(0, 1) = 1; m.at(1, 0) = 1; break;
    case 'Y': m.at(0, 1) = {0, -1}; m.at(1, 0) = {0, 1}; break;
    case 'Z': m.at(0, 0) = 1; m.at(1, 1) = -1; break;
    default: assert(false);
  }
  return m;
}

inline Mat pauli_matrix(const std::string& s) {
  Mat m = identity(1);
  for (char ch : s) m = kron(m, pauli_1q(ch));
  return m;
}

inline bool matrices_commute(const Mat& x, const Mat& y, double tol = 1e-12) {
  return max_abs_diff(mul(x, y), mul(y, x)) <= tol;
}

// Embed a gate into the full 2^m space from its own matrix definition.
inline Mat gate_matrix(const psfam::Gate& g, int m) {
  using psfam::GateKind;
  const std::size_t dim = 1ull << m;
  if (g.kind == GateKind::CX || g.kind == GateKind::CZ) {
    Mat out(dim);
    const std::size_t cbit = 1ull << (m - 1 - g.q0);
    const std::size_t tbit = 1ull << (m - 1 - g.q1);
    for (std::size_t k = 0; k < dim; ++k) {
      if (g.kind == GateKind::CX) {
        out.at((k & cbit) ? (k ^ tbit) : k, k) = 1.0;
      } else {
        out.at(k, k) = ((k & cbit) && (k & tbit)) ? -1.0 : 1.0;
      }
    }
    return out;
  }
  const double is2 = 1.0 / std::sqrt(2.0);
  Mat u(2);
  switch (g.kind) {
    case GateKind::S: u.at(0, 0) = 1; u.at(1, 1) = {0, 1}; break;
    case GateKind::H: u.at(0, 0) = is2; u.at(0, 1) = is2; u.at(1, 0) = is2; u.at(1, 1) = -is2; break;
    case GateKind::UY: u.at(0, 0) = is2; u.at(0, 1) = is2; u.at(1, 0) = -is2; u.at(1, 1) = is2; break;
    case GateKind::UYDG: u.at(0, 0) = is2; u.at(0, 1) = -is2; u.at(1, 0) = is2; u.at(1, 1) = is2; break;
    case GateKind::RY:
      u.at(0, 0) = std::cos(g.angle / 2); u.at(0, 1) = -std::sin(g.angle / 2);
      u.at(1, 0) = std::sin(g.angle / 2); u.at(1, 1) = std::cos(g.angle / 2);
      break;
    case GateKind::RZ:
      u.at(0, 0) = std::polar(1.0, -g.angle / 2); u.at(1, 1) = std::polar(1.0, g.angle / 2);
      break;
    default: assert(false);
  }
  Mat out = identity(1);
  for (int a = 0; a < m; ++a) out = kron(out, a == g.q0 ? u : identity(2));
  return out;
}

inline Mat circuit_unitary(const psfam::Circuit& c) {
  Mat u = identity(1ull << c.qubits());
  for (const psfam::Gate& g : c.gates()) u = mul(gate_matrix(g, c.qubits()), u);
  return u;
}

inline Mat from_pauli_sum(const psfam::WeightedPauliSum& h) {
  Mat out(1ull << h.qubits());
  for (std::size_t i = 0; i < out.n; ++i) out.at(i, i) = h.identity_coeff();
  for (const psfam::WeightedTerm& t : h.terms()) {
    const Mat p = pauli_matrix(t.pauli.str());
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += t.coeff * p.a[i];
  }
  return out;
}

inline Mat from_dense(const psfam::DenseMatrix& mat) {
  Mat out(mat.dim());
  for (std::size_t r = 0; r < out.n; ++r)
    for (std::size_t c = 0; c < out.n; ++c) out.at(r, c) = mat.at(r, c);
  return out;
}

inline cd expectation(const Mat& h, const std::vector<cd>& psi) {
  assert(h.n == psi.size());
  cd out = 0.0;
  for (std::size_t r = 0; r < h.n; ++r) {
    cd row = 0.0;
    for (std::size_t c = 0; c < h.n; ++c) row += h.at(r, c) * psi[c];
    out += std::conj(psi[r]) * row;
  }
  return out;
}

// Seeded random normalized state (plain LCG-free mt19937_64; test-local).
inline std::vector<cd> random_state(int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto u01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<cd> psi(1ull << m);
  double norm2 = 0.0;
  for (auto& a : psi) {
    a = {u01() * 2 - 1, u01() * 2 - 1};
    norm2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : psi) a *= inv;
  return psi;
}

}  // namespace oracle
