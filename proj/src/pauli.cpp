#include "psfam/pauli.hpp"

#include <bit>

namespace psfam {

namespace {

void check_qubits(int m) {
  if (m < 1 || m > kMaxQubits) {
    throw BadLength("qubit count must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                    std::to_string(m));
  }
}

std::uint64_t mask_of(int m) { return m == 64 ? ~0ull : (1ull << m) - 1; }

}  // namespace

PauliString::PauliString(int m, std::uint64_t x_mask, std::uint64_t z_mask)
    : m_(m), x_(x_mask), z_(z_mask) {
  check_qubits(m);
  if (x_mask > mask_of(m) || z_mask > mask_of(m)) {
    throw QubitMismatch("mask does not fit in " + std::to_string(m) + " bits");
  }
}

PauliString PauliString::identity(int m) { return PauliString(m, 0, 0); }

PauliString PauliString::parse(std::string_view text) {
  const int m = static_cast<int>(text.size());
  check_qubits(m);
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (int a = 0; a < m; ++a) {
    const std::uint64_t bit = 1ull << (m - 1 - a);
    switch (text[static_cast<std::size_t>(a)]) {
      case 'I':
        break;
      case 'X':
        x |= bit;
        break;
      case 'Z':
        z |= bit;
        break;
      case 'Y':
        x |= bit;
        z |= bit;
        break;
      default:
        throw BadCharacter("invalid Pauli character '" +
                           std::string(1, text[static_cast<std::size_t>(a)]) + "' at position " +
                           std::to_string(a));
    }
  }
  return PauliString(m, x, z);
}

PauliString PauliString::x_string(int m, std::uint64_t label) { return PauliString(m, label, 0); }

PauliString PauliString::z_string(int m, std::uint64_t label) { return PauliString(m, 0, label); }

char PauliString::at(int pos) const {
  if (pos < 0 || pos >= m_) throw QubitMismatch("position out of range");
  const std::uint64_t bit = 1ull << (m_ - 1 - pos);
  const bool x = x_ & bit;
  const bool z = z_ & bit;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

std::string PauliString::str() const {
  std::string s(static_cast<std::size_t>(m_), 'I');
  for (int a = 0; a < m_; ++a) s[static_cast<std::size_t>(a)] = at(a);
  return s;
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

int PauliString::y_count() const { return std::popcount(x_ & z_); }

PauliString::XzParts PauliString::xz_decompose() const { return {z_, x_, y_count()}; }

bool commutes(const PauliString& p, const PauliString& q) {
  if (p.qubits() != q.qubits()) throw QubitMismatch("Pauli strings act on different qubit counts");
  const int anti = std::popcount(p.x_mask() & q.z_mask()) + std::popcount(p.z_mask() & q.x_mask());
  return (anti & 1) == 0;
}

bool qwc_commutes(const PauliString& p, const PauliString& q) {
  if (p.qubits() != q.qubits()) throw QubitMismatch("Pauli strings act on different qubit counts");
  const std::uint64_t overlap = (p.x_mask() | p.z_mask()) & (q.x_mask() | q.z_mask());
  // On shared support the characters must agree in both mask components.
  return ((p.x_mask() ^ q.x_mask()) & overlap) == 0 && ((p.z_mask() ^ q.z_mask()) & overlap) == 0;
}

PhasedPauli::PhasedPauli(PauliString pauli, int phase_exp)
    : pauli_(std::move(pauli)), phase_exp_(((phase_exp % 4) + 4) % 4) {}

PhasedPauli PhasedPauli::hermitian(const PauliString& p) {
  return PhasedPauli(p, p.y_count() % 4);
}

std::complex<double> PhasedPauli::phase() const {
  static const std::complex<double> table[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  return table[phase_exp_];
}

PhasedPauli multiply(const PhasedPauli& p, const PhasedPauli& q) {
  const PauliString& a = p.pauli();
  const PauliString& b = q.pauli();
  if (a.qubits() != b.qubits()) throw QubitMismatch("Pauli strings act on different qubit counts");
  // z_a1 x_b1 z_a2 x_b2: moving x_b1 past z_a2 flips sign once per shared bit,
  // and a sign is (-i)^2.
  const int swaps = std::popcount(a.x_mask() & b.z_mask());
  const int exp = p.phase_exp() + q.phase_exp() + 2 * swaps;
  return PhasedPauli(PauliString(a.qubits(), a.x_mask() ^ b.x_mask(), a.z_mask() ^ b.z_mask()),
                     exp);
}

WeightedPauliSum::WeightedPauliSum(int m) : m_(m) { check_qubits(m); }

void WeightedPauliSum::add_term(double coeff, const PauliString& p) {
  if (p.qubits() != m_) throw QubitMismatch("term qubit count does not match the operator");
  if (p.is_identity()) {
    identity_ += coeff;
    return;
  }
  if (coeff == 0.0) return;
  const std::uint64_t key = (p.x_mask() << kMaxQubits) | p.z_mask();
  auto it = index_.find(key);
  if (it == index_.end()) {
    index_.emplace(key, terms_.size());
    terms_.push_back({coeff, p});
    return;
  }
  terms_[it->second].coeff += coeff;
  if (terms_[it->second].coeff == 0.0) {
    // Exact cancellation: drop the term to keep coefficients nonzero.
    const std::size_t gone = it->second;
    terms_.erase(terms_.begin() + static_cast<std::ptrdiff_t>(gone));
    index_.erase(it);
    for (auto& [k, idx] : index_) {
      if (idx > gone) --idx;
    }
  }
}

}  // namespace psfam
