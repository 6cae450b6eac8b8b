#include "psfam/partition.hpp"

#include <bit>
#include <ostream>
#include <sstream>

namespace psfam {

Solution::Solution(int m, gf2::BitMatrix a) : m_(m), n_(1ull << m), a_(std::move(a)) {}

Solution Solution::build(int m) {
  if (m < 1 || m > kMaxSolutionQubits) {
    throw BadLength("solution qubit count must be in [1, " +
                    std::to_string(kMaxSolutionQubits) + "], got " + std::to_string(m));
  }
  Solution sol(m, gf2::build_symmetric_generator(m));
  const std::uint64_t n = sol.n_;

  sol.power_rows_.resize((n - 1) * static_cast<std::uint64_t>(m));
  gf2::BitMatrix cur = sol.a_;
  for (std::uint64_t k = 1; k < n; ++k) {
    for (int r = 0; r < m; ++r) {
      sol.power_rows_[(k - 1) * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(r)] =
          cur.row_label(r);
    }
    if (k + 1 < n) cur = cur * sol.a_;
  }
  if (!cur.is_identity()) throw gf2::DecompositionFailure("generator order is not 2^m - 1");

  sol.q_.assign(n, 0);
  sol.q_inv_.assign(n, 0);
  std::uint64_t v = 1;
  for (std::uint64_t k = 1; k < n; ++k) {
    v = sol.a_.apply_label(v);
    sol.q_[k] = v;
    sol.q_inv_[v] = k;
  }
  if (v != 1) throw gf2::DecompositionFailure("orbit of v_1 did not close");
  return sol;
}

gf2::BitMatrix Solution::power(std::uint64_t k) const {
  if (k < 1 || k >= n_) throw BadFamilyId("power index out of range");
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(m_));
  for (int r = 0; r < m_; ++r) rows[static_cast<std::size_t>(r)] = power_row(k, r);
  return gf2::BitMatrix::from_rows(m_, std::move(rows));
}

std::uint64_t Solution::power_row(std::uint64_t k, int r) const {
  if (k < 1 || k >= n_ || r < 0 || r >= m_) throw BadFamilyId("power row out of range");
  return power_rows_[(k - 1) * static_cast<std::uint64_t>(m_) + static_cast<std::uint64_t>(r)];
}

std::uint64_t Solution::permute(std::uint64_t k, std::uint64_t i) const {
  if (k < 1 || k >= n_) throw BadFamilyId("permutation index out of range");
  const std::uint64_t* rows = &power_rows_[(k - 1) * static_cast<std::uint64_t>(m_)];
  std::uint64_t out = 0;
  for (int r = 0; r < m_; ++r) {
    if (std::popcount(rows[r] & i) & 1) out |= 1ull << (m_ - 1 - r);
  }
  return out;
}

std::uint64_t Solution::q(std::uint64_t k) const { return q_[k]; }

std::uint64_t Solution::q_inv(std::uint64_t i) const { return q_inv_[i]; }

std::vector<PhasedPauli> Solution::family_members(FamilyId f) const {
  if (f.value > n_) throw BadFamilyId("family id out of range");
  std::vector<PhasedPauli> out;
  out.reserve(n_ - 1);
  for (std::uint64_t i = 1; i < n_; ++i) {
    if (f.value == 0) {
      out.push_back(PhasedPauli::hermitian(PauliString::z_string(m_, i)));
    } else if (f.value == n_) {
      out.push_back(PhasedPauli::hermitian(PauliString::x_string(m_, i)));
    } else {
      out.push_back(PhasedPauli::hermitian(PauliString(m_, permute(f.value, i), i)));
    }
  }
  return out;
}

FamilyId Solution::lookup_family(const PauliString& p) const {
  if (p.qubits() != m_) throw QubitMismatch("string qubit count does not match the solution");
  const auto [i, j, y] = p.xz_decompose();
  if (j == 0) return {0};  // covers the identity by convention
  if (i == 0) return {n_};
  const std::uint64_t k = (q_inv_[j] + (n_ - 1) - q_inv_[i]) % (n_ - 1);
  return {k == 0 ? n_ - 1 : k};
}

void Solution::write_properties(std::ostream& os) const {
  os << "Qubits: " << m_ << '\n';
  os << "Generating Matrix:\n" << a_.str() << '\n';
  os << '\n';
  for (std::uint64_t f = 1; f <= n_; ++f) {
    for (std::uint64_t i = 1; i < n_; ++i) {
      if (i > 1) os << ',';
      const std::uint64_t x = (f == n_) ? i : permute(f, i);
      const std::uint64_t z = (f == n_) ? 0 : i;
      os << PauliString(m_, x, z).str();
    }
    os << '\n';
  }
  os << PauliString::identity(m_).str();
  for (std::uint64_t i = 1; i < n_; ++i) os << ',' << PauliString::z_string(m_, i).str();
  os << '\n';
}

std::string Solution::properties() const {
  std::ostringstream os;
  write_properties(os);
  return os.str();
}

std::size_t Solution::table_bytes() const {
  return sizeof(std::uint64_t) * (power_rows_.size() + q_.size() + q_inv_.size());
}

std::map<FamilyId, std::vector<WeightedTerm>> group_operator(const Solution& sol,
                                                             const WeightedPauliSum& h) {
  if (h.qubits() != sol.qubits()) {
    throw QubitMismatch("operator qubit count does not match the solution");
  }
  std::map<FamilyId, std::vector<WeightedTerm>> groups;
  for (const WeightedTerm& t : h.terms()) {
    groups[sol.lookup_family(t.pauli)].push_back(t);
  }
  return groups;
}

std::vector<gf2::BitMatrix> conjugate_solution(const Solution& sol, const gf2::BitMatrix& delta) {
  if (delta.dim() != sol.qubits()) throw gf2::DimensionMismatch("delta dim does not match");
  if (!delta.is_invertible()) throw gf2::SingularMatrix("delta is singular");
  const gf2::BitMatrix dt = delta.transposed();
  std::vector<gf2::BitMatrix> out;
  out.reserve(sol.n() - 1);
  for (std::uint64_t k = 1; k < sol.n(); ++k) {
    out.push_back(delta * sol.power(k) * dt);
  }
  return out;
}

}  // namespace psfam
