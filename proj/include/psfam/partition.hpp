#pragma once

#include <iosfwd>
#include <map>

#include "psfam/gf2.hpp"
#include "psfam/pauli.hpp"

namespace psfam {

struct BadFamilyId : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Family index for an m-qubit perfect solution: 0 is the z family, N = 2^m is
// the x family, and 1..N-1 is the family generated by A^value.
struct FamilyId {
  std::uint64_t value = 0;
  friend auto operator<=>(const FamilyId&, const FamilyId&) = default;
};

// A perfect partition of the 4^m - 1 non-identity Pauli strings into 2^m + 1
// commuting families, backed by the symmetric generator A.  Immutable after
// build; lookups and enumerations are safe to run concurrently.
class Solution {
 public:
  static constexpr int kMaxSolutionQubits = 16;

  static Solution build(int m);

  int qubits() const { return m_; }
  std::uint64_t n() const { return n_; }                    // N = 2^m
  std::uint64_t family_count() const { return n_ + 1; }
  const gf2::BitMatrix& generator() const { return a_; }

  gf2::BitMatrix power(std::uint64_t k) const;              // A^k, 1 <= k <= N-1
  std::uint64_t power_row(std::uint64_t k, int r) const;    // row label of A^k
  std::uint64_t permute(std::uint64_t k, std::uint64_t i) const;  // P^(k)(i)
  std::uint64_t q(std::uint64_t k) const;                   // Q(k) = P^(k)(1)
  std::uint64_t q_inv(std::uint64_t i) const;

  // Members of a family in ascending z-row order (families 1..N-1 list
  // z_i x_{P^(f)(i)} for i = 1..N-1; the z/x families list z_i / x_i).  The
  // identity string is not a member of any family.
  std::vector<PhasedPauli> family_members(FamilyId f) const;

  // Constant-time family lookup.  The all-identity string reports the z
  // family by convention.
  FamilyId lookup_family(const PauliString& p) const;

  // Report in the published format: qubit count, generating matrix, blank
  // line, one family per line with the z family last behind the identity.
  std::string properties() const;
  void write_properties(std::ostream& os) const;

  // Bytes held by the cached power and lookup tables (benchmark proxy).
  std::size_t table_bytes() const;

 private:
  Solution(int m, gf2::BitMatrix a);

  int m_;
  std::uint64_t n_;
  gf2::BitMatrix a_;
  std::vector<std::uint64_t> power_rows_;  // (N-1) blocks of m row labels
  std::vector<std::uint64_t> q_;           // 1-based, q_[0] unused
  std::vector<std::uint64_t> q_inv_;
};

// Assign every term of h to its family; empty families are omitted.
std::map<FamilyId, std::vector<WeightedTerm>> group_operator(const Solution& sol,
                                                             const WeightedPauliSum& h);

// The transformed matrix set { delta A^k delta^T }.  Still symmetric with
// pairwise-invertible differences, but no longer cyclic powers, so no lookup
// tables are built.  Exposed for experimentation.
std::vector<gf2::BitMatrix> conjugate_solution(const Solution& sol, const gf2::BitMatrix& delta);

}  // namespace psfam
