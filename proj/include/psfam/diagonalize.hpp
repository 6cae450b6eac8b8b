#pragma once

#include <span>

#include "psfam/partition.hpp"

namespace psfam {

struct PhaseNotReal : std::logic_error {
  using std::logic_error::logic_error;
};

struct TermNotInFamily : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnknownGate : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class GateKind { CX, CZ, S, H, UY, UYDG, RY, RZ };

// UY is the single-qubit unitary (1 + i sigma_y)/sqrt(2) = ry(-pi/2); UYDG is
// its inverse.  Two-qubit gates store control in q0 and target in q1.
struct Gate {
  GateKind kind;
  int q0 = 0;
  int q1 = -1;
  double angle = 0.0;

  static Gate cx(int control, int target) { return {GateKind::CX, control, target, 0.0}; }
  static Gate cz(int a, int b) { return {GateKind::CZ, a, b, 0.0}; }
  static Gate s(int target) { return {GateKind::S, target, -1, 0.0}; }
  static Gate h(int target) { return {GateKind::H, target, -1, 0.0}; }
  static Gate uy(int target) { return {GateKind::UY, target, -1, 0.0}; }
  static Gate uydg(int target) { return {GateKind::UYDG, target, -1, 0.0}; }
  static Gate ry(int target, double theta) { return {GateKind::RY, target, -1, theta}; }
  static Gate rz(int target, double theta) { return {GateKind::RZ, target, -1, theta}; }

  bool two_qubit() const { return kind == GateKind::CX || kind == GateKind::CZ; }
  friend bool operator==(const Gate&, const Gate&) = default;
};

class Circuit {
 public:
  explicit Circuit(int m);

  int qubits() const { return m_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  void append(const Gate& g);

  // Longest path through the gate DAG (gates on disjoint qubits share a layer).
  int depth() const;

 private:
  int m_;
  std::vector<Gate> gates_;
};

// JSON gate list, e.g. [{"gate":"cx","q":[0,1]},{"gate":"s","q":[1]}];
// array order is emission order.
std::string to_json(const Circuit& c);

// OpenQASM 3 with uy/uydg lowered to ry(-pi/2)/ry(pi/2).
std::string to_qasm3(const Circuit& c);

// The x-string labels K whose exponential blocks diagonalize family f: the m
// rows of (A^f)^{N/2} = A^{f/2} (f even) or A^{(N+f-1)/2} (f odd).  Empty for
// the z and x families, whose circuits need no exponential blocks.
std::vector<gf2::BitVector> diag_generators(const Solution& sol, FamilyId f);

// Post-state rotation: UY on every qubit, one CX-ladder/S/reverse-ladder block
// per k in K (star onto the lowest-index support qubit), then UYDG on every
// qubit.  Family 0 is already diagonal (empty circuit); family N needs only
// the UY layer.
Circuit build_circuit(const Solution& sol, FamilyId f);

struct MemberPhase {
  int sign;               // +1 or -1
  std::uint64_t z_label;  // the circuit maps the member to sign * z_{z_label}
};

// Sign produced by the family circuit on a Hermitian member.  The S-gate
// ladder realizes exp(-i pi/4 sum x_k) up to global phase, so the exponent is
// (N_H - Y) mod 4 with N_H the number of k in K anticommuting with the member;
// it must be even.
MemberPhase member_phase(const Solution& sol, FamilyId f, const PauliString& member);

// sign * (-1)^popcount(z_label & basis_state)
int eigenvalue(std::uint64_t z_label, std::uint64_t basis_state, int sign);

// Per-outcome weights c_k = sum over terms of coeff * eigenvalue; the identity
// coefficient is folded into the z family as a constant shift.
std::vector<double> measurement_coeffs(const Solution& sol, FamilyId f,
                                       std::span<const WeightedTerm> terms,
                                       double identity_coeff);

struct MeasurementPlan {
  FamilyId family;
  Circuit circuit;
  std::vector<double> coeffs;
};

MeasurementPlan make_plan(const Solution& sol, FamilyId f, std::span<const WeightedTerm> terms,
                          double identity_coeff);

}  // namespace psfam
