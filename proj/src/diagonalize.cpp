#include "psfam/diagonalize.hpp"

#include <bit>
#include <sstream>

#include "json.hpp"

namespace psfam {

Circuit::Circuit(int m) : m_(m) {
  if (m < 1 || m > kMaxQubits) throw BadLength("circuit qubit count out of range");
}

void Circuit::append(const Gate& g) {
  if (g.q0 < 0 || g.q0 >= m_ || (g.two_qubit() && (g.q1 < 0 || g.q1 >= m_ || g.q1 == g.q0))) {
    throw QubitMismatch("gate qubit index out of range");
  }
  gates_.push_back(g);
}

int Circuit::depth() const {
  std::vector<int> level(static_cast<std::size_t>(m_), 0);
  int depth = 0;
  for (const Gate& g : gates_) {
    int l = level[static_cast<std::size_t>(g.q0)];
    if (g.two_qubit()) l = std::max(l, level[static_cast<std::size_t>(g.q1)]);
    ++l;
    level[static_cast<std::size_t>(g.q0)] = l;
    if (g.two_qubit()) level[static_cast<std::size_t>(g.q1)] = l;
    depth = std::max(depth, l);
  }
  return depth;
}

namespace {

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::CX: return "cx";
    case GateKind::CZ: return "cz";
    case GateKind::S: return "s";
    case GateKind::H: return "h";
    case GateKind::UY: return "uy";
    case GateKind::UYDG: return "uydg";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
  }
  throw UnknownGate("unhandled gate kind");
}

}  // namespace

std::string to_json(const Circuit& c) {
  nlohmann::json out = nlohmann::json::array();
  for (const Gate& g : c.gates()) {
    nlohmann::json j;
    j["gate"] = gate_name(g.kind);
    j["q"] = g.two_qubit() ? nlohmann::json::array({g.q0, g.q1}) : nlohmann::json::array({g.q0});
    if (g.kind == GateKind::RY || g.kind == GateKind::RZ) j["angle"] = g.angle;
    out.push_back(std::move(j));
  }
  return out.dump();
}

std::string to_qasm3(const Circuit& c) {
  std::ostringstream os;
  os << "OPENQASM 3.0;\n";
  os << "include \"stdgates.inc\";\n";
  os << "qubit[" << c.qubits() << "] q;\n";
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::CX:
        os << "cx q[" << g.q0 << "], q[" << g.q1 << "];\n";
        break;
      case GateKind::CZ:
        os << "cz q[" << g.q0 << "], q[" << g.q1 << "];\n";
        break;
      case GateKind::S:
        os << "s q[" << g.q0 << "];\n";
        break;
      case GateKind::H:
        os << "h q[" << g.q0 << "];\n";
        break;
      case GateKind::UY:
        os << "ry(-pi/2) q[" << g.q0 << "];\n";
        break;
      case GateKind::UYDG:
        os << "ry(pi/2) q[" << g.q0 << "];\n";
        break;
      case GateKind::RY:
        os << "ry(" << g.angle << ") q[" << g.q0 << "];\n";
        break;
      case GateKind::RZ:
        os << "rz(" << g.angle << ") q[" << g.q0 << "];\n";
        break;
    }
  }
  return os.str();
}

std::vector<gf2::BitVector> diag_generators(const Solution& sol, FamilyId f) {
  const std::uint64_t n = sol.n();
  if (f.value > n) throw BadFamilyId("family id out of range");
  if (f.value == 0 || f.value == n) return {};
  const std::uint64_t g = (f.value % 2 == 0) ? f.value / 2 : (n + f.value - 1) / 2;
  std::vector<gf2::BitVector> k;
  k.reserve(static_cast<std::size_t>(sol.qubits()));
  for (int r = 0; r < sol.qubits(); ++r) {
    const std::uint64_t label = sol.power_row(g, r);
    if (label == 0) throw gf2::DecompositionFailure("zero row in diagonalizer");
    k.emplace_back(sol.qubits(), label);
  }
  return k;
}

Circuit build_circuit(const Solution& sol, FamilyId f) {
  const int m = sol.qubits();
  Circuit c(m);
  if (f.value > sol.n()) throw BadFamilyId("family id out of range");
  if (f.value == 0) return c;
  for (int q = 0; q < m; ++q) c.append(Gate::uy(q));
  if (f.value == sol.n()) return c;
  for (const gf2::BitVector& k : diag_generators(sol, f)) {
    std::vector<int> support;
    for (int a = 0; a < m; ++a) {
      if (k.component(a)) support.push_back(a);
    }
    const int pivot = support.front();
    for (std::size_t i = 1; i < support.size(); ++i) c.append(Gate::cx(support[i], pivot));
    c.append(Gate::s(pivot));
    for (std::size_t i = support.size(); i-- > 1;) c.append(Gate::cx(support[i], pivot));
  }
  for (int q = 0; q < m; ++q) c.append(Gate::uydg(q));
  return c;
}

MemberPhase member_phase(const Solution& sol, FamilyId f, const PauliString& member) {
  if (sol.lookup_family(member) != f || member.is_identity()) {
    throw TermNotInFamily("string " + member.str() + " is not in family " +
                          std::to_string(f.value));
  }
  const auto [i, j, y] = member.xz_decompose();
  if (f.value == 0) return {+1, i};
  if (f.value == sol.n()) return {+1, j};
  int n_h = 0;
  for (const gf2::BitVector& k : diag_generators(sol, f)) {
    if (std::popcount(k.label() & i) & 1) ++n_h;
  }
  const int exp = ((n_h - y) % 4 + 4) % 4;
  if (exp & 1) throw PhaseNotReal("member phase exponent is odd");
  return {exp == 0 ? +1 : -1, i};
}

int eigenvalue(std::uint64_t z_label, std::uint64_t basis_state, int sign) {
  return (std::popcount(z_label & basis_state) & 1) ? -sign : sign;
}

std::vector<double> measurement_coeffs(const Solution& sol, FamilyId f,
                                       std::span<const WeightedTerm> terms,
                                       double identity_coeff) {
  const std::uint64_t n = sol.n();
  std::vector<double> c(n, f.value == 0 ? identity_coeff : 0.0);
  for (const WeightedTerm& t : terms) {
    const MemberPhase mp = member_phase(sol, f, t.pauli);
    for (std::uint64_t k = 0; k < n; ++k) {
      c[k] += t.coeff * eigenvalue(mp.z_label, k, mp.sign);
    }
  }
  return c;
}

MeasurementPlan make_plan(const Solution& sol, FamilyId f, std::span<const WeightedTerm> terms,
                          double identity_coeff) {
  return {f, build_circuit(sol, f), measurement_coeffs(sol, f, terms, identity_coeff)};
}

}  // namespace psfam
