#include "psfam/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "psfam/baselines.hpp"

namespace psfam {

namespace {

constexpr double kNormTol = 1e-10;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

StateVector::StateVector(int m) : m_(m), amp_(1ull << m, {0.0, 0.0}) {
  if (m < 1 || m > kMaxQubits) throw BadLength("state qubit count out of range");
  amp_[0] = 1.0;
}

StateVector::StateVector(int m, std::vector<std::complex<double>> amplitudes)
    : m_(m), amp_(std::move(amplitudes)) {
  if (m < 1 || m > kMaxQubits) throw BadLength("state qubit count out of range");
  if (amp_.size() != (1ull << m)) {
    throw BadLength("amplitude count must be 2^" + std::to_string(m));
  }
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

namespace {

// Apply a 2x2 unitary to qubit q of the amplitude array in place.
void apply_1q(std::vector<std::complex<double>>& amp, int m, int q,
              const std::complex<double> u[2][2]) {
  const std::uint64_t stride = 1ull << (m - 1 - q);
  const std::uint64_t size = amp.size();
  for (std::uint64_t base = 0; base < size; base += 2 * stride) {
    for (std::uint64_t k = base; k < base + stride; ++k) {
      const std::complex<double> a0 = amp[k];
      const std::complex<double> a1 = amp[k + stride];
      amp[k] = u[0][0] * a0 + u[0][1] * a1;
      amp[k + stride] = u[1][0] * a0 + u[1][1] * a1;
    }
  }
}

}  // namespace

StateVector simulate(const Circuit& c, const StateVector& in, int qubit_cap) {
  const int m = in.qubits();
  if (c.qubits() != m) throw QubitMismatch("circuit and state qubit counts differ");
  if (m > qubit_cap) {
    throw TooManyQubits("simulation capped at " + std::to_string(qubit_cap) + " qubits");
  }
  StateVector out = in;
  std::vector<std::complex<double>>& amp = out.amplitudes();
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::CX: {
        const std::uint64_t cbit = 1ull << (m - 1 - g.q0);
        const std::uint64_t tbit = 1ull << (m - 1 - g.q1);
        for (std::uint64_t k = 0; k < amp.size(); ++k) {
          if ((k & cbit) && !(k & tbit)) std::swap(amp[k], amp[k | tbit]);
        }
        break;
      }
      case GateKind::CZ: {
        const std::uint64_t both =
            (1ull << (m - 1 - g.q0)) | (1ull << (m - 1 - g.q1));
        for (std::uint64_t k = 0; k < amp.size(); ++k) {
          if ((k & both) == both) amp[k] = -amp[k];
        }
        break;
      }
      case GateKind::S: {
        const std::uint64_t bit = 1ull << (m - 1 - g.q0);
        for (std::uint64_t k = 0; k < amp.size(); ++k) {
          if (k & bit) amp[k] *= std::complex<double>(0.0, 1.0);
        }
        break;
      }
      case GateKind::H: {
        const std::complex<double> u[2][2] = {{inv_sqrt2, inv_sqrt2}, {inv_sqrt2, -inv_sqrt2}};
        apply_1q(amp, m, g.q0, u);
        break;
      }
      case GateKind::UY: {
        const std::complex<double> u[2][2] = {{inv_sqrt2, inv_sqrt2}, {-inv_sqrt2, inv_sqrt2}};
        apply_1q(amp, m, g.q0, u);
        break;
      }
      case GateKind::UYDG: {
        const std::complex<double> u[2][2] = {{inv_sqrt2, -inv_sqrt2}, {inv_sqrt2, inv_sqrt2}};
        apply_1q(amp, m, g.q0, u);
        break;
      }
      case GateKind::RY: {
        const double ch = std::cos(g.angle / 2);
        const double sh = std::sin(g.angle / 2);
        const std::complex<double> u[2][2] = {{ch, -sh}, {sh, ch}};
        apply_1q(amp, m, g.q0, u);
        break;
      }
      case GateKind::RZ: {
        const std::complex<double> e0 = std::polar(1.0, -g.angle / 2);
        const std::complex<double> e1 = std::polar(1.0, g.angle / 2);
        const std::complex<double> u[2][2] = {{e0, 0.0}, {0.0, e1}};
        apply_1q(amp, m, g.q0, u);
        break;
      }
    }
  }
  return out;
}

std::vector<double> exact_probabilities(const Circuit& c, const StateVector& psi, int qubit_cap) {
  if (std::abs(psi.norm() - 1.0) > kNormTol) {
    throw std::invalid_argument("state is not normalized");
  }
  const StateVector rotated = simulate(c, psi, qubit_cap);
  std::vector<double> p(rotated.size());
  for (std::uint64_t k = 0; k < rotated.size(); ++k) p[k] = std::norm(rotated.amp(k));
  return p;
}

std::vector<std::uint64_t> sample_counts(std::span<const double> probabilities,
                                         std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  std::vector<double> cum(probabilities.size());
  double total = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    total += probabilities[i];
    cum[i] = total;
  }
  std::vector<std::uint64_t> counts(probabilities.size(), 0);
  std::mt19937_64 rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = uniform01(rng) * total;
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    const std::size_t idx = std::min<std::size_t>(
        static_cast<std::size_t>(it - cum.begin()), counts.size() - 1);
    ++counts[idx];
  }
  return counts;
}

namespace {

// One group's contribution: sum of c_k * M_k with M_k exact probabilities or
// shot frequencies from a salted per-group stream.
double reduce_plan(const Circuit& circuit, const std::vector<double>& coeffs,
                   const StateVector& psi, const EvMode& mode, std::uint64_t seed_salt) {
  const std::vector<double> p = exact_probabilities(circuit, psi);
  double ev = 0.0;
  if (mode.exact) {
    for (std::size_t k = 0; k < p.size(); ++k) ev += coeffs[k] * p[k];
  } else {
    const std::uint64_t stream = splitmix64(mode.seed ^ splitmix64(seed_salt));
    const std::vector<std::uint64_t> counts = sample_counts(p, mode.shots, stream);
    const double inv = 1.0 / static_cast<double>(mode.shots);
    for (std::size_t k = 0; k < counts.size(); ++k) {
      ev += coeffs[k] * static_cast<double>(counts[k]) * inv;
    }
  }
  return ev;
}

}  // namespace

double grouped_expectation(const Solution& sol, const WeightedPauliSum& h, const StateVector& psi,
                           const EvMode& mode) {
  if (h.qubits() != psi.qubits()) throw QubitMismatch("operator and state qubit counts differ");
  const auto groups = group_operator(sol, h);
  double ev = 0.0;
  bool has_z_family = false;
  for (const auto& [f, terms] : groups) {
    if (f.value == 0) has_z_family = true;
    const MeasurementPlan plan = make_plan(sol, f, terms, f.value == 0 ? h.identity_coeff() : 0.0);
    ev += reduce_plan(plan.circuit, plan.coeffs, psi, mode, f.value);
  }
  // Frequencies sum to one, so a missing z family reduces to a constant shift.
  if (!has_z_family) ev += h.identity_coeff();
  return ev;
}

namespace {

// Basis rotation for a qubit-wise consistent group: UY maps X to Z, and
// S^3 then UY maps Y to Z, both with sign +1.
Circuit qwc_rotation(int m, std::span<const WeightedTerm> terms) {
  Circuit c(m);
  for (int q = 0; q < m; ++q) {
    char ch = 'I';
    for (const WeightedTerm& t : terms) {
      const char tc = t.pauli.at(q);
      if (tc != 'I') {
        ch = tc;
        break;
      }
    }
    if (ch == 'Y') {
      c.append(Gate::s(q));
      c.append(Gate::s(q));
      c.append(Gate::s(q));
      c.append(Gate::uy(q));
    } else if (ch == 'X') {
      c.append(Gate::uy(q));
    }
  }
  return c;
}

double qwc_group_expectation(int m, const std::vector<std::vector<WeightedTerm>>& groups,
                             double identity_coeff, const StateVector& psi, const EvMode& mode) {
  const std::uint64_t n = 1ull << m;
  double ev = identity_coeff;
  std::uint64_t group_index = 0;
  for (const auto& terms : groups) {
    const Circuit rotation = qwc_rotation(m, terms);
    std::vector<double> coeffs(n, 0.0);
    for (const WeightedTerm& t : terms) {
      const std::uint64_t support = t.pauli.x_mask() | t.pauli.z_mask();
      for (std::uint64_t k = 0; k < n; ++k) {
        coeffs[k] += t.coeff * eigenvalue(support, k, +1);
      }
    }
    ev += reduce_plan(rotation, coeffs, psi, mode, 0x71c5ull + group_index);
    ++group_index;
  }
  return ev;
}

}  // namespace

double qwc_expectation(const WeightedPauliSum& h, const StateVector& psi, const EvMode& mode) {
  if (h.qubits() != psi.qubits()) throw QubitMismatch("operator and state qubit counts differ");
  std::vector<PauliString> strings;
  strings.reserve(h.size());
  for (const WeightedTerm& t : h.terms()) strings.push_back(t.pauli);
  std::vector<std::vector<WeightedTerm>> groups;
  if (!strings.empty()) {
    const GroupingResult grouping =
        greedy_color(strings, CommutationRelation::QubitWise, kDefaultAdjacencyCapBytes);
    std::map<PauliString, double> coeff_of;
    for (const WeightedTerm& t : h.terms()) coeff_of[t.pauli] = t.coeff;
    for (const auto& family : grouping.families) {
      std::vector<WeightedTerm> terms;
      terms.reserve(family.size());
      for (const PauliString& s : family) terms.push_back({coeff_of.at(s), s});
      groups.push_back(std::move(terms));
    }
  }
  return qwc_group_expectation(h.qubits(), groups, h.identity_coeff(), psi, mode);
}

double naive_expectation(const WeightedPauliSum& h, const StateVector& psi, const EvMode& mode) {
  if (h.qubits() != psi.qubits()) throw QubitMismatch("operator and state qubit counts differ");
  std::vector<std::vector<WeightedTerm>> groups;
  groups.reserve(h.size());
  for (const WeightedTerm& t : h.terms()) groups.push_back({t});
  return qwc_group_expectation(h.qubits(), groups, h.identity_coeff(), psi, mode);
}

DenseMatrix::DenseMatrix(int m) : m_(m), a_((1ull << m) * (1ull << m), {0.0, 0.0}) {
  if (m < 1 || m > kMaxQubits) throw BadLength("matrix qubit count out of range");
}

DenseMatrix random_hermitian(int m, std::uint64_t seed) {
  DenseMatrix g(m);
  std::mt19937_64 rng(seed);
  const std::uint64_t n = g.dim();
  auto normal = [&rng]() {
    // Box-Muller; u in (0,1] so the log is finite.
    const double u = 1.0 - uniform01(rng);
    const double v = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
  };
  for (std::uint64_t r = 0; r < n; ++r) {
    for (std::uint64_t c = 0; c < n; ++c) {
      g.at(r, c) = {normal(), normal()};
    }
  }
  DenseMatrix h(m);
  for (std::uint64_t r = 0; r < n; ++r) {
    for (std::uint64_t c = 0; c < n; ++c) {
      h.at(r, c) = 0.5 * (g.at(r, c) + std::conj(g.at(c, r)));
    }
  }
  return h;
}

WeightedPauliSum pauli_decompose(const DenseMatrix& mat) {
  const int m = mat.qubits();
  if (m > 8) throw TooLarge("pauli_decompose capped at 8 qubits");
  const std::uint64_t n = mat.dim();
  for (std::uint64_t r = 0; r < n; ++r) {
    for (std::uint64_t c = r; c < n; ++c) {
      if (std::abs(mat.at(r, c) - std::conj(mat.at(c, r))) > kNormTol) {
        throw NotHermitian("matrix is not Hermitian within 1e-10");
      }
    }
  }
  static const std::complex<double> minus_i_pow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  WeightedPauliSum out(m);
  for (std::uint64_t xm = 0; xm < n; ++xm) {
    for (std::uint64_t zm = 0; zm < n; ++zm) {
      // P = (-i)^y z x has its column-c entry at row c^xm with a z-sign.
      const int y = std::popcount(xm & zm);
      std::complex<double> tr = 0.0;
      for (std::uint64_t c = 0; c < n; ++c) {
        const std::uint64_t r = c ^ xm;
        const double sign = (std::popcount(zm & r) & 1) ? -1.0 : 1.0;
        tr += sign * mat.at(c, r);
      }
      tr *= minus_i_pow[y % 4];
      const double coeff = tr.real() / static_cast<double>(n);
      if (xm == 0 && zm == 0) {
        out.set_identity_coeff(coeff);
      } else if (coeff != 0.0) {
        out.add_term(coeff, PauliString(m, xm, zm));
      }
    }
  }
  return out;
}

WeightedPauliSum apply_cut(const WeightedPauliSum& h, double tol) {
  if (tol < 0) throw std::invalid_argument("cut tolerance must be >= 0");
  WeightedPauliSum out(h.qubits());
  out.set_identity_coeff(h.identity_coeff());
  for (const WeightedTerm& t : h.terms()) {
    if (std::abs(t.coeff) >= tol) out.add_term(t.coeff, t.pauli);
  }
  return out;
}

Circuit ansatz_circuit(const AnsatzSpec& spec, int m) {
  if (spec.layers < 0) throw std::invalid_argument("layer count must be >= 0");
  const std::size_t expected = static_cast<std::size_t>(m) * (static_cast<std::size_t>(spec.layers) + 1);
  if (spec.angles.size() != expected) {
    throw AngleCountMismatch("expected " + std::to_string(expected) + " angles, got " +
                             std::to_string(spec.angles.size()));
  }
  Circuit c(m);
  std::size_t next = 0;
  for (int rep = 0; rep < spec.layers; ++rep) {
    for (int q = 0; q < m; ++q) c.append(Gate::ry(q, spec.angles[next++]));
    for (int q = 0; q + 1 < m; ++q) c.append(Gate::cz(q, q + 1));
  }
  for (int q = 0; q < m; ++q) c.append(Gate::ry(q, spec.angles[next++]));
  return c;
}

StateVector build_ansatz_state(const AnsatzSpec& spec, int m) {
  return simulate(ansatz_circuit(spec, m), StateVector(m));
}

}  // namespace psfam
