#pragma once

#include <complex>

#include "psfam/diagonalize.hpp"

namespace psfam {

struct TooManyQubits : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotHermitian : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct AngleCountMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kDefaultSimQubitCap = 12;

// 2^m complex amplitudes; basis state k assigns qubit q the bit (m-1-q) of k,
// matching the string-position convention of PauliString.
class StateVector {
 public:
  explicit StateVector(int m);  // |0...0>
  StateVector(int m, std::vector<std::complex<double>> amplitudes);

  int qubits() const { return m_; }
  std::uint64_t size() const { return 1ull << m_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amp_; }
  std::vector<std::complex<double>>& amplitudes() { return amp_; }
  std::complex<double>& amp(std::uint64_t k) { return amp_[k]; }
  const std::complex<double>& amp(std::uint64_t k) const { return amp_[k]; }
  double norm() const;

 private:
  int m_;
  std::vector<std::complex<double>> amp_;
};

StateVector simulate(const Circuit& c, const StateVector& in, int qubit_cap = kDefaultSimQubitCap);

// p_k = |<k| U |psi>|^2; psi must be normalized within 1e-10.
std::vector<double> exact_probabilities(const Circuit& c, const StateVector& psi,
                                        int qubit_cap = kDefaultSimQubitCap);

// Multinomial draw via inverse-CDF over mt19937_64 uniforms; exactly
// reproducible for a given seed.
std::vector<std::uint64_t> sample_counts(std::span<const double> probabilities,
                                         std::uint64_t shots, std::uint64_t seed);

struct EvMode {
  bool exact = true;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  static EvMode exact_mode() { return {true, 0, 0}; }
  static EvMode shots_mode(std::uint64_t shots, std::uint64_t seed) {
    return {false, shots, seed};
  }
};

// <H> = sum_{j,k} c_{j,k} M_{j,k} over one measurement plan per non-empty
// family.  Exact mode uses full probability vectors; shot mode draws a
// per-family stream derived from the seed and the family id.
double grouped_expectation(const Solution& sol, const WeightedPauliSum& h, const StateVector& psi,
                           const EvMode& mode);

// Same engine over greedy qubit-wise commuting groups (per-qubit basis
// rotations only) or one group per term.
double qwc_expectation(const WeightedPauliSum& h, const StateVector& psi, const EvMode& mode);
double naive_expectation(const WeightedPauliSum& h, const StateVector& psi, const EvMode& mode);

// Row-major dense 2^m x 2^m complex matrix.
class DenseMatrix {
 public:
  explicit DenseMatrix(int m);

  int qubits() const { return m_; }
  std::uint64_t dim() const { return 1ull << m_; }
  std::complex<double>& at(std::uint64_t r, std::uint64_t c) { return a_[r * dim() + c]; }
  const std::complex<double>& at(std::uint64_t r, std::uint64_t c) const {
    return a_[r * dim() + c];
  }

 private:
  int m_;
  std::vector<std::complex<double>> a_;
};

// (G + G^dag)/2 with G drawn from a seeded standard complex normal
// (hand-rolled Box-Muller over mt19937_64; platform independent).
DenseMatrix random_hermitian(int m, std::uint64_t seed);

// coeff(P) = tr(P M)/2^m for every string; requires Hermiticity within 1e-10
// and m <= 8 (the sweep costs 8^m).
WeightedPauliSum pauli_decompose(const DenseMatrix& mat);

// Drop terms with |coeff| < tol; the identity coefficient is kept.
WeightedPauliSum apply_cut(const WeightedPauliSum& h, double tol);

// Hardware-efficient layered ansatz: `layers` repetitions of an RY layer
// followed by a CZ chain, then one final RY layer.  Needs m*(layers+1) angles.
struct AnsatzSpec {
  int layers = 1;
  std::vector<double> angles;
};

Circuit ansatz_circuit(const AnsatzSpec& spec, int m);
StateVector build_ansatz_state(const AnsatzSpec& spec, int m);

}  // namespace psfam
