#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace psfam {

inline constexpr int kMaxQubits = 32;

struct BadCharacter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BadLength : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct QubitMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// m-qubit Pauli string in symplectic mask form.  Position a (leftmost string
// character is position 0) maps to bit (m-1-a) of each mask, so each mask is
// the integer label of the binary encoding: "IIZZ" has z-mask 3, "XXXX" has
// x-mask 15.  Character at a position: (x,z) = (0,0) I, (1,0) X, (0,1) Z,
// (1,1) Y.
class PauliString {
 public:
  PauliString(int m, std::uint64_t x_mask, std::uint64_t z_mask);
  static PauliString identity(int m);
  static PauliString parse(std::string_view text);
  static PauliString x_string(int m, std::uint64_t label);  // x_label
  static PauliString z_string(int m, std::uint64_t label);  // z_label

  int qubits() const { return m_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  bool is_identity() const { return x_ == 0 && z_ == 0; }
  char at(int pos) const;
  std::string str() const;
  int weight() const;
  int y_count() const;

  // P = (-i)^y_count z_{z_label} x_{x_label}
  struct XzParts {
    std::uint64_t z_label;
    std::uint64_t x_label;
    int y_count;
  };
  XzParts xz_decompose() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  int m_;
  std::uint64_t x_;
  std::uint64_t z_;
};

// Symplectic product test: commute iff popcount(x1&z2) + popcount(z1&x2) even.
bool commutes(const PauliString& p, const PauliString& q);

// Qubit-wise commutation: at every position the characters agree or one is I.
bool qwc_commutes(const PauliString& p, const PauliString& q);

// Pauli string with phase bookkeeping: operator = (-i)^phase_exp z x.
// Hermitian character strings carry phase_exp = y_count.
class PhasedPauli {
 public:
  PhasedPauli(PauliString pauli, int phase_exp);
  static PhasedPauli hermitian(const PauliString& p);

  const PauliString& pauli() const { return pauli_; }
  int phase_exp() const { return phase_exp_; }
  std::complex<double> phase() const;  // (-i)^phase_exp

  friend bool operator==(const PhasedPauli&, const PhasedPauli&) = default;

 private:
  PauliString pauli_;
  int phase_exp_;
};

PhasedPauli multiply(const PhasedPauli& p, const PhasedPauli& q);

struct WeightedTerm {
  double coeff;
  PauliString pauli;
};

// Hermitian operator: identity_coeff * I + sum_i coeff_i * pauli_i.
// Terms are unique non-identity strings with nonzero real coefficients;
// adding an existing string accumulates into its coefficient.
class WeightedPauliSum {
 public:
  explicit WeightedPauliSum(int m);

  int qubits() const { return m_; }
  const std::vector<WeightedTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  double identity_coeff() const { return identity_; }
  void set_identity_coeff(double c) { identity_ = c; }

  void add_term(double coeff, const PauliString& p);

 private:
  int m_;
  double identity_ = 0.0;
  std::vector<WeightedTerm> terms_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

}  // namespace psfam
