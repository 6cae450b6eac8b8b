#pragma once

#include <iosfwd>

#include "psfam/measure.hpp"

namespace psfam::io {

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// {"m": int, "terms": [{"pauli": "XIZ", "coeff": real}], "identity": real?}
WeightedPauliSum read_hamiltonian(std::istream& is);
void write_hamiltonian(std::ostream& os, const WeightedPauliSum& h);

// JSON array of 2^m [re, im] pairs.
StateVector read_state(std::istream& is);
void write_state(std::ostream& os, const StateVector& psi);

// JSON 2^m x 2^m array of [re, im] pairs.
DenseMatrix read_dense_matrix(std::istream& is);
void write_dense_matrix(std::ostream& os, const DenseMatrix& mat);

// {"layers": int, "angles": [real, ...]}
AnsatzSpec read_ansatz(std::istream& is);

}  // namespace psfam::io
