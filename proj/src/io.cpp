#include "psfam/io.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace psfam::io {

namespace {

using nlohmann::json;

json parse_stream(std::istream& is) {
  try {
    return json::parse(is);
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

int qubits_for_size(std::size_t size, const char* what) {
  int m = 0;
  while ((1ull << m) < size && m <= kMaxQubits) ++m;
  if (m < 1 || (1ull << m) != size) {
    throw FormatError(std::string(what) + " length must be a power of two >= 2, got " +
                      std::to_string(size));
  }
  return m;
}

std::complex<double> read_pair(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError(std::string(what) + " entries must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

WeightedPauliSum read_hamiltonian(std::istream& is) {
  const json j = parse_stream(is);
  if (!j.is_object() || !j.contains("m") || !j.contains("terms")) {
    throw FormatError("hamiltonian file needs \"m\" and \"terms\"");
  }
  if (!j["m"].is_number_integer()) throw FormatError("\"m\" must be an integer");
  const int m = j["m"].get<int>();
  if (m < 1 || m > kMaxQubits) throw FormatError("\"m\" out of range");
  WeightedPauliSum h(m);
  if (j.contains("identity")) {
    if (!j["identity"].is_number()) throw FormatError("\"identity\" must be a number");
    h.set_identity_coeff(j["identity"].get<double>());
  }
  if (!j["terms"].is_array()) throw FormatError("\"terms\" must be an array");
  for (const json& t : j["terms"]) {
    if (!t.is_object() || !t.contains("pauli") || !t.contains("coeff") ||
        !t["pauli"].is_string() || !t["coeff"].is_number()) {
      throw FormatError("each term needs a \"pauli\" string and a \"coeff\" number");
    }
    PauliString p = [&] {
      try {
        return PauliString::parse(t["pauli"].get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("bad pauli in term: ") + e.what());
      }
    }();
    if (p.qubits() != m) {
      throw FormatError("term \"" + p.str() + "\" does not act on " + std::to_string(m) +
                        " qubits");
    }
    h.add_term(t["coeff"].get<double>(), p);
  }
  return h;
}

void write_hamiltonian(std::ostream& os, const WeightedPauliSum& h) {
  json j;
  j["m"] = h.qubits();
  j["terms"] = json::array();
  for (const WeightedTerm& t : h.terms()) {
    j["terms"].push_back({{"pauli", t.pauli.str()}, {"coeff", t.coeff}});
  }
  if (h.identity_coeff() != 0.0) j["identity"] = h.identity_coeff();
  os << j.dump(2) << '\n';
}

StateVector read_state(std::istream& is) {
  const json j = parse_stream(is);
  if (!j.is_array()) throw FormatError("state file must be a JSON array");
  const int m = qubits_for_size(j.size(), "state");
  std::vector<std::complex<double>> amp;
  amp.reserve(j.size());
  for (const json& e : j) amp.push_back(read_pair(e, "state"));
  return StateVector(m, std::move(amp));
}

void write_state(std::ostream& os, const StateVector& psi) {
  json j = json::array();
  for (const auto& a : psi.amplitudes()) j.push_back({a.real(), a.imag()});
  os << j.dump() << '\n';
}

DenseMatrix read_dense_matrix(std::istream& is) {
  const json j = parse_stream(is);
  if (!j.is_array()) throw FormatError("matrix file must be a JSON array of rows");
  const int m = qubits_for_size(j.size(), "matrix");
  DenseMatrix mat(m);
  for (std::uint64_t r = 0; r < mat.dim(); ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != mat.dim()) {
      throw FormatError("matrix rows must all have length 2^m");
    }
    for (std::uint64_t c = 0; c < mat.dim(); ++c) {
      mat.at(r, c) = read_pair(row[c], "matrix");
    }
  }
  return mat;
}

void write_dense_matrix(std::ostream& os, const DenseMatrix& mat) {
  json j = json::array();
  for (std::uint64_t r = 0; r < mat.dim(); ++r) {
    json row = json::array();
    for (std::uint64_t c = 0; c < mat.dim(); ++c) {
      row.push_back({mat.at(r, c).real(), mat.at(r, c).imag()});
    }
    j.push_back(std::move(row));
  }
  os << j.dump() << '\n';
}

AnsatzSpec read_ansatz(std::istream& is) {
  const json j = parse_stream(is);
  if (!j.is_object() || !j.contains("layers") || !j.contains("angles") ||
      !j["layers"].is_number_integer() || !j["angles"].is_array()) {
    throw FormatError("ansatz file needs integer \"layers\" and array \"angles\"");
  }
  AnsatzSpec spec;
  spec.layers = j["layers"].get<int>();
  for (const json& a : j["angles"]) {
    if (!a.is_number()) throw FormatError("angles must be numbers");
    spec.angles.push_back(a.get<double>());
  }
  return spec;
}

}  // namespace psfam::io
