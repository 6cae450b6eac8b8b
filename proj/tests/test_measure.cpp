#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>
#include <random>

#include "dense_oracle.hpp"
#include "psfam/measure.hpp"

using namespace psfam;

namespace {

StateVector state_from(const std::vector<std::complex<double>>& amps) {
  int m = 0;
  while ((1ull << m) < amps.size()) ++m;
  return StateVector(m, amps);
}

WeightedPauliSum single_term(const std::string& pauli, double coeff = 1.0) {
  WeightedPauliSum h(static_cast<int>(pauli.size()));
  h.add_term(coeff, PauliString::parse(pauli));
  return h;
}

}  // namespace

TEST_CASE("simulator basics") {
  const StateVector zero(1);
  CHECK(simulate(Circuit(1), zero).amplitudes() == zero.amplitudes());

  Circuit uy(1);
  uy.append(Gate::uy(0));
  const StateVector plus = simulate(uy, zero);
  // (1 + i sigma_y)/sqrt(2) |0> = (|0> - |1>)/sqrt(2)
  const double is2 = 1.0 / std::numbers::sqrt2;
  CHECK(std::abs(plus.amp(0) - std::complex<double>{is2, 0}) < 1e-12);
  CHECK(std::abs(plus.amp(1) - std::complex<double>{-is2, 0}) < 1e-12);

  Circuit undo(1);
  undo.append(Gate::uy(0));
  undo.append(Gate::uydg(0));
  const StateVector back = simulate(undo, zero);
  CHECK(std::abs(back.amp(0) - 1.0) < 1e-12);

  CHECK_THROWS_AS(simulate(Circuit(13), StateVector(13)), TooManyQubits);
  CHECK_THROWS_AS(simulate(Circuit(2), StateVector(1)), QubitMismatch);
}

TEST_CASE("parity ladder applies i to odd-parity basis states") {
  // exp block for a weight-2 z string: CX(1->0), S(0), CX(1->0).
  Circuit ladder(2);
  ladder.append(Gate::cx(1, 0));
  ladder.append(Gate::s(0));
  ladder.append(Gate::cx(1, 0));
  for (std::uint64_t k = 0; k < 4; ++k) {
    std::vector<std::complex<double>> amps(4, 0.0);
    amps[k] = 1.0;
    const StateVector out = simulate(ladder, state_from(amps));
    const std::complex<double> expect =
        (std::popcount(k & 3ull) & 1) ? std::complex<double>{0, 1} : std::complex<double>{1, 0};
    CHECK(std::abs(out.amp(k) - expect) < 1e-12);
  }
}

TEST_CASE("simulator agrees with dense gate matrices and preserves norm") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 3);
    Circuit c(m);
    for (int g = 0; g < 12; ++g) {
      const int q = static_cast<int>(rng() % m);
      switch (rng() % 6) {
        case 0: c.append(Gate::s(q)); break;
        case 1: c.append(Gate::h(q)); break;
        case 2: c.append(Gate::uy(q)); break;
        case 3: c.append(Gate::ry(q, static_cast<double>(rng() % 628) / 100.0)); break;
        case 4: c.append(Gate::rz(q, static_cast<double>(rng() % 628) / 100.0)); break;
        default: {
          if (m == 1) { c.append(Gate::uydg(q)); break; }
          int t = static_cast<int>(rng() % m);
          if (t == q) t = (t + 1) % m;
          c.append(rng() & 1 ? Gate::cx(q, t) : Gate::cz(q, t));
          break;
        }
      }
    }
    const auto psi = oracle::random_state(m, rng());
    const StateVector out = simulate(c, state_from(psi));
    CHECK(std::abs(out.norm() - 1.0) < 1e-10);
    const oracle::Mat u = oracle::circuit_unitary(c);
    for (std::uint64_t k = 0; k < out.size(); ++k) {
      oracle::cd want = 0.0;
      for (std::uint64_t j = 0; j < out.size(); ++j) want += u.at(k, j) * psi[j];
      CHECK(std::abs(out.amp(k) - want) < 1e-10);
    }
  }
}

TEST_CASE("exact probabilities") {
  const StateVector zero(3);
  const auto p = exact_probabilities(Circuit(3), zero);
  CHECK(p[0] == doctest::Approx(1.0));
  for (std::size_t k = 1; k < p.size(); ++k) CHECK(p[k] == doctest::Approx(0.0));

  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 4);
    const Solution sol = Solution::build(m);
    const auto psi = oracle::random_state(m, rng());
    const auto probs =
        exact_probabilities(build_circuit(sol, {1}), state_from(psi));
    double total = 0.0;
    for (double v : probs) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }

  std::vector<std::complex<double>> bad(4, 0.0);
  bad[0] = 2.0;
  CHECK_THROWS_AS(exact_probabilities(Circuit(2), state_from(bad)), std::invalid_argument);
}

TEST_CASE("sampling is deterministic and concentrated") {
  const std::vector<double> point{1.0, 0.0, 0.0, 0.0};
  const auto counts = sample_counts(point, 1000, 9);
  CHECK(counts[0] == 1000);
  CHECK(counts[1] + counts[2] + counts[3] == 0);

  const std::vector<double> half{0.5, 0.5};
  const auto a = sample_counts(half, 100000, 1234);
  const auto b = sample_counts(half, 100000, 1234);
  CHECK(a == b);
  const auto c = sample_counts(half, 1000000, 4321);
  // 5 sigma around the mean of a fair binomial.
  const double sigma = std::sqrt(1000000.0 * 0.25);
  CHECK(std::abs(static_cast<double>(c[0]) - 500000.0) < 5 * sigma);
  CHECK(c[0] + c[1] == 1000000);
}

TEST_CASE("grouped expectation on stabilizer states") {
  const Solution sol = Solution::build(2);
  CHECK(grouped_expectation(sol, single_term("ZZ"), StateVector(2), EvMode::exact_mode()) ==
        doctest::Approx(1.0));
  const double is2 = 1.0 / std::numbers::sqrt2;
  const StateVector bell = state_from({{is2, 0}, {0, 0}, {0, 0}, {is2, 0}});
  CHECK(grouped_expectation(sol, single_term("XX"), bell, EvMode::exact_mode()) ==
        doctest::Approx(1.0));
  // Identity-only operator.
  WeightedPauliSum ident(2);
  ident.set_identity_coeff(-0.75);
  CHECK(grouped_expectation(sol, ident, bell, EvMode::exact_mode()) == doctest::Approx(-0.75));
}

TEST_CASE("grouped expectation matches the dense oracle") {
  for (int m = 1; m <= 4; ++m) {
    const Solution sol = Solution::build(m);
    for (int trial = 0; trial < 5; ++trial) {
      const std::uint64_t seed = 100 * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(trial);
      const DenseMatrix mat = random_hermitian(m, seed);
      const WeightedPauliSum h = pauli_decompose(mat);
      const auto psi = oracle::random_state(m, seed + 7);
      const double want = oracle::expectation(oracle::from_dense(mat), psi).real();
      const double got = grouped_expectation(sol, h, state_from(psi), EvMode::exact_mode());
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
      // Exact mode is method independent.
      CHECK(qwc_expectation(h, state_from(psi), EvMode::exact_mode()) ==
            doctest::Approx(want).epsilon(1e-9));
      CHECK(naive_expectation(h, state_from(psi), EvMode::exact_mode()) ==
            doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("shot mode is reproducible and converges") {
  const int m = 3;
  const Solution sol = Solution::build(m);
  const DenseMatrix mat = random_hermitian(m, 55);
  const WeightedPauliSum h = pauli_decompose(mat);
  const auto psi_amps = oracle::random_state(m, 56);
  const StateVector psi = state_from(psi_amps);
  const double exact = grouped_expectation(sol, h, psi, EvMode::exact_mode());

  const double once = grouped_expectation(sol, h, psi, EvMode::shots_mode(2000, 77));
  const double again = grouped_expectation(sol, h, psi, EvMode::shots_mode(2000, 77));
  CHECK(once == again);
  CHECK(once != exact);

  auto rms_error = [&](std::uint64_t shots) {
    double acc = 0.0;
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const double ev = grouped_expectation(sol, h, psi, EvMode::shots_mode(shots, seed));
      acc += (ev - exact) * (ev - exact);
    }
    return std::sqrt(acc / 12.0);
  };
  // ~1/sqrt(shots): a 100x shot increase should cut the error by ~10.
  const double coarse = rms_error(200);
  const double fine = rms_error(20000);
  CHECK(fine < coarse / 3.0);
}

TEST_CASE("pauli decomposition") {
  DenseMatrix z(1);
  z.at(0, 0) = 1.0;
  z.at(1, 1) = -1.0;
  const WeightedPauliSum hz = pauli_decompose(z);
  REQUIRE(hz.size() == 1);
  CHECK(hz.terms()[0].pauli == PauliString::parse("Z"));
  CHECK(hz.terms()[0].coeff == doctest::Approx(1.0));
  CHECK(hz.identity_coeff() == doctest::Approx(0.0));

  DenseMatrix ident(2);
  for (std::uint64_t k = 0; k < 4; ++k) ident.at(k, k) = 1.0;
  const WeightedPauliSum hi = pauli_decompose(ident);
  CHECK(hi.size() == 0);
  CHECK(hi.identity_coeff() == doctest::Approx(1.0));

  const DenseMatrix rnd = random_hermitian(3, 71);
  const WeightedPauliSum hr = pauli_decompose(rnd);
  CHECK(oracle::max_abs_diff(oracle::from_pauli_sum(hr), oracle::from_dense(rnd)) < 1e-9);

  DenseMatrix skew(1);
  skew.at(0, 1) = 1.0;
  skew.at(1, 0) = -1.0;
  CHECK_THROWS_AS(pauli_decompose(skew), NotHermitian);
  CHECK_THROWS_AS(pauli_decompose(DenseMatrix(9)), TooLarge);
}

TEST_CASE("coefficient cuts") {
  const DenseMatrix mat = random_hermitian(3, 83);
  const WeightedPauliSum h = pauli_decompose(mat);
  const WeightedPauliSum same = apply_cut(h, 0.0);
  CHECK(same.size() == h.size());
  const WeightedPauliSum none = apply_cut(h, 1e9);
  CHECK(none.size() == 0);
  CHECK(none.identity_coeff() == doctest::Approx(h.identity_coeff()));
  double prev = -1.0;
  for (double tol : {1e-3, 1e-2, 1e-1, 1.0}) {
    const auto cut = apply_cut(h, tol);
    if (prev >= 0) CHECK(static_cast<double>(cut.size()) <= prev);
    prev = static_cast<double>(cut.size());
    for (const WeightedTerm& t : cut.terms()) CHECK(std::abs(t.coeff) >= tol);
  }
  CHECK_THROWS_AS(apply_cut(h, -1.0), std::invalid_argument);
}

TEST_CASE("layered ansatz") {
  AnsatzSpec trivial{2, std::vector<double>(9, 0.0)};
  const StateVector zeros = build_ansatz_state(trivial, 3);
  CHECK(std::abs(zeros.amp(0) - 1.0) < 1e-12);

  AnsatzSpec flip{1, {std::numbers::pi, 0.0}};
  const StateVector one = build_ansatz_state(flip, 1);
  CHECK(std::abs(one.amp(1) - 1.0) < 1e-12);

  AnsatzSpec seeded{2, {}};
  std::mt19937_64 rng(99);
  for (int i = 0; i < 12; ++i) {
    seeded.angles.push_back(static_cast<double>(rng() % 628) / 100.0);
  }
  const StateVector s1 = build_ansatz_state(seeded, 4);
  const StateVector s2 = build_ansatz_state(seeded, 4);
  CHECK(s1.amplitudes() == s2.amplitudes());
  CHECK(std::abs(s1.norm() - 1.0) < 1e-10);

  AnsatzSpec bad{1, {0.0, 0.0, 0.0}};
  CHECK_THROWS_AS(build_ansatz_state(bad, 2), AngleCountMismatch);
}

TEST_CASE("random hermitian generator") {
  const DenseMatrix a = random_hermitian(3, 5);
  const DenseMatrix b = random_hermitian(3, 5);
  const DenseMatrix c = random_hermitian(3, 6);
  CHECK(oracle::max_abs_diff(oracle::from_dense(a), oracle::from_dense(b)) == 0.0);
  CHECK(oracle::max_abs_diff(oracle::from_dense(a), oracle::from_dense(c)) > 1e-3);
  for (std::uint64_t r = 0; r < a.dim(); ++r) {
    for (std::uint64_t col = 0; col < a.dim(); ++col) {
      CHECK(std::abs(a.at(r, col) - std::conj(a.at(col, r))) < 1e-15);
    }
  }
}
