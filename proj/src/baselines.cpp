#include "psfam/baselines.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <ostream>

#include "psfam/measure.hpp"

namespace psfam {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int common_qubits(std::span<const PauliString> strings) {
  if (strings.empty()) throw std::invalid_argument("string set is empty");
  const int m = strings.front().qubits();
  for (const PauliString& s : strings) {
    if (s.qubits() != m) throw QubitMismatch("mixed qubit counts in string set");
  }
  return m;
}

std::uint64_t string_label(const PauliString& s) {
  return (s.x_mask() << s.qubits()) | s.z_mask();
}

}  // namespace

const char* method_name(GroupMethod m) {
  switch (m) {
    case GroupMethod::Dense: return "dense";
    case GroupMethod::QWC: return "qwc";
    case GroupMethod::GC: return "gc";
    case GroupMethod::Naive: return "naive";
  }
  throw std::invalid_argument("unhandled grouping method");
}

GroupingResult greedy_color(std::span<const PauliString> strings, CommutationRelation relation,
                            std::uint64_t max_adjacency_bytes) {
  common_qubits(strings);
  const std::size_t n = strings.size();
  const std::uint64_t adjacency_bits = static_cast<std::uint64_t>(n) * n;
  const std::uint64_t modeled_bytes = adjacency_bits * 8;
  if (modeled_bytes > max_adjacency_bytes) {
    throw AdjacencyGuardError("adjacency for " + std::to_string(n) + " strings needs " +
                              std::to_string(modeled_bytes) + " bytes, cap is " +
                              std::to_string(max_adjacency_bytes));
  }

  const auto t0 = Clock::now();
  const std::size_t words_per_row = (n + 63) / 64;
  std::vector<std::uint64_t> adj(n * words_per_row, 0);
  auto link = [&](std::size_t i, std::size_t j) {
    adj[i * words_per_row + j / 64] |= 1ull << (j % 64);
    adj[j * words_per_row + i / 64] |= 1ull << (i % 64);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool compatible = relation == CommutationRelation::QubitWise
                                  ? qwc_commutes(strings[i], strings[j])
                                  : commutes(strings[i], strings[j]);
      if (!compatible) link(i, j);
    }
  }

  std::vector<std::size_t> degree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t d = 0;
    for (std::size_t w = 0; w < words_per_row; ++w) {
      d += static_cast<std::size_t>(std::popcount(adj[i * words_per_row + w]));
    }
    degree[i] = d;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (degree[a] != degree[b]) return degree[a] > degree[b];
    return string_label(strings[a]) < string_label(strings[b]);
  });

  std::vector<int> color(n, -1);
  int n_colors = 0;
  std::vector<int> stamp;
  for (const std::size_t v : order) {
    stamp.assign(static_cast<std::size_t>(n_colors) + 1, 0);
    for (std::size_t w = 0; w < words_per_row; ++w) {
      std::uint64_t bits = adj[v * words_per_row + w];
      while (bits) {
        const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        if (color[u] >= 0) stamp[static_cast<std::size_t>(color[u])] = 1;
      }
    }
    int c = 0;
    while (stamp[static_cast<std::size_t>(c)]) ++c;
    color[v] = c;
    n_colors = std::max(n_colors, c + 1);
  }

  GroupingResult result;
  result.method = relation == CommutationRelation::QubitWise ? GroupMethod::QWC : GroupMethod::GC;
  result.families.resize(static_cast<std::size_t>(n_colors));
  for (std::size_t i = 0; i < n; ++i) {
    result.families[static_cast<std::size_t>(color[i])].push_back(strings[i]);
  }
  result.walltime_s = seconds_since(t0);
  result.peak_adjacency_bits = adjacency_bits;
  result.memory_proxy_bytes = modeled_bytes;
  return result;
}

GroupingResult run_grouping(GroupMethod method, int m, std::span<const PauliString> strings,
                            std::uint64_t max_adjacency_bytes) {
  switch (method) {
    case GroupMethod::QWC:
      return greedy_color(strings, CommutationRelation::QubitWise, max_adjacency_bytes);
    case GroupMethod::GC:
      return greedy_color(strings, CommutationRelation::General, max_adjacency_bytes);
    case GroupMethod::Naive: {
      const auto t0 = Clock::now();
      GroupingResult result;
      result.method = GroupMethod::Naive;
      result.families.reserve(strings.size());
      for (const PauliString& s : strings) result.families.push_back({s});
      result.walltime_s = seconds_since(t0);
      result.memory_proxy_bytes = 16ull * strings.size();
      return result;
    }
    case GroupMethod::Dense: {
      const auto t0 = Clock::now();
      const Solution sol = Solution::build(m);
      std::vector<std::vector<PauliString>> buckets(sol.family_count());
      const std::size_t per_family = strings.size() / sol.family_count() + 1;
      for (auto& b : buckets) b.reserve(std::min(per_family, sol.n() - 1));
      for (const PauliString& s : strings) {
        if (s.qubits() != m) throw QubitMismatch("string qubit count does not match m");
        buckets[sol.lookup_family(s).value].push_back(s);
      }
      GroupingResult result;
      result.method = GroupMethod::Dense;
      for (auto& b : buckets) {
        if (!b.empty()) result.families.push_back(std::move(b));
      }
      result.walltime_s = seconds_since(t0);
      result.memory_proxy_bytes = sol.table_bytes() + 16ull * strings.size();
      return result;
    }
  }
  throw std::invalid_argument("unhandled grouping method");
}

std::vector<PauliString> all_pauli_strings(int m) {
  const std::uint64_t n = 1ull << m;
  std::vector<PauliString> out;
  out.reserve(n * n - 1);
  for (std::uint64_t x = 0; x < n; ++x) {
    for (std::uint64_t z = 0; z < n; ++z) {
      if (x == 0 && z == 0) continue;
      out.emplace_back(m, x, z);
    }
  }
  return out;
}

std::vector<DensitySweepRow> density_sweep(int m, std::uint64_t seed,
                                           std::span<const double> cuts) {
  if (m > 6) throw TooLarge("density_sweep capped at 6 qubits (GC adjacency)");
  const WeightedPauliSum base = pauli_decompose(random_hermitian(m, seed));
  const double full = static_cast<double>((1ull << (2 * m)) - 1);
  std::vector<DensitySweepRow> rows;
  rows.reserve(cuts.size());
  for (const double cut : cuts) {
    const WeightedPauliSum pruned = apply_cut(base, cut);
    std::vector<PauliString> strings;
    strings.reserve(pruned.size());
    for (const WeightedTerm& t : pruned.terms()) strings.push_back(t.pauli);
    DensitySweepRow row{cut, 100.0 * static_cast<double>(strings.size()) / full, strings.size(),
                        0, 0, 0};
    if (!strings.empty()) {
      row.n_dense = run_grouping(GroupMethod::Dense, m, strings).families.size();
      row.n_gc = run_grouping(GroupMethod::GC, m, strings).families.size();
      row.n_qwc = run_grouping(GroupMethod::QWC, m, strings).families.size();
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<ScalingRow> scaling_bench(int m_lo, int m_hi, GroupMethod method,
                                      std::uint64_t max_adjacency_bytes) {
  if (m_lo < 1 || m_hi < m_lo) throw std::invalid_argument("bad qubit range");
  const std::size_t count = static_cast<std::size_t>(m_hi - m_lo + 1);
  std::vector<std::vector<PauliString>> inputs;
  inputs.reserve(count);
  std::vector<ScalingRow> rows;
  for (int m = m_lo; m <= m_hi; ++m) {
    inputs.push_back(all_pauli_strings(m));
    const GroupingResult warmup = run_grouping(method, m, inputs.back(), max_adjacency_bytes);
    rows.push_back({m, warmup.walltime_s, warmup.memory_proxy_bytes});
  }
  // Timed repetitions are interleaved round-robin over the m values so every
  // size samples the same machine phases; the per-m minimum is the estimate.
  const auto t0 = Clock::now();
  int rounds = 0;
  do {
    for (std::size_t i = 0; i < count; ++i) {
      const double t =
          run_grouping(method, rows[i].m, inputs[i], max_adjacency_bytes).walltime_s;
      rows[i].walltime_s = std::min(rows[i].walltime_s, t);
    }
    ++rounds;
  } while ((seconds_since(t0) < 1.5 || rounds < 8) && rounds < 500);
  return rows;
}

void write_csv(std::ostream& os, std::span<const BenchRow> rows) {
  os << "method,m,density_pct,n_strings,n_families,walltime_s,memory_proxy_bytes\n";
  for (const BenchRow& r : rows) {
    os << r.method << ',' << r.m << ',' << r.density_pct << ',' << r.n_strings << ','
       << r.n_families << ',' << r.walltime_s << ',' << r.memory_proxy_bytes << '\n';
  }
}

}  // namespace psfam
