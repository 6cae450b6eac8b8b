#pragma once

#include <iosfwd>
#include <span>

#include "psfam/partition.hpp"

namespace psfam {

struct AdjacencyGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class GroupMethod { Dense, QWC, GC, Naive };

enum class CommutationRelation { QubitWise, General };

const char* method_name(GroupMethod m);

// Guard limit for coloring-based groupers.  The modeled footprint is the
// dense n x n adjacency a graph library materializes (8 bytes per entry),
// which is what grows as 16^m for fully dense operators; the in-process
// bitset is much smaller.  2e9 bytes puts the fully dense boundary between
// m = 6 (134 MB) and m = 7 (2.1 GB).
inline constexpr std::uint64_t kDefaultAdjacencyCapBytes = 2'000'000'000ull;

struct GroupingResult {
  GroupMethod method;
  std::vector<std::vector<PauliString>> families;
  double walltime_s = 0.0;
  std::uint64_t peak_adjacency_bits = 0;   // coloring methods only
  std::uint64_t memory_proxy_bytes = 0;
};

// Largest First greedy coloring of the non-commutation graph under the chosen
// relation.  Vertices are visited in descending degree, ties broken by
// ascending string label (x_mask * 2^m + z_mask); each vertex takes the
// smallest color absent from its neighbors.  The adjacency is a packed bit
// matrix; the guard compares the modeled dense footprint against the cap.
GroupingResult greedy_color(std::span<const PauliString> strings, CommutationRelation relation,
                            std::uint64_t max_adjacency_bytes = kDefaultAdjacencyCapBytes);

// Run one grouping method over a string set, recording walltime and the
// method's memory proxy.  Dense builds the solution for m and assigns every
// string by lookup; Naive gives each string its own family.
GroupingResult run_grouping(GroupMethod method, int m, std::span<const PauliString> strings,
                            std::uint64_t max_adjacency_bytes = kDefaultAdjacencyCapBytes);

// All 4^m - 1 non-identity strings in ascending label order.
std::vector<PauliString> all_pauli_strings(int m);

struct DensitySweepRow {
  double cut;
  double density_pct;     // 100 * n_strings / (4^m - 1)
  std::size_t n_strings;
  std::size_t n_dense;
  std::size_t n_gc;
  std::size_t n_qwc;
};

// Decompose one seeded random Hermitian, then group the surviving strings
// with all three methods for each cut.  Needs m <= 6 so GC fits the guard.
std::vector<DensitySweepRow> density_sweep(int m, std::uint64_t seed,
                                           std::span<const double> cuts);

struct ScalingRow {
  int m;
  double walltime_s;
  std::uint64_t memory_proxy_bytes;
};

// Group the fully dense string set for each m in [m_lo, m_hi]; short runs are
// repeated and averaged so small-m walltimes are stable.
std::vector<ScalingRow> scaling_bench(int m_lo, int m_hi, GroupMethod method,
                                      std::uint64_t max_adjacency_bytes = kDefaultAdjacencyCapBytes);

struct BenchRow {
  std::string method;
  int m;
  double density_pct;
  std::size_t n_strings;
  std::size_t n_families;
  double walltime_s;
  std::uint64_t memory_proxy_bytes;
};

// Header: method,m,density_pct,n_strings,n_families,walltime_s,memory_proxy_bytes
void write_csv(std::ostream& os, std::span<const BenchRow> rows);

}  // namespace psfam
