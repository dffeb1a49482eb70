#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zd/field.hpp"

namespace zd {

// Cayley graph on the additive group of F_p with connection set Z_d.
// Requires d even (so -1 lies in Z_d and the graph is undirected) and
// d < p-1. For p = 1 mod 4 and d = (p-1)/2 this is the Paley graph.
class CayleyGraph {
 public:
  CayleyGraph(const PrimeField& field, uint64_t d);

  const PrimeField& field() const { return field_; }
  uint64_t p() const { return field_.p(); }
  uint64_t d() const { return d_; }
  const std::vector<uint64_t>& connection() const { return connection_; }

  bool adjacent(uint64_t x, uint64_t y) const {
    return x != y && connection_mask_[field_.sub(x, y)];
  }

 private:
  PrimeField field_;
  uint64_t d_;
  std::vector<uint64_t> connection_;     // Z_d, sorted
  std::vector<uint8_t> connection_mask_;
};

struct CliqueResult {
  uint64_t omega = 0;                // exact when `exact`, else a lower bound
  std::vector<uint64_t> witness;     // sorted clique of size omega
  uint64_t explored_nodes = 0;
  double elapsed_ms = 0.0;
  bool exact = true;                 // false once the node budget ran out
};

// Exact maximum clique by branch and bound with greedy-coloring bounds over
// bitset candidate rows. Vertices are explored in ascending residue order
// and the witness is the lexicographically smallest maximum clique. With a
// node budget the search may stop early; the result is then flagged as a
// lower bound, never passed off as exact.
CliqueResult clique_number(const CayleyGraph& graph,
                           std::optional<uint64_t> budget = std::nullopt);

struct CliqueBoundReport {
  uint64_t p = 0;
  uint64_t d = 0;
  uint64_t omega = 0;
  bool subgroup_bound_ok = false;  // omega * (omega - 1) <= d
  bool paley = false;              // d == (p-1)/2 and p = 1 mod 4
  bool refined_bound_ok = false;   // (2*omega - 1)^2 <= 2p - 1, integer form
  double refined_bound = 0.0;      // (sqrt(2p-1) + 1) / 2
  double legacy_bound = 0.0;       // sqrt(p - 4)
  double legacy_slack = 0.0;       // legacy_bound - omega
};

// Checks the clique number against the subgroup bound and, in the Paley
// case, the refined square-root bound (compared in exact integers). A
// violation would contradict a theorem and raises BoundViolated.
CliqueBoundReport check_clique_bounds(uint64_t p, uint64_t d,
                                      const CliqueResult& result);

}  // namespace zd
