#pragma once
#include <cstdint>
#include <vector>

#include "ggdp/graph.hpp"

namespace ggdp {

struct LegalSequence {
  std::vector<int> vertices;
  std::vector<VertexSet> footprints;  // W_i per step
  bool dominating = false;
};

struct SequenceCheck {
  bool legal = false;
  bool dominating = false;
  std::vector<VertexSet> footprints;  // up to the first violation when illegal
};

SequenceCheck check_sequence(const Instance& inst, const std::vector<int>& vertices);

// Appends the vertex footprinting the fewest (but >= 1) new vertices, smallest
// id on ties, until no vertex extends the sequence. The result is maximal,
// hence dominating, and its length is a lower bound for gamma_gr.
LegalSequence greedy_sequence(const Instance& inst);

inline constexpr std::uint64_t kDefaultBudget = 50'000'000;

struct GrundyResult {
  bool solved = false;  // false: node budget exhausted, value/witness unset
  int value = 0;
  std::vector<int> witness;
  std::uint64_t nodes = 0;
};

// Exact gamma_gr by memoized DP over the footprinted set W: extending by v is
// legal iff N<v> \ W is nonempty, and the best completion depends only on W.
GrundyResult grundy_exact(const Instance& inst, std::uint64_t node_budget = kDefaultBudget);

// i(G;C,v): the largest step at which v occurs in some legal sequence.
GrundyResult max_step_index(const Instance& inst, int v,
                            std::uint64_t node_budget = kDefaultBudget);

// Node budget override from the environment (GGDP_BUDGET), else the default.
std::uint64_t budget_from_env();

}  // namespace ggdp
