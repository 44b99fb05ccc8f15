#include "ggdp/sequence.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <unordered_map>

namespace ggdp {

SequenceCheck check_sequence(const Instance& inst, const std::vector<int>& vertices) {
  SequenceCheck out;
  VertexSet covered = 0, used = 0;
  for (int v : vertices) {
    if (v < 1 || v > inst.n) throw std::invalid_argument("vertex out of range");
    VertexSet w = inst.nb(v) & ~covered;
    if (vs_has(used, v) || w == 0) return out;  // legal stays false
    out.footprints.push_back(w);
    covered |= w;
    used |= vbit(v);
  }
  out.legal = true;
  out.dominating = covered == inst.vertices();
  return out;
}

LegalSequence greedy_sequence(const Instance& inst) {
  LegalSequence seq;
  VertexSet covered = 0, used = 0;
  for (;;) {
    int best = 0, best_new = inst.n + 1;
    for (int v = 1; v <= inst.n; ++v) {
      if (vs_has(used, v)) continue;
      int nw = vs_card(inst.nb(v) & ~covered);
      if (nw >= 1 && nw < best_new) {
        best = v;
        best_new = nw;
      }
    }
    if (!best) break;
    seq.vertices.push_back(best);
    seq.footprints.push_back(inst.nb(best) & ~covered);
    covered |= inst.nb(best);
    used |= vbit(best);
  }
  seq.dominating = covered == inst.vertices();
  return seq;
}

namespace {

struct Solver {
  const Instance& inst;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool aborted = false;
  std::unordered_map<VertexSet, int> memo;

  explicit Solver(const Instance& i, std::uint64_t b) : inst(i), budget(b) {}

  int best_from(VertexSet covered) {
    if (aborted) return 0;
    auto it = memo.find(covered);
    if (it != memo.end()) return it->second;
    if (++nodes > budget) {
      aborted = true;
      return 0;
    }
    int best = 0;
    for (int v = 1; v <= inst.n; ++v) {
      // choosing v requires a nonempty footprint; that also rules out repeats
      if ((inst.nb(v) & ~covered) == 0) continue;
      best = std::max(best, 1 + best_from(covered | inst.nb(v)));
    }
    if (!aborted) memo.emplace(covered, best);
    return best;
  }
};

}  // namespace

GrundyResult grundy_exact(const Instance& inst, std::uint64_t node_budget) {
  Solver s(inst, node_budget);
  int value = s.best_from(0);
  GrundyResult out;
  out.nodes = s.nodes;
  if (s.aborted) return out;
  out.solved = true;
  out.value = value;
  VertexSet covered = 0;
  for (int len = value; len > 0;) {
    for (int v = 1; v <= inst.n; ++v) {
      if ((inst.nb(v) & ~covered) == 0) continue;
      if (1 + s.memo.at(covered | inst.nb(v)) == len) {
        out.witness.push_back(v);
        covered |= inst.nb(v);
        --len;
        break;
      }
    }
  }
  if (covered != inst.vertices())
    throw std::logic_error("maximal legal witness fails to dominate");
  return out;
}

GrundyResult max_step_index(const Instance& inst, int v, std::uint64_t node_budget) {
  if (v < 1 || v > inst.n) throw std::invalid_argument("vertex out of range");
  GrundyResult out;
  // longest legal prefix reaching each footprint union W, forward-relaxed in
  // popcount order (every transition strictly grows W)
  std::unordered_map<VertexSet, int> reach;  // W -> max prefix length
  std::unordered_map<VertexSet, std::pair<VertexSet, int>> pred;
  reach[0] = 0;
  std::vector<VertexSet> frontier = {0}, states = {0};
  std::unordered_map<VertexSet, bool> seen;
  seen[0] = true;
  while (!frontier.empty()) {
    std::vector<VertexSet> next;
    for (VertexSet w : frontier)
      for (int u = 1; u <= inst.n; ++u) {
        if ((inst.nb(u) & ~w) == 0) continue;
        VertexSet w2 = w | inst.nb(u);
        if (++out.nodes > node_budget) return out;  // solved stays false
        if (!seen[w2]) {
          seen[w2] = true;
          next.push_back(w2);
          states.push_back(w2);
        }
      }
    frontier = std::move(next);
  }
  std::sort(states.begin(), states.end(),
            [](VertexSet a, VertexSet b) { return vs_card(a) < vs_card(b); });
  for (VertexSet w : states) {
    int len = reach.at(w);
    for (int u = 1; u <= inst.n; ++u) {
      if ((inst.nb(u) & ~w) == 0) continue;
      VertexSet w2 = w | inst.nb(u);
      auto it = reach.find(w2);
      if (it == reach.end() || it->second < len + 1) {
        reach[w2] = len + 1;
        pred[w2] = {w, u};
      }
    }
  }
  int best = -1;
  VertexSet best_w = 0;
  for (VertexSet w : states)
    if ((inst.nb(v) & ~w) != 0 && reach.at(w) > best) {
      best = reach.at(w);
      best_w = w;
    }
  out.solved = true;
  out.value = best + 1;
  std::vector<int> prefix;
  for (VertexSet w = best_w; w != 0;) {
    auto [pw, u] = pred.at(w);
    prefix.push_back(u);
    w = pw;
  }
  std::reverse(prefix.begin(), prefix.end());
  prefix.push_back(v);
  out.witness = std::move(prefix);
  return out;
}

std::uint64_t budget_from_env() {
  if (const char* s = std::getenv("GGDP_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

}  // namespace ggdp
