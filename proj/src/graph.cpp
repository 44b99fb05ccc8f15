#include "ggdp/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ggdp/rng.hpp"

namespace ggdp {

std::vector<int> vs_list(VertexSet s) {
  std::vector<int> out;
  while (s) {
    int v = std::countr_zero(s);
    out.push_back(v);
    s &= s - 1;
  }
  return out;
}

std::string vs_str(VertexSet s) {
  std::string out = "{";
  bool first = true;
  for (int v : vs_list(s)) {
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

Instance make_instance(int n, std::vector<std::pair<int, int>> edges, VertexSet closed) {
  if (n < 1 || n > kMaxVertices)
    throw std::invalid_argument("vertex count must be in 1.." + std::to_string(kMaxVertices));
  if (closed & ~vs_all(n)) throw std::invalid_argument("C contains a vertex outside 1..n");

  Instance inst;
  inst.n = n;
  inst.closed = closed;
  inst.open_adj.assign(n + 1, 0);

  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
    if (u < 1 || v > n) throw std::invalid_argument("edge endpoint out of 1..n");
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("duplicate edge");
  inst.edges = std::move(edges);

  for (auto [u, v] : inst.edges) {
    inst.open_adj[u] |= vbit(v);
    inst.open_adj[v] |= vbit(u);
  }
  for (int v = 1; v <= n; ++v)
    if (!inst.in_c(v) && inst.open_adj[v] == 0)
      throw std::invalid_argument("vertex " + std::to_string(v) + " is isolated and outside C");
  return inst;
}

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1, m_edges = -1;
  bool seen_c = false;
  VertexSet closed = 0;
  std::vector<std::pair<int, int>> edges;

  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    const std::string where = " (line " + std::to_string(lineno) + ")";
    if (tag == "p") {
      std::string fmt;
      if (n != -1) throw std::invalid_argument("duplicate p line" + where);
      if (!(ls >> fmt >> n >> m_edges) || fmt != "ggdp")
        throw std::invalid_argument("malformed p line, expected `p ggdp <n> <edges>`" + where);
      if (n < 1 || n > kMaxVertices)
        throw std::invalid_argument("vertex count out of range" + where);
    } else if (tag == "c") {
      if (n == -1) throw std::invalid_argument("c line before p line" + where);
      if (seen_c) throw std::invalid_argument("duplicate c line" + where);
      seen_c = true;
      int v;
      while (ls >> v) {
        if (v < 1 || v > n)
          throw std::invalid_argument("C vertex " + std::to_string(v) + " out of 1..n" + where);
        closed |= vbit(v);
      }
      if (!ls.eof()) throw std::invalid_argument("malformed c line" + where);
    } else if (tag == "e") {
      if (n == -1) throw std::invalid_argument("e line before p line" + where);
      int u, v;
      if (!(ls >> u >> v)) throw std::invalid_argument("malformed e line" + where);
      if (u < 1 || u > n || v < 1 || v > n)
        throw std::invalid_argument("edge endpoint out of 1..n" + where);
      edges.emplace_back(u, v);
    } else {
      throw std::invalid_argument("unknown line tag `" + tag + "`" + where);
    }
  }
  if (n == -1) throw std::invalid_argument("missing p line");
  if (static_cast<int>(edges.size()) != m_edges)
    throw std::invalid_argument("edge count mismatch: header says " + std::to_string(m_edges) +
                                ", found " + std::to_string(edges.size()));
  return make_instance(n, std::move(edges), closed);
}

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  out << "p ggdp " << inst.n << " " << inst.edges.size() << "\n";
  out << "c";
  for (int v : vs_list(inst.closed)) out << " " << v;
  out << "\n";
  for (auto [u, v] : inst.edges) out << "e " << u << " " << v << "\n";
  return out.str();
}

int upper_bound_m(const Instance& inst) {
  int delta = inst.n + 1;
  for (int v = 1; v <= inst.n; ++v) delta = std::min(delta, vs_card(inst.nb(v)));
  return inst.n - delta + 1;
}

bool precedes(const Instance& inst, int v1, int v2) {
  if (v1 == v2) throw std::invalid_argument("precedes requires distinct vertices");
  return (inst.nb(v2) & ~inst.nb(v1)) != 0;
}

bool is_clutter(const Instance& inst) {
  for (int u = 1; u <= inst.n; ++u)
    for (int v = 1; v <= inst.n; ++v)
      if (u != v && (inst.nb(v) & ~inst.nb(u)) == 0) return false;
  return true;
}

bool is_strong_clutter(const Instance& inst) {
  for (int u = 1; u <= inst.n; ++u)
    for (int v = 1; v <= inst.n; ++v)
      if (u != v && vs_card(inst.nb(v) & ~inst.nb(u)) < 2) return false;
  return true;
}

bool is_connected(const Instance& inst) {
  VertexSet seen = vbit(1);
  VertexSet frontier = seen;
  while (frontier) {
    VertexSet next = 0;
    for (int v : vs_list(frontier)) next |= inst.open_adj[v];
    frontier = next & ~seen;
    seen |= frontier;
  }
  return seen == inst.vertices();
}

std::vector<std::pair<int, int>> find_twins(const Instance& inst) {
  std::vector<std::pair<int, int>> out;
  for (int u = 1; u <= inst.n; ++u)
    for (int v = u + 1; v <= inst.n; ++v)
      if (inst.nb(u) == inst.nb(v)) out.emplace_back(u, v);
  return out;
}

bool is_twin_free(const Instance& inst) { return find_twins(inst).empty(); }

namespace {

// Deletes a set of vertices, compact-relabeling the rest in id order.
Instance delete_vertices(const Instance& inst, VertexSet del) {
  std::vector<int> newid(inst.n + 1, 0);
  int next = 0;
  for (int v = 1; v <= inst.n; ++v)
    if (!vs_has(del, v)) newid[v] = ++next;
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : inst.edges)
    if (newid[u] && newid[v]) edges.emplace_back(newid[u], newid[v]);
  VertexSet closed = 0;
  for (int v : vs_list(inst.closed))
    if (newid[v]) closed |= vbit(newid[v]);
  return make_instance(next, std::move(edges), closed);
}

}  // namespace

std::pair<Instance, std::vector<int>> reduce_twins(const Instance& inst) {
  // Work on the original labels; one twin deletion can create or expose new
  // twin pairs, so recompute after each removal.
  std::vector<int> removed;
  VertexSet alive = inst.vertices();
  auto nb_alive = [&](int v) {
    return (inst.open_adj[v] | (inst.in_c(v) ? vbit(v) : 0)) & alive;
  };
  for (;;) {
    bool found = false;
    for (int u = 1; u <= inst.n && !found; ++u) {
      if (!vs_has(alive, u)) continue;
      for (int v = u + 1; v <= inst.n && !found; ++v) {
        if (!vs_has(alive, v)) continue;
        if (nb_alive(u) == nb_alive(v)) {
          alive &= ~vbit(v);
          removed.push_back(v);
          found = true;
        }
      }
    }
    if (!found) break;
  }
  return {delete_vertices(inst, inst.vertices() & ~alive), removed};
}

std::vector<Component> split_components(const Instance& inst) {
  std::vector<Component> out;
  VertexSet seen = 0;
  for (int s = 1; s <= inst.n; ++s) {
    if (vs_has(seen, s)) continue;
    VertexSet comp = vbit(s), frontier = comp;
    while (frontier) {
      VertexSet next = 0;
      for (int v : vs_list(frontier)) next |= inst.open_adj[v];
      frontier = next & ~comp;
      comp |= frontier;
    }
    seen |= comp;
    Component c;
    c.orig.push_back(0);
    for (int v : vs_list(comp)) c.orig.push_back(v);
    c.inst = delete_vertices(inst, inst.vertices() & ~comp);
    out.push_back(std::move(c));
  }
  return out;
}

Instance gen_path(int n, VertexSet C) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
  return make_instance(n, std::move(edges), C);
}

Instance gen_web(int n, int k, VertexSet C0) {
  if (n < 2 * (k + 1))
    throw std::invalid_argument("web requires n >= 2(k+1)");
  std::set<std::pair<int, int>> edges;  // set: distance-k neighbors can coincide
  for (int i = 0; i < n; ++i)
    for (int d = 1; d <= k; ++d) {
      int j = (i + d) % n;
      edges.emplace(std::min(i, j) + 1, std::max(i, j) + 1);
    }
  VertexSet C = 0;
  for (int i = 0; i < n; ++i)
    if (vs_has(C0, i)) C |= vbit(i + 1);
  return make_instance(n, std::vector<std::pair<int, int>>(edges.begin(), edges.end()), C);
}

Instance gen_random(int n, double p, CMode c_mode, std::uint64_t seed, int max_retries) {
  if (n < 3) throw std::invalid_argument("gen_random requires n >= 3");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0,1]");
  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v)
        if (rng.next_unit() < p) edges.emplace_back(u, v);
    VertexSet C = 0;
    switch (c_mode) {
      case CMode::Empty: break;
      case CMode::All: C = vs_all(n); break;
      case CMode::Half: {
        std::vector<int> ids(n);
        for (int i = 0; i < n; ++i) ids[i] = i + 1;
        for (int i = n - 1; i > 0; --i)
          std::swap(ids[i], ids[rng.next_below(i + 1)]);
        for (int i = 0; i < n / 2; ++i) C |= vbit(ids[i]);
        break;
      }
    }
    try {
      Instance inst = make_instance(n, std::move(edges), C);
      if (is_connected(inst) && is_twin_free(inst)) return inst;
    } catch (const std::invalid_argument&) {
      // isolated vertex outside C: resample like any other rejection
    }
  }
  throw std::runtime_error("gen_random: no connected twin-free instance after " +
                           std::to_string(max_retries) + " attempts");
}

Instance add_twin(const Instance& inst, int u) {
  if (u < 1 || u > inst.n) throw std::invalid_argument("add_twin: vertex out of range");
  int t = inst.n + 1;
  auto edges = inst.edges;
  for (int w : vs_list(inst.open_adj[u])) edges.emplace_back(w, t);
  if (inst.in_c(u)) edges.emplace_back(u, t);
  VertexSet closed = inst.closed | (inst.in_c(u) ? vbit(t) : 0);
  return make_instance(t, std::move(edges), closed);
}

}  // namespace ggdp
