#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "ucpfem/assembly.hpp"
#include "ucpfem/mesh.hpp"
#include "ucpfem/tolerances.hpp"

namespace ucpfem {

struct EdgeAttr {
  double m = 0.0;   // mass entry, positive for every graph edge
  double a = 0.0;   // stiffness entry
  bool leaky = false;  // a > sign threshold: the edge may not transmit a force
};

struct MeshGraph {
  int n = 0;
  std::vector<std::vector<int>> adjacency;          // sorted neighbour lists
  std::map<std::pair<int, int>, EdgeAttr> edges;    // keyed (min,max)

  bool has_edge(int u, int v) const { return edges.count(detail::edge_key(u, v)) != 0; }
  const EdgeAttr& attr(int u, int v) const { return edges.at(detail::edge_key(u, v)); }
};

// Vertices are mesh nodes; edges are pairs with positive mass entry.  For
// quads that includes both element diagonals.  Leak flags use the same
// threshold as sign_audit.
inline MeshGraph build_graph(const AssembledSystem& sys, const Tolerances& tol = {}) {
  MeshGraph g;
  g.n = sys.n();
  g.adjacency.assign(static_cast<std::size_t>(g.n), {});
  const double thr = tol.sign * sys.max_abs_a;
  for (const auto& [i, j] : sys.structure) {
    if (i == j || !(sys.M(i, j) > 0.0)) continue;
    EdgeAttr e;
    e.m = sys.M(i, j);
    e.a = sys.A(i, j);
    e.leaky = sys.A(i, j) > thr;
    g.edges.emplace(std::make_pair(i, j), e);
    g.adjacency[i].push_back(j);
    g.adjacency[j].push_back(i);
  }
  for (auto& nb : g.adjacency) std::sort(nb.begin(), nb.end());
  return g;
}

struct ForcingStep {
  int forcer = -1;
  int forced = -1;
  std::pair<int, int> edge;  // (min,max)
};

struct ForcingResult {
  std::vector<char> final_blue;         // indicator per vertex
  std::vector<ForcingStep> chronicle;   // in firing order
  bool forced_all = false;

  std::vector<int> blue_set() const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(final_blue.size()); ++v)
      if (final_blue[v]) out.push_back(v);
    return out;
  }
};

// Colour-change closure: a blue vertex with exactly one white neighbour
// forces it; with use_leaks, only if the connecting edge is not leaky (a
// white neighbour across a leak still blocks — its value is just as unknown).
// The rule is confluent, so the final set does not depend on firing order;
// we fire the smallest legal (forcer, forced) pair for a reproducible
// chronicle.
inline ForcingResult forcing_closure(const MeshGraph& g, const std::vector<int>& seed,
                                     bool use_leaks) {
  ForcingResult r;
  r.final_blue.assign(static_cast<std::size_t>(g.n), 0);
  for (int v : seed) {
    if (v < 0 || v >= g.n) throw std::invalid_argument("forcing_closure: seed vertex out of range");
    r.final_blue[v] = 1;
  }
  for (;;) {
    int best_forcer = -1, best_forced = -1;
    for (int v = 0; v < g.n; ++v) {
      if (!r.final_blue[v]) continue;
      int white = -1, white_count = 0;
      for (int w : g.adjacency[v])
        if (!r.final_blue[w]) {
          white = w;
          if (++white_count > 1) break;
        }
      if (white_count != 1) continue;
      if (use_leaks && g.attr(v, white).leaky) continue;
      if (best_forcer == -1 || std::make_pair(v, white) < std::make_pair(best_forcer, best_forced)) {
        best_forcer = v;
        best_forced = white;
      }
    }
    if (best_forcer == -1) break;
    r.final_blue[best_forced] = 1;
    r.chronicle.push_back({best_forcer, best_forced, detail::edge_key(best_forcer, best_forced)});
  }
  r.forced_all = std::all_of(r.final_blue.begin(), r.final_blue.end(), [](char c) { return c != 0; });
  return r;
}

inline bool is_zfs(const MeshGraph& g, const std::vector<int>& seed) {
  return forcing_closure(g, seed, /*use_leaks=*/false).forced_all;
}

// Z(G;B) - |B|: the minimum number of extra vertices whose union with `base`
// forces the whole graph.  Exhaustive search over subsets of increasing size
// in colexicographic order; nullopt when no subset of size <= cap works.
// Fixtures are tiny, so plain enumeration is the right tool.
inline std::optional<int> restricted_zf_excess(const MeshGraph& g, const std::vector<int>& base,
                                               int cap) {
  if (cap < 0) throw std::invalid_argument("restricted_zf_excess: cap must be nonnegative");
  if (forcing_closure(g, base, false).forced_all) return 0;

  std::vector<char> in_base(static_cast<std::size_t>(g.n), 0);
  for (int v : base) {
    if (v < 0 || v >= g.n) throw std::invalid_argument("restricted_zf_excess: base vertex out of range");
    in_base[v] = 1;
  }
  std::vector<int> candidates;
  for (int v = 0; v < g.n; ++v)
    if (!in_base[v]) candidates.push_back(v);

  const int nc = static_cast<int>(candidates.size());
  for (int size = 1; size <= cap && size <= nc; ++size) {
    // index combinations in colex order: advance the lowest index first
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      std::vector<int> seed = base;
      for (int i : idx) seed.push_back(candidates[i]);
      if (forcing_closure(g, seed, false).forced_all) return size;
      // next combination in colex: find the first index that can move right
      // without touching its successor
      int k = 0;
      while (k < size) {
        const int limit = (k + 1 < size) ? idx[k + 1] : nc;
        if (idx[k] + 1 < limit) break;
        ++k;
      }
      if (k == size) break;
      ++idx[k];
      for (int i = 0; i < k; ++i) idx[i] = i;
    }
  }
  return std::nullopt;
}

// Combinatorial UCP certificate for tensor-product meshes: distrust every
// axis-parallel edge (their assembled sign depends on cell aspect ratios)
// and force using only cell diagonals, whose elemental stiffness value
// -(hx/hy + hy/hx)/6 is negative for every aspect ratio.  Succeeding from
// the bottom row + left column proves that zero Cauchy data spreads across
// the whole grid for every lambda.
inline ForcingResult tensor_leaky_certificate(const Mesh& mesh, const AssembledSystem& sys,
                                              const std::vector<int>& seed,
                                              const Tolerances& tol = {}) {
  if (mesh.kind != MeshKind::Quadrilateral)
    throw std::invalid_argument("tensor_leaky_certificate: requires a quadrilateral mesh");
  MeshGraph g = build_graph(sys, tol);
  for (auto& [key, attr] : g.edges) {
    const Point2& a = mesh.nodes[key.first];
    const Point2& b = mesh.nodes[key.second];
    attr.leaky = (a.x == b.x) || (a.y == b.y);
  }
  return forcing_closure(g, seed, /*use_leaks=*/true);
}

// bottom row + left column of a tensor-product mesh built by gen_tensor_product
inline std::vector<int> tensor_bottom_left_seed(int nx, int ny) {
  std::vector<int> seed;
  for (int i = 0; i < nx; ++i) seed.push_back(i);
  for (int j = 1; j < ny; ++j) seed.push_back(j * nx);
  std::sort(seed.begin(), seed.end());
  return seed;
}

}  // namespace ucpfem
