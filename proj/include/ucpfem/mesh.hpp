#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ucpfem {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

enum class ElementKind { Tri, Quad };

// Node indices are counter-clockwise; Tri uses the first three slots.
struct Element {
  ElementKind kind = ElementKind::Tri;
  std::array<int, 4> nodes{-1, -1, -1, -1};

  int size() const { return kind == ElementKind::Tri ? 3 : 4; }
};

inline Element make_tri(int a, int b, int c) { return {ElementKind::Tri, {a, b, c, -1}}; }
inline Element make_quad(int a, int b, int c, int d) { return {ElementKind::Quad, {a, b, c, d}}; }

enum class MeshKind { Triangular, Quadrilateral };

struct Mesh {
  MeshKind kind = MeshKind::Triangular;
  std::vector<Point2> nodes;
  std::vector<Element> elements;

  int node_count() const { return static_cast<int>(nodes.size()); }
};

// interior/boundary split of the node indices, both sorted ascending
struct BoundaryPartition {
  std::vector<int> interior;
  std::vector<int> boundary;
};

inline double tri_signed_area2(const Point2& a, const Point2& b, const Point2& c) {
  return (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
}

inline double element_signed_area(const Mesh& m, const Element& e) {
  if (e.kind == ElementKind::Tri)
    return 0.5 * tri_signed_area2(m.nodes[e.nodes[0]], m.nodes[e.nodes[1]], m.nodes[e.nodes[2]]);
  // shoelace over the four corners
  double s = 0.0;
  for (int k = 0; k < 4; ++k) {
    const Point2& p = m.nodes[e.nodes[k]];
    const Point2& q = m.nodes[e.nodes[(k + 1) % 4]];
    s += p.x * q.y - q.x * p.y;
  }
  return 0.5 * s;
}

inline double mesh_diameter(const Mesh& m) {
  if (m.nodes.empty()) return 0.0;
  double xmin = m.nodes[0].x, xmax = xmin, ymin = m.nodes[0].y, ymax = ymin;
  for (const auto& p : m.nodes) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  return std::hypot(xmax - xmin, ymax - ymin);
}

namespace detail {

// element side (not a quad diagonal) as an unordered node pair
inline std::pair<int, int> edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

inline std::map<std::pair<int, int>, std::vector<int>> side_owners(const Mesh& m) {
  std::map<std::pair<int, int>, std::vector<int>> owners;
  for (std::size_t ei = 0; ei < m.elements.size(); ++ei) {
    const Element& e = m.elements[ei];
    const int n = e.size();
    for (int k = 0; k < n; ++k)
      owners[edge_key(e.nodes[k], e.nodes[(k + 1) % n])].push_back(static_cast<int>(ei));
  }
  return owners;
}

}  // namespace detail

// Every invariant violation as its own message, in a deterministic order.
// An empty result means the mesh is valid.
inline std::vector<std::string> validate(const Mesh& m) {
  std::vector<std::string> out;
  const int n = m.node_count();

  for (int i = 0; i < n; ++i)
    if (!std::isfinite(m.nodes[i].x) || !std::isfinite(m.nodes[i].y))
      out.push_back("node " + std::to_string(i) + ": non-finite coordinate");

  bool indices_ok = true;
  for (std::size_t ei = 0; ei < m.elements.size(); ++ei) {
    const Element& e = m.elements[ei];
    const std::string tag = "element " + std::to_string(ei);
    if ((m.kind == MeshKind::Triangular) != (e.kind == ElementKind::Tri))
      out.push_back(tag + ": kind differs from mesh kind");
    const int sz = e.size();
    bool local_ok = true;
    for (int k = 0; k < sz; ++k)
      if (e.nodes[k] < 0 || e.nodes[k] >= n) {
        out.push_back(tag + ": node index out of range");
        local_ok = false;
        break;
      }
    if (!local_ok) {
      indices_ok = false;
      continue;
    }
    bool repeated = false;
    for (int a = 0; a < sz && !repeated; ++a)
      for (int b = a + 1; b < sz; ++b)
        if (e.nodes[a] == e.nodes[b]) {
          repeated = true;
          break;
        }
    if (repeated) {
      out.push_back(tag + ": degenerate element (repeated node index)");
      continue;
    }
    const double area = element_signed_area(m, e);
    if (area == 0.0)
      out.push_back(tag + ": degenerate element (zero area)");
    else if (area < 0.0)
      out.push_back(tag + ": orientation (negative signed area, nodes must be counter-clockwise)");
    if (e.kind == ElementKind::Quad && area > 0.0) {
      // convex iff all corner cross products share the CCW sign
      for (int k = 0; k < 4; ++k) {
        const Point2& a = m.nodes[e.nodes[k]];
        const Point2& b = m.nodes[e.nodes[(k + 1) % 4]];
        const Point2& c = m.nodes[e.nodes[(k + 2) % 4]];
        if (tri_signed_area2(a, b, c) <= 0.0) {
          out.push_back(tag + ": non-convex quadrilateral");
          break;
        }
      }
    }
  }

  if (indices_ok && !m.elements.empty()) {
    const auto owners = detail::side_owners(m);
    for (const auto& [key, own] : owners)
      if (own.size() > 2)
        out.push_back("edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                      "): shared by more than 2 elements");

    // connectivity of the element-adjacency graph (elements sharing a side)
    std::vector<std::vector<int>> adj(m.elements.size());
    for (const auto& [key, own] : owners)
      if (own.size() == 2) {
        adj[own[0]].push_back(own[1]);
        adj[own[1]].push_back(own[0]);
      }
    std::vector<char> seen(m.elements.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
    }
    if (reached != m.elements.size()) out.push_back("mesh: element-adjacency graph is disconnected");
  }

  const double coincide_tol = 1e-12 * mesh_diameter(m);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::hypot(m.nodes[i].x - m.nodes[j].x, m.nodes[i].y - m.nodes[j].y) <= coincide_tol)
        out.push_back("nodes " + std::to_string(i) + "," + std::to_string(j) + ": coincide");

  return out;
}

inline void require_valid(const Mesh& m, const char* what) {
  auto v = validate(m);
  if (!v.empty()) throw std::invalid_argument(std::string(what) + ": " + v.front());
}

// Boundary nodes are the endpoints of element sides owned by exactly one
// element; everything else is interior.
inline BoundaryPartition boundary_partition(const Mesh& m) {
  const int n = m.node_count();
  for (const Element& e : m.elements)
    for (int k = 0; k < e.size(); ++k)
      if (e.nodes[k] < 0 || e.nodes[k] >= n)
        throw std::invalid_argument("boundary_partition: node index out of range");
  std::vector<char> on_boundary(static_cast<std::size_t>(n), 0);
  for (const auto& [key, own] : detail::side_owners(m))
    if (own.size() == 1) {
      on_boundary[key.first] = 1;
      on_boundary[key.second] = 1;
    }
  BoundaryPartition p;
  for (int i = 0; i < n; ++i)
    (on_boundary[i] ? p.boundary : p.interior).push_back(i);
  return p;
}

// Three angles per triangle, in the local node order of the element.
inline std::vector<std::array<double, 3>> interior_angles(const Mesh& m) {
  if (m.kind != MeshKind::Triangular)
    throw std::invalid_argument("interior_angles: defined for triangular meshes only");
  std::vector<std::array<double, 3>> out;
  out.reserve(m.elements.size());
  for (const Element& e : m.elements) {
    std::array<double, 3> ang{};
    for (int k = 0; k < 3; ++k) {
      const Point2& a = m.nodes[e.nodes[k]];
      const Point2& b = m.nodes[e.nodes[(k + 1) % 3]];
      const Point2& c = m.nodes[e.nodes[(k + 2) % 3]];
      const double ux = b.x - a.x, uy = b.y - a.y, vx = c.x - a.x, vy = c.y - a.y;
      const double nu = std::hypot(ux, uy), nv = std::hypot(vx, vy);
      double cosang = (ux * vx + uy * vy) / (nu * nv);
      cosang = std::clamp(cosang, -1.0, 1.0);
      ang[k] = std::acos(cosang);
    }
    out.push_back(ang);
  }
  return out;
}

struct AngleCondition {
  bool ok = true;
  std::vector<int> offending;  // element indices with an angle > pi/2
};

// M-matrix criterion: every interior angle at most pi/2 (up to 1e-12).
inline AngleCondition angle_condition(const Mesh& m) {
  AngleCondition r;
  const auto angles = interior_angles(m);
  const double limit = std::numbers::pi / 2 + 1e-12;
  for (std::size_t ei = 0; ei < angles.size(); ++ei)
    for (double a : angles[ei])
      if (a > limit) {
        r.offending.push_back(static_cast<int>(ei));
        break;
      }
  r.ok = r.offending.empty();
  return r;
}

// Move node i to x_i + s*directions[i] (linear paths).  The result must be a
// valid mesh; otherwise an exception reports the first violation.
inline Mesh perturb(const Mesh& m, const std::vector<std::pair<double, double>>& directions,
                    double s) {
  if (directions.size() != m.nodes.size())
    throw std::invalid_argument("perturb: one direction per node required");
  if (s == 0.0) return m;  // bit-for-bit identical
  Mesh out = m;
  for (std::size_t i = 0; i < out.nodes.size(); ++i) {
    out.nodes[i].x += s * directions[i].first;
    out.nodes[i].y += s * directions[i].second;
  }
  require_valid(out, "perturb");
  return out;
}

// Glue `patch` onto `host`.  shared gives (patch node -> host node) pairs;
// the listed nodes must lie on the boundaries of their meshes and coincide
// within 1e-12 of the host diameter.  Unshared patch nodes are appended after
// the host nodes, so host indices remain valid in the union.
inline Mesh embed(const Mesh& host, const Mesh& patch,
                  const std::vector<std::pair<int, int>>& shared) {
  if (patch.nodes.empty() && patch.elements.empty()) return host;
  if (host.kind != patch.kind) throw std::invalid_argument("embed: mesh kinds differ");

  const double tol = 1e-12 * (1.0 + mesh_diameter(host));
  const auto host_part = boundary_partition(host);
  const auto patch_part = boundary_partition(patch);
  auto is_in = [](const std::vector<int>& sorted, int v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
  };

  std::vector<int> remap(patch.nodes.size(), -1);
  std::set<int> used_host;
  for (const auto& [pn, hn] : shared) {
    if (pn < 0 || pn >= patch.node_count() || hn < 0 || hn >= host.node_count())
      throw std::invalid_argument("embed: correspondence index out of range");
    if (remap[pn] != -1 || !used_host.insert(hn).second)
      throw std::invalid_argument("embed: correspondence is not a bijection");
    if (!is_in(patch_part.boundary, pn) || !is_in(host_part.boundary, hn))
      throw std::invalid_argument("embed: shared nodes must be boundary nodes of both meshes");
    const Point2& a = patch.nodes[pn];
    const Point2& b = host.nodes[hn];
    if (std::hypot(a.x - b.x, a.y - b.y) > tol)
      throw std::invalid_argument("embed: shared node coordinates differ");
    remap[pn] = hn;
  }

  Mesh out = host;
  for (int i = 0; i < patch.node_count(); ++i)
    if (remap[i] == -1) {
      remap[i] = out.node_count();
      out.nodes.push_back(patch.nodes[i]);
    }
  for (const Element& e : patch.elements) {
    Element r = e;
    for (int k = 0; k < e.size(); ++k) r.nodes[k] = remap[e.nodes[k]];
    out.elements.push_back(r);
  }
  require_valid(out, "embed");
  return out;
}

}  // namespace ucpfem
