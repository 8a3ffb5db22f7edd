#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ucpfem/mesh.hpp"

namespace ucpfem {

// Quad grid on the Cartesian product xs x ys; node (i,j) gets index j*nx+i,
// cells are listed row-major with CCW corners.
inline Mesh gen_tensor_product(const std::vector<double>& xs, const std::vector<double>& ys) {
  auto check_axis = [](const std::vector<double>& v, const char* name) {
    if (v.size() < 2) throw std::invalid_argument(std::string("gen_tensor_product: ") + name + " needs at least 2 entries");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!std::isfinite(v[i])) throw std::invalid_argument(std::string("gen_tensor_product: ") + name + " has a non-finite entry");
      if (i > 0 && !(v[i] > v[i - 1]))
        throw std::invalid_argument(std::string("gen_tensor_product: ") + name + " must be strictly increasing");
    }
  };
  check_axis(xs, "xs");
  check_axis(ys, "ys");
  const int nx = static_cast<int>(xs.size()), ny = static_cast<int>(ys.size());
  Mesh m;
  m.kind = MeshKind::Quadrilateral;
  m.nodes.reserve(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) m.nodes.push_back({xs[i], ys[j]});
  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i) {
      const int n0 = j * nx + i;
      m.elements.push_back(make_quad(n0, n0 + 1, n0 + nx + 1, n0 + nx));
    }
  return m;
}

// Ring mesh over a regular k-gon: node 0 at the origin, inner ring nodes
// 1..k on the unit circle at angles 2*j*pi/k, outer ring nodes k+1..2k at
// radius d and angles (2j-1)*pi/k.  The half-step angular offset of the
// outer ring fixes the adjacency: outer node k+1+j touches inner nodes
// 1+((j-1) mod k) and 1+j.  Elements come in three groups of k: center fans,
// inner-edge triangles (two inner nodes + one outer), outer-edge triangles
// (two outer nodes + one inner).
inline Mesh gen_polygon_ring(int k, double d) {
  if (k < 5) throw std::invalid_argument("gen_polygon_ring: k must be at least 5");
  const double pi = std::numbers::pi;
  // outer-edge triangles stay positively oriented iff the inner node sits
  // inside the chord of the outer ring: d*cos(pi/k) > 1
  if (!(d * std::cos(pi / k) > 1.0))
    throw std::domain_error("gen_polygon_ring: d too small for a valid ring (need d*cos(pi/k) > 1)");

  Mesh m;
  m.kind = MeshKind::Triangular;
  m.nodes.push_back({0.0, 0.0});
  for (int j = 0; j < k; ++j) {
    const double th = 2.0 * j * pi / k;
    m.nodes.push_back({std::cos(th), std::sin(th)});
  }
  for (int j = 0; j < k; ++j) {
    const double th = (2.0 * j - 1.0) * pi / k;
    m.nodes.push_back({d * std::cos(th), d * std::sin(th)});
  }
  auto inner = [k](int j) { return 1 + ((j % k) + k) % k; };
  auto outer = [k](int j) { return k + 1 + ((j % k) + k) % k; };
  for (int j = 0; j < k; ++j) m.elements.push_back(make_tri(0, inner(j), inner(j + 1)));
  for (int j = 0; j < k; ++j) m.elements.push_back(make_tri(inner(j), outer(j + 1), inner(j + 1)));
  for (int j = 0; j < k; ++j) m.elements.push_back(make_tri(outer(j), outer(j + 1), inner(j)));
  return m;
}

// Hexagon ring with the outer edge between the nodes at -30 and +30 degrees
// split at its midpoint (d*sqrt(3)/2, 0).  The new boundary node's only
// interior neighbour is the inner node at (1,0).
inline Mesh gen_hexagon_split(double d) {
  Mesh m = gen_polygon_ring(6, d);
  const int mid = m.node_count();  // 13
  m.nodes.push_back({d * std::cos(std::numbers::pi / 6), 0.0});
  // outer-edge triangle j=0 is element 12: (7, 8, 1)
  m.elements[12] = make_tri(7, mid, 1);
  m.elements.push_back(make_tri(mid, 8, 1));
  return m;
}

// 12-triangle annulus between the unit hexagon and the radius-d hexagon
// (outer corners offset half a step, as in the ring mesh), then one 1->4
// midpoint refinement.  36 nodes, 48 triangles; midpoint nodes are appended
// in order of first use, so the layout is deterministic.
inline Mesh gen_annulus(double d) {
  const double pi = std::numbers::pi;
  if (!(d * std::cos(pi / 6) > 1.0))
    throw std::domain_error("gen_annulus: d too small for a valid annulus");

  Mesh coarse;
  coarse.kind = MeshKind::Triangular;
  for (int j = 0; j < 6; ++j) {
    const double th = 2.0 * j * pi / 6;
    coarse.nodes.push_back({std::cos(th), std::sin(th)});
  }
  for (int j = 0; j < 6; ++j) {
    const double th = (2.0 * j - 1.0) * pi / 6;
    coarse.nodes.push_back({d * std::cos(th), d * std::sin(th)});
  }
  auto inner = [](int j) { return ((j % 6) + 6) % 6; };
  auto outer = [](int j) { return 6 + ((j % 6) + 6) % 6; };
  for (int j = 0; j < 6; ++j)
    coarse.elements.push_back(make_tri(inner(j), outer(j + 1), inner(j + 1)));
  for (int j = 0; j < 6; ++j)
    coarse.elements.push_back(make_tri(outer(j), outer(j + 1), inner(j)));

  Mesh fine;
  fine.kind = MeshKind::Triangular;
  fine.nodes = coarse.nodes;
  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int a, int b) {
    const auto key = detail::edge_key(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const Point2& pa = fine.nodes[a];
    const Point2& pb = fine.nodes[b];
    const int idx = fine.node_count();
    fine.nodes.push_back({(pa.x + pb.x) / 2, (pa.y + pb.y) / 2});
    midpoint.emplace(key, idx);
    return idx;
  };
  for (const Element& e : coarse.elements) {
    const int a = e.nodes[0], b = e.nodes[1], c = e.nodes[2];
    const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
    fine.elements.push_back(make_tri(a, ab, ca));
    fine.elements.push_back(make_tri(ab, b, bc));
    fine.elements.push_back(make_tri(ca, bc, c));
    fine.elements.push_back(make_tri(ab, bc, ca));
  }
  return fine;
}

// Default patch for plugging the annulus hole: the inner hexagon triangulated
// with a center node, a fan over the edge-midpoint hexagon, and six corner
// triangles.  Midpoint coordinates use the same (p+q)/2 expression as the
// annulus refinement, so shared nodes coincide bit-for-bit.
inline Mesh gen_annulus_patch() {
  const double pi = std::numbers::pi;
  Mesh m;
  m.kind = MeshKind::Triangular;
  m.nodes.push_back({0.0, 0.0});
  for (int j = 0; j < 6; ++j) {
    const double th = 2.0 * j * pi / 6;
    m.nodes.push_back({std::cos(th), std::sin(th)});
  }
  for (int j = 0; j < 6; ++j) {
    const Point2& a = m.nodes[1 + j];
    const Point2& b = m.nodes[1 + (j + 1) % 6];
    m.nodes.push_back({(a.x + b.x) / 2, (a.y + b.y) / 2});
  }
  auto vert = [](int j) { return 1 + ((j % 6) + 6) % 6; };
  auto mid = [](int j) { return 7 + ((j % 6) + 6) % 6; };
  for (int j = 0; j < 6; ++j) m.elements.push_back(make_tri(0, mid(j), mid(j + 1)));
  for (int j = 0; j < 6; ++j) m.elements.push_back(make_tri(mid(j - 1), vert(j), mid(j)));
  return m;
}

// Fixed 18-node strip of flat triangles on [0,6]x[0,3].  Three identical
// rows; each row has two 3:0.5 "apex" triangles whose long horizontal edges
// produce positive assembled stiffness entries.  Nodes are listed line by
// line: y = r has 3 nodes, y = r+1/2 has the two apexes.
inline Mesh gen_aniso_strip() {
  Mesh m;
  m.kind = MeshKind::Triangular;
  for (int r = 0; r < 4; ++r) {
    const double y = r;
    m.nodes.push_back({0.0, y});
    m.nodes.push_back({3.0, y});
    m.nodes.push_back({6.0, y});
    if (r < 3) {
      m.nodes.push_back({1.5, y + 0.5});
      m.nodes.push_back({4.5, y + 0.5});
    }
  }
  for (int r = 0; r < 3; ++r) {
    const int b0 = 5 * r, b3 = 5 * r + 1, b6 = 5 * r + 2;
    const int la = 5 * r + 3, ra = 5 * r + 4;
    const int t0 = 5 * r + 5, t3 = 5 * r + 6, t6 = 5 * r + 7;
    m.elements.push_back(make_tri(b0, la, t0));
    m.elements.push_back(make_tri(b0, b3, la));
    m.elements.push_back(make_tri(b3, b6, ra));
    m.elements.push_back(make_tri(b6, t6, ra));
    m.elements.push_back(make_tri(b3, ra, la));
    m.elements.push_back(make_tri(la, ra, t3));
    m.elements.push_back(make_tri(t0, la, t3));
    m.elements.push_back(make_tri(t3, ra, t6));
  }
  return m;
}

}  // namespace ucpfem
