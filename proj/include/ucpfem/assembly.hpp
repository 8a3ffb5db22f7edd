#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "ucpfem/mesh.hpp"
#include "ucpfem/tolerances.hpp"

namespace ucpfem {

struct ElementMatrices {
  Eigen::MatrixXd a_e;  // stiffness, grad-grad inner products
  Eigen::MatrixXd m_e;  // mass, L2 inner products
};

// Linear triangle in closed form: barycentric gradients are constant, so
// a_e = area * G G^T with G the 3x2 gradient matrix, and the mass matrix is
// the classic area/12 * (2 on the diagonal, 1 off) pattern.
inline ElementMatrices elemental_p1(const std::array<Point2, 3>& p) {
  const double det = tri_signed_area2(p[0], p[1], p[2]);
  if (!(det > 0.0))
    throw std::invalid_argument("elemental_p1: triangle is degenerate or clockwise");
  const double area = det / 2.0;
  Eigen::Matrix<double, 3, 2> g;
  g << p[1].y - p[2].y, p[2].x - p[1].x,
       p[2].y - p[0].y, p[0].x - p[2].x,
       p[0].y - p[1].y, p[1].x - p[0].x;
  g /= det;
  ElementMatrices em;
  em.a_e = area * (g * g.transpose());
  // enforce exact symmetry so assembly order can never skew the upper/lower parts
  em.a_e = ((em.a_e + em.a_e.transpose()) / 2.0).eval();
  em.m_e = (area / 12.0) * (Eigen::Matrix3d::Ones() + Eigen::Matrix3d::Identity());
  return em;
}

namespace detail {

// classify an axis-aligned rectangle given in CCW order; exact coordinate
// comparisons on purpose — the tensor generator produces identical doubles
inline bool is_axis_rectangle(const std::array<Point2, 4>& p, double& hx, double& hy) {
  for (int k = 0; k < 4; ++k) {
    const Point2& a = p[k];
    const Point2& b = p[(k + 1) % 4];
    const bool horiz = (a.y == b.y) && (a.x != b.x);
    const bool vert = (a.x == b.x) && (a.y != b.y);
    if (!horiz && !vert) return false;
    if (horiz) hx = std::abs(b.x - a.x);
    if (vert) hy = std::abs(b.y - a.y);
  }
  return true;
}

}  // namespace detail

// Bilinear quadrilateral.  Axis-aligned rectangles use the closed forms
// (exact; the opposite-corner stiffness entry is -(hx/hy + hy/hx)/6), other
// convex quads fall back to 2x2 Gauss quadrature on the bilinear map, which
// is exact for the mass matrix and approximate for the stiffness.
inline ElementMatrices elemental_q1(const std::array<Point2, 4>& p) {
  ElementMatrices em;
  em.a_e.setZero(4, 4);
  em.m_e.setZero(4, 4);

  double hx = 0.0, hy = 0.0;
  if (detail::is_axis_rectangle(p, hx, hy)) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const bool same_x = p[i].x == p[j].x;
        const bool same_y = p[i].y == p[j].y;
        if (i == j) {
          em.a_e(i, j) = (hx / hy + hy / hx) / 3.0;
          em.m_e(i, j) = 4.0 * hx * hy / 36.0;
        } else if (same_y) {  // neighbour along x
          em.a_e(i, j) = hx / (6.0 * hy) - hy / (3.0 * hx);
          em.m_e(i, j) = 2.0 * hx * hy / 36.0;
        } else if (same_x) {  // neighbour along y
          em.a_e(i, j) = hy / (6.0 * hx) - hx / (3.0 * hy);
          em.m_e(i, j) = 2.0 * hx * hy / 36.0;
        } else {  // opposite corner
          em.a_e(i, j) = -(hx / hy + hy / hx) / 6.0;
          em.m_e(i, j) = hx * hy / 36.0;
        }
      }
    return em;
  }

  // reference square corners, matching the CCW node order
  static constexpr double xi[4] = {-1.0, 1.0, 1.0, -1.0};
  static constexpr double eta[4] = {-1.0, -1.0, 1.0, 1.0};
  const double gp = 1.0 / std::sqrt(3.0);
  for (double gx : {-gp, gp})
    for (double gy : {-gp, gp}) {
      Eigen::Vector4d N;
      Eigen::Matrix<double, 4, 2> dN;
      for (int i = 0; i < 4; ++i) {
        N(i) = 0.25 * (1.0 + xi[i] * gx) * (1.0 + eta[i] * gy);
        dN(i, 0) = 0.25 * xi[i] * (1.0 + eta[i] * gy);
        dN(i, 1) = 0.25 * eta[i] * (1.0 + xi[i] * gx);
      }
      Eigen::Matrix2d J = Eigen::Matrix2d::Zero();
      for (int i = 0; i < 4; ++i) {
        J(0, 0) += dN(i, 0) * p[i].x;
        J(0, 1) += dN(i, 1) * p[i].x;
        J(1, 0) += dN(i, 0) * p[i].y;
        J(1, 1) += dN(i, 1) * p[i].y;
      }
      const double detJ = J.determinant();
      if (!(detJ > 0.0)) throw std::invalid_argument("elemental_q1: degenerate quadrilateral");
      const Eigen::Matrix<double, 4, 2> grad = dN * J.inverse();
      em.a_e += detJ * (grad * grad.transpose());
      em.m_e += detJ * (N * N.transpose());
    }
  em.a_e = ((em.a_e + em.a_e.transpose()) / 2.0).eval();
  em.m_e = ((em.m_e + em.m_e.transpose()) / 2.0).eval();
  return em;
}

struct AssembledSystem {
  Eigen::MatrixXd A;  // stiffness; dense on purpose, every fixture is small
  Eigen::MatrixXd M;  // mass
  BoundaryPartition partition;
  // node pairs (i <= j) sharing at least one element — the sparsity pattern;
  // kept because assembled values can cancel to exact zero
  std::vector<std::pair<int, int>> structure;

  Eigen::MatrixXd A_II, A_IB, A_BI, A_BB;
  Eigen::MatrixXd M_II, M_IB, M_BI, M_BB;

  int n() const { return static_cast<int>(A.rows()); }
  int n_interior() const { return static_cast<int>(partition.interior.size()); }
  int n_boundary() const { return static_cast<int>(partition.boundary.size()); }

  double max_abs_a = 0.0;
  double max_abs_m = 0.0;

  // magnitude of the pencil data at this lambda; the absolute floor under
  // every relative rank/zero tolerance
  double scale(double lambda) const { return max_abs_a + std::abs(lambda) * max_abs_m; }

  static AssembledSystem from_matrices(Eigen::MatrixXd A, Eigen::MatrixXd M,
                                       BoundaryPartition partition,
                                       std::vector<std::pair<int, int>> structure) {
    AssembledSystem s;
    s.A = std::move(A);
    s.M = std::move(M);
    s.partition = std::move(partition);
    s.structure = std::move(structure);
    auto sub = [](const Eigen::MatrixXd& X, const std::vector<int>& rows,
                  const std::vector<int>& cols) {
      Eigen::MatrixXd out(rows.size(), cols.size());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = X(rows[r], cols[c]);
      return out;
    };
    const auto& in = s.partition.interior;
    const auto& bd = s.partition.boundary;
    s.A_II = sub(s.A, in, in);
    s.A_IB = sub(s.A, in, bd);
    s.A_BI = sub(s.A, bd, in);
    s.A_BB = sub(s.A, bd, bd);
    s.M_II = sub(s.M, in, in);
    s.M_IB = sub(s.M, in, bd);
    s.M_BI = sub(s.M, bd, in);
    s.M_BB = sub(s.M, bd, bd);
    s.max_abs_a = s.A.size() ? s.A.cwiseAbs().maxCoeff() : 0.0;
    s.max_abs_m = s.M.size() ? s.M.cwiseAbs().maxCoeff() : 0.0;
    return s;
  }
};

// Global assembly.  Contributions are gathered per (i,j), sorted by value and
// summed in that canonical order, so the result is bit-identical under any
// permutation of the element list.
inline AssembledSystem assemble(const Mesh& mesh) {
  require_valid(mesh, "assemble");
  const int n = mesh.node_count();
  std::map<std::pair<int, int>, std::vector<double>> acc_a, acc_m;

  for (const Element& e : mesh.elements) {
    ElementMatrices em;
    if (e.kind == ElementKind::Tri) {
      em = elemental_p1({mesh.nodes[e.nodes[0]], mesh.nodes[e.nodes[1]], mesh.nodes[e.nodes[2]]});
    } else {
      em = elemental_q1({mesh.nodes[e.nodes[0]], mesh.nodes[e.nodes[1]], mesh.nodes[e.nodes[2]],
                         mesh.nodes[e.nodes[3]]});
    }
    const int sz = e.size();
    for (int a = 0; a < sz; ++a)
      for (int b = a; b < sz; ++b) {
        const auto key = detail::edge_key(e.nodes[a], e.nodes[b]);
        acc_a[key].push_back(em.a_e(a, b));
        acc_m[key].push_back(em.m_e(a, b));
      }
  }

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  std::vector<std::pair<int, int>> structure;
  structure.reserve(acc_a.size());
  auto reduce = [](std::vector<double>& vals) {
    std::sort(vals.begin(), vals.end());
    double s = 0.0;
    for (double v : vals) s += v;
    return s;
  };
  for (auto& [key, vals] : acc_a) {
    const double v = reduce(vals);
    A(key.first, key.second) = v;
    A(key.second, key.first) = v;
    structure.push_back(key);
  }
  for (auto& [key, vals] : acc_m) {
    const double v = reduce(vals);
    M(key.first, key.second) = v;
    M(key.second, key.first) = v;
  }

  return AssembledSystem::from_matrices(std::move(A), std::move(M), boundary_partition(mesh),
                                        std::move(structure));
}

struct SignAudit {
  bool offdiag_nonpositive = true;
  // graph edges (m_ij > 0) whose stiffness entry is positive beyond rounding
  std::vector<std::tuple<int, int, double>> positive_entries;
};

inline SignAudit sign_audit(const AssembledSystem& sys, const Tolerances& tol = {}) {
  SignAudit audit;
  const double thr = tol.sign * sys.max_abs_a;
  for (const auto& [i, j] : sys.structure) {
    if (i == j) continue;
    if (sys.M(i, j) > 0.0 && sys.A(i, j) > thr)
      audit.positive_entries.emplace_back(i, j, sys.A(i, j));
  }
  audit.offdiag_nonpositive = audit.positive_entries.empty();
  return audit;
}

}  // namespace ucpfem
