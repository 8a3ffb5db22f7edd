#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ucpfem/assembly.hpp"
#include "ucpfem/generators.hpp"
#include "ucpfem/graph.hpp"
#include "ucpfem/mesh.hpp"
#include "ucpfem/rng.hpp"
#include "ucpfem/tolerances.hpp"

namespace ucpfem {

struct EigenDecomposition {
  Eigen::VectorXd values;                  // ascending
  Eigen::MatrixXd vectors;                 // columns, M-orthonormal
  std::vector<std::vector<int>> clusters;  // indices grouped by multiplicity
  std::vector<double> cluster_reps;        // mean eigenvalue per cluster

  int cluster_of(double lambda, const Tolerances& tol) const {
    for (std::size_t c = 0; c < cluster_reps.size(); ++c)
      if (std::abs(cluster_reps[c] - lambda) <= tol.cluster_gap(lambda)) return static_cast<int>(c);
    return -1;
  }
};

namespace detail {

inline EigenDecomposition solve_pencil(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                       const Tolerances& tol) {
  EigenDecomposition d;
  if (A.rows() == 0) return d;
  Eigen::LLT<Eigen::MatrixXd> llt(B);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("solve_pencil: mass matrix is not positive definite");
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, B);
  if (es.info() != Eigen::Success) throw std::domain_error("solve_pencil: eigensolver failed");
  d.values = es.eigenvalues();
  d.vectors = es.eigenvectors();
  for (int i = 0; i < d.values.size(); ++i) {
    if (i == 0 || d.values(i) - d.values(i - 1) > tol.cluster_gap(d.values(i)))
      d.clusters.push_back({});
    d.clusters.back().push_back(i);
  }
  for (const auto& c : d.clusters) {
    double s = 0.0;
    for (int i : c) s += d.values(i);
    d.cluster_reps.push_back(s / static_cast<double>(c.size()));
  }
  return d;
}

// columns of V spanning the numerical kernel; the threshold gets an absolute
// floor at the problem scale so a numerically-zero matrix has a full kernel
// instead of a noise-rank one
inline Eigen::MatrixXd kernel_from_svd(const Eigen::JacobiSVD<Eigen::MatrixXd>& svd, int cols,
                                       double floor_scale, const Tolerances& tol,
                                       bool* cond_flag = nullptr) {
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  const double thr = tol.rank * std::max(smax, floor_scale);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > thr) ++rank;
  if (cond_flag)
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > thr && sv(i) <= tol.cond_window * thr) *cond_flag = true;
  return svd.matrixV().rightCols(cols - rank);
}

}  // namespace detail

inline EigenDecomposition neumann_eigs(const AssembledSystem& sys, const Tolerances& tol = {}) {
  return detail::solve_pencil(sys.A, sys.M, tol);
}

inline EigenDecomposition dirichlet_eigs(const AssembledSystem& sys, const Tolerances& tol = {}) {
  return detail::solve_pencil(sys.A_II, sys.M_II, tol);
}

// Orthonormal basis of S_in(lambda) = ker(A_II-lambda M_II) ∩ ker(A_BI-lambda M_BI),
// computed as the kernel of the two blocks stacked.
inline Eigen::MatrixXd inner_space(const AssembledSystem& sys, double lambda,
                                   const Tolerances& tol = {}, bool* cond_flag = nullptr) {
  const int ni = sys.n_interior();
  if (ni == 0) return Eigen::MatrixXd(0, 0);
  Eigen::MatrixXd stack(sys.n(), ni);
  stack.topRows(ni) = sys.A_II - lambda * sys.M_II;
  stack.bottomRows(sys.n_boundary()) = sys.A_BI - lambda * sys.M_BI;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack, Eigen::ComputeFullV);
  return detail::kernel_from_svd(svd, ni, sys.scale(lambda), tol, cond_flag);
}

struct InnerEntry {
  double lambda = 0.0;
  int multiplicity = 0;  // m_D: size of the Dirichlet eigenvalue cluster
  int dim_inner = 0;
  Eigen::MatrixXd basis;       // n_I x dim_inner, orthonormal
  double res_interior = 0.0;   // max over basis columns of ||(A_II-lM_II)u||
  double res_boundary = 0.0;   // max over basis columns of ||(A_BI-lM_BI)u||
};

struct InnerReport {
  std::vector<InnerEntry> entries;  // one per Dirichlet eigenvalue cluster
  bool ucp = true;                  // S_in trivial everywhere
  bool cond_flag = false;           // some rank decision was borderline
};

// dim S_in can only be nonzero where A_II - lambda M_II is singular, so a
// scan over the Dirichlet eigenvalue clusters decides the UCP verdict.
inline InnerReport inner_scan(const AssembledSystem& sys, const Tolerances& tol = {}) {
  InnerReport report;
  const EigenDecomposition dir = dirichlet_eigs(sys, tol);
  for (std::size_t c = 0; c < dir.cluster_reps.size(); ++c) {
    InnerEntry e;
    e.lambda = dir.cluster_reps[c];
    e.multiplicity = static_cast<int>(dir.clusters[c].size());
    e.basis = inner_space(sys, e.lambda, tol, &report.cond_flag);
    e.dim_inner = static_cast<int>(e.basis.cols());
    for (int k = 0; k < e.basis.cols(); ++k) {
      e.res_interior = std::max(
          e.res_interior, ((sys.A_II - e.lambda * sys.M_II) * e.basis.col(k)).norm());
      e.res_boundary = std::max(
          e.res_boundary, ((sys.A_BI - e.lambda * sys.M_BI) * e.basis.col(k)).norm());
    }
    if (e.dim_inner > 0) report.ucp = false;
    report.entries.push_back(std::move(e));
  }
  return report;
}

namespace detail {

inline void require_off_dirichlet(const AssembledSystem& sys, double lambda,
                                  const Tolerances& tol, const char* what) {
  const EigenDecomposition dir = dirichlet_eigs(sys, tol);
  for (int i = 0; i < dir.values.size(); ++i)
    if (std::abs(dir.values(i) - lambda) <= tol.cluster_gap(lambda))
      throw std::domain_error(std::string(what) + ": lambda is within cluster tolerance of a Dirichlet eigenvalue");
}

}  // namespace detail

// Interior values of the lambda-harmonic extension of boundary data u_B.
inline Eigen::VectorXd harmonic_extension(const AssembledSystem& sys, double lambda,
                                          const Eigen::VectorXd& u_B, const Tolerances& tol = {}) {
  if (u_B.size() != sys.n_boundary())
    throw std::invalid_argument("harmonic_extension: boundary vector has wrong size");
  detail::require_off_dirichlet(sys, lambda, tol, "harmonic_extension");
  if (sys.n_interior() == 0) return Eigen::VectorXd(0);
  const Eigen::MatrixXd K = sys.A_II - lambda * sys.M_II;
  return Eigen::LDLT<Eigen::MatrixXd>(K).solve((lambda * sys.M_IB - sys.A_IB) * u_B);
}

// Discrete normal derivative of the lambda-harmonic extension: the boundary
// rows of (A - lambda M) applied to (u_I; u_B).
inline Eigen::VectorXd normal_derivative(const AssembledSystem& sys, double lambda,
                                         const Eigen::VectorXd& u_B, const Tolerances& tol = {}) {
  const Eigen::VectorXd u_I = harmonic_extension(sys, lambda, u_B, tol);
  Eigen::VectorXd out = (sys.A_BB - lambda * sys.M_BB) * u_B;
  if (sys.n_interior() > 0) out += (sys.A_BI - lambda * sys.M_BI) * u_I;
  return out;
}

struct DtnOperator {
  double lambda = 0.0;
  Eigen::MatrixXd q_basis;  // n_B x dim(Q), orthonormal columns
  Eigen::MatrixXd matrix;   // symmetric dim(Q) x dim(Q) compression of DtN
  int i_infinity = 0;       // n_B - dim(Q)
  bool cond_flag = false;   // a rank/kernel decision was borderline
};

// Dirichlet-to-Neumann map at lambda.  Away from Dirichlet eigenvalues this
// is the plain boundary Schur complement of A - lambda M.  At a Dirichlet
// eigenvalue the interior block is singular: invert it on the complement of
// its kernel (Moore-Penrose), and restrict to the boundary subspace Q on
// which the harmonic extension stays well defined — the kernel of
// P (A_IB - lambda M_IB) with P the orthogonal projector onto
// ker(A_II - lambda M_II).
inline DtnOperator dtn(const AssembledSystem& sys, double lambda, const Tolerances& tol = {}) {
  DtnOperator op;
  op.lambda = lambda;
  const int ni = sys.n_interior();
  const int nb = sys.n_boundary();
  const Eigen::MatrixXd TB = sys.A_BB - lambda * sys.M_BB;
  if (ni == 0) {
    op.q_basis = Eigen::MatrixXd::Identity(nb, nb);
    op.matrix = ((TB + TB.transpose()) / 2.0).eval();
    return op;
  }

  const Eigen::MatrixXd K = sys.A_II - lambda * sys.M_II;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
  const Eigen::VectorXd& w = es.eigenvalues();
  const double wmax = w.cwiseAbs().maxCoeff();
  const double thr = tol.rank * std::max(wmax, sys.scale(lambda));
  std::vector<int> kernel;
  for (int i = 0; i < w.size(); ++i) {
    const double aw = std::abs(w(i));
    if (aw <= thr)
      kernel.push_back(i);
    else if (aw <= tol.cond_window * thr)
      op.cond_flag = true;
  }

  const Eigen::MatrixXd T = sys.A_IB - lambda * sys.M_IB;
  if (kernel.empty()) {
    // pinv == inv; reuse the eigendecomposition for a symmetric solve
    const Eigen::MatrixXd Kinv_T =
        es.eigenvectors() * w.cwiseInverse().asDiagonal() * (es.eigenvectors().transpose() * T);
    const Eigen::MatrixXd L = TB - (sys.A_BI - lambda * sys.M_BI) * Kinv_T;
    op.q_basis = Eigen::MatrixXd::Identity(nb, nb);
    op.matrix = ((L + L.transpose()) / 2.0).eval();
    return op;
  }

  Eigen::VectorXd winv = Eigen::VectorXd::Zero(w.size());
  for (int i = 0; i < w.size(); ++i)
    if (std::abs(w(i)) > thr) winv(i) = 1.0 / w(i);
  const Eigen::MatrixXd Lhat =
      TB - (sys.A_BI - lambda * sys.M_BI) *
               (es.eigenvectors() * winv.asDiagonal() * (es.eigenvectors().transpose() * T));

  Eigen::MatrixXd Vk(ni, static_cast<int>(kernel.size()));
  for (std::size_t c = 0; c < kernel.size(); ++c) Vk.col(static_cast<int>(c)) = es.eigenvectors().col(kernel[c]);
  const Eigen::MatrixXd PT = Vk * (Vk.transpose() * T);

  // PT vanishes identically when every kernel vector is an inner solution,
  // so the rank threshold must be anchored to the scale of T itself
  Eigen::JacobiSVD<Eigen::MatrixXd> svd_t(T);
  const double t_scale = svd_t.singularValues().size() ? svd_t.singularValues()(0) : 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(PT, Eigen::ComputeFullV);
  op.q_basis = detail::kernel_from_svd(svd, nb, t_scale, tol, &op.cond_flag);
  op.i_infinity = nb - static_cast<int>(op.q_basis.cols());
  const Eigen::MatrixXd C = op.q_basis.transpose() * Lhat * op.q_basis;
  op.matrix = ((C + C.transpose()) / 2.0).eval();
  return op;
}

struct Inertia {
  int n_minus = 0;
  int n_zero = 0;
  int n_plus = 0;
  bool cond_flag = false;
};

inline Inertia inertia(const Eigen::MatrixXd& sym, double zero_tol, double cond_window = 1e3) {
  Inertia r;
  if (sym.rows() == 0) return r;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double mu = es.eigenvalues()(i);
    if (std::abs(mu) <= zero_tol)
      ++r.n_zero;
    else if (mu < 0.0)
      ++r.n_minus;
    else
      ++r.n_plus;
    if (std::abs(mu) > zero_tol && std::abs(mu) <= cond_window * zero_tol) r.cond_flag = true;
  }
  return r;
}

struct CountingResult {
  int N_N = 0;  // Neumann eigenvalues strictly below lambda
  int N_D = 0;  // Dirichlet eigenvalues strictly below lambda
  int m_N = 0;  // Neumann multiplicity at lambda
  int m_D = 0;  // Dirichlet multiplicity at lambda
  bool cond_flag = false;
};

// Counting by Sylvester's law: the inertia of A - lambda M gives the number
// of pencil eigenvalues below / at / above lambda, no eigenvector needed.
inline CountingResult counting(const AssembledSystem& sys, double lambda,
                               const Tolerances& tol = {}) {
  CountingResult c;
  const Inertia full =
      inertia(sys.A - lambda * sys.M, tol.zero * sys.scale(lambda), tol.cond_window);
  c.N_N = full.n_minus;
  c.m_N = full.n_zero;
  c.cond_flag = full.cond_flag;
  if (sys.n_interior() > 0) {
    const double scale_ii = (sys.A_II.size() ? sys.A_II.cwiseAbs().maxCoeff() : 0.0) +
                            std::abs(lambda) * (sys.M_II.size() ? sys.M_II.cwiseAbs().maxCoeff() : 0.0);
    const Inertia in =
        inertia(sys.A_II - lambda * sys.M_II, tol.zero * scale_ii, tol.cond_window);
    c.N_D = in.n_minus;
    c.m_D = in.n_zero;
    c.cond_flag = c.cond_flag || in.cond_flag;
  }
  return c;
}

struct InterlaceRecord {
  double lambda = 0.0;
  int N_N = 0, N_D = 0, m_N = 0, m_D = 0, m_in = 0;
  int n_minus_dtn = 0, n_zero_dtn = 0;
  int i_infinity = 0;
  bool identity_holds = false;
  bool cond_flag = false;
};

// The two integer identities tying the boundary DtN spectrum to the volume
// counting functions:
//   N_N(l) - N_D(l) = n_-(DtN(l)) + m_D(l) - m_in(l)
//   m_N(l)          = n_0(DtN(l)) + m_in(l)
inline InterlaceRecord interlace(const AssembledSystem& sys, double lambda,
                                 const Tolerances& tol = {}) {
  InterlaceRecord r;
  r.lambda = lambda;
  const CountingResult c = counting(sys, lambda, tol);
  r.N_N = c.N_N;
  r.N_D = c.N_D;
  r.m_N = c.m_N;
  r.m_D = c.m_D;
  r.m_in = static_cast<int>(inner_space(sys, lambda, tol).cols());
  const DtnOperator op = dtn(sys, lambda, tol);
  r.i_infinity = op.i_infinity;
  const double op_scale = op.matrix.size() ? op.matrix.cwiseAbs().maxCoeff() : 0.0;
  const Inertia boundary =
      inertia(op.matrix, tol.zero * std::max(op_scale, sys.scale(lambda)), tol.cond_window);
  r.n_minus_dtn = boundary.n_minus;
  r.n_zero_dtn = boundary.n_zero;
  r.identity_holds = (r.N_N - r.N_D == r.n_minus_dtn + r.m_D - r.m_in) &&
                     (r.m_N == r.n_zero_dtn + r.m_in);
  r.cond_flag = c.cond_flag || op.cond_flag || boundary.cond_flag;
  return r;
}

// The hexagon-ring eigenvalue carrying the inner solution, in closed form.
inline double lambda_star(double d) {
  const double s3 = std::sqrt(3.0);
  if (!(d > 2.0 / s3)) throw std::domain_error("lambda_star: requires d > 2/sqrt(3)");
  return 24.0 * (2.0 * d - s3) / (d * (s3 * d - 2.0));
}

struct PerturbationRecord {
  double dbreak_lhs = 0.0;   // sum of outer-to-leading-inner derivative couplings
  double dbreak_rhs = 0.0;   // sum of outer-to-trailing-inner derivative couplings
  double break_inner = 0.0;  // <(dA_BI - l* dM_BI) u_I, u_B-hat>, equals lhs - rhs
  double fd_noise = 0.0;     // roundoff scale of the central difference
  bool richardson_ok = false;
  bool condition_met = false;
  bool ucp_after = false;
};

namespace detail {

struct BreakEval {
  double lhs, rhs, inner;
};

inline BreakEval eval_break(const Mesh& base, const std::vector<std::pair<double, double>>& dirs,
                            double h, double lam) {
  const AssembledSystem plus = assemble(perturb(base, dirs, h));
  const AssembledSystem minus = assemble(perturb(base, dirs, -h));
  // same topology on both sides, so the blocks subtract entry-by-entry
  const Eigen::MatrixXd D_BI =
      ((plus.A_BI - minus.A_BI) - lam * (plus.M_BI - minus.M_BI)) / (2.0 * h);
  Eigen::VectorXd u_I(7), u_B(6);
  u_I << 0, 1, -1, 1, -1, 1, -1;
  u_B << 1, -1, 1, -1, 1, -1;
  BreakEval ev{0.0, 0.0, 0.0};
  // interior order (0..6) = center + inner ring; boundary order (7..12) = outer ring
  for (int j = 0; j < 6; ++j) {
    ev.lhs += D_BI(j, 1 + j);
    ev.rhs += D_BI(j, 1 + (j + 5) % 6);
  }
  ev.inner = u_B.dot(D_BI * u_I);
  return ev;
}

}  // namespace detail

// First-order genericity probe for the hexagon ring: does a mesh deformation
// along `directions` break the inner solution?  The derivative matrices come
// from central differences; the probe checks that the symmetry-breaking
// functional is nonzero well above finite-difference noise and that the
// deformed mesh actually satisfies the UCP.
inline PerturbationRecord perturbation_test(double d,
                                            const std::vector<std::pair<double, double>>& directions,
                                            double step, const Tolerances& tol = {}) {
  const Mesh mesh = gen_polygon_ring(6, d);
  if (directions.size() != mesh.nodes.size())
    throw std::invalid_argument("perturbation_test: one direction per node required");
  const double lam = lambda_star(d);
  const AssembledSystem sys = assemble(mesh);

  // the derivation assumes lambda* is a simple Neumann eigenvalue
  const EigenDecomposition neu = neumann_eigs(sys, tol);
  const int cl = neu.cluster_of(lam, tol);
  if (cl < 0 || neu.clusters[static_cast<std::size_t>(cl)].size() != 1)
    throw std::domain_error("perturbation_test: lambda* is not a simple Neumann eigenvalue");

  PerturbationRecord rec;
  const double h = std::min(step, 1e-5);
  const auto full = detail::eval_break(mesh, directions, h, lam);
  const auto half = detail::eval_break(mesh, directions, h / 2.0, lam);
  rec.dbreak_lhs = full.lhs;
  rec.dbreak_rhs = full.rhs;
  rec.break_inner = full.inner;
  rec.fd_noise = std::numeric_limits<double>::epsilon() * sys.scale(lam) / h;
  const double mag = std::max(std::abs(full.inner), std::abs(half.inner));
  rec.richardson_ok = mag > 0.0 && std::abs(full.inner - half.inner) < 0.05 * mag;
  rec.condition_met = std::abs(full.inner) > 10.0 * rec.fd_noise && rec.richardson_ok;
  rec.ucp_after = inner_scan(assemble(perturb(mesh, directions, step)), tol).ucp;
  return rec;
}

struct AnnulusRecord {
  bool found = false;          // exactly one Dirichlet eigenvalue with dim 1
  double lambda_in = 0.0;
  Eigen::VectorXd inner_vector;   // on interior nodes, in partition order
  std::vector<int> cycle;         // interior nodes in cycle order
  bool alternation_ok = false;    // signs alternate along the cycle
  bool equal_magnitude_ok = false;
  bool extended_check = false;    // zero-extension is an eigenvector of the
                                  // annulus + hexagon-patch union
  double residual = 0.0;
  double residual_bound = 0.0;
};

// The annulus has a one-dimensional inner-solution space: an eigenvector with
// vanishing Cauchy data on both boundary circles.  Extending it by zero over
// a plugged-in triangulation of the inner hexagon stays an eigenvector.
inline AnnulusRecord annulus_study(double d, const Tolerances& tol = {}) {
  AnnulusRecord rec;
  const Mesh annulus = gen_annulus(d);
  const AssembledSystem sys = assemble(annulus);
  const InnerReport report = inner_scan(sys, tol);

  int hits = 0;
  const InnerEntry* entry = nullptr;
  for (const auto& e : report.entries)
    if (e.dim_inner > 0) {
      ++hits;
      entry = &e;
    }
  rec.found = (hits == 1 && entry->dim_inner == 1);
  if (!rec.found) return rec;
  rec.lambda_in = entry->lambda;
  rec.inner_vector = entry->basis.col(0);

  // the interior nodes of the refined annulus form a single cycle; walk it
  const MeshGraph g = build_graph(sys, tol);
  const auto& interior = sys.partition.interior;
  std::vector<int> pos_of(static_cast<std::size_t>(sys.n()), -1);
  for (std::size_t i = 0; i < interior.size(); ++i) pos_of[interior[i]] = static_cast<int>(i);
  auto interior_neighbours = [&](int v) {
    std::vector<int> out;
    for (int w : g.adjacency[v])
      if (pos_of[w] >= 0) out.push_back(w);
    return out;
  };
  int start = interior.front(), prev = -1, cur = start;
  do {
    rec.cycle.push_back(cur);
    const auto nb = interior_neighbours(cur);
    if (nb.size() != 2) return rec;  // not a cycle; leave checks false
    const int next = (nb[0] == prev) ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  } while (cur != start && rec.cycle.size() <= interior.size());
  if (rec.cycle.size() != interior.size()) return rec;

  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  bool alternating = true;
  for (std::size_t i = 0; i < rec.cycle.size(); ++i) {
    const double u = rec.inner_vector(pos_of[rec.cycle[i]]);
    const double v = rec.inner_vector(pos_of[rec.cycle[(i + 1) % rec.cycle.size()]]);
    lo = std::min(lo, std::abs(u));
    hi = std::max(hi, std::abs(u));
    if (!(u * v < 0.0)) alternating = false;
  }
  rec.alternation_ok = alternating;
  rec.equal_magnitude_ok = (hi - lo) <= 1e-8 * hi;

  // glue the default hexagon patch into the hole and re-check the eigenpair
  const Mesh patch = gen_annulus_patch();
  const auto host_part = sys.partition;
  const auto patch_part = boundary_partition(patch);
  const double match_tol = 1e-12 * (1.0 + mesh_diameter(annulus));
  std::vector<std::pair<int, int>> shared;
  for (int pn : patch_part.boundary) {
    for (int hn : host_part.boundary) {
      if (std::hypot(patch.nodes[pn].x - annulus.nodes[hn].x,
                     patch.nodes[pn].y - annulus.nodes[hn].y) <= match_tol) {
        shared.emplace_back(pn, hn);
        break;
      }
    }
  }
  const Mesh combined = embed(annulus, patch, shared);
  const AssembledSystem big = assemble(combined);
  Eigen::VectorXd extended = Eigen::VectorXd::Zero(big.n());
  for (std::size_t i = 0; i < interior.size(); ++i)
    extended(interior[i]) = rec.inner_vector(static_cast<int>(i));
  rec.residual = ((big.A - rec.lambda_in * big.M) * extended).norm();
  rec.residual_bound = 1e-9 * big.max_abs_a;
  rec.extended_check = rec.residual <= rec.residual_bound;
  return rec;
}

struct ParitySweep {
  bool applicable = false;    // every outer-row coefficient pair is negative
  bool contradiction = false; // odd cycle forces u = 0 on the inner ring
  std::vector<std::string> trace;
};

// Sign propagation around the inner ring of gen_polygon_ring(k, d) at a
// candidate eigenvalue.  Each outer boundary node row couples two consecutive
// inner nodes with (generically negative) coefficients, forcing strict sign
// alternation; around an odd cycle that is impossible, so any inner solution
// must vanish.  Node labels in the trace are 1-based, center = 1.
inline ParitySweep ring_parity_sweep(const AssembledSystem& sys, int k, double lambda) {
  ParitySweep sweep;
  sweep.applicable = true;
  for (int j = 0; j < k; ++j) {
    const int outer = k + 1 + j;
    const int lead = 1 + j;                    // inner node entered at step j
    const int trail = 1 + (j + k - 1) % k;     // its predecessor on the ring
    const double c_lead = sys.A(outer, lead) - lambda * sys.M(outer, lead);
    const double c_trail = sys.A(outer, trail) - lambda * sys.M(outer, trail);
    if (!(c_lead < 0.0) || !(c_trail < 0.0)) {
      sweep.applicable = false;
      sweep.trace.push_back("row " + std::to_string(outer + 1) +
                            ": coefficient not negative, sweep inconclusive");
      return sweep;
    }
    sweep.trace.push_back("row " + std::to_string(outer + 1) + ": sign(u_" +
                          std::to_string(lead + 1) + ") = -sign(u_" + std::to_string(trail + 1) +
                          ")");
  }
  if (k % 2 == 1) {
    sweep.contradiction = true;
    sweep.trace.push_back("odd cycle: sign(u_2) = -sign(u_2), so the inner ring vanishes");
  } else {
    sweep.trace.push_back("even cycle: alternating signs are consistent, no contradiction");
  }
  return sweep;
}

struct HeptagonRecord {
  bool angle_ok = false;
  bool sign_ok = false;  // all off-diagonal stiffness entries nonpositive
  bool ucp = false;
  bool parity_contradiction = false;  // at every positive Dirichlet eigenvalue
  std::vector<std::string> sign_pattern_trace;
};

// UCP for the 7-ring: the odd inner cycle makes the alternating-sign pattern
// of a would-be inner solution impossible.
inline HeptagonRecord heptagon_study(double d, const Tolerances& tol = {}) {
  HeptagonRecord rec;
  const Mesh mesh = gen_polygon_ring(7, d);
  const AssembledSystem sys = assemble(mesh);
  rec.angle_ok = angle_condition(mesh).ok;
  rec.sign_ok = sign_audit(sys, tol).offdiag_nonpositive;
  rec.ucp = inner_scan(sys, tol).ucp;

  rec.parity_contradiction = true;
  const EigenDecomposition dir = dirichlet_eigs(sys, tol);
  for (double lam : dir.cluster_reps) {
    if (!(lam > 0.0)) continue;
    const ParitySweep sweep = ring_parity_sweep(sys, 7, lam);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "candidate lambda = %.17g:", lam);
    rec.sign_pattern_trace.push_back(buf);
    rec.sign_pattern_trace.insert(rec.sign_pattern_trace.end(), sweep.trace.begin(),
                                  sweep.trace.end());
    if (!(sweep.applicable && sweep.contradiction)) rec.parity_contradiction = false;
  }
  return rec;
}

}  // namespace ucpfem
