#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "ucpfem/assembly.hpp"
#include "ucpfem/generators.hpp"
#include "ucpfem/rng.hpp"
#include "ucpfem/spectra.hpp"

using namespace ucpfem;

namespace {

const double kLambdaStar3 = 10.682717537774622;

AssembledSystem hexring3() { return assemble(gen_polygon_ring(6, 3.0)); }

void expect_spectrum(const Eigen::VectorXd& got, const std::vector<double>& want) {
  ASSERT_EQ(got.size(), static_cast<Eigen::Index>(want.size()));
  for (Eigen::Index i = 0; i < got.size(); ++i)
    EXPECT_NEAR(got(i), want[i], 1e-8 * (1.0 + std::abs(want[i]))) << "eigenvalue " << i;
}

std::vector<std::size_t> cluster_sizes(const EigenDecomposition& d) {
  std::vector<std::size_t> out;
  for (const auto& c : d.clusters) out.push_back(c.size());
  return out;
}

// a 2x2 system with an indefinite "mass" for the precondition tests
AssembledSystem bad_mass_system() {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd M(2, 2);
  M << 1, 0, 0, -1;
  BoundaryPartition p;
  p.interior = {0};
  p.boundary = {1};
  return AssembledSystem::from_matrices(A, M, p, {{0, 0}, {1, 1}});
}

}  // namespace

TEST(Eigs, HexRingNeumannSpectrum) {
  const AssembledSystem sys = hexring3();
  const EigenDecomposition neu = neumann_eigs(sys);
  expect_spectrum(neu.values,
                  {0.0, 0.49185405432192547, 0.49185405432192547, 1.3623620223410973,
                   1.3623620223410973, 2.2511268811787284, 2.7104809454734644,
                   5.6156304999969402, 5.6156304999969402, 9.6389904375140425,
                   9.6389904375140425, 10.682717537774623, 11.736642050834526});
  EXPECT_EQ(cluster_sizes(neu), (std::vector<std::size_t>{1, 2, 2, 1, 1, 2, 2, 1, 1}));
  // vectors are M-orthonormal and solve the pencil
  const Eigen::MatrixXd gram = neu.vectors.transpose() * sys.M * neu.vectors;
  EXPECT_LE((gram - Eigen::MatrixXd::Identity(13, 13)).cwiseAbs().maxCoeff(), 1e-10);
  const Eigen::MatrixXd res =
      sys.A * neu.vectors - sys.M * neu.vectors * neu.values.asDiagonal();
  EXPECT_LE(res.cwiseAbs().maxCoeff(), 1e-10 * sys.scale(neu.values.maxCoeff()));
}

TEST(Eigs, HexRingDirichletSpectrum) {
  const EigenDecomposition dir = dirichlet_eigs(hexring3());
  expect_spectrum(dir.values,
                  {0.8379296447962745, 2.974439272524319, 2.974439272524319,
                   7.283929641213573, 7.283929641213573, 10.394384230410711,
                   10.682717537774632});
  EXPECT_EQ(cluster_sizes(dir), (std::vector<std::size_t>{1, 2, 2, 1, 1}));
}

TEST(Eigs, ClusterLookup) {
  const EigenDecomposition dir = dirichlet_eigs(hexring3());
  const Tolerances tol;
  const int c = dir.cluster_of(kLambdaStar3, tol);
  ASSERT_GE(c, 0);
  EXPECT_EQ(dir.clusters[static_cast<std::size_t>(c)].size(), 1u);
  EXPECT_EQ(dir.cluster_of(100.0, tol), -1);
  EXPECT_EQ(dir.cluster_of(2.974439272524319, tol),
            dir.cluster_of(2.97443928, tol));  // same cluster within the gap
}

TEST(Eigs, RejectsIndefiniteMass) {
  EXPECT_THROW(neumann_eigs(bad_mass_system()), std::domain_error);
}

TEST(Eigs, ScalingLeavesTheSpectrumAlone) {
  const AssembledSystem sys = hexring3();
  const AssembledSystem scaled = AssembledSystem::from_matrices(
      1e6 * sys.A, 1e6 * sys.M, sys.partition, sys.structure);
  const Eigen::VectorXd a = neumann_eigs(sys).values;
  const Eigen::VectorXd b = neumann_eigs(scaled).values;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    EXPECT_NEAR(a(i), b(i), 1e-10 * (1.0 + std::abs(a(i))));
}

TEST(InnerSpace, HexRingCarriesTheAlternatingVector) {
  const AssembledSystem sys = hexring3();
  const Eigen::MatrixXd basis = inner_space(sys, kLambdaStar3);
  ASSERT_EQ(basis.cols(), 1);
  ASSERT_EQ(basis.rows(), 7);
  Eigen::VectorXd expect(7);
  expect << 0, 1, -1, 1, -1, 1, -1;
  expect.normalize();
  EXPECT_NEAR(std::abs(expect.dot(basis.col(0))), 1.0, 1e-8);
  EXPECT_LE(std::abs(basis(0, 0)), 1e-8);  // the center entry vanishes
}

TEST(InnerSpace, TrivialAwayFromTheSpecialEigenvalue) {
  const AssembledSystem sys = hexring3();
  EXPECT_EQ(inner_space(sys, kLambdaStar3 + 0.1).cols(), 0);
  EXPECT_EQ(inner_space(sys, kLambdaStar3 - 0.1).cols(), 0);
  EXPECT_EQ(inner_space(sys, 0.0).cols(), 0);
  EXPECT_EQ(inner_space(sys, 2.974439272524319).cols(), 0);  // Dirichlet pair, no inner solution
}

TEST(InnerScan, VerdictsAcrossTheFixtures) {
  {
    const AssembledSystem sys = hexring3();
    const InnerReport r = inner_scan(sys);
    EXPECT_FALSE(r.ucp);
    int hits = 0;
    for (const auto& e : r.entries)
      if (e.dim_inner > 0) {
        ++hits;
        EXPECT_EQ(e.dim_inner, 1);
        EXPECT_EQ(e.multiplicity, 1);
        EXPECT_NEAR(e.lambda, kLambdaStar3, 1e-8 * kLambdaStar3);
        EXPECT_LE(e.res_interior, 1e-8 * sys.scale(e.lambda));
        EXPECT_LE(e.res_boundary, 1e-8 * sys.scale(e.lambda));
      }
    EXPECT_EQ(hits, 1);
    EXPECT_EQ(r.entries.size(), 5u);  // one entry per Dirichlet cluster
  }
  EXPECT_TRUE(inner_scan(assemble(gen_hexagon_split(3.0))).ucp);
  EXPECT_TRUE(inner_scan(assemble(gen_polygon_ring(7, 3.0))).ucp);
  EXPECT_TRUE(inner_scan(assemble(gen_aniso_strip())).ucp);
  EXPECT_TRUE(inner_scan(assemble(gen_tensor_product({0, 1, 2, 3}, {0, 1, 2, 3}))).ucp);
  EXPECT_FALSE(inner_scan(assemble(gen_annulus(3.0))).ucp);
}

TEST(Harmonic, ConstantExtensionAtZero) {
  const AssembledSystem sys = hexring3();
  const Eigen::VectorXd u_I = harmonic_extension(sys, 0.0, Eigen::VectorXd::Ones(6));
  ASSERT_EQ(u_I.size(), 7);
  EXPECT_LE((u_I - Eigen::VectorXd::Ones(7)).cwiseAbs().maxCoeff(), 1e-10);
  const Eigen::VectorXd dn = normal_derivative(sys, 0.0, Eigen::VectorXd::Ones(6));
  EXPECT_LE(dn.cwiseAbs().maxCoeff(), 1e-10 * sys.max_abs_a);
}

TEST(Harmonic, SolvesTheInteriorEquation) {
  const AssembledSystem sys = hexring3();
  const double lam = 1.7;  // not an eigenvalue of either problem
  SplitMix64 rng(5);
  Eigen::VectorXd u_B(6);
  for (int i = 0; i < 6; ++i) u_B(i) = rng.uniform(-1, 1);
  const Eigen::VectorXd u_I = harmonic_extension(sys, lam, u_B);
  const Eigen::VectorXd res =
      (sys.A_II - lam * sys.M_II) * u_I + (sys.A_IB - lam * sys.M_IB) * u_B;
  EXPECT_LE(res.cwiseAbs().maxCoeff(), 1e-10 * sys.scale(lam));
}

TEST(Harmonic, RefusesDirichletEigenvaluesAndBadSizes) {
  const AssembledSystem sys = hexring3();
  EXPECT_THROW(harmonic_extension(sys, 0.8379296447962745, Eigen::VectorXd::Ones(6)),
               std::domain_error);
  EXPECT_THROW(harmonic_extension(sys, kLambdaStar3, Eigen::VectorXd::Ones(6)),
               std::domain_error);
  EXPECT_THROW(harmonic_extension(sys, 0.0, Eigen::VectorXd::Ones(5)), std::invalid_argument);
}

TEST(Dtn, SchurComplementAtZero) {
  const AssembledSystem sys = hexring3();
  const DtnOperator op = dtn(sys, 0.0);
  EXPECT_EQ(op.i_infinity, 0);
  ASSERT_EQ(op.matrix.rows(), 6);
  EXPECT_TRUE((op.matrix.array() == op.matrix.transpose().array()).all());
  // at lambda = 0 the constants are flux-free: one zero eigenvalue, none negative
  const Inertia in = inertia(op.matrix, 1e-9 * sys.max_abs_a);
  EXPECT_EQ(in.n_zero, 1);
  EXPECT_EQ(in.n_minus, 0);
  EXPECT_EQ(in.n_plus, 5);
  EXPECT_LE((op.matrix * Eigen::VectorXd::Ones(6)).cwiseAbs().maxCoeff(),
            1e-9 * sys.max_abs_a);
}

TEST(Dtn, AgreesWithTheNormalDerivativeOffSpectrum) {
  const AssembledSystem sys = hexring3();
  const double lam = 1.7;
  const DtnOperator op = dtn(sys, lam);
  EXPECT_EQ(op.i_infinity, 0);
  SplitMix64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd u_B(6);
    for (int i = 0; i < 6; ++i) u_B(i) = rng.uniform(-1, 1);
    const Eigen::VectorXd direct = normal_derivative(sys, lam, u_B);
    EXPECT_LE((op.matrix * u_B - direct).cwiseAbs().maxCoeff(), 1e-9 * sys.scale(lam));
  }
}

TEST(Dtn, RestrictsAtDirichletEigenvalues) {
  const AssembledSystem sys = hexring3();
  {
    // double Dirichlet eigenvalue without inner solutions: two directions of
    // boundary data have no extension, so Q loses two dimensions
    const DtnOperator op = dtn(sys, 2.974439272524319);
    EXPECT_EQ(op.i_infinity, 2);
    EXPECT_EQ(op.q_basis.cols(), 4);
    EXPECT_EQ(op.q_basis.rows(), 6);
    const Eigen::MatrixXd gram = op.q_basis.transpose() * op.q_basis;
    EXPECT_LE((gram - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
  }
  {
    // at the inner-solution eigenvalue the kernel vector has zero boundary
    // coupling, so every boundary datum still extends: Q stays full
    const DtnOperator op = dtn(sys, kLambdaStar3);
    EXPECT_EQ(op.i_infinity, 0);
    EXPECT_EQ(op.q_basis.cols(), 6);
  }
}

TEST(Inertia, CountsWithAZeroBand) {
  Eigen::MatrixXd d = Eigen::Vector4d(-2.0, 0.0, 3.0, 1e-15).asDiagonal();
  const Inertia in = inertia(d, 1e-12);
  EXPECT_EQ(in.n_minus, 1);
  EXPECT_EQ(in.n_zero, 2);
  EXPECT_EQ(in.n_plus, 1);
  EXPECT_FALSE(in.cond_flag);
  // a value just above the band trips the conditioning flag
  Eigen::MatrixXd close = Eigen::Vector2d(5e-10, 1.0).asDiagonal();
  EXPECT_TRUE(inertia(close, 1e-12).cond_flag);
  EXPECT_FALSE(inertia(Eigen::MatrixXd(0, 0), 1e-12).cond_flag);
}

TEST(Counting, HexRingSpotChecks) {
  const AssembledSystem sys = hexring3();
  {
    const CountingResult c = counting(sys, 5.0);
    EXPECT_EQ(c.N_N, 7);
    EXPECT_EQ(c.N_D, 3);
    EXPECT_EQ(c.m_N, 0);
    EXPECT_EQ(c.m_D, 0);
  }
  {
    const CountingResult c = counting(sys, 0.0);
    EXPECT_EQ(c.N_N, 0);
    EXPECT_EQ(c.m_N, 1);
    EXPECT_EQ(c.N_D, 0);
    EXPECT_EQ(c.m_D, 0);
  }
  {
    const CountingResult c = counting(sys, 1.3623620223410973);
    EXPECT_EQ(c.m_N, 2);
    EXPECT_EQ(c.N_N, 3);
  }
  {
    const CountingResult c = counting(sys, kLambdaStar3);
    EXPECT_EQ(c.N_N, 11);
    EXPECT_EQ(c.N_D, 6);
    EXPECT_EQ(c.m_N, 1);
    EXPECT_EQ(c.m_D, 1);
  }
}

TEST(Interlace, HexRingKeyRecords) {
  const AssembledSystem sys = hexring3();
  {
    const InterlaceRecord r = interlace(sys, kLambdaStar3);
    EXPECT_TRUE(r.identity_holds);
    EXPECT_EQ(r.N_N, 11);
    EXPECT_EQ(r.N_D, 6);
    EXPECT_EQ(r.m_N, 1);
    EXPECT_EQ(r.m_D, 1);
    EXPECT_EQ(r.m_in, 1);
    EXPECT_EQ(r.n_minus_dtn, 5);
    EXPECT_EQ(r.n_zero_dtn, 0);
    EXPECT_EQ(r.i_infinity, 0);
  }
  {
    const InterlaceRecord r = interlace(sys, 2.974439272524319);
    EXPECT_TRUE(r.identity_holds);
    EXPECT_EQ(r.m_D, 2);
    EXPECT_EQ(r.m_in, 0);
    EXPECT_EQ(r.i_infinity, 2);
  }
  {
    const InterlaceRecord r = interlace(sys, 0.0);
    EXPECT_TRUE(r.identity_holds);
    EXPECT_EQ(r.m_N, 1);
    EXPECT_EQ(r.n_zero_dtn, 1);
    EXPECT_EQ(r.n_minus_dtn, 0);
  }
}

TEST(Interlace, HoldsEverywhereOnTheFixtures) {
  const std::vector<AssembledSystem> fixtures = {
      hexring3(),
      assemble(gen_hexagon_split(3.0)),
      assemble(gen_polygon_ring(7, 3.0)),
      assemble(gen_annulus(3.0)),
      assemble(gen_tensor_product({0, 1, 2, 3}, {0, 1, 2, 3})),
      assemble(gen_aniso_strip()),
  };
  SplitMix64 rng(99);
  for (const AssembledSystem& sys : fixtures) {
    std::vector<double> lambdas = {0.0};
    const EigenDecomposition neu = neumann_eigs(sys);
    const EigenDecomposition dir = dirichlet_eigs(sys);
    for (double v : neu.cluster_reps) lambdas.push_back(v);
    for (double v : dir.cluster_reps) lambdas.push_back(v);
    const double top = neu.values(neu.values.size() - 1);
    for (int t = 0; t < 20; ++t) lambdas.push_back(rng.uniform(0.0, 1.05 * top));
    for (double lam : lambdas) {
      const InterlaceRecord r = interlace(sys, lam);
      EXPECT_TRUE(r.identity_holds)
          << "n=" << sys.n() << " lambda=" << lam << " NN=" << r.N_N << " ND=" << r.N_D
          << " mN=" << r.m_N << " mD=" << r.m_D << " m_in=" << r.m_in
          << " n-=" << r.n_minus_dtn << " n0=" << r.n_zero_dtn;
      EXPECT_EQ(r.i_infinity, r.m_D - r.m_in) << "n=" << sys.n() << " lambda=" << lam;
    }
  }
}

TEST(Interlace, InvariantUnderDataScaling) {
  const AssembledSystem sys = hexring3();
  const AssembledSystem scaled = AssembledSystem::from_matrices(
      1e6 * sys.A, 1e6 * sys.M, sys.partition, sys.structure);
  for (double lam : {0.0, 1.7, 2.974439272524319, kLambdaStar3}) {
    const InterlaceRecord a = interlace(sys, lam);
    const InterlaceRecord b = interlace(scaled, lam);
    EXPECT_TRUE(b.identity_holds);
    EXPECT_EQ(a.N_N, b.N_N);
    EXPECT_EQ(a.m_N, b.m_N);
    EXPECT_EQ(a.m_D, b.m_D);
    EXPECT_EQ(a.m_in, b.m_in);
    EXPECT_EQ(a.n_minus_dtn, b.n_minus_dtn);
    EXPECT_EQ(a.n_zero_dtn, b.n_zero_dtn);
    EXPECT_EQ(a.i_infinity, b.i_infinity);
  }
}

TEST(Interlace, MeshWithoutInteriorNodes) {
  // a single quad cell: every node is on the boundary, the DtN is the full
  // pencil and both identities degenerate gracefully
  const AssembledSystem sys = assemble(gen_tensor_product({0.0, 1.0}, {0.0, 1.0}));
  ASSERT_EQ(sys.n_interior(), 0);
  EXPECT_EQ(inner_space(sys, 1.0).cols(), 0);
  for (double lam : {0.0, 2.0, 10.0}) {
    const InterlaceRecord r = interlace(sys, lam);
    EXPECT_TRUE(r.identity_holds);
    EXPECT_EQ(r.N_D, 0);
    EXPECT_EQ(r.m_D, 0);
    EXPECT_EQ(r.i_infinity, 0);
  }
  const Eigen::VectorXd dn = normal_derivative(sys, 0.0, Eigen::VectorXd::Ones(4));
  EXPECT_LE(dn.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(LambdaStar, ClosedFormAndDomain) {
  EXPECT_NEAR(lambda_star(2.8), 11.6339820173634, 1e-12 * 11.6);
  EXPECT_NEAR(lambda_star(3.0), 10.682717537774622, 1e-12 * 10.7);
  EXPECT_NEAR(lambda_star(4.0), 7.631116940054499, 1e-12 * 7.6);
  EXPECT_NEAR(lambda_star(1.0 + std::numbers::sqrt3), 12.0, 1e-10);
  EXPECT_THROW(lambda_star(2.0 / std::numbers::sqrt3), std::domain_error);
  EXPECT_THROW(lambda_star(0.5), std::domain_error);
  // the closed form lands on a Dirichlet eigenvalue of the assembled ring
  for (double d : {2.8, 3.0, 4.0}) {
    const EigenDecomposition dir = dirichlet_eigs(assemble(gen_polygon_ring(6, d)));
    EXPECT_GE(dir.cluster_of(lambda_star(d), Tolerances{}), 0) << "d=" << d;
  }
}

TEST(Perturbation, GenericDeformationBreaksTheInnerSolution) {
  SplitMix64 rng(7);
  const auto dirs = sample_directions(rng, 13);
  const PerturbationRecord rec = perturbation_test(3.0, dirs, 1e-3);
  EXPECT_TRUE(rec.richardson_ok);
  EXPECT_TRUE(rec.condition_met);
  EXPECT_TRUE(rec.ucp_after);
  EXPECT_GT(std::abs(rec.break_inner), 10.0 * rec.fd_noise);
  // the pairing with the inner solution telescopes into the coupling sums
  EXPECT_NEAR(rec.break_inner, rec.dbreak_lhs - rec.dbreak_rhs,
              1e-9 * std::abs(rec.break_inner));
}

TEST(Perturbation, InputValidation) {
  EXPECT_THROW(perturbation_test(3.0, std::vector<std::pair<double, double>>(5), 1e-3),
               std::invalid_argument);
}

TEST(Annulus, InnerSolutionOnTheMidpointCycle) {
  const AnnulusRecord rec = annulus_study(3.0);
  EXPECT_TRUE(rec.found);
  EXPECT_NEAR(rec.lambda_in, 22.538368222350346, 1e-8 * 22.5);
  ASSERT_EQ(rec.cycle.size(), 12u);
  EXPECT_TRUE(rec.alternation_ok);
  EXPECT_TRUE(rec.equal_magnitude_ok);
  EXPECT_TRUE(rec.extended_check);
  EXPECT_LE(rec.residual, rec.residual_bound);
  EXPECT_GT(rec.residual_bound, 0.0);
  ASSERT_EQ(rec.inner_vector.size(), 12);
  // unit vector with equal magnitudes: every entry is 1/sqrt(12)
  for (int i = 0; i < 12; ++i)
    EXPECT_NEAR(std::abs(rec.inner_vector(i)), 1.0 / std::sqrt(12.0), 1e-8);
}

TEST(ParitySweep, OddRingForcesAContradiction) {
  const AssembledSystem sys = assemble(gen_polygon_ring(7, 3.0));
  const EigenDecomposition dir = dirichlet_eigs(sys);
  const ParitySweep sweep = ring_parity_sweep(sys, 7, dir.cluster_reps.back());
  EXPECT_TRUE(sweep.applicable);
  EXPECT_TRUE(sweep.contradiction);
  ASSERT_FALSE(sweep.trace.empty());
  EXPECT_NE(sweep.trace.back().find("odd cycle"), std::string::npos);
}

TEST(ParitySweep, EvenRingStaysConsistent) {
  const AssembledSystem sys = hexring3();
  const ParitySweep sweep = ring_parity_sweep(sys, 6, kLambdaStar3);
  EXPECT_TRUE(sweep.applicable);
  EXPECT_FALSE(sweep.contradiction);
  EXPECT_NE(sweep.trace.back().find("even cycle"), std::string::npos);
  // a wildly negative lambda flips the coefficient signs: inconclusive
  const ParitySweep off = ring_parity_sweep(sys, 6, -100.0);
  EXPECT_FALSE(off.applicable);
  EXPECT_NE(off.trace.back().find("inconclusive"), std::string::npos);
}

TEST(Heptagon, StudyBundle) {
  const HeptagonRecord rec = heptagon_study(3.0);
  EXPECT_TRUE(rec.angle_ok);
  EXPECT_TRUE(rec.sign_ok);
  EXPECT_TRUE(rec.ucp);
  EXPECT_TRUE(rec.parity_contradiction);
  EXPECT_FALSE(rec.sign_pattern_trace.empty());
}
