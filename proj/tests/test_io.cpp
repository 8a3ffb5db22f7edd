#include <gtest/gtest.h>

#include <json.hpp>
#include <string>

#include "ucpfem/assembly.hpp"
#include "ucpfem/generators.hpp"
#include "ucpfem/graph.hpp"
#include "ucpfem/io.hpp"
#include "ucpfem/spectra.hpp"

using namespace ucpfem;

namespace {

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << "pattern not found: " << from;
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST(MeshJson, RoundTripIsByteIdentical) {
  for (const Mesh& m : {gen_polygon_ring(6, 3.0), gen_hexagon_split(3.0),
                        gen_tensor_product({0, 0.5, 2.0}, {0, 1.0})}) {
    const std::string text = mesh_to_json(m);
    const Mesh back = mesh_from_json(text);
    EXPECT_EQ(mesh_to_json(back), text);
    ASSERT_EQ(back.nodes.size(), m.nodes.size());
    for (std::size_t i = 0; i < m.nodes.size(); ++i) {
      EXPECT_EQ(back.nodes[i].x, m.nodes[i].x);  // %.17g preserves doubles exactly
      EXPECT_EQ(back.nodes[i].y, m.nodes[i].y);
    }
    ASSERT_EQ(back.elements.size(), m.elements.size());
    for (std::size_t e = 0; e < m.elements.size(); ++e)
      EXPECT_EQ(back.elements[e].nodes, m.elements[e].nodes);
  }
}

TEST(MeshJson, FileRoundTrip) {
  const Mesh m = gen_polygon_ring(6, 3.0);
  const std::string path = testing::TempDir() + "/hexring_roundtrip.json";
  write_mesh_json(path, m);
  const Mesh back = read_mesh_json(path);
  EXPECT_EQ(mesh_to_json(back), mesh_to_json(m));
  EXPECT_THROW(read_mesh_json(testing::TempDir() + "/does_not_exist.json"),
               std::invalid_argument);
}

TEST(MeshJson, StatedBoundaryIsVerified) {
  const std::string good = mesh_to_json(gen_polygon_ring(6, 3.0));
  EXPECT_NE(good.find("\"boundary\": [7, 8, 9, 10, 11, 12]"), std::string::npos);
  EXPECT_NO_THROW(mesh_from_json(good));
  const std::string wrong =
      replace_once(good, "[7, 8, 9, 10, 11, 12]", "[6, 8, 9, 10, 11, 12]");
  EXPECT_THROW(mesh_from_json(wrong), std::invalid_argument);
}

TEST(MeshJson, RejectsMalformedInput) {
  const std::string good = mesh_to_json(gen_polygon_ring(6, 3.0));
  EXPECT_THROW(mesh_from_json("{ not json"), std::invalid_argument);
  EXPECT_THROW(mesh_from_json("{}"), std::invalid_argument);
  EXPECT_THROW(mesh_from_json(replace_once(good, "\"tri\"", "\"hex\"")), std::invalid_argument);
  // quad kind with 3-node elements: arity mismatch
  EXPECT_THROW(mesh_from_json(replace_once(good, "\"tri\"", "\"quad\"")), std::invalid_argument);
  // a clockwise element fails mesh validation on load
  EXPECT_THROW(
      mesh_from_json("{\"kind\": \"tri\", \"nodes\": [[0,0],[1,0],[0,1]],"
                     " \"elements\": [[0,2,1]]}"),
      std::invalid_argument);
}

TEST(MatrixMarket, StructuredRoundTripIsExact) {
  const AssembledSystem sys = assemble(gen_polygon_ring(6, 3.0));
  const std::string text = matrix_to_market(sys.A, sys.structure);
  std::istringstream in(text);
  std::string header, sizes;
  std::getline(in, header);
  std::getline(in, sizes);
  EXPECT_EQ(header, "%%MatrixMarket matrix coordinate real general");
  // 43 structural pairs (30 edges + 13 diagonals) mirrored: 2*43 - 13 = 73
  EXPECT_EQ(sizes, "13 13 73");
  const Eigen::MatrixXd back = matrix_from_market(text);
  EXPECT_TRUE((back.array() == sys.A.array()).all());
  const Eigen::MatrixXd mass = matrix_from_market(matrix_to_market(sys.M, sys.structure));
  EXPECT_TRUE((mass.array() == sys.M.array()).all());
}

TEST(MatrixMarket, DenseOverloadRoundTrips) {
  const DtnOperator op = dtn(assemble(gen_polygon_ring(6, 3.0)), 0.0);
  const Eigen::MatrixXd back = matrix_from_market(matrix_to_market(op.matrix));
  EXPECT_TRUE((back.array() == op.matrix.array()).all());
}

TEST(MatrixMarket, ParserRejectsGarbage) {
  EXPECT_THROW(matrix_from_market(""), std::invalid_argument);
  EXPECT_THROW(matrix_from_market("1 1 1\n1 1 2.0\n"), std::invalid_argument);
  EXPECT_THROW(matrix_from_market("%%MatrixMarket matrix array real general\n2 2\n"),
               std::invalid_argument);
  EXPECT_THROW(matrix_from_market("%%MatrixMarket matrix coordinate real general\n"),
               std::invalid_argument);
  EXPECT_THROW(matrix_from_market("%%MatrixMarket matrix coordinate real general\nx y z\n"),
               std::invalid_argument);
  EXPECT_THROW(
      matrix_from_market("%%MatrixMarket matrix coordinate real general\n2 2 1\n"),
      std::invalid_argument);
  EXPECT_THROW(
      matrix_from_market("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 5.0\n"),
      std::invalid_argument);
}

TEST(ReportJson, EverythingParsesAsJson) {
  const AssembledSystem sys = assemble(gen_polygon_ring(6, 3.0));

  const auto part = nlohmann::json::parse(partition_to_json(sys.partition));
  EXPECT_EQ(part["interior"].size(), 7u);
  EXPECT_EQ(part["boundary"][0].get<int>(), 7);

  const auto audit =
      nlohmann::json::parse(sign_audit_to_json(sign_audit(assemble(gen_polygon_ring(6, 1.3)))));
  EXPECT_FALSE(audit["offdiag_nonpositive"].get<bool>());
  EXPECT_EQ(audit["positive_entries"].size(), 6u);
  EXPECT_EQ(audit["positive_entries"][0]["i"].get<int>(), 7);

  const MeshGraph g = build_graph(sys);
  const auto graph = nlohmann::json::parse(graph_to_json(g));
  EXPECT_EQ(graph["n"].get<int>(), 13);
  EXPECT_EQ(graph["edges"].size(), 30u);
  EXPECT_EQ(graph["edges"][0]["u"].get<int>(), 0);
  EXPECT_FALSE(graph["edges"][0]["leaky"].get<bool>());

  const ForcingResult fr = forcing_closure(g, sys.partition.boundary, false);
  const auto chron = nlohmann::json::parse(chronicle_to_json(fr.chronicle));
  EXPECT_TRUE(chron.is_array());
  EXPECT_EQ(chron.size(), 0u);  // the ring boundary forces nothing

  const auto inner = nlohmann::json::parse(inner_report_to_json(inner_scan(sys)));
  EXPECT_FALSE(inner["ucp"].get<bool>());
  EXPECT_EQ(inner["entries"].size(), 5u);

  const std::vector<InterlaceRecord> recs = {interlace(sys, 0.0),
                                             interlace(sys, 10.682717537774622)};
  const auto inter = nlohmann::json::parse(interlace_records_to_json(recs));
  ASSERT_EQ(inter.size(), 2u);
  EXPECT_TRUE(inter[0]["identity_holds"].get<bool>());
  EXPECT_EQ(inter[1]["m_in"].get<int>(), 1);
  EXPECT_EQ(inter[1]["i_infinity"].get<int>(), 0);
}

TEST(ReportJson, StudyRecordsSerialize) {
  PerturbationRecord pr;
  pr.dbreak_lhs = 0.25;
  pr.dbreak_rhs = -0.5;
  pr.break_inner = 0.75;
  pr.fd_noise = 1e-11;
  pr.richardson_ok = pr.condition_met = pr.ucp_after = true;
  const auto p = nlohmann::json::parse(perturbation_to_json(pr));
  EXPECT_DOUBLE_EQ(p["break_inner"].get<double>(), 0.75);
  EXPECT_TRUE(p["condition_met"].get<bool>());

  AnnulusRecord ar;
  ar.found = true;
  ar.lambda_in = 22.5;
  ar.cycle = {12, 13, 14};
  ar.alternation_ok = ar.equal_magnitude_ok = ar.extended_check = true;
  ar.residual = 3e-15;
  ar.residual_bound = 7e-9;
  const auto a = nlohmann::json::parse(annulus_to_json(ar));
  EXPECT_TRUE(a["found"].get<bool>());
  EXPECT_EQ(a["cycle"].size(), 3u);

  HeptagonRecord hr;
  hr.angle_ok = hr.sign_ok = hr.ucp = hr.parity_contradiction = true;
  hr.sign_pattern_trace = {"candidate lambda = 1:", "row 9: sign(u_2) = -sign(u_8)"};
  const auto h = nlohmann::json::parse(heptagon_to_json(hr));
  EXPECT_TRUE(h["parity_contradiction"].get<bool>());
  EXPECT_EQ(h["trace"].size(), 2u);
}

TEST(Csv, EigenvectorTable) {
  const Mesh m = gen_polygon_ring(6, 3.0);
  Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(13, 0.0, 1.2);
  const std::string text = eigenvector_to_csv(m, v);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "node,x,y,value");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 13);
  EXPECT_NE(text.find("0,0,0,0\n"), std::string::npos);  // node 0 at the origin
  EXPECT_THROW(eigenvector_to_csv(m, Eigen::VectorXd::Ones(5)), std::invalid_argument);
}

TEST(Emitters, AreDeterministic) {
  const Mesh m = gen_annulus(3.0);
  EXPECT_EQ(mesh_to_json(m), mesh_to_json(m));
  const AssembledSystem sys = assemble(m);
  EXPECT_EQ(matrix_to_market(sys.A, sys.structure), matrix_to_market(sys.A, sys.structure));
  EXPECT_EQ(graph_to_json(build_graph(sys)), graph_to_json(build_graph(sys)));
}
