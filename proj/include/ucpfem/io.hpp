#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ucpfem/assembly.hpp"
#include "ucpfem/graph.hpp"
#include "ucpfem/mesh.hpp"
#include "ucpfem/spectra.hpp"

// File formats. Everything written here is emitted by hand with %.17g reals
// so identical inputs give byte-identical files; nlohmann::json is used for
// parsing only.

namespace ucpfem {

namespace detail {

inline std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline const char* fmt_bool(bool b) { return b ? "true" : "false"; }

inline std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace detail

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::invalid_argument("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- mesh JSON

inline std::string mesh_to_json(const Mesh& mesh) {
  const BoundaryPartition part = boundary_partition(mesh);
  std::string out = "{\n  \"kind\": \"";
  out += (mesh.kind == MeshKind::Triangular) ? "tri" : "quad";
  out += "\",\n  \"nodes\": [\n";
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
    out += "    [" + detail::fmt_g17(mesh.nodes[i].x) + ", " + detail::fmt_g17(mesh.nodes[i].y) +
           (i + 1 < mesh.nodes.size() ? "],\n" : "]\n");
  }
  out += "  ],\n  \"elements\": [\n";
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    const Element& el = mesh.elements[e];
    out += "    [";
    for (int k = 0; k < el.size(); ++k) out += (k ? ", " : "") + std::to_string(el.nodes[k]);
    out += (e + 1 < mesh.elements.size() ? "],\n" : "]\n");
  }
  out += "  ],\n  \"boundary\": [" + detail::join_ints(part.boundary) + "]\n}\n";
  return out;
}

inline Mesh mesh_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("mesh JSON parse error: ") + ex.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j.contains("nodes") || !j.contains("elements"))
    throw std::invalid_argument("mesh JSON: expected object with kind/nodes/elements");
  const std::string kind = j["kind"].get<std::string>();
  Mesh mesh;
  if (kind == "tri")
    mesh.kind = MeshKind::Triangular;
  else if (kind == "quad")
    mesh.kind = MeshKind::Quadrilateral;
  else
    throw std::invalid_argument("mesh JSON: kind must be \"tri\" or \"quad\"");
  const int want = (mesh.kind == MeshKind::Triangular) ? 3 : 4;
  for (const auto& node : j["nodes"]) {
    if (!node.is_array() || node.size() != 2)
      throw std::invalid_argument("mesh JSON: each node must be [x, y]");
    mesh.nodes.push_back({node[0].get<double>(), node[1].get<double>()});
  }
  for (const auto& el : j["elements"]) {
    if (!el.is_array() || static_cast<int>(el.size()) != want)
      throw std::invalid_argument("mesh JSON: element arity does not match kind");
    if (want == 3)
      mesh.elements.push_back(make_tri(el[0].get<int>(), el[1].get<int>(), el[2].get<int>()));
    else
      mesh.elements.push_back(
          make_quad(el[0].get<int>(), el[1].get<int>(), el[2].get<int>(), el[3].get<int>()));
  }
  require_valid(mesh, "mesh JSON");
  if (j.contains("boundary")) {
    std::vector<int> given = j["boundary"].get<std::vector<int>>();
    std::sort(given.begin(), given.end());
    if (given != boundary_partition(mesh).boundary)
      throw std::invalid_argument("mesh JSON: stated boundary disagrees with mesh topology");
  }
  return mesh;
}

inline void write_mesh_json(const std::string& path, const Mesh& mesh) {
  write_text_file(path, mesh_to_json(mesh));
}

inline Mesh read_mesh_json(const std::string& path) { return mesh_from_json(read_text_file(path)); }

// ------------------------------------------------------------ Matrix Market

// Structural entries (including exact zeros) of a symmetric matrix, both
// triangles, ordered by (row, col). `structure` lists upper-triangle pairs.
inline std::string matrix_to_market(const Eigen::MatrixXd& mat,
                                    const std::vector<std::pair<int, int>>& structure) {
  std::vector<std::pair<int, int>> entries;
  entries.reserve(2 * structure.size());
  for (const auto& [i, j] : structure) {
    entries.emplace_back(i, j);
    if (i != j) entries.emplace_back(j, i);
  }
  std::sort(entries.begin(), entries.end());
  std::string out = "%%MatrixMarket matrix coordinate real general\n";
  out += std::to_string(mat.rows()) + " " + std::to_string(mat.cols()) + " " +
         std::to_string(entries.size()) + "\n";
  for (const auto& [i, j] : entries)
    out += std::to_string(i + 1) + " " + std::to_string(j + 1) + " " +
           detail::fmt_g17(mat(i, j)) + "\n";
  return out;
}

// Dense matrix export: every entry, for small compressed operators.
inline std::string matrix_to_market(const Eigen::MatrixXd& mat) {
  std::vector<std::pair<int, int>> all;
  for (int i = 0; i < mat.rows(); ++i)
    for (int j = i; j < mat.cols(); ++j) all.emplace_back(i, j);
  return matrix_to_market(mat, all);
}

inline Eigen::MatrixXd matrix_from_market(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("%%MatrixMarket", 0) != 0)
    throw std::invalid_argument("Matrix Market: missing header");
  if (line.find("coordinate") == std::string::npos || line.find("real") == std::string::npos)
    throw std::invalid_argument("Matrix Market: expected coordinate real format");
  do {
    if (!std::getline(in, line)) throw std::invalid_argument("Matrix Market: missing size line");
  } while (!line.empty() && line[0] == '%');
  std::istringstream sz(line);
  long rows = 0, cols = 0, nnz = 0;
  if (!(sz >> rows >> cols >> nnz)) throw std::invalid_argument("Matrix Market: bad size line");
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(rows, cols);
  for (long k = 0; k < nnz; ++k) {
    long i = 0, j = 0;
    double v = 0.0;
    if (!(in >> i >> j >> v)) throw std::invalid_argument("Matrix Market: truncated entries");
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw std::invalid_argument("Matrix Market: index out of range");
    mat(i - 1, j - 1) = v;
  }
  return mat;
}

inline std::string partition_to_json(const BoundaryPartition& part) {
  return "{\n  \"interior\": [" + detail::join_ints(part.interior) + "],\n  \"boundary\": [" +
         detail::join_ints(part.boundary) + "]\n}\n";
}

inline std::string sign_audit_to_json(const SignAudit& audit) {
  std::string out = "{\n  \"offdiag_nonpositive\": ";
  out += detail::fmt_bool(audit.offdiag_nonpositive);
  out += ",\n  \"positive_entries\": [\n";
  for (std::size_t k = 0; k < audit.positive_entries.size(); ++k) {
    const auto& [i, j, a] = audit.positive_entries[k];
    out += "    {\"i\": " + std::to_string(i) + ", \"j\": " + std::to_string(j) +
           ", \"a\": " + detail::fmt_g17(a) + "}";
    out += (k + 1 < audit.positive_entries.size()) ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

// ------------------------------------------------------------------- graphs

inline std::string graph_to_json(const MeshGraph& g) {
  std::string out = "{\n  \"n\": " + std::to_string(g.n) + ",\n  \"edges\": [\n";
  std::size_t k = 0;
  for (const auto& [key, attr] : g.edges) {
    out += "    {\"u\": " + std::to_string(key.first) + ", \"v\": " + std::to_string(key.second) +
           ", \"m\": " + detail::fmt_g17(attr.m) + ", \"a\": " + detail::fmt_g17(attr.a) +
           ", \"leaky\": " + detail::fmt_bool(attr.leaky) + "}";
    out += (++k < g.edges.size()) ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

inline std::string chronicle_to_json(const std::vector<ForcingStep>& steps) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    out += "  {\"forcer\": " + std::to_string(steps[i].forcer) +
           ", \"forced\": " + std::to_string(steps[i].forced) + "}";
    out += (i + 1 < steps.size()) ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

// ------------------------------------------------------------------ reports

inline std::string inner_report_to_json(const InnerReport& report) {
  std::string out = "{\n  \"ucp\": ";
  out += detail::fmt_bool(report.ucp);
  out += ",\n  \"entries\": [\n";
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const InnerEntry& e = report.entries[i];
    out += "    {\"lambda\": " + detail::fmt_g17(e.lambda) +
           ", \"multiplicity\": " + std::to_string(e.multiplicity) +
           ", \"dim_inner\": " + std::to_string(e.dim_inner) +
           ", \"res_interior\": " + detail::fmt_g17(e.res_interior) +
           ", \"res_boundary\": " + detail::fmt_g17(e.res_boundary) + "}";
    out += (i + 1 < report.entries.size()) ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

inline std::string interlace_record_to_json(const InterlaceRecord& r, const std::string& indent) {
  return indent + "{\"lambda\": " + detail::fmt_g17(r.lambda) + ", \"N_N\": " +
         std::to_string(r.N_N) + ", \"N_D\": " + std::to_string(r.N_D) + ", \"m_N\": " +
         std::to_string(r.m_N) + ", \"m_D\": " + std::to_string(r.m_D) + ", \"m_in\": " +
         std::to_string(r.m_in) + ", \"n_minus_dtn\": " + std::to_string(r.n_minus_dtn) +
         ", \"n_zero_dtn\": " + std::to_string(r.n_zero_dtn) + ", \"i_infinity\": " +
         std::to_string(r.i_infinity) + ", \"identity_holds\": " +
         detail::fmt_bool(r.identity_holds) + ", \"cond_flag\": " + detail::fmt_bool(r.cond_flag) +
         "}";
}

inline std::string interlace_records_to_json(const std::vector<InterlaceRecord>& records) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    out += interlace_record_to_json(records[i], "  ");
    out += (i + 1 < records.size()) ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

inline std::string perturbation_to_json(const PerturbationRecord& r) {
  return std::string("{\n") + "  \"dbreak_lhs\": " + detail::fmt_g17(r.dbreak_lhs) +
         ",\n  \"dbreak_rhs\": " + detail::fmt_g17(r.dbreak_rhs) +
         ",\n  \"break_inner\": " + detail::fmt_g17(r.break_inner) +
         ",\n  \"fd_noise\": " + detail::fmt_g17(r.fd_noise) +
         ",\n  \"richardson_ok\": " + detail::fmt_bool(r.richardson_ok) +
         ",\n  \"condition_met\": " + detail::fmt_bool(r.condition_met) +
         ",\n  \"ucp_after\": " + detail::fmt_bool(r.ucp_after) + "\n}\n";
}

inline std::string annulus_to_json(const AnnulusRecord& r) {
  std::string out = std::string("{\n") + "  \"found\": " + detail::fmt_bool(r.found) +
                    ",\n  \"lambda_in\": " + detail::fmt_g17(r.lambda_in) +
                    ",\n  \"alternation_ok\": " + detail::fmt_bool(r.alternation_ok) +
                    ",\n  \"equal_magnitude_ok\": " + detail::fmt_bool(r.equal_magnitude_ok) +
                    ",\n  \"extended_check\": " + detail::fmt_bool(r.extended_check) +
                    ",\n  \"residual\": " + detail::fmt_g17(r.residual) +
                    ",\n  \"residual_bound\": " + detail::fmt_g17(r.residual_bound) +
                    ",\n  \"cycle\": [" + detail::join_ints(r.cycle) + "]\n}\n";
  return out;
}

inline std::string heptagon_to_json(const HeptagonRecord& r) {
  std::string out = std::string("{\n") + "  \"angle_ok\": " + detail::fmt_bool(r.angle_ok) +
                    ",\n  \"sign_ok\": " + detail::fmt_bool(r.sign_ok) + ",\n  \"ucp\": " +
                    detail::fmt_bool(r.ucp) + ",\n  \"parity_contradiction\": " +
                    detail::fmt_bool(r.parity_contradiction) + ",\n  \"trace\": [\n";
  for (std::size_t i = 0; i < r.sign_pattern_trace.size(); ++i) {
    out += "    \"" + r.sign_pattern_trace[i] + "\"";
    out += (i + 1 < r.sign_pattern_trace.size()) ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

// node index, x, y, value — one row per node, for external plotting
inline std::string eigenvector_to_csv(const Mesh& mesh, const Eigen::VectorXd& nodal) {
  if (nodal.size() != static_cast<Eigen::Index>(mesh.nodes.size()))
    throw std::invalid_argument("eigenvector_to_csv: vector length must match node count");
  std::string out = "node,x,y,value\n";
  for (Eigen::Index i = 0; i < nodal.size(); ++i)
    out += std::to_string(i) + "," + detail::fmt_g17(mesh.nodes[i].x) + "," +
           detail::fmt_g17(mesh.nodes[i].y) + "," + detail::fmt_g17(nodal(i)) + "\n";
  return out;
}

}  // namespace ucpfem
