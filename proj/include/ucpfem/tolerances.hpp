#pragma once

#include <cstdlib>
#include <cmath>
#include <string>

namespace ucpfem {

// One knob set for every floating-point decision in the library.  All rank
// and inertia cutoffs are relative; the absolute threshold is formed at the
// call site as  tol * max(sigma_max, data_scale)  so that a matrix which is
// *numerically zero* (every singular value at roundoff level) is classified
// as zero instead of having its noise promoted to rank.  data_scale is
// ||A||_max + |lambda| * ||M||_max of the system the matrix came from.
struct Tolerances {
  double rank = 1e-9;        // singular value / kernel cutoff, relative
  double cluster = 1e-8;     // eigenvalue clustering: gap <= cluster*(1+|l|)
  double zero = 1e-9;        // inertia zero band, relative to data scale
  double sign = 1e-12;       // sign audit: a_ij > sign * max|a| counts as positive
  double cond_window = 1e3;  // values within this factor above a cutoff flag
                             // the result as ill-conditioned

  double cluster_gap(double lambda) const { return cluster * (1.0 + std::abs(lambda)); }
};

// Environment overrides (UCP_FEM_TOL_RANK, UCP_FEM_TOL_CLUSTER,
// UCP_FEM_TOL_ZERO).  Unset or unparsable variables leave the base value.
inline Tolerances tolerances_from_env(Tolerances base = {}) {
  auto read = [](const char* name, double& slot) {
    const char* v = std::getenv(name);
    if (!v) return;
    char* end = nullptr;
    double parsed = std::strtod(v, &end);
    if (end != v && parsed > 0.0 && std::isfinite(parsed)) slot = parsed;
  };
  read("UCP_FEM_TOL_RANK", base.rank);
  read("UCP_FEM_TOL_CLUSTER", base.cluster);
  read("UCP_FEM_TOL_ZERO", base.zero);
  return base;
}

}  // namespace ucpfem
