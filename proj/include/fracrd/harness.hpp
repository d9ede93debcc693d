#pragma once
// Convergence studies and oracle cross-checks run as executable experiments:
// temporal order against a fine-step (or exact) reference, spectral spatial
// exactness for resolved eigenmodes, the alpha spreading chain, and the
// transform/operator oracle sweep.

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "fracrd/config.hpp"
#include "fracrd/core.hpp"

namespace fracrd {

struct ConvergenceRow {
  double tau;
  double error;   // discrete L2 against the reference at t_final, all species
  double order;   // log2(e_prev / e_this); NaN on the first row
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double reference_tau = 0.0;
  bool exact_reference = false;  // true when the per-mode exact solution was used
};

// Errors at t_final on the config's grid for each tau in `taus` (strictly
// decreasing, each dividing t_final). The reference is the per-mode exact
// solution when the model has no reaction, otherwise an EtdCn run at tau_ref
// (tau_ref <= min(taus)/8 required).
ConvergenceTable temporal_convergence(const RunConfig& base,
                                      const std::vector<double>& taus, double tau_ref);

// Runs the configured scheme from a single-eigenfunction IC with no reaction
// and compares against the scheme's scalar per-mode propagation at t_final.
// For resolved modes the spatial error is round-off only.
double spatial_accuracy(const RunConfig& base);

struct FrontRow {
  double alpha;
  double front;  // largest |x - center| with u > 0.5 max(u)
};

// Fisher runs from a localized bump at the domain center, one per alpha,
// identical otherwise. Fractional orders spread at least as far as alpha = 2.
std::vector<FrontRow> alpha_spreading(const RunConfig& base,
                                      const std::vector<double>& alphas);

struct OracleEntry {
  int dim;
  std::vector<std::size_t> sizes;
  double alpha;
  std::vector<BoundaryKind> bc;
  double transform_residual;  // fast vs reference_forward, max abs
  double roundtrip_residual;  // inverse(forward(f)) vs f, max abs
  double operator_residual;   // matrix-free apply vs dense matrix, max abs
  bool pass;
};

struct OracleReport {
  std::vector<OracleEntry> entries;
  double worst_transform = 0.0;
  double worst_operator = 0.0;
  bool all_pass = true;
};

// Sweeps d in {1,2}, the given per-axis sizes and alphas, and every boundary
// combination. Tolerances: 1e-12 for transforms, 1e-10 for the operator.
OracleReport oracle_suite(const std::vector<std::size_t>& sizes,
                          const std::vector<double>& alphas);

void write_convergence_csv(const std::filesystem::path& path, const ConvergenceTable& t);
void write_convergence_markdown(const std::filesystem::path& path,
                                const ConvergenceTable& t);
std::string format_convergence(const ConvergenceTable& t);
std::string format_oracle_report(const OracleReport& r);

}  // namespace fracrd
