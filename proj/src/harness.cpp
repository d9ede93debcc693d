#include "fracrd/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>

#include "fracrd/frac_operator.hpp"
#include "fracrd/mesh_spectra.hpp"
#include "fracrd/runner.hpp"
#include "fracrd/transforms.hpp"

namespace fracrd {

namespace {

bool divides(double tau, double t_final) {
  const double r = t_final / tau;
  const double ulp = std::max(std::abs(r), 1.0) * std::numeric_limits<double>::epsilon();
  return std::abs(r - std::round(r)) <= ulp;
}

// Discrete L2 distance at t_final summed over species.
double fields_error(const std::vector<Field>& a, const std::vector<Field>& b,
                    const Grid& grid) {
  double sum2 = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s)
    for (std::size_t i = 0; i < a[s].size(); ++i) {
      const double d = a[s][i] - b[s][i];
      sum2 += d * d;
    }
  return std::sqrt(grid.cell_volume() * sum2);
}

// Scalar per-mode propagation factor of one scheme over N steps, computed by
// repeated multiplication exactly as the stepper does.
double scheme_factor(SchemeKind scheme, double c, std::size_t steps) {
  const double per_step = scheme == SchemeKind::EtdCn ? pade_r11(c) : std::exp(-c);
  double f = 1.0;
  for (std::size_t k = 0; k < steps; ++k) f *= per_step;
  return f;
}

}  // namespace

ConvergenceTable temporal_convergence(const RunConfig& base,
                                      const std::vector<double>& taus, double tau_ref) {
  if (taus.empty()) throw std::invalid_argument("convergence: empty tau list");
  for (std::size_t i = 0; i + 1 < taus.size(); ++i)
    if (!(taus[i] > taus[i + 1]))
      throw std::invalid_argument("convergence: tau list must be strictly decreasing");
  for (double tau : taus)
    if (!divides(tau, base.t_final))
      throw std::invalid_argument("convergence: every tau must divide t_final");

  const Grid grid = build_grid(base.domain, base.n);
  const std::vector<Field> initial = make_initial_conditions(base, grid);

  ConvergenceTable table;
  std::vector<Field> reference;
  if (base.model == ModelKind::None) {
    // Pure diffusion: the exact solution is e^{-mu T} per mode.
    table.exact_reference = true;
    table.reference_tau = 0.0;
    TransformPlan plan(grid.n, base.bc);
    const std::vector<double> diff = base.species_diffusion();
    for (std::size_t s = 0; s < initial.size(); ++s) {
      const SpectrumTable spectra = build_spectrum(grid, base.bc, base.alpha, diff[s]);
      CoeffField c = plan.forward(initial[s]);
      for (std::size_t m = 0; m < c.size(); ++m)
        c.coeffs[m] *= std::exp(-spectra.symbol[m] * base.t_final);
      reference.push_back(plan.inverse(c));
    }
  } else {
    if (!(tau_ref <= taus.back() / 8.0))
      throw std::invalid_argument("convergence: tau_ref must be <= min(tau)/8");
    if (!divides(tau_ref, base.t_final))
      throw std::invalid_argument("convergence: tau_ref must divide t_final");
    RunConfig ref_cfg = base;
    ref_cfg.tau = tau_ref;
    ref_cfg.scheme = SchemeKind::EtdCn;  // second-order reference
    ref_cfg.snapshot_every = 0;
    table.reference_tau = tau_ref;
    reference = run_simulation(ref_cfg, initial).fields;
  }

  double prev_error = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    RunConfig cfg = base;
    cfg.tau = taus[i];
    cfg.snapshot_every = 0;
    const std::vector<Field> got = run_simulation(cfg, initial).fields;
    ConvergenceRow row;
    row.tau = taus[i];
    row.error = fields_error(got, reference, grid);
    row.order = i == 0 ? std::numeric_limits<double>::quiet_NaN()
                       : std::log2(prev_error / row.error);
    prev_error = row.error;
    table.rows.push_back(row);
  }
  return table;
}

double spatial_accuracy(const RunConfig& base) {
  RunConfig cfg = base;
  cfg.model = ModelKind::None;
  cfg.ic = IcKind::Eigenfunction;
  cfg.snapshot_every = 0;

  const Grid grid = build_grid(cfg.domain, cfg.n);
  const std::vector<Field> initial = make_initial_conditions(cfg, grid);
  const std::vector<Field> got = run_simulation(cfg, initial).fields;

  const std::size_t steps = cfg.step_count();
  TransformPlan plan(grid.n, cfg.bc);
  const std::vector<double> diff = cfg.species_diffusion();

  double worst = 0.0;
  for (std::size_t s = 0; s < initial.size(); ++s) {
    const SpectrumTable spectra = build_spectrum(grid, cfg.bc, cfg.alpha, diff[s]);
    CoeffField c = plan.forward(initial[s]);
    for (std::size_t m = 0; m < c.size(); ++m)
      c.coeffs[m] *= scheme_factor(cfg.scheme, cfg.tau * spectra.symbol[m], steps);
    const Field expect = plan.inverse(c);
    for (std::size_t i = 0; i < expect.size(); ++i)
      worst = std::max(worst, std::abs(expect[i] - got[s][i]));
  }
  return worst;
}

std::vector<FrontRow> alpha_spreading(const RunConfig& base,
                                      const std::vector<double>& alphas) {
  if (base.n.size() > 2)
    throw std::invalid_argument("spreading: use a 1-D or 2-D configuration");
  RunConfig cfg = base;
  cfg.model = ModelKind::Fisher;
  cfg.snapshot_every = 0;

  const Grid grid = build_grid(cfg.domain, cfg.n);
  std::vector<double> center(grid.n.size());
  for (std::size_t a = 0; a < grid.n.size(); ++a)
    center[a] = 0.5 * (grid.domain.lo[a] + grid.domain.hi[a]);

  // Localized bump at the domain center, half the carrying capacity tall,
  // width 1/40 of the first axis.
  const double sigma = grid.domain.length(0) / 40.0;
  const double amp = 0.5 * cfg.fisher.K;
  Field bump = make_field(grid);
  std::vector<std::size_t> idx(grid.n.size(), 0);
  for (std::size_t i = 0; i < bump.size(); ++i) {
    double r2 = 0.0;
    for (std::size_t a = 0; a < grid.n.size(); ++a) {
      const double d = grid.nodes[a][idx[a]] - center[a];
      r2 += d * d;
    }
    bump.values[i] = amp * std::exp(-r2 / (sigma * sigma));
    for (std::size_t a = grid.n.size(); a-- > 0;) {
      if (++idx[a] < grid.n[a]) break;
      idx[a] = 0;
    }
  }

  std::vector<FrontRow> rows;
  for (double alpha : alphas) {
    cfg.alpha = alpha;
    std::vector<Field> initial;
    initial.push_back(bump);
    const Field u = run_simulation(cfg, initial).fields[0];

    double umax = 0.0;
    for (double v : u.values) umax = std::max(umax, v);
    const double level = 0.5 * umax;
    double front = 0.0;
    std::fill(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] > level) {
        double r2 = 0.0;
        for (std::size_t a = 0; a < grid.n.size(); ++a) {
          const double d = grid.nodes[a][idx[a]] - center[a];
          r2 += d * d;
        }
        front = std::max(front, std::sqrt(r2));
      }
      for (std::size_t a = grid.n.size(); a-- > 0;) {
        if (++idx[a] < grid.n[a]) break;
        idx[a] = 0;
      }
    }
    rows.push_back(FrontRow{alpha, front});
  }
  return rows;
}

OracleReport oracle_suite(const std::vector<std::size_t>& sizes,
                          const std::vector<double>& alphas) {
  OracleReport report;
  // Fixed non-unit bounds so domain scaling is exercised.
  const double lo_bounds[2] = {0.0, -1.0};
  const double hi_bounds[2] = {2.0, 1.5};

  for (int dim = 1; dim <= 2; ++dim) {
    for (std::size_t L : sizes) {
      std::vector<std::size_t> shape(static_cast<std::size_t>(dim), L);
      for (unsigned mask = 0; mask < (1u << dim); ++mask) {
        std::vector<BoundaryKind> bc;
        for (int a = 0; a < dim; ++a)
          bc.push_back((mask >> a) & 1 ? BoundaryKind::Neumann
                                       : BoundaryKind::Dirichlet);
        Domain domain;
        for (int a = 0; a < dim; ++a) {
          domain.lo.push_back(lo_bounds[a]);
          domain.hi.push_back(hi_bounds[a]);
        }
        const Grid grid = build_grid(domain, shape);

        std::mt19937_64 rng(0x9e3779b9u + 131u * L + 7u * mask +
                            static_cast<unsigned>(dim));
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        Field f = make_field(grid);
        for (double& v : f.values) v = dist(rng);

        const CoeffField fast = forward(f, bc);
        const CoeffField ref = reference_forward(f, bc);
        const Field back = inverse(fast, bc);
        double transform_residual = 0.0, roundtrip_residual = 0.0;
        for (std::size_t i = 0; i < fast.size(); ++i) {
          transform_residual =
              std::max(transform_residual, std::abs(fast[i] - ref[i]));
          roundtrip_residual =
              std::max(roundtrip_residual, std::abs(back[i] - f[i]));
        }

        for (double alpha : alphas) {
          OracleEntry e;
          e.dim = dim;
          e.sizes = shape;
          e.alpha = alpha;
          e.bc = bc;
          e.transform_residual = transform_residual;
          e.roundtrip_residual = roundtrip_residual;

          const SpectrumTable spectra = build_spectrum(grid, bc, alpha, 1.0);
          const Field applied = apply_diffusion_operator(f, spectra, bc);
          const DenseOperator dense = dense_operator_matrix(grid, spectra, bc);
          const std::vector<double> dense_applied = dense.multiply(f.values);
          double operator_residual = 0.0;
          for (std::size_t i = 0; i < applied.size(); ++i)
            operator_residual =
                std::max(operator_residual, std::abs(applied[i] - dense_applied[i]));
          e.operator_residual = operator_residual;

          e.pass = transform_residual <= 1e-12 && roundtrip_residual <= 1e-12 &&
                   operator_residual <= 1e-10;
          report.worst_transform = std::max(report.worst_transform,
                                            std::max(transform_residual, roundtrip_residual));
          report.worst_operator = std::max(report.worst_operator, operator_residual);
          report.all_pass = report.all_pass && e.pass;
          report.entries.push_back(std::move(e));
        }
      }
    }
  }
  return report;
}

std::string format_convergence(const ConvergenceTable& t) {
  std::string out = "tau          error          order\n";
  char buf[128];
  for (const ConvergenceRow& r : t.rows) {
    if (std::isnan(r.order))
      std::snprintf(buf, sizeof buf, "%-12.6g %-14.6e -\n", r.tau, r.error);
    else
      std::snprintf(buf, sizeof buf, "%-12.6g %-14.6e %.3f\n", r.tau, r.error, r.order);
    out += buf;
  }
  if (t.exact_reference)
    out += "reference: exact per-mode solution\n";
  else {
    std::snprintf(buf, sizeof buf, "reference: etdcn at tau = %.6g\n", t.reference_tau);
    out += buf;
  }
  return out;
}

void write_convergence_csv(const std::filesystem::path& path, const ConvergenceTable& t) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "tau,error,order\n";
  char buf[128];
  for (const ConvergenceRow& r : t.rows) {
    if (std::isnan(r.order))
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,\n", r.tau, r.error);
    else
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r.tau, r.error, r.order);
    out << buf;
  }
}

void write_convergence_markdown(const std::filesystem::path& path,
                                const ConvergenceTable& t) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "| tau | error | observed order |\n|---|---|---|\n";
  char buf[128];
  for (const ConvergenceRow& r : t.rows) {
    if (std::isnan(r.order))
      std::snprintf(buf, sizeof buf, "| %.6g | %.6e | - |\n", r.tau, r.error);
    else
      std::snprintf(buf, sizeof buf, "| %.6g | %.6e | %.3f |\n", r.tau, r.error, r.order);
    out << buf;
  }
  if (t.exact_reference)
    out << "\nreference: exact per-mode solution\n";
  else
    out << "\nreference: etdcn at tau = " << t.reference_tau << "\n";
}

std::string format_oracle_report(const OracleReport& r) {
  std::string out;
  char buf[192];
  for (const OracleEntry& e : r.entries) {
    std::string bcs;
    for (BoundaryKind b : e.bc) bcs += b == BoundaryKind::Dirichlet ? "D" : "N";
    std::string dims;
    for (std::size_t s : e.sizes) dims += (dims.empty() ? "" : "x") + std::to_string(s);
    std::snprintf(buf, sizeof buf,
                  "%-4s d=%d L=%-8s alpha=%-4.2f transform %.3e roundtrip %.3e "
                  "operator %.3e\n",
                  e.pass ? "ok" : "FAIL", e.dim, dims.c_str(), e.alpha,
                  e.transform_residual, e.roundtrip_residual, e.operator_residual);
    out += buf;
  }
  std::snprintf(buf, sizeof buf,
                "worst transform residual %.3e, worst operator residual %.3e\n",
                r.worst_transform, r.worst_operator);
  out += buf;
  return out;
}

}  // namespace fracrd
