#include "fracrd/runner.hpp"

#include <stdexcept>

#include "fracrd/snapshot.hpp"
#include "fracrd/transforms.hpp"

namespace fracrd {

std::vector<Field> make_initial_conditions(const RunConfig& cfg, const Grid& grid) {
  const std::size_t M = cfg.species_count();
  switch (cfg.ic) {
    case IcKind::CondA:
    case IcKind::CondB: {
      if (cfg.model != ModelKind::PredPrey)
        throw std::invalid_argument("ic condA/condB requires the predprey model");
      const auto [u_star, v_star] = coexistence_steady_state(cfg.predprey);
      auto [u, v] = cfg.ic == IcKind::CondA ? ic_condition_a(grid, u_star, v_star)
                                            : ic_condition_b(grid, u_star, v_star);
      std::vector<Field> out;
      out.push_back(std::move(u));
      out.push_back(std::move(v));
      return out;
    }
    case IcKind::Constant: {
      std::vector<Field> out;
      for (std::size_t s = 0; s < M; ++s) {
        double value = cfg.ic_value;
        if (s < cfg.species.size() && cfg.species[s].ic_value)
          value = *cfg.species[s].ic_value;
        out.push_back(make_field(grid, value));
      }
      return out;
    }
    case IcKind::Eigenfunction: {
      std::vector<Field> out;
      for (std::size_t s = 0; s < M; ++s)
        out.push_back(eigenfunction_field(grid, cfg.ic_mode, cfg.bc, cfg.ic_amplitude));
      return out;
    }
    case IcKind::File: {
      std::vector<Field> out;
      for (std::size_t s = 0; s < M; ++s) {
        if (s >= cfg.species.size() || !cfg.species[s].ic_file)
          throw std::invalid_argument("ic file: missing ic_file for species " +
                                      std::to_string(s + 1));
        Field f = read_field_binary(*cfg.species[s].ic_file);
        if (!same_shape(f.shape, grid.n))
          throw std::invalid_argument("ic file: field shape does not match the grid (" +
                                      *cfg.species[s].ic_file + ")");
        out.push_back(std::move(f));
      }
      return out;
    }
  }
  throw std::logic_error("unreachable ic kind");
}

RunResult run_simulation(const RunConfig& cfg, std::vector<Field> initial,
                         const SnapshotSink& sink) {
  const Grid grid = build_grid(cfg.domain, cfg.n);
  const std::size_t N = cfg.step_count();  // rejects non-integral t_final / tau

  EtdStepper stepper(grid, cfg.bc, cfg.alpha, cfg.species_diffusion(),
                     cfg.make_reaction(), cfg.scheme, cfg.tau);
  stepper.initialize(initial);

  const std::size_t M = stepper.species_count();
  RunResult result;
  result.max_norm.assign(M, {});

  auto record = [&](bool emit) {
    for (std::size_t s = 0; s < M; ++s) {
      Field f = stepper.field(s);
      result.max_norm[s].push_back(max_abs(f));
      if (emit && sink) sink(stepper.step_index(), stepper.time(), s, f);
    }
  };

  const std::size_t every = cfg.snapshot_every;
  record(every != 0);
  for (std::size_t k = 1; k <= N; ++k) {
    stepper.advance();
    record(every != 0 && k % every == 0);
  }

  result.fields = stepper.fields();
  result.steps = N;
  return result;
}

RunResult run_simulation(const RunConfig& cfg, const SnapshotSink& sink) {
  const Grid grid = build_grid(cfg.domain, cfg.n);
  return run_simulation(cfg, make_initial_conditions(cfg, grid), sink);
}

}  // namespace fracrd
