#pragma once
// Run configuration and its strict parser. The format is flat key = value
// lines with optional [species.N] sections; '#' or ';' start a comment.
// Unknown keys are rejected and every violation is reported (with its line
// number), not just the first.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracrd/core.hpp"
#include "fracrd/etd.hpp"
#include "fracrd/reactions.hpp"

namespace fracrd {

enum class ModelKind { None, Fisher, PredPrey };
enum class IcKind { CondA, CondB, Constant, Eigenfunction, File };

struct SpeciesConfig {
  std::optional<double> diffusion;   // overrides the model default
  std::optional<double> ic_value;    // per-species constant IC value
  std::optional<std::string> ic_file;
};

struct RunConfig {
  Domain domain;
  std::vector<std::size_t> n;
  std::vector<BoundaryKind> bc;

  double alpha = 2.0;
  double diffusion = 1.0;  // base coefficient of species 1
  double tau = 0.0;
  double t_final = 0.0;
  SchemeKind scheme = SchemeKind::EtdCn;

  ModelKind model = ModelKind::None;
  FisherParams fisher;
  PredPreyParams predprey;

  IcKind ic = IcKind::Constant;
  double ic_value = 1.0;
  std::vector<std::size_t> ic_mode;  // per-axis 1-based mode (eigenfunction IC)
  double ic_amplitude = 1.0;

  std::vector<SpeciesConfig> species;

  std::size_t snapshot_every = 0;  // 0 disables periodic snapshots
  std::string out_dir = "out";
  std::uint64_t seed = 0;

  std::size_t species_count() const;
  // Species 1 gets `diffusion`; for the predator-prey model species 2
  // defaults to delta * diffusion. [species.N] overrides win.
  std::vector<double> species_diffusion() const;
  std::size_t step_count() const;  // validated integer t_final / tau
  ReactionSpec make_reaction() const;
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(std::vector<std::string> issues_);
  std::vector<std::string> issues;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

std::string to_string(ModelKind m);
std::string to_string(IcKind ic);

}  // namespace fracrd
