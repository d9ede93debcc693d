#include "fracrd/etd.hpp"

#include <cmath>

#include "fracrd/parallel.hpp"

namespace fracrd {

std::string to_string(SchemeKind s) {
  switch (s) {
    case SchemeKind::Etd1: return "etd1";
    case SchemeKind::EtdCn: return "etdcn";
    case SchemeKind::EtdCnExp: return "etdcn-exp";
  }
  return "?";
}

double phi1(double z) {
  if (z < 1e-8) return 1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0;
  return -std::expm1(-z) / z;
}

double phi2(double z) {
  if (z < 0.1) {
    // sum_{k>=0} (-z)^k / (k+2)!, eight terms: truncation < 1e-15 at z = 0.1
    double term = 0.5, sum = 0.5;
    for (int k = 1; k < 8; ++k) {
      term *= -z / static_cast<double>(k + 2);
      sum += term;
    }
    return sum;
  }
  return (std::expm1(-z) + z) / (z * z);
}

double pade_r11(double c) { return (2.0 - c) / (2.0 + c); }

SolverAbort::SolverAbort(std::size_t step_, double time_, std::size_t species_,
                         const std::string& what_)
    : std::runtime_error(what_), step(step_), time(time_), species(species_) {}

namespace {

std::string abort_message(const char* what, std::size_t step, double time,
                          std::size_t species) {
  return std::string(what) + " (step " + std::to_string(step) + ", t = " +
         std::to_string(time) + ", species " + std::to_string(species + 1) + ")";
}

}  // namespace

EtdStepper::EtdStepper(const Grid& grid, std::vector<BoundaryKind> bc, double alpha,
                       std::vector<double> diffusion, ReactionSpec reaction,
                       SchemeKind scheme, double tau)
    : grid_(grid),
      bc_(std::move(bc)),
      reaction_(std::move(reaction)),
      scheme_(scheme),
      tau_(tau),
      plan_(grid.n, bc_) {
  if (!(tau > 0.0)) throw std::invalid_argument("stepper: tau must be positive");
  if (diffusion.size() != reaction_.species)
    throw std::invalid_argument("stepper: need one diffusion coefficient per species");

  const std::size_t total = grid_.total();
  const std::size_t M = reaction_.species;
  spectra_.reserve(M);
  decay_.resize(M);
  w1_.resize(M);
  w2_.resize(M);
  r11_.resize(M);
  wa_.resize(M);
  wb_.resize(M);
  for (std::size_t s = 0; s < M; ++s) {
    spectra_.push_back(build_spectrum(grid_, bc_, alpha, diffusion[s]));
    const std::vector<double>& mu = spectra_[s].symbol;
    decay_[s].resize(total);
    w1_[s].resize(total);
    w2_[s].resize(total);
    r11_[s].resize(total);
    wa_[s].resize(total);
    wb_[s].resize(total);
    for (std::size_t m = 0; m < total; ++m) {
      const double c = tau_ * mu[m];
      decay_[s][m] = std::exp(-c);
      w1_[s][m] = tau_ * phi1(c);
      w2_[s][m] = tau_ * phi2(c);
      r11_[s][m] = (2.0 - c) / (2.0 + c);
      wa_[s][m] = 2.0 * tau_ / (2.0 + c);
      wb_[s][m] = tau_ / (2.0 + c);
    }
    state_.push_back(make_coeff_field(grid_.n));
    scratch_a_.emplace_back(total);
    scratch_b_.emplace_back(total);
    scratch_c_.emplace_back(total);
  }
}

void EtdStepper::initialize(const std::vector<Field>& initial) {
  if (initial.size() != reaction_.species)
    throw std::invalid_argument("stepper: need one initial field per species");
  for (std::size_t s = 0; s < initial.size(); ++s) state_[s] = plan_.forward(initial[s]);
  k_ = 0;
}

void EtdStepper::initialize_spectral(const std::vector<CoeffField>& initial) {
  if (initial.size() != reaction_.species)
    throw std::invalid_argument("stepper: need one coefficient field per species");
  for (std::size_t s = 0; s < initial.size(); ++s) {
    if (!same_shape(initial[s].shape, grid_.n))
      throw std::invalid_argument("stepper: coefficient shape mismatch");
    state_[s] = initial[s];
  }
  k_ = 0;
}

void EtdStepper::set_reaction_filter(double keep_fraction) {
  if (!(keep_fraction > 0.0) || keep_fraction > 1.0)
    throw std::invalid_argument("stepper: keep_fraction must be in (0, 1]");
  filter_mask_.clear();
  if (keep_fraction == 1.0) return;
  const std::size_t total = grid_.total();
  filter_mask_.assign(total, 0);
  std::vector<std::size_t> idx(grid_.n.size(), 0);
  for (std::size_t m = 0; m < total; ++m) {
    bool keep = true;
    for (std::size_t a = 0; a < grid_.n.size(); ++a)
      keep = keep && static_cast<double>(idx[a] + 1) <=
                         keep_fraction * static_cast<double>(grid_.n[a]);
    filter_mask_[m] = keep ? 1 : 0;
    for (std::size_t a = grid_.n.size(); a-- > 0;) {
      if (++idx[a] < grid_.n[a]) break;
      idx[a] = 0;
    }
  }
}

void EtdStepper::filter_reaction(std::vector<std::vector<double>>& fhat) const {
  if (filter_mask_.empty()) return;
  for (auto& f : fhat)
    for (std::size_t m = 0; m < f.size(); ++m)
      if (!filter_mask_[m]) f[m] = 0.0;
}

Field EtdStepper::field(std::size_t s) const { return plan_.inverse(state_[s]); }

std::vector<Field> EtdStepper::fields() const {
  std::vector<Field> out;
  out.reserve(species_count());
  for (std::size_t s = 0; s < species_count(); ++s) out.push_back(field(s));
  return out;
}

namespace {

// inverse -> pointwise map -> forward, writing F_hat into `out`. `phys` is a
// scratch vector of per-species physical-space buffers; `coeff_in` points at
// the coefficient arrays of the stage being evaluated.
void reaction_spectral_core(const TransformPlan& plan, const ReactionSpec& reaction,
                            const std::vector<const std::vector<double>*>& coeff_in,
                            std::vector<std::vector<double>>& phys,
                            std::vector<std::vector<double>>& out, std::size_t step,
                            double time) {
  const std::size_t M = reaction.species;
  for (std::size_t s = 0; s < M; ++s) {
    phys[s] = *coeff_in[s];
    plan.inverse_values(phys[s]);
  }
  const std::size_t total = phys[0].size();
  parallel_for(total, [&](std::size_t lo, std::size_t hi) {
    std::vector<double> u(M), f(M);
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t s = 0; s < M; ++s) u[s] = phys[s][i];
      reaction.map(u.data(), f.data());
      for (std::size_t s = 0; s < M; ++s) out[s][i] = f[s];
    }
  });
  for (std::size_t s = 0; s < M; ++s) {
    if (!all_finite(out[s].data(), out[s].size()))
      throw SolverAbort(step, time, s,
                        abort_message("non-finite reaction value", step, time, s));
    plan.forward_values(out[s]);
  }
}

}  // namespace

std::vector<CoeffField> eval_reaction_spectral(const std::vector<CoeffField>& coeffs,
                                               const ReactionSpec& reaction,
                                               const TransformPlan& plan) {
  if (coeffs.size() != reaction.species)
    throw std::invalid_argument("reaction: need one coefficient field per species");
  const std::size_t M = reaction.species;
  std::vector<std::vector<double>> phys(M), out(M);
  std::vector<const std::vector<double>*> in(M);
  for (std::size_t s = 0; s < M; ++s) {
    in[s] = &coeffs[s].coeffs;
    out[s].resize(coeffs[s].size());
  }
  reaction_spectral_core(plan, reaction, in, phys, out, 0, 0.0);
  std::vector<CoeffField> result(M);
  for (std::size_t s = 0; s < M; ++s)
    result[s] = CoeffField{coeffs[s].shape, std::move(out[s])};
  return result;
}

void EtdStepper::step_etd1() {
  const std::size_t M = species_count();
  std::vector<std::vector<double>> phys(M);
  std::vector<const std::vector<double>*> in(M);
  for (std::size_t s = 0; s < M; ++s) in[s] = &state_[s].coeffs;

  if (reaction_.kind != ReactionSpec::Kind::None) {
    reaction_spectral_core(plan_, reaction_, in, phys, scratch_a_, k_, time());
    filter_reaction(scratch_a_);
    for (std::size_t s = 0; s < M; ++s) {
      double* u = state_[s].coeffs.data();
      const double* fh = scratch_a_[s].data();
      const double* e = decay_[s].data();
      const double* w = w1_[s].data();
      for (std::size_t m = 0; m < state_[s].size(); ++m)
        u[m] = e[m] * u[m] + w[m] * fh[m];
    }
  } else {
    for (std::size_t s = 0; s < M; ++s) {
      double* u = state_[s].coeffs.data();
      const double* e = decay_[s].data();
      for (std::size_t m = 0; m < state_[s].size(); ++m) u[m] = e[m] * u[m];
    }
  }
  ++k_;
}

void EtdStepper::step_etdcn() {
  const std::size_t M = species_count();
  const std::size_t total = grid_.total();
  std::vector<std::vector<double>> phys(M);
  std::vector<const std::vector<double>*> in(M);

  if (reaction_.kind == ReactionSpec::Kind::None) {
    // a = r11 v, v' = a: pure Pade decay.
    for (std::size_t s = 0; s < M; ++s) {
      double* v = state_[s].coeffs.data();
      const double* r = r11_[s].data();
      for (std::size_t m = 0; m < total; ++m) v[m] = r[m] * v[m];
    }
    ++k_;
    return;
  }

  // Stage 1: F(v) into scratch_a_, predictor a into scratch_b_.
  for (std::size_t s = 0; s < M; ++s) in[s] = &state_[s].coeffs;
  reaction_spectral_core(plan_, reaction_, in, phys, scratch_a_, k_, time());
  filter_reaction(scratch_a_);
  for (std::size_t s = 0; s < M; ++s) {
    const double* v = state_[s].coeffs.data();
    const double* fv = scratch_a_[s].data();
    const double* r = r11_[s].data();
    const double* wa = wa_[s].data();
    double* a = scratch_b_[s].data();
    for (std::size_t m = 0; m < total; ++m) a[m] = r[m] * v[m] + wa[m] * fv[m];
    if (!all_finite(a, total))
      throw SolverAbort(k_, time(), s,
                        abort_message("non-finite predictor stage", k_, time(), s));
  }

  // Stage 2: F(a) into scratch_c_, corrector update.
  for (std::size_t s = 0; s < M; ++s) in[s] = &scratch_b_[s];
  reaction_spectral_core(plan_, reaction_, in, phys, scratch_c_, k_, time());
  filter_reaction(scratch_c_);
  for (std::size_t s = 0; s < M; ++s) {
    double* v = state_[s].coeffs.data();
    const double* a = scratch_b_[s].data();
    const double* fv = scratch_a_[s].data();
    const double* fa = scratch_c_[s].data();
    const double* wb = wb_[s].data();
    for (std::size_t m = 0; m < total; ++m) v[m] = a[m] + wb[m] * (fa[m] - fv[m]);
  }
  ++k_;
}

void EtdStepper::step_etdcn_exp() {
  const std::size_t M = species_count();
  const std::size_t total = grid_.total();
  std::vector<std::vector<double>> phys(M);
  std::vector<const std::vector<double>*> in(M);

  if (reaction_.kind == ReactionSpec::Kind::None) {
    for (std::size_t s = 0; s < M; ++s) {
      double* u = state_[s].coeffs.data();
      const double* e = decay_[s].data();
      for (std::size_t m = 0; m < total; ++m) u[m] = e[m] * u[m];
    }
    ++k_;
    return;
  }

  // Predictor b (the Etd1 step) into scratch_b_, F(u) kept in scratch_a_.
  for (std::size_t s = 0; s < M; ++s) in[s] = &state_[s].coeffs;
  reaction_spectral_core(plan_, reaction_, in, phys, scratch_a_, k_, time());
  filter_reaction(scratch_a_);
  for (std::size_t s = 0; s < M; ++s) {
    const double* u = state_[s].coeffs.data();
    const double* fu = scratch_a_[s].data();
    const double* e = decay_[s].data();
    const double* w = w1_[s].data();
    double* b = scratch_b_[s].data();
    for (std::size_t m = 0; m < total; ++m) b[m] = e[m] * u[m] + w[m] * fu[m];
    if (!all_finite(b, total))
      throw SolverAbort(k_, time(), s,
                        abort_message("non-finite predictor stage", k_, time(), s));
  }

  for (std::size_t s = 0; s < M; ++s) in[s] = &scratch_b_[s];
  reaction_spectral_core(plan_, reaction_, in, phys, scratch_c_, k_, time());
  filter_reaction(scratch_c_);
  for (std::size_t s = 0; s < M; ++s) {
    double* u = state_[s].coeffs.data();
    const double* b = scratch_b_[s].data();
    const double* fu = scratch_a_[s].data();
    const double* fb = scratch_c_[s].data();
    const double* w = w2_[s].data();
    for (std::size_t m = 0; m < total; ++m) u[m] = b[m] + w[m] * (fb[m] - fu[m]);
  }
  ++k_;
}

void EtdStepper::advance() {
  switch (scheme_) {
    case SchemeKind::Etd1: step_etd1(); break;
    case SchemeKind::EtdCn: step_etdcn(); break;
    case SchemeKind::EtdCnExp: step_etdcn_exp(); break;
  }
}

}  // namespace fracrd
