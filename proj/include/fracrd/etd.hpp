#pragma once
// Exponential time differencing steppers for the spectral-space system
//
//   d/dt u_hat = -mu u_hat + F_hat(u_hat),   mu = D (sum lambda^2)^(alpha/2),
//
// advanced one uniform step tau at a time. The operator is diagonal in
// coefficient space, so each step is a per-mode scalar update; the nonlinear
// reaction is evaluated pointwise in physical space (inverse transform,
// apply the reaction map, forward transform).
//
// Schemes, with c = tau * mu per mode:
//   Etd1     u^{k+1} = e^{-c} u^k + tau phi1(c) F(u^k)
//   EtdCn    a = (2-c)/(2+c) v^k + 2 tau/(2+c) F(v^k)
//            v^{k+1} = a + tau/(2+c) [F(a) - F(v^k)]
//   EtdCnExp b = e^{-c} u^k + tau phi1(c) F(u^k)
//            u^{k+1} = b + tau phi2(c) [F(b) - F(u^k)]
//
// EtdCn replaces the exponential with its (1,1)-Pade approximant
// (2-c)/(2+c); EtdCnExp keeps the exponential form and exists to measure
// the gap between the two.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracrd/core.hpp"
#include "fracrd/mesh_spectra.hpp"
#include "fracrd/reactions.hpp"
#include "fracrd/transforms.hpp"

namespace fracrd {

enum class SchemeKind { Etd1, EtdCn, EtdCnExp };

std::string to_string(SchemeKind s);

// phi1(z) = (1 - e^-z)/z with phi1(0) = 1; Taylor series below 1e-8 and the
// expm1 form above, uniformly accurate to ~1e-15 relative.
double phi1(double z);

// phi2(z) = (e^-z - 1 + z)/z^2 with phi2(0) = 1/2.
double phi2(double z);

// (1,1)-Pade approximant of e^-c; |pade_r11(c)| <= 1 for all c >= 0.
double pade_r11(double c);

// Thrown when a step produces a non-finite value (reaction blow-up).
struct SolverAbort : std::runtime_error {
  SolverAbort(std::size_t step_, double time_, std::size_t species_,
              const std::string& what_);
  std::size_t step;
  double time;
  std::size_t species;
};

// F_hat per species: inverse-transform each species, apply the pointwise
// reaction map, forward-transform the outputs. Throws SolverAbort (with
// step 0 context) on non-finite reaction values.
std::vector<CoeffField> eval_reaction_spectral(const std::vector<CoeffField>& coeffs,
                                               const ReactionSpec& reaction,
                                               const TransformPlan& plan);

class EtdStepper {
 public:
  EtdStepper(const Grid& grid, std::vector<BoundaryKind> bc, double alpha,
             std::vector<double> diffusion, ReactionSpec reaction,
             SchemeKind scheme, double tau);

  std::size_t species_count() const { return reaction_.species; }
  double tau() const { return tau_; }
  std::size_t step_index() const { return k_; }
  double time() const { return static_cast<double>(k_) * tau_; }  // k tau, never accumulated
  const Grid& grid() const { return grid_; }
  const TransformPlan& plan() const { return plan_; }
  const SpectrumTable& spectrum(std::size_t s) const { return spectra_[s]; }

  void initialize(const std::vector<Field>& initial);
  void initialize_spectral(const std::vector<CoeffField>& initial);

  // Optional experiment knob, off by default (the production scheme applies
  // no dealiasing): zero every reaction coefficient whose 1-based mode index
  // exceeds keep_fraction * L on any axis.
  void set_reaction_filter(double keep_fraction);

  void advance();  // one step of the configured scheme

  const CoeffField& coeffs(std::size_t s) const { return state_[s]; }
  Field field(std::size_t s) const;
  std::vector<Field> fields() const;

 private:
  void step_etd1();
  void step_etdcn();
  void step_etdcn_exp();
  void filter_reaction(std::vector<std::vector<double>>& fhat) const;

  Grid grid_;
  std::vector<BoundaryKind> bc_;
  ReactionSpec reaction_;
  SchemeKind scheme_;
  double tau_;
  TransformPlan plan_;
  std::vector<SpectrumTable> spectra_;

  // Per-species per-mode weights, c = tau * mu.
  std::vector<std::vector<double>> decay_;  // e^{-c}
  std::vector<std::vector<double>> w1_;     // tau phi1(c)
  std::vector<std::vector<double>> w2_;     // tau phi2(c)
  std::vector<std::vector<double>> r11_;    // (2-c)/(2+c)
  std::vector<std::vector<double>> wa_;     // 2 tau/(2+c)
  std::vector<std::vector<double>> wb_;     // tau/(2+c)

  std::size_t k_ = 0;
  std::vector<std::uint8_t> filter_mask_;  // empty when the filter is off
  std::vector<CoeffField> state_;
  // Step scratch (coefficient-space work arrays per species).
  mutable std::vector<std::vector<double>> scratch_a_, scratch_b_, scratch_c_;
};

}  // namespace fracrd
