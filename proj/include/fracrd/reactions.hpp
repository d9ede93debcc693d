#pragma once
// Reaction systems: Fisher logistic growth and the Holling type-II
// predator-prey model
//
//   du/dt = u (1 - u) - v h(a u),      h(eta) = eta / (1 + eta),
//   dv/dt = b v h(a u) - c v,
//
// together with the coexistence steady state (u*, v*) where h(a u*) = c/b,
// and the two gradient initial conditions used for the 2-D experiments.

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fracrd/core.hpp"

namespace fracrd {

struct FisherParams {
  double r = 1.0;  // intrinsic growth rate
  double K = 1.0;  // carrying capacity
};

struct PredPreyParams {
  double a = 2.5;      // functional-response scaling
  double b = 2.0;      // prey-to-predator conversion
  double c = 0.6;      // predator mortality
  double delta = 1.0;  // predator/prey diffusion ratio
};

void validate(const FisherParams& p);    // throws on nonpositive r or K
void validate(const PredPreyParams& p);  // throws on any nonpositive parameter

// Holling type-II response eta/(1+eta): zero at zero, strictly increasing,
// saturates at 1. Rejects eta <= -1 (at or past the pole).
double holling2(double eta);

double fisher_reaction(double u, const FisherParams& p);

// (u (1-u) - v h(a u), b v h(a u) - c v)
std::pair<double, double> predprey_reaction(double u, double v, const PredPreyParams& p);

// Spatially uniform coexistence equilibrium: u* = (c/b) / (a (1 - c/b)),
// v* = u* (1 - u*) / h(a u*). Requires c < b and u* < 1.
std::pair<double, double> coexistence_steady_state(const PredPreyParams& p);

// Named reaction system with a pointwise map over the species vector.
struct ReactionSpec {
  enum class Kind { None, Fisher, PredPrey, Custom };

  Kind kind = Kind::None;
  std::size_t species = 1;
  std::string name = "none";
  // Writes f(u) into out; both arrays have `species` entries.
  std::function<void(const double* u, double* out)> map;

  static ReactionSpec none(std::size_t species = 1);
  static ReactionSpec fisher(const FisherParams& p = {});
  static ReactionSpec predprey(const PredPreyParams& p = {});
  static ReactionSpec custom(std::size_t species, std::string name,
                             std::function<void(const double*, double*)> map);
};

namespace ic {
// Pointwise initial-condition profiles (Condition A and Condition B).
double cond_a_u(double x, double y, double u_star);
double cond_a_v(double x, double y, double v_star);
double cond_b_u(double x, double y, double u_star);
double cond_b_v(double x, double y, double v_star);
}  // namespace ic

// Sampled on a 2-D grid's cell centers; throws for other dimensions.
std::pair<Field, Field> ic_condition_a(const Grid& grid, double u_star, double v_star);
std::pair<Field, Field> ic_condition_b(const Grid& grid, double u_star, double v_star);

}  // namespace fracrd
