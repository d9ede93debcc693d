#include "fracrd/reactions.hpp"

#include <cmath>
#include <stdexcept>

namespace fracrd {

void validate(const FisherParams& p) {
  if (!(p.r > 0.0) || !(p.K > 0.0))
    throw std::invalid_argument("fisher: r and K must be positive");
}

void validate(const PredPreyParams& p) {
  if (!(p.a > 0.0) || !(p.b > 0.0) || !(p.c > 0.0) || !(p.delta > 0.0))
    throw std::invalid_argument("predprey: a, b, c, delta must all be positive");
}

double holling2(double eta) {
  if (!(eta > -1.0))
    throw std::domain_error("holling2: eta <= -1 hits the pole");
  return eta / (1.0 + eta);
}

double fisher_reaction(double u, const FisherParams& p) {
  return p.r * u * (1.0 - u / p.K);
}

std::pair<double, double> predprey_reaction(double u, double v, const PredPreyParams& p) {
  const double h = holling2(p.a * u);
  return {u * (1.0 - u) - v * h, p.b * v * h - p.c * v};
}

std::pair<double, double> coexistence_steady_state(const PredPreyParams& p) {
  validate(p);
  if (!(p.c < p.b))
    throw std::invalid_argument(
        "steady state: requires c < b (h saturates below c/b otherwise)");
  const double ratio = p.c / p.b;
  const double u_star = ratio / (p.a * (1.0 - ratio));
  if (!(u_star < 1.0))
    throw std::invalid_argument("steady state: u* >= 1 gives a nonpositive v*");
  const double v_star = u_star * (1.0 - u_star) / holling2(p.a * u_star);
  return {u_star, v_star};
}

ReactionSpec ReactionSpec::none(std::size_t species) {
  ReactionSpec s;
  s.kind = Kind::None;
  s.species = species;
  s.name = "none";
  s.map = [species](const double*, double* out) {
    for (std::size_t i = 0; i < species; ++i) out[i] = 0.0;
  };
  return s;
}

ReactionSpec ReactionSpec::fisher(const FisherParams& p) {
  validate(p);
  ReactionSpec s;
  s.kind = Kind::Fisher;
  s.species = 1;
  s.name = "fisher";
  s.map = [p](const double* u, double* out) { out[0] = p.r * u[0] * (1.0 - u[0] / p.K); };
  return s;
}

ReactionSpec ReactionSpec::predprey(const PredPreyParams& p) {
  validate(p);
  ReactionSpec s;
  s.kind = Kind::PredPrey;
  s.species = 2;
  s.name = "predprey";
  s.map = [p](const double* uv, double* out) {
    const double u = uv[0], v = uv[1];
    const double au = p.a * u;
    const double h = au / (1.0 + au);
    out[0] = u * (1.0 - u) - v * h;
    out[1] = p.b * v * h - p.c * v;
  };
  return s;
}

ReactionSpec ReactionSpec::custom(std::size_t species, std::string name,
                                  std::function<void(const double*, double*)> map) {
  if (species == 0) throw std::invalid_argument("reaction: species must be >= 1");
  ReactionSpec s;
  s.kind = Kind::Custom;
  s.species = species;
  s.name = std::move(name);
  s.map = std::move(map);
  return s;
}

namespace ic {

double cond_a_u(double x, double y, double u_star) {
  const double w = x - 0.1 * y;
  return u_star - 2e-7 * (w - 225.0) * (w - 675.0);
}

double cond_a_v(double x, double y, double v_star) {
  return v_star - 3e-5 * (x - 450.0) - 1.2e-4 * (y - 150.0);
}

double cond_b_u(double x, double y, double u_star) {
  return u_star - 2e-7 * (x - 180.0) * (x - 720.0) - 6e-7 * (y - 90.0) * (y - 210.0);
}

double cond_b_v(double x, double y, double v_star) {
  return v_star - 3e-5 * (x - 450.0) - 6e-5 * (y - 135.0);
}

}  // namespace ic

namespace {

template <typename Fu, typename Fv>
std::pair<Field, Field> sample_2d(const Grid& grid, Fu&& fu, Fv&& fv) {
  if (grid.dim() != 2)
    throw std::invalid_argument("initial condition: requires a 2-D grid");
  Field u = make_field(grid), v = make_field(grid);
  std::size_t i = 0;
  for (std::size_t jx = 0; jx < grid.n[0]; ++jx) {
    const double x = grid.nodes[0][jx];
    for (std::size_t jy = 0; jy < grid.n[1]; ++jy, ++i) {
      const double y = grid.nodes[1][jy];
      u.values[i] = fu(x, y);
      v.values[i] = fv(x, y);
    }
  }
  return {std::move(u), std::move(v)};
}

}  // namespace

std::pair<Field, Field> ic_condition_a(const Grid& grid, double u_star, double v_star) {
  return sample_2d(
      grid, [u_star](double x, double y) { return ic::cond_a_u(x, y, u_star); },
      [v_star](double x, double y) { return ic::cond_a_v(x, y, v_star); });
}

std::pair<Field, Field> ic_condition_b(const Grid& grid, double u_star, double v_star) {
  return sample_2d(
      grid, [u_star](double x, double y) { return ic::cond_b_u(x, y, u_star); },
      [v_star](double x, double y) { return ic::cond_b_v(x, y, v_star); });
}

}  // namespace fracrd
