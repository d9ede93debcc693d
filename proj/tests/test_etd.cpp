#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "fracrd/etd.hpp"
#include "fracrd/runner.hpp"
#include "test_util.hpp"

using namespace fracrd;

namespace {

constexpr double kPi = std::numbers::pi;

// Neumann grid on (0, pi) with two nodes: exact mode symbols {0, D}.
Grid two_mode_grid() { return build_grid(Domain::interval(0.0, kPi), {2}); }

const std::vector<BoundaryKind> kNeumann1 = {BoundaryKind::Neumann};

}  // namespace

TEST_CASE("phi1 and phi2 against extended-precision evaluation") {
  // The naive formulas cancel catastrophically near zero even in long
  // double, so the oracle uses expm1l and a long-double Taylor tail.
  for (double z : {1e-12, 1e-9, 1e-8, 1e-7, 1e-4, 0.05, 0.1, 0.5, 1.0, 5.0, 40.0}) {
    const long double zl = z;
    const long double p1 = -std::expm1(-zl) / zl;
    long double p2;
    if (z < 0.1) {
      long double term = 0.5L, sum = 0.5L;
      for (int k = 1; k < 12; ++k) {
        term *= -zl / static_cast<long double>(k + 2);
        sum += term;
      }
      p2 = sum;
    } else {
      p2 = (std::expm1(-zl) + zl) / (zl * zl);
    }
    CHECK(phi1(z) == doctest::Approx(static_cast<double>(p1)).epsilon(2e-15));
    CHECK(phi2(z) == doctest::Approx(static_cast<double>(p2)).epsilon(2e-15));
  }
  CHECK(phi1(0.0) == 1.0);
  CHECK(phi2(0.0) == 0.5);
}

TEST_CASE("pade r11 is a bounded approximation of the exponential") {
  CHECK(pade_r11(0.0) == 1.0);
  CHECK(pade_r11(2.0) == 0.0);
  // |R11(c)| <= 1 for all c >= 0, including far into the stiff regime.
  for (double c = 0.0; c <= 1e6; c = c == 0.0 ? 1e-3 : c * 1.7)
    CHECK(std::abs(pade_r11(c)) <= 1.0);
  // Third-order agreement near zero: e^-c - R11(c) = c^3/12 + O(c^4).
  for (double c : {1e-2, 5e-3}) {
    const double gap = std::exp(-c) - pade_r11(c);
    CHECK(gap == doctest::Approx(c * c * c / 12.0).epsilon(0.01));
  }
}

TEST_CASE("etd1 pure decay hits e^{-tau mu} exactly per mode") {
  EtdStepper stepper(two_mode_grid(), kNeumann1, 2.0, {1.0}, ReactionSpec::none(1),
                     SchemeKind::Etd1, 1.0);
  CoeffField c0 = make_coeff_field({2});
  c0.coeffs = {0.0, 1.0};  // unit coefficient on the mu = 1 mode
  stepper.initialize_spectral({c0});
  stepper.advance();
  CHECK(stepper.coeffs(0)[0] == 0.0);
  CHECK(stepper.coeffs(0)[1] == std::exp(-1.0));
}

TEST_CASE("etd1 zero mode with constant reaction is forward Euler") {
  // mu = 0 takes the phi1(0) = 1 branch: b = u + tau F.
  const Grid g = two_mode_grid();
  const ReactionSpec constant3 =
      ReactionSpec::custom(1, "constant", [](const double*, double* f) { f[0] = 3.0; });
  EtdStepper stepper(g, kNeumann1, 1.5, {1.0}, constant3, SchemeKind::Etd1, 0.1);
  stepper.initialize({make_field(g, 5.0)});
  stepper.advance();
  const Field u = stepper.field(0);
  for (double v : u.values) CHECK(v == doctest::Approx(5.3).epsilon(1e-14));
}

TEST_CASE("etd1 update formula value from the derived oracle") {
  // mu = 2, tau = 0.5, u = 1, F = 3: b = e^-1 + 3 (1 - e^-1)/2 = 1.316060...
  const double c = 0.5 * 2.0;
  const double got = std::exp(-c) * 1.0 + 0.5 * phi1(c) * 3.0;
  const long double oracle =
      std::exp(-1.0L) + 3.0L * 0.5L * (1.0L - std::exp(-1.0L)) / 1.0L;
  CHECK(got == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-15));
  CHECK(static_cast<double>(oracle) == doctest::Approx(1.316060).epsilon(1e-6));
}

TEST_CASE("etdcn with no reaction multiplies by the pade factor") {
  // c = tau mu = 2 is the root of R11; the zero mode is untouched.
  EtdStepper stepper(two_mode_grid(), kNeumann1, 2.0, {2.0}, ReactionSpec::none(1),
                     SchemeKind::EtdCn, 1.0);
  CoeffField c0 = make_coeff_field({2});
  c0.coeffs = {0.7, 1.0};
  stepper.initialize_spectral({c0});
  stepper.advance();
  CHECK(stepper.coeffs(0)[0] == 0.7);
  CHECK(stepper.coeffs(0)[1] == 0.0);
}

TEST_CASE("etdcn zero mode with reaction is Heun's method") {
  // u' = u, u0 = 1, tau = 0.1: one step gives 1 + 0.1 + 0.1^2/2 = 1.105.
  const Grid g = two_mode_grid();
  const ReactionSpec identity =
      ReactionSpec::custom(1, "u", [](const double* u, double* f) { f[0] = u[0]; });
  EtdStepper stepper(g, kNeumann1, 2.0, {1.0}, identity, SchemeKind::EtdCn, 0.1);
  stepper.initialize({make_field(g, 1.0)});
  stepper.advance();
  for (double v : stepper.field(0).values)
    CHECK(v == doctest::Approx(1.105).epsilon(1e-14));
}

TEST_CASE("linear exactness over many steps") {
  const Grid g = build_grid(Domain::interval(0.0, 1.0), {8});
  const std::vector<BoundaryKind> bc = {BoundaryKind::Dirichlet};
  const double tau = 0.005;
  const std::size_t steps = 64;
  CoeffField c0{{8}, testutil::random_field({8}, 3).values};
  const SpectrumTable spectra = build_spectrum(g, bc, 2.0, 1.0);

  for (SchemeKind scheme : {SchemeKind::Etd1, SchemeKind::EtdCn, SchemeKind::EtdCnExp}) {
    EtdStepper stepper(g, bc, 2.0, {1.0}, ReactionSpec::none(1), scheme, tau);
    stepper.initialize_spectral({c0});
    for (std::size_t k = 0; k < steps; ++k) stepper.advance();
    CHECK(stepper.step_index() == steps);
    CHECK(stepper.time() == doctest::Approx(tau * steps).epsilon(1e-15));

    for (std::size_t m = 0; m < 8; ++m) {
      const double c = tau * spectra.symbol[m];
      const double per_step = scheme == SchemeKind::EtdCn ? pade_r11(c) : std::exp(-c);
      double factor = 1.0;  // scalar power iteration, the independent oracle
      for (std::size_t k = 0; k < steps; ++k) factor *= per_step;
      CHECK(stepper.coeffs(0)[m] ==
            doctest::Approx(factor * c0[m]).epsilon(steps * 1e-15));
      if (scheme == SchemeKind::Etd1) {
        // Also against the analytic decay e^{-mu T}.
        const double exact = std::exp(-spectra.symbol[m] * tau * steps) * c0[m];
        CHECK(stepper.coeffs(0)[m] == doctest::Approx(exact).epsilon(steps * 1e-14));
      }
    }
  }
}

TEST_CASE("modes evolve independently with no reaction") {
  const Grid g = build_grid(Domain::interval(0.0, 1.0), {8});
  const std::vector<BoundaryKind> bc = {BoundaryKind::Dirichlet};
  CoeffField base{{8}, testutil::random_field({8}, 17).values};
  CoeffField bumped = base;
  bumped.coeffs[3] += 0.5;

  for (SchemeKind scheme : {SchemeKind::Etd1, SchemeKind::EtdCn}) {
    EtdStepper s1(g, bc, 1.5, {1.0}, ReactionSpec::none(1), scheme, 0.02);
    EtdStepper s2(g, bc, 1.5, {1.0}, ReactionSpec::none(1), scheme, 0.02);
    s1.initialize_spectral({base});
    s2.initialize_spectral({bumped});
    for (int k = 0; k < 5; ++k) {
      s1.advance();
      s2.advance();
    }
    for (std::size_t m = 0; m < 8; ++m) {
      if (m == 3)
        CHECK(s1.coeffs(0)[m] != s2.coeffs(0)[m]);
      else
        CHECK(s1.coeffs(0)[m] == s2.coeffs(0)[m]);
    }
  }
}

TEST_CASE("zero-mode mass is conserved when the reactions cancel") {
  // f2 = -f1 pointwise, all-Neumann: the total of the zero modes never moves.
  const Grid g = build_grid(Domain::interval(0.0, 4.0), {8});
  const ReactionSpec exchange = ReactionSpec::custom(
      2, "exchange", [](const double* u, double* f) {
        f[0] = 0.7 * (u[1] - u[0]);
        f[1] = 0.7 * (u[0] - u[1]);
      });
  EtdStepper stepper(g, kNeumann1, 1.5, {1.0, 2.0}, exchange, SchemeKind::EtdCn, 0.05);
  stepper.initialize({testutil::random_field({8}, 5, 0.5, 1.5),
                      testutil::random_field({8}, 6, 0.5, 1.5)});
  double total = stepper.coeffs(0)[0] + stepper.coeffs(1)[0];
  for (int k = 0; k < 50; ++k) {
    stepper.advance();
    const double next = stepper.coeffs(0)[0] + stepper.coeffs(1)[0];
    CHECK(std::abs(next - total) <= 1e-10);
    total = next;
  }
}

TEST_CASE("eval_reaction_spectral") {
  const Grid g = build_grid(Domain::interval(0.0, 1.0), {8});
  const std::vector<BoundaryKind> bc = {BoundaryKind::Dirichlet};
  TransformPlan plan(g.n, bc);

  CoeffField c{{8}, testutil::random_field({8}, 23).values};

  // Zero reaction gives exactly zero coefficients.
  const auto zero = eval_reaction_spectral({c}, ReactionSpec::none(1), plan);
  CHECK(testutil::linf(zero[0].coeffs) == 0.0);

  // Linear reaction commutes with the transform: F_hat = r u_hat.
  const ReactionSpec linear =
      ReactionSpec::custom(1, "ru", [](const double* u, double* f) { f[0] = -1.7 * u[0]; });
  const auto lin = eval_reaction_spectral({c}, linear, plan);
  for (std::size_t m = 0; m < 8; ++m)
    CHECK(lin[0][m] == doctest::Approx(-1.7 * c[m]).epsilon(1e-13));

  // Fisher at carrying capacity: F(1) = 0.
  const Grid gn = build_grid(Domain::interval(0.0, 1.0), {8});
  TransformPlan plan_n(gn.n, kNeumann1);
  const CoeffField ones = plan_n.forward(make_field(gn, 1.0));
  const auto fisher = eval_reaction_spectral({ones}, ReactionSpec::fisher({}), plan_n);
  CHECK(testutil::linf(fisher[0].coeffs) < 1e-13);
}

TEST_CASE("non-finite reaction aborts with context") {
  const Grid g = build_grid(Domain::interval(0.0, 1.0), {4});
  const ReactionSpec bad = ReactionSpec::custom(
      1, "nan", [](const double*, double* f) { f[0] = std::nan(""); });
  EtdStepper stepper(g, kNeumann1, 1.5, {1.0}, bad, SchemeKind::EtdCn, 0.1);
  stepper.initialize({make_field(g, 1.0)});
  try {
    stepper.advance();
    FAIL("expected SolverAbort");
  } catch (const SolverAbort& e) {
    CHECK(e.step == 0);
    CHECK(e.species == 0);
    CHECK(std::string(e.what()).find("non-finite") != std::string::npos);
  }
}

TEST_CASE("blow-up in a later step reports the step index") {
  // u' = u^8 from u0 = 2 overflows within a few steps.
  const Grid g = build_grid(Domain::interval(0.0, 1.0), {4});
  const ReactionSpec explosive = ReactionSpec::custom(
      1, "u^8", [](const double* u, double* f) {
        const double u2 = u[0] * u[0], u4 = u2 * u2;
        f[0] = u4 * u4;
      });
  EtdStepper stepper(g, kNeumann1, 2.0, {1e-8}, explosive, SchemeKind::Etd1, 2.0);
  stepper.initialize({make_field(g, 2.0)});
  CHECK_THROWS_AS(
      [&] {
        for (int k = 0; k < 50; ++k) stepper.advance();
      }(),
      SolverAbort);
  CHECK(stepper.step_index() > 0);
}

TEST_CASE("run_simulation: zero steps returns the initial condition") {
  RunConfig cfg;
  cfg.domain = Domain::interval(0.0, 1.0);
  cfg.n = {8};
  cfg.bc = kNeumann1;
  cfg.alpha = 1.5;
  cfg.tau = 0.1;
  cfg.t_final = 0.0;
  cfg.model = ModelKind::None;
  cfg.ic = IcKind::Constant;
  cfg.ic_value = 0.75;
  const RunResult r = run_simulation(cfg);
  CHECK(r.steps == 0);
  for (double v : r.fields[0].values) CHECK(v == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("run_simulation: snapshot cadence and max-norm history") {
  RunConfig cfg;
  cfg.domain = Domain::interval(0.0, 1.0);
  cfg.n = {8};
  cfg.bc = {BoundaryKind::Dirichlet};
  cfg.alpha = 2.0;
  cfg.tau = 0.1;
  cfg.t_final = 1.0;
  cfg.model = ModelKind::None;
  cfg.ic = IcKind::Eigenfunction;
  cfg.ic_mode = {1};
  cfg.snapshot_every = 4;

  std::vector<std::size_t> seen;
  const RunResult r = run_simulation(
      cfg, [&](std::size_t step, double time, std::size_t species, const Field& f) {
        seen.push_back(step);
        CHECK(species == 0);
        CHECK(time == doctest::Approx(0.1 * step).epsilon(1e-15));
        CHECK(f.shape == std::vector<std::size_t>{8});
      });
  CHECK(seen == std::vector<std::size_t>{0, 4, 8});
  CHECK(r.steps == 10);
  REQUIRE(r.max_norm[0].size() == 11);
  // Pure decay: the max norm history is strictly decreasing.
  for (std::size_t k = 1; k < r.max_norm[0].size(); ++k)
    CHECK(r.max_norm[0][k] < r.max_norm[0][k - 1]);
}

TEST_CASE("run_simulation rejects a non-integral step count") {
  RunConfig cfg;
  cfg.domain = Domain::interval(0.0, 1.0);
  cfg.n = {8};
  cfg.bc = kNeumann1;
  cfg.alpha = 1.5;
  cfg.tau = 0.3;
  cfg.t_final = 1.0;
  cfg.model = ModelKind::None;
  cfg.ic = IcKind::Constant;
  CHECK_THROWS_AS(run_simulation(cfg), std::invalid_argument);
}

TEST_CASE("steady-state fixed point of the full solver") {
  // Constant (u*, v*) under all-Neumann stays put: reaction and diffusion
  // both vanish. Small grid version of the acceptance criterion.
  const Grid g = build_grid(Domain::rect(0.0, 30.0, 0.0, 10.0), {16, 8});
  const std::vector<BoundaryKind> bc = {BoundaryKind::Neumann, BoundaryKind::Neumann};
  const PredPreyParams p;
  const auto [u_star, v_star] = coexistence_steady_state(p);
  EtdStepper stepper(g, bc, 1.5, {1.0, p.delta}, ReactionSpec::predprey(p),
                     SchemeKind::EtdCn, 0.1);
  stepper.initialize({make_field(g, u_star), make_field(g, v_star)});
  for (int k = 0; k < 100; ++k) stepper.advance();
  for (double v : stepper.field(0).values)
    CHECK(std::abs(v - u_star) < 1e-8);
  for (double v : stepper.field(1).values)
    CHECK(std::abs(v - v_star) < 1e-8);
}

TEST_CASE("optional high-mode reaction filter") {
  // With keep = 0.5 the top half of the reaction spectrum is zeroed, so
  // filtered modes evolve as if the problem were linear. Off by default.
  const Grid g = build_grid(Domain::interval(0.0, 1.0), {8});
  const std::vector<BoundaryKind> bc = {BoundaryKind::Dirichlet};
  const ReactionSpec square =
      ReactionSpec::custom(1, "u^2", [](const double* u, double* f) { f[0] = u[0] * u[0]; });
  CoeffField c0{{8}, testutil::random_field({8}, 12).values};
  const SpectrumTable spectra = build_spectrum(g, bc, 2.0, 1.0);

  EtdStepper filtered(g, bc, 2.0, {1.0}, square, SchemeKind::Etd1, 0.01);
  filtered.set_reaction_filter(0.5);
  filtered.initialize_spectral({c0});
  filtered.advance();

  EtdStepper plain(g, bc, 2.0, {1.0}, square, SchemeKind::Etd1, 0.01);
  plain.initialize_spectral({c0});
  plain.advance();

  for (std::size_t m = 0; m < 8; ++m) {
    const double linear_only = std::exp(-0.01 * spectra.symbol[m]) * c0[m];
    if (m >= 4) {
      CHECK(filtered.coeffs(0)[m] == doctest::Approx(linear_only).epsilon(1e-14));
      CHECK(filtered.coeffs(0)[m] != plain.coeffs(0)[m]);
    } else {
      CHECK(filtered.coeffs(0)[m] == plain.coeffs(0)[m]);
    }
  }

  CHECK_THROWS_AS(filtered.set_reaction_filter(0.0), std::invalid_argument);
  CHECK_THROWS_AS(filtered.set_reaction_filter(1.5), std::invalid_argument);
}
