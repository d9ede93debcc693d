// Command-line front end for the fractional reaction-diffusion solver.
//
//   fracrd run <config>            advance the configured simulation, writing
//                                  binary/PGM snapshots and metrics.csv
//   fracrd steady-state <a> <b> <c>  print the coexistence equilibrium
//   fracrd converge time <config>  temporal convergence table (config tau is
//                                  the finest step; the list is 8t,4t,2t,t)
//   fracrd converge space <config> spectral accuracy of the eigenfunction IC
//   fracrd oracle-check <config>   transform/operator oracle sweep
//
// Flags: --out <dir>, --threads <n> (0 = auto; FRACRD_THREADS as fallback),
// --quiet, --snapshot-every <k>. Exit codes: 0 success, 1 configuration or
// usage error, 2 runtime abort.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "fracrd/config.hpp"
#include "fracrd/harness.hpp"
#include "fracrd/parallel.hpp"
#include "fracrd/reactions.hpp"
#include "fracrd/runner.hpp"
#include "fracrd/snapshot.hpp"

namespace {

void usage(std::FILE* to) {
  std::fprintf(to,
               "usage: fracrd <command> [options]\n"
               "\n"
               "commands:\n"
               "  run <config>              run the configured simulation\n"
               "  steady-state <a> <b> <c>  print the coexistence steady state\n"
               "  converge time <config>    temporal convergence study\n"
               "  converge space <config>   spectral (eigenfunction) accuracy check\n"
               "  oracle-check <config>     transform/operator oracle sweep\n"
               "\n"
               "options:\n"
               "  --out <dir>           override the config's output directory\n"
               "  --threads <n>         worker threads (0 = auto, default 1)\n"
               "  --snapshot-every <k>  override the config's snapshot cadence\n"
               "  --quiet               suppress progress output\n");
}

struct Options {
  std::vector<std::string> positional;
  std::string out_dir;
  bool has_out = false;
  long threads = -1;
  long snapshot_every = -1;
  bool quiet = false;
};

bool parse_options(int argc, char** argv, Options& opt) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    auto next = [&](const char* flag) -> const char* {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "fracrd: %s requires a value\n", flag);
        return nullptr;
      }
      return argv[++i];
    };
    if (arg == "--out") {
      const char* v = next("--out");
      if (!v) return false;
      opt.out_dir = v;
      opt.has_out = true;
    } else if (arg == "--threads") {
      const char* v = next("--threads");
      if (!v) return false;
      opt.threads = std::atol(v);
    } else if (arg == "--snapshot-every") {
      const char* v = next("--snapshot-every");
      if (!v) return false;
      opt.snapshot_every = std::atol(v);
    } else if (arg == "--quiet") {
      opt.quiet = true;
    } else if (arg == "--help" || arg == "-h") {
      usage(stdout);
      std::exit(0);
    } else if (arg.rfind("--", 0) == 0) {
      std::fprintf(stderr, "fracrd: unknown option '%s'\n", arg.c_str());
      return false;
    } else {
      opt.positional.push_back(arg);
    }
  }
  return true;
}

void apply_thread_setting(const Options& opt) {
  long threads = opt.threads;
  if (threads < 0) {
    if (const char* env = std::getenv("FRACRD_THREADS")) threads = std::atol(env);
  }
  if (threads < 0) threads = 1;
  fracrd::set_thread_count(static_cast<unsigned>(threads));
}

fracrd::RunConfig load_config(const Options& opt, const std::string& path) {
  fracrd::RunConfig cfg = fracrd::load_config_file(path);
  if (opt.has_out) cfg.out_dir = opt.out_dir;
  if (opt.snapshot_every >= 0)
    cfg.snapshot_every = static_cast<std::size_t>(opt.snapshot_every);
  return cfg;
}

int cmd_run(const Options& opt) {
  if (opt.positional.size() != 2) {
    std::fprintf(stderr, "fracrd: run expects one config file\n");
    return 1;
  }
  const fracrd::RunConfig cfg = load_config(opt, opt.positional[1]);
  const fracrd::Grid grid = fracrd::build_grid(cfg.domain, cfg.n);
  fracrd::SnapshotWriter writer(cfg.out_dir, grid, opt.quiet);

  const fracrd::RunResult result = fracrd::run_simulation(cfg, std::ref(writer));

  // Final state always lands on disk, outside the periodic CSV cadence.
  for (std::size_t s = 0; s < result.fields.size(); ++s) {
    const std::string base = "field_s" + std::to_string(s + 1) + "_final";
    fracrd::write_field_binary(writer.dir() / (base + ".bin"), result.fields[s]);
    if (result.fields[s].shape.size() <= 2)
      fracrd::write_field_pgm(writer.dir() / (base + ".pgm"), result.fields[s],
                              result.steps, cfg.t_final);
  }
  if (!opt.quiet) {
    std::printf("completed %zu steps of %s to t = %g (%zu species)\n", result.steps,
                fracrd::to_string(cfg.scheme).c_str(), cfg.t_final,
                result.fields.size());
    for (std::size_t s = 0; s < result.fields.size(); ++s)
      std::printf("species %zu: final max |u| = %.6g\n", s + 1,
                  result.max_norm[s].back());
    std::printf("output written to %s\n", writer.dir().string().c_str());
  }
  return 0;
}

int cmd_steady_state(const Options& opt) {
  if (opt.positional.size() != 4) {
    std::fprintf(stderr, "fracrd: steady-state expects three parameters a b c\n");
    return 1;
  }
  fracrd::PredPreyParams p;
  p.a = std::atof(opt.positional[1].c_str());
  p.b = std::atof(opt.positional[2].c_str());
  p.c = std::atof(opt.positional[3].c_str());
  const auto [u_star, v_star] = fracrd::coexistence_steady_state(p);
  std::printf("u* = %.10f\n", u_star);
  std::printf("v* = %.10f\n", v_star);
  return 0;
}

int cmd_converge(const Options& opt) {
  if (opt.positional.size() != 3 ||
      (opt.positional[1] != "time" && opt.positional[1] != "space")) {
    std::fprintf(stderr, "fracrd: converge expects 'time <config>' or 'space <config>'\n");
    return 1;
  }
  const fracrd::RunConfig cfg = load_config(opt, opt.positional[2]);

  if (opt.positional[1] == "space") {
    const double err = fracrd::spatial_accuracy(cfg);
    std::printf("eigenfunction accuracy: max error %.6e at t = %g\n", err, cfg.t_final);
    return err < 1e-10 ? 0 : 2;
  }

  // The config's tau is the finest step of the list {8t, 4t, 2t, t}.
  const std::vector<double> taus = {8 * cfg.tau, 4 * cfg.tau, 2 * cfg.tau, cfg.tau};
  const double tau_ref = cfg.tau / 8.0;
  const fracrd::ConvergenceTable table =
      fracrd::temporal_convergence(cfg, taus, tau_ref);
  std::printf("%s", fracrd::format_convergence(table).c_str());
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  fracrd::write_convergence_csv(
      std::filesystem::path(cfg.out_dir) / "convergence.csv", table);
  fracrd::write_convergence_markdown(
      std::filesystem::path(cfg.out_dir) / "convergence.md", table);
  if (!opt.quiet)
    std::printf("tables written to %s\n", cfg.out_dir.c_str());
  return 0;
}

int cmd_oracle_check(const Options& opt) {
  if (opt.positional.size() != 2) {
    std::fprintf(stderr, "fracrd: oracle-check expects one config file\n");
    return 1;
  }
  const fracrd::RunConfig cfg = load_config(opt, opt.positional[1]);
  const std::vector<std::size_t> sizes = {4, 8, 16};
  std::vector<double> alphas = {1.1, 1.5, 2.0};
  if (cfg.alpha != 1.1 && cfg.alpha != 1.5 && cfg.alpha != 2.0)
    alphas.push_back(cfg.alpha);
  const fracrd::OracleReport report = fracrd::oracle_suite(sizes, alphas);
  std::printf("%s", fracrd::format_oracle_report(report).c_str());
  if (!report.all_pass) {
    std::fprintf(stderr, "oracle-check: FAILED\n");
    return 2;
  }
  std::printf("oracle-check: all cross-checks passed\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  if (!parse_options(argc, argv, opt)) return 1;
  if (opt.positional.empty()) {
    usage(stderr);
    return 1;
  }
  apply_thread_setting(opt);

  const std::string& cmd = opt.positional[0];
  try {
    if (cmd == "run") return cmd_run(opt);
    if (cmd == "steady-state") return cmd_steady_state(opt);
    if (cmd == "converge") return cmd_converge(opt);
    if (cmd == "oracle-check") return cmd_oracle_check(opt);
    std::fprintf(stderr, "fracrd: unknown command '%s'\n", cmd.c_str());
    usage(stderr);
    return 1;
  } catch (const fracrd::ConfigError& e) {
    std::fprintf(stderr, "fracrd: %s\n", e.what());
    return 1;
  } catch (const fracrd::SolverAbort& e) {
    std::fprintf(stderr, "fracrd: aborted: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "fracrd: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "fracrd: %s\n", e.what());
    return 2;
  }
}
