#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "mhd2/driver.hpp"
#include "mhd2/error.hpp"
#include "mhd2/io.hpp"
#include "mhd2/kernels.hpp"
#include "mhd2/verify.hpp"

namespace {

using namespace mhd2;

void apply_thread_env() {
  const char* env = std::getenv("MHD2_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0) throw Error(ErrorCode::InvalidValue, "MHD2_THREADS must be a non-negative integer");
  kernels::set_thread_count(static_cast<int>(v));
}

RunConfig config_from(const std::string& path, const std::optional<std::string>& outdir) {
  RunConfig cfg = load_config(path);
  if (outdir) {
    cfg.outdir = *outdir;
    cfg.validate();
  }
  return cfg;
}

int report(const verify::Report& rep) {
  verify::print(std::cout, rep);
  return rep.passed() ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mhd2: pseudo-spectral solver for 2D MHD near a background magnetic field on the torus"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> outdir;
  bool quiet = false;
  auto add_common = [&](CLI::App* sub, bool need_config) {
    auto* opt = sub->add_option("--config", config_path, "run configuration (key = value)")->check(CLI::ExistingFile);
    if (need_config) opt->required();
    sub->add_option("--outdir", outdir, "override the config's outdir");
    sub->add_flag("--quiet", quiet, "no progress output");
  };

  auto* make_ic = app.add_subcommand("make-ic", "write the initial data checkpoint to <outdir>/initial.chk");
  add_common(make_ic, true);

  auto* simulate = app.add_subcommand("simulate", "build initial data and run to t_end");
  add_common(simulate, true);

  std::string checkpoint;
  auto* resume = app.add_subcommand("resume", "continue a run from a checkpoint to t_end");
  add_common(resume, true);
  resume->add_option("--checkpoint", checkpoint, "checkpoint to start from")->required()->check(CLI::ExistingFile);

  auto* diagnose = app.add_subcommand("diagnose", "recompute all norms from a checkpoint");
  diagnose->add_option("checkpoint", checkpoint, "checkpoint file")->required()->check(CLI::ExistingFile);

  auto* verify_cmd = app.add_subcommand("verify", "property suites");
  verify_cmd->require_subcommand(1);

  verify::PoincareOptions po;
  auto* v_poincare = verify_cmd->add_subcommand("poincare", "Poincare ratio on random symmetric fields");
  v_poincare->add_option("--samples", po.samples)->check(CLI::PositiveNumber);
  v_poincare->add_option("--k", po.k, "highest Sobolev order checked")->check(CLI::NonNegativeNumber);
  v_poincare->add_option("--n", po.n);
  v_poincare->add_option("--seed", po.seed);

  verify::SkewOptions so;
  auto* v_skew = verify_cmd->add_subcommand("skew", "transport cancellation on random pairs");
  v_skew->add_option("--samples", so.samples)->check(CLI::PositiveNumber);
  v_skew->add_option("--n", so.n);
  v_skew->add_option("--seed", so.seed);

  verify::LinearOptions lo;
  auto* v_linear = verify_cmd->add_subcommand("linear", "linearized system against closed-form modes");
  v_linear->add_option("--n", lo.n);
  v_linear->add_option("--kmax", lo.kmax)->check(CLI::PositiveNumber);
  v_linear->add_option("--dt", lo.dt)->check(CLI::PositiveNumber);
  v_linear->add_option("--seed", lo.seed);

  verify::OrderOptions oo;
  auto* v_order = verify_cmd->add_subcommand("order", "time step refinement study");
  v_order->add_option("--n", oo.n);
  v_order->add_option("--epsilon", oo.epsilon)->check(CLI::PositiveNumber);
  v_order->add_option("--t-end", oo.t_end)->check(CLI::PositiveNumber);
  v_order->add_option("--dt0", oo.dt0)->check(CLI::PositiveNumber);
  v_order->add_option("--refinements", oo.refinements)->check(CLI::Range(1, 8));
  v_order->add_option("--seed", oo.seed);

  verify::OracleOptions xo;
  auto* v_oracle = verify_cmd->add_subcommand("oracle", "fast transforms against direct sums");
  v_oracle->add_option("--n", xo.n);
  v_oracle->add_option("--seed", xo.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    apply_thread_env();
    DriverOptions dopts;
    dopts.quiet = quiet;
    dopts.log = &std::cerr;

    if (*make_ic) {
      const RunConfig cfg = config_from(config_path, outdir);
      const MHDState st = mhd2::make_ic(cfg);
      std::filesystem::create_directories(cfg.outdir);
      const auto path = std::filesystem::path(cfg.outdir) / "initial.chk";
      write_checkpoint(st, cfg.s, path);
      if (!quiet) std::cout << "wrote " << path.string() << "\n";
    } else if (*simulate) {
      const RunConfig cfg = config_from(config_path, outdir);
      const RunSummary sum = mhd2::simulate(cfg, dopts);
      if (!quiet) std::cout << format_summary(cfg, sum);
    } else if (*resume) {
      const RunConfig cfg = config_from(config_path, outdir);
      const RunSummary sum = mhd2::resume(cfg, checkpoint, dopts);
      if (!quiet) std::cout << format_summary(cfg, sum);
    } else if (*diagnose) {
      const Checkpoint cp = read_checkpoint(checkpoint);
      std::cout << describe_state(cp.state, cp.s);
    } else if (*v_poincare) {
      return report(verify::poincare(po));
    } else if (*v_skew) {
      return report(verify::skew(so));
    } else if (*v_linear) {
      return report(verify::linear(lo));
    } else if (*v_order) {
      return report(verify::order(oo));
    } else if (*v_oracle) {
      return report(verify::oracle(xo));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: Io: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
