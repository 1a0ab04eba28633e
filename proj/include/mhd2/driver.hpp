#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mhd2/diagnostics.hpp"
#include "mhd2/io.hpp"

namespace mhd2 {

struct DriverOptions {
  bool quiet = false;
  std::ostream* log = nullptr;  // progress lines; nullptr or quiet silences them
};

struct RunSummary {
  std::string status = "ok";
  std::string failure;  // error text when status != ok
  double t_start = 0.0;
  double t_final = 0.0;
  std::size_t steps = 0;
  EnergyLedger ledger;
  double energy_initial = 0.0;    // E0 + E1 at the first record
  double energy_ratio_max = 0.0;  // max over records of E(t) / E(t_start), 0 if E(t_start) = 0
  double decay_exponent_u = 0.0;  // fitted on ||u||_{H^{2s-1}}, NaN when not fittable
  double decay_exponent_b = 0.0;  // same for b
  double max_symmetry_defect = 0.0;
  double max_div_defect_u = 0.0;
  double max_div_defect_b = 0.0;
  double max_mean_abs = 0.0;
  std::vector<DiagnosticsRecord> records;
};

/// Initial data described by the config.
MHDState make_ic(const RunConfig& cfg);

/// Builds initial data, runs to cfg.t_end and writes <outdir>/diag.csv,
/// <outdir>/ckpt_<t>.chk every snapshot_every, <outdir>/final.chk and
/// <outdir>/summary.txt. Step failures are rethrown after the summary is written.
RunSummary simulate(const RunConfig& cfg, const DriverOptions& opts = {});

/// Same outputs, starting from a checkpoint. The energy ledger restarts at the
/// checkpoint time.
RunSummary resume(const RunConfig& cfg, const std::filesystem::path& checkpoint, const DriverOptions& opts = {});

/// Runs from an explicit state; simulate and resume both end up here.
RunSummary execute(const RunConfig& cfg, const MHDState& st0, const DriverOptions& opts = {});

std::string format_summary(const RunConfig& cfg, const RunSummary& sum);

/// key = value dump of every norm of a checkpointed state.
std::string describe_state(const MHDState& st, int s);

}  // namespace mhd2
