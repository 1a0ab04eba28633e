#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mhd2/diagnostics.hpp"
#include "mhd2/dynamics.hpp"
#include "mhd2/error.hpp"
#include "mhd2/integrator.hpp"
#include "mhd2/symmetry.hpp"

namespace mhd2 {

/// Everything a run needs. Parsed from `key = value` lines; n, s, epsilon and
/// t_end are required, the rest default as below.
struct RunConfig {
  int n = 0;
  int s = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 1;
  double spectrum_decay = 4.0;
  int max_wavenumber = 4;
  double t_end = 0.0;
  double cfl = 0.4;
  double dt_max = 1e-2;
  double dt_min = 1e-8;
  double sample_every = 0.1;
  double snapshot_every = 0.0;
  std::string outdir = "run";
  Formulation formulation = Formulation::Perturbation;
  bool nonlinear = true;
  bool coupling = true;

  /// Re-checks every field; parse_config calls this.
  void validate() const;

  GridSpec grid() const;
  InitialDataSpec initial_data() const;
  RunOptions run_options() const;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);
/// Canonical `key = value` rendering; parse_config(format_config(c)) == c.
std::string format_config(const RunConfig& cfg);

// Checkpoint layout (little-endian): "MHD2TOR1", u32 n, u32 s, f64 t, then the
// physical samples of u1, u2, b1, b2 as n*n f64 each, row-major.
inline constexpr char kCheckpointMagic[9] = "MHD2TOR1";

struct Checkpoint {
  MHDState state;
  int s = 0;
};

std::vector<std::uint8_t> encode_checkpoint(const MHDState& st, int s);
/// Throws CheckpointError (with byte offset) on malformed input, GridMismatch
/// when expected_n is given and differs.
Checkpoint decode_checkpoint(std::span<const std::uint8_t> bytes, std::optional<int> expected_n = {});

void write_checkpoint(const MHDState& st, int s, const std::filesystem::path& path);
Checkpoint read_checkpoint(const std::filesystem::path& path, std::optional<int> expected_n = {});

/// diag.csv: one header row, then one row per DiagnosticsRecord, %.17g numbers.
std::string diag_csv_header();
std::string diag_csv_row(const DiagnosticsRecord& rec);
std::vector<DiagnosticsRecord> read_diag_csv(const std::filesystem::path& path);

inline constexpr int kExitOk = 0, kExitConfig = 2, kExitNumerical = 3, kExitIo = 4;
/// Process exit status for an error: 2 config, 3 numerical failure, 4 I/O.
int exit_code(ErrorCode code);

}  // namespace mhd2
