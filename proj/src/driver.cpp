#include "mhd2/driver.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "mhd2/error.hpp"
#include "mhd2/integrator.hpp"

namespace mhd2 {

namespace {

namespace fs = std::filesystem;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create output directory " + dir.string() + ": " + ec.message());
}

double try_fit(const std::vector<DiagnosticsRecord>& recs, bool velocity) {
  std::vector<std::pair<double, double>> series;
  for (const auto& r : recs) {
    series.emplace_back(r.t, velocity ? r.norm_u[DiagnosticsRecord::kH2sm1] : r.norm_b[DiagnosticsRecord::kH2sm1]);
  }
  try {
    return decay_fit(series, 1.0);
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

std::string snapshot_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "ckpt_%012.6f.chk", t);
  return buf;
}

}  // namespace

MHDState make_ic(const RunConfig& cfg) {
  cfg.validate();
  return make_initial_data(cfg.initial_data(), cfg.grid());
}

RunSummary execute(const RunConfig& cfg, const MHDState& st0, const DriverOptions& opts) {
  cfg.validate();
  if (st0.grid().n != cfg.n) {
    throw Error(ErrorCode::GridMismatch, "state grid n=" + std::to_string(st0.grid().n) +
                                             " does not match config n=" + std::to_string(cfg.n));
  }
  const fs::path outdir(cfg.outdir);
  ensure_dir(outdir);
  const fs::path csv_path = outdir / "diag.csv";
  std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
  if (!csv) throw Error(ErrorCode::Io, "cannot open " + csv_path.string() + " for writing");
  csv << diag_csv_header();

  std::ostream* log = opts.quiet ? nullptr : opts.log;
  RunSummary sum;
  sum.t_start = st0.t;
  sum.t_final = st0.t;

  RunOptions ro = cfg.run_options();
  ro.stepper.t_end = cfg.t_end;

  auto sink = [&](const RunEvent& ev) {
    sum.t_final = ev.state.t;
    sum.steps = ev.steps;
    if (ev.snapshot) write_checkpoint(ev.state, cfg.s, outdir / snapshot_name(ev.state.t));
    if (!ev.record) return;
    const DiagnosticsRecord& r = *ev.record;
    csv << diag_csv_row(r);
    if (!csv) throw Error(ErrorCode::Io, "failed writing " + csv_path.string());
    sum.ledger = ledger_update(sum.ledger, r);
    if (sum.records.empty()) sum.energy_initial = sum.ledger.total();
    if (sum.energy_initial > 0.0) {
      sum.energy_ratio_max = std::max(sum.energy_ratio_max, sum.ledger.total() / sum.energy_initial);
    }
    sum.max_symmetry_defect = std::max(sum.max_symmetry_defect, r.symmetry_defect);
    sum.max_div_defect_u = std::max(sum.max_div_defect_u, r.div_defect_u);
    sum.max_div_defect_b = std::max(sum.max_div_defect_b, r.div_defect_b);
    sum.max_mean_abs = std::max(sum.max_mean_abs, r.mean_abs_max);
    sum.records.push_back(r);
    if (log) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "t=%-10.4f steps=%-8zu E=%.6e |b|_H%d=%.6e\n", r.t, ev.steps,
                    sum.ledger.total(), 2 * cfg.s - 1, r.norm_b[DiagnosticsRecord::kH2sm1]);
      *log << buf << std::flush;
    }
  };

  auto finish = [&] {
    sum.decay_exponent_u = try_fit(sum.records, true);
    sum.decay_exponent_b = try_fit(sum.records, false);
    csv.flush();
    write_text(outdir / "summary.txt", format_summary(cfg, sum));
  };

  try {
    const MHDState final_state = run(st0, ro, sink);
    sum.t_final = final_state.t;
    write_checkpoint(final_state, cfg.s, outdir / "final.chk");
  } catch (const StepError& e) {
    sum.status = std::string("failed: ") + to_string(e.code());
    sum.failure = e.what();
    sum.t_final = e.last_good_t();
    finish();
    throw;
  }
  finish();
  return sum;
}

RunSummary simulate(const RunConfig& cfg, const DriverOptions& opts) { return execute(cfg, make_ic(cfg), opts); }

RunSummary resume(const RunConfig& cfg, const std::filesystem::path& checkpoint, const DriverOptions& opts) {
  const Checkpoint cp = read_checkpoint(checkpoint, cfg.n);
  if (cp.s != cfg.s) {
    throw Error(ErrorCode::InvalidValue, "checkpoint s=" + std::to_string(cp.s) + " does not match config s=" +
                                             std::to_string(cfg.s));
  }
  if (cp.state.t > cfg.t_end) {
    throw Error(ErrorCode::InvalidValue, "checkpoint time " + num(cp.state.t) + " is past t_end " + num(cfg.t_end));
  }
  return execute(cfg, cp.state, opts);
}

std::string format_summary(const RunConfig& cfg, const RunSummary& s) {
  std::ostringstream o;
  o << "status = " << s.status << "\n";
  if (!s.failure.empty()) o << "failure = " << s.failure << "\n";
  o << "formulation = " << (cfg.formulation == Formulation::Total ? "total" : "perturbation") << "\n"
    << "n = " << cfg.n << "\n"
    << "s = " << cfg.s << "\n"
    << "epsilon = " << num(cfg.epsilon) << "\n"
    << "seed = " << cfg.seed << "\n"
    << "t_start = " << num(s.t_start) << "\n"
    << "t_final = " << num(s.t_final) << "\n"
    << "steps = " << s.steps << "\n"
    << "samples = " << s.records.size() << "\n"
    << "E0 = " << num(s.ledger.e0()) << "\n"
    << "E1 = " << num(s.ledger.e1()) << "\n"
    << "E_initial = " << num(s.energy_initial) << "\n"
    << "E_ratio_max = " << num(s.energy_ratio_max) << "\n"
    << "decay_exponent_u_H2sm1 = " << num(s.decay_exponent_u) << "\n"
    << "decay_exponent_b_H2sm1 = " << num(s.decay_exponent_b) << "\n"
    << "max_symmetry_defect = " << num(s.max_symmetry_defect) << "\n"
    << "max_div_defect_u = " << num(s.max_div_defect_u) << "\n"
    << "max_div_defect_b = " << num(s.max_div_defect_b) << "\n"
    << "max_mean_abs = " << num(s.max_mean_abs) << "\n";
  return o.str();
}

std::string describe_state(const MHDState& st, int s) {
  const EnergyParams p{s};
  p.validate();
  const DiagnosticsRecord r = instantaneous(st, p);
  std::ostringstream o;
  o << "n = " << st.grid().n << "\n"
    << "s = " << s << "\n"
    << "t = " << num(r.t) << "\n";
  for (int j = 0; j < 4; ++j) o << "u_H" << 2 * s - 2 + j << " = " << num(r.norm_u[j]) << "\n";
  for (int j = 0; j < 5; ++j) o << "b_H" << 2 * s - 2 + j << " = " << num(r.norm_b[j]) << "\n";
  o << "d2u_H" << 2 * s << " = " << num(r.norm_d2u_H2s) << "\n"
    << "d2u_H" << 2 * s - 2 << " = " << num(r.norm_d2u_H2sm2) << "\n"
    << "l2_energy = " << num(r.l2_energy) << "\n"
    << "grad_b_l2_sq = " << num(r.grad_b_l2_sq) << "\n"
    << "symmetry_defect = " << num(r.symmetry_defect) << "\n"
    << "div_defect_u = " << num(r.div_defect_u) << "\n"
    << "div_defect_b = " << num(r.div_defect_b) << "\n"
    << "mean_abs_max = " << num(r.mean_abs_max) << "\n";
  for (const auto& c : validate_state(st)) {
    o << "check_" << c.name << " = " << (c.pass ? "pass" : "FAIL") << "\n";
  }
  return o.str();
}

}  // namespace mhd2
