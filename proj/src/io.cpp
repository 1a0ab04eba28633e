#include "mhd2/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "mhd2/error.hpp"
#include "mhd2/spectral.hpp"

namespace mhd2 {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void invalid(const std::string& key, const std::string& why) {
  throw Error(ErrorCode::InvalidValue, "key '" + key + "': " + why);
}

double to_double(const std::string& key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    invalid(key, "expected a finite number, got '" + std::string(v) + "'");
  }
  return out;
}

long long to_integer(const std::string& key, std::string_view v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    invalid(key, "expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

bool to_bool(const std::string& key, std::string_view v) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  invalid(key, "expected true/false, got '" + std::string(v) + "'");
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void RunConfig::validate() const {
  if (n < 8 || n % 2 != 0) invalid("n", "must be an even integer >= 8");
  if (s < 2) invalid("s", "must be >= 2 (the existence theorem needs integer s >= 2)");
  if (2 * s + 2 > kMaxSobolevOrder) invalid("s", "2s + 2 must not exceed " + std::to_string(kMaxSobolevOrder));
  if (!(epsilon >= 0.0)) invalid("epsilon", "must be >= 0");
  if (!(spectrum_decay > 0.0)) invalid("spectrum_decay", "must be > 0");
  const int cutoff = grid().dealias_cutoff();
  if (max_wavenumber < 1 || max_wavenumber > cutoff) {
    invalid("max_wavenumber", "must lie in [1, " + std::to_string(cutoff) + "] (dealias cutoff)");
  }
  if (!(t_end >= 0.0)) invalid("t_end", "must be >= 0");
  if (!(cfl > 0.0 && cfl <= 1.0)) invalid("cfl", "must lie in (0, 1]");
  if (!(dt_max > 0.0)) invalid("dt_max", "must be > 0");
  if (!(dt_min > 0.0)) invalid("dt_min", "must be > 0");
  if (!(dt_min < dt_max)) invalid("dt_min", "must be smaller than dt_max");
  if (!(sample_every > 0.0)) invalid("sample_every", "must be > 0");
  if (!(snapshot_every >= 0.0)) invalid("snapshot_every", "must be >= 0");
  if (outdir.empty()) invalid("outdir", "must not be empty");
  if (formulation == Formulation::Total && (!nonlinear || !coupling)) {
    invalid("formulation", "the total formulation does not support the linear test hooks");
  }
}

GridSpec RunConfig::grid() const { return GridSpec::make(n); }

InitialDataSpec RunConfig::initial_data() const {
  InitialDataSpec spec;
  spec.epsilon = epsilon;
  spec.s = s;
  spec.seed = seed;
  spec.spectrum_decay = spectrum_decay;
  spec.max_wavenumber = max_wavenumber;
  return spec;
}

RunOptions RunConfig::run_options() const {
  RunOptions o;
  o.stepper = {cfl, dt_max, dt_min, t_end};
  o.sample_every = sample_every;
  o.snapshot_every = snapshot_every;
  o.dynamics = {nonlinear, coupling, formulation};
  o.energy = {s};
  return o;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::InvalidValue, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) invalid(key, "given more than once");

    if (key == "n") cfg.n = static_cast<int>(to_integer(key, value));
    else if (key == "s") cfg.s = static_cast<int>(to_integer(key, value));
    else if (key == "epsilon") cfg.epsilon = to_double(key, value);
    else if (key == "seed") {
      const long long v = to_integer(key, value);
      if (v < 0) invalid(key, "must be >= 0");
      cfg.seed = static_cast<std::uint64_t>(v);
    }
    else if (key == "spectrum_decay") cfg.spectrum_decay = to_double(key, value);
    else if (key == "max_wavenumber") cfg.max_wavenumber = static_cast<int>(to_integer(key, value));
    else if (key == "t_end") cfg.t_end = to_double(key, value);
    else if (key == "cfl") cfg.cfl = to_double(key, value);
    else if (key == "dt_max") cfg.dt_max = to_double(key, value);
    else if (key == "dt_min") cfg.dt_min = to_double(key, value);
    else if (key == "sample_every") cfg.sample_every = to_double(key, value);
    else if (key == "snapshot_every") cfg.snapshot_every = to_double(key, value);
    else if (key == "outdir") cfg.outdir = std::string(value);
    else if (key == "formulation") {
      if (value == "perturbation") cfg.formulation = Formulation::Perturbation;
      else if (value == "total") cfg.formulation = Formulation::Total;
      else invalid(key, "expected perturbation or total");
    }
    else if (key == "nonlinear") cfg.nonlinear = to_bool(key, value);
    else if (key == "coupling") cfg.coupling = to_bool(key, value);
    else throw Error(ErrorCode::UnknownKey, "unknown key '" + key + "' on line " + std::to_string(line_no));
  }
  for (const char* required : {"n", "s", "epsilon", "t_end"}) {
    if (!seen.count(required)) {
      throw Error(ErrorCode::MissingRequired, std::string("required key '") + required + "' is missing");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string format_config(const RunConfig& c) {
  std::ostringstream o;
  o << "n = " << c.n << "\n"
    << "s = " << c.s << "\n"
    << "epsilon = " << fmt_double(c.epsilon) << "\n"
    << "seed = " << c.seed << "\n"
    << "spectrum_decay = " << fmt_double(c.spectrum_decay) << "\n"
    << "max_wavenumber = " << c.max_wavenumber << "\n"
    << "t_end = " << fmt_double(c.t_end) << "\n"
    << "cfl = " << fmt_double(c.cfl) << "\n"
    << "dt_max = " << fmt_double(c.dt_max) << "\n"
    << "dt_min = " << fmt_double(c.dt_min) << "\n"
    << "sample_every = " << fmt_double(c.sample_every) << "\n"
    << "snapshot_every = " << fmt_double(c.snapshot_every) << "\n"
    << "outdir = " << c.outdir << "\n"
    << "formulation = " << (c.formulation == Formulation::Total ? "total" : "perturbation") << "\n"
    << "nonlinear = " << (c.nonlinear ? "true" : "false") << "\n"
    << "coupling = " << (c.coupling ? "true" : "false") << "\n";
  return o.str();
}

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double x) {
  const auto v = std::bit_cast<std::uint64_t>(x);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint64_t offset() const { return pos_; }

  void need(std::size_t count, const char* what) {
    if (bytes_.size() - pos_ < count) {
      throw CheckpointError(std::string("truncated checkpoint while reading ") + what, bytes_.size());
    }
  }

  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }

  double f64(const char* what) {
    need(8, what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(bytes_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return std::bit_cast<double>(v);
  }

  std::span<const std::uint8_t> raw(std::size_t count, const char* what) {
    need(count, what);
    auto s = bytes_.subspan(pos_, count);
    pos_ += count;
    return s;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const MHDState& st, int s) {
  const int n = st.grid().n;
  std::vector<std::uint8_t> out;
  out.reserve(8 + 4 + 4 + 8 + 4 * 8 * std::size_t(n) * n);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(kCheckpointMagic[i]));
  put_u32(out, static_cast<std::uint32_t>(n));
  put_u32(out, static_cast<std::uint32_t>(s));
  put_f64(out, st.t);
  for (const SpectralScalar* c : {&st.u.c1, &st.u.c2, &st.b.c1, &st.b.c2}) {
    const ScalarField f = inverse_transform(*c);
    for (double x : f.samples) put_f64(out, x);
  }
  return out;
}

Checkpoint decode_checkpoint(std::span<const std::uint8_t> bytes, std::optional<int> expected_n) {
  Reader r(bytes);
  const auto magic = r.raw(8, "magic");
  if (std::memcmp(magic.data(), kCheckpointMagic, 8) != 0) {
    throw CheckpointError("bad magic/version (expected MHD2TOR1)", 0);
  }
  const std::uint64_t n_offset = r.offset();
  const std::uint32_t n = r.u32("grid size");
  if (n < 8 || n % 2 != 0 || n > 1u << 15) throw CheckpointError("invalid grid size " + std::to_string(n), n_offset);
  const std::uint64_t s_offset = r.offset();
  const std::uint32_t s = r.u32("s");
  if (s < 2 || 2 * s + 2 > std::uint32_t(kMaxSobolevOrder)) {
    throw CheckpointError("invalid s " + std::to_string(s), s_offset);
  }
  const double t = r.f64("time");
  const std::size_t payload = 4 * 8 * std::size_t(n) * n;
  if (r.remaining() != payload) {
    throw CheckpointError("length mismatch: expected " + std::to_string(payload) + " payload bytes, found " +
                              std::to_string(r.remaining()),
                          r.offset() + std::min(payload, r.remaining()));
  }
  if (expected_n && *expected_n != int(n)) {
    throw Error(ErrorCode::GridMismatch, "checkpoint grid n=" + std::to_string(n) + " does not match run grid n=" +
                                             std::to_string(*expected_n));
  }
  const GridSpec grid = GridSpec::make(int(n));
  ScalarField comps[4] = {ScalarField(grid), ScalarField(grid), ScalarField(grid), ScalarField(grid)};
  for (auto& f : comps) {
    for (double& x : f.samples) {
      const std::uint64_t at = r.offset();
      x = r.f64("samples");
      if (!std::isfinite(x)) throw CheckpointError("non-finite sample", at);
    }
  }
  Checkpoint cp;
  cp.s = int(s);
  cp.state.t = t;
  cp.state.u = {forward_transform(comps[0]), forward_transform(comps[1])};
  cp.state.b = {forward_transform(comps[2]), forward_transform(comps[3])};
  return cp;
}

void write_checkpoint(const MHDState& st, int s, const std::filesystem::path& path) {
  const auto bytes = encode_checkpoint(st, s);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

Checkpoint read_checkpoint(const std::filesystem::path& path, std::optional<int> expected_n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open checkpoint " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes, expected_n);
}

namespace {

constexpr const char* kColumns[] = {
    "t",          "u_H2sm2",       "u_H2sm1",           "u_H2s",       "u_H2sp1",   "b_H2sm2",
    "b_H2sm1",    "b_H2s",         "b_H2sp1",           "b_H2sp2",     "d2u_H2s",   "d2u_H2sm2",
    "l2_energy",  "grad_b_l2_sq",  "grad_b_l2_sq_rate", "symmetry_defect", "div_defect_u", "div_defect_b",
    "mean_abs_max"};

}  // namespace

std::string diag_csv_header() {
  std::string out;
  for (const char* c : kColumns) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out + "\n";
}

std::string diag_csv_row(const DiagnosticsRecord& r) {
  const double values[] = {r.t,
                           r.norm_u[0], r.norm_u[1], r.norm_u[2], r.norm_u[3],
                           r.norm_b[0], r.norm_b[1], r.norm_b[2], r.norm_b[3], r.norm_b[4],
                           r.norm_d2u_H2s, r.norm_d2u_H2sm2,
                           r.l2_energy, r.grad_b_l2_sq, r.grad_b_l2_sq_rate,
                           r.symmetry_defect, r.div_defect_u, r.div_defect_b, r.mean_abs_max};
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ',';
    out += fmt_double(v);
  }
  return out + "\n";
}

std::vector<DiagnosticsRecord> read_diag_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (line + "\n" != diag_csv_header()) throw Error(ErrorCode::InvalidValue, path.string() + ": unexpected header");
  std::vector<DiagnosticsRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> v;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      v.push_back(to_double("diag.csv", rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (v.size() != std::size(kColumns)) throw Error(ErrorCode::InvalidValue, path.string() + ": bad row width");
    DiagnosticsRecord r;
    r.t = v[0];
    for (int j = 0; j < 4; ++j) r.norm_u[j] = v[1 + j];
    for (int j = 0; j < 5; ++j) r.norm_b[j] = v[5 + j];
    r.norm_d2u_H2s = v[10];
    r.norm_d2u_H2sm2 = v[11];
    r.l2_energy = v[12];
    r.grad_b_l2_sq = v[13];
    r.grad_b_l2_sq_rate = v[14];
    r.symmetry_defect = v[15];
    r.div_defect_u = v[16];
    r.div_defect_b = v[17];
    r.mean_abs_max = v[18];
    out.push_back(r);
  }
  return out;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidValue:
    case ErrorCode::UnknownKey:
    case ErrorCode::MissingRequired:
    case ErrorCode::GridMismatch:
    case ErrorCode::GridTooLarge:
    case ErrorCode::NotInClass:
    case ErrorCode::ZeroWavevector:
      return kExitConfig;
    case ErrorCode::Io:
    case ErrorCode::CorruptCheckpoint:
      return kExitIo;
    default:
      return kExitNumerical;
  }
}

}  // namespace mhd2
