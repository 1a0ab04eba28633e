#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "mhd2/driver.hpp"
#include "mhd2/error.hpp"
#include "mhd2/io.hpp"
#include "util.hpp"

using namespace mhd2;
using namespace testutil;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected parse_config to throw");
  return ErrorCode::Io;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mhd2_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("parse_config") {
  const RunConfig c = parse_config("n=64\ns=2\nepsilon=0.01\nt_end=10");
  CHECK(c.n == 64);
  CHECK(c.s == 2);
  CHECK(c.epsilon == 0.01);
  CHECK(c.t_end == 10.0);
  CHECK(c.seed == 1);
  CHECK(c.cfl == 0.4);
  CHECK(c.dt_max == 1e-2);
  CHECK(c.dt_min == 1e-8);
  CHECK(c.outdir == "run");
  CHECK(c.formulation == Formulation::Perturbation);
  CHECK(c.nonlinear);

  const RunConfig d = parse_config("# comment\n n = 32 # trailing\n\ns=3\nepsilon = 0\nt_end=0\nformulation = total\n"
                                   "seed = 7\nsample_every = 0.5\n");
  CHECK(d.n == 32);
  CHECK(d.s == 3);
  CHECK(d.formulation == Formulation::Total);
  CHECK(d.seed == 7);

  CHECK(code_of("n=64\ns=1\nepsilon=0.01\nt_end=10") == ErrorCode::InvalidValue);
  CHECK(code_of("n=64\ns=2\nepsilon=0.01\nt_end=10\ncfl=1.5") == ErrorCode::InvalidValue);
  CHECK(code_of("n=64\ns=2\nepsilon=0.01\nt_end=10\nbogus=1") == ErrorCode::UnknownKey);
  CHECK(code_of("n=64\ns=2\nepsilon=0.01") == ErrorCode::MissingRequired);
  CHECK(code_of("n=63\ns=2\nepsilon=0.01\nt_end=1") == ErrorCode::InvalidValue);
  CHECK(code_of("n=64\ns=2\nepsilon=abc\nt_end=1") == ErrorCode::InvalidValue);
  CHECK(code_of("n=64\ns=2\nepsilon=0.01\nt_end=1\nn=32") == ErrorCode::InvalidValue);
  CHECK(code_of("n=16\ns=2\nepsilon=0.01\nt_end=1\nmax_wavenumber=6") == ErrorCode::InvalidValue);
  CHECK(code_of("n=16\ns=2\nepsilon=0.01\nt_end=1\nformulation=total\nnonlinear=false") ==
        ErrorCode::InvalidValue);
  try {
    parse_config("n=64\ns=2\nepsilon=0.01\nt_end=10\ncfl=1.5");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("cfl") != std::string::npos);
  }
}

TEST_CASE("format_config round trips") {
  RunConfig c = parse_config("n=32\ns=3\nepsilon=0.125\nt_end=2.5\nnonlinear=false\noutdir=somewhere\n");
  const RunConfig d = parse_config(format_config(c));
  CHECK(format_config(d) == format_config(c));
  CHECK_FALSE(d.nonlinear);
  CHECK(d.outdir == "somewhere");
}

TEST_CASE("checkpoint round trip") {
  const GridSpec g = GridSpec::make(32);
  MHDState st = random_state(g, 3, 10, 0.1, true);
  st.t = 1.25;
  const auto bytes = encode_checkpoint(st, 2);
  CHECK(bytes.size() == 8 + 4 + 4 + 8 + 4 * 8 * 32 * 32);
  CHECK(std::string(bytes.begin(), bytes.begin() + 8) == "MHD2TOR1");
  const Checkpoint cp = decode_checkpoint(bytes);
  CHECK(cp.s == 2);
  CHECK(cp.state.t == 1.25);
  CHECK(max_diff(cp.state.u, st.u) < 1e-16);
  CHECK(max_diff(cp.state.b, st.b) < 1e-16);
  const Checkpoint again = decode_checkpoint(encode_checkpoint(cp.state, 2));
  CHECK(max_diff(again.state.b, st.b) < 1e-16);

  const fs::path p = scratch("ckpt.chk");
  write_checkpoint(st, 2, p);
  CHECK(max_diff(read_checkpoint(p).state.u, st.u) < 1e-16);
  fs::remove(p);
}

TEST_CASE("corrupt checkpoints") {
  const GridSpec g = GridSpec::make(16);
  const auto bytes = encode_checkpoint(random_state(g, 4, 5, 0.1, true), 2);

  auto truncated = bytes;
  truncated.resize(bytes.size() - 100);
  try {
    decode_checkpoint(truncated);
    FAIL("expected CorruptCheckpoint");
  } catch (const CheckpointError& e) {
    CHECK(e.code() == ErrorCode::CorruptCheckpoint);
    CHECK(e.offset() == truncated.size());
  }

  auto header_only = bytes;
  header_only.resize(10);
  CHECK_THROWS_AS(decode_checkpoint(header_only), CheckpointError);

  auto magic = bytes;
  magic[7] = '2';
  try {
    decode_checkpoint(magic);
    FAIL("expected CorruptCheckpoint");
  } catch (const CheckpointError& e) {
    CHECK(e.offset() == 0);
  }

  auto nan = bytes;
  const double bad = std::nan("");
  std::memcpy(nan.data() + 24 + 8 * 5, &bad, 8);
  try {
    decode_checkpoint(nan);
    FAIL("expected CorruptCheckpoint");
  } catch (const CheckpointError& e) {
    CHECK(e.offset() == 24 + 8 * 5);
  }

  const auto big = encode_checkpoint(MHDState::zero(GridSpec::make(64)), 2);
  try {
    decode_checkpoint(big, 32);
    FAIL("expected GridMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GridMismatch);
    CHECK(std::string(e.what()).find("n=64") != std::string::npos);
  }
  CHECK_THROWS_AS(read_checkpoint(scratch("missing.chk")), Error);
}

TEST_CASE("diag.csv row round trip") {
  const GridSpec g = GridSpec::make(16);
  const auto r = instantaneous(random_state(g, 5, 5, 0.1, true), {2});
  const fs::path p = scratch("diag.csv");
  {
    std::ofstream out(p);
    out << diag_csv_header() << diag_csv_row(r);
  }
  const auto back = read_diag_csv(p);
  REQUIRE(back.size() == 1);
  CHECK(std::memcmp(&back[0], &r, sizeof r) == 0);
  fs::remove(p);
}

TEST_CASE("exit codes") {
  CHECK(exit_code(ErrorCode::UnknownKey) == 2);
  CHECK(exit_code(ErrorCode::GridMismatch) == 2);
  CHECK(exit_code(ErrorCode::NonFiniteState) == 3);
  CHECK(exit_code(ErrorCode::StepTooSmall) == 3);
  CHECK(exit_code(ErrorCode::Io) == 4);
  CHECK(exit_code(ErrorCode::CorruptCheckpoint) == 4);
}

TEST_CASE("simulate: epsilon = 0 gives all-zero norms") {
  RunConfig cfg = parse_config("n=16\ns=2\nepsilon=0\nt_end=0.5\n");
  cfg.outdir = scratch("zero").string();
  const RunSummary sum = simulate(cfg);
  CHECK(sum.status == "ok");
  const auto recs = read_diag_csv(fs::path(cfg.outdir) / "diag.csv");
  CHECK(recs.size() == 6);
  for (const auto& r : recs) {
    for (double v : r.norm_u) CHECK(v == 0.0);
    for (double v : r.norm_b) CHECK(v == 0.0);
  }
  CHECK(fs::exists(fs::path(cfg.outdir) / "summary.txt"));
  CHECK(fs::exists(fs::path(cfg.outdir) / "final.chk"));
  fs::remove_all(cfg.outdir);
}

TEST_CASE("simulate is byte-reproducible and resume matches") {
  RunConfig cfg = parse_config("n=32\ns=2\nepsilon=0.05\nt_end=2\nsnapshot_every=1\n");
  cfg.outdir = scratch("a").string();
  simulate(cfg);
  RunConfig again = cfg;
  again.outdir = scratch("b").string();
  simulate(again);
  const std::string a = slurp(fs::path(cfg.outdir) / "diag.csv");
  CHECK(a == slurp(fs::path(again.outdir) / "diag.csv"));
  CHECK(slurp(fs::path(cfg.outdir) / "summary.txt") == slurp(fs::path(again.outdir) / "summary.txt"));

  RunConfig res = cfg;
  res.outdir = scratch("c").string();
  const fs::path ck = fs::path(cfg.outdir) / "ckpt_00001.000000.chk";
  REQUIRE(fs::exists(ck));
  resume(res, ck);
  const auto full = read_diag_csv(fs::path(cfg.outdir) / "diag.csv");
  const auto tail = read_diag_csv(fs::path(res.outdir) / "diag.csv");
  REQUIRE(tail.size() == 11);
  REQUIRE(full.size() == 21);
  double worst = 0.0;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    const auto& x = full[10 + i];
    const auto& y = tail[i];
    CHECK(x.t == y.t);
    for (int j = 0; j < 4; ++j) worst = std::max(worst, rel(y.norm_u[j], x.norm_u[j]));
    for (int j = 0; j < 5; ++j) worst = std::max(worst, rel(y.norm_b[j], x.norm_b[j]));
  }
  CHECK(worst < 1e-13);

  RunConfig wrong = res;
  wrong.n = 16;
  CHECK_THROWS_AS(resume(wrong, ck), Error);
  for (const auto& d : {cfg.outdir, again.outdir, res.outdir}) fs::remove_all(d);
}

TEST_CASE("simulate reports failures in the summary") {
  RunConfig cfg = parse_config("n=16\ns=2\nepsilon=1e200\nt_end=1\ndt_min=1e-300\n");
  cfg.outdir = scratch("blowup").string();
  CHECK_THROWS_AS(simulate(cfg), StepError);
  const std::string summary = slurp(fs::path(cfg.outdir) / "summary.txt");
  CHECK(summary.find("NonFiniteState") != std::string::npos);
  fs::remove_all(cfg.outdir);
}
