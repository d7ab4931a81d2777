#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "swipt/audit.hpp"
#include "swipt/config_io.hpp"
#include "swipt/csv.hpp"
#include "swipt/errors.hpp"
#include "swipt/format.hpp"
#include "swipt/sweep.hpp"

using namespace swipt;

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

SystemConfig small_config() {
  SystemConfig c = reference_config(3, 1);
  c.trials = 3;
  c.ebar_grid_size = 5;
  c.schemes = {Scheme::MEB, Scheme::SLER_TILT};
  return c;
}

}  // namespace

TEST_CASE("config parsing overrides defaults and rejects unknown keys") {
  const SystemConfig c = parse_config(R"({"k": 3, "k1": 2, "alpha_cross": 0.4,
      "scheme": ["meb", "SLER"], "solver": {"outer_max_iterations": 7}})");
  CHECK(c.k == 3);
  CHECK(c.link_weights()(0, 1) == 0.4);
  CHECK(c.link_weights()(2, 2) == 1.0);
  CHECK(c.schemes == std::vector<Scheme>{Scheme::MEB, Scheme::SLER});
  CHECK(c.solver.outer_max_iterations == 7);
  CHECK(c.p_max == 0.05);

  auto field_of = [](const char* text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  CHECK(field_of(R"({"kk": 2})") == "kk");
  CHECK(field_of(R"({"solver": {"tol": 1}})") == "solver.tol");
  CHECK(field_of(R"({"k": 2.5})") == "k");
  CHECK(field_of(R"({"k1": 5})") == "k1");
  CHECK(field_of(R"({"scheme": "XYZ"})") == "scheme");
  CHECK(field_of(R"({"alpha": [[1, 0.5]]})") == "alpha");
  CHECK(field_of(R"({"seed": -1})") == "seed");
  CHECK(field_of("[1, 2]") == "<document>");
  CHECK(field_of("{") == "<document>");
}

TEST_CASE("canonical dump parses back to the same fingerprint") {
  SystemConfig c = small_config();
  c.seed = 123456789012345ull;
  c.noise_power = 1.2345678901234567e-7;
  const SystemConfig back = parse_config(dump_config(c));
  CHECK(dump_config(back) == dump_config(c));
  CHECK(config_fingerprint(back) == config_fingerprint(c));
  SystemConfig d = c;
  d.parallelism = 8;
  CHECK(config_fingerprint(d) == config_fingerprint(c));
  d.seed += 1;
  CHECK(config_fingerprint(d) != config_fingerprint(c));
}

TEST_CASE("sweep output is independent of the worker count") {
  SystemConfig c = small_config();
  c.select_eh = true;
  const std::string serial = csv_text(run_sweep(c).curves);
  c.parallelism = 4;
  CHECK(csv_text(run_sweep(c).curves) == serial);
  CHECK(csv_text(run_sweep(c).curves) == serial);
}

TEST_CASE("sweep curves: order, feasibility and monotone averages") {
  SystemConfig c = small_config();
  SweepOptions o;
  o.keep_trials = true;
  const SweepResult r = run_sweep(c, o);
  REQUIRE(r.curves.size() == 4);
  CHECK(r.curves[0].scheme == "MEB");
  CHECK(r.curves[1].scheme == "TS_MEB");
  CHECK(r.curves[3].scheme == "TS_SLER_TILT");
  CHECK(r.diagnostics.feasibility_violations == 0);
  CHECK(r.diagnostics.infeasible_points == 0);
  CHECK(r.trials.size() == 3);
  for (const auto& curve : r.curves) {
    for (std::size_t g = 1; g < curve.points.size(); ++g) {
      CHECK(curve.points[g].ebar_normalized > curve.points[g - 1].ebar_normalized);
      CHECK(curve.points[g].rate_bits <= curve.points[g - 1].rate_bits + 1e-9);
      CHECK(curve.points[g].energy_watts >= curve.points[g].ebar_watts * (1 - 1e-9));
    }
  }
  // Time-sharing endpoints coincide with the optimizer's end points.
  for (std::size_t c0 : {0u, 2u}) {
    const auto& opt = r.curves[c0].points;
    const auto& ts = r.curves[c0 + 1].points;
    CHECK(ts.front().rate_bits == doctest::Approx(opt.front().rate_bits).epsilon(1e-9));
    CHECK(ts.back().rate_bits == doctest::Approx(opt.back().rate_bits).epsilon(1e-6));
    CHECK(ts.back().energy_watts == doctest::Approx(opt.back().energy_watts).epsilon(1e-9));
  }
}

TEST_CASE("common grid marks targets above a scheme's ceiling infeasible") {
  SystemConfig c = small_config();
  c.schemes = {Scheme::MEB, Scheme::MLB};
  SweepOptions o;
  o.grid_reference = Scheme::MEB;
  o.time_sharing = false;
  const SweepResult r = run_sweep(c, o);
  CHECK(r.curves[0].points.back().trials == 3);
  CHECK(r.curves[1].points.back().trials < 3);
  CHECK(r.diagnostics.infeasible_points > 0);
}

TEST_CASE("absolute grid is shared by every trial") {
  SystemConfig c = small_config();
  c.ebar_grid_size = 5;
  SweepOptions o;
  o.grid_watts = 40e-6;
  o.time_sharing = false;
  o.keep_trials = true;
  const SweepResult r = run_sweep(c, o);
  for (const TrialRecord& rec : r.trials) {
    for (std::size_t g = 0; g < rec.curves[0].size(); ++g) {
      CHECK(rec.curves[0][g].ebar == doctest::Approx(10e-6 * static_cast<double>(g)));
    }
  }
  CHECK(r.curves[0].points[4].ebar_watts == doctest::Approx(40e-6));
  o.grid_reference = Scheme::MEB;
  CHECK_THROWS_AS(run_sweep(c, o), InvalidArgument);
  o.grid_reference.reset();
  o.grid_watts = -1.0;
  CHECK_THROWS_AS(run_sweep(c, o), InvalidArgument);
}

TEST_CASE("a fixed realization sweeps one trial") {
  SystemConfig c = small_config();
  c.trials = 1;
  SweepOptions o;
  o.channels = generate_channels(c, 0);
  CHECK(csv_text(run_sweep(c, o).curves) == csv_text(run_sweep(c).curves));
  c.trials = 2;
  CHECK_THROWS_AS(run_sweep(c, o), InvalidArgument);
}

TEST_CASE("csv contract") {
  RECurve curve;
  curve.scheme = "SLER";
  curve.seed = 42;
  CurvePoint p;
  p.ebar_normalized = 0.1;
  p.ebar_watts = 1.0 / 3.0;
  p.rate_bits = 12.000000000000002;
  p.energy_watts = 2.5e-5;
  p.powers = {0.05, 1e-300};
  p.trials = 100;
  curve.points.push_back(p);
  const std::string text = csv_text({curve});
  std::stringstream ss(text);
  std::string header, row, extra;
  std::getline(ss, header);
  std::getline(ss, row);
  CHECK_FALSE(std::getline(ss, extra));
  CHECK(header ==
        "scheme,ebar_normalized,ebar_watts_mean,rate_bits_mean,energy_watts_mean,"
        "power_tx1_mean,power_tx2_mean,trials,seed");
  const auto cells = split(row);
  REQUIRE(cells.size() == 9);
  CHECK(parse_double(cells[2]) == p.ebar_watts);
  CHECK(parse_double(cells[3]) == p.rate_bits);
  CHECK(parse_double(cells[6]) == 1e-300);
  CHECK(format_double(parse_double(cells[3])) == cells[3]);
  CHECK(cells[7] == "100");
  CHECK(cells[8] == "42");
}

TEST_CASE("csv round-trips a sweep exactly") {
  const SweepResult r = run_sweep(small_config());
  const std::string text = csv_text(r.curves);
  std::stringstream ss(text);
  std::string line;
  std::getline(ss, line);
  std::size_t row = 0;
  while (std::getline(ss, line)) {
    const auto cells = split(line);
    const auto& pt = r.curves[row / 5].points[row % 5];
    CHECK(parse_double(cells[3]) == pt.rate_bits);
    CHECK(parse_double(cells[4]) == pt.energy_watts);
    for (std::size_t i = 1; i + 2 < cells.size(); ++i) CHECK(format_double(parse_double(cells[i])) == cells[i]);
    ++row;
  }
  CHECK(row == 20);
}

TEST_CASE("emit_csv errors") {
  const auto dir = std::filesystem::temp_directory_path() / "swipt_csv_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "empty.csv";
  std::filesystem::remove(path);
  CHECK_THROWS_AS(emit_csv({}, path), InvalidArgument);
  CHECK_FALSE(std::filesystem::exists(path));
  RECurve no_points;
  CHECK_THROWS_AS(emit_csv({no_points}, path), InvalidArgument);
  CHECK_FALSE(std::filesystem::exists(path));
  RECurve one;
  one.points.push_back(CurvePoint{});
  CHECK_THROWS_AS(emit_csv({one}, dir / "missing" / "x.csv"), IoError);
  emit_csv({one}, path);
  std::ifstream in(path);
  std::string a, b, c;
  std::getline(in, a);
  std::getline(in, b);
  CHECK_FALSE(std::getline(in, c));
}

TEST_CASE("small audits pass") {
  SystemConfig c = reference_config(2, 1);
  c.ebar_grid_size = 5;
  AuditOptions o;
  o.rank_draws = 3;
  o.rank_candidates = 300;
  o.ordering_draws = 100;
  o.gradient_instances = 6;
  o.waterfill_instances = 3;
  o.monotone_trials = 3;
  for (const auto& r : run_audits(c, o)) {
    INFO(r.name << " violation " << r.max_violation);
    CHECK(r.pass);
    CHECK(r.instances > 0);
  }
}
