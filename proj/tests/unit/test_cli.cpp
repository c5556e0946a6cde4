#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "app.hpp"
#include "commands.hpp"
#include "presets.hpp"
#include "run_spec.hpp"
#include "table.hpp"

using namespace giantatom;
using namespace giantatom::cli;

namespace {

constexpr double kPi = std::numbers::pi;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "giantatom");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  ADD_FAILURE() << "missing column " << name;
  return 0;
}

class ScopedThreads {
 public:
  explicit ScopedThreads(const char* n) { ::setenv("GIANTATOM_THREADS", n, 1); }
  ~ScopedThreads() { ::unsetenv("GIANTATOM_THREADS"); }
};

}  // namespace

TEST(Parsing, Angles) {
  EXPECT_DOUBLE_EQ(parse_angle("1.0pi"), kPi);
  EXPECT_DOUBLE_EQ(parse_angle("pi"), kPi);
  EXPECT_DOUBLE_EQ(parse_angle("-pi"), -kPi);
  EXPECT_DOUBLE_EQ(parse_angle("0.5pi"), kPi / 2);
  EXPECT_DOUBLE_EQ(parse_angle("2*pi"), 2 * kPi);
  EXPECT_DOUBLE_EQ(parse_angle("1.25"), 1.25);
  EXPECT_THROW(parse_angle("abc"), ValidationError);
  EXPECT_THROW(parse_angle("1.0pix"), ValidationError);
  EXPECT_THROW(parse_angle(""), ValidationError);
}

TEST(Parsing, DelaysAndNumbers) {
  EXPECT_TRUE(parse_delay("inf").is_infinite());
  EXPECT_DOUBLE_EQ(parse_delay("0.8").value(), 0.8);
  EXPECT_TRUE(parse_delay("0").is_zero());
  EXPECT_THROW(parse_delay("-1"), ValidationError);
  EXPECT_THROW(parse_delay("nan"), ValidationError);
  EXPECT_DOUBLE_EQ(parse_real("-2.5"), -2.5);
  EXPECT_THROW(parse_real("1e400"), ValidationError);
  EXPECT_THROW(parse_real("3x"), ValidationError);
}

TEST(Parsing, Enumerations) {
  EXPECT_EQ(parse_init("minus"), InitKind::Minus);
  EXPECT_EQ(parse_format("json"), OutputFormat::Json);
  EXPECT_EQ(parse_kind("trajectory"), SweepKind::Trajectory);
  EXPECT_EQ(parse_sweep_parameter("phi"), SweepParameter::Phi);
  EXPECT_THROW(parse_init("up"), ValidationError);
  EXPECT_THROW(parse_sweep_parameter("gamma"), ValidationError);
  EXPECT_THROW(parse_format("xml"), ValidationError);
}

TEST(Formatting, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(0.16), "0.16");
  EXPECT_EQ(format_double(1.0 / 3.0), "0.3333333333333333");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_delay(Delay::infinite()), "inf");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(RunSpecTest, Validation) {
  RunSpec spec;
  EXPECT_NO_THROW(spec.validate());
  spec.t_max = -1;
  EXPECT_THROW(spec.validate(), ValidationError);
  spec = RunSpec{};
  spec.sweep = SweepAxis{SweepParameter::Delay, 0.0, 1.0, 1};
  EXPECT_THROW(spec.validate(), ValidationError);
  spec.sweep->count = 3;
  EXPECT_NO_THROW(spec.validate());
  EXPECT_EQ(spec.sweep->values(), (std::vector<double>{0.0, 0.5, 1.0}));
}

TEST(CsvWriter, QuotesWhenNeeded) {
  Table t{{"a", "b"}, {{std::string("x,y"), 1.5}, {std::monostate{}, std::string("q\"")}}};
  std::ostringstream out;
  write_csv(out, t);
  EXPECT_EQ(out.str(), "a,b\n\"x,y\",1.5\n,\"q\"\"\"\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({"simulate", "--config", "spiral"}).code, kExitValidation);
  EXPECT_EQ(invoke({"simulate", "--delay", "-3"}).code, kExitValidation);
  EXPECT_EQ(invoke({"simulate", "--bogus"}).code, kExitValidation);
  EXPECT_EQ(invoke({"sweep"}).code, kExitValidation);
  EXPECT_EQ(invoke({"sweep", "--preset", "fig9"}).code, kExitValidation);
  EXPECT_EQ(invoke({"oracle-check", "--delay", "inf"}).code, kExitValidation);
  EXPECT_EQ(invoke({"simulate", "--tmax", "1", "-o", "/nonexistent-dir/x.csv"}).code, kExitError);
  EXPECT_EQ(invoke({"simulate", "--tmax", "1"}).code, kExitOk);
}

TEST(Cli, SimulateSeparateSteadyExample) {
  const Result r = invoke({"simulate", "--config", "separate", "--theta0", "1.0pi", "--delay", "0.8", "--init",
                           "plus", "--tmax", "15"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_GT(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"gamma_t", "re_ca", "im_ca", "re_cb", "im_cb", "concurrence"}));
  EXPECT_DOUBLE_EQ(std::stod(rows.back()[0]), 15.0);
  EXPECT_NEAR(std::stod(rows.back()[5]), 1.0 / (1.8 * 1.8), 1e-3);
}

TEST(Cli, SimulateBraidedExchangePeriod) {
  const Result r = invoke({"simulate", "--config", "braided", "--theta0", "0.5pi", "--delay", "0", "--delta", "1",
                           "--init", "plus", "--tmax", "10"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_csv(r.out);
  std::vector<double> t;
  std::vector<double> c;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    t.push_back(std::stod(rows[i][0]));
    c.push_back(std::stod(rows[i][5]));
  }
  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    if (c[i] > c[i - 1] && c[i] >= c[i + 1]) {
      // Parabolic refinement of the local maximum.
      const double h = t[i] - t[i - 1];
      const double d = c[i - 1] - 2 * c[i] + c[i + 1];
      peaks.push_back(t[i] + 0.5 * h * (c[i - 1] - c[i + 1]) / d);
    }
  }
  ASSERT_GE(peaks.size(), 3u);
  const double period = (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
  EXPECT_NEAR(period, kPi / std::sqrt(2.0), 0.01 * kPi / std::sqrt(2.0));
}

TEST(Cli, InfiniteDelayDecay) {
  const Result r = invoke({"simulate", "--config", "nested", "--theta0", "0.3", "--delay", "inf", "--init", "minus",
                           "--tmax", "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_csv(r.out);
  double worst = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    worst = std::max(worst, std::abs(std::stod(rows[i][5]) - std::exp(-2.0 * std::stod(rows[i][0]))));
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(Cli, SimulateSampling) {
  const Result r = invoke({"simulate", "--delay", "0.5", "--tmax", "2", "--sample-dt", "0.5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[1][0], "0");
  EXPECT_EQ(rows[3][0], "1");
  EXPECT_EQ(rows[5][0], "2");
}

// Nested steady concurrence at theta0 = (2m+1) pi as a function of phi.
TEST(Cli, NestedPhaseSweepMatchesClosedExpression) {
  const Result r = invoke({"sweep", "--param", "phi", "--from", "0", "--to", "2pi", "--count", "101", "--config",
                           "nested", "--theta0", "1.0pi", "--delay", "0.3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 102u);
  const auto& header = rows[0];
  const std::size_t phi_col = column(header, "phi");
  const std::size_t dde_col = column(header, "dde_concurrence");
  const std::size_t fv_col = column(header, "final_value");
  const double td = 0.3;
  const double den = 1 + 4 * td + 2 * td * td;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double phi = std::stod(rows[i][phi_col]);
    const std::complex<double> e = std::polar(1.0, phi);
    const double f = std::abs((td * (e + 1.0) + 1.0) * (td * (3.0 * std::conj(e) + 1.0) + std::conj(e)));
    const double expected = f / (den * den);
    EXPECT_NEAR(std::stod(rows[i][dde_col]), expected, 1e-3) << "phi=" << phi;
    EXPECT_NEAR(std::stod(rows[i][fv_col]), expected, 1e-3) << "phi=" << phi;
    EXPECT_EQ(rows[i][column(header, "init")], "phase");
  }
}

TEST(Presets, MatchCaptionGrids) {
  std::set<std::string> names;
  for (auto n : preset_names()) names.insert(std::string(n));
  for (const char* n : {"fig2", "fig3", "fig3g", "fig4", "fig5", "fig5g", "fig6", "fig7"}) {
    EXPECT_TRUE(names.count(n)) << n;
  }

  for (const char* name : {"fig2", "fig5"}) {
    const Preset p = make_preset(name);
    EXPECT_EQ(p.kind, SweepKind::Trajectory);
    std::set<double> delays;
    std::set<double> thetas;
    for (const auto& pt : p.points) {
      delays.insert(pt.params.delay.value());
      thetas.insert(pt.params.theta0);
      EXPECT_EQ(pt.params.config, std::string(name) == "fig2" ? Configuration::Separate : Configuration::Nested);
    }
    EXPECT_EQ(delays, (std::set<double>{0.0, 0.8, std::numeric_limits<double>::infinity()}));
    EXPECT_EQ(thetas.size(), 81u);
    EXPECT_DOUBLE_EQ(*thetas.begin(), 0.0);
    EXPECT_DOUBLE_EQ(*thetas.rbegin(), 4 * kPi);
  }

  for (const auto& pt : make_preset("fig6").points) EXPECT_EQ(pt.params.delay.value(), 0.03);
  for (const auto& pt : make_preset("fig7").points) {
    EXPECT_EQ(pt.params.delay.value(), 0.3);
    EXPECT_EQ(pt.init, InitKind::Phase);
  }
  for (const auto& pt : make_preset("fig3g").points) EXPECT_EQ(pt.panel, "g");
  EXPECT_EQ(make_preset("fig3g").kind, SweepKind::Steady);
  EXPECT_THROW(make_preset("fig1"), ValidationError);
  EXPECT_EQ(linspace(0, 1, 5), (std::vector<double>{0, 0.25, 0.5, 0.75, 1}));
}

TEST(Presets, Fig3gBranches) {
  RunSpec spec;
  spec.preset = "fig3g";
  const Table t = sweep_table(spec);
  const std::size_t dde = column(t.columns, "dde_concurrence");
  const std::size_t closed = column(t.columns, "closed_form");
  const std::size_t delay = column(t.columns, "delay");
  ASSERT_FALSE(t.rows.empty());
  for (const auto& row : t.rows) {
    const double td = std::stod(std::get<std::string>(row[delay]));
    if (td == 0.0) continue;
    ASSERT_TRUE(std::holds_alternative<double>(row[closed]));
    EXPECT_NEAR(std::get<double>(row[dde]), std::get<double>(row[closed]), 5e-3) << "td=" << td;
  }
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
  RunSpec spec;
  spec.params.config = Configuration::Braided;
  spec.params.delay = Delay::finite(0.4);
  spec.init = InitKind::Minus;
  spec.sweep = SweepAxis{SweepParameter::Theta0, 0.0, 2 * kPi, 9};
  spec.kind = SweepKind::Trajectory;
  spec.t_max = 3.0;
  spec.sample_dt = 0.1;
  std::string one;
  std::string three;
  {
    ScopedThreads t("1");
    std::ostringstream out;
    write_csv(out, sweep_table(spec));
    one = out.str();
  }
  {
    ScopedThreads t("3");
    std::ostringstream out;
    write_csv(out, sweep_table(spec));
    three = out.str();
  }
  EXPECT_EQ(one, three);
  EXPECT_EQ(parse_csv(one).size(), 1u + 9u * 31u);
}

TEST(Cli, JsonOutputCarriesMeta) {
  const auto path = std::filesystem::temp_directory_path() / "giantatom_cli_meta.json";
  const Result r = invoke({"simulate", "--tmax", "1", "--format", "json", "-o", path.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  EXPECT_EQ(doc["meta"]["command"], "simulate");
  EXPECT_FALSE(doc["meta"]["version"].get<std::string>().empty());
  EXPECT_EQ(doc["meta"]["spec"]["t_max"], 1.0);
  ASSERT_FALSE(doc["rows"].empty());
  EXPECT_TRUE(doc["rows"][0].contains("concurrence"));
  std::filesystem::remove(path);
}

TEST(Table1, ExampleRows) {
  const CheckResult r = table1(Table1Options{});
  const auto& cols = r.table.columns;
  const std::size_t config = column(cols, "config");
  const std::size_t init = column(cols, "init");
  const std::size_t theta = column(cols, "theta0");
  const std::size_t delay = column(cols, "delay");
  const std::size_t closed = column(cols, "closed_form");
  const std::size_t dde = column(cols, "dde");
  EXPECT_EQ(r.table.rows.size(), 3u * 2u * 3u * 5u);
  int seen = 0;
  for (const auto& row : r.table.rows) {
    const auto& cfg = std::get<std::string>(row[config]);
    const auto& st = std::get<std::string>(row[init]);
    const double th = std::get<double>(row[theta]);
    const double td = std::get<double>(row[delay]);
    if (cfg == "separate" && st == "minus" && th == 0.0 && td == 0.5) {
      EXPECT_NEAR(std::get<double>(row[closed]), 0.16, 1e-12);
      EXPECT_NEAR(std::get<double>(row[dde]), 0.16, 1e-3);
      ++seen;
    }
    if (cfg == "braided" && st == "minus" && th == kPi && td == 0.0) {
      EXPECT_NEAR(std::get<double>(row[closed]), 0.135335, 1e-6);
      EXPECT_NEAR(std::get<double>(row[dde]), 0.135335, 1e-6);
      ++seen;
    }
    if (cfg == "nested" && st == "plus" && th == kPi / 2 && td == 0.0) {
      EXPECT_NEAR(std::get<double>(row[dde]), std::get<double>(row[closed]), 1e-6);
      ++seen;
    }
  }
  EXPECT_EQ(seen, 3);
}
