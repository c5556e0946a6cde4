#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "giantatom/dde.hpp"
#include "giantatom/oracle.hpp"

using namespace giantatom;

namespace {

constexpr double kPi = std::numbers::pi;

SystemParams params(Configuration c, double theta0, Delay delay) {
  SystemParams p;
  p.config = c;
  p.theta0 = theta0;
  p.delay = delay;
  return p;
}

// Window wide enough to push the finite-bandwidth transient below 1e-2.
ModeGrid wide_grid() { return {2001, 250.0}; }

}  // namespace

TEST(ModeGrid, DerivedQuantities) {
  const ModeGrid g;
  EXPECT_EQ(g.n_modes, 4001);
  EXPECT_DOUBLE_EQ(g.half_width, 40.0);
  EXPECT_NEAR(g.spacing(), 0.02, 1e-15);
  EXPECT_NEAR(g.coupling(), std::sqrt(0.02 / (4 * kPi)), 1e-15);
  EXPECT_NEAR(g.detuning(0), -40.0, 1e-12);
  EXPECT_NEAR(g.detuning(2000), 0.0, 1e-12);
  EXPECT_NEAR(g.detuning(4000), 40.0, 1e-12);
  EXPECT_NEAR(g.recurrence_time(), 100 * kPi, 1e-9);
  EXPECT_NO_THROW(g.validate());
}

TEST(ModeGrid, Validation) {
  EXPECT_THROW((ModeGrid{4000, 40.0}.validate()), std::invalid_argument);
  EXPECT_THROW((ModeGrid{1, 40.0}.validate()), std::invalid_argument);
  EXPECT_THROW((ModeGrid{4001, 10.0}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((ModeGrid{3, 20.0}.validate()));
}

TEST(Oracle, Preconditions) {
  const ModeGrid g;
  const CouplingLayout layout = layout_for(Configuration::Separate);
  const auto init = InitialState::plus();
  const SystemParams p = params(Configuration::Separate, 0.0, Delay::finite(0.5));
  EXPECT_THROW(oracle_integrate(params(Configuration::Separate, 0.0, Delay::infinite()), layout, g, init, 1.0, 1e-3),
               std::invalid_argument);
  EXPECT_THROW(oracle_integrate(p, layout, g, init, 1.0, 0.1 / 40.0 * 1.01), std::invalid_argument);
  EXPECT_THROW(oracle_integrate(p, layout, g, init, 0.5 * g.recurrence_time(), 2e-3), std::invalid_argument);
  EXPECT_THROW(oracle_integrate(p, layout, ModeGrid{4000, 40.0}, init, 1.0, 1e-3), std::invalid_argument);
  EXPECT_THROW(calibrate(g, 0.1 / 40.0 * 1.01), std::invalid_argument);
}

TEST(Oracle, CalibrationDefaultGrid) { EXPECT_NEAR(calibrate(ModeGrid{}), 1.0, 0.02); }

TEST(Oracle, CalibrationCoarseGrid) { EXPECT_NEAR(calibrate(ModeGrid{2001, 20.0}), 1.0, 0.05); }

TEST(Oracle, ConservesTotalProbability) {
  const ModeGrid g;
  const SystemParams p = params(Configuration::Nested, kPi / 2, Delay::finite(0.8));
  const OracleRun run = oracle_integrate(p, layout_for(p.config), g, InitialState::minus(), 3.0, 2e-3, 10);
  EXPECT_LT(run.max_norm_drift, 1e-6);
  const AmplitudePair& c = run.trajectory.back();
  EXPECT_NEAR(std::norm(c.a) + std::norm(c.b) + run.modes.population(), 1.0, 1e-6);
  EXPECT_EQ(run.modes.right.size(), static_cast<std::size_t>(g.n_modes));
  EXPECT_EQ(run.modes.left.size(), static_cast<std::size_t>(g.n_modes));
  EXPECT_GT(run.modes.population(), 0.5);
  EXPECT_NEAR(run.trajectory.times.back(), 3.0, 1e-12);
  EXPECT_NEAR(run.trajectory.step, 2e-2, 1e-15);
}

TEST(Oracle, StartsFromVacuumWithGivenAmplitudes) {
  const SystemParams p = params(Configuration::Braided, 0.3, Delay::finite(0.2));
  const auto init = InitialState::phase(0.4);
  const OracleRun run = oracle_integrate(p, layout_for(p.config), ModeGrid{}, init, 0.01, 1e-3);
  EXPECT_EQ(run.trajectory.amplitudes.front().a, init.ca());
  EXPECT_EQ(run.trajectory.amplitudes.front().b, init.cb());
  EXPECT_EQ(run.trajectory.size(), 11u);
}

TEST(Oracle, MatchesDelayEquationOnWideWindow) {
  const SystemParams p = params(Configuration::Separate, kPi, Delay::finite(0.8));
  const OracleComparison cmp = compare_with_dde(p, wide_grid(), InitialState::plus(), 10.0);
  EXPECT_LT(cmp.max_abs_dc, 1e-2);
  EXPECT_LT(cmp.max_norm_drift, 1e-6);
  EXPECT_GT(cmp.samples, 800u);
}

TEST(Oracle, NestedMatchesDelayEquationOnWideWindow) {
  const SystemParams p = params(Configuration::Nested, kPi / 2, Delay::finite(0.2));
  const OracleComparison cmp = compare_with_dde(p, wide_grid(), InitialState::minus(), 10.0);
  EXPECT_LT(cmp.max_abs_dc, 1e-2);
}

TEST(Oracle, DiscrepancyShrinksWithWindow) {
  const SystemParams p = params(Configuration::Braided, 0.0, Delay::finite(0.8));
  const auto init = InitialState::minus();
  const double narrow = compare_with_dde(p, ModeGrid{2001, 40.0}, init, 2.0).max_abs_dc;
  const double wide = compare_with_dde(p, ModeGrid{4001, 80.0}, init, 2.0).max_abs_dc;
  const double wider = compare_with_dde(p, ModeGrid{6401, 160.0}, init, 2.0).max_abs_dc;
  EXPECT_LT(wide, 0.7 * narrow);
  EXPECT_LT(wider, 0.7 * wide);
}
