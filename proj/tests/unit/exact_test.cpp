#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "sis/error.hpp"
#include "sis/exact.hpp"
#include "sis/noise.hpp"
#include "sis/params.hpp"

namespace {

sis::SisParams p1() { return sis::validate_params({100, 0.5, 25, 0.02, 10}); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(DeterministicSolution, InitialValue) {
  const auto tr = sis::deterministic_solution(p1(), sis::TimeGrid(1.0, 8));
  EXPECT_EQ(tr.states[0], 10.0);
  EXPECT_EQ(tr.states.size(), 9u);
  EXPECT_EQ(tr.provenance.method, "deterministic");
}

TEST(DeterministicSolution, ShortTimeValueMatchesRk4) {
  const auto p = sis::validate_params({100, 0.5, 25, 0, 1});
  const double ref = sis::testing::sis_reference(100, 0.5, 25, 1, 0.1);
  EXPECT_NEAR(ref, 9.9559, 5e-5);
  EXPECT_LT(rel(std::exp(sis::deterministic_value(p, 0.1)), ref), 1e-8);
}

TEST(DeterministicSolution, LongTimeLimit) {
  const auto tr = sis::deterministic_solution(p1(), sis::TimeGrid(200.0, 4));
  EXPECT_NEAR(tr.terminal(), 50.0, 1e-6);
}

TEST(DeterministicSolution, ThresholdBranchMatchesRk4) {
  const auto p = sis::validate_params({100, 0.25, 25, 0, 30});
  for (double t : {0.01, 0.5, 3.0}) {
    const double ref = sis::testing::sis_reference(100, 0.25, 25, 30, t);
    EXPECT_LT(rel(std::exp(sis::deterministic_value(p, t)), ref), 1e-8) << t;
  }
}

TEST(DeterministicSolution, ExtinctRegimeInLogDomain) {
  const auto p = sis::validate_params({100, 0.2, 25, 0, 10});
  const auto tr = sis::deterministic_solution(p, sis::TimeGrid(400.0, 4));
  // ln I(t) ~ delta t for large t, far below the double range.
  EXPECT_NEAR(tr.log_state(4) / 400.0, -5.0, 0.01);
  EXPECT_GT(tr.terminal(), 0.0);
}

TEST(StratonovichExact, SigmaZeroCollapse) {
  const auto p = p1().with_sigma(0.0);
  const auto path = sis::sample_path(sis::TimeGrid(1.0, 256), 3);
  const auto ex = sis::stratonovich_exact(p, path);
  const auto det = sis::deterministic_solution(p, path.grid());
  for (std::size_t k = 0; k < ex.states.size(); ++k) EXPECT_LT(rel(ex.states[k], det.states[k]), 1e-10);
}

TEST(StratonovichExact, InitialValue) {
  const auto path = sis::sample_path(sis::TimeGrid(1.0, 16), 3);
  EXPECT_EQ(sis::stratonovich_exact(p1(), path).states[0], 10.0);
}

TEST(StratonovichExact, NestedGridSelfConvergence) {
  const auto coarse = sis::sample_path(sis::TimeGrid(1.0, 1u << 16), 17);
  const auto fine = sis::refine_bridge(coarse, 2);
  const auto a = sis::stratonovich_exact(p1(), coarse);
  const auto b = sis::stratonovich_exact(p1(), fine);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.states.size(); ++k) worst = std::max(worst, rel(a.states[k], b.states[4 * k]));
  EXPECT_LT(worst, 5e-3);
}

TEST(WongZakaiExact, SigmaZeroCollapse) {
  const auto p = p1().with_sigma(0.0);
  const auto path = sis::sample_path(sis::TimeGrid(1.0, 64), 9);
  const auto wz = sis::wong_zakai_exact(p, path);
  const auto det = sis::deterministic_solution(p, path.grid());
  for (std::size_t k = 0; k < wz.states.size(); ++k) EXPECT_LT(rel(wz.states[k], det.states[k]), 1e-12);
}

TEST(WongZakaiExact, SingleCellIsConstantRateSis) {
  const sis::TimeGrid g(0.5, 1);
  const auto path = sis::path_from_values(g, {0.0, 0.7});
  const auto p = p1();
  const auto wz = sis::wong_zakai_exact(p, path);
  const double beta_eff = p.beta() + p.sigma() * 0.7 / 0.5;
  const auto q = sis::validate_params({p.N(), beta_eff, p.mu_plus_gamma(), 0, p.i0()});
  EXPECT_LT(rel(wz.terminal(), std::exp(sis::deterministic_value(q, 0.5))), 1e-10);
  const double ref = sis::testing::sis_reference(p.N(), beta_eff, p.mu_plus_gamma(), p.i0(), 0.5);
  EXPECT_LT(rel(wz.terminal(), ref), 1e-8);
}

TEST(WongZakaiBeta, Values) {
  const sis::TimeGrid g(0.02, 2);
  const auto path = sis::path_from_values(g, {0.0, 0.1, 0.05});
  const auto b = sis::wong_zakai_beta(p1(), path);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_NEAR(b[0], 0.5 + 0.02 * 10.0, 1e-12);
  EXPECT_NEAR(b[1], 0.5 - 0.02 * 5.0, 1e-12);
}

TEST(TimeVaryingDeterministic, ConstantRate) {
  const sis::TimeGrid g(1.0, 32);
  const std::vector<double> beta(32, 0.5);
  const auto tv = sis::time_varying_deterministic(p1(), beta, g);
  const auto det = sis::deterministic_solution(p1(), g);
  for (std::size_t k = 0; k < tv.states.size(); ++k) EXPECT_LT(rel(tv.states[k], det.states[k]), 1e-12);
}

TEST(TimeVaryingDeterministic, AgreesWithWongZakai) {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const auto path = sis::sample_path(sis::TimeGrid(1.0, 512), seed);
    const auto wz = sis::wong_zakai_exact(p1(), path);
    const auto tv = sis::time_varying_deterministic(p1(), sis::wong_zakai_beta(p1(), path), path.grid());
    for (std::size_t k = 0; k < wz.states.size(); ++k) EXPECT_LT(rel(tv.states[k], wz.states[k]), 1e-10);
  }
}

TEST(TimeVaryingDeterministic, RejectsWrongLength) {
  const std::vector<double> beta(3, 0.5);
  EXPECT_THROW(sis::time_varying_deterministic(p1(), beta, sis::TimeGrid(1.0, 4)), sis::Error);
}

TEST(ExactSolutions, MonotoneInInitialState) {
  const auto path = sis::sample_path(sis::TimeGrid(1.0, 128), 21);
  std::vector<double> prev;
  for (double i0 : {20.0, 5.0, 1.0, 1e-3, 1e-9, 1e-20}) {
    const auto tr = sis::stratonovich_exact(p1().with_i0(i0), path);
    if (!prev.empty()) {
      for (std::size_t k = 0; k < tr.states.size(); ++k) EXPECT_LT(tr.states[k], prev[k]);
    }
    prev = tr.states;
  }
  for (double x : prev) EXPECT_LT(x, 1e-8);
}

TEST(ExactSolutions, InteriorForStrongNoise) {
  for (double sigma : {0.02, 0.1, 0.5}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto path = sis::sample_path(sis::TimeGrid(5.0, 1024), seed);
      for (const auto& tr : {sis::stratonovich_exact(p1().with_sigma(sigma), path),
                             sis::wong_zakai_exact(p1().with_sigma(sigma), path)}) {
        for (double x : tr.states) {
          EXPECT_GT(x, 0.0);
          EXPECT_LT(x, 100.0);
        }
        ASSERT_TRUE(tr.has_log_states());
      }
    }
  }
}

}  // namespace
