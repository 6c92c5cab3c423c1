#include <doctest.h>

#include <cmath>
#include <string>

#include "oracles.hpp"
#include "specgrowth/errors.hpp"
#include "specgrowth/family.hpp"
#include "specgrowth/growth.hpp"
#include "specgrowth/metrics.hpp"

using namespace specgrowth;

namespace {

template <class Fn>
std::string thrown_message(Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("line growth rate hits the closed form") {
  WeightedGraph g = Family::line().truncate(20, MeasureRule::unit);
  BallTable table = ball_table(g, natural_distance(g, 0), 20, 1.0);
  REQUIRE(table.rows.size() == 21);
  CHECK(table.rows[20].count == 41.0);
  double mu = mu_estimate(table, {10, 20});
  CHECK(mu == doctest::Approx(std::log(41.0) / 20.0).epsilon(1e-14));
}

TEST_CASE("binary tree growth rate approaches log 2") {
  WeightedGraph g =
      Family::tree(SphereProfile::parse("geo:2,2")).truncate(14, MeasureRule::unit);
  BallTable table = ball_table(g, natural_distance(g, 0), 14, 1.0);
  double mu = mu_estimate(table, {10, 14});
  CHECK(mu == doctest::Approx(std::log(std::pow(2.0, 15) - 1.0) / 14.0).epsilon(1e-13));
  CHECK(std::abs(mu - std::log(2.0)) < 0.05);
}

TEST_CASE("analytic tables agree with materialized tables") {
  Family family = Family::antitree(SphereProfile::poly(1));
  WeightedGraph g = family.truncate(8, MeasureRule::unit);
  BallTable direct = ball_table(g, natural_distance(g, 0), 8, 1.0);
  BallTable analytic = family_ball_table(family, 8, MeasureRule::unit);
  REQUIRE(direct.rows.size() == analytic.rows.size());
  for (std::size_t i = 0; i < direct.rows.size(); ++i) {
    CHECK(direct.rows[i].count == analytic.rows[i].count);
    CHECK(direct.rows[i].volume == doctest::Approx(analytic.rows[i].volume));
  }
}

TEST_CASE("ball tables honor fractional steps and inclusion tolerance") {
  WeightedGraph g = Family::line().truncate(4, MeasureRule::unit);
  EdgeLengths halves = unit_lengths(g);
  halves.rule = LengthRule::custom;
  for (double& len : halves.len) len = 0.5;
  BallTable table = ball_table(g, path_metric(g, halves, 0), 2.0, 0.5);
  REQUIRE(table.rows.size() == 5);
  CHECK(table.rows[0].count == 1.0);   // r = 0
  CHECK(table.rows[1].count == 3.0);   // r = 0.5 picks up both neighbors exactly
  CHECK(table.rows[2].count == 5.0);
  CHECK(table.rows[4].count == 9.0);
}

TEST_CASE("growth rate windows must select rows") {
  WeightedGraph g = Family::line().truncate(5, MeasureRule::unit);
  BallTable table = ball_table(g, natural_distance(g, 0), 5, 1.0);
  std::string msg = thrown_message([&] { mu_estimate(table, {10, 20}); });
  CHECK(msg.find("window") != std::string::npos);
}

TEST_CASE("uniform rate on the line uses interior centers") {
  WeightedGraph g = Family::line().truncate(30, MeasureRule::unit);
  MuTildeOptions opts;
  opts.r_max = 10.0;
  MuTildeResult res =
      mu_tilde_estimate(g, unit_lengths(g), {}, {5, 10}, opts);
  // every admissible center sees the same interior profile, min at r = 10
  CHECK(res.value == doctest::Approx(std::log(21.0 / 3.0) / 10.0).epsilon(1e-13));
  CHECK(res.centers_used == 41);  // |k| <= 20
  CHECK(res.centers_skipped == 0);
}

TEST_CASE("explicit uniform-rate centers too close to the boundary are skipped") {
  WeightedGraph g = Family::line().truncate(30, MeasureRule::unit);
  MuTildeOptions opts;
  opts.r_max = 10.0;
  // vertex id 59 is +30, a boundary vertex
  MuTildeResult res = mu_tilde_estimate(g, unit_lengths(g), {0, 59}, {5, 10}, opts);
  CHECK(res.centers_used == 1);
  CHECK(res.centers_skipped == 1);
}

TEST_CASE("no admissible center is a validation error") {
  WeightedGraph g = Family::line().truncate(4, MeasureRule::unit);
  MuTildeOptions opts;
  opts.r_max = 10.0;
  CHECK_THROWS_AS(mu_tilde_estimate(g, unit_lengths(g), {}, {5, 10}, opts),
                  validation_error);
}

TEST_CASE("polynomial fit separates the example families") {
  Window window{50, 200};
  double line = beta_estimate(family_ball_table(Family::line(), 200, MeasureRule::unit),
                              window);
  double p1 = beta_estimate(
      family_ball_table(Family::antitree(SphereProfile::poly(1)), 200, MeasureRule::unit),
      window);
  double p2 = beta_estimate(
      family_ball_table(Family::antitree(SphereProfile::poly(2)), 200, MeasureRule::unit),
      window);
  double p3 = beta_estimate(
      family_ball_table(Family::antitree(SphereProfile::poly(3)), 200, MeasureRule::unit),
      window);
  CHECK(line == doctest::Approx(1.0).epsilon(0.05));
  CHECK(p1 == doctest::Approx(2.0).epsilon(0.05));
  CHECK(p2 == doctest::Approx(3.0).epsilon(0.05));
  CHECK(p3 == doctest::Approx(4.0).epsilon(0.05));
  CHECK(classify_growth(line) == GrowthClass::subcubic);
  CHECK(classify_growth(p1) == GrowthClass::subcubic);
  CHECK(classify_growth(p2) == GrowthClass::cubic);
  CHECK(classify_growth(p3) == GrowthClass::supercubic);
}

TEST_CASE("polynomial fit rejects degenerate windows") {
  BallTable table = family_ball_table(Family::line(), 30, MeasureRule::unit);
  CHECK_THROWS_AS(beta_estimate(table, {1, 10}), validation_error);  // lo below 2
  std::string msg = thrown_message([&] { beta_estimate(table, {28, 29.5}); });
  CHECK(msg.find("3") != std::string::npos);  // needs at least three rows
}

TEST_CASE("cubic ratio peaks at the window edge for the cubic antitree") {
  BallTable table =
      family_ball_table(Family::antitree(SphereProfile::poly(2)), 200, MeasureRule::unit);
  double ratio = cubic_ratio_max(table, {50, 200});
  // |B_50| / 50^3 = (51*52*103/6) / 125000
  CHECK(ratio == doctest::Approx(45526.0 / 125000.0).epsilon(1e-12));
}

TEST_CASE("classification band is symmetric around 3") {
  CHECK(classify_growth(2.79) == GrowthClass::subcubic);
  CHECK(classify_growth(2.81) == GrowthClass::cubic);
  CHECK(classify_growth(3.19) == GrowthClass::cubic);
  CHECK(classify_growth(3.21) == GrowthClass::supercubic);
}
