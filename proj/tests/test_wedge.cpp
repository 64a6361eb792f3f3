#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "iceinfer/wedge.hpp"

using namespace iceinfer;
using Catch::Approx;

namespace {

constexpr double kDeg = kPi / 180.0;

BootstrapScatter scatter_of(std::pair<double, double> observed,
                            const std::vector<std::pair<double, double>>& pts) {
  BootstrapScatter s;
  const ShadowPrice one(1.0);
  s.observed = {observed.first, observed.second, one, Perspective::Alias};
  for (auto [x, y] : pts) s.replicates.push_back({x, y, one, Perspective::Alias});
  return s;
}

BootstrapScatter demo_scatter(std::size_t r, std::uint64_t seed = 42) {
  const auto d = split_arms(generate_demo_data(42));
  return resample(d, r, seed, ShadowPrice(10.0), Perspective::Alias);
}

BootstrapScatter transformed(const BootstrapScatter& s, double rotate,
                             double scale) {
  auto t = s;
  const auto apply = [&](IceOutcome& o) {
    const double x = o.x, y = o.y;
    o.x = scale * (x * std::cos(rotate) - y * std::sin(rotate));
    o.y = scale * (x * std::sin(rotate) + y * std::cos(rotate));
  };
  apply(t.observed);
  for (auto& o : t.replicates) apply(o);
  return t;
}

}  // namespace

TEST_CASE("ice angles of the compass points") {
  CHECK(ice_angle(1, 0) == 0.0);
  CHECK(ice_angle(0, -1) == Approx(-kPi / 2).epsilon(1e-15));
  CHECK(ice_angle(1, -1) == Approx(-kPi / 4).epsilon(1e-15));
  CHECK(ice_angle(-1, 0) == Approx(kPi).epsilon(1e-15));
  try {
    ice_angle(0, 0);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OriginPoint);
  }
}

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(kPi) == Approx(kPi));
  CHECK(wrap_angle(-kPi) == Approx(kPi));
  CHECK(wrap_angle(3 * kPi / 2) == Approx(-kPi / 2));
  CHECK(wrap_angle(-3 * kPi / 2) == Approx(kPi / 2));
  CHECK(wrap_angle(0.25) == 0.25);
}

TEST_CASE("zero-spread scatter has a zero-width wedge") {
  std::vector<std::pair<double, double>> pts;
  for (int i = 1; i <= 200; ++i) pts.push_back({0.5 * i, -1.0 * i});
  const auto w = compute_wedge(scatter_of({1, -2}, pts), 0.95);
  CHECK(w.half_angle == 0.0);
  CHECK(w.count_below == 0);
  CHECK(w.count_above == 0);
  CHECK(w.count_inside == 200);
}

TEST_CASE("symmetric deviations of 1..10 degrees at 90%") {
  const double center = -60 * kDeg;
  std::vector<std::pair<double, double>> pts;
  std::vector<double> mags;
  for (int k = 1; k <= 10; ++k)
    for (int sgn : {-1, 1}) {
      const double a = center + sgn * k * kDeg;
      pts.push_back({std::cos(a), std::sin(a)});
      mags.push_back(k);
    }
  // Oracle: ceil(0.9 * 20) = 18th smallest |deviation|.
  std::sort(mags.begin(), mags.end());
  const double h_deg = mags[17];
  REQUIRE(h_deg == 9.0);

  const auto w =
      compute_wedge(scatter_of({std::cos(center), std::sin(center)}, pts), 0.9);
  CHECK(w.half_angle == Approx(h_deg * kDeg).epsilon(1e-9));
  CHECK(w.count_below == 1);
  CHECK(w.count_above == 1);
  CHECK(w.count_inside == 18);
  CHECK(w.lower() == Approx(center - 9 * kDeg).epsilon(1e-9));
  CHECK(w.upper() == Approx(center + 9 * kDeg).epsilon(1e-9));
}

TEST_CASE("95% wedge over 25000 demo replicates leaves 1250 outside") {
  const auto s = demo_scatter(25000);
  const auto w = compute_wedge(s, 0.95);
  CHECK(w.count_below + w.count_above == 1250);
  CHECK(w.count_inside == 23750);
  CHECK(w.count_origin == 0);
  CHECK(w.count_below + w.count_above + w.count_inside + w.count_origin == w.r);
  CHECK(w.half_angle > 0);
  CHECK(w.half_angle < kPi);
  CHECK(w.contains(w.center));
}

TEST_CASE("wedge coverage is minimal") {
  for (double conf : {0.5, 0.8, 0.9, 0.95, 0.99}) {
    const auto s = demo_scatter(2000, 5);
    const auto w = compute_wedge(s, conf);
    const double r = static_cast<double>(w.r);
    CHECK(w.count_inside / r >= conf);
    // Replicates sitting exactly on a limit.
    std::size_t on_limit = 0;
    for (const auto& o : s.replicates) {
      const double d = std::abs(wrap_angle(ice_angle(o) - w.center));
      if (d == w.half_angle) ++on_limit;
    }
    CHECK(on_limit >= 1);
    CHECK((w.count_inside - on_limit) / r < conf);
  }
}

TEST_CASE("wedge counts are invariant to rotation and uniform scaling") {
  const auto s = demo_scatter(3000, 8);
  const auto base = compute_wedge(s, 0.95);
  for (double rot : {0.3, -1.2, 2.9}) {
    for (double k : {1.0, 0.01, 250.0}) {
      const auto w = compute_wedge(transformed(s, rot, k), 0.95);
      INFO("rot=" << rot << " k=" << k);
      CHECK(w.count_below == base.count_below);
      CHECK(w.count_above == base.count_above);
      CHECK(w.count_inside == base.count_inside);
      CHECK(wrap_angle(w.center - base.center - rot) == Approx(0).margin(1e-9));
      CHECK(w.half_angle == Approx(base.half_angle).epsilon(1e-9));
    }
  }
}

TEST_CASE("wedge errors") {
  std::vector<std::pair<double, double>> ring;
  for (int i = 0; i < 360; ++i)
    ring.push_back({std::cos(i * kDeg), std::sin(i * kDeg)});
  // Wide but still below a half-turn.
  CHECK(compute_wedge(scatter_of({1, 0}, ring), 0.95).half_angle ==
        Approx(171 * kDeg));
  std::vector<std::pair<double, double>> opposite(100, {-1.0, 0.0});
  try {
    compute_wedge(scatter_of({1, 0}, opposite), 0.95);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WedgeDegenerate);
  }
  try {
    compute_wedge(scatter_of({0, 0}, ring), 0.95);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OriginObserved);
  }
  CHECK_THROWS_AS(compute_wedge(scatter_of({1, 0}, ring), 1.0), Error);
  CHECK_THROWS_AS(compute_wedge(scatter_of({1, 0}, ring), 0.4), Error);
}

TEST_CASE("origin replicates are tallied separately and count toward coverage") {
  std::vector<std::pair<double, double>> pts;
  for (int k = 1; k <= 98; ++k) {
    const double a = (k % 2 ? 1 : -1) * k * 0.1 * kDeg;
    pts.push_back({std::cos(a), std::sin(a)});
  }
  pts.push_back({0, 0});
  pts.push_back({0, 0});
  const auto w = compute_wedge(scatter_of({1, 0}, pts), 0.9);
  CHECK(w.count_origin == 2);
  CHECK(w.count_inside + w.count_origin >= 90);
  CHECK(w.count_inside == 88);
  CHECK(w.count_below + w.count_above + w.count_inside + w.count_origin == 100);
}

TEST_CASE("equal-tail wedge splits the excluded replicates evenly") {
  const auto s = demo_scatter(2001, 3);
  const auto w = compute_wedge(s, 0.95, TailRule::Equal);
  const std::size_t outside = w.r - required_inside(0.95, w.r);
  CHECK(w.count_below + w.count_above == outside);
  CHECK(std::max(w.count_below, w.count_above) -
            std::min(w.count_below, w.count_above) <=
        1);
  CHECK(w.lower_dev <= 0);
  CHECK(w.upper_dev >= 0);
  CHECK(w.tails == TailRule::Equal);
}

TEST_CASE("quadrant counts") {
  auto q = quadrant_counts(scatter_of({1, -1}, {{1, -1}, {1, 1}, {-1, 1}, {-1, -1}}));
  CHECK(q.se == 1);
  CHECK(q.ne == 1);
  CHECK(q.nw == 1);
  CHECK(q.sw == 1);
  CHECK(q.boundary == 0);

  q = quadrant_counts(scatter_of({1, -1}, {{0, 1}, {0, -2}, {0, 3}}));
  CHECK(q.boundary == 3);
  CHECK(q.total() == 3);

  const auto demo = demo_scatter(5000);
  q = quadrant_counts(demo);
  CHECK(q.total() == 5000);
  CHECK(q.se / 5000.0 > 0.5);
}
