#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "iceinfer/bootstrap.hpp"

using namespace iceinfer;
using Catch::Approx;

namespace {

TwoArmData constant_arms() {
  std::vector<PatientRecord> rows;
  for (int i = 0; i < 5; ++i) rows.push_back({Arm::Std, 1.0, 10.0});
  for (int i = 0; i < 7; ++i) rows.push_back({Arm::New, 2.0, 5.0});
  return split_arms(rows);
}

bool same_points(const BootstrapScatter& a, const BootstrapScatter& b) {
  if (a.r() != b.r()) return false;
  for (std::size_t i = 0; i < a.r(); ++i)
    if (a.replicates[i].x != b.replicates[i].x ||
        a.replicates[i].y != b.replicates[i].y)
      return false;
  return a.observed.x == b.observed.x && a.observed.y == b.observed.y;
}

std::vector<double> coord(const BootstrapScatter& s, bool x) {
  std::vector<double> v;
  for (const auto& o : s.replicates) v.push_back(x ? o.x : o.y);
  return v;
}

}  // namespace

TEST_CASE("resampling constant arms reproduces the observed outcome") {
  const auto d = constant_arms();
  for (auto p : {Perspective::Alias, Perspective::Alibi}) {
    const auto s = resample(d, 200, 99, ShadowPrice(10.0), p);
    const auto expected = standardize(1.0, -5.0, ShadowPrice(10.0), p);
    CHECK(s.observed.x == expected.x);
    CHECK(s.observed.y == expected.y);
    for (const auto& o : s.replicates) {
      REQUIRE(o.x == expected.x);
      REQUIRE(o.y == expected.y);
      REQUIRE(o.perspective == p);
      REQUIRE(o.lambda.value() == 10.0);
    }
  }
}

TEST_CASE("fewer than 100 replications is rejected") {
  try {
    resample(constant_arms(), 99, 1, ShadowPrice(1.0), Perspective::Alias);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadReplicationCount);
  }
}

TEST_CASE("resample is deterministic across calls and thread counts") {
  const auto d = split_arms(generate_demo_data(42));
  const auto a = resample(d, 3000, 42, ShadowPrice(10.0), Perspective::Alias, 1);
  const auto b = resample(d, 3000, 42, ShadowPrice(10.0), Perspective::Alias, 1);
  const auto c = resample(d, 3000, 42, ShadowPrice(10.0), Perspective::Alias, 5);
  const auto e = resample(d, 3000, 43, ShadowPrice(10.0), Perspective::Alias, 1);
  CHECK(same_points(a, b));
  CHECK(same_points(a, c));
  CHECK_FALSE(same_points(a, e));
  // A prefix of a longer run is the shorter run.
  const auto longer = resample(d, 4000, 42, ShadowPrice(10.0), Perspective::Alias);
  for (std::size_t i = 0; i < a.r(); ++i) REQUIRE(longer.replicates[i].x == a.replicates[i].x);
}

TEST_CASE("demo scatter is centred on the observed outcome") {
  const auto d = split_arms(generate_demo_data(42));
  const auto s = resample(d, 25000, 42, ShadowPrice(10.0), Perspective::Alias);
  for (bool x : {true, false}) {
    const auto v = coord(s, x);
    const double mean = sample_mean(v);
    const double se = sample_sd(v);  // bootstrap standard error
    const double obs = x ? s.observed.x : s.observed.y;
    CHECK(std::abs(mean - obs) < 3 * se);
    // Monte Carlo error of the centroid itself.
    CHECK(std::abs(mean - obs) < 4 * se / std::sqrt(25000.0));
  }
}

TEST_CASE("replicate differences stay inside the attainable range") {
  const auto d = split_arms(generate_demo_data(7));
  const auto s = resample(d, 2000, 1, ShadowPrice(1.0), Perspective::Alias);
  const auto se = summarize(d.std_arm, Variable::Effe);
  const auto ne = summarize(d.new_arm, Variable::Effe);
  const auto sc = summarize(d.std_arm, Variable::Cost);
  const auto nc = summarize(d.new_arm, Variable::Cost);
  for (const auto& o : s.replicates) {
    REQUIRE(o.x >= ne.min - se.max);
    REQUIRE(o.x <= ne.max - se.min);
    REQUIRE(o.y >= nc.min - sc.max);
    REQUIRE(o.y <= nc.max - sc.min);
  }
}

TEST_CASE("scatter distribution is invariant to record order") {
  auto rows = generate_demo_data(5);
  const auto d1 = split_arms(rows);
  std::mt19937_64 rng(1);
  std::shuffle(rows.begin(), rows.end(), rng);
  const auto d2 = split_arms(rows);
  constexpr std::size_t r = 4000;
  const auto a = resample(d1, r, 9, ShadowPrice(10.0), Perspective::Alias);
  const auto b = resample(d2, r, 9, ShadowPrice(10.0), Perspective::Alias);
  const double tol = 3.0 / std::sqrt(static_cast<double>(r));
  for (bool x : {true, false}) {
    auto va = coord(a, x), vb = coord(b, x);
    std::sort(va.begin(), va.end());
    std::sort(vb.begin(), vb.end());
    for (double p : {0.025, 0.1, 0.25, 0.5, 0.75, 0.9, 0.975}) {
      const double qa = quantile_sorted(va, p);
      const double frac =
          static_cast<double>(std::upper_bound(vb.begin(), vb.end(), qa) -
                              vb.begin()) /
          static_cast<double>(r);
      INFO("p=" << p);
      CHECK(std::abs(frac - p) <= tol);
    }
  }
}

TEST_CASE("icer") {
  const ShadowPrice one(1.0);
  CHECK(*icer({2, 1, one, Perspective::Alias}) == 0.5);
  CHECK_FALSE(icer({0, 1, one, Perspective::Alias}).has_value());
  CHECK(*icer({-1, -2, one, Perspective::Alias}) == 2.0);
  CHECK(*icer({1, 2, one, Perspective::Alias}) == 2.0);
}

TEST_CASE("scatter CSV round trip") {
  const auto d = split_arms(generate_demo_data(3));
  const auto s = resample(d, 150, 77, ShadowPrice(100.0), Perspective::Alibi);
  const auto text = to_csv(s);
  CHECK(text.find("rep,x,y\n1,") != std::string::npos);
  std::istringstream in(text);
  const auto back = read_scatter_csv(in);
  CHECK(same_points(s, back));
  CHECK(back.seed == 77);
  CHECK(back.lambda().value() == 100.0);
  CHECK(back.perspective() == Perspective::Alibi);

  std::istringstream no_obs("rep,x,y\n1,1,2\n");
  CHECK_THROWS_AS(read_scatter_csv(no_obs), Error);
  std::istringstream bad("# observed=1,1\nrep,x,y\n1,a,2\n");
  CHECK_THROWS_AS(read_scatter_csv(bad), Error);
}
