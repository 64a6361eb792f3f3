#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "iceinfer/data_model.hpp"
#include "test_util.hpp"

using namespace iceinfer;
using Catch::Approx;

namespace {

TwoArmData parse(const std::string& text) {
  std::istringstream in(text);
  return ingest_csv(in);
}

ErrorCode code_of(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("ingest_csv partitions rows by arm and keeps order") {
  const auto d = parse("trtm,effe,cost\n0,1.5,10\n0,2.5,20\n1,3,30\n1,4,40\n");
  REQUIRE(d.std_arm.size() == 2);
  REQUIRE(d.new_arm.size() == 2);
  CHECK(d.std_arm.records()[0].effe == 1.5);
  CHECK(d.std_arm.records()[1].cost == 20.0);
  CHECK(d.new_arm.records()[0].effe == 3.0);
  CHECK(d.new_arm.records()[1].cost == 40.0);
}

TEST_CASE("ingest_csv accepts CRLF, reordered columns and extra columns") {
  const auto d = parse(
      "cost,id,trtm,effe\r\n10,a,1,1\r\n20,b,0,2\r\n30,c,1,3\r\n40,d,0,4\r\n");
  CHECK(d.std_arm.records()[0].cost == 20.0);
  CHECK(d.new_arm.records()[1].effe == 3.0);
}

TEST_CASE("ingest_csv reports the failing data row") {
  try {
    parse("trtm,effe,cost\n0,1,1\n0,2,2\n2,3,3\n1,4,4\n");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownArmCode);
    REQUIRE(e.row());
    CHECK(*e.row() == 3);
  }
  try {
    parse("trtm,effe,cost\n0,1,1\n0,abc,2\n1,3,3\n1,4,4\n");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonNumericCell);
    CHECK(*e.row() == 2);
  }
}

TEST_CASE("ingest_csv error codes") {
  CHECK(code_of("") == ErrorCode::EmptyFile);
  CHECK(code_of("trtm,effe,cost\n") == ErrorCode::EmptyFile);
  CHECK(code_of("trtm,effe\n0,1\n") == ErrorCode::MissingColumn);
  CHECK(code_of("trtm,effe,cost\n0,1,1\n1,2,2\n1,3,3\n") ==
        ErrorCode::ArmTooSmall);
  CHECK(code_of("trtm,effe,cost\n0,1,1\n0,nan,2\n1,2,2\n1,3,3\n") ==
        ErrorCode::NonFiniteValue);
  CHECK(code_of("trtm,effe,cost\n0,1,1\n0,2\n1,2,2\n1,3,3\n") ==
        ErrorCode::NonNumericCell);
}

TEST_CASE("ingest_csv of a missing file is an IoError") {
  try {
    ingest_csv(std::string("/nonexistent/path/data.csv"));
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}

TEST_CASE("demo data file has 99 Std and 101 New patients") {
  const auto dir = testutil::tmp_dir("data_model");
  const auto path = (dir / "demo.csv").string();
  write_csv(path, generate_demo_data(42));
  // Count rows independently of the parser.
  const auto text = testutil::slurp(path);
  CHECK(testutil::count_occurrences(text, "\n0,") == 99);
  CHECK(testutil::count_occurrences(text, "\n1,") == 101);
  const auto d = ingest_csv(path);
  CHECK(d.std_arm.size() == 99);
  CHECK(d.new_arm.size() == 101);
}

TEST_CASE("summarize small samples") {
  const std::vector<double> triple{3, 1, 2};
  const auto s = summarize(triple);
  CHECK(s.min == 1);
  CHECK(s.median == 2);
  CHECK(s.mean == 2);
  CHECK(s.max == 3);
  CHECK(s.sd == 1);

  const std::vector<double> zeros{0, 0, 0, 0};
  const auto z = summarize(zeros);
  CHECK(z.min == 0);
  CHECK(z.q1 == 0);
  CHECK(z.median == 0);
  CHECK(z.mean == 0);
  CHECK(z.q3 == 0);
  CHECK(z.max == 0);
  CHECK(z.sd == 0);

  // h = 3p + 1: p = .25 -> h = 1.75 -> 1 + .75 (2 - 1); p = .75 -> 3.25.
  const std::vector<double> four{4, 3, 2, 1};
  const auto f = summarize(four);
  CHECK(f.q1 == Approx(1.75).epsilon(1e-15));
  CHECK(f.median == Approx(2.5).epsilon(1e-15));
  CHECK(f.q3 == Approx(3.25).epsilon(1e-15));

  const std::vector<double> one{1};
  CHECK_THROWS_AS(summarize(one), Error);
}

TEST_CASE("generate_demo_data is deterministic and near the target moments") {
  const auto a = generate_demo_data(42);
  const auto b = generate_demo_data(42);
  REQUIRE(a == b);
  CHECK(a != generate_demo_data(43));

  const auto d = split_arms(a);
  CHECK(d.std_arm.size() == 99);
  CHECK(d.new_arm.size() == 101);
  CHECK(std::abs(d.new_arm.mean(Variable::Effe) - 4.0) < 0.5);
  CHECK(std::abs(d.new_arm.mean(Variable::Cost) - 68.8) < 10);
  CHECK(std::abs(d.std_arm.mean(Variable::Effe) - 3.653) < 0.5);
  CHECK(std::abs(d.std_arm.mean(Variable::Cost) - 76.497) < 10);

  for (const auto& r : a) {
    CHECK(r.effe > 0);
    CHECK(r.cost > 0);
  }

  // Within-patient correlation is positive by construction.
  for (const auto* arm : {&d.std_arm, &d.new_arm}) {
    const auto e = arm->values(Variable::Effe);
    const auto c = arm->values(Variable::Cost);
    const double me = sample_mean(e), mc = sample_mean(c);
    double sxy = 0;
    for (std::size_t i = 0; i < e.size(); ++i) sxy += (e[i] - me) * (c[i] - mc);
    CHECK(sxy > 0);
  }
}

TEST_CASE("CSV round trip preserves values exactly (property)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  std::lognormal_distribution<double> ln(0.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PatientRecord> rows;
    const int n = 4 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i)
      rows.push_back({i % 2 ? Arm::New : Arm::Std,
                      trial % 2 ? u(rng) : ln(rng), u(rng)});
    std::istringstream in(to_csv(rows));
    const auto back = ingest_csv(in);
    const auto orig = split_arms(rows);
    REQUIRE(std::equal(orig.std_arm.records().begin(),
                       orig.std_arm.records().end(),
                       back.std_arm.records().begin(),
                       back.std_arm.records().end()));
    REQUIRE(std::equal(orig.new_arm.records().begin(),
                       orig.new_arm.records().end(),
                       back.new_arm.records().begin(),
                       back.new_arm.records().end()));
  }
}

TEST_CASE("summarize is permutation invariant and sd scales with |k|") {
  std::mt19937_64 rng(11);
  std::gamma_distribution<double> g(2.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(2 + rng() % 60);
    for (auto& x : v) x = g(rng);
    const auto s = summarize(v);
    CHECK(s.min <= s.q1);
    CHECK(s.q1 <= s.median);
    CHECK(s.median <= s.q3);
    CHECK(s.q3 <= s.max);
    CHECK(s.min <= s.mean);
    CHECK(s.mean <= s.max);

    auto shuffled = v;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto t = summarize(shuffled);
    CHECK(t.mean == s.mean);
    CHECK(t.sd == s.sd);
    CHECK(t.q1 == s.q1);
    CHECK(t.q3 == s.q3);

    const double k = std::uniform_real_distribution<double>(-50, 50)(rng);
    auto scaled = v;
    for (auto& x : scaled) x *= k;
    const double expected = std::abs(k) * s.sd;
    CHECK(std::abs(sample_sd(scaled) - expected) <= 1e-12 * expected);
  }
}
