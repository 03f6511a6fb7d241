#include <doctest.h>

#include <atomic>
#include <cmath>
#include <set>

#include "epclass/builtin_models.hpp"
#include "epclass/classifier.hpp"
#include "epclass/errors.hpp"
#include "epclass/phase_diagram.hpp"

using namespace epclass;

TEST_CASE("parallel_for visits every index once") {
  for (int workers : {1, 2, 5}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), workers, [&](std::size_t i) { ++hits[i]; });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                    if (i == 7) throw InvalidInput("boom");
                  }),
                  InvalidInput);
}

TEST_CASE("boundary detection on synthetic grids") {
  PhaseDiagram d;
  d.axis1 = {"x", 0.0, 1.0, 4};
  d.axis2 = {"y", 0.0, 1.0, 3};
  d.labels.assign(12, "1^2");
  CHECK(detect_boundaries(d).empty());
  for (int i2 = 0; i2 < 3; ++i2)
    for (int i1 = 2; i1 < 4; ++i1) d.labels[static_cast<std::size_t>(i2 * 4 + i1)] = "b2^1";
  const auto b = detect_boundaries(d);
  REQUIRE(b.size() == 3);
  for (const auto& p : b) {
    CHECK(p.along_first);
    CHECK(p.x == doctest::Approx(0.5));
    CHECK(p.from == "1^2");
    CHECK(p.to == "b2^1");
  }
}

TEST_CASE("small SSH scan is independent of the worker count") {
  const ModelSpec ssh = builtin_model("ssh");
  ScanOptions one;
  one.samples = 128;
  ScanOptions many = one;
  many.workers = 3;
  const Axis t{"t", 0.0, 3.0, 24};
  const Axis th{"theta", -1.0, 1.0, 8};
  const PhaseDiagram a = scan(ssh, t, th, {}, one);
  const PhaseDiagram b = scan(ssh, t, th, {}, many);
  CHECK(a.labels == b.labels);
  std::set<std::string> seen(a.labels.begin(), a.labels.end());
  CHECK(seen.count("1^2") == 1);
  CHECK(seen.count("b2^1") == 1);
  CHECK(seen.count("b1^2") == 1);
  for (const auto& l : a.labels)
    if (l != kCriticalLabel && l != kFailedLabel) CHECK_NOTHROW(parse_signature(l));
}

TEST_CASE("Hermitian three-band line has two phases") {
  const ModelSpec tb = builtin_model("three-band");
  ScanOptions o;
  o.samples = 256;
  const PhaseDiagram d = scan(tb, Axis{"t", 0.0, 2.0, 41}, Axis{"theta", 0.0, 0.0, 1}, {}, o);
  std::set<std::string> seen;
  for (const auto& l : d.labels)
    if (l != kCriticalLabel) seen.insert(l);
  CHECK(seen == std::set<std::string>{"1^3", "1^1 b1^2"});
}

TEST_CASE("axis parsing and validation") {
  const Axis a = parse_axis("t=0:3:300");
  CHECK(a.param == "t");
  CHECK(a.n == 300);
  CHECK(a.value(299) == 3.0);
  CHECK_THROWS_AS(parse_axis("t=0:3"), InvalidInput);
  CHECK_THROWS_AS(parse_axis("t=0:3:2.5"), InvalidInput);
  const ModelSpec ssh = builtin_model("ssh");
  CHECK_THROWS_AS(scan(ssh, Axis{"q", 0, 1, 2}, Axis{"t", 0, 1, 2}, {}), SemanticError);
}
