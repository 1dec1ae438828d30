#include <ccmap/gallery.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace ccmap;

namespace {

Vector v(std::initializer_list<double> c) { return make_vector(c); }

}  // namespace

TEST(Catalog, SizeAndUniqueNames) {
  const auto& all = catalog();
  EXPECT_GE(all.size(), 24u);
  std::set<std::string> names;
  for (const auto& s : all) {
    EXPECT_TRUE(names.insert(s.name).second) << s.name;
    EXPECT_FALSE(s.summary.empty()) << s.name;
    EXPECT_TRUE(static_cast<bool>(s.check)) << s.name;
  }
}

TEST(Catalog, ProjectorHalf) {
  const auto& s = find_scenario("projector-half");
  EXPECT_EQ(s.kind, Expectation::ClosedFormMap);
  const Vector x = v({1, -2, 4});
  const auto cc = cc_map(s.operator_set, x);
  ASSERT_TRUE(cc.exists);
  EXPECT_TRUE(cc.center.isApprox(0.5 * x, 1e-12));
}

TEST(Catalog, LinePlaneCounts) {
  const auto& s = find_scenario("table1-line-plane");
  EXPECT_EQ(s.kind, Expectation::IterationCounts);
  ASSERT_TRUE(s.benchmark);
  EXPECT_EQ(s.benchmark->expected, (std::array<std::size_t, 4>{12, 12, 1, 1}));
}

TEST(Catalog, ScaledIdResolvents) {
  const auto& s = find_scenario("scaled-id-resolvents");
  EXPECT_EQ(s.kind, Expectation::ImpropernessIff);
  // alpha = 0.5, beta = 2: R_A = Id/3, R_B = -Id/3, so S1(x) = {x, x/3, -x/3}
  // is colinear and distinct for x != 0
  EXPECT_FALSE(in_domain(s.operator_set, v({1, 0})).in_domain);
}

TEST(Catalog, UnknownName) {
  EXPECT_THROW(find_scenario("no-such-scenario"), unknown_scenario_error);
  EXPECT_THROW(verify("no-such-scenario"), unknown_scenario_error);
}

TEST(Verify, ReflectorsZero) {
  const auto rep = verify("reflectors-zero");
  EXPECT_TRUE(rep.pass());
  EXPECT_GT(rep.checks, 0u);
  EXPECT_LE(rep.max_deviation, 1e-10);
}

TEST(Verify, Demiclosedness) {
  const auto rep = verify("demiclosedness-fails");
  EXPECT_TRUE(rep.pass());
}

TEST(Verify, CorruptedScenarioFails) {
  const auto rep = verify(corrupted_scenario());
  EXPECT_FALSE(rep.pass());
  EXPECT_FALSE(rep.failures.empty());
}

TEST(Verify, InvalidTolerances) {
  EXPECT_THROW(verify("reflectors-zero", 0, Tolerances{2.0, 1e-9, 1e-12}), std::invalid_argument);
}

TEST(Verify, SeedChangesRandomProbesOnly) {
  const auto a = verify("projector-half", 1);
  const auto b = verify("projector-half", 2);
  EXPECT_TRUE(a.pass());
  EXPECT_TRUE(b.pass());
  EXPECT_EQ(a.checks, b.checks);
}

// x = (-2, 0): R_B x = (0, 0), R_U2 x = (4, 0), three distinct points on a line.
TEST(DomainProbe, BallLine) {
  const auto& s = find_scenario("ball-line-offset");
  const auto& spec = s.domains.front();
  const auto probe = domain_probe(spec.set, {v({-2, 0}), v({0, 1}), v({0.5, 0})}, {}, &spec);
  ASSERT_EQ(probe.samples.size(), 3u);
  EXPECT_FALSE(probe.samples[0].in_domain);
  EXPECT_TRUE(probe.samples[1].in_domain);
  EXPECT_LE(probe.samples[1].card, 2u);
  EXPECT_TRUE(probe.samples[2].in_domain);
  EXPECT_EQ(probe.agreement(), 1.0);
}

TEST(DomainProbe, GridShape) {
  const ProbeGrid g{-1, 1, -2, 2, 3, 5};
  const auto pts = g.points();
  ASSERT_EQ(pts.size(), 15u);
  EXPECT_TRUE(pts.front().isApprox(v({-1, -2})));
  EXPECT_TRUE(pts.back().isApprox(v({1, 2})));
  EXPECT_TRUE((ProbeGrid{0, 1, 0, 1, 0, 0}.points().empty()));
}

class CatalogScenario : public ::testing::TestWithParam<std::string> {};

TEST_P(CatalogScenario, VerifiesAtSeedZero) {
  const auto rep = verify(GetParam(), 0);
  std::string first;
  if (!rep.failures.empty())
    first = rep.failures.front().input + ": expected " + rep.failures.front().expected +
            ", got " + rep.failures.front().got;
  EXPECT_TRUE(rep.pass()) << rep.failures.size() << " failures; first " << first;
}

namespace {

std::vector<std::string> scenario_names() {
  std::vector<std::string> out;
  for (const auto& s : catalog()) out.push_back(s.name);
  return out;
}

std::string param_name(const ::testing::TestParamInfo<std::string>& info) {
  std::string s = info.param;
  for (auto& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  return s;
}

}  // namespace

INSTANTIATE_TEST_SUITE_P(All, CatalogScenario, ::testing::ValuesIn(scenario_names()), param_name);
