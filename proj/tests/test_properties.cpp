#include <gtest/gtest.h>

#include "property_checks.hpp"

using namespace nilclosure;

namespace {

std::string join(const props::Failures& f) {
  std::string s;
  for (std::size_t i = 0; i < f.size() && i < 10; ++i) s += f[i] + "\n";
  return s;
}

const std::vector<props::SmallCase>& cases() {
  static const auto c = props::small_cases();
  return c;
}

}  // namespace

TEST(Properties, JacobiAndInvariance) {
  auto f = props::jacobi_and_invariance();
  EXPECT_TRUE(f.empty()) << join(f);
}

TEST(Properties, GradingCompatibility) {
  auto f = props::grading_compatibility();
  EXPECT_TRUE(f.empty()) << join(f);
}

TEST(Properties, WeylOrbitStabilizer) {
  auto f = props::weyl_orbits();
  EXPECT_TRUE(f.empty()) << join(f);
}

TEST(Properties, SmallCasesHaveOrbits) {
  for (const auto& sc : cases()) EXPECT_FALSE(sc.orbits.empty()) << sc.label;
  // Partitions of 4 minus [1^4]; nonzero orbits of so7, sp6 and G2.
  EXPECT_EQ(cases()[0].orbits.size(), 4u);
  EXPECT_EQ(cases()[1].orbits.size(), 6u);
  EXPECT_EQ(cases()[2].orbits.size(), 7u);
  EXPECT_EQ(cases()[3].orbits.size(), 4u);
}

TEST(Properties, CentralizerIdentity) {
  auto f = props::centralizer_identity(cases());
  EXPECT_TRUE(f.empty()) << join(f);
}

TEST(Properties, DecisionSoundness) {
  std::size_t n = 0;
  auto f = props::decision_soundness(cases(), &n);
  EXPECT_TRUE(f.empty()) << join(f);
  EXPECT_GT(n, 0u);
}

TEST(Properties, RandomizedRankAgreement) {
  auto f = props::rank_agreement(cases());
  EXPECT_TRUE(f.empty()) << join(f);
}
