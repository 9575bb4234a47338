#include "fracproc/montecarlo.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fracproc/error.hpp"
#include "oracles.hpp"

namespace fracproc {
namespace {

const FractionalOrder kHalf(0.5);

SimulationConfig sim_with(std::size_t replicas, std::uint64_t seed) {
  SimulationConfig sim;
  sim.replicas = replicas;
  sim.seed = RngSeed{seed};
  return sim;
}

TEST(RandomStream, SplitStreamsAreReproducibleAndDistinct) {
  RandomStream a = RandomStream::split(RngSeed{7}, 3);
  RandomStream b = RandomStream::split(RngSeed{7}, 3);
  RandomStream c = RandomStream::split(RngSeed{7}, 4);
  RandomStream d = RandomStream::split(RngSeed{8}, 3);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_NE(x, c.uniform());
    EXPECT_NE(x, d.uniform());
  }
}

TEST(RandomStream, UniformAndExponentialMoments) {
  RandomStream rng(123);
  const int n = 200000;
  double su = 0.0;
  double se = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    se += rng.exponential();
  }
  EXPECT_NEAR(su / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
  EXPECT_NEAR(se / n, 1.0, 4.0 / std::sqrt(n));
}

TEST(Stable, DegenerateAtOne) {
  RandomStream rng(1);
  EXPECT_THROW(sample_stable(FractionalOrder(1.0), rng), DomainError);
}

TEST(Stable, LaplaceTransformMatches) {
  for (double nu : {0.3, 0.5, 0.7, 0.9}) {
    RandomStream rng(99);
    const int n = 100000;
    std::vector<double> draws(n);
    for (auto& x : draws) {
      x = sample_stable(FractionalOrder(nu), rng);
      ASSERT_GT(x, 0.0);
    }
    for (double s : {0.5, 1.0, 2.0}) {
      double sum = 0.0;
      double sum_sq = 0.0;
      for (double x : draws) {
        const double e = std::exp(-s * x);
        sum += e;
        sum_sq += e * e;
      }
      const double mean = sum / n;
      const double se = std::sqrt((sum_sq / n - mean * mean) / n);
      EXPECT_NEAR(mean, std::exp(-std::pow(s, nu)), 3.0 * se) << nu << ' ' << s;
    }
  }
}

TEST(Stable, HalfOrderIsLevyDistribution) {
  // With E exp(-sS) = exp(-sqrt(s)), S has CDF erfc(1 / (2 sqrt(x))).
  RandomStream rng(2024);
  std::vector<double> draws(50000);
  for (auto& x : draws) x = sample_stable(kHalf, rng);
  const TestResult r = ks_test(draws, [](double x) { return std::erfc(0.5 / std::sqrt(x)); });
  EXPECT_GT(r.p_value, 0.001) << r.statistic;
}

TEST(InverseSubordinator, ClassicalIsIdentity) {
  RandomStream rng(5);
  const SubordinatorConfig cfg(FractionalOrder(1.0));
  EXPECT_EQ(sample_inverse_subordinator(cfg, 2.5, rng), 2.5);
}

TEST(InverseSubordinator, SmallTimeGivesOneStep) {
  RandomStream rng(5);
  const SubordinatorConfig cfg(kHalf, 1e-3);
  int single = 0;
  for (int i = 0; i < 1000; ++i) {
    const double v = sample_inverse_subordinator(cfg, 1e-12, rng);
    EXPECT_GE(v, 1e-3);
    single += (v == 1e-3);
  }
  EXPECT_GT(single, 990);
}

TEST(InverseSubordinator, SharedPathIsMonotone) {
  RandomStream rng(11);
  const SubordinatorConfig cfg(FractionalOrder(0.6), 1e-3);
  const std::vector<double> times{0.01, 0.1, 0.1, 0.5, 1.0, 2.0, 4.0};
  for (int rep = 0; rep < 50; ++rep) {
    const std::vector<double> v = sample_inverse_subordinator_path(cfg, times, rng);
    for (std::size_t i = 1; i < v.size(); ++i) EXPECT_LE(v[i - 1], v[i]);
    EXPECT_EQ(v[1], v[2]);
  }
  const std::vector<double> unsorted{1.0, 0.5};
  EXPECT_THROW(sample_inverse_subordinator_path(cfg, unsorted, rng), DomainError);
}

TEST(InverseSubordinator, RunawayGuard) {
  RandomStream rng(3);
  const SubordinatorConfig cfg(kHalf, 1e-3, 10);
  EXPECT_THROW(sample_inverse_subordinator(cfg, 100.0, rng), NumericalError);
  EXPECT_THROW(SubordinatorConfig(kHalf, 0.0), DomainError);
}

TEST(InverseSubordinator, MeanMatchesPowerLaw) {
  // E V_t = t^nu / Gamma(1 + nu); the walk overshoots by at most one step.
  RandomStream rng(77);
  const SubordinatorConfig cfg(FractionalOrder(0.7), 1e-3);
  const int n = 20000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = sample_inverse_subordinator(cfg, 1.0, rng);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum_sq / n - mean * mean) / n);
  EXPECT_NEAR(mean, 1.0 / std::tgamma(1.7), 3.0 * se + 1e-3);
}

TEST(InverseSubordinator, SubordinatedSingleDeath) {
  // Pr{M(V_1) = 1} = E exp(-V_1) = E_1/2(-1).
  RandomStream rng(31415);
  const SubordinatorConfig cfg(kHalf);
  const int n = 100000;
  int alive = 0;
  for (int i = 0; i < n; ++i) {
    const double v = sample_inverse_subordinator(cfg, 1.0, rng);
    alive += rng.exponential() > v;
  }
  const double p = static_cast<double>(alive) / n;
  const double se = std::sqrt(p * (1.0 - p) / n);
  EXPECT_NEAR(p, oracle::kMlHalfMinusOne, 3.0 * se);
}

TEST(ClassicalPaths, StructuralInvariants) {
  RandomStream rng(8);
  for (int rep = 0; rep < 200; ++rep) {
    const PathSample d = classical_death_path(6, 0.7, 3.0, rng);
    long prev = d.initial_state;
    double prev_t = 0.0;
    for (std::size_t i = 0; i < d.states.size(); ++i) {
      EXPECT_EQ(d.states[i], prev - 1);
      EXPECT_GT(d.event_times[i], prev_t);
      EXPECT_LE(d.event_times[i], 3.0);
      prev = d.states[i];
      prev_t = d.event_times[i];
    }
    EXPECT_GE(prev, 0);
    EXPECT_EQ(d.state_at(3.0), prev);
    EXPECT_EQ(d.state_at(0.0), 6);

    const PathSample b = classical_birth_path(2, 0.4, 3.0, 1000, rng);
    prev = b.initial_state;
    for (long s : b.states) {
      EXPECT_EQ(s, prev + 1);
      prev = s;
    }
  }
}

TEST(ClassicalPaths, SojournTimesAreExponential) {
  RandomStream rng(4242);
  const double mu = 1.3;
  std::vector<double> first;
  std::vector<double> second;
  for (int rep = 0; rep < 20000; ++rep) {
    const PathSample d = classical_death_path(4, mu, 1e9, rng);
    ASSERT_EQ(d.states.size(), 4u);
    first.push_back(d.event_times[0]);
    second.push_back(d.event_times[1] - d.event_times[0]);
  }
  auto exp_cdf = [](double rate) { return [rate](double x) { return -std::expm1(-rate * x); }; };
  EXPECT_GT(ks_test(first, exp_cdf(4.0 * mu)).p_value, 0.001);
  EXPECT_GT(ks_test(second, exp_cdf(3.0 * mu)).p_value, 0.001);
  // The wrong rate is rejected.
  EXPECT_LT(ks_test(second, exp_cdf(4.0 * mu)).p_value, 1e-6);
}

TEST(SimulateDeath, ClassicalBinomialWithinThreeSe) {
  const DeathParams p(5, 1.0, FractionalOrder(1.0));
  const EmpiricalLaw law = simulate_death(p, 0.8, SubordinatorConfig(p.nu), sim_with(100000, 17));
  const Pmf exact = death_pmf(p, 0.8);
  const Pmf got = law.pmf();
  const auto se = law.standard_errors();
  ASSERT_EQ(got.support_offset, 0);
  for (long k = 0; k <= 5; ++k)
    EXPECT_NEAR(got.at(k), exact.at(k), 3.0 * se[static_cast<std::size_t>(k)] + 1e-12) << k;
  EXPECT_GT(chi_square_test(law.counts, exact.probabilities).p_value, 0.001);
}

TEST(SimulateDeath, FractionalMeanWithinThreeSe) {
  const DeathParams p(5, 1.0, FractionalOrder(0.7));
  const EmpiricalLaw law = simulate_death(p, 1.0, SubordinatorConfig(p.nu), sim_with(100000, 42));
  EXPECT_NEAR(law.mean, 5.0 * oracle::kMlSevenTenthsMinusOne, 3.0 * law.mean_standard_error);
}

TEST(SimulateDeath, ChiSquareAgainstExactPmf) {
  const DeathParams p(5, 1.0, kHalf);
  const EmpiricalLaw law = simulate_death(p, 2.0, SubordinatorConfig(p.nu), sim_with(100000, 2718));
  const TestResult r = chi_square_test(law.counts, death_pmf(p, 2.0).probabilities);
  EXPECT_GT(r.p_value, 0.001) << r.statistic;
}

TEST(SimulateDeath, OrderMismatchRejected) {
  EXPECT_THROW(simulate_death(DeathParams(2, 1.0, kHalf), 1.0, SubordinatorConfig(FractionalOrder(0.7)),
                              sim_with(10, 1)),
               DomainError);
}

TEST(SimulateBirth, ClassicalGeometricWithinThreeSe) {
  const BirthParams p(1, 1.0, FractionalOrder(1.0));
  const EmpiricalLaw law = simulate_birth(p, std::numbers::ln2, SubordinatorConfig(p.nu), sim_with(100000, 5));
  const Pmf got = law.pmf();
  const auto se = law.standard_errors();
  ASSERT_EQ(got.support_offset, 1);
  for (long k = 1; k <= 6; ++k)
    EXPECT_NEAR(got.at(k), std::ldexp(1.0, -static_cast<int>(k)), 3.0 * se[static_cast<std::size_t>(k - 1)]) << k;
  EXPECT_EQ(law.cap_hits, 0u);
}

TEST(SimulateBirth, FractionalMeanWithinThreeSe) {
  const BirthParams p(1, 1.0, FractionalOrder(0.7));
  const EmpiricalLaw law = simulate_birth(p, 1.0, SubordinatorConfig(p.nu), sim_with(100000, 42));
  EXPECT_NEAR(law.mean, oracle::kMlSevenTenthsPlusOne, 3.0 * law.mean_standard_error);
}

TEST(SimulateBirth, ChiSquareAgainstExactPmf) {
  const BirthParams p(2, 0.5, kHalf);
  const EmpiricalLaw law = simulate_birth(p, 1.0, SubordinatorConfig(p.nu), sim_with(100000, 99));
  const Pmf exact = birth_pmf(p, 1.0, 200);
  const TestResult r = chi_square_test(law.counts, exact.probabilities, exact.tail_mass);
  EXPECT_GT(r.p_value, 0.001) << r.statistic;
}

TEST(SimulateBirth, CapHitsAreCounted) {
  const BirthParams p(1, 5.0, FractionalOrder(1.0));
  SimulationConfig sim = sim_with(2000, 3);
  sim.population_cap = 10;
  const EmpiricalLaw law = simulate_birth(p, 2.0, SubordinatorConfig(p.nu), sim);
  EXPECT_GT(law.cap_hits, 1900u);
  EXPECT_EQ(law.pmf().last_state(), 10);
  EXPECT_EQ(law.counts.back(), law.cap_hits);
}

TEST(Simulation, SameSeedIsBitIdenticalAcrossThreadCounts) {
  const DeathParams p(4, 1.0, FractionalOrder(0.6));
  const SubordinatorConfig cfg(p.nu, 1e-2);
  SimulationConfig sim = sim_with(3000, 1234);
  const EmpiricalLaw a = simulate_death(p, 1.0, cfg, sim);
  const EmpiricalLaw b = simulate_death(p, 1.0, cfg, sim);
  sim.threads = 3;
  const EmpiricalLaw c = simulate_death(p, 1.0, cfg, sim);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.counts, c.counts);
  EXPECT_EQ(a.mean, c.mean);
  EXPECT_EQ(a.mean_standard_error, c.mean_standard_error);
  sim.seed = RngSeed{1235};
  EXPECT_NE(simulate_death(p, 1.0, cfg, sim).counts, a.counts);
}

TEST(Simulation, StandardErrorShrinksAsRootReplicas) {
  const DeathParams p(10, 1.0, FractionalOrder(1.0));
  const SubordinatorConfig cfg(p.nu);
  double prev = 0.0;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    const double se = simulate_death(p, 0.5, cfg, sim_with(n, 8)).mean_standard_error;
    if (prev > 0.0) EXPECT_NEAR(prev / se, std::sqrt(10.0), 0.15 * std::sqrt(10.0)) << n;
    prev = se;
  }
}

TEST(ChiSquare, KnownStatistic) {
  const std::vector<std::uint64_t> counts{10, 20, 30};
  const std::vector<double> probs{1.0 / 3, 1.0 / 3, 1.0 / 3};
  const TestResult r = chi_square_test(counts, probs);
  EXPECT_NEAR(r.statistic, 10.0, 1e-12);
  EXPECT_EQ(r.degrees_of_freedom, 2.0);
  EXPECT_NEAR(r.p_value, std::exp(-5.0), 1e-14);
}

TEST(ChiSquare, PoolsSparseCellsAndTail) {
  // Expected counts 50, 45, 3, 1 and 1 in the tail: the last three pool.
  const std::vector<std::uint64_t> counts{50, 45, 3, 1, 1};
  const std::vector<double> probs{0.5, 0.45, 0.03, 0.01};
  const TestResult r = chi_square_test(counts, probs, 0.01);
  EXPECT_EQ(r.degrees_of_freedom, 2.0);
  EXPECT_NEAR(r.statistic, 0.0, 1e-12);
}

TEST(ChiSquare, RejectsImpossibleObservation) {
  const std::vector<std::uint64_t> counts{50, 50, 7};
  const std::vector<double> probs{0.5, 0.5};
  EXPECT_EQ(chi_square_test(counts, probs, 0.0).p_value, 0.0);
}

TEST(Kolmogorov, ReferenceValues) {
  EXPECT_NEAR(kolmogorov_survival(0.5), 0.96394524366487509, 1e-12);
  EXPECT_NEAR(kolmogorov_survival(1.0), 0.26999967167735456, 1e-12);
  EXPECT_NEAR(kolmogorov_survival(1.36), 0.049485876755377884, 1e-12);
  EXPECT_NEAR(kolmogorov_survival(1.18 - 1e-12), kolmogorov_survival(1.18 + 1e-12), 1e-10);
  EXPECT_EQ(kolmogorov_survival(0.0), 1.0);
}

}  // namespace
}  // namespace fracproc
