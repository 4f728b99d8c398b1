#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>

#include "spreadnet/errors.hpp"
#include "spreadnet/micm.hpp"
#include "spreadnet/netgen.hpp"
#include "support.hpp"

using namespace spreadnet;

namespace {

double mean_activated(const MultilayerNetwork& net, double pi, Protocol protocol, ActorId seed, std::size_t reps,
                      std::uint64_t master) {
  return simulate_avg(net, pi, protocol, seed, reps, master).mean[0];
}

/// Two layers; actor 1 is present in both but only its layer-0 neighbor can be active.
MultilayerNetwork and_gate_example() { return test::make_net(3, 2, {{0, 0, 1}, {1, 1, 2}}); }

struct AttemptCounter {
  std::map<std::tuple<ActorId, ActorId, LayerId>, int> attempts;
  std::vector<std::uint64_t>* order = nullptr;
  void attempt(ActorId s, ActorId t, LayerId l, bool) { ++attempts[{s, t, l}]; }
  void iteration(std::uint32_t, std::span<const ActorId>) {}
};

}  // namespace

TEST_CASE("pi = 0 leaves only the seed active") {
  for (const auto& net : {test::path(6), test::make_net(5, 3, test::random_edges(5, 3, 0.6, 1)),
                          generate(GenSpec{GraphModel::pa, 2, 40, 0.0, 3, 8})}) {
    for (ActorId seed = 0; seed < net.actor_count(); ++seed) {
      for (auto protocol : {Protocol::And, Protocol::Or}) {
        const auto p = simulate(net, {0.0, protocol, seed, 99});
        CHECK(p == SpreadingPotential{1, 0, 1, 0});
      }
    }
  }
}

TEST_CASE("single edge at pi = 1: the peak tie resolves to iteration 0") {
  const auto pair = test::path(2);
  CHECK(simulate(pair, {1.0, Protocol::Or, 0, 0}) == SpreadingPotential{2, 1, 1, 0});
}

TEST_CASE("pi = 1 with OR reaches the whole connected component in BFS layers") {
  const auto line = test::path(7);
  const auto p = simulate(line, {1.0, Protocol::Or, 0, 1});
  CHECK(p.activated == 7);
  CHECK(p.duration == 6);
  CHECK(p.peak == 1);
  CHECK(p.peak_iteration == 0);
  const auto mid = simulate(line, {1.0, Protocol::Or, 3, 1});
  CHECK(mid == SpreadingPotential{7, 3, 2, 1});

  const auto net = generate(GenSpec{GraphModel::pa, 1, 120, 0.0, 2, 4});
  for (ActorId seed : {0U, 50U, 119U}) CHECK(simulate(net, {1.0, Protocol::Or, seed, 7}).activated == 120);
}

TEST_CASE("3-actor path from an end: mean activations match enumeration") {
  // P(reach 1) = 0.5, P(reach 2) = 0.25, so E[p_ex] = 1.75 and E[p_sl] = 0.75.
  const auto line = test::path(3);
  const auto avg = simulate_avg(line, 0.5, Protocol::Or, 0, 40000, 2024);
  CHECK(std::abs(avg.mean[0] - 1.75) < 0.02);
  CHECK(std::abs(avg.mean[1] - 0.75) < 0.02);
  // Var[p_ex] = E[X^2] - 1.75^2 with X in {1,2,3} w.p. {0.5, 0.25, 0.25}
  CHECK(std::abs(avg.variance[0] - (0.5 + 1.0 + 2.25 - 1.75 * 1.75)) < 0.03);
  // From the middle: each end independently, E[p_ex] = 2, peak 1 or 2.
  const auto middle = simulate_avg(line, 0.5, Protocol::Or, 1, 40000, 7);
  CHECK(std::abs(middle.mean[0] - 2.0) < 0.02);
}

TEST_CASE("star from the centre: activations are binomial") {
  std::vector<test::Edge> edges;
  for (unsigned leaf = 1; leaf <= 8; ++leaf) edges.emplace_back(0, 0, leaf);
  const auto star = test::make_net(9, 1, edges);
  const auto avg = simulate_avg(star, 0.3, Protocol::Or, 0, 20000, 5);
  // 1 + Binomial(8, 0.3): mean 3.4, variance 1.68
  CHECK(std::abs(avg.mean[0] - 3.4) < 0.05);
  CHECK(std::abs(avg.variance[0] - 1.68) < 0.08);
  // p_sl = 1 unless no leaf fires: P = 1 - 0.7^8
  CHECK(std::abs(avg.mean[1] - (1 - std::pow(0.7, 8))) < 0.01);
}

TEST_CASE("AND gate: a signal in one of two presence layers never activates") {
  const auto net = and_gate_example();
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto p = simulate(net, {1.0, Protocol::And, 0, s});
    REQUIRE(p == SpreadingPotential{1, 0, 1, 0});
  }
  // Under OR the same signal suffices and the cascade continues in layer 1.
  CHECK(simulate(net, {1.0, Protocol::Or, 0, 0}).activated == 3);
}

TEST_CASE("AND gate: signals in every presence layer activate") {
  // 1 is present in both layers with 0 as neighbor in both.
  const auto net = test::make_net(3, 2, {{0, 0, 1}, {1, 0, 1}, {1, 1, 2}});
  const auto p = simulate(net, {1.0, Protocol::And, 0, 0});
  // 2 is present only in layer 1, so a single signal there is enough.
  CHECK(p == SpreadingPotential{3, 2, 1, 0});
}

TEST_CASE("AND gate: signals from different sources combine within one iteration") {
  // 3 is present in two layers, one neighbor in each; both neighbors activate at t=1.
  const auto net = test::make_net(4, 2, {{0, 0, 1}, {1, 0, 2}, {0, 1, 3}, {1, 2, 3}});
  const auto p = simulate(net, {1.0, Protocol::And, 0, 3});
  // 1 and 2 are present in one layer each.
  CHECK(p == SpreadingPotential{4, 2, 2, 1});
}

TEST_CASE("each ordered (source, target, layer) pair is attempted at most once") {
  std::vector<test::Edge> edges;
  for (unsigned l = 0; l < 2; ++l) {
    for (unsigned a = 0; a < 4; ++a) {
      for (unsigned b = a + 1; b < 4; ++b) edges.emplace_back(l, a, b);
    }
  }
  const auto k4 = test::make_net(4, 2, edges);
  MicmSimulator sim(k4);
  for (auto protocol : {Protocol::And, Protocol::Or}) {
    for (std::uint64_t s = 0; s < 500; ++s) {
      AttemptCounter counter;
      (void)sim.run({0.4, protocol, static_cast<ActorId>(s % 4), s}, counter);
      for (const auto& [key, count] : counter.attempts) {
        REQUIRE(count == 1);
        REQUIRE(std::get<0>(key) != std::get<1>(key));
      }
    }
  }
}

TEST_CASE("sources only attempt inactive targets and the trace sums to p_ex") {
  const auto net = test::make_net(30, 3, test::random_edges(30, 3, 0.15, 4));
  struct Tracer {
    std::vector<std::uint32_t> counts;
    std::vector<bool> active;
    void attempt(ActorId, ActorId t, LayerId, bool) { REQUIRE_FALSE(active[t]); }
    void iteration(std::uint32_t t, std::span<const ActorId> fresh) {
      REQUIRE(t == counts.size());
      counts.push_back(static_cast<std::uint32_t>(fresh.size()));
      for (ActorId a : fresh) active[a] = true;
    }
  };
  MicmSimulator sim(net);
  for (std::uint64_t s = 0; s < 100; ++s) {
    Tracer tracer{{}, std::vector<bool>(30, false)};
    const auto p = sim.run({0.5, Protocol::Or, 0, s}, tracer);
    CHECK(p == summarize(tracer.counts));
    CHECK(p.activated == std::accumulate(tracer.counts.begin(), tracer.counts.end(), 0U));
  }
}

TEST_CASE("summarize resolves peak ties to the earliest iteration") {
  const std::vector<std::uint32_t> counts{1, 3, 2, 3, 0};
  CHECK(summarize(counts) == SpreadingPotential{9, 3, 3, 1});
  const std::vector<std::uint32_t> seed_only{1};
  CHECK(summarize(seed_only) == SpreadingPotential{1, 0, 1, 0});
}

TEST_CASE("single-layer AND and OR are identical run by run") {
  const auto net = generate(GenSpec{GraphModel::er, 1, 80, 0.06, 0, 12});
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto a = simulate(net, {0.3, Protocol::And, static_cast<ActorId>(s % 80), s});
    const auto o = simulate(net, {0.3, Protocol::Or, static_cast<ActorId>(s % 80), s});
    REQUIRE(a == o);
  }
}

TEST_CASE("mean activations grow with pi and AND never beats OR") {
  const auto net = generate(GenSpec{GraphModel::pa, 3, 150, 0.0, 2, 21});
  for (auto protocol : {Protocol::And, Protocol::Or}) {
    double previous = 0.0;
    for (double pi : {0.05, 0.2, 0.5, 0.8, 1.0}) {
      const double m = mean_activated(net, pi, protocol, 0, 400, 3);
      CHECK(m >= previous);
      previous = m;
    }
  }
  for (double pi : {0.2, 0.5, 0.9}) {
    CHECK(mean_activated(net, pi, Protocol::And, 5, 400, 8) <= mean_activated(net, pi, Protocol::Or, 5, 400, 8));
  }
}

TEST_CASE("averaged results are seed-deterministic and independent of the worker count") {
  const auto net = generate(GenSpec{GraphModel::er, 3, 60, 0.08, 0, 6});
  std::vector<SimulationTask> tasks;
  for (ActorId a = 0; a < 60; ++a) tasks.push_back({a, 0.3, a % 2 ? Protocol::Or : Protocol::And, 10, derive_seed(1, a)});
  const auto one = simulate_batch(net, tasks, 1);
  const auto four = simulate_batch(net, tasks, 4);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    CHECK(one[i].mean == four[i].mean);
    CHECK(one[i].variance == four[i].variance);
    const auto direct = simulate_avg(net, tasks[i].pi, tasks[i].protocol, tasks[i].seed_actor, 10, tasks[i].master_seed);
    CHECK(direct.mean == one[i].mean);
    for (std::size_t c = 0; c < 4; ++c) {
      CHECK(one[i].mean[c] >= one[i].min[c]);
      CHECK(one[i].mean[c] <= one[i].max[c]);
    }
  }
}

TEST_CASE("invalid arguments are rejected") {
  const auto net = test::path(3);
  CHECK_THROWS_AS((void)simulate(net, {1.5, Protocol::Or, 0, 0}), ParameterError);
  CHECK_THROWS_AS((void)simulate(net, {-0.1, Protocol::Or, 0, 0}), ParameterError);
  CHECK_THROWS_AS((void)simulate(net, {0.5, Protocol::Or, 9, 0}), NotFoundError);
  CHECK_THROWS_AS((void)simulate_avg(net, 0.5, Protocol::Or, 0, 0, 0), ParameterError);
  CHECK_THROWS_AS((void)parse_protocol("xor"), ParameterError);
  CHECK(parse_protocol("AND") == Protocol::And);
}
