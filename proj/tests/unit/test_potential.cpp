#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spreadnet/errors.hpp"
#include "spreadnet/netgen.hpp"
#include "spreadnet/potential.hpp"
#include "support.hpp"

using namespace spreadnet;

namespace {

double iqr(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  auto at = [&v](double q) {
    const double pos = q * double(v.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - double(lo)) * (v[hi] - v[lo]);
  };
  return at(0.75) - at(0.25);
}

GridSpec small_grid(std::size_t reps) {
  GridSpec g;
  g.repetitions = reps;
  return g;
}

}  // namespace

TEST_CASE("sps reference values are exact") {
  CHECK(sps({1, 0, 1, 0}) == 1.0);
  CHECK(sps({0, 1, 0, 1}) == 0.0);
  CHECK(sps({1, 1, 1, 1}) == 2.0 / 3.0);
  CHECK(sps({0.5, 0.5, 0.5, 0.5}) == 0.5);
  CHECK(sps({1, 0, 0, 1}) == doctest::Approx(0.5 + 1.0 / 6));
}

TEST_CASE("sps matches the weighted formula on random inputs") {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Potential4 p{rng.uniform01(), rng.uniform01(), rng.uniform01(), rng.uniform01()};
    const double expected = p[0] / 2 + (1 - p[1]) / 6 + p[2] / 6 + (1 - p[3]) / 6;
    const double s = sps(p);
    CHECK(s == doctest::Approx(expected).epsilon(1e-12));
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
  }
}

TEST_CASE("sps is monotone in every coordinate (finite differences)") {
  const double h = 1e-3;
  const double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0 - h};
  for (double a : grid) {
    for (double b : grid) {
      for (double c : grid) {
        for (double d : grid) {
          const double base = sps({a, b, c, d});
          CHECK(sps({a + h, b, c, d}) > base);
          CHECK(sps({a, b + h, c, d}) < base);
          CHECK(sps({a, b, c + h, d}) > base);
          CHECK(sps({a, b, c, d + h}) < base);
        }
      }
    }
  }
}

TEST_CASE("sps rejects coordinates outside [0, 1] and bad weights") {
  CHECK_THROWS_AS((void)sps({1.1, 0, 0, 0}), DomainError);
  CHECK_THROWS_AS((void)sps({0, -0.1, 0, 0}), DomainError);
  CHECK_THROWS_AS((void)sps({0, 0, 0, 0}, SpsWeights{0, 0, 0, 0}), ParameterError);
  CHECK_THROWS_AS((void)sps({0, 0, 0, 0}, SpsWeights{-1, 1, 1, 1}), ParameterError);
  CHECK(sps({1, 0, 0, 1}, SpsWeights{1, 0, 0, 0}) == 1.0);
}

TEST_CASE("column normalization divides by the maximum and is idempotent") {
  const std::vector<Potential4> rows{{2, 0, 4, 1}, {4, 0, 2, 3}, {1, 0, 1, 0}};
  const auto n = normalize_columns(rows);
  CHECK(n[0] == Potential4{0.5, 0, 1, 1.0 / 3});
  CHECK(n[1] == Potential4{1, 0, 0.5, 1});
  CHECK(n[2] == Potential4{0.25, 0, 0.25, 0});
  CHECK(normalize_columns(n) == n);
}

TEST_CASE("saddle rank is ceil(|A| / 5) in descending order") {
  for (std::size_t n = 1; n <= 60; ++n) {
    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) scores[i] = double((i * 37) % n) / double(n);
    const auto s = saddle_point(scores);
    std::size_t k = 1;
    while (5 * k < n) ++k;
    CHECK(s.rank == k);
    auto sorted = scores;
    std::sort(sorted.rbegin(), sorted.rend());
    CHECK(s.value == sorted[k - 1]);
    const auto at_or_above = std::count_if(scores.begin(), scores.end(), [&](double x) { return x >= s.value; });
    CHECK(std::size_t(at_or_above) >= k);
  }
  CHECK(saddle_point(std::vector<double>{}).rank == 0);
}

TEST_CASE("scatter endpoints, inverse and order preservation") {
  CHECK(scatter(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(scatter(0.0) == doctest::Approx(std::exp(-3.0)).epsilon(1e-15));
  CHECK(scatter(0.0) == doctest::Approx(0.049787).epsilon(1e-5));
  for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) CHECK(std::abs(inverse_scatter(scatter(x)) - x) < 1e-12);
  Rng rng(8);
  std::vector<double> v(200);
  for (auto& x : v) x = rng.uniform01();
  const auto t = transform_scores(v, TransformKind::scatter, {});
  std::vector<std::size_t> a(v.size());
  std::vector<std::size_t> b(v.size());
  std::iota(a.begin(), a.end(), 0);
  std::iota(b.begin(), b.end(), 0);
  std::stable_sort(a.begin(), a.end(), [&](auto i, auto j) { return v[i] < v[j]; });
  std::stable_sort(b.begin(), b.end(), [&](auto i, auto j) { return t[i] < t[j]; });
  CHECK(a == b);
}

TEST_CASE("transform kinds") {
  const std::vector<Potential4> rows{{10, 2, 4, 1}, {5, 4, 2, 0}};
  NetContext ctx{10, 4, true};
  CHECK(transform(rows, TransformKind::none, ctx) == rows);
  CHECK(transform(rows, TransformKind::norm_max, ctx)[1] == Potential4{0.5, 1, 0.5, 0});
  CHECK(transform(rows, TransformKind::norm_act, ctx)[0] == Potential4{1, 0.2, 0.4, 0.1});
  CHECK(transform(rows, TransformKind::norm_act_diam, ctx)[0] == Potential4{1, 0.5, 0.4, 0.25});
  const auto logged = transform(std::vector<Potential4>{{0, std::exp(1.0) - 1, 1, 3}}, TransformKind::log, ctx);
  CHECK(logged[0][0] == 0.0);
  CHECK(logged[0][1] == doctest::Approx(1.0).epsilon(1e-15));
  const auto log_norm = transform(rows, TransformKind::log_norm_max, ctx);
  CHECK(log_norm[0][0] == doctest::Approx(std::log(2.0)));
  CHECK(log_norm[1][0] == doctest::Approx(std::log(1.5)));
  const auto nms = transform(rows, TransformKind::norm_max_scatter, ctx);
  CHECK(nms[0][0] == 1.0);
  CHECK(nms[1][0] == doctest::Approx(std::exp(15.0) / std::exp(30.0)));
  CHECK_THROWS_AS((void)transform_scores(std::vector<double>{1.0}, TransformKind::norm_act_diam, ctx),
                  ParameterError);
  for (auto kind : kAllTransforms) CHECK(parse_transform(to_string(kind)) == kind);
  CHECK_THROWS_AS((void)parse_transform("sqrt"), ParameterError);
}

TEST_CASE("network context uses the largest component diameter") {
  const auto split = test::make_net(7, 2, {{0, 0, 1}, {1, 1, 2}, {0, 2, 3}, {1, 3, 4}, {0, 5, 6}});
  const auto ctx = NetContext::of(split);
  CHECK(ctx.actor_count == 7);
  CHECK(ctx.diameter == 4);
  CHECK_FALSE(ctx.connected);
}

TEST_CASE("grid validation") {
  GridSpec g;
  CHECK_NOTHROW(check_grid(g));
  CHECK(g.pis.size() == 20);
  CHECK(g.pis.front() == doctest::Approx(0.05));
  CHECK(g.pis.back() == doctest::Approx(1.0));
  auto bad = g;
  bad.repetitions = 0;
  CHECK_THROWS_AS(check_grid(bad), ParameterError);
  bad = g;
  bad.feasible_or = {0.33};
  CHECK_THROWS_AS(check_grid(bad), ParameterError);
  bad = g;
  bad.feasible_and.clear();
  CHECK_THROWS_AS(check_grid(bad), ParameterError);
  bad = g;
  bad.pis.push_back(1.5);
  CHECK_THROWS_AS(check_grid(bad), ParameterError);
}

TEST_CASE("score tables: range, saddle and determinism across worker counts") {
  const auto net = generate(GenSpec{GraphModel::pa, 2, 40, 0.0, 2, 3});
  const auto grid = small_grid(5);
  for (auto protocol : {Protocol::And, Protocol::Or}) {
    const auto t1 = build_sps_table(net, "n", grid, protocol, 17, {1, {}, true});
    const auto t3 = build_sps_table(net, "n", grid, protocol, 17, {3, {}, true});
    REQUIRE(t1.size() == 40);
    double best = 0.0;
    for (std::size_t a = 0; a < 40; ++a) {
      CHECK(t1.rows[a].raw == t3.rows[a].raw);
      CHECK(t1.rows[a].sps == t3.rows[a].sps);
      CHECK(t1.rows[a].sps >= 0.0);
      CHECK(t1.rows[a].sps <= 1.0);
      CHECK(t1.rows[a].raw[0] >= 1.0);
      CHECK(t1.rows[a].sps == sps(t1.rows[a].normalized));
      for (std::size_t c = 0; c < 4; ++c) best = std::max(best, t1.rows[a].normalized[c]);
    }
    CHECK(best == 1.0);
    CHECK(t1.saddle.rank == 8);
  }
  const auto other = build_sps_table(net, "n", grid, Protocol::Or, 18);
  CHECK(other.rows[0].raw != build_sps_table(net, "n", grid, Protocol::Or, 17).rows[0].raw);
}

TEST_CASE("score tables average raw potentials over the feasible set before normalizing") {
  const auto net = test::path(4);
  GridSpec grid;
  grid.protocols = {Protocol::Or};
  grid.repetitions = 3;
  grid.pis = {0.0, 1.0};
  grid.feasible_or = {0.0, 1.0};
  const auto table = build_sps_table(net, "p", grid, Protocol::Or, 1);
  // pi = 0 gives (1,0,1,0); pi = 1 from an end gives (4,3,1,0), from the inside (4,2,2,1).
  CHECK(table.rows[0].raw == Potential4{2.5, 1.5, 1, 0});
  CHECK(table.rows[1].raw == Potential4{2.5, 1, 1.5, 0.5});
  CHECK(table.rows[0].normalized == Potential4{1, 1, 1.0 / 1.5, 0});
}

TEST_CASE("degenerate networks are rejected") {
  NetworkBuilder b;
  b.add_actor("only");
  b.add_layer("x");
  CHECK_THROWS_AS((void)build_sps_table(b.build(), "one", GridSpec{}, Protocol::Or, 0), DegenerateInputError);
}

TEST_CASE("OR scores are flatter than AND scores on preferential-attachment networks") {
  GridSpec grid = small_grid(10);
  int flatter = 0;
  double and_total = 0.0;
  double or_total = 0.0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto net = generate(GenSpec{GraphModel::pa, 3, 100, 0.0, kDefaultPaAttach, s});
    const double a = iqr(build_sps_table(net, "n", grid, Protocol::And, s).scores());
    const double o = iqr(build_sps_table(net, "n", grid, Protocol::Or, s).scores());
    and_total += a;
    or_total += o;
    flatter += o < a ? 1 : 0;
  }
  MESSAGE("mean IQR and=" << and_total / 5 << " or=" << or_total / 5);
  CHECK(flatter >= 4);
  CHECK(or_total < and_total);
}
