#include "spreadnet/rankers.hpp"

#include <numeric>
#include <queue>

#include <fmt/format.h>

#include "spreadnet/errors.hpp"
#include "spreadnet/rng.hpp"

namespace spreadnet {

namespace {

Ranking finish(Ranking ranking, std::string_view predictor) {
  ranking.predictor = predictor;
  return ranking;
}

/// Greedy discount loop. `for_each_neighbor(a, fn)` calls fn(b) once per
/// unit of discount that selecting `a` applies to `b`.
template <typename NeighborFn>
Ranking discount_ranking(std::vector<std::int64_t> score, NeighborFn for_each_neighbor) {
  struct Entry {
    std::int64_t score;
    ActorId actor;
    // priority_queue pops the "largest": higher score, then lower id.
    bool operator<(const Entry& other) const {
      return score != other.score ? score < other.score : actor > other.actor;
    }
  };

  std::priority_queue<Entry> heap;
  for (ActorId a = 0; a < score.size(); ++a) heap.push({score[a], a});
  std::vector<std::uint8_t> selected(score.size(), 0);

  Ranking ranking;
  ranking.order.reserve(score.size());
  while (!heap.empty()) {
    const auto top = heap.top();
    heap.pop();
    if (selected[top.actor] != 0 || top.score != score[top.actor]) continue;  // stale
    selected[top.actor] = 1;
    ranking.order.push_back({top.actor, static_cast<double>(top.score)});

    std::vector<ActorId> touched;
    for_each_neighbor(top.actor, [&](ActorId b) {
      if (selected[b] != 0) return;
      --score[b];
      touched.push_back(b);
    });
    for (ActorId b : touched) heap.push({score[b], b});
  }
  return ranking;
}

}  // namespace

Ranking rank_degree(const MultilayerNetwork& net, std::string network) {
  std::vector<double> scores(net.actor_count());
  for (ActorId a = 0; a < net.actor_count(); ++a) scores[a] = static_cast<double>(net.actor_degree(a));
  return ranking_from_scores(std::move(network), std::string(to_string(RankMethod::degree)), scores);
}

Ranking rank_neighborhood(const MultilayerNetwork& net, std::string network) {
  std::vector<double> scores(net.actor_count());
  for (ActorId a = 0; a < net.actor_count(); ++a) scores[a] = static_cast<double>(net.neighborhood(a).size());
  return ranking_from_scores(std::move(network), std::string(to_string(RankMethod::neighborhood)), scores);
}

Ranking rank_degree_discount(const MultilayerNetwork& net, std::string network) {
  std::vector<std::int64_t> base(net.actor_count());
  for (ActorId a = 0; a < net.actor_count(); ++a) base[a] = static_cast<std::int64_t>(net.actor_degree(a));
  auto ranking = discount_ranking(std::move(base), [&net](ActorId a, auto&& discount) {
    for (LayerId l = 0; l < net.layer_count(); ++l) {
      for (ActorId b : net.neighbors_unchecked(a, l)) discount(b);
    }
  });
  ranking.network = std::move(network);
  return finish(std::move(ranking), to_string(RankMethod::degree_discount));
}

Ranking rank_neighborhood_discount(const MultilayerNetwork& net, std::string network) {
  const auto flat = flatten(net);
  std::vector<std::int64_t> base(net.actor_count());
  for (ActorId a = 0; a < net.actor_count(); ++a) base[a] = static_cast<std::int64_t>(flat.degree(a, 0));
  auto ranking = discount_ranking(std::move(base), [&flat](ActorId a, auto&& discount) {
    for (ActorId b : flat.neighbors_unchecked(a, 0)) discount(b);
  });
  ranking.network = std::move(network);
  return finish(std::move(ranking), to_string(RankMethod::neighborhood_discount));
}

Ranking rank_random(const MultilayerNetwork& net, std::uint64_t seed, std::string network) {
  const std::size_t n = net.actor_count();
  std::vector<ActorId> perm(n);
  std::iota(perm.begin(), perm.end(), ActorId{0});
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);

  Ranking ranking;
  ranking.network = std::move(network);
  ranking.predictor = to_string(RankMethod::random);
  ranking.seed = seed;
  ranking.order.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ranking.order.push_back({perm[i], static_cast<double>(n - i)});
  return ranking;
}

Ranking rank_ground_truth(const SpsTable& table) {
  auto ranking = ranking_from_scores(table.network, std::string(to_string(RankMethod::ground_truth)), table.scores());
  if (table.protocol) ranking.params["protocol"] = to_string(*table.protocol);
  return ranking;
}

std::string_view to_string(RankMethod method) noexcept {
  switch (method) {
    case RankMethod::degree: return "deg-c";
    case RankMethod::degree_discount: return "deg-cd";
    case RankMethod::neighborhood: return "nghb-s";
    case RankMethod::neighborhood_discount: return "nghb-sd";
    case RankMethod::random: return "random";
    case RankMethod::ground_truth: return "ground-truth";
  }
  return "?";
}

RankMethod parse_rank_method(std::string_view text) {
  for (auto method : {RankMethod::degree, RankMethod::degree_discount, RankMethod::neighborhood,
                      RankMethod::neighborhood_discount, RankMethod::random, RankMethod::ground_truth}) {
    if (to_string(method) == text) return method;
  }
  throw ParameterError(fmt::format("unknown ranking method '{}'", text));
}

}  // namespace spreadnet
