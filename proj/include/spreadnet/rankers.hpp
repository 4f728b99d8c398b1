#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "spreadnet/network.hpp"
#include "spreadnet/potential.hpp"
#include "spreadnet/ranking.hpp"

namespace spreadnet {

// Every ranker breaks ties by ascending actor id, so a ranking is a
// deterministic function of (network, parameters, seed).

/// deg-c: score = actor_degree (per-layer degrees summed).
Ranking rank_degree(const MultilayerNetwork& net, std::string network = {});

/// nghb-s: score = size of the union of per-layer neighbor sets.
Ranking rank_neighborhood(const MultilayerNetwork& net, std::string network = {});

/// deg-cd, single-discount variant: repeatedly select the actor with the
/// highest current score (initially actor_degree), then subtract from every
/// unselected actor the number of edges, over all layers, joining it to the
/// selected one. The emitted score is the value at selection time.
Ranking rank_degree_discount(const MultilayerNetwork& net, std::string network = {});

/// nghb-sd: the same loop on neighborhood size, subtracting 1 from each
/// unselected actor in the selected actor's neighborhood.
Ranking rank_neighborhood_discount(const MultilayerNetwork& net, std::string network = {});

/// Uniform random permutation (Fisher-Yates on Rng(seed)); score = |A| - position.
Ranking rank_random(const MultilayerNetwork& net, std::uint64_t seed, std::string network = {});

/// Reference ranking R: actors by descending sps.
Ranking rank_ground_truth(const SpsTable& table);

enum class RankMethod { degree, degree_discount, neighborhood, neighborhood_discount, random, ground_truth };

/// "deg-c", "deg-cd", "nghb-s", "nghb-sd", "random", "ground-truth"
std::string_view to_string(RankMethod method) noexcept;
RankMethod parse_rank_method(std::string_view text);

}  // namespace spreadnet
