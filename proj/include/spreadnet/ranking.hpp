#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spreadnet/network.hpp"

namespace spreadnet {

struct RankedActor {
  ActorId actor = 0;
  double score = 0.0;
  bool operator==(const RankedActor&) const = default;
};

/// Ordered actor list produced by a predictor; the unit exchanged between
/// rankers, the evaluator and external predictors.
struct Ranking {
  std::string network;
  std::string predictor;
  std::vector<RankedActor> order;  ///< best first, scores non-increasing
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::string> params;

  std::size_t size() const noexcept { return order.size(); }
  std::vector<ActorId> actors() const;
};

/// Sorts actors by descending score, ties by ascending id.
Ranking ranking_from_scores(std::string network, std::string predictor, std::span<const double> scores);

/// Empty when `ranking` is a permutation of [0, actor_count) with
/// non-increasing scores; otherwise every problem found.
std::vector<std::string> check_ranking(const Ranking& ranking, std::size_t actor_count);

/// CSV "rank,actor,score" with 1-based ranks and actor names.
std::string serialize_ranking(const Ranking& ranking, std::span<const std::string> actor_names);
/// Writes the CSV and a "<stem>.meta.json" sidecar next to it.
void write_ranking(const std::filesystem::path& path, const Ranking& ranking,
                   std::span<const std::string> actor_names);
std::filesystem::path ranking_metadata_path(const std::filesystem::path& csv_path);

/// File content before actor names are resolved.
struct RankingRows {
  std::vector<std::pair<std::string, double>> rows;
  std::string network;
  std::string predictor;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::string> params;
};

RankingRows parse_ranking_rows(std::string_view text, const std::string& source);
/// Reads the CSV and, when present, its metadata sidecar.
RankingRows read_ranking_rows(const std::filesystem::path& path);

/// Maps names to ids of `actor_names`. Throws ActorMismatchError listing the
/// names found only in the ranking and those found only in `actor_names`.
Ranking resolve_ranking(const RankingRows& rows, std::span<const std::string> actor_names);

Ranking read_ranking(const std::filesystem::path& path, std::span<const std::string> actor_names);

}  // namespace spreadnet
