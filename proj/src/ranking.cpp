#include "spreadnet/ranking.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include <fmt/format.h>
#include <json.hpp>

#include "spreadnet/errors.hpp"
#include "spreadnet/text.hpp"

namespace spreadnet {

using nlohmann::json;

std::vector<ActorId> Ranking::actors() const {
  std::vector<ActorId> out(order.size());
  std::transform(order.begin(), order.end(), out.begin(), [](const RankedActor& r) { return r.actor; });
  return out;
}

Ranking ranking_from_scores(std::string network, std::string predictor, std::span<const double> scores) {
  std::vector<ActorId> ids(scores.size());
  std::iota(ids.begin(), ids.end(), ActorId{0});
  std::stable_sort(ids.begin(), ids.end(), [&](ActorId a, ActorId b) { return scores[a] > scores[b]; });

  Ranking ranking;
  ranking.network = std::move(network);
  ranking.predictor = std::move(predictor);
  ranking.order.reserve(ids.size());
  for (ActorId a : ids) ranking.order.push_back({a, scores[a]});
  return ranking;
}

std::vector<std::string> check_ranking(const Ranking& ranking, std::size_t actor_count) {
  std::vector<std::string> problems;
  if (ranking.order.size() != actor_count) {
    problems.push_back(fmt::format("ranking has {} entries for {} actors", ranking.order.size(), actor_count));
  }
  std::vector<std::uint8_t> seen(actor_count, 0);
  for (std::size_t i = 0; i < ranking.order.size(); ++i) {
    const auto& entry = ranking.order[i];
    if (entry.actor >= actor_count) {
      problems.push_back(fmt::format("rank {}: actor id {} out of range", i + 1, entry.actor));
    } else if (seen[entry.actor]++ != 0) {
      problems.push_back(fmt::format("rank {}: actor id {} listed twice", i + 1, entry.actor));
    }
    if (i > 0 && entry.score > ranking.order[i - 1].score) {
      problems.push_back(fmt::format("rank {}: score increases", i + 1));
    }
  }
  return problems;
}

std::string serialize_ranking(const Ranking& ranking, std::span<const std::string> actor_names) {
  std::string out = "rank,actor,score\n";
  for (std::size_t i = 0; i < ranking.order.size(); ++i) {
    const auto& entry = ranking.order[i];
    fmt::format_to(std::back_inserter(out), "{},{},{}\n", i + 1, actor_names[entry.actor],
                   format_real(entry.score));
  }
  return out;
}

std::filesystem::path ranking_metadata_path(const std::filesystem::path& csv_path) {
  auto meta = csv_path;
  meta.replace_extension(".meta.json");
  return meta;
}

void write_ranking(const std::filesystem::path& path, const Ranking& ranking,
                   std::span<const std::string> actor_names) {
  write_file_atomic(path, serialize_ranking(ranking, actor_names));
  json meta = {{"network", ranking.network},
               {"predictor", ranking.predictor},
               {"actors", ranking.order.size()},
               {"params", ranking.params},
               {"tie_break", "ascending actor id"}};
  meta["seed"] = ranking.seed ? json(*ranking.seed) : json(nullptr);
  write_file_atomic(ranking_metadata_path(path), meta.dump(2) + "\n");
}

RankingRows parse_ranking_rows(std::string_view text, const std::string& source) {
  RankingRows result;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header = false;
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    const auto line = trim(text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos));
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!header) {
      if (line != "rank,actor,score") throw ParseError(source, line_no, "expected header 'rank,actor,score'");
      header = true;
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.size() != 3) throw ParseError(source, line_no, "expected 'rank,actor,score'");
    const auto rank = parse_unsigned(fields[0], source, line_no);
    if (rank != result.rows.size() + 1) {
      throw ParseError(source, line_no, fmt::format("rank {} out of sequence", rank));
    }
    const double score = parse_real(fields[2], source, line_no);
    if (!result.rows.empty() && score > result.rows.back().second) {
      throw ParseError(source, line_no, "scores must be non-increasing");
    }
    result.rows.emplace_back(fields[1], score);
  }
  if (!header) throw ParseError(source, line_no, "missing header");
  return result;
}

RankingRows read_ranking_rows(const std::filesystem::path& path) {
  auto rows = parse_ranking_rows(read_file(path), path.string());
  rows.predictor = path.stem().string();
  const auto meta_path = ranking_metadata_path(path);
  if (std::filesystem::exists(meta_path)) {
    try {
      const auto meta = json::parse(read_file(meta_path));
      rows.network = meta.value("network", "");
      rows.predictor = meta.value("predictor", rows.predictor);
      if (meta.contains("seed") && meta["seed"].is_number_unsigned()) rows.seed = meta["seed"].get<std::uint64_t>();
      if (meta.contains("params") && meta["params"].is_object()) {
        for (const auto& [key, value] : meta["params"].items()) {
          rows.params[key] = value.is_string() ? value.get<std::string>() : value.dump();
        }
      }
    } catch (const json::exception& e) {
      throw DataError(fmt::format("unreadable ranking metadata '{}': {}", meta_path.string(), e.what()));
    }
  }
  return rows;
}

Ranking resolve_ranking(const RankingRows& rows, std::span<const std::string> actor_names) {
  std::unordered_map<std::string_view, ActorId> ids;
  for (std::size_t i = 0; i < actor_names.size(); ++i) ids.emplace(actor_names[i], static_cast<ActorId>(i));

  Ranking ranking;
  ranking.network = rows.network;
  ranking.predictor = rows.predictor;
  ranking.seed = rows.seed;
  ranking.params = rows.params;

  std::set<std::string> only_ranking;
  std::vector<std::uint8_t> seen(actor_names.size(), 0);
  for (const auto& [name, score] : rows.rows) {
    auto it = ids.find(name);
    if (it == ids.end()) {
      only_ranking.insert(name);
      continue;
    }
    if (seen[it->second]++ != 0) throw DataError(fmt::format("actor '{}' ranked twice", name));
    ranking.order.push_back({it->second, score});
  }
  std::set<std::string> only_reference;
  for (std::size_t i = 0; i < actor_names.size(); ++i) {
    if (seen[i] == 0) only_reference.insert(actor_names[i]);
  }
  if (!only_ranking.empty() || !only_reference.empty()) {
    throw ActorMismatchError({only_ranking.begin(), only_ranking.end()},
                             {only_reference.begin(), only_reference.end()});
  }
  return ranking;
}

Ranking read_ranking(const std::filesystem::path& path, std::span<const std::string> actor_names) {
  return resolve_ranking(read_ranking_rows(path), actor_names);
}

}  // namespace spreadnet
