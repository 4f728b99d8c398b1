#include "spreadnet/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "spreadnet/errors.hpp"
#include "spreadnet/rng.hpp"

namespace spreadnet {

std::vector<double> GridSpec::default_pis() {
  std::vector<double> pis;
  for (int i = 1; i <= 20; ++i) pis.push_back(i / 20.0);
  return pis;
}

void check_grid(const GridSpec& grid) {
  if (grid.protocols.empty()) throw ParameterError("grid needs at least one protocol");
  if (grid.repetitions == 0) throw ParameterError("repetitions must be positive");
  auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  for (double p : grid.pis) {
    if (!in_unit(p)) throw ParameterError(fmt::format("pi {} outside [0, 1]", p));
  }
  for (Protocol protocol : grid.protocols) {
    const auto& feasible = grid.feasible(protocol);
    if (feasible.empty()) throw ParameterError(fmt::format("empty feasible pi set for {}", to_string(protocol)));
    for (double p : feasible) {
      const bool listed =
          std::any_of(grid.pis.begin(), grid.pis.end(), [p](double q) { return std::abs(p - q) < 1e-9; });
      if (!listed) {
        throw ParameterError(fmt::format("feasible pi {} for {} is not in the pi grid", p, to_string(protocol)));
      }
    }
  }
}

double sps(const Potential4& p, const SpsWeights& w) {
  for (double x : p) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw DomainError(fmt::format("normalized potential {} outside [0, 1]", x));
    }
  }
  const double total = w.activated + w.duration + w.peak + w.peak_iteration;
  if (w.activated < 0.0 || w.duration < 0.0 || w.peak < 0.0 || w.peak_iteration < 0.0 || !(total > 0.0)) {
    throw ParameterError("sps weights must be non-negative with a positive sum");
  }
  const double weighted =
      w.activated * p[0] + w.duration * (1.0 - p[1]) + w.peak * p[2] + w.peak_iteration * (1.0 - p[3]);
  return std::min(1.0, weighted / total);
}

std::vector<Potential4> normalize_columns(std::span<const Potential4> rows) {
  Potential4 max{};
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < 4; ++c) max[c] = std::max(max[c], row[c]);
  }
  std::vector<Potential4> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < 4; ++c) out[i][c] = max[c] > 0.0 ? rows[i][c] / max[c] : 0.0;
  }
  return out;
}

Saddle saddle_point(std::span<const double> scores) {
  if (scores.empty()) return {};
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  Saddle saddle;
  saddle.rank = (sorted.size() + 4) / 5;  // ceil(0.2 * n)
  saddle.value = sorted[saddle.rank - 1];
  return saddle;
}

std::vector<double> SpsTable::scores() const {
  std::vector<double> out(rows.size());
  std::transform(rows.begin(), rows.end(), out.begin(), [](const SpsRow& r) { return r.sps; });
  return out;
}

SpsTable make_sps_table(std::string network, std::optional<Protocol> protocol, std::vector<std::string> actors,
                        std::span<const Potential4> raw, const SpsWeights& weights) {
  if (actors.size() != raw.size()) throw ParameterError("actor names and potentials differ in length");
  SpsTable table;
  table.network = std::move(network);
  table.protocol = protocol;
  table.actors = std::move(actors);
  const auto normalized = normalize_columns(raw);
  table.rows.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    table.rows[i].raw = raw[i];
    table.rows[i].normalized = normalized[i];
    table.rows[i].sps = sps(normalized[i], weights);
  }
  table.saddle = saddle_point(table.scores());
  return table;
}

SpsTable build_sps_table(const MultilayerNetwork& net, std::string network_name, const GridSpec& grid,
                         Protocol protocol, std::uint64_t master_seed, const SpsBuildOptions& options) {
  check_grid(grid);
  if (std::find(grid.protocols.begin(), grid.protocols.end(), protocol) == grid.protocols.end()) {
    throw ParameterError(fmt::format("protocol {} is not part of the grid", to_string(protocol)));
  }
  if (net.actor_count() < 2) {
    throw DegenerateInputError(fmt::format("network '{}' has {} actor(s); ranking is undefined", network_name,
                                           net.actor_count()));
  }

  const auto& feasible = grid.feasible(protocol);
  const std::uint64_t protocol_seed = derive_seed(master_seed, protocol == Protocol::And ? 0 : 1);
  const std::size_t n = net.actor_count();

  std::vector<SimulationTask> tasks;
  tasks.reserve(n * feasible.size());
  for (ActorId a = 0; a < n; ++a) {
    for (double pi : feasible) {
      const auto pi_key = static_cast<std::uint64_t>(std::llround(pi * 1e9));
      tasks.push_back({a, pi, protocol, grid.repetitions, derive_seed(derive_seed(protocol_seed, pi_key), a)});
    }
  }
  const auto results = simulate_batch(net, tasks, options.jobs);

  std::vector<Potential4> raw(n);
  std::vector<Potential4> variance(n);
  const auto k = static_cast<double>(feasible.size());
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t j = 0; j < feasible.size(); ++j) {
      const auto& r = results[a * feasible.size() + j];
      for (std::size_t c = 0; c < 4; ++c) {
        raw[a][c] += r.mean[c];
        variance[a][c] += r.variance[c];
      }
    }
    for (std::size_t c = 0; c < 4; ++c) {
      raw[a][c] /= k;
      variance[a][c] /= k;
    }
  }

  auto table = make_sps_table(std::move(network_name), protocol, net.actors().names(), raw, options.weights);
  if (options.keep_variance) {
    table.has_variance = true;
    for (std::size_t a = 0; a < n; ++a) table.rows[a].variance = variance[a];
  }
  return table;
}

// --- transforms -------------------------------------------------------------

std::string_view to_string(TransformKind kind) noexcept {
  switch (kind) {
    case TransformKind::none: return "none";
    case TransformKind::norm_max: return "norm_max";
    case TransformKind::norm_act: return "norm_act";
    case TransformKind::norm_act_diam: return "norm_act_diam";
    case TransformKind::log: return "log";
    case TransformKind::log_norm_max: return "log_norm_max";
    case TransformKind::scatter: return "scatter";
    case TransformKind::norm_max_scatter: return "norm_max_scatter";
  }
  return "?";
}

TransformKind parse_transform(std::string_view text) {
  for (auto kind : kAllTransforms) {
    if (to_string(kind) == text) return kind;
  }
  throw ParameterError(fmt::format("unknown transform '{}'", text));
}

NetContext NetContext::of(const MultilayerNetwork& net) {
  const auto info = flattened_diameter(net);
  return {net.actor_count(), info.diameter, info.connected};
}

double scatter(double x) noexcept { return std::exp(3.0 * x) / std::exp(3.0); }

double inverse_scatter(double y) noexcept { return std::log(y * std::exp(3.0)) / 3.0; }

namespace {

double safe_div(double x, double d) noexcept { return d > 0.0 ? x / d : 0.0; }

template <typename Fn>
std::vector<Potential4> map_each(std::span<const Potential4> rows, Fn fn) {
  std::vector<Potential4> out(rows.begin(), rows.end());
  for (auto& row : out) {
    for (auto& x : row) x = fn(x);
  }
  return out;
}

}  // namespace

std::vector<Potential4> transform(std::span<const Potential4> rows, TransformKind kind, const NetContext& context) {
  const auto actors = static_cast<double>(context.actor_count);
  switch (kind) {
    case TransformKind::none:
      return {rows.begin(), rows.end()};
    case TransformKind::norm_max:
      return normalize_columns(rows);
    case TransformKind::norm_act:
      return map_each(rows, [actors](double x) { return safe_div(x, actors); });
    case TransformKind::norm_act_diam: {
      const auto diameter = static_cast<double>(context.diameter);
      std::vector<Potential4> out(rows.begin(), rows.end());
      for (auto& row : out) {
        row[0] = safe_div(row[0], actors);
        row[1] = safe_div(row[1], diameter);
        row[2] = safe_div(row[2], actors);
        row[3] = safe_div(row[3], diameter);
      }
      return out;
    }
    case TransformKind::log:
      return map_each(rows, [](double x) { return std::log(x + 1.0); });
    case TransformKind::log_norm_max: {
      const auto normalized = normalize_columns(rows);
      return map_each(normalized, [](double x) { return std::log(x + 1.0); });
    }
    case TransformKind::scatter:
      return map_each(rows, scatter);
    case TransformKind::norm_max_scatter: {
      const auto scattered = map_each(rows, scatter);
      return normalize_columns(scattered);
    }
  }
  return {rows.begin(), rows.end()};
}

std::vector<double> transform_scores(std::span<const double> scores, TransformKind kind, const NetContext& context) {
  if (kind == TransformKind::norm_act_diam) {
    throw ParameterError("norm_act_diam needs the four potential coordinates, not a score column");
  }
  std::vector<Potential4> rows(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) rows[i] = {scores[i], scores[i], scores[i], scores[i]};
  const auto transformed = transform(rows, kind, context);
  std::vector<double> out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) out[i] = transformed[i][0];
  return out;
}

}  // namespace spreadnet
