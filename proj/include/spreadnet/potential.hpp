#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spreadnet/micm.hpp"
#include "spreadnet/network.hpp"

namespace spreadnet {

/// The simulation plan. Only the feasible probabilities feed the score table;
/// `pis` is the full sweep they are drawn from.
struct GridSpec {
  std::vector<Protocol> protocols{Protocol::And, Protocol::Or};
  std::vector<double> pis = default_pis();
  std::size_t repetitions = 40;
  std::vector<double> feasible_and{0.80, 0.85, 0.90, 0.95};
  std::vector<double> feasible_or{0.05, 0.10, 0.15, 0.20};

  const std::vector<double>& feasible(Protocol protocol) const {
    return protocol == Protocol::And ? feasible_and : feasible_or;
  }

  /// 0.05, 0.10, ..., 1.00
  static std::vector<double> default_pis();
};

/// Throws ParameterError if a feasible set is empty or not contained in `pis`,
/// a probability is outside [0, 1], or repetitions is zero.
void check_grid(const GridSpec& grid);

/// Relative weights of the spreading-potential score; the score divides by
/// their sum. Defaults 3:1:1:1, i.e. 1/2, 1/6, 1/6, 1/6.
struct SpsWeights {
  double activated = 3.0;
  double duration = 1.0;
  double peak = 1.0;
  double peak_iteration = 1.0;
};

/// (w_ex * ex + w_sl * (1 - sl) + w_pi * pi + w_pl * (1 - pl)) / sum(w) on a
/// max-normalized vector. Throws DomainError if a coordinate lies outside
/// [0, 1] and ParameterError for negative or all-zero weights.
double sps(const Potential4& normalized, const SpsWeights& weights = {});

/// Divides every coordinate by its column maximum; an all-zero column stays 0.
std::vector<Potential4> normalize_columns(std::span<const Potential4> rows);

/// Top-spreader cutoff: rank k_s = ceil(0.2 * |A|) in the descending order and
/// the sps found at that rank.
struct Saddle {
  std::size_t rank = 0;
  double value = 0.0;
};
Saddle saddle_point(std::span<const double> scores);

struct SpsRow {
  Potential4 raw{};
  Potential4 normalized{};
  double sps = 0.0;
  Potential4 variance{};  ///< only meaningful when SpsTable::has_variance
};

struct SpsTable {
  std::string network;
  std::optional<Protocol> protocol;
  std::vector<std::string> actors;  ///< index = ActorId
  std::vector<SpsRow> rows;
  Saddle saddle;
  bool has_variance = false;

  std::size_t size() const noexcept { return rows.size(); }
  std::vector<double> scores() const;
};

/// Normalizes `raw`, scores every actor and locates the saddle.
SpsTable make_sps_table(std::string network, std::optional<Protocol> protocol, std::vector<std::string> actors,
                        std::span<const Potential4> raw, const SpsWeights& weights = {});

struct SpsBuildOptions {
  std::size_t jobs = 1;
  SpsWeights weights{};
  bool keep_variance = false;
};

/// For every actor, averages `repetitions` runs at each feasible pi of
/// `protocol`, averages those means over the feasible set, then normalizes
/// and scores. Run seeds follow the tree master -> protocol -> pi -> actor ->
/// repetition, so the table is independent of the worker count.
/// Throws DegenerateInputError for networks with fewer than 2 actors.
SpsTable build_sps_table(const MultilayerNetwork& net, std::string network_name, const GridSpec& grid,
                         Protocol protocol, std::uint64_t master_seed, const SpsBuildOptions& options = {});

// --- label transformations ------------------------------------------------

enum class TransformKind { none, norm_max, norm_act, norm_act_diam, log, log_norm_max, scatter, norm_max_scatter };

inline constexpr TransformKind kAllTransforms[] = {
    TransformKind::none, TransformKind::norm_max,     TransformKind::norm_act, TransformKind::norm_act_diam,
    TransformKind::log,  TransformKind::log_norm_max, TransformKind::scatter,  TransformKind::norm_max_scatter};

std::string_view to_string(TransformKind kind) noexcept;
TransformKind parse_transform(std::string_view text);

/// Network facts some transforms need.
struct NetContext {
  std::size_t actor_count = 0;
  std::size_t diameter = 0;
  /// False when the diameter comes from the largest component only.
  bool connected = true;

  static NetContext of(const MultilayerNetwork& net);
};

/// exp(3x) / exp(3); strictly increasing, maps 1 to 1.
double scatter(double x) noexcept;
/// ln(y * exp(3)) / 3
double inverse_scatter(double y) noexcept;

/// Column-wise transform of potential vectors. Composites apply right to
/// left: log_norm_max = log(norm_max(p)), norm_max_scatter = norm_max(scatter(p)).
/// norm_act_diam divides p_ex, p_pi by |A| and p_sl, p_pl by the diameter.
std::vector<Potential4> transform(std::span<const Potential4> rows, TransformKind kind, const NetContext& context);

/// Same on a single score column. norm_act_diam needs coordinates and throws ParameterError.
std::vector<double> transform_scores(std::span<const double> scores, TransformKind kind, const NetContext& context);

}  // namespace spreadnet
