#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spreadnet/potential.hpp"
#include "spreadnet/ranking.hpp"

namespace spreadnet {

// Scores are accumulated in fixed point (round(sps * 2^62) per actor, 128-bit
// sums). Equal actor sets therefore have bit-identical sums whatever their
// order, and a prefix that dominates another never compares lower.

/// Sum of ground-truth sps over the first k actors of `ranking`.
/// Throws ParameterError unless 1 <= k <= ranking size.
double cumulated_score(const Ranking& ranking, const SpsTable& table, std::size_t k);

/// cumulated_score(pred, k) / cumulated_score(truth, k); 1.0 when the
/// denominator is zero (vacuous prefix).
double relative_score(const Ranking& truth, const Ranking& pred, const SpsTable& table, std::size_t k);

struct CurvePoint {
  double k_tilde = 0.0;
  double y_rel = 0.0;
  bool operator==(const CurvePoint&) const = default;
};
using Curve = std::vector<CurvePoint>;

struct EvalReport {
  std::string network;
  std::string predictor;
  double t_val = 0.0;
  double s_auc = 0.0;
  double s_val = 0.0;
  double f_auc = 0.0;
  double precision_t = 0.0;
  double precision_s = 0.0;
  double precision_f = 0.0;
  double jaccard_t = 0.0;
  double jaccard_s = 0.0;
  double jaccard_f = 0.0;
  std::size_t saddle_rank = 0;
  double saddle_k_tilde = 0.0;
  std::size_t vacuous_prefixes = 0;  ///< prefixes whose ground-truth sum is 0
  Curve curve;                       ///< one point per k = 1..|A|
};

/// T_val = y_rel(1); S_val = y_rel(k_s); S_auc and F_auc are the means of
/// y_rel over k = 1..k_s and k = 1..|A|. precision_X and jaccard_X average
/// |top_k(pred) & top_k(truth)| / k and / |union| over k = 1..k_X.
/// Throws ActorMismatchError when the rankings and the table disagree on the
/// actor set.
EvalReport evaluate(const Ranking& truth, const Ranking& pred, const SpsTable& table);

/// Metric names in report/column order.
inline constexpr std::string_view kMetricNames[] = {"T_val",       "S_auc",       "S_val",      "F_auc",
                                                    "precision_T", "precision_S", "precision_F", "jaccard_T",
                                                    "jaccard_S",   "jaccard_F"};
std::vector<double> metric_values(const EvalReport& report);

/// JSON document with every metric, the saddle and the vacuous-prefix count.
std::string report_json(const EvalReport& report);

/// "# key=value" metadata lines, then "k_tilde,y_rel" rows.
std::string curve_csv(const EvalReport& report);
std::string curve_csv(const Curve& curve, std::string_view network, std::string_view predictor);
void write_curve(const std::filesystem::path& path, const EvalReport& report);

/// Step-resamples onto k~ = j / points, j = 1..points, using
/// k = round(k~ * n) clamped to [1, n].
Curve resample_curve(const Curve& curve, std::size_t points = 1000);
/// Pointwise mean of resampled curves.
Curve average_curves(std::span<const Curve> curves, std::size_t points = 1000);

}  // namespace spreadnet
