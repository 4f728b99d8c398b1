#include "spreadnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "spreadnet/errors.hpp"
#include "spreadnet/text.hpp"

namespace spreadnet {

namespace {

__extension__ typedef __int128 Fixed;

constexpr double kFixedScale = 0x1.0p62;

std::int64_t to_fixed(double sps) { return std::llround(sps * kFixedScale); }

double ratio(Fixed num, Fixed den, bool& vacuous) {
  vacuous = den == 0;
  if (vacuous) return 1.0;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string actor_label(const SpsTable& table, ActorId a) {
  return a < table.actors.size() ? table.actors[a] : fmt::format("#{}", a);
}

/// Throws unless `ranking` covers exactly the ids in `reference`.
void require_same_actors(const Ranking& ranking, const std::set<ActorId>& reference, const SpsTable& table) {
  std::set<ActorId> ids;
  for (const auto& entry : ranking.order) {
    if (!ids.insert(entry.actor).second) {
      throw DataError(fmt::format("ranking '{}' lists actor '{}' twice", ranking.predictor,
                                  actor_label(table, entry.actor)));
    }
  }
  if (ids == reference) return;
  std::vector<std::string> only_ranking;
  std::vector<std::string> only_reference;
  for (ActorId a : ids) {
    if (!reference.count(a)) only_ranking.push_back(actor_label(table, a));
  }
  for (ActorId a : reference) {
    if (!ids.count(a)) only_reference.push_back(actor_label(table, a));
  }
  throw ActorMismatchError(std::move(only_ranking), std::move(only_reference));
}

std::vector<std::int64_t> fixed_scores(const SpsTable& table) {
  std::vector<std::int64_t> out(table.rows.size());
  for (std::size_t a = 0; a < out.size(); ++a) out[a] = to_fixed(table.rows[a].sps);
  return out;
}

Fixed prefix_sum(const Ranking& ranking, const std::vector<std::int64_t>& scores, std::size_t k) {
  if (k < 1 || k > ranking.order.size()) {
    throw ParameterError(fmt::format("k = {} outside [1, {}]", k, ranking.order.size()));
  }
  Fixed sum = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const ActorId a = ranking.order[i].actor;
    if (a >= scores.size()) throw DataError(fmt::format("actor id {} not in the score table", a));
    sum += scores[a];
  }
  return sum;
}

}  // namespace

double cumulated_score(const Ranking& ranking, const SpsTable& table, std::size_t k) {
  return static_cast<double>(prefix_sum(ranking, fixed_scores(table), k)) / kFixedScale;
}

double relative_score(const Ranking& truth, const Ranking& pred, const SpsTable& table, std::size_t k) {
  const auto scores = fixed_scores(table);
  bool vacuous = false;
  return ratio(prefix_sum(pred, scores, k), prefix_sum(truth, scores, k), vacuous);
}

EvalReport evaluate(const Ranking& truth, const Ranking& pred, const SpsTable& table) {
  std::set<ActorId> all;
  for (ActorId a = 0; a < table.size(); ++a) all.insert(a);
  require_same_actors(truth, all, table);
  require_same_actors(pred, all, table);

  const std::size_t n = table.size();
  if (n == 0) throw DegenerateInputError("cannot evaluate an empty ranking");
  const auto scores = fixed_scores(table);
  const std::size_t k_s = std::clamp<std::size_t>(table.saddle.rank, 1, n);

  EvalReport report;
  report.network = table.network.empty() ? pred.network : table.network;
  report.predictor = pred.predictor;
  report.saddle_rank = k_s;
  report.saddle_k_tilde = static_cast<double>(k_s) / static_cast<double>(n);
  report.curve.reserve(n);

  std::vector<std::uint8_t> in_pred(n, 0);
  std::vector<std::uint8_t> in_truth(n, 0);
  std::size_t overlap = 0;
  Fixed pred_sum = 0;
  Fixed truth_sum = 0;
  double y_total = 0.0;
  double precision_total = 0.0;
  double jaccard_total = 0.0;

  for (std::size_t k = 1; k <= n; ++k) {
    const ActorId p = pred.order[k - 1].actor;
    const ActorId t = truth.order[k - 1].actor;
    pred_sum += scores[p];
    truth_sum += scores[t];
    in_pred[p] = 1;
    if (in_truth[p] != 0) ++overlap;
    in_truth[t] = 1;
    if (in_pred[t] != 0) ++overlap;

    bool vacuous = false;
    const double y = ratio(pred_sum, truth_sum, vacuous);
    report.vacuous_prefixes += vacuous ? 1 : 0;
    report.curve.push_back({static_cast<double>(k) / static_cast<double>(n), y});

    const auto kd = static_cast<double>(k);
    y_total += y;
    precision_total += static_cast<double>(overlap) / kd;
    jaccard_total += static_cast<double>(overlap) / static_cast<double>(2 * k - overlap);

    if (k == 1) {
      report.t_val = y;
      report.precision_t = precision_total;
      report.jaccard_t = jaccard_total;
    }
    if (k == k_s) {
      report.s_val = y;
      report.s_auc = y_total / kd;
      report.precision_s = precision_total / kd;
      report.jaccard_s = jaccard_total / kd;
    }
    if (k == n) {
      report.f_auc = y_total / kd;
      report.precision_f = precision_total / kd;
      report.jaccard_f = jaccard_total / kd;
    }
  }
  return report;
}

std::vector<double> metric_values(const EvalReport& r) {
  return {r.t_val,       r.s_auc,       r.s_val,     r.f_auc,     r.precision_t,
          r.precision_s, r.precision_f, r.jaccard_t, r.jaccard_s, r.jaccard_f};
}

std::string report_json(const EvalReport& report) {
  nlohmann::json doc;
  doc["network"] = report.network;
  doc["predictor"] = report.predictor;
  const auto values = metric_values(report);
  for (std::size_t i = 0; i < values.size(); ++i) doc["metrics"][std::string(kMetricNames[i])] = values[i];
  doc["actors"] = report.curve.size();
  doc["saddle_rank"] = report.saddle_rank;
  doc["saddle_k_tilde"] = report.saddle_k_tilde;
  doc["vacuous_prefixes"] = report.vacuous_prefixes;
  return doc.dump(2) + "\n";
}

std::string curve_csv(const Curve& curve, std::string_view network, std::string_view predictor) {
  std::string out = fmt::format("# network={}\n# predictor={}\n# points={}\nk_tilde,y_rel\n", network, predictor,
                                curve.size());
  for (const auto& point : curve) {
    fmt::format_to(std::back_inserter(out), "{},{}\n", format_real(point.k_tilde), format_real(point.y_rel));
  }
  return out;
}

std::string curve_csv(const EvalReport& report) {
  return curve_csv(report.curve, report.network, report.predictor);
}

void write_curve(const std::filesystem::path& path, const EvalReport& report) {
  write_file_atomic(path, curve_csv(report));
}

Curve resample_curve(const Curve& curve, std::size_t points) {
  if (curve.empty()) throw ParameterError("cannot resample an empty curve");
  if (points == 0) throw ParameterError("resampling needs at least one point");
  const auto n = static_cast<double>(curve.size());
  Curve out(points);
  for (std::size_t j = 1; j <= points; ++j) {
    const double k_tilde = static_cast<double>(j) / static_cast<double>(points);
    const auto k = std::clamp<long long>(std::llround(k_tilde * n), 1, static_cast<long long>(curve.size()));
    out[j - 1] = {k_tilde, curve[static_cast<std::size_t>(k - 1)].y_rel};
  }
  return out;
}

Curve average_curves(std::span<const Curve> curves, std::size_t points) {
  if (curves.empty()) throw ParameterError("no curves to average");
  Curve mean(points);
  for (const auto& curve : curves) {
    const auto resampled = resample_curve(curve, points);
    for (std::size_t j = 0; j < points; ++j) {
      mean[j].k_tilde = resampled[j].k_tilde;
      mean[j].y_rel += resampled[j].y_rel;
    }
  }
  for (auto& point : mean) point.y_rel /= static_cast<double>(curves.size());
  return mean;
}

}  // namespace spreadnet
