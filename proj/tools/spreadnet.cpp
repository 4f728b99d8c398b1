// spreadnet: command-line front end.
//
// Exit codes: 0 success, 1 usage or parameter error, 2 data error.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "spreadnet/bench.hpp"
#include "spreadnet/checksum.hpp"
#include "spreadnet/dataset.hpp"
#include "spreadnet/errors.hpp"
#include "spreadnet/metrics.hpp"
#include "spreadnet/micm.hpp"
#include "spreadnet/netgen.hpp"
#include "spreadnet/network_io.hpp"
#include "spreadnet/parallel.hpp"
#include "spreadnet/potential.hpp"
#include "spreadnet/rankers.hpp"
#include "spreadnet/ranking.hpp"
#include "spreadnet/rng.hpp"
#include "spreadnet/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spreadnet;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- configuration ---------------------------------------------------------

/// key=value lines; '#' starts a comment line. Keys may carry a leading "--".
std::vector<std::pair<std::string, std::string>> read_config(const fs::path& path) {
  if (!fs::exists(path)) throw UsageError(fmt::format("config file '{}' not found", path.string()));
  std::vector<std::pair<std::string, std::string>> entries;
  const auto text = read_file(path);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    const auto line = trim(std::string_view(text).substr(pos, eol == std::string::npos ? std::string::npos : eol - pos));
    pos = eol == std::string::npos ? text.size() : eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError(fmt::format("{}:{}: expected key=value", path.string(), line_no));
    }
    auto key = std::string(trim(line.substr(0, eq)));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    entries.emplace_back(key, std::string(trim(line.substr(eq + 1))));
  }
  return entries;
}

bool mentions_option(const std::vector<std::string>& args, const std::string& key) {
  const auto flag = "--" + key;
  for (const auto& arg : args) {
    if (arg == flag || arg.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

/// Appends config entries the command line leaves unset, so flags win over
/// the file and the file wins over built-in defaults.
void merge_config(CLI::App& app, std::vector<std::string>& args) {
  std::optional<fs::path> config_path;
  std::optional<std::string> subcommand;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else if (!subcommand && !args[i].empty() && args[i].front() != '-') {
      subcommand = args[i];
    }
  }
  if (!config_path || !subcommand) return;
  CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(*subcommand);
  } catch (const CLI::OptionNotFound&) {
    return;  // reported by the parser
  }
  for (const auto& [key, value] : read_config(*config_path)) {
    const auto* option = sub->get_option_no_throw("--" + key);
    if (option == nullptr) {
      throw UsageError(fmt::format("config key '{}' is not an option of '{}'", key, *subcommand));
    }
    if (mentions_option(args, key)) continue;
    if (option->get_expected_min() == 0) {
      if (value == "true" || value == "1") {
        args.push_back("--" + key);
      } else if (value != "false" && value != "0") {
        throw UsageError(fmt::format("config key '{}' expects true or false", key));
      }
    } else {
      args.push_back("--" + key);
      args.push_back(value);
    }
  }
}

json resolved_options(const CLI::App& sub) {
  json config = json::object();
  for (const auto* option : sub.get_options()) {
    if (option->get_lnames().empty()) continue;
    const auto& name = option->get_lnames().front();
    if (name == "help") continue;
    if (option->count() > 0) {
      const auto& results = option->results();
      config[name] = option->get_expected_min() == 0 ? std::string("true") : fmt::format("{}", fmt::join(results, ","));
    } else {
      config[name] = option->get_expected_min() == 0 ? std::string("false") : option->get_default_str();
    }
  }
  return config;
}

// --- run manifest --------------------------------------------------------------

struct Run {
  std::string subcommand;
  const CLI::App* app = nullptr;
  std::uint64_t seed = 0;
  std::string seed_source = "default";
  std::vector<fs::path> inputs;
  std::vector<fs::path> outputs;
  json extra = json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

json checksums(const std::vector<fs::path>& paths) {
  json out = json::array();
  for (const auto& path : paths) {
    if (fs::is_regular_file(path)) out.push_back({{"path", path.string()}, {"sha256", sha256_file(path)}});
  }
  return out;
}

fs::path default_manifest_path(fs::path out) {
  if (!out.has_filename()) out = out.parent_path();
  out += ".run.json";
  return out;
}

void write_run_manifest(const Run& run, const fs::path& out, const std::string& explicit_path) {
  const fs::path path = explicit_path.empty() ? default_manifest_path(out) : fs::path(explicit_path);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - run.start;
  json doc = {{"tool", "spreadnet"},
              {"version", SPREADNET_VERSION},
              {"subcommand", run.subcommand},
              {"config", resolved_options(*run.app)},
              {"master_seed", run.seed},
              {"seed_source", run.seed_source},
              {"rng_algorithm", kRngAlgorithm},
              {"inputs", checksums(run.inputs)},
              {"outputs", checksums(run.outputs)},
              {"wall_clock_seconds", elapsed.count()}};
  if (!run.extra.empty()) doc["details"] = run.extra;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_file_atomic(path, doc.dump(2) + "\n");
}

/// --seed, then the config file (merged into the flags), then SPREADNET_SEED.
void resolve_seed(Run& run, const std::optional<std::uint64_t>& flag) {
  if (flag) {
    run.seed = *flag;
    run.seed_source = "option";
    return;
  }
  if (const char* env = std::getenv("SPREADNET_SEED"); env != nullptr && *env != '\0') {
    try {
      run.seed = parse_unsigned(env, "SPREADNET_SEED", 1);
    } catch (const DataError&) {
      throw UsageError(fmt::format("SPREADNET_SEED='{}' is not an unsigned integer", env));
    }
    run.seed_source = "environment";
  }
}

std::vector<Protocol> parse_protocols(const std::vector<std::string>& names) {
  std::vector<Protocol> out;
  for (const auto& name : names) {
    const auto protocol = parse_protocol(name);
    if (std::find(out.begin(), out.end(), protocol) != out.end()) {
      throw ParameterError(fmt::format("protocol '{}' listed twice", name));
    }
    out.push_back(protocol);
  }
  if (out.empty()) throw ParameterError("at least one protocol is required");
  return out;
}

SpsWeights parse_weights(const std::vector<double>& values) {
  if (values.size() != 4) throw ParameterError("--weights takes four values (p_ex, p_sl, p_pi, p_pl)");
  return {values[0], values[1], values[2], values[3]};
}

struct GridOptions {
  std::vector<std::string> protocols{"and", "or"};
  std::size_t reps = 40;
  std::vector<double> pis = GridSpec::default_pis();
  std::vector<double> feasible_and = GridSpec{}.feasible_and;
  std::vector<double> feasible_or = GridSpec{}.feasible_or;

  void add_to(CLI::App* sub) {
    sub->add_option("--protocols", protocols, "Protocols to simulate")->delimiter(',')->capture_default_str();
    sub->add_option("--reps", reps, "Repetitions per (actor, pi)")->capture_default_str();
    sub->add_option("--pis", pis, "Probability sweep")->delimiter(',')->capture_default_str();
    sub->add_option("--feasible-and", feasible_and, "Feasible pi values under AND")->delimiter(',')->capture_default_str();
    sub->add_option("--feasible-or", feasible_or, "Feasible pi values under OR")->delimiter(',')->capture_default_str();
  }

  GridSpec grid() const {
    GridSpec g;
    g.protocols = parse_protocols(protocols);
    g.repetitions = reps;
    g.pis = pis;
    g.feasible_and = feasible_and;
    g.feasible_or = feasible_or;
    check_grid(g);
    return g;
  }
};

fs::path resolve_relative(const fs::path& base, const std::string& value) {
  const fs::path p(value);
  return p.is_absolute() ? p : base / p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spreading-potential datasets and top-spreader ranking evaluation for multilayer networks",
               "spreadnet"};
  app.set_version_flag("--version", SPREADNET_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  std::string config_file;
  app.add_option("--config", config_file, "key=value file with defaults for the subcommand's options");

  std::size_t jobs = default_jobs();
  std::optional<std::uint64_t> seed_flag;
  std::string run_manifest;
  auto add_common = [&](CLI::App* sub, bool seeded) {
    sub->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
    sub->add_option("--run-manifest", run_manifest, "Run manifest path (default: <out>.run.json)");
    if (seeded) sub->add_option("--seed", seed_flag, "Master seed (falls back to SPREADNET_SEED, then 0)");
  };

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a synthetic multilayer corpus");
  std::string gen_model = "er";
  std::size_t gen_count = 1;
  std::string gen_out;
  CorpusSpec corpus_spec;
  gen->add_option("--model", gen_model, "er or pa")->capture_default_str();
  gen->add_option("--count", gen_count, "Number of networks")->capture_default_str();
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--min-layers", corpus_spec.min_layers)->capture_default_str();
  gen->add_option("--max-layers", corpus_spec.max_layers)->capture_default_str();
  gen->add_option("--min-actors", corpus_spec.min_actors)->capture_default_str();
  gen->add_option("--max-actors", corpus_spec.max_actors)->capture_default_str();
  gen->add_option("--er-p", corpus_spec.er_edge_prob, "ER edge probability")->capture_default_str();
  gen->add_option("--pa-m", corpus_spec.pa_attach_m, "PA edges per new actor")->capture_default_str();
  add_common(gen, true);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Trace one diffusion run as CSV");
  std::string sim_net;
  std::string sim_actor;
  double sim_pi = 0.5;
  std::string sim_protocol = "or";
  std::string sim_out;
  sim->add_option("--net", sim_net, "Network file")->required();
  sim->add_option("--seed-actor", sim_actor, "Name of the initially active actor")->required();
  sim->add_option("--pi", sim_pi, "Activation probability")->capture_default_str();
  sim->add_option("--protocol", sim_protocol, "and or or")->capture_default_str();
  sim->add_option("--out", sim_out, "Trace file (default: standard output)");
  add_common(sim, true);

  // dataset
  auto* ds = app.add_subcommand("dataset", "Build spreading-potential score tables for a corpus");
  std::string ds_corpus;
  std::string ds_out;
  GridOptions ds_grid;
  std::vector<double> ds_weights{3, 1, 1, 1};
  bool ds_force = false;
  bool ds_keep_variance = false;
  ds->add_option("--corpus", ds_corpus, "Directory of network files")->required();
  ds->add_option("--out", ds_out, "Output directory")->required();
  ds_grid.add_to(ds);
  ds->add_option("--weights", ds_weights, "Relative sps weights for p_ex,p_sl,p_pi,p_pl")
      ->delimiter(',')
      ->capture_default_str();
  ds->add_flag("--force", ds_force, "Recompute even if the output holds another configuration");
  ds->add_flag("--keep-variance", ds_keep_variance, "Add per-coordinate variance columns");
  add_common(ds, true);

  // rank
  auto* rk = app.add_subcommand("rank", "Rank the actors of a network");
  std::string rk_method;
  std::string rk_net;
  std::string rk_sps;
  std::string rk_out;
  rk->add_option("--method", rk_method, "deg-c, deg-cd, nghb-s, nghb-sd, random or ground-truth")->required();
  rk->add_option("--net", rk_net, "Network file");
  rk->add_option("--sps", rk_sps, "Score table (ground-truth)");
  rk->add_option("--out", rk_out, "Ranking CSV")->required();
  add_common(rk, true);

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Score a predicted ranking against the ground truth");
  std::string ev_truth;
  std::string ev_pred;
  std::string ev_sps;
  std::string ev_out;
  std::string ev_curve;
  ev->add_option("--truth", ev_truth, "Reference ranking (default: derived from --sps)");
  ev->add_option("--pred", ev_pred, "Predicted ranking")->required();
  ev->add_option("--sps", ev_sps, "Score table")->required();
  ev->add_option("--out", ev_out, "Report JSON")->required();
  ev->add_option("--curve", ev_curve, "Curve CSV");
  add_common(ev, false);

  // evaluate-batch
  auto* eb = app.add_subcommand("evaluate-batch", "Mean metrics per predictor over many networks");
  std::string eb_manifest;
  std::string eb_out;
  std::string eb_curves;
  std::size_t eb_points = 1000;
  eb->add_option("--manifest", eb_manifest, "Batch JSON")->required();
  eb->add_option("--out", eb_out, "Wide CSV (rows = predictor, columns = metric)")->required();
  eb->add_option("--curves", eb_curves, "Directory for averaged curves, one CSV per predictor");
  eb->add_option("--points", eb_points, "Resampling points of averaged curves")->capture_default_str();
  add_common(eb, false);

  // bench
  auto* bn = app.add_subcommand("bench", "Time the simulation grid per network and fit a line");
  std::string bn_corpus;
  std::string bn_out;
  GridOptions bn_grid;
  bn->add_option("--corpus", bn_corpus, "Directory of network files")->required();
  bn->add_option("--out", bn_out, "Timing CSV")->required();
  bn_grid.add_to(bn);
  add_common(bn, true);

  // transform
  auto* tf = app.add_subcommand("transform", "Apply label transformations to a score table");
  std::string tf_sps;
  std::string tf_net;
  std::string tf_out;
  std::vector<std::string> tf_kinds;
  tf->add_option("--sps", tf_sps, "Score table")->required();
  tf->add_option("--net", tf_net, "Network file (needed by norm_act and norm_act_diam)");
  tf->add_option("--kinds", tf_kinds, "Transformations (default: all)")->delimiter(',');
  tf->add_option("--out", tf_out, "Long CSV: kind,actor,p_ex,p_sl,p_pi,p_pl")->required();
  add_common(tf, false);

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    merge_config(app, args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "spreadnet: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "spreadnet: " << e.what() << "\n";
    return 1;
  }

  Run run;
  run.app = app.get_subcommands().front();
  run.subcommand = run.app->get_name();
  jobs = std::max<std::size_t>(jobs, 1);

  try {
    if (*gen) {
      resolve_seed(run, seed_flag);
      corpus_spec.model = parse_graph_model(gen_model);
      const fs::path out(gen_out);
      fs::create_directories(out);
      const auto corpus = generate_corpus(gen_count, corpus_spec, run.seed, jobs);
      json networks = json::array();
      for (const auto& entry : corpus) {
        const auto file = out / (entry.name + std::string(kNetworkExtension));
        const auto text = serialize_network(entry.network);
        write_file_atomic(file, text);
        run.outputs.push_back(file);
        networks.push_back({{"name", entry.name},
                            {"file", file.filename().string()},
                            {"sha256", sha256_hex(text)},
                            {"seed", entry.spec.seed},
                            {"layers", entry.spec.layer_count},
                            {"actors", entry.spec.actor_count},
                            {"edges", entry.network.edge_count()}});
      }
      const json manifest = {{"tool", "spreadnet"},
                             {"version", SPREADNET_VERSION},
                             {"rng_algorithm", kRngAlgorithm},
                             {"model", to_string(corpus_spec.model)},
                             {"master_seed", run.seed},
                             {"spec",
                              {{"min_layers", corpus_spec.min_layers},
                               {"max_layers", corpus_spec.max_layers},
                               {"min_actors", corpus_spec.min_actors},
                               {"max_actors", corpus_spec.max_actors},
                               {"er_edge_prob", corpus_spec.er_edge_prob},
                               {"pa_attach_m", corpus_spec.pa_attach_m}}},
                             {"networks", networks}};
      write_file_atomic(out / "corpus.json", manifest.dump(2) + "\n");
      run.outputs.push_back(out / "corpus.json");
      write_run_manifest(run, out, run_manifest);

    } else if (*sim) {
      resolve_seed(run, seed_flag);
      const auto net = read_network(sim_net);
      run.inputs.push_back(sim_net);
      MicmConfig cfg{sim_pi, parse_protocol(sim_protocol), net.actor_id(sim_actor), run.seed};
      std::string trace = "iteration,newly_active_actor_ids\n";
      struct TraceObserver {
        const MultilayerNetwork& net;
        std::string& out;
        void attempt(ActorId, ActorId, LayerId, bool) noexcept {}
        void iteration(std::uint32_t t, std::span<const ActorId> fresh) {
          out += std::to_string(t);
          out += ',';
          for (std::size_t i = 0; i < fresh.size(); ++i) {
            if (i > 0) out += ';';
            out += net.actor_name(fresh[i]);
          }
          out += '\n';
        }
      };
      MicmSimulator simulator(net);
      const auto result = simulator.run(cfg, TraceObserver{net, trace});
      run.extra = {{"p_ex", result.activated},
                   {"p_sl", result.duration},
                   {"p_pi", result.peak},
                   {"p_pl", result.peak_iteration}};
      if (sim_out.empty()) {
        std::cout << trace;
      } else {
        write_file_atomic(sim_out, trace);
        run.outputs.push_back(sim_out);
        write_run_manifest(run, sim_out, run_manifest);
      }

    } else if (*ds) {
      resolve_seed(run, seed_flag);
      const auto grid = ds_grid.grid();
      PipelineOptions options;
      options.jobs = jobs;
      options.force = ds_force;
      options.keep_variance = ds_keep_variance;
      options.weights = parse_weights(ds_weights);
      const auto report = run_pipeline(ds_corpus, grid, ds_out, run.seed, options);
      for (const auto& [name, path] : corpus_files(ds_corpus)) run.inputs.push_back(path);
      run.outputs = report.outputs;
      run.outputs.push_back(fs::path(ds_out) / "manifest.json");
      run.extra = {{"tables_written", report.written.size()}, {"tables_kept", report.skipped.size()}};
      std::cerr << fmt::format("{} table(s) written, {} unchanged\n", report.written.size(), report.skipped.size());
      write_run_manifest(run, ds_out, run_manifest);

    } else if (*rk) {
      resolve_seed(run, seed_flag);
      const auto method = parse_rank_method(rk_method);
      Ranking ranking;
      std::vector<std::string> names;
      if (method == RankMethod::ground_truth) {
        if (rk_sps.empty()) throw UsageError("--method ground-truth needs --sps");
        const auto table = read_sps_table(rk_sps);
        run.inputs.push_back(rk_sps);
        ranking = rank_ground_truth(table);
        names = table.actors;
      } else {
        if (rk_net.empty()) throw UsageError(fmt::format("--method {} needs --net", rk_method));
        const auto net = read_network(rk_net);
        run.inputs.push_back(rk_net);
        const auto network = fs::path(rk_net).stem().string();
        switch (method) {
          case RankMethod::degree: ranking = rank_degree(net, network); break;
          case RankMethod::degree_discount: ranking = rank_degree_discount(net, network); break;
          case RankMethod::neighborhood: ranking = rank_neighborhood(net, network); break;
          case RankMethod::neighborhood_discount: ranking = rank_neighborhood_discount(net, network); break;
          case RankMethod::random: ranking = rank_random(net, run.seed, network); break;
          case RankMethod::ground_truth: break;
        }
        names = net.actors().names();
      }
      write_ranking(rk_out, ranking, names);
      run.outputs = {rk_out, ranking_metadata_path(rk_out)};
      write_run_manifest(run, rk_out, run_manifest);

    } else if (*ev) {
      const auto table = read_sps_table(ev_sps);
      run.inputs.push_back(ev_sps);
      const auto pred = read_ranking(ev_pred, table.actors);
      run.inputs.push_back(ev_pred);
      Ranking truth;
      if (ev_truth.empty()) {
        truth = rank_ground_truth(table);
      } else {
        truth = read_ranking(ev_truth, table.actors);
        run.inputs.push_back(ev_truth);
      }
      const auto report = evaluate(truth, pred, table);
      if (report.vacuous_prefixes > 0) {
        std::cerr << fmt::format("warning: {} prefix(es) with zero reference score, y_rel set to 1\n",
                                 report.vacuous_prefixes);
      }
      write_file_atomic(ev_out, report_json(report));
      run.outputs.push_back(ev_out);
      if (!ev_curve.empty()) {
        write_curve(ev_curve, report);
        run.outputs.push_back(ev_curve);
      }
      write_run_manifest(run, ev_out, run_manifest);

    } else if (*eb) {
      // {"networks": [{"sps": FILE, "truth": FILE?, "predictions": {"name": FILE, ...}}, ...]}
      const fs::path manifest_path(eb_manifest);
      json batch;
      try {
        batch = json::parse(read_file(manifest_path));
      } catch (const json::exception& e) {
        throw DataError(fmt::format("unreadable batch manifest '{}': {}", eb_manifest, e.what()));
      }
      run.inputs.push_back(manifest_path);
      const auto base = manifest_path.parent_path();
      if (!batch.contains("networks") || !batch["networks"].is_array() || batch["networks"].empty()) {
        throw DataError("batch manifest needs a non-empty 'networks' array");
      }
      struct Task {
        fs::path sps;
        std::optional<fs::path> truth;
        std::string predictor;
        fs::path pred;
      };
      std::vector<Task> tasks;
      std::vector<std::string> predictors;
      try {
        for (const auto& entry : batch["networks"]) {
          const auto sps_path = resolve_relative(base, entry.at("sps").get<std::string>());
          std::optional<fs::path> truth_path;
          if (entry.contains("truth")) truth_path = resolve_relative(base, entry["truth"].get<std::string>());
          for (const auto& [predictor, file] : entry.at("predictions").items()) {
            tasks.push_back({sps_path, truth_path, predictor, resolve_relative(base, file.get<std::string>())});
            if (std::find(predictors.begin(), predictors.end(), predictor) == predictors.end()) {
              predictors.push_back(predictor);
            }
          }
        }
      } catch (const json::exception& e) {
        throw DataError(fmt::format("malformed batch manifest '{}': {}", eb_manifest, e.what()));
      }
      std::vector<EvalReport> reports(tasks.size());
      parallel_for(jobs, tasks.size(), [&](std::size_t i, std::size_t) {
        const auto& task = tasks[i];
        const auto table = read_sps_table(task.sps);
        const auto truth = task.truth ? read_ranking(*task.truth, table.actors) : rank_ground_truth(table);
        reports[i] = evaluate(truth, read_ranking(task.pred, table.actors), table);
        reports[i].predictor = task.predictor;
      });
      for (const auto& task : tasks) {
        run.inputs.push_back(task.sps);
        run.inputs.push_back(task.pred);
        if (task.truth) run.inputs.push_back(*task.truth);
      }

      std::string csv = "predictor,networks";
      for (auto name : kMetricNames) csv += fmt::format(",{}", name);
      csv += '\n';
      for (const auto& predictor : predictors) {
        std::vector<double> sums(std::size(kMetricNames), 0.0);
        std::vector<Curve> curves;
        for (std::size_t i = 0; i < tasks.size(); ++i) {
          if (tasks[i].predictor != predictor) continue;
          const auto values = metric_values(reports[i]);
          for (std::size_t m = 0; m < values.size(); ++m) sums[m] += values[m];
          curves.push_back(reports[i].curve);
        }
        csv += fmt::format("{},{}", predictor, curves.size());
        for (double s : sums) csv += "," + format_real(s / static_cast<double>(curves.size()));
        csv += '\n';
        if (!eb_curves.empty()) {
          fs::create_directories(eb_curves);
          const auto path = fs::path(eb_curves) / (predictor + ".csv");
          write_file_atomic(path, curve_csv(average_curves(curves, eb_points), "mean", predictor));
          run.outputs.push_back(path);
        }
      }
      write_file_atomic(eb_out, csv);
      run.outputs.insert(run.outputs.begin(), eb_out);
      write_run_manifest(run, eb_out, run_manifest);

    } else if (*bn) {
      resolve_seed(run, seed_flag);
      const auto result = bench(bn_corpus, bn_grid.grid(), run.seed, jobs);
      for (const auto& [name, path] : corpus_files(bn_corpus)) run.inputs.push_back(path);
      write_file_atomic(bn_out, bench_csv(result));
      run.outputs.push_back(bn_out);
      std::cerr << fmt::format("slope={} s/edge intercept={} s r_squared={}\n", format_real(result.fit.slope),
                               format_real(result.fit.intercept),
                               result.fit.r_squared ? format_real(*result.fit.r_squared) : std::string("n/a"));
      write_run_manifest(run, bn_out, run_manifest);

    } else if (*tf) {
      const auto table = read_sps_table(tf_sps);
      run.inputs.push_back(tf_sps);
      NetContext context;
      context.actor_count = table.size();
      if (!tf_net.empty()) {
        context = NetContext::of(read_network(tf_net));
        run.inputs.push_back(tf_net);
      }
      std::vector<TransformKind> kinds;
      if (tf_kinds.empty()) {
        kinds.assign(std::begin(kAllTransforms), std::end(kAllTransforms));
        if (tf_net.empty()) std::erase(kinds, TransformKind::norm_act_diam);
      } else {
        for (const auto& k : tf_kinds) kinds.push_back(parse_transform(k));
      }
      std::vector<Potential4> raw;
      for (const auto& row : table.rows) raw.push_back(row.raw);
      std::string csv = "kind,actor,p_ex,p_sl,p_pi,p_pl\n";
      for (auto kind : kinds) {
        if (kind == TransformKind::norm_act_diam && tf_net.empty()) {
          throw UsageError("norm_act_diam needs --net for the diameter");
        }
        const auto values = transform(raw, kind, context);
        for (std::size_t a = 0; a < values.size(); ++a) {
          csv += fmt::format("{},{}", to_string(kind), table.actors[a]);
          for (double x : values[a]) csv += "," + format_real(x);
          csv += '\n';
        }
      }
      if (!context.connected && !tf_net.empty()) {
        std::cerr << "warning: flattened network is disconnected; diameter taken from the largest component\n";
      }
      run.extra = {{"diameter", context.diameter}, {"diameter_from_largest_component", !context.connected}};
      write_file_atomic(tf_out, csv);
      run.outputs.push_back(tf_out);
      write_run_manifest(run, tf_out, run_manifest);
    }
  } catch (const UsageError& e) {
    std::cerr << "spreadnet: " << e.what() << "\n";
    return 1;
  } catch (const ParameterError& e) {
    std::cerr << "spreadnet: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "spreadnet: " << e.what() << "\n";
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "spreadnet: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
