#include "spreadnet/dataset.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>
#include <json.hpp>

#include "spreadnet/checksum.hpp"
#include "spreadnet/errors.hpp"
#include "spreadnet/network_io.hpp"
#include "spreadnet/rng.hpp"
#include "spreadnet/text.hpp"

namespace spreadnet {

using nlohmann::json;

std::string sps_table_filename(std::string_view network, Protocol protocol) {
  return fmt::format("{}__{}.csv", network, to_string(protocol));
}

std::string serialize_sps_table(const SpsTable& table) {
  std::string out(kSpsHeader);
  if (table.has_variance) out += kVarianceColumns;
  out += '\n';
  auto put = [&out](double x) {
    out += ',';
    out += format_real(x);
  };
  for (std::size_t a = 0; a < table.rows.size(); ++a) {
    const auto& row = table.rows[a];
    out += table.actors.at(a);
    for (double x : row.raw) put(x);
    for (double x : row.normalized) put(x);
    put(row.sps);
    if (table.has_variance) {
      for (double x : row.variance) put(x);
    }
    out += '\n';
  }
  return out;
}

SpsTable parse_sps_table(std::string_view text, const std::string& source, std::string network,
                         std::optional<Protocol> protocol) {
  SpsTable table;
  table.network = std::move(network);
  table.protocol = protocol;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::size_t columns = 0;
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    const auto line = trim(text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos));
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (line.empty()) continue;

    if (columns == 0) {
      if (line == kSpsHeader) {
        columns = 10;
      } else if (line == std::string(kSpsHeader) + std::string(kVarianceColumns)) {
        columns = 14;
        table.has_variance = true;
      } else {
        throw ParseError(source, line_no, fmt::format("unexpected header '{}'", line));
      }
      continue;
    }

    const auto fields = split_fields(line);
    if (fields.size() != columns) {
      throw ParseError(source, line_no, fmt::format("expected {} columns, got {}", columns, fields.size()));
    }
    SpsRow row;
    for (std::size_t c = 0; c < 4; ++c) {
      row.raw[c] = parse_real(fields[1 + c], source, line_no);
      row.normalized[c] = parse_real(fields[5 + c], source, line_no);
      if (table.has_variance) row.variance[c] = parse_real(fields[10 + c], source, line_no);
    }
    row.sps = parse_real(fields[9], source, line_no);
    if (row.sps < 0.0 || row.sps > 1.0) throw ParseError(source, line_no, "sps outside [0, 1]");
    if (std::find(table.actors.begin(), table.actors.end(), fields[0]) != table.actors.end()) {
      throw ParseError(source, line_no, fmt::format("duplicate actor '{}'", fields[0]));
    }
    table.actors.push_back(fields[0]);
    table.rows.push_back(row);
  }
  if (columns == 0) throw ParseError(source, line_no, "missing header");
  table.saddle = saddle_point(table.scores());
  return table;
}

SpsTable read_sps_table(const std::filesystem::path& path) {
  std::string network = path.stem().string();
  std::optional<Protocol> protocol;
  if (const auto sep = network.rfind("__"); sep != std::string::npos) {
    const auto suffix = network.substr(sep + 2);
    if (suffix == "and" || suffix == "or") {
      protocol = parse_protocol(suffix);
      network.resize(sep);
    }
  }
  return parse_sps_table(read_file(path), path.string(), std::move(network), protocol);
}

void write_sps_table(const std::filesystem::path& path, const SpsTable& table) {
  write_file_atomic(path, serialize_sps_table(table));
}

std::vector<std::pair<std::string, std::filesystem::path>> corpus_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw NotFoundError(fmt::format("not a directory: '{}'", dir.string()));
  std::vector<std::pair<std::string, std::filesystem::path>> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == kNetworkExtension) {
      files.emplace_back(entry.path().stem().string(), entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

namespace {

json decisions() {
  return {
      {"seed_activation", "the seed is iteration 0 with one new activation; p_ex includes the seed"},
      {"p_sl", "last iteration with at least one new activation"},
      {"p_pl_tie_break", "earliest iteration reaching the peak"},
      {"and_gate", "positive signal required in every layer where the actor is present"},
      {"attempt_once", "one Bernoulli trial per ordered (source, target, layer)"},
      {"feasible_averaging", "raw p averaged over feasible pi, then max-normalized"},
      {"zero_max_column", "normalized value 0"},
      {"saddle", "k_s = ceil(0.2 |A|); value = sps at rank k_s"},
      {"real_format", "%.9g, round-half-even"},
  };
}

json grid_json(const GridSpec& grid) {
  json protocols = json::array();
  for (auto p : grid.protocols) protocols.push_back(to_string(p));
  return {{"protocols", protocols},
          {"pis", grid.pis},
          {"repetitions", grid.repetitions},
          {"feasible_and", grid.feasible_and},
          {"feasible_or", grid.feasible_or}};
}

void write_manifest(const std::filesystem::path& path, const json& manifest) {
  write_file_atomic(path, manifest.dump(2) + "\n");
}

}  // namespace

PipelineReport run_pipeline(const std::filesystem::path& corpus_dir, const GridSpec& grid,
                            const std::filesystem::path& out_dir, std::uint64_t master_seed,
                            const PipelineOptions& options) {
  check_grid(grid);
  const auto files = corpus_files(corpus_dir);
  if (files.empty()) throw DataError(fmt::format("no *{} networks in '{}'", kNetworkExtension, corpus_dir.string()));

  json inputs = json::array();
  for (const auto& [name, path] : files) {
    inputs.push_back({{"network", name}, {"file", path.filename().string()}, {"sha256", sha256_file(path)}});
  }
  const json config = {{"tool", "spreadnet"},
                       {"version", SPREADNET_VERSION},
                       {"rng_algorithm", kRngAlgorithm},
                       {"master_seed", master_seed},
                       {"grid", grid_json(grid)},
                       {"weights",
                        {{"p_ex", options.weights.activated},
                         {"p_sl", options.weights.duration},
                         {"p_pi", options.weights.peak},
                         {"p_pl", options.weights.peak_iteration}}},
                       {"keep_variance", options.keep_variance},
                       {"decisions", decisions()},
                       {"inputs", inputs}};

  std::filesystem::create_directories(out_dir);
  const auto manifest_path = out_dir / "manifest.json";

  // Tables already done under the same configuration, by file name.
  std::map<std::string, json> done;
  bool previously_complete = false;
  if (std::filesystem::exists(manifest_path) && !options.force) {
    json previous;
    try {
      previous = json::parse(read_file(manifest_path));
    } catch (const json::exception& e) {
      throw DataError(fmt::format("unreadable manifest '{}': {}", manifest_path.string(), e.what()));
    }
    if (previous.value("config", json{}) != config) {
      throw DataError(fmt::format("'{}' holds a dataset of a different configuration; use --force to overwrite",
                                  out_dir.string()));
    }
    previously_complete = previous.value("status", "") == "complete";
    for (const auto& entry : previous.value("tables", json::array())) {
      const auto file = out_dir / entry.at("file").get<std::string>();
      if (std::filesystem::exists(file) && sha256_file(file) == entry.at("sha256").get<std::string>()) {
        done.emplace(entry.at("file").get<std::string>(), entry);
      } else {
        previously_complete = false;
      }
    }
  }

  PipelineReport report;
  json manifest = {{"config", config}, {"status", "partial"}, {"tables", json::array()}};
  SpsBuildOptions build_options{options.jobs, options.weights, options.keep_variance};

  for (const auto& [name, path] : files) {
    std::optional<MultilayerNetwork> net;
    for (Protocol protocol : grid.protocols) {
      const auto filename = sps_table_filename(name, protocol);
      const auto out_path = out_dir / filename;
      report.outputs.push_back(out_path);
      if (auto it = done.find(filename); it != done.end()) {
        manifest["tables"].push_back(it->second);
        report.skipped.push_back(out_path);
        continue;
      }

      if (!net) net = read_network(path);
      const auto table =
          build_sps_table(*net, name, grid, protocol, derive_seed(master_seed, hash_name(name)), build_options);
      const auto text = serialize_sps_table(table);
      write_file_atomic(out_path, text);
      report.written.push_back(out_path);

      manifest["tables"].push_back({{"network", name},
                                    {"protocol", to_string(protocol)},
                                    {"file", filename},
                                    {"sha256", sha256_hex(text)},
                                    {"actors", table.size()},
                                    {"saddle_rank", table.saddle.rank},
                                    {"saddle_value", table.saddle.value},
                                    {"flattened_connected", flattened_connected(*net)}});
      write_manifest(manifest_path, manifest);
    }
  }

  manifest["status"] = "complete";
  if (!(previously_complete && report.written.empty())) write_manifest(manifest_path, manifest);
  return report;
}

}  // namespace spreadnet
