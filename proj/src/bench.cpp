#include "spreadnet/bench.hpp"

#include <chrono>

#include <fmt/format.h>

#include "spreadnet/dataset.hpp"
#include "spreadnet/errors.hpp"
#include "spreadnet/network_io.hpp"
#include "spreadnet/rng.hpp"
#include "spreadnet/text.hpp"

namespace spreadnet {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ParameterError("linear fit needs as many x as y values");
  if (x.empty()) throw ParameterError("linear fit needs at least one point");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LinearFit fit;
  fit.points = x.size();
  if (sxx == 0.0) {
    fit.intercept = my;
    return fit;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (x.size() >= 2 && syy > 0.0) fit.r_squared = (sxy * sxy) / (sxx * syy);
  return fit;
}

BenchResult bench(const std::filesystem::path& corpus_dir, const GridSpec& grid, std::uint64_t master_seed,
                  std::size_t jobs) {
  check_grid(grid);
  const auto files = corpus_files(corpus_dir);
  if (files.empty()) throw ParameterError(fmt::format("no networks to time in '{}'", corpus_dir.string()));

  BenchResult result;
  SpsBuildOptions options;
  options.jobs = jobs;
  for (const auto& [name, path] : files) {
    const auto net = read_network(path);
    const auto start = std::chrono::steady_clock::now();
    for (Protocol protocol : grid.protocols) {
      build_sps_table(net, name, grid, protocol, derive_seed(master_seed, hash_name(name)), options);
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    BenchRow row;
    row.network = name;
    row.actors = net.actor_count();
    row.mean_edges_per_layer =
        net.layer_count() == 0 ? 0.0 : static_cast<double>(net.edge_count()) / static_cast<double>(net.layer_count());
    row.seconds = elapsed.count();
    result.rows.push_back(std::move(row));
  }

  std::vector<double> x;
  std::vector<double> y;
  for (const auto& row : result.rows) {
    x.push_back(row.mean_edges_per_layer);
    y.push_back(row.seconds);
  }
  result.fit = linear_fit(x, y);
  return result;
}

std::string bench_csv(const BenchResult& result) {
  std::string out = "network,actors,mean_edges_per_layer,seconds\n";
  for (const auto& row : result.rows) {
    fmt::format_to(std::back_inserter(out), "{},{},{},{}\n", row.network, row.actors,
                   format_real(row.mean_edges_per_layer), format_real(row.seconds));
  }
  fmt::format_to(std::back_inserter(out), "# slope={}\n# intercept={}\n# r_squared={}\n",
                 format_real(result.fit.slope), format_real(result.fit.intercept),
                 result.fit.r_squared ? format_real(*result.fit.r_squared) : std::string("n/a"));
  return out;
}

}  // namespace spreadnet
