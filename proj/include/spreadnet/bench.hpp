#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spreadnet/potential.hpp"

namespace spreadnet {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Unset when fewer than two points or when x or y has no spread.
  std::optional<double> r_squared;
  std::size_t points = 0;
};

/// Ordinary least squares y = slope * x + intercept. Throws ParameterError on
/// empty or length-mismatched input.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

struct BenchRow {
  std::string network;
  std::size_t actors = 0;
  double mean_edges_per_layer = 0.0;
  double seconds = 0.0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  /// seconds against mean_edges_per_layer
  LinearFit fit;
};

/// Times the score-table simulations of every protocol in `grid` for each
/// network of the corpus. Throws ParameterError for an empty corpus.
BenchResult bench(const std::filesystem::path& corpus_dir, const GridSpec& grid, std::uint64_t master_seed,
                  std::size_t jobs = 1);

/// "network,actors,mean_edges_per_layer,seconds" rows followed by "# slope=",
/// "# intercept=" and "# r_squared=" (n/a when undefined) trailer lines.
std::string bench_csv(const BenchResult& result);

}  // namespace spreadnet
