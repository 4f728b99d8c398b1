#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spreadnet/potential.hpp"

namespace spreadnet {

inline constexpr std::string_view kNetworkExtension = ".mln";
inline constexpr std::string_view kSpsHeader = "actor,p_ex,p_sl,p_pi,p_pl,p_ex_n,p_sl_n,p_pi_n,p_pl_n,sps";
inline constexpr std::string_view kVarianceColumns = ",p_ex_var,p_sl_var,p_pi_var,p_pl_var";

/// "<network>__<and|or>.csv"
std::string sps_table_filename(std::string_view network, Protocol protocol);

std::string serialize_sps_table(const SpsTable& table);
/// Values are taken as written; the saddle is recomputed from the sps column.
SpsTable parse_sps_table(std::string_view text, const std::string& source, std::string network,
                         std::optional<Protocol> protocol);
/// Network and protocol come from the file name when it follows
/// sps_table_filename, otherwise network = stem and protocol is unset.
SpsTable read_sps_table(const std::filesystem::path& path);
void write_sps_table(const std::filesystem::path& path, const SpsTable& table);

/// Network files (*.mln) of a corpus directory, sorted by name.
std::vector<std::pair<std::string, std::filesystem::path>> corpus_files(const std::filesystem::path& dir);

struct PipelineOptions {
  std::size_t jobs = 1;
  bool force = false;
  bool keep_variance = false;
  SpsWeights weights{};
};

struct PipelineReport {
  std::vector<std::filesystem::path> written;
  std::vector<std::filesystem::path> skipped;
  std::vector<std::filesystem::path> outputs;  ///< every table of the dataset, in manifest order
};

/// Builds one score table per (network, protocol) into `out_dir` and keeps
/// `manifest.json` up to date after each table. Network tables are seeded by
/// derive_seed(master_seed, hash_name(network)).
///
/// When `out_dir` already holds a manifest of the same configuration, tables
/// whose checksum still matches are kept untouched (a complete dataset is a
/// no-op, an interrupted one resumes). A manifest of another configuration is
/// a DataError unless `force` is set, which recomputes everything.
PipelineReport run_pipeline(const std::filesystem::path& corpus_dir, const GridSpec& grid,
                            const std::filesystem::path& out_dir, std::uint64_t master_seed,
                            const PipelineOptions& options = {});

}  // namespace spreadnet
