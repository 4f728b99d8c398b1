#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "spreadnet/network.hpp"

namespace spreadnet {

/// Text format:
///
///     #actors
///     alice
///     #layers
///     work
///     #edges
///     work,alice,bob
///     #presence        (optional; when present it replaces edge-inferred presence)
///     work,carol
///
/// Blank lines are ignored. Actors first seen in an edge are appended after
/// the declared ones; edge layers must be declared.
MultilayerNetwork parse_network(std::string_view text, const std::string& source = "<memory>");
MultilayerNetwork read_network(const std::filesystem::path& path);

/// Canonical serialization: actors and layers in id order, edges sorted per
/// layer, and a #presence section only when some node has no edge.
std::string serialize_network(const MultilayerNetwork& net);
void write_network(const std::filesystem::path& path, const MultilayerNetwork& net);

/// Third-party datasets: a directory with one edge-list file per layer. Layer
/// name = file stem; each line holds two actor names separated by whitespace
/// or a comma; lines starting with '#' or '%' are comments. Extra columns
/// (weights, timestamps) are ignored; self-loops are dropped.
MultilayerNetwork read_edge_list_dir(const std::filesystem::path& dir);

}  // namespace spreadnet
