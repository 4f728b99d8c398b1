#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spreadnet/network.hpp"

namespace spreadnet {

enum class GraphModel { er, pa };

std::string_view to_string(GraphModel model) noexcept;
/// Accepts "er" / "pa". Throws ParameterError.
GraphModel parse_graph_model(std::string_view text);

/// Defaults reproduce the mean actor degree of the artificial corpora
/// (24.13 for ER, 122.10 for PA at ~3.5 layers and ~575 actors).
inline constexpr double kDefaultErEdgeProb = 0.0120;
inline constexpr std::size_t kDefaultPaAttach = 18;

struct GenSpec {
  GraphModel model = GraphModel::er;
  std::size_t layer_count = 3;
  std::size_t actor_count = 100;
  double er_edge_prob = kDefaultErEdgeProb;
  std::size_t pa_attach_m = kDefaultPaAttach;
  std::uint64_t seed = 0;
};

/// Throws ParameterError for out-of-range fields.
void check_spec(const GenSpec& spec);

/// Every layer is an independent single-layer graph over the shared actor set
/// (actors named "0".."n-1"); layer l uses stream derive_seed(seed, l).
/// ER draws each pair with probability p. PA (Barabasi-Albert) starts from a
/// clique on m+1 actors and attaches each later actor to m distinct targets
/// chosen proportionally to degree. Presence is inferred from edges.
MultilayerNetwork generate(const GenSpec& spec);

struct CorpusSpec {
  GraphModel model = GraphModel::er;
  std::size_t min_layers = 2;
  std::size_t max_layers = 5;
  std::size_t min_actors = 350;
  std::size_t max_actors = 800;
  double er_edge_prob = kDefaultErEdgeProb;
  std::size_t pa_attach_m = kDefaultPaAttach;
};

struct CorpusEntry {
  std::string name;
  GenSpec spec;
  MultilayerNetwork network;
};

/// Network i draws its layer and actor counts uniformly from the configured
/// ranges using stream derive_seed(master_seed, i); names are "network-<i>".
std::vector<CorpusEntry> generate_corpus(std::size_t count, const CorpusSpec& spec, std::uint64_t master_seed,
                                         std::size_t jobs = 1);

}  // namespace spreadnet
