#include "spreadnet/netgen.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "spreadnet/errors.hpp"
#include "spreadnet/parallel.hpp"
#include "spreadnet/rng.hpp"

namespace spreadnet {

std::string_view to_string(GraphModel model) noexcept { return model == GraphModel::er ? "er" : "pa"; }

GraphModel parse_graph_model(std::string_view text) {
  if (text == "er") return GraphModel::er;
  if (text == "pa") return GraphModel::pa;
  throw ParameterError(fmt::format("unknown model '{}' (expected er or pa)", text));
}

void check_spec(const GenSpec& spec) {
  if (spec.layer_count < 1) throw ParameterError("layer_count must be >= 1");
  if (spec.actor_count < 2) throw ParameterError("actor_count must be >= 2");
  if (spec.model == GraphModel::er && !(spec.er_edge_prob >= 0.0 && spec.er_edge_prob <= 1.0)) {
    throw ParameterError(fmt::format("er_edge_prob {} outside [0, 1]", spec.er_edge_prob));
  }
  if (spec.model == GraphModel::pa && (spec.pa_attach_m < 1 || spec.pa_attach_m >= spec.actor_count)) {
    throw ParameterError(
        fmt::format("pa_attach_m must lie in [1, actor_count) (got m={}, n={})", spec.pa_attach_m, spec.actor_count));
  }
}

namespace {

void erdos_renyi_layer(NetworkBuilder& builder, LayerId layer, std::size_t n, double p, Rng& rng) {
  for (ActorId a = 0; a < n; ++a) {
    for (ActorId b = a + 1; b < n; ++b) {
      if (rng.bernoulli(p)) builder.add_edge(layer, a, b);
    }
  }
}

void preferential_attachment_layer(NetworkBuilder& builder, LayerId layer, std::size_t n, std::size_t m, Rng& rng) {
  // Each endpoint occurrence is one ticket, so sampling a ticket is degree-proportional.
  std::vector<ActorId> tickets;
  tickets.reserve(2 * m * n);
  for (ActorId a = 0; a <= m; ++a) {
    for (ActorId b = a + 1; b <= m; ++b) {
      builder.add_edge(layer, a, b);
      tickets.push_back(a);
      tickets.push_back(b);
    }
  }
  std::vector<ActorId> targets;
  targets.reserve(m);
  for (auto arriving = static_cast<ActorId>(m + 1); arriving < n; ++arriving) {
    targets.clear();
    while (targets.size() < m) {
      const ActorId candidate = tickets[rng.below(tickets.size())];
      if (std::find(targets.begin(), targets.end(), candidate) == targets.end()) targets.push_back(candidate);
    }
    for (ActorId target : targets) {
      builder.add_edge(layer, arriving, target);
      tickets.push_back(arriving);
      tickets.push_back(target);
    }
  }
}

}  // namespace

MultilayerNetwork generate(const GenSpec& spec) {
  check_spec(spec);
  NetworkBuilder builder;
  builder.add_numbered_actors(spec.actor_count);
  for (std::size_t l = 0; l < spec.layer_count; ++l) {
    const LayerId layer = builder.add_layer(fmt::format("L{}", l));
    Rng rng(derive_seed(spec.seed, l));
    if (spec.model == GraphModel::er) {
      erdos_renyi_layer(builder, layer, spec.actor_count, spec.er_edge_prob, rng);
    } else {
      preferential_attachment_layer(builder, layer, spec.actor_count, spec.pa_attach_m, rng);
    }
  }
  return builder.build();
}

std::vector<CorpusEntry> generate_corpus(std::size_t count, const CorpusSpec& spec, std::uint64_t master_seed,
                                         std::size_t jobs) {
  if (spec.min_layers < 1 || spec.min_layers > spec.max_layers) {
    throw ParameterError(fmt::format("invalid layer range [{}, {}]", spec.min_layers, spec.max_layers));
  }
  if (spec.min_actors < 2 || spec.min_actors > spec.max_actors) {
    throw ParameterError(fmt::format("invalid actor range [{}, {}]", spec.min_actors, spec.max_actors));
  }

  std::vector<CorpusEntry> corpus(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(master_seed, i));
    auto& entry = corpus[i];
    entry.name = fmt::format("network-{}", i);
    entry.spec.model = spec.model;
    entry.spec.layer_count = rng.between(spec.min_layers, spec.max_layers);
    entry.spec.actor_count = rng.between(spec.min_actors, spec.max_actors);
    entry.spec.er_edge_prob = spec.er_edge_prob;
    entry.spec.pa_attach_m = spec.pa_attach_m;
    entry.spec.seed = rng();
    check_spec(entry.spec);
  }

  parallel_for(jobs, count, [&](std::size_t i, std::size_t) { corpus[i].network = generate(corpus[i].spec); });
  return corpus;
}

}  // namespace spreadnet
