#include "spreadnet/network.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include <fmt/format.h>

#include "spreadnet/errors.hpp"

namespace spreadnet {

std::uint32_t NameIndex::intern(std::string_view name) {
  if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<std::uint32_t> NameIndex::find(std::string_view name) const {
  if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::size_t MultilayerNetwork::node_count() const noexcept {
  return static_cast<std::size_t>(std::count(presence_.begin(), presence_.end(), std::uint8_t{1}));
}

std::size_t MultilayerNetwork::edge_count(LayerId layer) const {
  if (layer >= layer_count()) throw NotFoundError(fmt::format("unknown layer id {}", layer));
  return adjacency_[layer].targets.size() / 2;
}

std::size_t MultilayerNetwork::edge_count() const noexcept {
  std::size_t total = 0;
  for (const auto& csr : adjacency_) total += csr.targets.size() / 2;
  return total;
}

ActorId MultilayerNetwork::actor_id(std::string_view name) const {
  if (auto id = actors_.find(name)) return *id;
  throw NotFoundError(fmt::format("unknown actor '{}'", name));
}

LayerId MultilayerNetwork::layer_id(std::string_view name) const {
  if (auto id = layers_.find(name)) return *id;
  throw NotFoundError(fmt::format("unknown layer '{}'", name));
}

void MultilayerNetwork::check_ids(ActorId a, LayerId l) const {
  if (a >= actor_count()) throw NotFoundError(fmt::format("unknown actor id {}", a));
  if (l >= layer_count()) throw NotFoundError(fmt::format("unknown layer id {}", l));
}

bool MultilayerNetwork::present(ActorId a, LayerId l) const {
  check_ids(a, l);
  return present_unchecked(a, l);
}

std::size_t MultilayerNetwork::presence_count(ActorId a) const {
  if (a >= actor_count()) throw NotFoundError(fmt::format("unknown actor id {}", a));
  std::size_t count = 0;
  for (LayerId l = 0; l < layer_count(); ++l) count += present_unchecked(a, l) ? 1 : 0;
  return count;
}

std::span<const ActorId> MultilayerNetwork::neighbors(ActorId a, LayerId l) const {
  check_ids(a, l);
  return neighbors_unchecked(a, l);
}

std::size_t MultilayerNetwork::actor_degree(ActorId a) const {
  if (a >= actor_count()) throw NotFoundError(fmt::format("unknown actor id {}", a));
  std::size_t total = 0;
  for (LayerId l = 0; l < layer_count(); ++l) total += neighbors_unchecked(a, l).size();
  return total;
}

std::vector<ActorId> MultilayerNetwork::neighborhood(ActorId a) const {
  if (a >= actor_count()) throw NotFoundError(fmt::format("unknown actor id {}", a));
  std::vector<ActorId> out;
  for (LayerId l = 0; l < layer_count(); ++l) {
    auto nbrs = neighbors_unchecked(a, l);
    out.insert(out.end(), nbrs.begin(), nbrs.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool MultilayerNetwork::operator==(const MultilayerNetwork& other) const {
  return actors_ == other.actors_ && layers_ == other.layers_ && presence_ == other.presence_ &&
         adjacency_ == other.adjacency_;
}

// ---------------------------------------------------------------------------

ActorId NetworkBuilder::add_actor(std::string_view name) { return actors_.intern(name); }

LayerId NetworkBuilder::add_layer(std::string_view name) { return layers_.intern(name); }

void NetworkBuilder::add_numbered_actors(std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) actors_.intern(std::to_string(i));
}

void NetworkBuilder::add_edge(LayerId l, ActorId a, ActorId b) { edges_.push_back({l, a, b}); }

void NetworkBuilder::add_node(LayerId l, ActorId a) { nodes_.emplace_back(l, a); }

std::vector<std::string> NetworkBuilder::validate() const {
  std::vector<std::string> violations;
  const std::size_t n = actors_.size();
  const std::size_t layers = layers_.size();

  std::vector<std::uint8_t> declared(n * layers, 0);
  for (auto [l, a] : nodes_) {
    if (l >= layers || a >= n) {
      violations.push_back(fmt::format("node references unknown id (layer {}, actor {})", l, a));
      continue;
    }
    declared[l * n + a] = 1;
  }

  for (const auto& e : edges_) {
    if (e.layer >= layers) {
      violations.push_back(fmt::format("edge references unknown layer id {}", e.layer));
      continue;
    }
    if (e.a >= n || e.b >= n) {
      violations.push_back(fmt::format("edge references unknown actor id ({}, {})", e.a, e.b));
      continue;
    }
    const auto& layer = layers_.name(e.layer);
    if (e.a == e.b) {
      violations.push_back(fmt::format("self-loop on actor '{}' in layer '{}'", actors_.name(e.a), layer));
    }
    if (mode_ == Presence::declared) {
      for (ActorId endpoint : {e.a, e.b}) {
        if (declared[e.layer * n + endpoint] == 0) {
          violations.push_back(fmt::format("node not in V: actor '{}' has an edge in layer '{}' but no node there",
                                           actors_.name(endpoint), layer));
        }
        if (e.a == e.b) break;
      }
    }
  }
  return violations;
}

MultilayerNetwork NetworkBuilder::build() const {
  if (auto violations = validate(); !violations.empty()) throw ValidationError(std::move(violations));

  const std::size_t n = actors_.size();
  const std::size_t layers = layers_.size();

  MultilayerNetwork net;
  net.actors_ = actors_;
  net.layers_ = layers_;
  net.presence_.assign(n * layers, 0);
  for (auto [l, a] : nodes_) net.presence_[l * n + a] = 1;

  std::vector<std::vector<std::pair<ActorId, ActorId>>> arcs(layers);
  for (const auto& e : edges_) {
    arcs[e.layer].emplace_back(e.a, e.b);
    arcs[e.layer].emplace_back(e.b, e.a);
    if (mode_ == Presence::inferred) {
      net.presence_[e.layer * n + e.a] = 1;
      net.presence_[e.layer * n + e.b] = 1;
    }
  }

  net.adjacency_.resize(layers);
  for (std::size_t l = 0; l < layers; ++l) {
    auto& list = arcs[l];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());

    auto& csr = net.adjacency_[l];
    csr.offsets.assign(n + 1, 0);
    csr.targets.reserve(list.size());
    for (auto [src, dst] : list) {
      ++csr.offsets[src + 1];
      csr.targets.push_back(dst);
    }
    std::partial_sum(csr.offsets.begin(), csr.offsets.end(), csr.offsets.begin());
  }
  return net;
}

// ---------------------------------------------------------------------------

std::vector<std::string> validate(const MultilayerNetwork& net) {
  std::vector<std::string> violations;
  const std::size_t n = net.actor_count();
  if (net.presence_.size() != n * net.layer_count() || net.adjacency_.size() != net.layer_count()) {
    violations.emplace_back("storage size does not match actor/layer counts");
    return violations;
  }
  for (LayerId l = 0; l < net.layer_count(); ++l) {
    const auto& csr = net.adjacency_[l];
    if (csr.offsets.size() != n + 1 || csr.offsets.back() != csr.targets.size()) {
      violations.push_back(fmt::format("layer '{}': malformed adjacency offsets", net.layer_name(l)));
      continue;
    }
    for (ActorId a = 0; a < n; ++a) {
      auto nbrs = net.neighbors_unchecked(a, l);
      if (!std::is_sorted(nbrs.begin(), nbrs.end()) ||
          std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end()) {
        violations.push_back(fmt::format("layer '{}': neighbors of '{}' not sorted/unique", net.layer_name(l),
                                         net.actor_name(a)));
      }
      if (!nbrs.empty() && !net.present_unchecked(a, l)) {
        violations.push_back(fmt::format("node not in V: actor '{}' has an edge in layer '{}' but no node there",
                                         net.actor_name(a), net.layer_name(l)));
      }
      for (ActorId b : nbrs) {
        if (b >= n) {
          violations.push_back(fmt::format("layer '{}': neighbor id {} out of range", net.layer_name(l), b));
          continue;
        }
        if (b == a) {
          violations.push_back(fmt::format("self-loop on actor '{}' in layer '{}'", net.actor_name(a),
                                           net.layer_name(l)));
        }
        auto back = net.neighbors_unchecked(b, l);
        if (!std::binary_search(back.begin(), back.end(), a)) {
          violations.push_back(fmt::format("layer '{}': edge '{}'-'{}' is not symmetric", net.layer_name(l),
                                           net.actor_name(a), net.actor_name(b)));
        }
      }
    }
  }
  return violations;
}

MultilayerNetwork flatten(const MultilayerNetwork& net) {
  NetworkBuilder builder(NetworkBuilder::Presence::declared);
  for (const auto& name : net.actors().names()) builder.add_actor(name);
  const LayerId flat = builder.add_layer("flattened");
  for (ActorId a = 0; a < net.actor_count(); ++a) {
    for (LayerId l = 0; l < net.layer_count(); ++l) {
      if (net.present_unchecked(a, l)) {
        builder.add_node(flat, a);
        break;
      }
    }
    for (LayerId l = 0; l < net.layer_count(); ++l) {
      for (ActorId b : net.neighbors_unchecked(a, l)) {
        if (a < b) builder.add_edge(flat, a, b);
      }
    }
  }
  return builder.build();
}

namespace {

struct Components {
  std::vector<std::int64_t> label;  // -1 for actors without presence
  std::vector<std::size_t> sizes;
};

Components components_of(const MultilayerNetwork& flat) {
  const std::size_t n = flat.actor_count();
  Components result;
  auto& component = result.label;
  auto& sizes = result.sizes;
  component.assign(n, -1);
  std::queue<ActorId> frontier;
  for (ActorId start = 0; start < n; ++start) {
    if (component[start] >= 0 || !flat.present_unchecked(start, 0)) continue;
    const auto id = static_cast<std::int64_t>(sizes.size());
    sizes.push_back(0);
    component[start] = id;
    frontier.push(start);
    while (!frontier.empty()) {
      const ActorId a = frontier.front();
      frontier.pop();
      ++sizes.back();
      for (ActorId b : flat.neighbors_unchecked(a, 0)) {
        if (component[b] < 0) {
          component[b] = id;
          frontier.push(b);
        }
      }
    }
  }
  return result;
}

}  // namespace

bool flattened_connected(const MultilayerNetwork& net) { return components_of(flatten(net)).sizes.size() <= 1; }

DiameterInfo flattened_diameter(const MultilayerNetwork& net) {
  const auto flat = flatten(net);
  const std::size_t n = flat.actor_count();
  const auto [component, sizes] = components_of(flat);
  std::queue<ActorId> frontier;

  DiameterInfo info;
  if (sizes.empty()) return info;
  info.connected = sizes.size() == 1;
  const auto largest = static_cast<std::int64_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  info.largest_component = sizes[static_cast<std::size_t>(largest)];

  std::vector<std::int64_t> dist(n);
  for (ActorId src = 0; src < n; ++src) {
    if (component[src] != largest) continue;
    std::fill(dist.begin(), dist.end(), -1);
    dist[src] = 0;
    frontier.push(src);
    while (!frontier.empty()) {
      const ActorId a = frontier.front();
      frontier.pop();
      info.diameter = std::max(info.diameter, static_cast<std::size_t>(dist[a]));
      for (ActorId b : flat.neighbors_unchecked(a, 0)) {
        if (dist[b] < 0) {
          dist[b] = dist[a] + 1;
          frontier.push(b);
        }
      }
    }
  }
  return info;
}

}  // namespace spreadnet
