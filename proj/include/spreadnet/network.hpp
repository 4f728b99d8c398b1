#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace spreadnet {

using ActorId = std::uint32_t;
using LayerId = std::uint32_t;

/// Bidirectional name <-> dense id table.
class NameIndex {
 public:
  /// Returns the existing id when the name is already known.
  std::uint32_t intern(std::string_view name);
  std::optional<std::uint32_t> find(std::string_view name) const;
  const std::string& name(std::uint32_t id) const { return names_.at(id); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t size() const noexcept { return names_.size(); }

  bool operator==(const NameIndex& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

/// Immutable multilayer network M = (A, L, V, E).
///
/// Every layer keeps its own CSR adjacency with sorted neighbor arrays, so an
/// edge can never cross layers. Presence (V) is a per-layer bitmap; an actor
/// absent from a layer simply has no neighbors there.
class MultilayerNetwork {
 public:
  MultilayerNetwork() = default;

  std::size_t actor_count() const noexcept { return actors_.size(); }
  std::size_t layer_count() const noexcept { return layers_.size(); }
  /// |V|: number of (actor, layer) pairs with presence.
  std::size_t node_count() const noexcept;
  std::size_t edge_count(LayerId layer) const;
  std::size_t edge_count() const noexcept;

  const NameIndex& actors() const noexcept { return actors_; }
  const NameIndex& layers() const noexcept { return layers_; }
  const std::string& actor_name(ActorId a) const { return actors_.name(a); }
  const std::string& layer_name(LayerId l) const { return layers_.name(l); }
  /// Throws NotFoundError.
  ActorId actor_id(std::string_view name) const;
  LayerId layer_id(std::string_view name) const;

  bool present(ActorId a, LayerId l) const;
  /// Number of layers in which the actor has a node.
  std::size_t presence_count(ActorId a) const;

  /// Sorted neighbors of `a` in `l`. Throws NotFoundError on unknown ids.
  std::span<const ActorId> neighbors(ActorId a, LayerId l) const;
  std::size_t degree(ActorId a, LayerId l) const { return neighbors(a, l).size(); }
  /// Sum of per-layer degrees.
  std::size_t actor_degree(ActorId a) const;
  /// Union of per-layer neighbor sets, sorted.
  std::vector<ActorId> neighborhood(ActorId a) const;

  /// Unchecked accessors for hot loops; ids must be valid.
  std::span<const ActorId> neighbors_unchecked(ActorId a, LayerId l) const noexcept {
    const auto& csr = adjacency_[l];
    return {csr.targets.data() + csr.offsets[a], csr.targets.data() + csr.offsets[a + 1]};
  }
  bool present_unchecked(ActorId a, LayerId l) const noexcept {
    return presence_[static_cast<std::size_t>(l) * actor_count() + a] != 0;
  }

  bool operator==(const MultilayerNetwork& other) const;

 private:
  friend class NetworkBuilder;
  friend std::vector<std::string> validate(const MultilayerNetwork& net);

  struct Csr {
    std::vector<std::size_t> offsets;  // actor_count + 1 entries
    std::vector<ActorId> targets;
    bool operator==(const Csr&) const = default;
  };

  void check_ids(ActorId a, LayerId l) const;

  NameIndex actors_;
  NameIndex layers_;
  std::vector<std::uint8_t> presence_;  // layer-major
  std::vector<Csr> adjacency_;
};

/// Mutable staging area for a network. Records raw input so `validate` can
/// report every violation before anything is built.
class NetworkBuilder {
 public:
  enum class Presence {
    /// Presence = declared nodes plus every edge endpoint.
    inferred,
    /// Presence = declared nodes only; endpoints must have been declared.
    declared,
  };

  explicit NetworkBuilder(Presence mode = Presence::inferred) : mode_(mode) {}

  ActorId add_actor(std::string_view name);
  LayerId add_layer(std::string_view name);
  /// Adds `count` actors named "0", "1", ... (ids equal names).
  void add_numbered_actors(std::size_t count);

  /// Ids must come from add_actor/add_layer. Duplicates are merged at build time.
  void add_edge(LayerId l, ActorId a, ActorId b);
  void add_node(LayerId l, ActorId a);
  void set_presence_mode(Presence mode) noexcept { mode_ = mode; }

  std::size_t actor_count() const noexcept { return actors_.size(); }
  std::size_t layer_count() const noexcept { return layers_.size(); }
  const NameIndex& actors() const noexcept { return actors_; }
  const NameIndex& layers() const noexcept { return layers_; }

  /// Every violation of the network invariants, empty when well formed.
  std::vector<std::string> validate() const;
  /// Throws ValidationError carrying all violations.
  MultilayerNetwork build() const;

 private:
  struct RawEdge {
    LayerId layer;
    ActorId a;
    ActorId b;
  };

  Presence mode_;
  NameIndex actors_;
  NameIndex layers_;
  std::vector<RawEdge> edges_;
  std::vector<std::pair<LayerId, ActorId>> nodes_;
};

/// Re-checks the invariants of a built network (symmetry, sorting, no loops,
/// endpoint presence). Returns every violation.
std::vector<std::string> validate(const MultilayerNetwork& net);

/// Single-layer network whose edge (a, b) exists iff it exists in any layer.
/// An actor is present iff it is present in any layer.
MultilayerNetwork flatten(const MultilayerNetwork& net);

struct DiameterInfo {
  std::size_t diameter = 0;
  /// False when the flattened graph has several components (with edges or
  /// presence); the diameter then refers to the largest component.
  bool connected = true;
  std::size_t largest_component = 0;
};

/// Whether the present actors of the flattened network form one component.
bool flattened_connected(const MultilayerNetwork& net);

/// Eccentricity-based diameter of the flattened network's largest connected
/// component (ties broken by the component with the smallest actor id).
DiameterInfo flattened_diameter(const MultilayerNetwork& net);

}  // namespace spreadnet
