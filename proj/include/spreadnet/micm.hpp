#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "spreadnet/network.hpp"
#include "spreadnet/rng.hpp"

namespace spreadnet {

/// How per-layer activation signals combine into an actor's activation.
enum class Protocol {
  And,  ///< positive input required in every layer where the actor is present
  Or,   ///< positive input in any layer suffices
};

std::string_view to_string(Protocol protocol) noexcept;
/// Accepts "and"/"or" in any case. Throws ParameterError.
Protocol parse_protocol(std::string_view text);

struct MicmConfig {
  double pi = 0.0;  ///< per-attempt activation probability
  Protocol protocol = Protocol::Or;
  ActorId seed_actor = 0;
  std::uint64_t rng_seed = 0;
};

/// Outcome of one single-seed diffusion run.
struct SpreadingPotential {
  std::uint32_t activated = 1;       ///< p_ex: actors activated, seed included
  std::uint32_t duration = 0;        ///< p_sl: last iteration with a new activation
  std::uint32_t peak = 1;            ///< p_pi: most activations in one iteration
  std::uint32_t peak_iteration = 0;  ///< p_pl: earliest iteration reaching `peak`

  bool operator==(const SpreadingPotential&) const = default;
};

/// Coordinates in the fixed order (p_ex, p_sl, p_pi, p_pl).
using Potential4 = std::array<double, 4>;

inline Potential4 as_vector(const SpreadingPotential& p) noexcept {
  return {double(p.activated), double(p.duration), double(p.peak), double(p.peak_iteration)};
}

struct AveragedPotential {
  Potential4 mean{};
  Potential4 variance{};  ///< population variance over repetitions
  Potential4 min{};
  Potential4 max{};
  std::size_t repetitions = 0;
};

/// Reduces per-iteration new-activation counts (index 0 = the seed) to the
/// four potentials. Ties at the peak resolve to the earliest iteration.
SpreadingPotential summarize(std::span<const std::uint32_t> new_per_iteration);

/// Observer hooks for instrumentation. Both are optional in practice; the
/// null observer compiles away.
struct NullObserver {
  void attempt(ActorId, ActorId, LayerId, bool) noexcept {}
  void iteration(std::uint32_t, std::span<const ActorId>) noexcept {}
};

/// Multilayer independent cascade on one network.
///
/// Iteration 0 activates the seed. At iteration t >= 1 every actor activated
/// at t-1 makes one Bernoulli(pi) attempt per layer on each neighbor that is
/// still inactive; attempts are never repeated because an actor is only ever
/// a source in the iteration after its own activation. A target's layer
/// signal is positive if at least one attempt in that layer succeeded during
/// this iteration. OR activates on any positive signal, AND needs a positive
/// signal in every layer where the target has a node. The run ends at the
/// first iteration without new activations.
///
/// Holds worker-local scratch sized to the network; reuse one instance per
/// thread. The network must outlive the simulator.
class MicmSimulator {
 public:
  explicit MicmSimulator(const MultilayerNetwork& net);

  /// Throws NotFoundError for an unknown seed and ParameterError for pi outside [0, 1].
  SpreadingPotential run(const MicmConfig& cfg) { return run(cfg, NullObserver{}); }

  template <typename Observer>
  SpreadingPotential run(const MicmConfig& cfg, Observer&& observer);

  /// Mean of `repetitions` runs; run r uses rng seed derive_seed(master_seed, r).
  AveragedPotential run_averaged(double pi, Protocol protocol, ActorId seed_actor, std::size_t repetitions,
                                 std::uint64_t master_seed);

  const MultilayerNetwork& network() const noexcept { return net_; }

 private:
  void check(const MicmConfig& cfg) const;

  const MultilayerNetwork& net_;
  std::vector<std::uint32_t> presence_count_;
  // Stamps avoid clearing scratch between iterations and runs.
  std::uint64_t run_stamp_ = 0;
  std::uint64_t tick_ = 0;
  std::vector<std::uint64_t> active_;     // run stamp when activated
  std::vector<std::uint64_t> touched_;    // tick when first attempted this iteration
  std::vector<std::uint64_t> layer_hit_;  // layer-major; tick of last positive signal
  std::vector<std::uint32_t> hits_;       // layers with a positive signal this iteration
  std::vector<ActorId> frontier_;
  std::vector<ActorId> next_;
  std::vector<ActorId> candidates_;
  std::vector<std::uint32_t> counts_;
};

template <typename Observer>
SpreadingPotential MicmSimulator::run(const MicmConfig& cfg, Observer&& observer) {
  check(cfg);
  const std::size_t n = net_.actor_count();
  const auto layers = static_cast<LayerId>(net_.layer_count());
  Rng rng(cfg.rng_seed);

  const std::uint64_t run = ++run_stamp_;
  frontier_.assign(1, cfg.seed_actor);
  active_[cfg.seed_actor] = run;
  counts_.assign(1, 1);
  observer.iteration(0, std::span<const ActorId>(frontier_));

  for (std::uint32_t t = 1;; ++t) {
    const std::uint64_t tick = ++tick_;
    candidates_.clear();
    for (ActorId source : frontier_) {
      for (LayerId l = 0; l < layers; ++l) {
        for (ActorId target : net_.neighbors_unchecked(source, l)) {
          if (active_[target] == run) continue;
          const bool success = rng.bernoulli(cfg.pi);
          observer.attempt(source, target, l, success);
          if (touched_[target] != tick) {
            touched_[target] = tick;
            hits_[target] = 0;
            candidates_.push_back(target);
          }
          auto& hit = layer_hit_[static_cast<std::size_t>(l) * n + target];
          if (success && hit != tick) {
            hit = tick;
            ++hits_[target];
          }
        }
      }
    }

    next_.clear();
    for (ActorId target : candidates_) {
      const std::uint32_t needed = cfg.protocol == Protocol::Or ? 1U : presence_count_[target];
      if (hits_[target] > 0 && hits_[target] >= needed) {
        active_[target] = run;
        next_.push_back(target);
      }
    }
    if (next_.empty()) break;

    std::sort(next_.begin(), next_.end());
    counts_.push_back(static_cast<std::uint32_t>(next_.size()));
    observer.iteration(t, std::span<const ActorId>(next_));
    frontier_.swap(next_);
  }
  return summarize(counts_);
}

/// One run with fresh scratch.
SpreadingPotential simulate(const MultilayerNetwork& net, const MicmConfig& cfg);

/// Throws ParameterError when repetitions == 0.
AveragedPotential simulate_avg(const MultilayerNetwork& net, double pi, Protocol protocol, ActorId seed_actor,
                               std::size_t repetitions, std::uint64_t master_seed);

struct SimulationTask {
  ActorId seed_actor = 0;
  double pi = 0.0;
  Protocol protocol = Protocol::Or;
  std::size_t repetitions = 1;
  std::uint64_t master_seed = 0;
};

/// Runs every task on a pool of `jobs` workers, each with its own simulator.
/// Result i belongs to task i regardless of scheduling.
std::vector<AveragedPotential> simulate_batch(const MultilayerNetwork& net, std::span<const SimulationTask> tasks,
                                              std::size_t jobs);

}  // namespace spreadnet
