#include "spreadnet/micm.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <string>

#include <fmt/format.h>

#include "spreadnet/errors.hpp"
#include "spreadnet/parallel.hpp"

namespace spreadnet {

std::string_view to_string(Protocol protocol) noexcept { return protocol == Protocol::And ? "and" : "or"; }

Protocol parse_protocol(std::string_view text) {
  std::string lower(text);
  for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "and") return Protocol::And;
  if (lower == "or") return Protocol::Or;
  throw ParameterError(fmt::format("unknown protocol '{}' (expected and or or)", text));
}

SpreadingPotential summarize(std::span<const std::uint32_t> new_per_iteration) {
  SpreadingPotential p{0, 0, 0, 0};
  for (std::size_t t = 0; t < new_per_iteration.size(); ++t) {
    const auto count = new_per_iteration[t];
    p.activated += count;
    if (count > 0) p.duration = static_cast<std::uint32_t>(t);
    if (count > p.peak) {
      p.peak = count;
      p.peak_iteration = static_cast<std::uint32_t>(t);
    }
  }
  return p;
}

MicmSimulator::MicmSimulator(const MultilayerNetwork& net)
    : net_(net),
      presence_count_(net.actor_count(), 0),
      active_(net.actor_count(), 0),
      touched_(net.actor_count(), 0),
      layer_hit_(net.actor_count() * net.layer_count(), 0),
      hits_(net.actor_count(), 0) {
  for (ActorId a = 0; a < net.actor_count(); ++a) {
    presence_count_[a] = static_cast<std::uint32_t>(net.presence_count(a));
  }
}

void MicmSimulator::check(const MicmConfig& cfg) const {
  if (cfg.seed_actor >= net_.actor_count()) {
    throw NotFoundError(fmt::format("unknown seed actor id {}", cfg.seed_actor));
  }
  if (!(cfg.pi >= 0.0 && cfg.pi <= 1.0)) throw ParameterError(fmt::format("pi {} outside [0, 1]", cfg.pi));
}

AveragedPotential MicmSimulator::run_averaged(double pi, Protocol protocol, ActorId seed_actor,
                                              std::size_t repetitions, std::uint64_t master_seed) {
  if (repetitions == 0) throw ParameterError("repetitions must be positive");

  AveragedPotential out;
  out.repetitions = repetitions;
  Potential4 m2{};
  for (std::size_t r = 0; r < repetitions; ++r) {
    const auto sample = as_vector(run(MicmConfig{pi, protocol, seed_actor, derive_seed(master_seed, r)}));
    const double count = static_cast<double>(r + 1);
    for (std::size_t c = 0; c < 4; ++c) {
      if (r == 0) {
        out.min[c] = out.max[c] = sample[c];
      } else {
        out.min[c] = std::min(out.min[c], sample[c]);
        out.max[c] = std::max(out.max[c], sample[c]);
      }
      // Welford
      const double delta = sample[c] - out.mean[c];
      out.mean[c] += delta / count;
      m2[c] += delta * (sample[c] - out.mean[c]);
    }
  }
  for (std::size_t c = 0; c < 4; ++c) {
    out.variance[c] = m2[c] / static_cast<double>(repetitions);
    // Keep the mean inside the observed range despite rounding.
    out.mean[c] = std::clamp(out.mean[c], out.min[c], out.max[c]);
  }
  return out;
}

SpreadingPotential simulate(const MultilayerNetwork& net, const MicmConfig& cfg) {
  MicmSimulator sim(net);
  return sim.run(cfg);
}

AveragedPotential simulate_avg(const MultilayerNetwork& net, double pi, Protocol protocol, ActorId seed_actor,
                               std::size_t repetitions, std::uint64_t master_seed) {
  MicmSimulator sim(net);
  return sim.run_averaged(pi, protocol, seed_actor, repetitions, master_seed);
}

std::vector<AveragedPotential> simulate_batch(const MultilayerNetwork& net, std::span<const SimulationTask> tasks,
                                              std::size_t jobs) {
  std::vector<AveragedPotential> results(tasks.size());
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(tasks.size(), 1));
  std::vector<std::unique_ptr<MicmSimulator>> workers(jobs);
  parallel_for(jobs, tasks.size(), [&](std::size_t i, std::size_t worker) {
    auto& sim = workers[worker];
    if (!sim) sim = std::make_unique<MicmSimulator>(net);
    const auto& task = tasks[i];
    results[i] = sim->run_averaged(task.pi, task.protocol, task.seed_actor, task.repetitions, task.master_seed);
  });
  return results;
}

}  // namespace spreadnet
