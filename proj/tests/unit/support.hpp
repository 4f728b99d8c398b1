#pragma once

#include <atomic>
#include <filesystem>
#include <string>
#include <tuple>
#include <vector>

#include <unistd.h>

#include "spreadnet/network.hpp"
#include "spreadnet/rng.hpp"

namespace test {

using Edge = std::tuple<unsigned, unsigned, unsigned>;  // layer, a, b

/// Numbered actors and layers "L0".. built from (layer, a, b) triples.
inline spreadnet::MultilayerNetwork make_net(std::size_t actors, std::size_t layers, const std::vector<Edge>& edges) {
  spreadnet::NetworkBuilder b;
  b.add_numbered_actors(actors);
  for (std::size_t l = 0; l < layers; ++l) b.add_layer("L" + std::to_string(l));
  for (const auto& [l, x, y] : edges) b.add_edge(l, x, y);
  return b.build();
}

inline spreadnet::MultilayerNetwork path(std::size_t n) {
  std::vector<Edge> edges;
  for (unsigned i = 0; i + 1 < n; ++i) edges.emplace_back(0, i, i + 1);
  return make_net(n, 1, edges);
}

/// Random simple edge list, each pair per layer with probability p.
inline std::vector<Edge> random_edges(std::size_t actors, std::size_t layers, double p, std::uint64_t seed) {
  spreadnet::Rng rng(seed);
  std::vector<Edge> edges;
  for (unsigned l = 0; l < layers; ++l) {
    for (unsigned a = 0; a < actors; ++a) {
      for (unsigned b = a + 1; b < actors; ++b) {
        if (rng.bernoulli(p)) edges.emplace_back(l, a, b);
      }
    }
  }
  return edges;
}

/// Fresh directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("spreadnet-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace test
