#include <doctest.h>

#include <algorithm>
#include <set>

#include "spreadnet/errors.hpp"
#include "spreadnet/network.hpp"
#include "support.hpp"

using namespace spreadnet;

TEST_CASE("builder merges duplicate edges and keeps layers apart") {
  const auto net = test::make_net(4, 2, {{0, 0, 1}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {1, 2, 3}});
  CHECK(net.actor_count() == 4);
  CHECK(net.layer_count() == 2);
  CHECK(net.edge_count(0) == 1);
  CHECK(net.edge_count(1) == 2);
  CHECK(net.edge_count() == 3);
  CHECK(net.degree(0, 0) == 1);
  CHECK(net.degree(2, 0) == 0);
  CHECK(net.actor_degree(0) == 2);
  CHECK(net.neighborhood(0) == std::vector<ActorId>{1});
  CHECK(validate(net).empty());
}

TEST_CASE("neighbors are symmetric and sorted") {
  const auto net = test::make_net(5, 1, {{0, 4, 0}, {0, 2, 0}, {0, 3, 0}, {0, 1, 0}});
  const auto n0 = net.neighbors(0, 0);
  CHECK(std::vector<ActorId>(n0.begin(), n0.end()) == std::vector<ActorId>{1, 2, 3, 4});
  for (ActorId a = 1; a < 5; ++a) CHECK(net.neighbors(a, 0).size() == 1);
}

TEST_CASE("inferred presence follows edges") {
  const auto net = test::make_net(3, 2, {{0, 0, 1}, {1, 1, 2}});
  CHECK(net.present(0, 0));
  CHECK_FALSE(net.present(0, 1));
  CHECK(net.present(1, 1));
  CHECK(net.presence_count(1) == 2);
  CHECK(net.presence_count(2) == 1);
  CHECK(net.node_count() == 4);
}

TEST_CASE("declared presence accepts isolated nodes and rejects undeclared endpoints") {
  NetworkBuilder b(NetworkBuilder::Presence::declared);
  b.add_numbered_actors(3);
  const auto l = b.add_layer("x");
  b.add_node(l, 0);
  b.add_node(l, 1);
  b.add_node(l, 2);
  b.add_edge(l, 0, 1);
  const auto net = b.build();
  CHECK(net.present(2, 0));
  CHECK(net.degree(2, 0) == 0);

  NetworkBuilder bad(NetworkBuilder::Presence::declared);
  bad.add_numbered_actors(3);
  const auto m = bad.add_layer("x");
  bad.add_node(m, 0);
  bad.add_edge(m, 0, 1);
  bad.add_edge(m, 2, 2);
  const auto violations = bad.validate();
  CHECK(violations.size() >= 2);
  const bool loop = std::any_of(violations.begin(), violations.end(),
                                [](const std::string& v) { return v.find("self-loop") != std::string::npos; });
  const bool node = std::any_of(violations.begin(), violations.end(),
                                [](const std::string& v) { return v.find("node not in V") != std::string::npos; });
  CHECK(loop);
  CHECK(node);
  try {
    (void)bad.build();
    FAIL("build accepted an invalid network");
  } catch (const ValidationError& e) {
    CHECK(e.violations() == violations);
  }
}

TEST_CASE("unknown names and ids raise NotFoundError") {
  const auto net = test::make_net(2, 1, {{0, 0, 1}});
  CHECK_THROWS_AS((void)net.actor_id("nobody"), NotFoundError);
  CHECK_THROWS_AS((void)net.layer_id("nowhere"), NotFoundError);
  CHECK_THROWS_AS((void)net.neighbors(7, 0), NotFoundError);
  CHECK_THROWS_AS((void)net.neighbors(0, 3), NotFoundError);
  CHECK(net.actor_id("1") == 1);
  CHECK(net.layer_id("L0") == 0);
}

TEST_CASE("flatten is the union of layers") {
  const auto net = test::make_net(4, 3, {{0, 0, 1}, {1, 0, 1}, {1, 1, 2}, {2, 2, 3}});
  const auto flat = flatten(net);
  CHECK(flat.layer_count() == 1);
  CHECK(flat.edge_count() == 3);
  for (ActorId a = 0; a < 4; ++a) {
    CHECK(flat.present(a, 0));
    const auto n = flat.neighbors(a, 0);
    CHECK(std::vector<ActorId>(n.begin(), n.end()) == net.neighborhood(a));
  }
}

TEST_CASE("flattened diameter of paths, cycles and disconnected graphs") {
  CHECK(flattened_diameter(test::path(5)).diameter == 4);
  CHECK(flattened_diameter(test::path(5)).connected);
  CHECK(flattened_connected(test::path(5)));

  std::vector<test::Edge> cycle;
  for (unsigned i = 0; i < 6; ++i) cycle.emplace_back(i % 2, i, (i + 1) % 6);
  const auto ring = test::make_net(6, 2, cycle);
  CHECK(flattened_diameter(ring).diameter == 3);

  // components {0,1,2,3} (path) and {4,5}
  const auto split = test::make_net(6, 2, {{0, 0, 1}, {1, 1, 2}, {0, 2, 3}, {1, 4, 5}});
  const auto info = flattened_diameter(split);
  CHECK_FALSE(info.connected);
  CHECK(info.largest_component == 4);
  CHECK(info.diameter == 3);
  CHECK_FALSE(flattened_connected(split));
}

TEST_CASE("equality compares structure and names") {
  const auto a = test::make_net(3, 1, {{0, 0, 1}});
  const auto b = test::make_net(3, 1, {{0, 1, 0}, {0, 0, 1}});
  const auto c = test::make_net(3, 1, {{0, 1, 2}});
  CHECK(a == b);
  CHECK_FALSE(a == c);
}

TEST_CASE("random networks satisfy every invariant") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto edges = test::random_edges(30, 3, 0.1, seed);
    const auto net = test::make_net(30, 3, edges);
    CHECK(validate(net).empty());
    std::set<std::tuple<unsigned, unsigned, unsigned>> unique;
    for (auto [l, a, b] : edges) unique.emplace(l, std::min(a, b), std::max(a, b));
    CHECK(net.edge_count() == unique.size());
  }
}
