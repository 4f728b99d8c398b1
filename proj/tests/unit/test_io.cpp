#include <doctest.h>

#include <fstream>

#include "spreadnet/errors.hpp"
#include "spreadnet/netgen.hpp"
#include "spreadnet/network_io.hpp"
#include "support.hpp"

using namespace spreadnet;

namespace {

const char* kSmall =
    "#actors\n"
    "alice\n"
    "bob\n"
    "#layers\n"
    "work\n"
    "home\n"
    "#edges\n"
    "work,alice,bob\n"
    "home,bob,carol\n"
    "work,bob,alice\n";

}  // namespace

TEST_CASE("parse resolves names and appends undeclared actors") {
  const auto net = parse_network(kSmall);
  CHECK(net.actor_count() == 3);
  CHECK(net.actor_name(2) == "carol");
  CHECK(net.layer_count() == 2);
  CHECK(net.edge_count(net.layer_id("work")) == 1);
  CHECK(net.edge_count(net.layer_id("home")) == 1);
  CHECK_FALSE(net.present(net.actor_id("alice"), net.layer_id("home")));
}

TEST_CASE("serialization round-trips and is canonical") {
  const auto net = parse_network(kSmall);
  const auto text = serialize_network(net);
  const auto again = parse_network(text);
  CHECK(again == net);
  CHECK(serialize_network(again) == text);
  CHECK(text.find("#presence") == std::string::npos);
}

TEST_CASE("generated networks round-trip") {
  for (auto model : {GraphModel::er, GraphModel::pa}) {
    GenSpec spec;
    spec.model = model;
    spec.actor_count = 80;
    spec.layer_count = 3;
    spec.pa_attach_m = 3;
    spec.er_edge_prob = 0.05;
    spec.seed = 11;
    const auto net = generate(spec);
    CHECK(parse_network(serialize_network(net)) == net);
  }
}

TEST_CASE("isolated nodes survive through a presence section") {
  const auto net = parse_network(
      "#actors\na\nb\nc\n#layers\nx\ny\n#edges\nx,a,b\n#presence\nx,a\nx,b\ny,c\n");
  CHECK(net.present(2, 1));
  CHECK(net.degree(2, 1) == 0);
  CHECK_FALSE(net.present(0, 1));
  const auto text = serialize_network(net);
  CHECK(text.find("#presence") != std::string::npos);
  CHECK(parse_network(text) == net);
}

TEST_CASE("parse errors carry line numbers") {
  try {
    (void)parse_network("#actors\na\n#layers\nx\n#edges\nx,a,b\ny,a,b\n", "net.mln");
    FAIL("accepted an undeclared layer");
  } catch (const ParseError& e) {
    CHECK(e.line() == 7);
    CHECK(std::string(e.what()).find("net.mln:7") != std::string::npos);
  }
  CHECK_THROWS_AS((void)parse_network("a\n"), ParseError);
  CHECK_THROWS_AS((void)parse_network("#bogus\n"), ParseError);
  CHECK_THROWS_AS((void)parse_network("#layers\nx\n#edges\nx,a\n"), ParseError);
}

TEST_CASE("invalid structure is reported as a validation error") {
  CHECK_THROWS_AS((void)parse_network("#layers\nx\n#edges\nx,a,a\n"), ValidationError);
  CHECK_THROWS_AS((void)parse_network("#layers\nx\n#edges\nx,a,b\n#presence\nx,a\n"), ValidationError);
}

TEST_CASE("files are written and read back") {
  test::TempDir dir;
  const auto net = parse_network(kSmall);
  write_network(dir / "n.mln", net);
  CHECK(read_network(dir / "n.mln") == net);
  CHECK_THROWS_AS((void)read_network(dir / "missing.mln"), NotFoundError);
}

TEST_CASE("edge-list directories become one layer per file") {
  test::TempDir dir;
  std::ofstream(dir / "friends.txt") << "% comment\n# another\nalice bob 0.5\nbob carol\ncarol carol\n";
  std::ofstream(dir / "work.csv") << "alice,dave\n";
  const auto net = read_edge_list_dir(dir.path());
  CHECK(net.layer_count() == 2);
  CHECK(net.actor_count() == 4);
  CHECK(net.edge_count(net.layer_id("friends")) == 2);
  CHECK(net.edge_count(net.layer_id("work")) == 1);
  CHECK(validate(net).empty());
}
