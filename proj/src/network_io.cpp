#include "spreadnet/network_io.hpp"

#include <algorithm>
#include <sstream>

#include <fmt/format.h>

#include "spreadnet/errors.hpp"
#include "spreadnet/text.hpp"

namespace spreadnet {

namespace {

enum class Section { none, actors, layers, edges, presence };

void check_name(std::string_view name, const std::string& source, std::size_t line) {
  if (name.empty()) throw ParseError(source, line, "empty name");
  if (name.front() == '#') throw ParseError(source, line, fmt::format("name may not start with '#': '{}'", name));
}

}  // namespace

MultilayerNetwork parse_network(std::string_view text, const std::string& source) {
  NetworkBuilder builder;
  Section section = Section::none;
  bool seen_presence = false;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const auto raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const auto line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '#') {
      if (line == "#actors") {
        section = Section::actors;
      } else if (line == "#layers") {
        section = Section::layers;
      } else if (line == "#edges") {
        section = Section::edges;
      } else if (line == "#presence") {
        section = Section::presence;
        seen_presence = true;
      } else {
        throw ParseError(source, line_no, fmt::format("unknown section '{}'", line));
      }
      continue;
    }

    switch (section) {
      case Section::none:
        throw ParseError(source, line_no, "content before the first section header");
      case Section::actors:
        if (line.find(',') != std::string_view::npos) throw ParseError(source, line_no, "actor names may not contain ','");
        check_name(line, source, line_no);
        builder.add_actor(line);
        break;
      case Section::layers:
        if (line.find(',') != std::string_view::npos) throw ParseError(source, line_no, "layer names may not contain ','");
        check_name(line, source, line_no);
        builder.add_layer(line);
        break;
      case Section::edges: {
        const auto fields = split_fields(line);
        if (fields.size() != 3) throw ParseError(source, line_no, "edge lines are 'layer,actor,actor'");
        const auto layer = builder.layers().find(fields[0]);
        if (!layer) throw ParseError(source, line_no, fmt::format("undeclared layer '{}'", fields[0]));
        check_name(fields[1], source, line_no);
        check_name(fields[2], source, line_no);
        builder.add_edge(*layer, builder.add_actor(fields[1]), builder.add_actor(fields[2]));
        break;
      }
      case Section::presence: {
        const auto fields = split_fields(line);
        if (fields.size() != 2) throw ParseError(source, line_no, "presence lines are 'layer,actor'");
        const auto layer = builder.layers().find(fields[0]);
        if (!layer) throw ParseError(source, line_no, fmt::format("undeclared layer '{}'", fields[0]));
        check_name(fields[1], source, line_no);
        builder.add_node(*layer, builder.add_actor(fields[1]));
        break;
      }
    }
  }

  builder.set_presence_mode(seen_presence ? NetworkBuilder::Presence::declared : NetworkBuilder::Presence::inferred);
  return builder.build();
}

MultilayerNetwork read_network(const std::filesystem::path& path) {
  return parse_network(read_file(path), path.string());
}

std::string serialize_network(const MultilayerNetwork& net) {
  std::string out = "#actors\n";
  for (const auto& name : net.actors().names()) fmt::format_to(std::back_inserter(out), "{}\n", name);
  out += "#layers\n";
  for (const auto& name : net.layers().names()) fmt::format_to(std::back_inserter(out), "{}\n", name);
  out += "#edges\n";

  bool needs_presence = false;
  for (LayerId l = 0; l < net.layer_count(); ++l) {
    for (ActorId a = 0; a < net.actor_count(); ++a) {
      const auto nbrs = net.neighbors_unchecked(a, l);
      if (nbrs.empty() && net.present_unchecked(a, l)) needs_presence = true;
      for (auto it = std::upper_bound(nbrs.begin(), nbrs.end(), a); it != nbrs.end(); ++it) {
        fmt::format_to(std::back_inserter(out), "{},{},{}\n", net.layer_name(l), net.actor_name(a),
                       net.actor_name(*it));
      }
    }
  }

  if (needs_presence) {
    out += "#presence\n";
    for (LayerId l = 0; l < net.layer_count(); ++l) {
      for (ActorId a = 0; a < net.actor_count(); ++a) {
        if (net.present_unchecked(a, l)) {
          fmt::format_to(std::back_inserter(out), "{},{}\n", net.layer_name(l), net.actor_name(a));
        }
      }
    }
  }
  return out;
}

void write_network(const std::filesystem::path& path, const MultilayerNetwork& net) {
  write_file_atomic(path, serialize_network(net));
}

MultilayerNetwork read_edge_list_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw NotFoundError(fmt::format("not a directory: '{}'", dir.string()));

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().filename().string().front() != '.') files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw DataError(fmt::format("no layer files in '{}'", dir.string()));

  NetworkBuilder builder;
  for (const auto& file : files) {
    const LayerId layer = builder.add_layer(file.stem().string());
    std::istringstream in(read_file(file));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto content = trim(line);
      if (content.empty() || content.front() == '#' || content.front() == '%') continue;
      std::string normalized(content);
      std::replace(normalized.begin(), normalized.end(), ',', ' ');
      std::istringstream fields(normalized);
      std::string a;
      std::string b;
      if (!(fields >> a >> b)) throw ParseError(file.string(), line_no, "expected two actor names");
      if (a == b) continue;
      builder.add_edge(layer, builder.add_actor(a), builder.add_actor(b));
    }
  }
  return builder.build();
}

}  // namespace spreadnet
