#include "ptts/dimacs.hpp"

#include <sstream>
#include <stdexcept>

namespace ptts {

std::string to_dimacs(const FlowNetwork& n) {
  std::ostringstream out;
  out << "p min " << n.node_count << ' ' << n.edges.size() << '\n';
  for (std::size_t v = 0; v < n.node_count; ++v)
    if (n.supplies[v] != 0) out << "n " << v + 1 << ' ' << n.supplies[v] << '\n';
  for (const auto& e : n.edges)
    out << "a " << e.from + 1 << ' ' << e.to + 1 << ' ' << e.lower << ' ' << e.upper << ' ' << e.cost << '\n';
  return out.str();
}

FlowNetwork read_dimacs(std::istream& in) {
  FlowNetwork net;
  bool have_problem = false;
  std::size_t declared_edges = 0;
  std::string line;
  std::size_t line_no = 0;
  const auto fail = [&](const std::string& what) {
    throw std::invalid_argument("dimacs line " + std::to_string(line_no) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    char tag = 0;
    if (!(ls >> tag) || tag == 'c') continue;
    if (tag == 'p') {
      std::string kind;
      std::size_t nodes = 0;
      if (have_problem) fail("duplicate problem line");
      if (!(ls >> kind >> nodes >> declared_edges) || kind != "min") fail("expected 'p min <nodes> <edges>'");
      net = FlowNetwork(nodes);
      net.edges.reserve(declared_edges);
      have_problem = true;
    } else if (tag == 'n') {
      std::size_t id = 0;
      std::int64_t supply = 0;
      if (!have_problem) fail("node line before problem line");
      if (!(ls >> id >> supply) || id == 0 || id > net.node_count) fail("malformed node line");
      net.supplies[id - 1] = supply;
    } else if (tag == 'a') {
      std::size_t from = 0, to = 0;
      std::int64_t lower = 0, upper = 0, cost = 0;
      if (!have_problem) fail("arc line before problem line");
      if (!(ls >> from >> to >> lower >> upper >> cost) || from == 0 || to == 0 || from > net.node_count ||
          to > net.node_count)
        fail("malformed arc line");
      if (cost < INT32_MIN || cost > INT32_MAX) fail("cost outside signed 32-bit range");
      net.add_edge(static_cast<NodeId>(from - 1), static_cast<NodeId>(to - 1), lower, upper,
                   static_cast<std::int32_t>(cost));
    } else {
      fail(std::string("unknown line tag '") + tag + "'");
    }
  }
  if (!have_problem) throw std::invalid_argument("dimacs: missing problem line");
  if (net.edges.size() != declared_edges)
    throw std::invalid_argument("dimacs: declared " + std::to_string(declared_edges) + " arcs, found " +
                                std::to_string(net.edges.size()));
  return net;
}

FlowNetwork parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return read_dimacs(in);
}

}  // namespace ptts
