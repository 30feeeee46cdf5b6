#include "mrfcut/dimacs.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace mrfcut {
namespace {

struct RawArc {
  std::int64_t from;
  std::int64_t to;
  Capacity cap;
  std::size_t line;
};

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw InputError("dimacs line " + std::to_string(line) + ": " + what);
}

// Reads the remaining tokens of a line and rejects trailing garbage.
template <typename... T>
void read_fields(std::istringstream& ls, std::size_t line, const char* what, T&... fields) {
  if (!(ls >> ... >> fields)) fail(line, std::string("malformed ") + what);
  std::string extra;
  if (ls >> extra) fail(line, std::string("trailing data in ") + what);
}

}  // namespace

ParsedDimacs parse_dimacs_with_ids(std::istream& in) {
  std::optional<std::int64_t> node_count;
  std::optional<std::int64_t> source;
  std::optional<std::int64_t> sink;
  std::vector<RawArc> raw;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::istringstream ls(text);
    std::string kind;
    if (!(ls >> kind) || kind == "c") continue;
    if (kind == "p") {
      if (node_count) fail(line, "duplicate problem line");
      std::string problem;
      std::int64_t nodes = 0;
      std::int64_t arcs = 0;
      read_fields(ls, line, "problem line", problem, nodes, arcs);
      if (problem != "max") fail(line, "expected 'p max', got 'p " + problem + "'");
      if (nodes < 2 || nodes > std::numeric_limits<std::int32_t>::max() || arcs < 0)
        fail(line, "invalid node or arc count in problem line");
      node_count = nodes;
      raw.reserve(static_cast<std::size_t>(std::min<std::int64_t>(arcs, 1 << 24)));
    } else if (kind == "n") {
      if (!node_count) fail(line, "node designation before problem line");
      std::int64_t id = 0;
      std::string role;
      read_fields(ls, line, "node line", id, role);
      if (id < 1 || id > *node_count) fail(line, "node id out of range");
      if (role == "s") {
        if (source) fail(line, "duplicate source designation");
        source = id;
      } else if (role == "t") {
        if (sink) fail(line, "duplicate sink designation");
        sink = id;
      } else {
        fail(line, "node role must be 's' or 't'");
      }
    } else if (kind == "a") {
      if (!node_count) fail(line, "arc before problem line");
      RawArc a{0, 0, 0, line};
      read_fields(ls, line, "arc line", a.from, a.to, a.cap);
      if (a.from < 1 || a.from > *node_count || a.to < 1 || a.to > *node_count)
        fail(line, "node id out of range");
      if (a.cap < 0) fail(line, "negative capacity");
      raw.push_back(a);
    } else {
      fail(line, "unknown line type '" + kind + "'");
    }
  }
  if (!node_count) fail(line, "missing problem line");
  if (!source) fail(line, "missing source designation");
  if (!sink) fail(line, "missing sink designation");
  if (*source == *sink) fail(line, "source and sink coincide");

  ParsedDimacs out;
  Network& net = out.network;
  net.num_usual = static_cast<std::int32_t>(*node_count - 2);
  out.usual_file_ids.reserve(static_cast<std::size_t>(net.num_usual));
  auto internal = [&](std::int64_t id) -> NodeId {
    if (id == *source) return 0;
    if (id == *sink) return net.num_usual + 1;
    NodeId k = static_cast<NodeId>(id);
    if (id > *source) --k;
    if (id > *sink) --k;
    return k;
  };
  for (std::int64_t id = 1; id <= *node_count; ++id)
    if (id != *source && id != *sink) out.usual_file_ids.push_back(id);

  net.arcs.reserve(raw.size());
  for (const RawArc& a : raw) {
    const Arc arc{internal(a.from), internal(a.to), a.cap};
    if (arc.from == arc.to) fail(a.line, "self loop");
    if (arc.to == net.source()) fail(a.line, "arc enters the source");
    if (arc.from == net.sink()) fail(a.line, "arc leaves the sink");
    net.arcs.push_back(arc);
  }
  return out;
}

Network parse_dimacs(std::istream& in) { return parse_dimacs_with_ids(in).network; }

Network parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

void write_dimacs(const Network& net, std::ostream& out) {
  validate(net);
  std::vector<Arc> arcs = net.arcs;
  std::stable_sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  out << "p max " << net.num_nodes() << ' ' << arcs.size() << '\n';
  out << "n " << net.source() + 1 << " s\n";
  out << "n " << net.sink() + 1 << " t\n";
  for (const Arc& a : arcs) out << "a " << a.from + 1 << ' ' << a.to + 1 << ' ' << a.cap << '\n';
}

std::string write_dimacs(const Network& net) {
  std::ostringstream out;
  write_dimacs(net, out);
  return out.str();
}

}  // namespace mrfcut
