#include "oruga/dot.hpp"

#include <map>
#include <set>
#include <sstream>

namespace oruga {

namespace {

std::string quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

} // namespace

std::string export_dot(const std::vector<Construction>& constructions, const DotStyle& style) {
  std::map<std::string, TypeName> types;
  for (const auto& c : constructions) {
    for (const auto& [id, type] : token_types(c)) types.emplace(id, type);
  }

  std::ostringstream nodes;
  std::ostringstream edges;
  std::set<std::string> emitted;
  std::size_t ctor_count = 0;

  auto token_vertex = [&](const std::string& id) {
    if (!emitted.insert(id).second) return;
    auto it = types.find(id);
    std::string label = it == types.end() ? id : id + " : " + it->second;
    nodes << "  " << quote(id) << " [shape=box, label=" << quote(label) << "];\n";
  };

  for (const auto& c : constructions) {
    for_each_node(c, [&](const Construction& n) {
      token_vertex(n.id());
      if (!n.is_apply()) return;
      std::string ctor = "#c" + std::to_string(ctor_count++);
      nodes << "  " << quote(ctor) << " [shape=point, width=0.08, style=filled, xlabel="
            << quote(n.constructor()) << "];\n";
      edges << "  " << quote(ctor) << " -> " << quote(n.id()) << ";\n";
      for (std::size_t i = 0; i < n.inputs().size(); ++i) {
        edges << "  " << quote(n.inputs()[i].id()) << " -> " << quote(ctor)
              << " [label=" << quote(std::to_string(i + 1)) << "];\n";
      }
    });
  }

  std::ostringstream out;
  out << "digraph " << quote(style.graph_name) << " {\n";
  if (style.bottom_to_top) out << "  rankdir=BT;\n";
  out << "  node [fontname=" << quote(style.font) << ", fontsize=10];\n";
  out << "  edge [fontname=" << quote(style.font) << ", fontsize=8];\n";
  out << nodes.str() << edges.str() << "}\n";
  return out.str();
}

} // namespace oruga
