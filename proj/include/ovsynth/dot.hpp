#pragma once

#include <sstream>
#include <string>

#include "ovsynth/partition.hpp"
#include "ovsynth/petri_net.hpp"
#include "ovsynth/reachability.hpp"

namespace ovs {

/// Graphviz rendering of a state graph. With a partition, authorized states
/// are white, forbidden states dark gray and border states get a double
/// outline. Uncontrollable edges are dashed.
inline std::string to_dot(const PetriNet& net, const ReachabilityGraph& rg, const StatePartition* part = nullptr) {
  std::ostringstream os;
  os << "digraph \"" << net.name() << "\" {\n";
  os << "  node [shape=ellipse, style=filled, fillcolor=white, fontname=\"Helvetica\"];\n";
  std::vector<bool> border(rg.state_count(), false);
  if (part)
    for (StateId s : part->m_b) border[s] = true;
  for (StateId s = 0; s < rg.state_count(); ++s) {
    os << "  M" << s << " [label=\"M" << s << "\\n" << net.format(rg.state(s)) << "\"";
    if (part && part->forbidden(s)) os << ", fillcolor=gray30, fontcolor=white";
    if (border[s]) os << ", peripheries=2";
    if (s == 0) os << ", penwidth=2";
    os << "];\n";
  }
  for (const Edge& e : rg.edges()) {
    os << "  M" << e.from << " -> M" << e.to << " [label=\"" << net.transition(e.transition).name << "\"";
    if (!net.transition(e.transition).controllable) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace ovs
