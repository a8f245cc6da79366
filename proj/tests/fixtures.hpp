#pragma once

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ovsynth/ovsynth.hpp"

namespace ovs::test {

/// Places P1..P7 are indices 0..6; transitions in order c1 f1 c2 f2 t2.
inline PetriNet two_machines() {
  PetriNet net("two_machines");
  for (int i = 1; i <= 7; ++i) net.add_place("P" + std::to_string(i));
  net.add_transition("c1", true, {0}, {1});
  net.add_transition("f1", false, {1, 5}, {0, 6});
  net.add_transition("c2", true, {2}, {3});
  net.add_transition("f2", false, {3}, {4});
  net.add_transition("t2", false, {4, 6}, {2, 5});
  net.set_initial(Marking::from_support(7, {0, 2, 5}));
  return net;
}

/// Marking of the two-machine net from 1-based place numbers, e.g. {1,3,6}.
inline Marking tm(std::initializer_list<int> places) {
  Marking m(7);
  for (int p : places) m[static_cast<PlaceIndex>(p - 1)] = 1;
  return m;
}

inline OverState ov(std::initializer_list<int> places) { return OverState(tm(places)); }

inline std::vector<std::string> names(const PetriNet& net, const std::vector<Marking>& ms) {
  std::vector<std::string> out;
  for (const auto& m : ms) out.push_back(net.format(m));
  return out;
}

inline std::vector<std::string> names(const PetriNet& net, const OverStateSet& bs) {
  std::vector<std::string> out;
  for (const auto& b : bs) out.push_back(net.format(b.bits()));
  return out;
}

inline std::vector<std::string> names(const PetriNet& net, const ReachabilityGraph& rg, const StateSet& ids) {
  std::vector<std::string> out;
  for (StateId s : ids) out.push_back(net.format(rg.state(s)));
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string net_path(const std::string& file) { return std::string(OVS_NETS_DIR) + "/" + file; }

inline BadStateSpec two_machines_bad(const PetriNet& net) {
  BadStateSpec bad;
  bad.expr = PlaceExpr::parse("(P2 & P7) | (P5 & P6)", net);
  return bad;
}

}  // namespace ovs::test
