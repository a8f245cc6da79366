#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "ovsynth/error.hpp"
#include "ovsynth/marking.hpp"
#include "ovsynth/petri_net.hpp"
#include "ovsynth/place_expr.hpp"
#include "ovsynth/reachability.hpp"

namespace ovs {

/// Sorted ascending, no duplicates.
using StateSet = std::vector<StateId>;

/// The user's notion of a bad state: any of a place predicate, an explicit
/// list of markings, and (optionally) every deadlock of the uncontrolled net.
struct BadStateSpec {
  std::optional<PlaceExpr> expr;
  std::vector<Marking> explicit_states;
  bool include_deadlocks = false;

  bool has_source() const { return expr.has_value() || !explicit_states.empty() || include_deadlocks; }
};

struct StatePartition {
  StateSet m_r;  ///< reachable
  StateSet m_f;  ///< forbidden
  StateSet m_a;  ///< authorized, m_r \ m_f
  StateSet m_b;  ///< border forbidden

  std::vector<bool> forbidden_flag;  ///< indexed by state id

  bool forbidden(StateId s) const { return forbidden_flag.at(s); }
  bool authorized(StateId s) const { return !forbidden_flag.at(s); }
};

inline StateSet deadlocks(const ReachabilityGraph& rg) {
  StateSet out;
  for (StateId s = 0; s < rg.state_count(); ++s)
    if (rg.out_edges(s).empty()) out.push_back(s);
  return out;
}

struct PrimalBad {
  StateSet states;
  std::vector<std::string> warnings;
};

/// Seed of the forbidden set: states matching the expression, explicit
/// states present in the graph, and deadlocks when requested. Explicit
/// markings that are not reachable produce a warning, not an error.
inline PrimalBad primal_bad(const ReachabilityGraph& rg, const PetriNet& net, const BadStateSpec& spec) {
  if (!spec.has_source())
    fail(ErrorCode::InvalidBadStateSpec, "forbidden block names no expression, state or deadlock");
  PrimalBad out;
  std::vector<bool> hit(rg.state_count(), false);
  if (spec.expr)
    for (StateId s = 0; s < rg.state_count(); ++s)
      if (spec.expr->eval(rg.state(s))) hit[s] = true;
  for (const Marking& m : spec.explicit_states) {
    if (m.size() != net.place_count())
      fail(ErrorCode::InvalidBadStateSpec, "explicit state has " + std::to_string(m.size()) +
                                               " components for " + std::to_string(net.place_count()) +
                                               " places");
    if (auto id = rg.find(m))
      hit[*id] = true;
    else
      out.warnings.push_back("ExplicitStateUnreachable: " + net.format(m) + " is not reachable");
  }
  if (spec.include_deadlocks)
    for (StateId s : deadlocks(rg)) hit[s] = true;
  for (StateId s = 0; s < hit.size(); ++s)
    if (hit[s]) out.states.push_back(s);
  return out;
}

/// Least superset of `bad` closed under uncontrollable predecessors:
/// backward breadth-first search over uncontrollable edges only.
inline StateSet forbidden_closure(const ReachabilityGraph& rg, const PetriNet& net, const StateSet& bad) {
  std::vector<bool> in(rg.state_count(), false);
  std::deque<StateId> work;
  for (StateId s : bad) {
    if (s >= rg.state_count()) fail(ErrorCode::DimensionMismatch, "bad state id out of range");
    if (!in[s]) {
      in[s] = true;
      work.push_back(s);
    }
  }
  while (!work.empty()) {
    const StateId s = work.front();
    work.pop_front();
    for (std::size_t e : rg.in_edges(s)) {
      const Edge& edge = rg.edges()[e];
      if (net.transition(edge.transition).controllable || in[edge.from]) continue;
      in[edge.from] = true;
      work.push_back(edge.from);
    }
  }
  StateSet out;
  for (StateId s = 0; s < in.size(); ++s)
    if (in[s]) out.push_back(s);
  return out;
}

/// Forbidden states entered from an authorized state by a controllable edge.
inline StateSet border_states(const ReachabilityGraph& rg, const PetriNet& net, const StatePartition& part) {
  StateSet out;
  for (StateId s : part.m_f) {
    for (std::size_t e : rg.in_edges(s)) {
      const Edge& edge = rg.edges()[e];
      if (net.transition(edge.transition).controllable && part.authorized(edge.from)) {
        out.push_back(s);
        break;
      }
    }
  }
  return out;
}

/// Builds m_r / m_a / m_f / m_b from a forbidden set.
inline StatePartition make_partition(const ReachabilityGraph& rg, const PetriNet& net, const StateSet& forbidden) {
  StatePartition part;
  part.forbidden_flag.assign(rg.state_count(), false);
  for (StateId s : forbidden) part.forbidden_flag.at(s) = true;
  for (StateId s = 0; s < rg.state_count(); ++s) {
    part.m_r.push_back(s);
    (part.forbidden_flag[s] ? part.m_f : part.m_a).push_back(s);
  }
  part.m_b = border_states(rg, net, part);
  return part;
}

/// Uncontrollable edges from an authorized state into a forbidden one. Empty
/// whenever the forbidden set is a closure; anything else is a breach that no
/// supervisor can prevent.
inline std::vector<Edge> uncontrollable_breaches(const ReachabilityGraph& rg, const PetriNet& net,
                                                 const StatePartition& part) {
  std::vector<Edge> out;
  for (const Edge& e : rg.edges())
    if (!net.transition(e.transition).controllable && part.authorized(e.from) && part.forbidden(e.to))
      out.push_back(e);
  return out;
}

struct PartitionResult {
  StateSet primal;
  StatePartition partition;
  std::vector<std::string> warnings;
};

/// Seed, close and partition. Throws InitialStateForbidden when m0 is
/// forbidden and UncontrollableBreach when the closure is not a fixpoint.
inline PartitionResult analyze_partition(const ReachabilityGraph& rg, const PetriNet& net, const BadStateSpec& spec) {
  PrimalBad seed = primal_bad(rg, net, spec);
  PartitionResult result;
  result.primal = seed.states;
  result.warnings = std::move(seed.warnings);
  result.partition = make_partition(rg, net, forbidden_closure(rg, net, seed.states));
  if (result.partition.forbidden(0))
    fail(ErrorCode::InitialStateForbidden,
         "initial marking " + net.format(rg.state(0)) + " is forbidden; no supervisor exists");
  const auto breaches = uncontrollable_breaches(rg, net, result.partition);
  if (!breaches.empty()) {
    const Edge& e = breaches.front();
    fail(ErrorCode::UncontrollableBreach, "uncontrollable '" + net.transition(e.transition).name + "' leads from " +
                                              net.format(rg.state(e.from)) + " into forbidden " +
                                              net.format(rg.state(e.to)));
  }
  return result;
}

}  // namespace ovs
