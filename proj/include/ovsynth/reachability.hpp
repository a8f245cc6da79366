#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ovsynth/error.hpp"
#include "ovsynth/marking.hpp"
#include "ovsynth/petri_net.hpp"

namespace ovs {

struct Edge {
  StateId from;
  TransitionIndex transition;
  StateId to;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Explored state space. State 0 is the initial marking; ids follow
/// breadth-first discovery with successors taken in transition index order.
class ReachabilityGraph {
 public:
  std::size_t state_count() const noexcept { return states_.size(); }
  const std::vector<Marking>& states() const noexcept { return states_; }
  const Marking& state(StateId s) const { return states_.at(s); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Indices into edges() leaving / entering `s`.
  const std::vector<std::size_t>& out_edges(StateId s) const { return out_.at(s); }
  const std::vector<std::size_t>& in_edges(StateId s) const { return in_.at(s); }

  std::optional<StateId> find(const Marking& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Returns the id of `m`, inserting it when new. Second is true on insert.
  std::pair<StateId, bool> intern(const Marking& m) {
    auto [it, inserted] = index_.try_emplace(m, states_.size());
    if (inserted) {
      states_.push_back(m);
      out_.emplace_back();
      in_.emplace_back();
    }
    return {it->second, inserted};
  }

  void add_edge(StateId from, TransitionIndex t, StateId to) {
    out_[from].push_back(edges_.size());
    in_[to].push_back(edges_.size());
    edges_.push_back(Edge{from, t, to});
  }

 private:
  std::vector<Marking> states_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::unordered_map<Marking, StateId, MarkingHash> index_;
};

struct ExplorationOptions {
  std::size_t state_budget = std::size_t{1} << 20;
};

/// Exhaustive breadth-first closure of the initial marking under firing.
inline ReachabilityGraph build_reachability_graph(const PetriNet& net,
                                                  const ExplorationOptions& options = {}) {
  ReachabilityGraph rg;
  rg.intern(net.initial());
  for (StateId s = 0; s < rg.state_count(); ++s) {
    const Marking current = rg.state(s);
    for (TransitionIndex t : enabled(net, current)) {
      const Marking next = fire(net, current, t);
      auto [id, inserted] = rg.intern(next);
      if (inserted && rg.state_count() > options.state_budget)
        fail(ErrorCode::StateBudgetExceeded,
             "more than " + std::to_string(options.state_budget) + " reachable states");
      rg.add_edge(s, t, id);
    }
  }
  return rg;
}

}  // namespace ovs
