#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ovsynth/error.hpp"
#include "ovsynth/marking.hpp"
#include "ovsynth/matrix.hpp"
#include "ovsynth/overstates.hpp"
#include "ovsynth/partition.hpp"
#include "ovsynth/petri_net.hpp"
#include "ovsynth/reachability.hpp"

namespace ovs {

/// L (k x N, 0/1) and the bound vector of k constraints L·M ≤ c_bound.
struct ConstraintMatrix {
  IntMatrix l;
  std::vector<int> c_bound;

  std::size_t size() const noexcept { return c_bound.size(); }
};

inline ConstraintMatrix build_constraint_matrix(std::span<const Constraint> constraints, std::size_t place_count) {
  if (constraints.empty()) fail(ErrorCode::EmptyConstraintSet, "no constraints to build L from");
  ConstraintMatrix cm;
  cm.l = IntMatrix(0, place_count);
  for (const Constraint& c : constraints) {
    if (c.support.empty()) fail(ErrorCode::InvalidOverState, "constraint with empty support");
    std::vector<int> row(place_count, 0);
    for (PlaceIndex p : c.support) {
      if (p >= place_count) fail(ErrorCode::DimensionMismatch, "constraint place out of range");
      row[p] = 1;
    }
    cm.l.append_row(row);
    cm.c_bound.push_back(c.bound);
  }
  return cm;
}

/// Control places of the place-invariant supervisor.
struct Controller {
  IntMatrix w_c;                        ///< k x |T|
  std::vector<int> m_c0;                ///< initial tokens, length k
  std::vector<std::string> place_names;

  std::size_t size() const noexcept { return m_c0.size(); }
};

/// W_C = −L·W and M_C0 = c_bound − L·M0, with W = post − pre of the plant.
inline Controller synthesize(const PetriNet& net, const ConstraintMatrix& cm) {
  if (cm.l.cols() != net.place_count())
    fail(ErrorCode::DimensionMismatch, "L has " + std::to_string(cm.l.cols()) + " columns for " +
                                           std::to_string(net.place_count()) + " places");
  Controller ctrl;
  ctrl.w_c = -(cm.l * net.incidence());
  if (ctrl.w_c.rows() == 0) ctrl.w_c = IntMatrix(0, net.transition_count());
  for (std::size_t i = 0; i < cm.size(); ++i) {
    int lm = 0;
    for (PlaceIndex p = 0; p < net.place_count(); ++p) lm += cm.l(i, p) * net.initial()[p];
    const int tokens = cm.c_bound[i] - lm;
    if (tokens < 0)
      fail(ErrorCode::InitialMarkingViolation, "initial marking " + net.format(net.initial()) +
                                                   " violates constraint " + std::to_string(i + 1));
    ctrl.m_c0.push_back(tokens);
  }
  for (std::size_t i = 0; i < cm.size(); ++i) {
    std::string name = "Pc" + std::to_string(i + 1);
    while (net.find_place(name)) name += "_";
    ctrl.place_names.push_back(std::move(name));
  }
  return ctrl;
}

/// Plant plus control places appended in constraint order. A negative W_C
/// entry becomes an input arc of the transition, a positive one an output arc.
inline PetriNet assemble_controlled_net(const PetriNet& net, const Controller& ctrl) {
  PetriNet out = net;
  for (std::size_t i = 0; i < ctrl.size(); ++i) {
    if (ctrl.m_c0[i] > 255) fail(ErrorCode::SafenessViolation, "control place initial marking above 255");
    const PlaceIndex p = out.add_place(ctrl.place_names[i], static_cast<Marking::Token>(ctrl.m_c0[i]), true);
    for (TransitionIndex t = 0; t < out.transition_count(); ++t) {
      const int w = ctrl.w_c(i, t);
      if (w < 0) out.set_pre(p, t, -w);
      if (w > 0) out.set_post(p, t, w);
    }
  }
  return out;
}

struct AdmissibilityViolation {
  std::string control_place;
  std::string transition;
  std::string marking;
};

/// Behavioural comparison of the closed loop against the authorized set.
struct ClosedLoopReport {
  ReachabilityGraph graph;             ///< of the controlled net
  std::vector<Marking> projections;    ///< plant part of each controlled state, by state id
  std::size_t authorized_count = 0;    ///< |M_A|
  std::vector<Marking> unreachable_authorized;  ///< in M_A, only reachable through M_F
  std::vector<Marking> missing_authorized;      ///< reachable within M_A but not under control
  std::vector<Marking> forbidden_reached;
  std::vector<Marking> unknown_projections;     ///< not even reachable in the plant
  bool projection_clash = false;
  std::vector<std::string> enabled_mismatches;
  std::vector<AdmissibilityViolation> admissibility;
  std::vector<std::string> removed_event_notes;

  /// Closed loop equals M_A with matching enabled transitions everywhere.
  bool isomorphic = false;
  /// Closed loop equals the part of M_A reachable without entering M_F,
  /// the largest behaviour any supervisor can achieve.
  bool maximally_permissive = false;

  std::size_t state_count() const noexcept { return graph.state_count(); }
};

/// Rebuilds the closed-loop state space, drops control places from every
/// state and compares the result with the authorized states of the plant.
inline ClosedLoopReport verify_closed_loop(const PetriNet& controlled, const PetriNet& plant,
                                           const ReachabilityGraph& plant_rg, const StatePartition& part,
                                           const ExplorationOptions& options = {}) {
  const std::size_t plant_places = plant.place_count();
  if (controlled.place_count() < plant_places || controlled.transition_count() != plant.transition_count())
    fail(ErrorCode::DimensionMismatch, "controlled net does not extend the plant");
  for (PlaceIndex p = plant_places; p < controlled.place_count(); ++p)
    if (!controlled.place(p).control)
      fail(ErrorCode::DimensionMismatch, "control places must follow the plant places");

  ClosedLoopReport report;
  try {
    report.graph = build_reachability_graph(controlled, options);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SafenessViolation)
      fail(ErrorCode::VerificationFailure, std::string("controlled net is not safe: ") + e.what());
    throw;
  }
  report.authorized_count = part.m_a.size();

  // Authorized states reachable from m0 without leaving M_A.
  std::vector<bool> supervisable(plant_rg.state_count(), false);
  if (plant_rg.state_count() > 0 && part.authorized(0)) {
    std::vector<StateId> stack{0};
    supervisable[0] = true;
    while (!stack.empty()) {
      const StateId s = stack.back();
      stack.pop_back();
      for (std::size_t e : plant_rg.out_edges(s)) {
        const StateId to = plant_rg.edges()[e].to;
        if (part.authorized(to) && !supervisable[to]) {
          supervisable[to] = true;
          stack.push_back(to);
        }
      }
    }
  }
  for (StateId s : part.m_a)
    if (!supervisable[s]) report.unreachable_authorized.push_back(plant_rg.state(s));

  std::vector<bool> reached(plant_rg.state_count(), false);
  for (StateId cs = 0; cs < report.graph.state_count(); ++cs) {
    const Marking& full = report.graph.state(cs);
    Marking proj = full.prefix(plant_places);
    report.projections.push_back(proj);
    const auto plant_id = plant_rg.find(proj);
    if (!plant_id) {
      report.unknown_projections.push_back(proj);
      continue;
    }
    if (reached[*plant_id]) report.projection_clash = true;
    reached[*plant_id] = true;
    if (part.forbidden(*plant_id)) {
      report.forbidden_reached.push_back(proj);
      continue;
    }

    std::vector<TransitionIndex> expected;
    for (std::size_t e : plant_rg.out_edges(*plant_id)) {
      const Edge& edge = plant_rg.edges()[e];
      if (part.authorized(edge.to)) expected.push_back(edge.transition);
    }
    std::vector<TransitionIndex> actual;
    for (std::size_t e : report.graph.out_edges(cs)) actual.push_back(report.graph.edges()[e].transition);
    std::sort(expected.begin(), expected.end());
    std::sort(actual.begin(), actual.end());
    if (expected != actual)
      report.enabled_mismatches.push_back("enabled transitions differ at " + plant.format(proj));

    // An uncontrollable transition the plant enables must not be blocked by
    // a control place alone.
    for (TransitionIndex t = 0; t < controlled.transition_count(); ++t) {
      if (controlled.transition(t).controllable || is_enabled(controlled, full, t)) continue;
      bool plant_enables = true;
      for (PlaceIndex p = 0; p < plant_places; ++p)
        if (full[p] < controlled.pre(p, t)) plant_enables = false;
      if (!plant_enables) continue;
      for (PlaceIndex p = plant_places; p < controlled.place_count(); ++p)
        if (full[p] < controlled.pre(p, t))
          report.admissibility.push_back(
              AdmissibilityViolation{controlled.place(p).name, controlled.transition(t).name, plant.format(proj)});
    }
  }

  for (StateId s = 0; s < plant_rg.state_count(); ++s)
    if (supervisable[s] && !reached[s]) report.missing_authorized.push_back(plant_rg.state(s));

  for (TransitionIndex t = 0; t < controlled.transition_count(); ++t) {
    if (!controlled.transition(t).controllable) continue;
    std::vector<std::string> guards;
    for (PlaceIndex p = plant_places; p < controlled.place_count(); ++p)
      if (controlled.pre(p, t) > 0) guards.push_back(controlled.place(p).name);
    if (guards.empty()) continue;
    std::string note = controlled.transition(t).name + ": control performed by ";
    for (std::size_t i = 0; i < guards.size(); ++i) note += (i ? ", " : "") + guards[i];
    report.removed_event_notes.push_back(std::move(note));
  }

  const bool behaviour_ok = !report.projection_clash && report.forbidden_reached.empty() &&
                            report.unknown_projections.empty() && report.missing_authorized.empty() &&
                            report.enabled_mismatches.empty();
  report.maximally_permissive = behaviour_ok;
  report.isomorphic = behaviour_ok && report.unreachable_authorized.empty() &&
                      report.graph.state_count() == part.m_a.size();
  return report;
}

/// L·M_plant + M_ctrl = c_bound on every state of a closed-loop graph.
/// Returns the ids of states where it fails.
inline std::vector<StateId> place_invariant_violations(const ReachabilityGraph& closed_loop,
                                                       const ConstraintMatrix& cm, std::size_t plant_places) {
  std::vector<StateId> out;
  for (StateId s = 0; s < closed_loop.state_count(); ++s) {
    const Marking& m = closed_loop.state(s);
    for (std::size_t i = 0; i < cm.size(); ++i) {
      int sum = m[plant_places + i];
      for (PlaceIndex p = 0; p < plant_places; ++p) sum += cm.l(i, p) * m[p];
      if (sum != cm.c_bound[i]) {
        out.push_back(s);
        break;
      }
    }
  }
  return out;
}

}  // namespace ovs
