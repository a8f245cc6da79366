#pragma once

#include <algorithm>
#include <chrono>
#include <span>
#include <sstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ovsynth/error.hpp"
#include "ovsynth/overstates.hpp"
#include "ovsynth/partition.hpp"
#include "ovsynth/petri_net.hpp"
#include "ovsynth/pnet_format.hpp"
#include "ovsynth/reachability.hpp"
#include "ovsynth/synthesis.hpp"

namespace ovs {

namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kOtherError = 1;
inline constexpr int kParseError = 2;
inline constexpr int kSynthesisImpossible = 3;
inline constexpr int kProperty3Failure = 4;
inline constexpr int kVerificationFailure = 5;
}  // namespace exit_code

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::DuplicateName:
    case ErrorCode::UnknownReference:
    case ErrorCode::InvalidArcWeight:
    case ErrorCode::UnknownPlaceName:
    case ErrorCode::InvalidBadStateSpec:
      return exit_code::kParseError;
    case ErrorCode::InitialStateForbidden:
    case ErrorCode::UncontrollableBreach:
    case ErrorCode::InitialMarkingViolation:
      return exit_code::kSynthesisImpossible;
    case ErrorCode::Property3Violated:
      return exit_code::kProperty3Failure;
    case ErrorCode::VerificationFailure:
      return exit_code::kVerificationFailure;
    default:
      return exit_code::kOtherError;
  }
}

struct StageError {
  std::string stage;
  ErrorCode code;
  std::string message;
};

/// Everything the pipeline computed, as far as it got.
struct PipelineResult {
  PetriNet plant;
  std::optional<ReachabilityGraph> rg;
  std::optional<PartitionResult> partition;
  OverStateSet b1, b2, b3, b4;
  std::optional<CoverTable> table;
  CoverCheck property3;
  bool corollary1 = false;
  bool fallback_used = false;
  OverStateSet fallback_rows;
  std::vector<Constraint> constraints;
  std::optional<ConstraintMatrix> matrix;
  std::optional<Controller> controller;
  std::optional<PetriNet> controlled;
  std::optional<ClosedLoopReport> closed_loop;
  std::vector<StateId> invariant_violations;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
  std::vector<std::pair<std::string, double>> timings_ms;
  std::optional<StageError> error;
  int exit_code = exit_code::kSuccess;

  bool ok() const noexcept { return exit_code == exit_code::kSuccess; }
};

namespace detail {

class StageTimer {
 public:
  StageTimer(PipelineResult& r, std::string name)
      : result_(r), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    const auto d = std::chrono::steady_clock::now() - start_;
    result_.timings_ms.emplace_back(name_, std::chrono::duration<double, std::milli>(d).count());
  }
  StageTimer(const StageTimer&) = delete;
  StageTimer& operator=(const StageTimer&) = delete;

 private:
  PipelineResult& result_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

inline std::vector<Marking> markings_of(const ReachabilityGraph& rg, const StateSet& ids) {
  std::vector<Marking> out;
  out.reserve(ids.size());
  for (StateId s : ids) out.push_back(rg.state(s));
  return out;
}

}  // namespace detail

/// reachability → partition → B1..B4 → covering checks → synthesis →
/// closed-loop verification. Stage failures are recorded, not thrown.
inline PipelineResult run_pipeline(const NetDocument& doc) {
  PipelineResult r;
  r.plant = doc.net;
  const PetriNet& net = r.plant;
  const PipelineOptions& opt = doc.options;
  std::string stage;

  auto finish_with = [&](const std::string& st, ErrorCode code, const std::string& msg) {
    r.error = StageError{st, code, msg};
    r.exit_code = exit_code_for(code);
    return r;
  };

  try {
    for (auto [p, t] : net.self_loops())
      r.warnings.push_back("self-loop between '" + net.place(p).name + "' and '" + net.transition(t).name +
                           "' is invisible to the incidence matrix");

    stage = "reachability";
    {
      detail::StageTimer timer(r, stage);
      r.rg = build_reachability_graph(net, ExplorationOptions{opt.state_budget});
    }
    const ReachabilityGraph& rg = *r.rg;

    stage = "partition";
    {
      detail::StageTimer timer(r, stage);
      PrimalBad seed = primal_bad(rg, net, doc.bad);
      PartitionResult pr;
      pr.primal = seed.states;
      pr.warnings = seed.warnings;
      pr.partition = make_partition(rg, net, forbidden_closure(rg, net, seed.states));
      r.warnings.insert(r.warnings.end(), seed.warnings.begin(), seed.warnings.end());
      r.partition = std::move(pr);
    }
    const StatePartition& part = r.partition->partition;
    if (part.forbidden(0))
      return finish_with(stage, ErrorCode::InitialStateForbidden,
                         "initial marking " + net.format(rg.state(0)) + " is forbidden; no supervisor exists");
    if (const auto breaches = uncontrollable_breaches(rg, net, part); !breaches.empty()) {
      const Edge& e = breaches.front();
      return finish_with(stage, ErrorCode::UncontrollableBreach,
                         "uncontrollable '" + net.transition(e.transition).name + "' leads from authorized " +
                             net.format(rg.state(e.from)) + " into forbidden " + net.format(rg.state(e.to)));
    }

    const auto border = detail::markings_of(rg, part.m_b);
    const auto authorized = detail::markings_of(rg, part.m_a);

    if (!part.m_b.empty()) {
      stage = "overstates";
      {
        detail::StageTimer timer(r, stage);
        r.b1 = build_b1(border, opt.support_cap);
        r.b2 = build_b2(r.b1, authorized);
        r.b3 = minimal_elements(r.b2);
        r.table = build_cover_table(r.b3, border);
        r.property3 = check_property3(*r.table);
      }

      stage = "cover";
      {
        detail::StageTimer timer(r, stage);
        if (!r.property3.holds && !opt.fallback) {
          std::string msg = "border state(s) covered by no over-state:";
          for (std::size_t c : r.property3.uncovered) msg += " " + net.format(r.table->columns[c]);
          return finish_with(stage, ErrorCode::Property3Violated, msg + "; rerun with --fallback");
        }
        CoverTable& table = *r.table;
        if (r.property3.holds) {
          table = opt.exact_cover ? select_exact_cover(table) : select_final_cover(table);
        } else {
          // Select over the coverable columns, then forbid every uncovered
          // border state by its own full-state constraint.
          for (std::size_t c : r.property3.uncovered)
            if (table.columns[c].empty_support())
              return finish_with(stage, ErrorCode::Property3Violated,
                                 "the empty marking is a border state and no constraint can exclude it");
          r.fallback_used = true;
          std::vector<Marking> coverable;
          for (std::size_t c = 0; c < table.column_count(); ++c)
            if (table.cv[c] >= 1) coverable.push_back(table.columns[c]);
          CoverTable partial = build_cover_table(table.rows, coverable);
          partial = opt.exact_cover ? select_exact_cover(partial) : select_final_cover(partial);
          table.selected = partial.selected;
          table.recompute_cf();
          for (std::size_t c : r.property3.uncovered) r.fallback_rows.emplace_back(table.columns[c]);
          r.warnings.push_back("fallback: " + std::to_string(r.fallback_rows.size()) +
                               " full-state constraint(s) added; the controller may be over-restrictive");
        }
        r.b4 = table.selection();
        r.b4.insert(r.b4.end(), r.fallback_rows.begin(), r.fallback_rows.end());
        r.corollary1 = check_corollary1(table);
        if (!r.fallback_used && !r.corollary1)
          return finish_with(stage, ErrorCode::VerificationFailure, "final cover leaves a border state uncovered");
      }
    } else {
      r.notes.push_back("no constraints needed: no forbidden state is reachable from an authorized one");
      r.corollary1 = true;
    }

    stage = "synthesis";
    {
      detail::StageTimer timer(r, stage);
      r.constraints = constraints_from(r.b4);
      if (r.constraints.empty()) {
        r.controller = Controller{IntMatrix(0, net.transition_count()), {}, {}};
      } else {
        r.matrix = build_constraint_matrix(r.constraints, net.place_count());
        r.controller = synthesize(net, *r.matrix);
      }
      r.controlled = assemble_controlled_net(net, *r.controller);
      r.controlled->set_name(net.name() + "_controlled");
    }

    stage = "verify";
    {
      detail::StageTimer timer(r, stage);
      r.closed_loop = verify_closed_loop(*r.controlled, net, rg, part, ExplorationOptions{opt.state_budget});
      if (r.matrix) r.invariant_violations = place_invariant_violations(r.closed_loop->graph, *r.matrix, net.place_count());
    }
    const ClosedLoopReport& cl = *r.closed_loop;
    if (!cl.forbidden_reached.empty())
      return finish_with(stage, ErrorCode::VerificationFailure, "closed loop reaches a forbidden state");
    if (!cl.admissibility.empty())
      return finish_with(stage, ErrorCode::VerificationFailure,
                         "control place " + cl.admissibility.front().control_place + " disables uncontrollable " +
                             cl.admissibility.front().transition);
    if (!r.invariant_violations.empty() || cl.projection_clash || !cl.unknown_projections.empty())
      return finish_with(stage, ErrorCode::VerificationFailure, "closed loop is internally inconsistent");
    if (!cl.maximally_permissive && !r.fallback_used)
      return finish_with(stage, ErrorCode::VerificationFailure, "closed loop is not maximally permissive");
    if (!cl.unreachable_authorized.empty())
      r.notes.push_back(std::to_string(cl.unreachable_authorized.size()) +
                        " authorized state(s) are reachable only through forbidden states");
  } catch (const Error& e) {
    return finish_with(stage, e.code(), e.what());
  }
  return r;
}

namespace detail {

inline nlohmann::json names_of(const PetriNet& net, std::span<const Marking> ms) {
  nlohmann::json out = nlohmann::json::array();
  for (const Marking& m : ms) out.push_back(net.format(m));
  return out;
}

inline nlohmann::json names_of(const PetriNet& net, std::span<const OverState> bs) {
  nlohmann::json out = nlohmann::json::array();
  for (const OverState& b : bs) out.push_back(net.format(b.bits()));
  return out;
}

inline nlohmann::json matrix_json(const IntMatrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m.row(r));
  return out;
}

}  // namespace detail

/// Machine-readable report. Object keys are sorted; timings are optional so
/// that runs can be compared byte for byte.
inline nlohmann::json report_json(const PipelineResult& r, bool with_timings = true) {
  using nlohmann::json;
  const PetriNet& net = r.plant;
  json j;
  j["net"] = net.name();
  j["exit_code"] = r.exit_code;
  j["status"] = r.error ? "failed" : (r.fallback_used ? "fallback" : "ok");
  if (r.error) j["error"] = {{"stage", r.error->stage}, {"code", to_string(r.error->code)}, {"message", r.error->message}};
  j["warnings"] = r.warnings;
  j["notes"] = r.notes;

  json transitions = json::array();
  for (const auto& t : net.transitions()) transitions.push_back({{"name", t.name}, {"controllable", t.controllable}});
  j["plant"] = {{"places", net.place_count()}, {"transitions", transitions}};

  if (r.rg && r.partition) {
    const auto& rg = *r.rg;
    const auto& part = r.partition->partition;
    j["partition"] = {
        {"reachable", part.m_r.size()},
        {"authorized", detail::names_of(net, detail::markings_of(rg, part.m_a))},
        {"forbidden", detail::names_of(net, detail::markings_of(rg, part.m_f))},
        {"border", detail::names_of(net, detail::markings_of(rg, part.m_b))},
        {"primal_bad", detail::names_of(net, detail::markings_of(rg, r.partition->primal))},
        {"counts", {{"M_R", part.m_r.size()}, {"M_A", part.m_a.size()}, {"M_F", part.m_f.size()}, {"M_B", part.m_b.size()}}},
    };
  }
  if (r.table) {
    const CoverTable& t = *r.table;
    json rows = json::array();
    for (std::size_t i = 0; i < t.row_count(); ++i) {
      std::vector<int> cells;
      for (std::size_t c = 0; c < t.column_count(); ++c) cells.push_back(t.cells[i][c] ? 1 : 0);
      rows.push_back({{"over_state", net.format(t.rows[i].bits())}, {"cells", cells}, {"selected", bool(t.selected[i])}});
    }
    j["overstates"] = {
        {"B1_size", r.b1.size()}, {"B2_size", r.b2.size()}, {"B3_size", r.b3.size()},
        {"B1", detail::names_of(net, r.b1)}, {"B2", detail::names_of(net, r.b2)},
        {"B3", detail::names_of(net, r.b3)}, {"B4", detail::names_of(net, r.b4)},
        {"fallback", detail::names_of(net, r.fallback_rows)},
    };
    j["cover_table"] = {
        {"columns", detail::names_of(net, t.columns)}, {"rows", rows}, {"Cv", t.cv}, {"Cf", t.cf},
        {"property3", r.property3.holds}, {"corollary1", r.corollary1},
    };
  }
  if (r.controller) {
    json constraints = json::array();
    for (const auto& c : r.constraints) constraints.push_back(c.format(net));
    j["synthesis"] = {
        {"constraints", constraints},
        {"L", r.matrix ? detail::matrix_json(r.matrix->l) : json::array()},
        {"C_bound", r.matrix ? json(r.matrix->c_bound) : json::array()},
        {"W_C", detail::matrix_json(r.controller->w_c)},
        {"M_C0", r.controller->m_c0},
        {"control_places", r.controller->place_names},
    };
  }
  if (r.closed_loop) {
    const ClosedLoopReport& cl = *r.closed_loop;
    json adm = json::array();
    for (const auto& v : cl.admissibility)
      adm.push_back({{"control_place", v.control_place}, {"transition", v.transition}, {"marking", v.marking}});
    j["closed_loop"] = {
        {"states", cl.state_count()},
        {"projections", detail::names_of(net, cl.projections)},
        {"isomorphic", cl.isomorphic},
        {"maximally_permissive", cl.maximally_permissive},
        {"missing_authorized", detail::names_of(net, cl.missing_authorized)},
        {"unreachable_authorized", detail::names_of(net, cl.unreachable_authorized)},
        {"forbidden_reached", detail::names_of(net, cl.forbidden_reached)},
        {"enabled_mismatches", cl.enabled_mismatches},
        {"admissibility_violations", adm},
        {"invariant_violations", r.invariant_violations.size()},
        {"control_notes", cl.removed_event_notes},
    };
  }
  if (with_timings) {
    json t = json::object();
    for (const auto& [name, ms] : r.timings_ms) t[name] = ms;
    j["timings_ms"] = t;
  }
  return j;
}

namespace detail {

inline bool is_scalar_array(const nlohmann::json& j) {
  return std::all_of(j.begin(), j.end(), [](const nlohmann::json& e) {
    return e.is_primitive() || (e.is_array() && is_scalar_array(e) && !e.empty() && e.front().is_number());
  });
}

inline std::string scalar_text(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

inline std::string inline_array(const nlohmann::json& j) {
  std::string out = "[";
  bool first = true;
  for (const auto& e : j) {
    if (!first) out += ", ";
    first = false;
    out += e.is_array() ? inline_array(e) : scalar_text(e);
  }
  return out + "]";
}

inline void render_text(const nlohmann::json& j, std::ostringstream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    if (v.is_object()) {
      os << pad << it.key() << ":\n";
      render_text(v, os, indent + 2);
    } else if (v.is_array() && !is_scalar_array(v)) {
      os << pad << it.key() << ":\n";
      for (const auto& e : v) {
        if (e.is_object()) {
          bool first = true;
          for (auto f = e.begin(); f != e.end(); ++f) {
            os << pad << (first ? "  - " : "    ") << f.key() << ": "
               << (f.value().is_array() ? inline_array(f.value()) : scalar_text(f.value())) << "\n";
            first = false;
          }
        } else {
          os << pad << "  - " << (e.is_array() ? inline_array(e) : scalar_text(e)) << "\n";
        }
      }
    } else if (v.is_array()) {
      os << pad << it.key() << ": " << inline_array(v) << "\n";
    } else {
      os << pad << it.key() << ": " << scalar_text(v) << "\n";
    }
  }
}

}  // namespace detail

/// Indented key/value rendering of report_json with the same content.
inline std::string report_text(const PipelineResult& r, bool with_timings = true) {
  std::ostringstream os;
  detail::render_text(report_json(r, with_timings), os, 0);
  return os.str();
}

}  // namespace ovs
