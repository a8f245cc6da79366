#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ovsynth/error.hpp"
#include "ovsynth/marking.hpp"
#include "ovsynth/matrix.hpp"

namespace ovs {

struct Place {
  std::string name;
  /// Control places are added by synthesis; they may carry several tokens
  /// and weighted arcs. Plant places are safe: capacity 1, unit arcs.
  bool control = false;

  int capacity() const noexcept { return control ? 255 : 1; }
};

struct Transition {
  std::string name;
  bool controllable = true;
};

/// Petri net with separate pre/post arc matrices (|P| x |T|).
///
/// Pre and post are kept apart because the incidence matrix cannot carry
/// self-loops; `incidence()` derives W = post - pre on demand.
class PetriNet {
 public:
  explicit PetriNet(std::string name = "net") : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  PlaceIndex add_place(std::string name, Marking::Token initial = 0, bool control = false) {
    if (find_place(name)) fail(ErrorCode::DuplicateName, "place '" + name + "' declared twice");
    if (initial > (control ? 255 : 1))
      fail(ErrorCode::SafenessViolation, "initial marking exceeds capacity of '" + name + "'");
    places_.push_back(Place{std::move(name), control});
    std::vector<int> zeros(transitions_.size(), 0);
    pre_.append_row(zeros);
    post_.append_row(zeros);
    std::vector<Marking::Token> tok(initial_.tokens().begin(), initial_.tokens().end());
    tok.push_back(initial);
    initial_ = Marking(std::move(tok));
    return places_.size() - 1;
  }

  TransitionIndex add_transition(std::string name, bool controllable) {
    if (find_transition(name))
      fail(ErrorCode::DuplicateName, "transition '" + name + "' declared twice");
    transitions_.push_back(Transition{std::move(name), controllable});
    pre_.append_col();
    post_.append_col();
    return transitions_.size() - 1;
  }

  TransitionIndex add_transition(std::string name, bool controllable,
                                 std::span<const PlaceIndex> inputs,
                                 std::span<const PlaceIndex> outputs) {
    const TransitionIndex t = add_transition(std::move(name), controllable);
    for (PlaceIndex p : inputs) add_input(p, t);
    for (PlaceIndex p : outputs) add_output(p, t);
    return t;
  }

  TransitionIndex add_transition(std::string name, bool controllable,
                                 std::initializer_list<PlaceIndex> inputs,
                                 std::initializer_list<PlaceIndex> outputs) {
    return add_transition(std::move(name), controllable,
                          std::span<const PlaceIndex>(inputs.begin(), inputs.size()),
                          std::span<const PlaceIndex>(outputs.begin(), outputs.size()));
  }

  void add_input(PlaceIndex p, TransitionIndex t, int weight = 1) { set_pre(p, t, pre_(p, t) + weight); }
  void add_output(PlaceIndex p, TransitionIndex t, int weight = 1) { set_post(p, t, post_(p, t) + weight); }

  void set_pre(PlaceIndex p, TransitionIndex t, int weight) {
    check_weight(p, t, weight);
    pre_(p, t) = weight;
  }
  void set_post(PlaceIndex p, TransitionIndex t, int weight) {
    check_weight(p, t, weight);
    post_(p, t) = weight;
  }

  std::size_t place_count() const noexcept { return places_.size(); }
  std::size_t transition_count() const noexcept { return transitions_.size(); }
  const std::vector<Place>& places() const noexcept { return places_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }
  const Place& place(PlaceIndex p) const { return places_.at(p); }
  const Transition& transition(TransitionIndex t) const { return transitions_.at(t); }

  int pre(PlaceIndex p, TransitionIndex t) const { return pre_(p, t); }
  int post(PlaceIndex p, TransitionIndex t) const { return post_(p, t); }
  const IntMatrix& pre_matrix() const noexcept { return pre_; }
  const IntMatrix& post_matrix() const noexcept { return post_; }

  /// W = post - pre, |P| x |T|.
  IntMatrix incidence() const { return post_ - pre_; }

  const Marking& initial() const noexcept { return initial_; }
  void set_initial(Marking m) {
    if (m.size() != places_.size())
      fail(ErrorCode::DimensionMismatch, "initial marking has " + std::to_string(m.size()) +
                                             " components for " + std::to_string(places_.size()) +
                                             " places");
    for (PlaceIndex p = 0; p < m.size(); ++p)
      if (m[p] > places_[p].capacity())
        fail(ErrorCode::SafenessViolation, "initial marking exceeds capacity of '" +
                                               places_[p].name + "'");
    initial_ = std::move(m);
  }

  std::optional<PlaceIndex> find_place(std::string_view name) const {
    for (PlaceIndex p = 0; p < places_.size(); ++p)
      if (places_[p].name == name) return p;
    return std::nullopt;
  }

  std::optional<TransitionIndex> find_transition(std::string_view name) const {
    for (TransitionIndex t = 0; t < transitions_.size(); ++t)
      if (transitions_[t].name == name) return t;
    return std::nullopt;
  }

  /// (place, transition) pairs with pre = post = 1: invisible in W.
  std::vector<std::pair<PlaceIndex, TransitionIndex>> self_loops() const {
    std::vector<std::pair<PlaceIndex, TransitionIndex>> out;
    for (PlaceIndex p = 0; p < places_.size(); ++p)
      for (TransitionIndex t = 0; t < transitions_.size(); ++t)
        if (pre_(p, t) > 0 && post_(p, t) > 0) out.emplace_back(p, t);
    return out;
  }

  std::vector<PlaceIndex> inputs(TransitionIndex t) const {
    std::vector<PlaceIndex> out;
    for (PlaceIndex p = 0; p < places_.size(); ++p)
      if (pre_(p, t) > 0) out.push_back(p);
    return out;
  }

  std::vector<PlaceIndex> outputs(TransitionIndex t) const {
    std::vector<PlaceIndex> out;
    for (PlaceIndex p = 0; p < places_.size(); ++p)
      if (post_(p, t) > 0) out.push_back(p);
    return out;
  }

  std::size_t plant_place_count() const {
    return static_cast<std::size_t>(
        std::count_if(places_.begin(), places_.end(), [](const Place& p) { return !p.control; }));
  }

  std::string format(const Marking& m) const {
    return format_support(m, [this](PlaceIndex p) -> const std::string& { return places_[p].name; });
  }

  friend bool operator==(const PetriNet& a, const PetriNet& b) {
    if (a.name_ != b.name_ || a.places_.size() != b.places_.size() ||
        a.transitions_.size() != b.transitions_.size())
      return false;
    for (std::size_t i = 0; i < a.places_.size(); ++i)
      if (a.places_[i].name != b.places_[i].name || a.places_[i].control != b.places_[i].control)
        return false;
    for (std::size_t i = 0; i < a.transitions_.size(); ++i)
      if (a.transitions_[i].name != b.transitions_[i].name ||
          a.transitions_[i].controllable != b.transitions_[i].controllable)
        return false;
    return a.pre_ == b.pre_ && a.post_ == b.post_ && a.initial_ == b.initial_;
  }

 private:
  void check_weight(PlaceIndex p, TransitionIndex t, int weight) const {
    if (p >= places_.size() || t >= transitions_.size())
      fail(ErrorCode::DimensionMismatch, "arc endpoint out of range");
    if (weight < 0 || weight > places_[p].capacity())
      fail(ErrorCode::InvalidArcWeight, "arc between '" + places_[p].name + "' and '" +
                                            transitions_[t].name + "' has weight " +
                                            std::to_string(weight) + "; plant arcs must have weight 1");
  }

  std::string name_;
  std::vector<Place> places_;
  std::vector<Transition> transitions_;
  IntMatrix pre_;
  IntMatrix post_;
  Marking initial_;
};

inline bool is_enabled(const PetriNet& net, const Marking& m, TransitionIndex t) {
  for (PlaceIndex p = 0; p < net.place_count(); ++p)
    if (m[p] < net.pre(p, t)) return false;
  return true;
}

/// Transitions enabled at `m`, ascending index order.
inline std::vector<TransitionIndex> enabled(const PetriNet& net, const Marking& m) {
  if (m.size() != net.place_count())
    fail(ErrorCode::DimensionMismatch, "marking length does not match the net");
  std::vector<TransitionIndex> out;
  for (TransitionIndex t = 0; t < net.transition_count(); ++t)
    if (is_enabled(net, m, t)) out.push_back(t);
  return out;
}

/// m - pre(t) + post(t). Raises SafenessViolation when a place would exceed
/// its capacity, which for a plant place means the net is not safe.
inline Marking fire(const PetriNet& net, const Marking& m, TransitionIndex t) {
  if (m.size() != net.place_count())
    fail(ErrorCode::DimensionMismatch, "marking length does not match the net");
  if (t >= net.transition_count()) fail(ErrorCode::DimensionMismatch, "transition out of range");
  if (!is_enabled(net, m, t))
    fail(ErrorCode::NotEnabled, "'" + net.transition(t).name + "' is not enabled at " + net.format(m));
  Marking next = m;
  for (PlaceIndex p = 0; p < net.place_count(); ++p) {
    const int v = int{m[p]} - net.pre(p, t) + net.post(p, t);
    if (v > net.place(p).capacity())
      fail(ErrorCode::SafenessViolation, "firing '" + net.transition(t).name + "' at " +
                                             net.format(m) + " puts " + std::to_string(v) +
                                             " tokens on '" + net.place(p).name + "'");
    next[p] = static_cast<Marking::Token>(v);
  }
  return next;
}

}  // namespace ovs
