#pragma once

// Random safe nets for property testing. Most nets are products of state
// machines (one token per component, hence safe and conservative); the rest
// are unstructured and only kept when exploration proves them safe.

#include <random>
#include <string>
#include <vector>

#include "ovsynth/ovsynth.hpp"

namespace ovs::test {

/// Disjunction of conjunctions of (place, polarity) literals.
using Dnf = std::vector<std::vector<std::pair<PlaceIndex, bool>>>;

struct RandomCase {
  PetriNet net;
  BadStateSpec bad;
  Dnf dnf;
  bool structured = true;
};

inline bool eval_dnf(const Dnf& dnf, const Marking& m) {
  for (const auto& term : dnf) {
    bool all = true;
    for (auto [p, positive] : term) all = all && (m.marked(p) == positive);
    if (all) return true;
  }
  return false;
}

inline RandomCase random_case(std::mt19937_64& rng, std::size_t max_places = 10, std::size_t max_transitions = 8) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  RandomCase rc;
  rc.structured = pick(10) < 7;
  rc.net = PetriNet("random");
  PetriNet& net = rc.net;
  const std::size_t nt = 1 + pick(max_transitions);

  if (rc.structured) {
    std::vector<std::vector<PlaceIndex>> comps;
    std::size_t total = 0;
    const std::size_t k = 1 + pick(3);
    for (std::size_t c = 0; c < k; ++c) {
      const std::size_t size = 2 + pick(3);
      if (total + size > max_places) break;
      std::vector<PlaceIndex> comp;
      const std::size_t marked = pick(size);
      for (std::size_t i = 0; i < size; ++i)
        comp.push_back(net.add_place("p" + std::to_string(total + i), i == marked ? 1 : 0));
      total += size;
      comps.push_back(std::move(comp));
    }
    for (std::size_t t = 0; t < nt; ++t) {
      const auto id = net.add_transition("t" + std::to_string(t), pick(2) == 0);
      const std::size_t first = pick(comps.size());
      std::vector<std::size_t> involved{first};
      if (comps.size() > 1 && pick(2) == 0) {
        std::size_t second = pick(comps.size());
        if (second != first) involved.push_back(second);
      }
      for (std::size_t c : involved) {
        const auto& comp = comps[c];
        const PlaceIndex from = comp[pick(comp.size())];
        PlaceIndex to = comp[pick(comp.size())];
        if (to == from && pick(4) != 0) to = comp[(std::find(comp.begin(), comp.end(), from) - comp.begin() + 1) % comp.size()];
        net.add_input(from, id);
        net.add_output(to, id);
      }
    }
  } else {
    const std::size_t np = 2 + pick(max_places - 1);
    for (std::size_t p = 0; p < np; ++p) net.add_place("p" + std::to_string(p), pick(2) == 0 ? 1 : 0);
    for (std::size_t t = 0; t < nt; ++t) {
      const auto id = net.add_transition("t" + std::to_string(t), pick(2) == 0);
      for (PlaceIndex p = 0; p < np; ++p) {
        if (pick(10) < 3) net.set_pre(p, id, 1);
        if (pick(10) < 3) net.set_post(p, id, 1);
      }
    }
  }

  const std::size_t terms = 1 + pick(3);
  std::string text;
  for (std::size_t i = 0; i < terms; ++i) {
    std::vector<std::pair<PlaceIndex, bool>> term;
    std::string t;
    const std::size_t lits = 1 + pick(3);
    for (std::size_t j = 0; j < lits; ++j) {
      const PlaceIndex p = pick(net.place_count());
      const bool positive = pick(5) != 0;
      term.emplace_back(p, positive);
      t += (j ? " & " : "") + std::string(positive ? "" : "!") + net.place(p).name;
    }
    text += (i ? " | " : "") + ("(" + t + ")");
    rc.dnf.push_back(std::move(term));
  }
  rc.bad.expr = PlaceExpr::parse(text, net);
  return rc;
}

}  // namespace ovs::test
