#pragma once

// Fuzzy token game.
//
//   enabledness   eps(e, M) = min_b implies(pre(e, b), M(b))      (1 if B is empty)
//   firing        M'(b)     = max(consume(M(b), pre(e, b)), min(eps, post(e, b)))
//                 consume(m, p) = 0 if p > 0, m otherwise
//
// An event fires only when eps > threshold. On 0/1 nets and markings this is
// the elementary-net token game without a contact check.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dialnet/error.hpp"
#include "dialnet/fnets.hpp"

namespace dialnet {

struct NotEnabled : Error {
  NotEnabled(std::size_t event, Degree enabledness, Degree threshold, std::optional<std::size_t> step = {})
      : Error(message(event, enabledness, threshold, step)),
        event(event), enabledness(enabledness), threshold(threshold), step(step) {}

  std::size_t event;
  Degree enabledness;
  Degree threshold;
  std::optional<std::size_t> step;

private:
  static std::string message(std::size_t event, Degree eps, Degree theta, std::optional<std::size_t> step) {
    std::string s = "event #" + std::to_string(event) + " not enabled: enabledness " + eps.str() +
                    " <= threshold " + theta.str();
    if (step) s += " at step " + std::to_string(*step);
    return s;
  }
};

/// Degrees over the conditions of a net; immutable once built.
class Marking {
public:
  Marking() = default;
  Marking(FinSet conditions, std::vector<Degree> degrees)
      : conditions_(std::move(conditions)), degrees_(std::move(degrees)) {
    if (degrees_.size() != conditions_.size()) {
      throw CarrierMismatch("marking has " + std::to_string(degrees_.size()) + " entries for " +
                            std::to_string(conditions_.size()) + " conditions");
    }
  }

  static Marking empty(const FuzzyNet& n) {
    return Marking(n.conditions(), std::vector<Degree>(n.conditions().size(), Degree::zero()));
  }

  const FinSet& conditions() const { return conditions_; }
  const std::vector<Degree>& degrees() const { return degrees_; }
  std::size_t size() const { return degrees_.size(); }
  Degree operator[](std::size_t b) const { return degrees_[b]; }
  Degree at(const Element& b) const { return degrees_[conditions_.require_index(b)]; }

  friend bool operator==(const Marking& a, const Marking& b) { return a.degrees_ == b.degrees_; }

private:
  FinSet conditions_;
  std::vector<Degree> degrees_;
};

namespace detail {

inline void require_marking(const FuzzyNet& n, const Marking& m) {
  if (!(m.conditions() == n.conditions())) throw CarrierMismatch("marking is over different conditions");
}

inline std::size_t require_event(const FuzzyNet& n, std::size_t e) {
  if (e >= n.events().size()) throw UnknownEvent("event index " + std::to_string(e) + " out of range");
  return e;
}

}  // namespace detail

inline std::size_t event_index(const FuzzyNet& n, const Element& e) {
  const auto i = n.events().index_of(e);
  if (!i) throw UnknownEvent("unknown event " + e.key());
  return *i;
}

inline Degree enabledness(const FuzzyNet& n, const Marking& m, std::size_t e) {
  detail::require_marking(n, m);
  detail::require_event(n, e);
  Degree eps = Degree::one();
  for (std::size_t b = 0; b < n.conditions().size(); ++b) eps = meet(eps, implies(n.pre(e, b), m[b]));
  return eps;
}

inline Degree enabledness(const FuzzyNet& n, const Marking& m, const Element& e) {
  return enabledness(n, m, event_index(n, e));
}

inline Marking fire(const FuzzyNet& n, const Marking& m, std::size_t e, Degree threshold = Degree::zero()) {
  const Degree eps = enabledness(n, m, e);
  if (eps <= threshold) throw NotEnabled(e, eps, threshold);
  std::vector<Degree> next(m.size());
  for (std::size_t b = 0; b < m.size(); ++b) {
    const Degree kept = n.pre(e, b).positive() ? Degree::zero() : m[b];
    next[b] = join(kept, meet(eps, n.post(e, b)));
  }
  return Marking(m.conditions(), std::move(next));
}

inline Marking fire(const FuzzyNet& n, const Marking& m, const Element& e, Degree threshold = Degree::zero()) {
  return fire(n, m, event_index(n, e), threshold);
}

struct TraceStep {
  std::size_t event = 0;
  Degree enabledness;
  Marking marking_after;
};

/// Fires `schedule` in order; NotEnabled carries the failing step index.
inline std::vector<TraceStep> run(const FuzzyNet& n, const Marking& m0, const std::vector<std::size_t>& schedule,
                                  Degree threshold = Degree::zero()) {
  std::vector<TraceStep> trace;
  trace.reserve(schedule.size());
  Marking current = m0;
  for (std::size_t step = 0; step < schedule.size(); ++step) {
    const std::size_t e = schedule[step];
    const Degree eps = enabledness(n, current, e);
    if (eps <= threshold) throw NotEnabled(e, eps, threshold, step);
    current = fire(n, current, e, threshold);
    trace.push_back({e, eps, current});
  }
  return trace;
}

struct ReachabilityEdge {
  std::size_t from = 0;
  std::size_t event = 0;
  Degree enabledness;
  std::size_t to = 0;
};

/// Markings reachable in at most `depth` firings. Nodes are numbered in
/// breadth-first discovery order with events tried in index order; node 0 is
/// the initial marking and equal markings share one node.
struct ReachabilityGraph {
  std::vector<Marking> nodes;
  std::vector<std::size_t> depth;
  std::vector<ReachabilityEdge> edges;
};

inline ReachabilityGraph explore(const FuzzyNet& n, const Marking& m0, std::size_t depth,
                                 Degree threshold = Degree::zero()) {
  detail::require_marking(n, m0);
  const std::size_t cap = limits().cap.load();
  ReachabilityGraph g;
  std::map<std::vector<Degree>, std::size_t> seen;
  g.nodes.push_back(m0);
  g.depth.push_back(0);
  seen.emplace(m0.degrees(), 0);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (g.depth[i] >= depth) continue;
    for (std::size_t e = 0; e < n.events().size(); ++e) {
      const Degree eps = enabledness(n, g.nodes[i], e);
      if (eps <= threshold) continue;
      Marking next = fire(n, g.nodes[i], e, threshold);
      auto [it, inserted] = seen.emplace(next.degrees(), g.nodes.size());
      if (inserted) {
        if (g.nodes.size() >= cap) {
          throw ResourceLimit("exploration exceeds the cap of " + std::to_string(cap) + " markings");
        }
        g.nodes.push_back(std::move(next));
        g.depth.push_back(g.depth[i] + 1);
      }
      g.edges.push_back({i, e, eps, it->second});
    }
  }
  return g;
}

/// Enabledness of e under M and of f(e) under the pushed-forward marking
/// M o F on the target. Observational only.
struct TransportReport {
  Degree source_enabledness;
  Degree target_enabledness;
  Marking target_marking;
  bool target_at_least_source = false;
};

inline TransportReport simulation_transport_report(const NetMorphism& m, const Marking& marking, std::size_t e) {
  const FuzzyNet src = m.source();
  const FuzzyNet tgt = m.target();
  detail::require_marking(src, marking);
  const auto& big_f = m.conditions_map();
  std::vector<Degree> pushed(tgt.conditions().size());
  for (std::size_t b2 = 0; b2 < pushed.size(); ++b2) pushed[b2] = marking[big_f(b2)];
  TransportReport r;
  r.source_enabledness = enabledness(src, marking, e);
  r.target_marking = Marking(tgt.conditions(), std::move(pushed));
  r.target_enabledness = enabledness(tgt, r.target_marking, m.events_map()(e));
  r.target_at_least_source = r.target_enabledness >= r.source_enabledness;
  return r;
}

}  // namespace dialnet
