#pragma once

// Fuzzy topological systems: a set of points, a finite frame of opens, and a
// degree-valued satisfaction relation whose supports obey the topological
// system axioms (satisfaction of meets and joins of opens).

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dialnet/degree.hpp"
#include "dialnet/dialectica.hpp"
#include "dialnet/error.hpp"
#include "dialnet/finset.hpp"

namespace dialnet {

/// A finite bounded distributive lattice, given by its order. Meets and
/// joins are derived from the order and every lattice law is verified.
class Frame {
public:
  Frame() = default;

  /// le[a][b] is a <= b. Throws InvalidFrame unless the order is a
  /// distributive lattice with top and bottom.
  Frame(FinSet elements, std::vector<std::vector<bool>> le)
      : elements_(std::move(elements)), le_(std::move(le)) {
    const std::size_t n = elements_.size();
    if (n == 0) throw InvalidFrame("a frame needs at least a top element");
    if (le_.size() != n) throw InvalidFrame("order table has the wrong number of rows");
    for (const auto& row : le_) {
      if (row.size() != n) throw InvalidFrame("order table has a row of the wrong length");
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (!le_[a][a]) throw InvalidFrame("order is not reflexive at " + name(a));
      for (std::size_t b = 0; b < n; ++b) {
        if (a != b && le_[a][b] && le_[b][a]) {
          throw InvalidFrame("order is not antisymmetric at " + name(a) + ", " + name(b));
        }
        for (std::size_t c = 0; c < n; ++c) {
          if (le_[a][b] && le_[b][c] && !le_[a][c]) {
            throw InvalidFrame("order is not transitive at " + name(a) + ", " + name(b) + ", " + name(c));
          }
        }
      }
    }
    meet_.assign(n * n, 0);
    join_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        auto glb = extremal(a, b, /*lower=*/true);
        auto lub = extremal(a, b, /*lower=*/false);
        if (!glb) throw InvalidFrame("no meet of " + name(a) + " and " + name(b));
        if (!lub) throw InvalidFrame("no join of " + name(a) + " and " + name(b));
        meet_[a * n + b] = *glb;
        join_[a * n + b] = *lub;
      }
    }
    top_ = bottom_ = 0;
    for (std::size_t a = 1; a < n; ++a) {
      top_ = join(top_, a);
      bottom_ = meet(bottom_, a);
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) {
            throw InvalidFrame("lattice is not distributive at " + name(a) + ", " + name(b) + ", " + name(c));
          }
        }
      }
    }
  }

  /// The frame of all subsets of the given atoms, elements named like "{a,b}".
  static Frame powerset(const std::vector<std::string>& atoms) {
    const std::size_t k = atoms.size();
    const std::size_t n = std::size_t{1} << k;
    std::vector<std::string> names;
    for (std::size_t mask = 0; mask < n; ++mask) {
      std::string s = "{";
      for (std::size_t i = 0; i < k; ++i) {
        if (mask >> i & 1) {
          if (s.size() > 1) s += ',';
          s += atoms[i];
        }
      }
      names.push_back(s + "}");
    }
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) le[a][b] = (a & ~b) == 0;
    }
    return Frame(FinSet::atoms(names), std::move(le));
  }

  /// A chain of the given elements, listed from bottom to top.
  static Frame chain(const std::vector<std::string>& names) {
    const std::size_t n = names.size();
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) le[a][b] = a <= b;
    }
    return Frame(FinSet::atoms(names), std::move(le));
  }

  const FinSet& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<std::vector<bool>>& order() const { return le_; }

  bool le(std::size_t a, std::size_t b) const { return le_[a][b]; }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * size() + b]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a * size() + b]; }
  std::size_t top() const { return top_; }
  std::size_t bottom() const { return bottom_; }

  std::size_t meet_all(const std::vector<std::size_t>& s) const {
    std::size_t r = top_;
    for (auto a : s) r = meet(r, a);
    return r;
  }
  std::size_t join_all(const std::vector<std::size_t>& s) const {
    std::size_t r = bottom_;
    for (auto a : s) r = join(r, a);
    return r;
  }

  std::size_t require_index(const Element& e) const {
    if (auto i = elements_.index_of(e)) return *i;
    throw UnknownOpen("'" + e.key() + "' is not an open of the frame");
  }

  std::string name(std::size_t a) const { return elements_.element(a).key(); }

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.elements_ == b.elements_ && a.le_ == b.le_;
  }

private:
  std::optional<std::size_t> extremal(std::size_t a, std::size_t b, bool lower) const {
    const std::size_t n = size();
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < n; ++c) {
      const bool bound = lower ? (le_[c][a] && le_[c][b]) : (le_[a][c] && le_[b][c]);
      if (!bound) continue;
      if (!best || (lower ? le_[*best][c] : le_[c][*best])) best = c;
    }
    if (!best) return std::nullopt;
    for (std::size_t c = 0; c < n; ++c) {
      const bool bound = lower ? (le_[c][a] && le_[c][b]) : (le_[a][c] && le_[b][c]);
      if (bound && !(lower ? le_[c][*best] : le_[*best][c])) return std::nullopt;
    }
    return best;
  }

  FinSet elements_ = FinSet::singleton();
  std::vector<std::vector<bool>> le_{{true}};
  std::vector<std::size_t> meet_{0}, join_{0};
  std::size_t top_ = 0, bottom_ = 0;
};

// ---------------------------------------------------------------- axioms

enum class AxiomClause { meet, join };

/// A point and a set of opens at which a satisfaction axiom fails.
struct AxiomWitness {
  std::size_t point = 0;
  std::vector<std::size_t> subset;
  AxiomClause clause = AxiomClause::meet;
  friend bool operator==(const AxiomWitness&, const AxiomWitness&) = default;
};

enum class AxiomMode {
  /// The empty set and every pair; equivalent to all subsets by induction.
  binary,
  /// Every subset of the frame; limited to frames of at most 12 opens.
  all_subsets,
};

namespace detail {

// Calls fn(subset) for the subsets the mode requires, smallest first.
template <class Fn>
bool for_each_axiom_subset(std::size_t n, AxiomMode mode, Fn&& fn) {
  if (mode == AxiomMode::binary) {
    if (!fn(std::vector<std::size_t>{})) return false;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!fn(std::vector<std::size_t>{a, b})) return false;
      }
    }
    return true;
  }
  if (n > 12) throw ResourceLimit("all-subsets axiom check is limited to frames of at most 12 opens");
  for (std::size_t k = 0; k <= n; ++k) {
    // Subsets of size k in lexicographic order.
    std::vector<std::size_t> s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = i;
    while (true) {
      if (!fn(s)) return false;
      std::size_t i = k;
      while (i > 0 && s[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++s[i - 1];
      for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
    }
  }
  return true;
}

// Shared by the fuzzy and crisp checks: holds(x, a) is "x satisfies a".
template <class Holds>
std::optional<AxiomWitness> first_axiom_failure(std::size_t points, const Frame& frame, AxiomMode mode,
                                                Holds&& holds) {
  std::optional<AxiomWitness> out;
  for (std::size_t x = 0; x < points && !out; ++x) {
    for_each_axiom_subset(frame.size(), mode, [&](const std::vector<std::size_t>& s) {
      bool all = true, any = false;
      for (auto a : s) {
        const bool h = holds(x, a);
        all = all && h;
        any = any || h;
      }
      if (holds(x, frame.meet_all(s)) != all) {
        out = AxiomWitness{x, s, AxiomClause::meet};
        return false;
      }
      if (holds(x, frame.join_all(s)) != any) {
        out = AxiomWitness{x, s, AxiomClause::join};
        return false;
      }
      return true;
    });
  }
  return out;
}

}  // namespace detail

/// The satisfaction axioms read with strict positivity: sat(x, /\S) > 0 iff
/// sat(x, a) > 0 for all a in S, and sat(x, \/S) > 0 iff for some a in S.
/// sat is row-major over points x opens.
inline Verdict<AxiomWitness> check_axioms(const FinSet& points, const Frame& frame,
                                          const std::vector<Degree>& sat,
                                          AxiomMode mode = AxiomMode::binary) {
  if (sat.size() != points.size() * frame.size()) {
    throw CarrierMismatch("satisfaction matrix does not match points x opens");
  }
  const std::size_t n = frame.size();
  auto w = detail::first_axiom_failure(points.size(), frame, mode,
                                       [&](std::size_t x, std::size_t a) { return sat[x * n + a].positive(); });
  return w ? Verdict<AxiomWitness>::fail(*w) : Verdict<AxiomWitness>::ok();
}

inline std::string describe(const Frame& frame, const FinSet& points, const AxiomWitness& w) {
  std::string s = "axiom (";
  s += w.clause == AxiomClause::meet ? "meet" : "join";
  s += ") fails at point " + points.element(w.point).key() + " for S = {";
  for (std::size_t i = 0; i < w.subset.size(); ++i) {
    if (i) s += ",";
    s += frame.name(w.subset[i]);
  }
  return s + "}";
}

// ---------------------------------------------------------------- systems

/// A classical topological system: satisfaction is a plain relation.
struct CrispTopSystem {
  FinSet points;
  Frame opens;
  std::vector<bool> sat;  // row-major, points x opens

  bool satisfies(std::size_t x, std::size_t a) const { return sat[x * opens.size() + a]; }
};

inline Verdict<AxiomWitness> check_crisp_axioms(const CrispTopSystem& ts, AxiomMode mode = AxiomMode::binary) {
  if (ts.sat.size() != ts.points.size() * ts.opens.size()) {
    throw CarrierMismatch("satisfaction relation does not match points x opens");
  }
  auto w = detail::first_axiom_failure(ts.points.size(), ts.opens, mode,
                                       [&](std::size_t x, std::size_t a) { return ts.satisfies(x, a); });
  return w ? Verdict<AxiomWitness>::fail(*w) : Verdict<AxiomWitness>::ok();
}

class FuzzyTopSystem {
public:
  /// Throws InvalidSystem if the axioms fail.
  FuzzyTopSystem(FinSet points, Frame opens, std::vector<Degree> sat)
      : points_(std::move(points)), opens_(std::move(opens)), sat_(std::move(sat)) {
    auto v = check_axioms(points_, opens_, sat_);
    if (!v) throw InvalidSystem(describe(opens_, points_, v.witness()));
  }

  const FinSet& points() const { return points_; }
  const Frame& opens() const { return opens_; }
  const std::vector<Degree>& sat() const { return sat_; }
  Degree operator()(std::size_t x, std::size_t a) const { return sat_[x * opens_.size() + a]; }

private:
  FinSet points_;
  Frame opens_;
  std::vector<Degree> sat_;
};

/// The characteristic embedding: 1 where x satisfies a, 0 elsewhere.
inline FuzzyTopSystem crisp_embed(const CrispTopSystem& ts) {
  auto v = check_crisp_axioms(ts);
  if (!v) throw InvalidSystem("not a topological system: " + describe(ts.opens, ts.points, v.witness()));
  std::vector<Degree> sat;
  sat.reserve(ts.sat.size());
  for (const bool b : ts.sat) sat.push_back(b ? Degree::one() : Degree::zero());
  return FuzzyTopSystem(ts.points, ts.opens, std::move(sat));
}

/// The crisp relation "sat(x, a) > 0".
inline CrispTopSystem support(const FuzzyTopSystem& sys) {
  std::vector<bool> rel;
  rel.reserve(sys.sat().size());
  for (const Degree d : sys.sat()) rel.push_back(d.positive());
  return CrispTopSystem{sys.points(), sys.opens(), std::move(rel)};
}

struct FuzzySet {
  FinSet carrier;
  std::vector<Degree> membership;

  std::vector<bool> support() const {
    std::vector<bool> s;
    for (const Degree d : membership) s.push_back(d.positive());
    return s;
  }
  friend bool operator==(const FuzzySet&, const FuzzySet&) = default;
};

inline FuzzySet extent(const FuzzyTopSystem& sys, std::size_t a) {
  if (a >= sys.opens().size()) throw UnknownOpen("open index out of range");
  FuzzySet out{sys.points(), {}};
  for (std::size_t x = 0; x < sys.points().size(); ++x) out.membership.push_back(sys(x, a));
  return out;
}

inline FuzzySet extent(const FuzzyTopSystem& sys, const Element& a) {
  return extent(sys, sys.opens().require_index(a));
}

// ---------------------------------------------------------------- extent report

enum class ExtentClass { exact, support_level_only, fails };

inline std::string_view to_string(ExtentClass c) {
  switch (c) {
    case ExtentClass::exact:
      return "exact fuzzy topology";
    case ExtentClass::support_level_only:
      return "support-level only";
    case ExtentClass::fails:
      return "fails";
  }
  return "";
}

/// Closure data for one pair of opens.
struct PairClosure {
  std::size_t a = 0, b = 0;
  bool meet_exact = true, meet_support = true;
  bool join_exact = true, join_support = true;
};

/// A point where the pointwise min/max of two extents differs from the extent
/// of the meet/join.
struct ClosureWitness {
  std::size_t a = 0, b = 0, point = 0;
  AxiomClause clause = AxiomClause::meet;
  Degree expected, actual;  // pointwise min/max, then extent of a /\ b or a \/ b
};

struct ExtentReport {
  ExtentClass verdict = ExtentClass::exact;
  std::vector<PairClosure> pairs;
  bool bottom_is_empty = true;     // extent(bottom) is the constant-0 set
  bool top_is_positive = true;     // extent(top) is positive everywhere
  bool contains_whole = false;     // some extent is the constant-1 set
  std::optional<ClosureWitness> first_exact_failure;
  std::optional<ClosureWitness> first_support_failure;
};

/// Tests whether the extents of the opens are closed under pointwise min and
/// max, exactly and at the level of supports.
inline ExtentReport check_extent_topology(const FuzzyTopSystem& sys) {
  const Frame& fr = sys.opens();
  const std::size_t n = fr.size(), np = sys.points().size();
  ExtentReport rep;
  for (std::size_t x = 0; x < np; ++x) {
    if (!sys(x, fr.bottom()).is_zero()) rep.bottom_is_empty = false;
    if (!sys(x, fr.top()).positive()) rep.top_is_positive = false;
  }
  for (std::size_t a = 0; a < n && !rep.contains_whole; ++a) {
    bool whole = true;
    for (std::size_t x = 0; x < np; ++x) whole = whole && sys(x, a).is_one();
    rep.contains_whole = whole;
  }
  auto note = [&](bool support_ok, const ClosureWitness& w) {
    if (!rep.first_exact_failure) rep.first_exact_failure = w;
    if (!support_ok && !rep.first_support_failure) rep.first_support_failure = w;
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      PairClosure pc{a, b};
      const std::size_t m = fr.meet(a, b), j = fr.join(a, b);
      for (std::size_t x = 0; x < np; ++x) {
        const Degree lo = meet(sys(x, a), sys(x, b));
        const Degree hi = join(sys(x, a), sys(x, b));
        if (lo != sys(x, m)) {
          pc.meet_exact = false;
          const bool sup = lo.positive() == sys(x, m).positive();
          pc.meet_support = pc.meet_support && sup;
          note(sup, ClosureWitness{a, b, x, AxiomClause::meet, lo, sys(x, m)});
        }
        if (hi != sys(x, j)) {
          pc.join_exact = false;
          const bool sup = hi.positive() == sys(x, j).positive();
          pc.join_support = pc.join_support && sup;
          note(sup, ClosureWitness{a, b, x, AxiomClause::join, hi, sys(x, j)});
        }
      }
      rep.pairs.push_back(pc);
    }
  }
  const bool ends_ok = rep.bottom_is_empty && rep.top_is_positive;
  if (!ends_ok || rep.first_support_failure) {
    rep.verdict = ExtentClass::fails;
  } else if (rep.first_exact_failure) {
    rep.verdict = ExtentClass::support_level_only;
  } else {
    rep.verdict = ExtentClass::exact;
  }
  return rep;
}

// ---------------------------------------------------------------- continuity

/// The system as a Dialectica object (points, opens, sat), forgetting the frame.
inline DialObject as_dial_object(const FuzzyTopSystem& sys) {
  return DialObject(sys.points(), sys.opens().elements(), sys.sat(), Orientation::standard);
}

/// A frame-homomorphism law that fails: "top", "bottom", "meet" or "join",
/// with the opens involved.
struct FrameHomWitness {
  std::string law;
  std::size_t a = 0, b = 0;
};

/// Checks that phi : B -> A preserves top, bottom, binary meets and joins.
inline Verdict<FrameHomWitness> check_frame_hom(const Frame& from, const Frame& to, const FinMap& phi) {
  if (!(phi.domain() == from.elements()) || !(phi.codomain() == to.elements())) {
    throw CarrierMismatch("frame map endpoints do not match the frames");
  }
  if (phi(from.top()) != to.top()) return Verdict<FrameHomWitness>::fail({"top", from.top(), from.top()});
  if (phi(from.bottom()) != to.bottom()) {
    return Verdict<FrameHomWitness>::fail({"bottom", from.bottom(), from.bottom()});
  }
  for (std::size_t a = 0; a < from.size(); ++a) {
    for (std::size_t b = 0; b < from.size(); ++b) {
      if (phi(from.meet(a, b)) != to.meet(phi(a), phi(b))) return Verdict<FrameHomWitness>::fail({"meet", a, b});
      if (phi(from.join(a, b)) != to.join(phi(a), phi(b))) return Verdict<FrameHomWitness>::fail({"join", a, b});
    }
  }
  return Verdict<FrameHomWitness>::ok();
}

/// Three independent verdicts for a candidate map of systems
/// (f on points, phi on opens in the reverse direction).
struct ContinuityReport {
  Verdict<PairWitness> dial;             // sat1(x, phi(b)) <= sat2(f(x), b)
  Verdict<FrameHomWitness> frame_hom;    // phi preserves the frame operations
  Verdict<PairWitness> support;          // sat1(x, phi(b)) > 0 iff sat2(f(x), b) > 0
};

inline ContinuityReport check_continuity(const FuzzyTopSystem& s1, const FuzzyTopSystem& s2, const FinMap& f,
                                         const FinMap& phi) {
  if (!(f.domain() == s1.points()) || !(f.codomain() == s2.points())) {
    throw CarrierMismatch("point map must go from the first system's points to the second's");
  }
  if (!(phi.domain() == s2.opens().elements()) || !(phi.codomain() == s1.opens().elements())) {
    throw CarrierMismatch("open map must go from the second system's opens to the first's");
  }
  ContinuityReport rep{check_morphism(as_dial_object(s1), as_dial_object(s2), f, phi),
                       check_frame_hom(s2.opens(), s1.opens(), phi), Verdict<PairWitness>::ok()};
  for (std::size_t x = 0; x < s1.points().size() && rep.support.valid(); ++x) {
    for (std::size_t b = 0; b < s2.opens().size(); ++b) {
      if (s1(x, phi(b)).positive() != s2(f(x), b).positive()) {
        rep.support = Verdict<PairWitness>::fail({x, b});
        break;
      }
    }
  }
  return rep;
}

}  // namespace dialnet
