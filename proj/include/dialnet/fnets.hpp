#pragma once

// Fuzzy Petri nets and simulations between them.
//
// A net (E, B, pre, post) is held as two Dialectica objects on the same
// carriers: pre over the opposite lineale and post over the standard one.
// A simulation (f, F) with f : E -> E', F : B' -> B must satisfy
//
//     pre'(f(e), b')  <= pre(e, F(b'))
//     post'(f(e), b') >= post(e, F(b'))
//
// which is exactly "a Dialectica morphism in each fibre". Every net
// construction is the matching Dialectica construction applied fibre-wise.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dialnet/dialectica.hpp"
#include "dialnet/error.hpp"
#include "dialnet/finset.hpp"

namespace dialnet {

/// Lineale orientation of each fibre. Flipping both would give the
/// opposite reading of the simulation inequalities.
inline constexpr Orientation pre_orientation = Orientation::opposite;
inline constexpr Orientation post_orientation = Orientation::standard;

enum class Fibre { pre, post };

inline std::string_view to_string(Fibre f) { return f == Fibre::pre ? "pre" : "post"; }

class FuzzyNet {
public:
  FuzzyNet() : FuzzyNet(FinSet(), FinSet(), {}, {}) {}

  /// pre and post are row-major over events x conditions.
  FuzzyNet(FinSet events, FinSet conditions, std::vector<Degree> pre, std::vector<Degree> post)
      : pre_(events, conditions, std::move(pre), pre_orientation),
        post_(std::move(events), std::move(conditions), std::move(post), post_orientation) {}

  /// Reassembles a net from its two fibres; they must share carriers.
  static FuzzyNet from_fibres(DialObject pre, DialObject post) {
    if (pre.orientation() != pre_orientation || post.orientation() != post_orientation) {
      throw CarrierMismatch("net fibres have the wrong lineale orientation");
    }
    if (!(pre.left() == post.left()) || !(pre.right() == post.right())) {
      throw CarrierMismatch("net fibres do not share carriers");
    }
    FuzzyNet n;
    n.pre_ = std::move(pre);
    n.post_ = std::move(post);
    return n;
  }

  const FinSet& events() const { return pre_.left(); }
  const FinSet& conditions() const { return pre_.right(); }
  Degree pre(std::size_t e, std::size_t b) const { return pre_(e, b); }
  Degree post(std::size_t e, std::size_t b) const { return post_(e, b); }
  const DialObject& pre_fibre() const { return pre_; }
  const DialObject& post_fibre() const { return post_; }
  const DialObject& fibre(Fibre f) const { return f == Fibre::pre ? pre_ : post_; }

  /// All entries 0 or 1: an elementary net.
  bool is_crisp() const {
    auto binary = [](std::span<const Degree> m) {
      for (const Degree d : m) {
        if (!d.is_zero() && !d.is_one()) return false;
      }
      return true;
    };
    return binary(pre_.relation()) && binary(post_.relation());
  }

  friend bool operator==(const FuzzyNet& a, const FuzzyNet& b) {
    return a.pre_ == b.pre_ && a.post_ == b.post_;
  }

private:
  DialObject pre_, post_;
};

/// An elementary net from 0/1 matrices; other entries are rejected.
inline FuzzyNet crisp_net(FinSet events, FinSet conditions, const std::vector<int>& pre01,
                          const std::vector<int>& post01) {
  auto convert = [](const std::vector<int>& m, const char* which) {
    std::vector<Degree> out;
    out.reserve(m.size());
    for (const int v : m) {
      if (v != 0 && v != 1) {
        throw NonBinaryEntry(std::string(which) + " matrix has entry " + std::to_string(v));
      }
      out.push_back(v ? Degree::one() : Degree::zero());
    }
    return out;
  };
  return FuzzyNet(std::move(events), std::move(conditions), convert(pre01, "pre"), convert(post01, "post"));
}

/// (e, b', fibre) at which a simulation inequality fails.
struct SimulationWitness {
  std::size_t e = 0;
  std::size_t b = 0;
  Fibre fibre = Fibre::pre;
  friend bool operator==(const SimulationWitness&, const SimulationWitness&) = default;
};

/// Checks both fibres, the pre fibre first.
inline Verdict<SimulationWitness> check_simulation(const FuzzyNet& n, const FuzzyNet& m, const FinMap& f,
                                                   const FinMap& big_f) {
  for (const Fibre fib : {Fibre::pre, Fibre::post}) {
    const auto v = check_morphism(n.fibre(fib), m.fibre(fib), f, big_f);
    if (!v) return Verdict<SimulationWitness>::fail({v.witness().u, v.witness().y, fib});
  }
  return Verdict<SimulationWitness>::ok();
}

class NetMorphism {
public:
  /// Throws InvalidMorphism if either fibre inequality fails.
  static NetMorphism create(const FuzzyNet& source, const FuzzyNet& target, FinMap f, FinMap big_f) {
    const auto v = check_simulation(source, target, f, big_f);
    if (!v) {
      const auto& w = v.witness();
      throw InvalidMorphism("not a simulation: " + std::string(to_string(w.fibre)) + " inequality fails at (e=" +
                            source.events().element(w.e).key() + ", b'=" + target.conditions().element(w.b).key() +
                            ")");
    }
    return NetMorphism(DialMorphism::create(source.pre_fibre(), target.pre_fibre(), f, big_f),
                       DialMorphism::create(source.post_fibre(), target.post_fibre(), f, big_f));
  }

  static std::optional<NetMorphism> try_create(const FuzzyNet& source, const FuzzyNet& target, FinMap f,
                                               FinMap big_f) {
    if (!check_simulation(source, target, f, big_f)) return std::nullopt;
    return create(source, target, std::move(f), std::move(big_f));
  }

  /// Pairs two Dialectica morphisms with the same maps, one per fibre.
  static NetMorphism from_fibres(const DialMorphism& pre, const DialMorphism& post) {
    if (!(pre.f() == post.f()) || !(pre.g() == post.g())) {
      throw CarrierMismatch("fibre morphisms do not share their maps");
    }
    return create(FuzzyNet::from_fibres(pre.source(), post.source()),
                  FuzzyNet::from_fibres(pre.target(), post.target()), pre.f(), pre.g());
  }

  FuzzyNet source() const { return FuzzyNet::from_fibres(pre_.source(), post_.source()); }
  FuzzyNet target() const { return FuzzyNet::from_fibres(pre_.target(), post_.target()); }
  /// f : E -> E'.
  const FinMap& events_map() const { return pre_.f(); }
  /// F : B' -> B.
  const FinMap& conditions_map() const { return pre_.g(); }
  const DialMorphism& pre_morphism() const { return pre_; }
  const DialMorphism& post_morphism() const { return post_; }

  friend bool operator==(const NetMorphism& a, const NetMorphism& b) {
    return a.pre_ == b.pre_ && a.post_ == b.post_;
  }

private:
  NetMorphism(DialMorphism pre, DialMorphism post) : pre_(std::move(pre)), post_(std::move(post)) {}

  DialMorphism pre_, post_;
};

inline NetMorphism identity(const FuzzyNet& n) {
  return NetMorphism::from_fibres(identity(n.pre_fibre()), identity(n.post_fibre()));
}

/// `first` followed by `second`.
inline NetMorphism compose(const NetMorphism& first, const NetMorphism& second) {
  return NetMorphism::from_fibres(compose(first.pre_morphism(), second.pre_morphism()),
                                  compose(first.post_morphism(), second.post_morphism()));
}

// ---------------------------------------------------------------- nets

namespace detail {

template <class Op>
FuzzyNet fibrewise(const FuzzyNet& a, const FuzzyNet& b, Op&& op) {
  return FuzzyNet::from_fibres(op(a.pre_fibre(), b.pre_fibre()), op(a.post_fibre(), b.post_fibre()));
}

}  // namespace detail

/// (E x E', B^E' x B'^E); pre combines by max, post by min.
inline FuzzyNet net_tensor(const FuzzyNet& a, const FuzzyNet& b) {
  return detail::fibrewise(a, b, [](const DialObject& x, const DialObject& y) { return tensor(x, y); });
}

/// ({*}, {*}, pre = 0, post = 1).
inline FuzzyNet net_unit() {
  return FuzzyNet::from_fibres(unit_object(pre_orientation), unit_object(post_orientation));
}

/// (E'^E x B^B', E x B'); pre uses co_implies, post uses implies.
inline FuzzyNet net_hom(const FuzzyNet& a, const FuzzyNet& b) {
  return detail::fibrewise(a, b, [](const DialObject& x, const DialObject& y) { return internal_hom(x, y); });
}

/// (E x E', B + B') with case-split relations.
inline FuzzyNet net_product(const FuzzyNet& a, const FuzzyNet& b) {
  return detail::fibrewise(a, b, [](const DialObject& x, const DialObject& y) { return product(x, y); });
}

/// (E + E', B x B') with case-split relations.
inline FuzzyNet net_coproduct(const FuzzyNet& a, const FuzzyNet& b) {
  return detail::fibrewise(a, b, [](const DialObject& x, const DialObject& y) { return coproduct(x, y); });
}

// ---------------------------------------------------------------- morphisms

inline NetMorphism net_tensor(const NetMorphism& m1, const NetMorphism& m2) {
  return NetMorphism::from_fibres(tensor(m1.pre_morphism(), m2.pre_morphism()),
                                  tensor(m1.post_morphism(), m2.post_morphism()));
}

inline NetMorphism net_left_unitor(const FuzzyNet& n) {
  return NetMorphism::from_fibres(left_unitor(n.pre_fibre()), left_unitor(n.post_fibre()));
}
inline NetMorphism net_left_unitor_inverse(const FuzzyNet& n) {
  return NetMorphism::from_fibres(left_unitor_inverse(n.pre_fibre()), left_unitor_inverse(n.post_fibre()));
}
inline NetMorphism net_right_unitor(const FuzzyNet& n) {
  return NetMorphism::from_fibres(right_unitor(n.pre_fibre()), right_unitor(n.post_fibre()));
}
inline NetMorphism net_right_unitor_inverse(const FuzzyNet& n) {
  return NetMorphism::from_fibres(right_unitor_inverse(n.pre_fibre()), right_unitor_inverse(n.post_fibre()));
}
inline NetMorphism net_symmetry(const FuzzyNet& a, const FuzzyNet& b) {
  return NetMorphism::from_fibres(symmetry(a.pre_fibre(), b.pre_fibre()), symmetry(a.post_fibre(), b.post_fibre()));
}
inline NetMorphism net_associator(const FuzzyNet& a, const FuzzyNet& b, const FuzzyNet& c) {
  return NetMorphism::from_fibres(associator(a.pre_fibre(), b.pre_fibre(), c.pre_fibre()),
                                  associator(a.post_fibre(), b.post_fibre(), c.post_fibre()));
}
inline NetMorphism net_associator_inverse(const FuzzyNet& a, const FuzzyNet& b, const FuzzyNet& c) {
  return NetMorphism::from_fibres(associator_inverse(a.pre_fibre(), b.pre_fibre(), c.pre_fibre()),
                                  associator_inverse(a.post_fibre(), b.post_fibre(), c.post_fibre()));
}

inline NetMorphism net_projection_first(const FuzzyNet& a, const FuzzyNet& b) {
  return NetMorphism::from_fibres(projection_first(a.pre_fibre(), b.pre_fibre()),
                                  projection_first(a.post_fibre(), b.post_fibre()));
}
inline NetMorphism net_projection_second(const FuzzyNet& a, const FuzzyNet& b) {
  return NetMorphism::from_fibres(projection_second(a.pre_fibre(), b.pre_fibre()),
                                  projection_second(a.post_fibre(), b.post_fibre()));
}
inline NetMorphism net_injection_first(const FuzzyNet& a, const FuzzyNet& b) {
  return NetMorphism::from_fibres(injection_first(a.pre_fibre(), b.pre_fibre()),
                                  injection_first(a.post_fibre(), b.post_fibre()));
}
inline NetMorphism net_injection_second(const FuzzyNet& a, const FuzzyNet& b) {
  return NetMorphism::from_fibres(injection_second(a.pre_fibre(), b.pre_fibre()),
                                  injection_second(a.post_fibre(), b.post_fibre()));
}
inline NetMorphism net_pairing(const NetMorphism& m1, const NetMorphism& m2) {
  return NetMorphism::from_fibres(pairing(m1.pre_morphism(), m2.pre_morphism()),
                                  pairing(m1.post_morphism(), m2.post_morphism()));
}
inline NetMorphism net_copairing(const NetMorphism& m1, const NetMorphism& m2) {
  return NetMorphism::from_fibres(copairing(m1.pre_morphism(), m2.pre_morphism()),
                                  copairing(m1.post_morphism(), m2.post_morphism()));
}

/// Hom(N (x) N', N'') -> Hom(N, N' -o N''), the Dialectica curry in each fibre.
inline NetMorphism net_curry(const FuzzyNet& a, const FuzzyNet& b, const NetMorphism& m) {
  return NetMorphism::from_fibres(curry(a.pre_fibre(), b.pre_fibre(), m.pre_morphism()),
                                  curry(a.post_fibre(), b.post_fibre(), m.post_morphism()));
}

/// Hom(N, N' -o N'') -> Hom(N (x) N', N''), inverse to net_curry.
inline NetMorphism net_uncurry(const FuzzyNet& b, const FuzzyNet& c, const NetMorphism& n) {
  return NetMorphism::from_fibres(uncurry(b.pre_fibre(), c.pre_fibre(), n.pre_morphism()),
                                  uncurry(b.post_fibre(), c.post_fibre(), n.post_morphism()));
}

// ---------------------------------------------------------------- enumeration

/// Visits every simulation N -> N' as raw (f, F) tables, in lexicographic
/// order. fn returns false to stop.
template <class Fn>
void for_each_simulation_table(const FuzzyNet& n, const FuzzyNet& m, Fn&& fn) {
  const std::size_t ne = n.events().size(), ne2 = m.events().size();
  const std::size_t nb = n.conditions().size(), nb2 = m.conditions().size();
  std::vector<std::vector<std::size_t>> allowed(nb2);
  std::vector<std::size_t> pos(nb2), big_f(nb2);
  for_each_table(ne, ne2, [&](std::span<const std::size_t> f) {
    for (std::size_t b2 = 0; b2 < nb2; ++b2) {
      allowed[b2].clear();
      for (std::size_t b = 0; b < nb; ++b) {
        bool ok = true;
        for (std::size_t e = 0; e < ne && ok; ++e) {
          ok = m.pre(f[e], b2) <= n.pre(e, b) && m.post(f[e], b2) >= n.post(e, b);
        }
        if (ok) allowed[b2].push_back(b);
      }
      if (allowed[b2].empty()) return true;
    }
    std::fill(pos.begin(), pos.end(), 0);
    while (true) {
      for (std::size_t k = 0; k < nb2; ++k) big_f[k] = allowed[k][pos[k]];
      if (!fn(f, std::span<const std::size_t>(big_f))) return false;
      std::size_t k = nb2;
      while (k > 0) {
        --k;
        if (++pos[k] < allowed[k].size()) break;
        pos[k] = 0;
        if (k == 0) return true;
      }
      if (nb2 == 0) return true;
    }
  });
}

/// |Hom(N, N')| without materializing the simulations.
inline std::size_t count_simulations(const FuzzyNet& n, const FuzzyNet& m) {
  const std::size_t ne = n.events().size(), ne2 = m.events().size();
  const std::size_t nb = n.conditions().size(), nb2 = m.conditions().size();
  std::size_t total = 0;
  for_each_table(ne, ne2, [&](std::span<const std::size_t> f) {
    std::size_t count = 1;
    for (std::size_t b2 = 0; b2 < nb2 && count != 0; ++b2) {
      std::size_t c = 0;
      for (std::size_t b = 0; b < nb; ++b) {
        bool ok = true;
        for (std::size_t e = 0; e < ne && ok; ++e) {
          ok = m.pre(f[e], b2) <= n.pre(e, b) && m.post(f[e], b2) >= n.post(e, b);
        }
        c += ok;
      }
      count *= c;
    }
    total += count;
  });
  return total;
}

inline std::vector<NetMorphism> enumerate_simulations(const FuzzyNet& n, const FuzzyNet& m) {
  const std::size_t cap = limits().cap.load();
  if (!candidate_count(n.post_fibre(), m.post_fibre(), cap)) {
    throw ResourceLimit("simulation candidate space exceeds the cap of " + std::to_string(cap));
  }
  std::vector<NetMorphism> out;
  for_each_simulation_table(n, m, [&](std::span<const std::size_t> f, std::span<const std::size_t> big_f) {
    out.push_back(NetMorphism::create(n, m, FinMap(n.events(), m.events(), {f.begin(), f.end()}),
                                      FinMap(m.conditions(), n.conditions(), {big_f.begin(), big_f.end()})));
    return true;
  });
  return out;
}

}  // namespace dialnet
