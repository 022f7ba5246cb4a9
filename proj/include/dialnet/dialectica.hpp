#pragma once

// The Dialectica category over the unit-interval lineale.
//
// An object (U, X, alpha) is a degree-valued relation between two finite
// sets. A morphism (U, X, alpha) -> (V, Y, beta) is a pair of maps
// f : U -> V, g : Y -> X with alpha(u, g(y)) <= beta(f(u), y) for all u, y,
// the order being that of the objects' lineale orientation.
//
// Everything here is parametric in the orientation so the same code serves
// both fibres of a fuzzy net.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dialnet/degree.hpp"
#include "dialnet/error.hpp"
#include "dialnet/finset.hpp"

namespace dialnet {

/// Outcome of a property check: valid, or the first counterexample found.
template <class Witness>
class Verdict {
public:
  static Verdict ok() { return Verdict(); }
  static Verdict fail(Witness w) {
    Verdict v;
    v.witness_ = std::move(w);
    return v;
  }

  bool valid() const { return !witness_.has_value(); }
  explicit operator bool() const { return valid(); }
  const Witness& witness() const { return *witness_; }
  const std::optional<Witness>& maybe_witness() const { return witness_; }

private:
  std::optional<Witness> witness_;
};

/// A pair (u, y) at which the morphism inequality fails.
struct PairWitness {
  std::size_t u = 0;
  std::size_t y = 0;
  friend bool operator==(const PairWitness&, const PairWitness&) = default;
};

enum class Construction { none, tensor, hom, product, coproduct };

class DialObject {
public:
  DialObject() : DialObject(FinSet(), FinSet(), {}) {}

  /// relation is row-major: entry u * |X| + x.
  DialObject(FinSet left, FinSet right, std::vector<Degree> relation,
             Orientation orientation = Orientation::standard) {
    if (relation.size() != left.size() * right.size()) {
      throw CarrierMismatch("relation has " + std::to_string(relation.size()) +
                            " entries, expected " + std::to_string(left.size() * right.size()));
    }
    auto impl = std::make_shared<Impl>();
    impl->left = std::move(left);
    impl->right = std::move(right);
    impl->relation = std::move(relation);
    impl->orientation = orientation;
    impl_ = std::move(impl);
  }

  template <class Fn>
  static DialObject tabulate(FinSet left, FinSet right, Orientation orientation, Fn&& fn) {
    std::vector<Degree> rel;
    rel.reserve(left.size() * right.size());
    for (std::size_t u = 0; u < left.size(); ++u) {
      for (std::size_t x = 0; x < right.size(); ++x) rel.push_back(fn(u, x));
    }
    return DialObject(std::move(left), std::move(right), std::move(rel), orientation);
  }

  const FinSet& left() const { return impl_->left; }
  const FinSet& right() const { return impl_->right; }
  Orientation orientation() const { return impl_->orientation; }
  Lineale lineale() const { return Lineale{impl_->orientation}; }
  std::span<const Degree> relation() const { return impl_->relation; }

  Degree operator()(std::size_t u, std::size_t x) const {
    return impl_->relation[u * impl_->right.size() + x];
  }
  Degree at(const Element& u, const Element& x) const {
    return (*this)(left().require_index(u), right().require_index(x));
  }

  /// How this object was built, and from which factors (for curry/uncurry).
  Construction construction() const { return impl_->construction; }
  const DialObject& factor(std::size_t k) const {
    if (impl_->construction == Construction::none) {
      throw EndpointMismatch("object was not built by a binary construction");
    }
    return k == 0 ? *impl_->first : *impl_->second;
  }

  /// Same object, same relation, same orientation (provenance is ignored).
  friend bool operator==(const DialObject& a, const DialObject& b) {
    if (a.impl_ == b.impl_) return true;
    return a.impl_->orientation == b.impl_->orientation && a.impl_->relation == b.impl_->relation &&
           a.impl_->left == b.impl_->left && a.impl_->right == b.impl_->right;
  }

  DialObject with_provenance(Construction c, const DialObject& a, const DialObject& b) const {
    auto impl = std::make_shared<Impl>(*impl_);
    impl->construction = c;
    impl->first = std::make_shared<DialObject>(a);
    impl->second = std::make_shared<DialObject>(b);
    DialObject out;
    out.impl_ = std::move(impl);
    return out;
  }

private:
  struct Impl {
    FinSet left, right;
    std::vector<Degree> relation;
    Orientation orientation = Orientation::standard;
    Construction construction = Construction::none;
    std::shared_ptr<const DialObject> first, second;
  };

  std::shared_ptr<const Impl> impl_;
};

namespace detail {

/// The morphism inequality on raw index tables, no carrier checks.
inline std::optional<PairWitness> first_violation(const DialObject& a, const DialObject& b,
                                                  std::span<const std::size_t> f,
                                                  std::span<const std::size_t> g) {
  const Lineale lin = a.lineale();
  const std::size_t nu = a.left().size();
  const std::size_t ny = b.right().size();
  for (std::size_t u = 0; u < nu; ++u) {
    for (std::size_t y = 0; y < ny; ++y) {
      if (!lin.le(a(u, g[y]), b(f[u], y))) return PairWitness{u, y};
    }
  }
  return std::nullopt;
}

inline void require_same_orientation(const DialObject& a, const DialObject& b) {
  if (a.orientation() != b.orientation()) {
    throw CarrierMismatch("objects live over different lineale orientations");
  }
}

inline std::string describe(const DialObject& a, const DialObject& b, const PairWitness& w) {
  const Element u = a.left().element(w.u);
  const Element y = b.right().element(w.y);
  return "inequality fails at (u=" + u.key() + ", y=" + y.key() + ")";
}

}  // namespace detail

/// Checks that f : U -> V and g : Y -> X satisfy alpha(u, g(y)) <= beta(f(u), y)
/// everywhere. Returns the lexicographically first violating (u, y).
inline Verdict<PairWitness> check_morphism(const DialObject& a, const DialObject& b,
                                           const FinMap& f, const FinMap& g) {
  detail::require_same_orientation(a, b);
  if (!(f.domain() == a.left()) || !(f.codomain() == b.left())) {
    throw CarrierMismatch("forward map must go from the source's left carrier to the target's");
  }
  if (!(g.domain() == b.right()) || !(g.codomain() == a.right())) {
    throw CarrierMismatch("backward map must go from the target's right carrier to the source's");
  }
  if (auto w = detail::first_violation(a, b, f.table(), g.table())) {
    return Verdict<PairWitness>::fail(*w);
  }
  return Verdict<PairWitness>::ok();
}

/// A map pair known to satisfy the morphism inequality.
class DialMorphism {
public:
  /// Throws InvalidMorphism (naming the first violating pair) if the pair fails.
  static DialMorphism create(DialObject source, DialObject target, FinMap f, FinMap g) {
    auto verdict = check_morphism(source, target, f, g);
    if (!verdict) {
      throw InvalidMorphism("not a morphism: " + detail::describe(source, target, verdict.witness()));
    }
    return DialMorphism(std::move(source), std::move(target), std::move(f), std::move(g));
  }

  static std::optional<DialMorphism> try_create(DialObject source, DialObject target, FinMap f,
                                                FinMap g) {
    if (!check_morphism(source, target, f, g)) return std::nullopt;
    return DialMorphism(std::move(source), std::move(target), std::move(f), std::move(g));
  }

  const DialObject& source() const { return source_; }
  const DialObject& target() const { return target_; }
  /// Forward map on left carriers.
  const FinMap& f() const { return f_; }
  /// Backward map on right carriers.
  const FinMap& g() const { return g_; }

  friend bool operator==(const DialMorphism& a, const DialMorphism& b) {
    return a.f_ == b.f_ && a.g_ == b.g_ && a.source_ == b.source_ && a.target_ == b.target_;
  }

private:
  DialMorphism(DialObject source, DialObject target, FinMap f, FinMap g)
      : source_(std::move(source)), target_(std::move(target)), f_(std::move(f)), g_(std::move(g)) {}

  DialObject source_, target_;
  FinMap f_, g_;
};

inline DialMorphism identity(const DialObject& a) {
  return DialMorphism::create(a, a, identity_map(a.left()), identity_map(a.right()));
}

/// `first` followed by `second`: (f' . f, g . g'). Validity of the composite
/// is re-checked, never assumed.
inline DialMorphism compose(const DialMorphism& first, const DialMorphism& second) {
  if (!(first.target() == second.source())) {
    throw EndpointMismatch("cannot compose: target of the first morphism is not the source of the second");
  }
  return DialMorphism::create(first.source(), second.target(), compose_map(second.f(), first.f()),
                              compose_map(first.g(), second.g()));
}

// ---------------------------------------------------------------- objects

inline DialObject unit_object(Orientation orientation = Orientation::standard) {
  const Lineale lin{orientation};
  return DialObject(FinSet::singleton(), FinSet::singleton(), {lin.unit()}, orientation);
}

/// A (x) B = (U x V, X^V x Y^U), relating (u,v) to (F,G) by
/// monoid(alpha(u, F(v)), beta(v, G(u))).
inline DialObject tensor(const DialObject& a, const DialObject& b) {
  detail::require_same_orientation(a, b);
  const FinSet xv = exponential(a.right(), b.left());
  const FinSet yu = exponential(b.right(), a.left());
  const FinSet right = product(xv, yu);
  const FinSet left = product(a.left(), b.left());
  const Lineale lin = a.lineale();
  const std::size_t nv = b.left().size();
  return DialObject::tabulate(left, right, a.orientation(),
                              [&](std::size_t uv, std::size_t r) {
                                const std::size_t u = uv / nv, v = uv % nv;
                                const auto [fi, gi] = right.split_pair(r);
                                return lin.monoid(a(u, xv.apply_index(fi, v)),
                                                  b(v, yu.apply_index(gi, u)));
                              })
      .with_provenance(Construction::tensor, a, b);
}

namespace detail {

inline Degree hom_residual(const Lineale& lin, Degree a, Degree b) {
#ifdef DIALNET_MUTATE_HOM
  // Deliberately wrong: used only by the mutation build of the law suite.
  return lin.monoid(a, b);
#else
  return lin.residual(a, b);
#endif
}

}  // namespace detail

/// A -o B = (V^U x X^Y, U x Y), relating (f,F) to (u,y) by
/// residual(alpha(u, F(y)), beta(f(u), y)).
inline DialObject internal_hom(const DialObject& a, const DialObject& b) {
  detail::require_same_orientation(a, b);
  const FinSet vu = exponential(b.left(), a.left());
  const FinSet xy = exponential(a.right(), b.right());
  const FinSet left = product(vu, xy);
  const FinSet right = product(a.left(), b.right());
  const Lineale lin = a.lineale();
  const std::size_t ny = b.right().size();
  return DialObject::tabulate(left, right, a.orientation(),
                              [&](std::size_t l, std::size_t uy) {
                                const auto [fi, gi] = left.split_pair(l);
                                const std::size_t u = uy / ny, y = uy % ny;
                                return detail::hom_residual(lin, a(u, xy.apply_index(gi, y)),
                                                            b(vu.apply_index(fi, u), y));
                              })
      .with_provenance(Construction::hom, a, b);
}

/// A x B = (U x V, X + Y) with the case-split relation.
inline DialObject product(const DialObject& a, const DialObject& b) {
  detail::require_same_orientation(a, b);
  const FinSet left = product(a.left(), b.left());
  const FinSet right = coproduct(a.right(), b.right());
  const std::size_t nv = b.left().size();
  return DialObject::tabulate(left, right, a.orientation(),
                              [&](std::size_t uv, std::size_t s) {
                                const auto [is_left, k] = right.split_sum(s);
                                return is_left ? a(uv / nv, k) : b(uv % nv, k);
                              })
      .with_provenance(Construction::product, a, b);
}

/// A + B = (U + V, X x Y) with the case-split relation.
inline DialObject coproduct(const DialObject& a, const DialObject& b) {
  detail::require_same_orientation(a, b);
  const FinSet left = coproduct(a.left(), b.left());
  const FinSet right = product(a.right(), b.right());
  const std::size_t ny = b.right().size();
  return DialObject::tabulate(left, right, a.orientation(),
                              [&](std::size_t s, std::size_t xy) {
                                const auto [is_left, k] = left.split_sum(s);
                                return is_left ? a(k, xy / ny) : b(k, xy % ny);
                              })
      .with_provenance(Construction::coproduct, a, b);
}

// ---------------------------------------------------------------- morphisms

/// Functorial action of the tensor: (f1 x f2, (F', G') |-> (g1 . F' . f2, g2 . G' . f1)).
inline DialMorphism tensor(const DialMorphism& m1, const DialMorphism& m2) {
  const DialObject src = tensor(m1.source(), m2.source());
  const DialObject tgt = tensor(m1.target(), m2.target());
  const std::size_t nv = m2.source().left().size();
  const std::size_t nv2 = m2.target().left().size();
  const FinMap f = FinMap::tabulate(src.left(), tgt.left(), [&](std::size_t uv) {
    return m1.f()(uv / nv) * nv2 + m2.f()(uv % nv);
  });
  // Right carriers: X^V x Y^U (source) and X'^V' x Y'^U' (target).
  const FinSet& sr = src.right();
  const FinSet& tr = tgt.right();
  const FinSet sxv = sr.left(), syu = sr.right();
  const FinSet txv = tr.left(), tyu = tr.right();
  const std::size_t nu = m1.source().left().size();
  std::vector<std::size_t> fv(nv), gu(nu);
  const FinMap g = FinMap::tabulate(tr, sr, [&](std::size_t r) {
    const auto [fi, gi] = tr.split_pair(r);
    for (std::size_t v = 0; v < nv; ++v) fv[v] = m1.g()(txv.apply_index(fi, m2.f()(v)));
    for (std::size_t u = 0; u < nu; ++u) gu[u] = m2.g()(tyu.apply_index(gi, m1.f()(u)));
    return sr.pair_index(sxv.map_index(fv), syu.map_index(gu));
  });
  return DialMorphism::create(src, tgt, f, g);
}

/// I (x) A -> A.
inline DialMorphism left_unitor(const DialObject& a) {
  const DialObject src = tensor(unit_object(a.orientation()), a);
  // src right carrier: {*}^U x X^{*}; the second component is x-valued.
  const FinSet& r = src.right();
  const FinMap f = FinMap::tabulate(src.left(), a.left(), [](std::size_t su) { return su; });
  const FinMap g = FinMap::tabulate(a.right(), r, [&](std::size_t x) { return r.pair_index(0, x); });
  return DialMorphism::create(src, a, f, g);
}

/// A -> I (x) A.
inline DialMorphism left_unitor_inverse(const DialObject& a) {
  const DialObject tgt = tensor(unit_object(a.orientation()), a);
  const FinSet& r = tgt.right();
  const FinMap f = FinMap::tabulate(a.left(), tgt.left(), [](std::size_t u) { return u; });
  const FinMap g = FinMap::tabulate(r, a.right(), [&](std::size_t i) { return r.split_pair(i).second; });
  return DialMorphism::create(a, tgt, f, g);
}

/// A (x) I -> A.
inline DialMorphism right_unitor(const DialObject& a) {
  const DialObject src = tensor(a, unit_object(a.orientation()));
  // src right carrier: X^{*} x {*}^U; X^{*} is indexed like X.
  const FinSet& r = src.right();
  const FinMap f = FinMap::tabulate(src.left(), a.left(), [](std::size_t us) { return us; });
  const FinMap g = FinMap::tabulate(a.right(), r, [&](std::size_t x) { return r.pair_index(x, 0); });
  return DialMorphism::create(src, a, f, g);
}

/// A -> A (x) I.
inline DialMorphism right_unitor_inverse(const DialObject& a) {
  const DialObject tgt = tensor(a, unit_object(a.orientation()));
  const FinSet& r = tgt.right();
  const FinMap f = FinMap::tabulate(a.left(), tgt.left(), [](std::size_t u) { return u; });
  const FinMap g = FinMap::tabulate(r, a.right(), [&](std::size_t i) { return r.split_pair(i).first; });
  return DialMorphism::create(a, tgt, f, g);
}

/// A (x) B -> B (x) A.
inline DialMorphism symmetry(const DialObject& a, const DialObject& b) {
  const DialObject src = tensor(a, b);
  const DialObject tgt = tensor(b, a);
  const std::size_t nu = a.left().size(), nv = b.left().size();
  const FinMap f = FinMap::tabulate(src.left(), tgt.left(), [&](std::size_t uv) {
    return (uv % nv) * nu + uv / nv;
  });
  // tgt right = Y^U x X^V, src right = X^V x Y^U.
  const FinMap g = FinMap::tabulate(tgt.right(), src.right(), [&](std::size_t r) {
    const auto [gi, fi] = tgt.right().split_pair(r);
    return src.right().pair_index(fi, gi);
  });
  return DialMorphism::create(src, tgt, f, g);
}

namespace detail {

/// Map pair for (A (x) B) (x) C -> A (x) (B (x) C), or its inverse.
inline DialMorphism associator_impl(const DialObject& a, const DialObject& b, const DialObject& c,
                                    bool forward) {
  const DialObject lhs = tensor(tensor(a, b), c);  // ((U x V) x W, (X^V x Y^U)^W x Z^(U x V))
  const DialObject rhs = tensor(a, tensor(b, c));  // (U x (V x W), X^(V x W) x (Y^W x Z^V)^U)
  const std::size_t nu = a.left().size(), nv = b.left().size(), nw = c.left().size();

  const FinSet& lr = lhs.right();
  const FinSet k_set = lr.left();   // (X^V x Y^U)^W
  const FinSet l_set = lr.right();  // Z^(U x V)
  const FinSet xv_yu = k_set.left();
  const FinSet xv = xv_yu.left(), yu = xv_yu.right();

  const FinSet& rr = rhs.right();
  const FinSet f_set = rr.left();   // X^(V x W)
  const FinSet h_set = rr.right();  // (Y^W x Z^V)^U
  const FinSet yw_zv = h_set.left();
  const FinSet yw = yw_zv.left(), zv = yw_zv.right();

  if (forward) {
    const FinMap f = FinMap::tabulate(lhs.left(), rhs.left(), [&](std::size_t i) {
      const std::size_t uv = i / nw, w = i % nw;
      const std::size_t u = uv / nv, v = uv % nv;
      return u * (nv * nw) + (v * nw + w);
    });
    std::vector<std::size_t> kw(nw), luv(nu * nv), xvals(nv), yvals(nu);
    const FinMap g = FinMap::tabulate(rr, lr, [&](std::size_t r) {
      const auto [fi, hi] = rr.split_pair(r);
      for (std::size_t w = 0; w < nw; ++w) {
        for (std::size_t v = 0; v < nv; ++v) xvals[v] = f_set.apply_index(fi, v * nw + w);
        for (std::size_t u = 0; u < nu; ++u) {
          const auto [ywi, zvi] = yw_zv.split_pair(h_set.apply_index(hi, u));
          (void)zvi;
          yvals[u] = yw.apply_index(ywi, w);
        }
        kw[w] = xv_yu.pair_index(xv.map_index(xvals), yu.map_index(yvals));
      }
      for (std::size_t u = 0; u < nu; ++u) {
        const auto [ywi, zvi] = yw_zv.split_pair(h_set.apply_index(hi, u));
        (void)ywi;
        for (std::size_t v = 0; v < nv; ++v) luv[u * nv + v] = zv.apply_index(zvi, v);
      }
      return lr.pair_index(k_set.map_index(kw), l_set.map_index(luv));
    });
    return DialMorphism::create(lhs, rhs, f, g);
  }

  const FinMap f = FinMap::tabulate(rhs.left(), lhs.left(), [&](std::size_t i) {
    const std::size_t u = i / (nv * nw), vw = i % (nv * nw);
    const std::size_t v = vw / nw, w = vw % nw;
    return (u * nv + v) * nw + w;
  });
  std::vector<std::size_t> fvw(nv * nw), hu(nu), ywv(nw), zvv(nv);
  const FinMap g = FinMap::tabulate(lr, rr, [&](std::size_t r) {
    const auto [ki, li] = lr.split_pair(r);
    for (std::size_t w = 0; w < nw; ++w) {
      const auto [xvi, yui] = xv_yu.split_pair(k_set.apply_index(ki, w));
      (void)yui;
      for (std::size_t v = 0; v < nv; ++v) fvw[v * nw + w] = xv.apply_index(xvi, v);
    }
    for (std::size_t u = 0; u < nu; ++u) {
      for (std::size_t w = 0; w < nw; ++w) {
        const auto [xvi, yui] = xv_yu.split_pair(k_set.apply_index(ki, w));
        (void)xvi;
        ywv[w] = yu.apply_index(yui, u);
      }
      for (std::size_t v = 0; v < nv; ++v) zvv[v] = l_set.apply_index(li, u * nv + v);
      hu[u] = yw_zv.pair_index(yw.map_index(ywv), zv.map_index(zvv));
    }
    return rr.pair_index(f_set.map_index(fvw), h_set.map_index(hu));
  });
  return DialMorphism::create(rhs, lhs, f, g);
}

}  // namespace detail

/// (A (x) B) (x) C -> A (x) (B (x) C).
inline DialMorphism associator(const DialObject& a, const DialObject& b, const DialObject& c) {
  return detail::associator_impl(a, b, c, true);
}

/// A (x) (B (x) C) -> (A (x) B) (x) C.
inline DialMorphism associator_inverse(const DialObject& a, const DialObject& b, const DialObject& c) {
  return detail::associator_impl(a, b, c, false);
}

/// A x B -> A: (fst, inl).
inline DialMorphism projection_first(const DialObject& a, const DialObject& b) {
  const DialObject p = product(a, b);
  const std::size_t nv = b.left().size();
  return DialMorphism::create(
      p, a, FinMap::tabulate(p.left(), a.left(), [&](std::size_t uv) { return uv / nv; }),
      FinMap::tabulate(a.right(), p.right(), [&](std::size_t x) { return p.right().inl_index(x); }));
}

/// A x B -> B: (snd, inr).
inline DialMorphism projection_second(const DialObject& a, const DialObject& b) {
  const DialObject p = product(a, b);
  const std::size_t nv = b.left().size();
  return DialMorphism::create(
      p, b, FinMap::tabulate(p.left(), b.left(), [&](std::size_t uv) { return uv % nv; }),
      FinMap::tabulate(b.right(), p.right(), [&](std::size_t y) { return p.right().inr_index(y); }));
}

/// <m1, m2> : C -> A x B for m1 : C -> A, m2 : C -> B.
inline DialMorphism pairing(const DialMorphism& m1, const DialMorphism& m2) {
  if (!(m1.source() == m2.source())) throw EndpointMismatch("pairing needs a common source");
  const DialObject& c = m1.source();
  const DialObject p = product(m1.target(), m2.target());
  const std::size_t nv = m2.target().left().size();
  return DialMorphism::create(
      c, p, FinMap::tabulate(c.left(), p.left(), [&](std::size_t w) { return m1.f()(w) * nv + m2.f()(w); }),
      FinMap::tabulate(p.right(), c.right(), [&](std::size_t s) {
        const auto [is_left, k] = p.right().split_sum(s);
        return is_left ? m1.g()(k) : m2.g()(k);
      }));
}

/// A -> A + B: (inl, fst).
inline DialMorphism injection_first(const DialObject& a, const DialObject& b) {
  const DialObject s = coproduct(a, b);
  const std::size_t ny = b.right().size();
  return DialMorphism::create(
      a, s, FinMap::tabulate(a.left(), s.left(), [&](std::size_t u) { return s.left().inl_index(u); }),
      FinMap::tabulate(s.right(), a.right(), [&](std::size_t xy) { return xy / ny; }));
}

/// B -> A + B: (inr, snd).
inline DialMorphism injection_second(const DialObject& a, const DialObject& b) {
  const DialObject s = coproduct(a, b);
  const std::size_t ny = b.right().size();
  return DialMorphism::create(
      b, s, FinMap::tabulate(b.left(), s.left(), [&](std::size_t v) { return s.left().inr_index(v); }),
      FinMap::tabulate(s.right(), b.right(), [&](std::size_t xy) { return xy % ny; }));
}

/// [m1, m2] : A + B -> C for m1 : A -> C, m2 : B -> C.
inline DialMorphism copairing(const DialMorphism& m1, const DialMorphism& m2) {
  if (!(m1.target() == m2.target())) throw EndpointMismatch("copairing needs a common target");
  const DialObject& c = m1.target();
  const DialObject s = coproduct(m1.source(), m2.source());
  const std::size_t ny = m2.source().right().size();
  return DialMorphism::create(
      s, c, FinMap::tabulate(s.left(), c.left(), [&](std::size_t i) {
        const auto [is_left, k] = s.left().split_sum(i);
        return is_left ? m1.f()(k) : m2.f()(k);
      }),
      FinMap::tabulate(c.right(), s.right(), [&](std::size_t z) { return m1.g()(z) * ny + m2.g()(z); }));
}

// ---------------------------------------------------------------- closure

/// Hom(A (x) B, C) -> Hom(A, B -o C). With g(z) = (gX(z), gY(z)) the result is
/// f1(u) = (v |-> f(u,v), z |-> gY(z)(u)) and g1(v,z) = gX(z)(v).
inline DialMorphism curry(const DialObject& a, const DialObject& b, const DialMorphism& m) {
  const DialObject ab = tensor(a, b);
  if (!(m.source() == ab)) throw EndpointMismatch("curry: source is not the tensor of the given objects");
  const DialObject& c = m.target();
  const DialObject hom = internal_hom(b, c);
  const std::size_t nv = b.left().size(), nz = c.right().size();

  const FinSet& r = ab.right();
  const FinSet xv = r.left(), yu = r.right();
  const FinSet& h = hom.left();
  const FinSet wv = h.left(), yz = h.right();

  std::vector<std::size_t> fvals(nv), gvals(nz);
  const FinMap f1 = FinMap::tabulate(a.left(), h, [&](std::size_t u) {
    for (std::size_t v = 0; v < nv; ++v) fvals[v] = m.f()(u * nv + v);
    for (std::size_t z = 0; z < nz; ++z) gvals[z] = yu.apply_index(r.split_pair(m.g()(z)).second, u);
    return h.pair_index(wv.map_index(fvals), yz.map_index(gvals));
  });
  const FinMap g1 = FinMap::tabulate(hom.right(), a.right(), [&](std::size_t vz) {
    const std::size_t v = vz / nz, z = vz % nz;
    return xv.apply_index(r.split_pair(m.g()(z)).first, v);
  });
  return DialMorphism::create(a, hom, f1, g1);
}

/// Uses the provenance of the source; throws EndpointMismatch if it is not a tensor.
inline DialMorphism curry(const DialMorphism& m) {
  if (m.source().construction() != Construction::tensor) {
    throw EndpointMismatch("curry: source is not a tensor product");
  }
  return curry(m.source().factor(0), m.source().factor(1), m);
}

/// Hom(A, B -o C) -> Hom(A (x) B, C), inverse to curry.
inline DialMorphism uncurry(const DialObject& b, const DialObject& c, const DialMorphism& n) {
  const DialObject hom = internal_hom(b, c);
  if (!(n.target() == hom)) throw EndpointMismatch("uncurry: target is not the internal hom of the given objects");
  const DialObject& a = n.source();
  const DialObject ab = tensor(a, b);
  const std::size_t nu = a.left().size(), nv = b.left().size();

  const FinSet& r = ab.right();
  const FinSet xv = r.left(), yu = r.right();
  const FinSet& h = hom.left();
  const FinSet wv = h.left(), yz = h.right();
  const std::size_t nz = c.right().size();

  const FinMap f = FinMap::tabulate(ab.left(), c.left(), [&](std::size_t uv) {
    return wv.apply_index(h.split_pair(n.f()(uv / nv)).first, uv % nv);
  });
  std::vector<std::size_t> xvals(nv), yvals(nu);
  const FinMap g = FinMap::tabulate(c.right(), r, [&](std::size_t z) {
    for (std::size_t v = 0; v < nv; ++v) xvals[v] = n.g()(v * nz + z);
    for (std::size_t u = 0; u < nu; ++u) yvals[u] = yz.apply_index(h.split_pair(n.f()(u)).second, z);
    return r.pair_index(xv.map_index(xvals), yu.map_index(yvals));
  });
  return DialMorphism::create(ab, c, f, g);
}

/// Uses the provenance of the target; throws EndpointMismatch if it is not a hom.
inline DialMorphism uncurry(const DialMorphism& n) {
  if (n.target().construction() != Construction::hom) {
    throw EndpointMismatch("uncurry: target is not an internal hom");
  }
  return uncurry(n.target().factor(0), n.target().factor(1), n);
}

// ---------------------------------------------------------------- enumeration

/// Number of candidate map pairs |V|^|U| * |X|^|Y|, or nullopt past `limit`.
inline std::optional<std::size_t> candidate_count(const DialObject& a, const DialObject& b,
                                                  std::size_t limit) {
  std::size_t n = 1;
  auto mul_pow = [&](std::size_t base, std::size_t exp) {
    for (std::size_t k = 0; k < exp; ++k) {
      if (base == 0) {
        n = 0;
        return true;
      }
      if (n > limit / base) return false;
      n *= base;
    }
    return true;
  };
  if (!mul_pow(b.left().size(), a.left().size())) return std::nullopt;
  if (!mul_pow(a.right().size(), b.right().size())) return std::nullopt;
  if (n > limit) return std::nullopt;
  return n;
}

/// Visits every valid morphism A -> B as raw (f, g) tables in lexicographic
/// order of (f, g). For each f the admissible values of g(y) are computed
/// per y, so only valid pairs are generated. fn returns false to stop.
template <class Fn>
void for_each_morphism_table(const DialObject& a, const DialObject& b, Fn&& fn) {
  detail::require_same_orientation(a, b);
  const Lineale lin = a.lineale();
  const std::size_t nu = a.left().size(), nv = b.left().size();
  const std::size_t nx = a.right().size(), ny = b.right().size();
  std::vector<std::vector<std::size_t>> allowed(ny);
  std::vector<std::size_t> pos(ny), g(ny);
  bool stop = false;
  for_each_table(nu, nv, [&](std::span<const std::size_t> f) {
    for (std::size_t y = 0; y < ny; ++y) {
      allowed[y].clear();
      for (std::size_t x = 0; x < nx; ++x) {
        bool ok = true;
        for (std::size_t u = 0; u < nu && ok; ++u) ok = lin.le(a(u, x), b(f[u], y));
        if (ok) allowed[y].push_back(x);
      }
      if (allowed[y].empty()) return true;
    }
    std::fill(pos.begin(), pos.end(), 0);
    while (true) {
      for (std::size_t y = 0; y < ny; ++y) g[y] = allowed[y][pos[y]];
      if (!fn(f, std::span<const std::size_t>(g))) {
        stop = true;
        return false;
      }
      std::size_t k = ny;
      while (k > 0) {
        --k;
        if (++pos[k] < allowed[k].size()) break;
        pos[k] = 0;
        if (k == 0) return true;
      }
      if (ny == 0) return true;
    }
  });
  (void)stop;
}

/// |Hom(A, B)|, computed without materializing the morphisms.
inline std::size_t count_morphisms(const DialObject& a, const DialObject& b) {
  detail::require_same_orientation(a, b);
  const Lineale lin = a.lineale();
  const std::size_t nu = a.left().size(), nv = b.left().size();
  const std::size_t nx = a.right().size(), ny = b.right().size();
  std::size_t total = 0;
  for_each_table(nu, nv, [&](std::span<const std::size_t> f) {
    std::size_t n = 1;
    for (std::size_t y = 0; y < ny && n != 0; ++y) {
      std::size_t c = 0;
      for (std::size_t x = 0; x < nx; ++x) {
        bool ok = true;
        for (std::size_t u = 0; u < nu && ok; ++u) ok = lin.le(a(u, x), b(f[u], y));
        c += ok;
      }
      n *= c;
    }
    total += n;
  });
  return total;
}

/// All valid morphisms A -> B in canonical order. Throws ResourceLimit when
/// the candidate space |V|^|U| * |X|^|Y| exceeds the cap.
inline std::vector<DialMorphism> enumerate_morphisms(const DialObject& a, const DialObject& b) {
  const std::size_t cap = limits().cap.load();
  if (!candidate_count(a, b, cap)) {
    throw ResourceLimit("morphism candidate space exceeds the cap of " + std::to_string(cap));
  }
  std::vector<DialMorphism> out;
  for_each_morphism_table(a, b, [&](std::span<const std::size_t> f, std::span<const std::size_t> g) {
    out.push_back(DialMorphism::create(a, b, FinMap(a.left(), b.left(), {f.begin(), f.end()}),
                                       FinMap(b.right(), a.right(), {g.begin(), g.end()})));
    return true;
  });
  return out;
}

}  // namespace dialnet
