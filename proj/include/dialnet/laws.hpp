#pragma once

// Desk-scale verification of the monoidal closed structure of Dial and FNets.
//
// Every law is a predicate over small instances. A run records, per law, the
// scope it covered, how many instances were checked, how many failed and the
// first counterexample. The same config always yields the same report.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

#include "dialnet/dialectica.hpp"
#include "dialnet/fnets.hpp"
#include "dialnet/io.hpp"

namespace dialnet {

enum class LawMode { exhaustive, randomized };

inline std::string_view to_string(LawMode m) { return m == LawMode::exhaustive ? "exhaustive" : "randomized"; }

struct LawSuiteConfig {
  std::size_t max_carrier_size = 2;
  std::vector<Degree> grid{Degree::zero(), Degree(1, 2), Degree::one()};
  std::uint64_t seed = 0;
  LawMode mode = LawMode::exhaustive;
  /// Random instances per law, on top of the exhaustive scope.
  std::size_t samples = 300;
  std::size_t cap = 10000;
};

struct LawResult {
  std::string name;
  std::string scope;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::optional<io::Json> counterexample;

  bool passed() const { return failures == 0; }
};

struct LawSuiteReport {
  LawSuiteConfig config;
  std::vector<LawResult> dial;
  std::vector<LawResult> fnets;
  std::vector<std::string> warnings;

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto* group : {&dial, &fnets}) {
      for (const auto& r : *group) n += r.failures;
    }
    return n;
  }
  bool passed() const { return failures() == 0; }
  const LawResult* find(std::string_view name) const {
    for (const auto* group : {&dial, &fnets}) {
      for (const auto& r : *group) {
        if (r.name == name) return &r;
      }
    }
    return nullptr;
  }
};

namespace laws {

// ---------------------------------------------------------------- kinds

/// Dialectica objects and morphisms over the standard lineale.
struct DialKind {
  using Obj = DialObject;
  using Mor = DialMorphism;
  static constexpr const char* name = "dial";

  static Obj make(std::size_t nu, std::size_t nx, std::vector<Degree> entries) {
    return Obj(FinSet::numbered("u", nu), FinSet::numbered("x", nx), std::move(entries), Orientation::standard);
  }
  static std::size_t cells(std::size_t nu, std::size_t nx) { return nu * nx; }

  static Obj tensor(const Obj& a, const Obj& b) { return dialnet::tensor(a, b); }
  static Obj hom(const Obj& a, const Obj& b) { return internal_hom(a, b); }
  static Obj unit() { return unit_object(Orientation::standard); }
  static Obj product(const Obj& a, const Obj& b) { return dialnet::product(a, b); }
  static Obj coproduct(const Obj& a, const Obj& b) { return dialnet::coproduct(a, b); }

  static Mor id(const Obj& a) { return identity(a); }
  static Mor compose(const Mor& a, const Mor& b) { return dialnet::compose(a, b); }
  static Mor tensor(const Mor& a, const Mor& b) { return dialnet::tensor(a, b); }
  static Mor left_unitor(const Obj& a) { return dialnet::left_unitor(a); }
  static Mor left_unitor_inverse(const Obj& a) { return dialnet::left_unitor_inverse(a); }
  static Mor right_unitor(const Obj& a) { return dialnet::right_unitor(a); }
  static Mor right_unitor_inverse(const Obj& a) { return dialnet::right_unitor_inverse(a); }
  static Mor symmetry(const Obj& a, const Obj& b) { return dialnet::symmetry(a, b); }
  static Mor associator(const Obj& a, const Obj& b, const Obj& c) { return dialnet::associator(a, b, c); }
  static Mor associator_inverse(const Obj& a, const Obj& b, const Obj& c) {
    return dialnet::associator_inverse(a, b, c);
  }
  static Mor proj1(const Obj& a, const Obj& b) { return projection_first(a, b); }
  static Mor proj2(const Obj& a, const Obj& b) { return projection_second(a, b); }
  static Mor inj1(const Obj& a, const Obj& b) { return injection_first(a, b); }
  static Mor inj2(const Obj& a, const Obj& b) { return injection_second(a, b); }
  static Mor pairing(const Mor& a, const Mor& b) { return dialnet::pairing(a, b); }
  static Mor copairing(const Mor& a, const Mor& b) { return dialnet::copairing(a, b); }
  static Mor curry(const Obj& a, const Obj& b, const Mor& m) { return dialnet::curry(a, b, m); }
  static Mor uncurry(const Obj& b, const Obj& c, const Mor& n) { return dialnet::uncurry(b, c, n); }

  static std::size_t count(const Obj& a, const Obj& b) { return count_morphisms(a, b); }
  static std::vector<Mor> homs(const Obj& a, const Obj& b) { return enumerate_morphisms(a, b); }
  static bool valid(const Mor& m) { return check_morphism(m.source(), m.target(), m.f(), m.g()).valid(); }

  static io::Json to_json(const Obj& a) { return io::object_to_json(a); }
  static io::Json to_json(const Mor& m) { return io::morphism_to_json(m); }
};

/// Fuzzy nets; entries fill pre then post.
struct NetKind {
  using Obj = FuzzyNet;
  using Mor = NetMorphism;
  static constexpr const char* name = "fnets";

  static Obj make(std::size_t ne, std::size_t nb, std::vector<Degree> entries) {
    std::vector<Degree> post(entries.begin() + static_cast<std::ptrdiff_t>(ne * nb), entries.end());
    entries.resize(ne * nb);
    return Obj(FinSet::numbered("e", ne), FinSet::numbered("b", nb), std::move(entries), std::move(post));
  }
  static std::size_t cells(std::size_t ne, std::size_t nb) { return 2 * ne * nb; }

  static Obj tensor(const Obj& a, const Obj& b) { return net_tensor(a, b); }
  static Obj hom(const Obj& a, const Obj& b) { return net_hom(a, b); }
  static Obj unit() { return net_unit(); }
  static Obj product(const Obj& a, const Obj& b) { return net_product(a, b); }
  static Obj coproduct(const Obj& a, const Obj& b) { return net_coproduct(a, b); }

  static Mor id(const Obj& a) { return identity(a); }
  static Mor compose(const Mor& a, const Mor& b) { return dialnet::compose(a, b); }
  static Mor tensor(const Mor& a, const Mor& b) { return net_tensor(a, b); }
  static Mor left_unitor(const Obj& a) { return net_left_unitor(a); }
  static Mor left_unitor_inverse(const Obj& a) { return net_left_unitor_inverse(a); }
  static Mor right_unitor(const Obj& a) { return net_right_unitor(a); }
  static Mor right_unitor_inverse(const Obj& a) { return net_right_unitor_inverse(a); }
  static Mor symmetry(const Obj& a, const Obj& b) { return net_symmetry(a, b); }
  static Mor associator(const Obj& a, const Obj& b, const Obj& c) { return net_associator(a, b, c); }
  static Mor associator_inverse(const Obj& a, const Obj& b, const Obj& c) { return net_associator_inverse(a, b, c); }
  static Mor proj1(const Obj& a, const Obj& b) { return net_projection_first(a, b); }
  static Mor proj2(const Obj& a, const Obj& b) { return net_projection_second(a, b); }
  static Mor inj1(const Obj& a, const Obj& b) { return net_injection_first(a, b); }
  static Mor inj2(const Obj& a, const Obj& b) { return net_injection_second(a, b); }
  static Mor pairing(const Mor& a, const Mor& b) { return net_pairing(a, b); }
  static Mor copairing(const Mor& a, const Mor& b) { return net_copairing(a, b); }
  static Mor curry(const Obj& a, const Obj& b, const Mor& m) { return net_curry(a, b, m); }
  static Mor uncurry(const Obj& b, const Obj& c, const Mor& n) { return net_uncurry(b, c, n); }

  static std::size_t count(const Obj& a, const Obj& b) { return count_simulations(a, b); }
  static std::vector<Mor> homs(const Obj& a, const Obj& b) { return enumerate_simulations(a, b); }
  static bool valid(const Mor& m) {
    return check_simulation(m.source(), m.target(), m.events_map(), m.conditions_map()).valid();
  }

  static io::Json to_json(const Obj& a) { return io::net_to_json(a); }
  static io::Json to_json(const Mor& m) { return io::simulation_to_json(m); }
};

// ---------------------------------------------------------------- families

using SizePredicate = std::function<bool(std::size_t, std::size_t)>;

/// Every object whose carrier sizes satisfy `keep`, entries from `grid`, in
/// order of sizes then entries.
template <class K>
std::vector<typename K::Obj> family(std::size_t max_size, const std::vector<Degree>& grid, const SizePredicate& keep) {
  std::vector<typename K::Obj> out;
  for (std::size_t a = 0; a <= max_size; ++a) {
    for (std::size_t b = 0; b <= max_size; ++b) {
      if (!keep(a, b)) continue;
      const std::size_t n = K::cells(a, b);
      std::vector<std::size_t> idx(n, 0);
      std::vector<Degree> vals(n);
      while (true) {
        for (std::size_t i = 0; i < n; ++i) vals[i] = grid[idx[i]];
        out.push_back(K::make(a, b, vals));
        bool done = true;
        for (std::size_t k = n; k > 0; --k) {
          if (++idx[k - 1] < grid.size()) {
            done = false;
            break;
          }
          idx[k - 1] = 0;
        }
        if (done) break;
      }
    }
  }
  return out;
}

/// One object per carrier shape with a constant relation, so that every map
/// pair between two shapes is a morphism.
template <class K>
std::vector<typename K::Obj> shapes(std::size_t max_size) {
  std::vector<typename K::Obj> out;
  for (std::size_t a = 0; a <= max_size; ++a) {
    for (std::size_t b = 0; b <= max_size; ++b) {
      out.push_back(K::make(a, b, std::vector<Degree>(K::cells(a, b), Degree(1, 2))));
    }
  }
  return out;
}

template <class K>
typename K::Obj random_object(std::mt19937_64& rng, std::size_t max_size, const std::vector<Degree>& grid) {
  const std::size_t a = rng() % (max_size + 1);
  const std::size_t b = rng() % (max_size + 1);
  std::vector<Degree> vals(K::cells(a, b));
  for (auto& v : vals) v = grid[rng() % grid.size()];
  return K::make(a, b, std::move(vals));
}

// ---------------------------------------------------------------- recording

class Recorder {
public:
  Recorder(std::string name, std::string scope) {
    result_.name = std::move(name);
    result_.scope = std::move(scope);
  }

  /// Runs one instance. Library errors other than ResourceLimit count as a
  /// failure of the instance.
  template <class Body, class Describe>
  void check(Body&& body, Describe&& describe) {
    ++result_.instances;
    std::string error;
    bool ok = false;
    try {
      ok = body();
    } catch (const ResourceLimit&) {
      throw;
    } catch (const Error& e) {
      error = e.what();
    }
    if (ok) return;
    ++result_.failures;
    if (!result_.counterexample) {
      io::Json cx = describe();
      if (!error.empty()) cx["error"] = error;
      result_.counterexample = std::move(cx);
    }
  }

  LawResult take() { return std::move(result_); }

private:
  LawResult result_;
};

inline std::string grid_text(const std::vector<Degree>& grid) {
  std::string s = "{";
  for (std::size_t i = 0; i < grid.size(); ++i) s += (i ? ", " : "") + grid[i].str();
  return s + "}";
}

/// Seeds a law's generator from the suite seed and the law's position.
inline std::mt19937_64 law_rng(std::uint64_t seed, std::size_t law) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(law)};
  return std::mt19937_64(seq);
}

template <class Obj>
std::string family_text(const std::vector<Obj>& fam, const std::string& what, std::size_t arity) {
  std::size_t tuples = 1;
  for (std::size_t i = 0; i < arity; ++i) tuples *= fam.size();
  return what + " (" + std::to_string(fam.size()) + " objects, " + std::to_string(tuples) + " " +
         (arity == 1 ? "singles" : arity == 2 ? "pairs" : "triples") + ")";
}

template <class Mor>
const Mor& pick(std::mt19937_64& rng, const std::vector<Mor>& v) {
  return v[rng() % v.size()];
}

// ---------------------------------------------------------------- suite

template <class K>
class Suite {
public:
  using Obj = typename K::Obj;
  using Mor = typename K::Mor;

  explicit Suite(const LawSuiteConfig& cfg) : cfg_(cfg) {
    const std::size_t n = cfg.max_carrier_size;
    empty_ = n == 0;
    if (empty_) return;
    exhaustive_ = cfg.mode == LawMode::exhaustive;
    samples_ = cfg.samples;
    const std::string g = grid_text(cfg.grid);
    if (std::string_view(K::name) == "dial") {
      full_ = family<K>(n, cfg.grid, [](std::size_t, std::size_t) { return true; });
      reduced_ = family<K>(n, cfg.grid, [n](std::size_t a, std::size_t b) { return a * b <= n; });
      small_ = family<K>(std::min<std::size_t>(n, 1), cfg.grid, [](std::size_t, std::size_t) { return true; });
      full_text_ = "objects with |U|,|X| <= " + std::to_string(n) + " over " + g;
      reduced_text_ = "objects with |U|*|X| <= " + std::to_string(n) + " over " + g;
      small_text_ = "objects with |U|,|X| <= " + std::to_string(std::min<std::size_t>(n, 1)) + " over " + g;
    } else {
      full_ = family<K>(std::min<std::size_t>(n, 1), cfg.grid, [](std::size_t, std::size_t) { return true; });
      reduced_ = full_;
      small_ = full_;
      full_text_ = "nets with |E|,|B| <= " + std::to_string(std::min<std::size_t>(n, 1)) + " over " + g;
      reduced_text_ = full_text_;
      small_text_ = full_text_;
    }
    if (!exhaustive_) {
      full_.clear();
      reduced_.clear();
      small_.clear();
    }
  }

  std::vector<LawResult> run() {
    std::vector<LawResult> out;
    out.push_back(identity_law());
    out.push_back(composition_law());
    out.push_back(associativity_law());
    out.push_back(unitor_law());
    out.push_back(symmetry_law());
    out.push_back(associator_law());
    out.push_back(tensor_identity_law());
    out.push_back(tensor_morphism_law());
    out.push_back(bifunctor_law());
    out.push_back(adjunction_law());
    out.push_back(curry_law());
    out.push_back(projection_law());
    out.push_back(product_law());
    out.push_back(coproduct_law());
    if constexpr (std::is_same_v<K, NetKind>) out.push_back(fibre_law());
    return out;
  }

private:
  std::string law_name(const char* law) const { return std::string(K::name) + "." + law; }

  std::string scope(const std::string& exhaustive_part) const {
    if (empty_) return "empty (max carrier size 0)";
    std::string rnd = std::to_string(samples_) + " random instances with carriers <= " +
                      std::to_string(cfg_.max_carrier_size) + " over " + grid_text(cfg_.grid) + ", seed " +
                      std::to_string(cfg_.seed);
    if (!exhaustive_) return rnd;
    if (samples_ == 0) return exhaustive_part;
    return exhaustive_part + "; plus " + rnd;
  }

  Obj random(std::mt19937_64& rng) const { return random_object<K>(rng, cfg_.max_carrier_size, cfg_.grid); }

  static io::Json objects(std::initializer_list<std::pair<const char*, const Obj*>> objs) {
    io::Json j = io::Json::object();
    for (const auto& [k, o] : objs) j[k] = K::to_json(*o);
    return j;
  }

  /// Visits `fam` tuples exhaustively, then `samples_` random tuples.
  template <std::size_t Arity, class Fn>
  void visit(const std::vector<Obj>& fam, std::size_t law, Fn&& fn) {
    if constexpr (Arity == 1) {
      for (const auto& a : fam) fn(a);
    } else if constexpr (Arity == 2) {
      for (const auto& a : fam) {
        for (const auto& b : fam) fn(a, b);
      }
    } else {
      for (const auto& a : fam) {
        for (const auto& b : fam) {
          for (const auto& c : fam) fn(a, b, c);
        }
      }
    }
    auto rng = law_rng(cfg_.seed, law);
    for (std::size_t s = 0; s < samples_; ++s) {
      if constexpr (Arity == 1) {
        fn(random(rng));
      } else if constexpr (Arity == 2) {
        const Obj a = random(rng);
        fn(a, random(rng));
      } else {
        const Obj a = random(rng);
        const Obj b = random(rng);
        fn(a, b, random(rng));
      }
    }
  }

  LawResult identity_law() {
    Recorder rec(law_name("identity"), scope("every morphism between " + family_text(full_, full_text_, 2)));
    visit<2>(full_, 1, [&](const Obj& a, const Obj& b) {
      for (const auto& m : K::homs(a, b)) {
        rec.check([&] { return K::compose(K::id(a), m) == m && K::compose(m, K::id(b)) == m; },
                  [&] { return io::Json{{"objects", objects({{"A", &a}, {"B", &b}})}, {"morphism", K::to_json(m)}}; });
      }
    });
    return rec.take();
  }

  LawResult composition_law() {
    Recorder rec(law_name("composition"),
                 scope("every composable pair of morphisms over " + family_text(full_, full_text_, 3)));
    // Hom sets of the exhaustive family, computed once.
    const std::size_t n = full_.size();
    std::vector<std::vector<Mor>> cache(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) cache[i * n + j] = K::homs(full_[i], full_[j]);
    }
    auto body = [&](const Obj& a, const Obj& b, const Obj& c, const std::vector<Mor>& ab, const std::vector<Mor>& bc) {
      for (const auto& m1 : ab) {
        for (const auto& m2 : bc) {
          rec.check([&] { return K::valid(K::compose(m1, m2)); },
                    [&] {
                      return io::Json{{"objects", objects({{"A", &a}, {"B", &b}, {"C", &c}})},
                                      {"first", K::to_json(m1)},
                                      {"second", K::to_json(m2)}};
                    });
        }
      }
    };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (cache[i * n + j].empty()) continue;
        for (std::size_t k = 0; k < n; ++k) body(full_[i], full_[j], full_[k], cache[i * n + j], cache[j * n + k]);
      }
    }
    auto rng = law_rng(cfg_.seed, 2);
    for (std::size_t s = 0; s < samples_; ++s) {
      const Obj a = random(rng), b = random(rng), c = random(rng);
      body(a, b, c, K::homs(a, b), K::homs(b, c));
    }
    return rec.take();
  }

  LawResult associativity_law() {
    const std::size_t n = exhaustive_ ? cfg_.max_carrier_size : 0;
    const auto sh = exhaustive_ && n > 0 ? shapes<K>(n) : std::vector<Obj>{};
    Recorder rec(law_name("associativity"),
                 scope("every triple of composable map pairs between carrier shapes <= " + std::to_string(n) + " (" +
                       std::to_string(sh.size()) + " shapes, every map pair a morphism)"));
    auto body = [&](const Mor& m1, const Mor& m2, const Mor& m3) {
      rec.check([&] { return K::compose(K::compose(m1, m2), m3) == K::compose(m1, K::compose(m2, m3)); },
                [&] {
                  const Obj a = m1.source(), d = m3.target();
                  return io::Json{{"objects", objects({{"A", &a}, {"D", &d}})},
                                  {"first", K::to_json(m1)},
                                  {"second", K::to_json(m2)},
                                  {"third", K::to_json(m3)}};
                });
    };
    const std::size_t s = sh.size();
    std::vector<std::vector<Mor>> cache(s * s);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) cache[i * s + j] = K::homs(sh[i], sh[j]);
    }
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t b = 0; b < s; ++b) {
        for (std::size_t c = 0; c < s; ++c) {
          for (std::size_t d = 0; d < s; ++d) {
            for (const auto& m1 : cache[a * s + b]) {
              for (const auto& m2 : cache[b * s + c]) {
                for (const auto& m3 : cache[c * s + d]) body(m1, m2, m3);
              }
            }
          }
        }
      }
    }
    auto rng = law_rng(cfg_.seed, 3);
    for (std::size_t k = 0; k < samples_; ++k) {
      const Obj a = random(rng), b = random(rng), c = random(rng), d = random(rng);
      const auto ab = K::homs(a, b), bc = K::homs(b, c), cd = K::homs(c, d);
      if (ab.empty() || bc.empty() || cd.empty()) continue;
      body(pick(rng, ab), pick(rng, bc), pick(rng, cd));
    }
    return rec.take();
  }

  LawResult unitor_law() {
    Recorder rec(law_name("unitors"), scope("every object of " + family_text(full_, full_text_, 1)));
    visit<1>(full_, 4, [&](const Obj& a) {
      rec.check(
          [&] {
            const Obj ia = K::tensor(K::unit(), a), ai = K::tensor(a, K::unit());
            return K::compose(K::left_unitor(a), K::left_unitor_inverse(a)) == K::id(ia) &&
                   K::compose(K::left_unitor_inverse(a), K::left_unitor(a)) == K::id(a) &&
                   K::compose(K::right_unitor(a), K::right_unitor_inverse(a)) == K::id(ai) &&
                   K::compose(K::right_unitor_inverse(a), K::right_unitor(a)) == K::id(a);
          },
          [&] { return io::Json{{"objects", objects({{"A", &a}})}}; });
    });
    return rec.take();
  }

  LawResult symmetry_law() {
    Recorder rec(law_name("symmetry"), scope("every pair of " + family_text(full_, full_text_, 2)));
    visit<2>(full_, 5, [&](const Obj& a, const Obj& b) {
      rec.check([&] { return K::compose(K::symmetry(a, b), K::symmetry(b, a)) == K::id(K::tensor(a, b)); },
                [&] { return io::Json{{"objects", objects({{"A", &a}, {"B", &b}})}}; });
    });
    return rec.take();
  }

  LawResult associator_law() {
    Recorder rec(law_name("associator"), scope("every triple of " + family_text(reduced_, reduced_text_, 3)));
    visit<3>(reduced_, 6, [&](const Obj& a, const Obj& b, const Obj& c) {
      rec.check(
          [&] {
            const auto al = K::associator(a, b, c), ar = K::associator_inverse(a, b, c);
            return K::compose(al, ar) == K::id(K::tensor(K::tensor(a, b), c)) &&
                   K::compose(ar, al) == K::id(K::tensor(a, K::tensor(b, c)));
          },
          [&] { return io::Json{{"objects", objects({{"A", &a}, {"B", &b}, {"C", &c}})}}; });
    });
    return rec.take();
  }

  LawResult tensor_identity_law() {
    Recorder rec(law_name("tensor_identity"), scope("every pair of " + family_text(full_, full_text_, 2)));
    visit<2>(full_, 7, [&](const Obj& a, const Obj& b) {
      rec.check([&] { return K::tensor(K::id(a), K::id(b)) == K::id(K::tensor(a, b)); },
                [&] { return io::Json{{"objects", objects({{"A", &a}, {"B", &b}})}}; });
    });
    return rec.take();
  }

  LawResult tensor_morphism_law() {
    Recorder rec(law_name("tensor_morphism"),
                 scope("every pair of morphisms A->B, C->D over quadruples of " + small_text_ + " (" +
                       std::to_string(small_.size()) + " objects)"));
    auto body = [&](const std::vector<Mor>& ab, const std::vector<Mor>& cd) {
      for (const auto& m : ab) {
        for (const auto& k : cd) {
          rec.check([&] { return K::valid(K::tensor(m, k)); },
                    [&] { return io::Json{{"left", K::to_json(m)}, {"right", K::to_json(k)}}; });
        }
      }
    };
    const std::size_t n = small_.size();
    std::vector<std::vector<Mor>> cache(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) cache[i * n + j] = K::homs(small_[i], small_[j]);
    }
    for (const auto& ab : cache) {
      for (const auto& cd : cache) body(ab, cd);
    }
    auto rng = law_rng(cfg_.seed, 8);
    for (std::size_t s = 0; s < samples_; ++s) {
      const Obj a = random(rng), b = random(rng), c = random(rng), d = random(rng);
      const auto ab = K::homs(a, b), cd = K::homs(c, d);
      if (ab.empty() || cd.empty()) continue;
      body({pick(rng, ab)}, {pick(rng, cd)});
    }
    return rec.take();
  }

  LawResult bifunctor_law() {
    const std::size_t n = exhaustive_ ? std::min<std::size_t>(cfg_.max_carrier_size, 1) : 0;
    const auto sh = exhaustive_ && n > 0 ? shapes<K>(n) : std::vector<Obj>{};
    Recorder rec(law_name("bifunctor"),
                 scope("(f;g) (x) (h;k) = (f (x) h);(g (x) k) for every map sextuple between carrier shapes <= " +
                       std::to_string(n) + " (" + std::to_string(sh.size()) + " shapes)"));
    auto body = [&](const Mor& f, const Mor& g, const Mor& h, const Mor& k) {
      rec.check(
          [&] { return K::tensor(K::compose(f, g), K::compose(h, k)) == K::compose(K::tensor(f, h), K::tensor(g, k)); },
          [&] {
            return io::Json{{"f", K::to_json(f)}, {"g", K::to_json(g)}, {"h", K::to_json(h)}, {"k", K::to_json(k)}};
          });
    };
    const std::size_t s = sh.size();
    std::vector<std::vector<Mor>> cache(s * s);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) cache[i * s + j] = K::homs(sh[i], sh[j]);
    }
    // Composable pairs A -> B -> C between shapes.
    std::vector<std::pair<const Mor*, const Mor*>> chains;
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t b = 0; b < s; ++b) {
        for (std::size_t c = 0; c < s; ++c) {
          for (const auto& m1 : cache[a * s + b]) {
            for (const auto& m2 : cache[b * s + c]) chains.emplace_back(&m1, &m2);
          }
        }
      }
    }
    for (const auto& [f, g] : chains) {
      for (const auto& [h, k] : chains) body(*f, *g, *h, *k);
    }
    auto rng = law_rng(cfg_.seed, 9);
    for (std::size_t i = 0; i < samples_; ++i) {
      const Obj a = random(rng), b = random(rng), c = random(rng);
      const Obj x = random(rng), y = random(rng), z = random(rng);
      const auto ab = K::homs(a, b), bc = K::homs(b, c), xy = K::homs(x, y), yz = K::homs(y, z);
      if (ab.empty() || bc.empty() || xy.empty() || yz.empty()) continue;
      body(pick(rng, ab), pick(rng, bc), pick(rng, xy), pick(rng, yz));
    }
    return rec.take();
  }

  LawResult adjunction_law() {
    Recorder rec(law_name("adjunction"),
                 scope("|Hom(A (x) B, C)| = |Hom(A, B -o C)| for every triple of " +
                       family_text(full_, full_text_, 3)));
    const std::size_t n = full_.size();
    std::vector<Obj> tensors(n * n), homs(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        tensors[i * n + j] = K::tensor(full_[i], full_[j]);
        homs[i * n + j] = K::hom(full_[i], full_[j]);
      }
    }
    auto body = [&](const Obj& a, const Obj& b, const Obj& c, const Obj& ab, const Obj& bc) {
      std::size_t left = 0, right = 0;
      rec.check(
          [&] {
            left = K::count(ab, c);
            right = K::count(a, bc);
            return left == right;
          },
          [&] {
            return io::Json{{"objects", objects({{"A", &a}, {"B", &b}, {"C", &c}})},
                            {"hom_tensor_count", left},
                            {"hom_internal_count", right}};
          });
    };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          body(full_[i], full_[j], full_[k], tensors[i * n + j], homs[j * n + k]);
        }
      }
    }
    auto rng = law_rng(cfg_.seed, 10);
    for (std::size_t s = 0; s < samples_; ++s) {
      const Obj a = random(rng), b = random(rng), c = random(rng);
      body(a, b, c, K::tensor(a, b), K::hom(b, c));
    }
    return rec.take();
  }

  LawResult curry_law() {
    Recorder rec(law_name("curry"),
                 scope("uncurry(curry(m)) = m and curry(uncurry(n)) = n for every m, n over " +
                       family_text(reduced_, reduced_text_, 3)));
    visit<3>(reduced_, 11, [&](const Obj& a, const Obj& b, const Obj& c) {
      const Obj ab = K::tensor(a, b), bc = K::hom(b, c);
      auto cx = [&] { return io::Json{{"objects", objects({{"A", &a}, {"B", &b}, {"C", &c}})}}; };
      for (const auto& m : K::homs(ab, c)) {
        rec.check([&] { return K::uncurry(b, c, K::curry(a, b, m)) == m; },
                  [&] {
                    auto j = cx();
                    j["morphism"] = K::to_json(m);
                    return j;
                  });
      }
      for (const auto& k : K::homs(a, bc)) {
        rec.check([&] { return K::curry(a, b, K::uncurry(b, c, k)) == k; },
                  [&] {
                    auto j = cx();
                    j["morphism"] = K::to_json(k);
                    return j;
                  });
      }
    });
    return rec.take();
  }

  LawResult projection_law() {
    Recorder rec(law_name("projections"),
                 scope("projections and injections are morphisms for every pair of " +
                       family_text(full_, full_text_, 2)));
    visit<2>(full_, 12, [&](const Obj& a, const Obj& b) {
      rec.check(
          [&] {
            return K::valid(K::proj1(a, b)) && K::valid(K::proj2(a, b)) && K::valid(K::inj1(a, b)) &&
                   K::valid(K::inj2(a, b));
          },
          [&] { return io::Json{{"objects", objects({{"A", &a}, {"B", &b}})}}; });
    });
    return rec.take();
  }

  LawResult product_law() {
    Recorder rec(law_name("product"),
                 scope("Hom(C, A x B) = Hom(C, A) x Hom(C, B) by enumeration over " +
                       family_text(small_, small_text_, 3)));
    visit<3>(small_, 13, [&](const Obj& a, const Obj& b, const Obj& c) {
      rec.check(
          [&] {
            const auto p1 = K::proj1(a, b), p2 = K::proj2(a, b);
            const auto ca = K::homs(c, a), cb = K::homs(c, b), cp = K::homs(c, K::product(a, b));
            if (cp.size() != ca.size() * cb.size()) return false;
            for (const auto& m : cp) {
              if (!(K::pairing(K::compose(m, p1), K::compose(m, p2)) == m)) return false;
            }
            for (const auto& m1 : ca) {
              for (const auto& m2 : cb) {
                const auto m = K::pairing(m1, m2);
                if (!(K::compose(m, p1) == m1) || !(K::compose(m, p2) == m2)) return false;
              }
            }
            return true;
          },
          [&] { return io::Json{{"objects", objects({{"A", &a}, {"B", &b}, {"C", &c}})}}; });
    });
    return rec.take();
  }

  LawResult coproduct_law() {
    Recorder rec(law_name("coproduct"),
                 scope("Hom(A + B, C) = Hom(A, C) x Hom(B, C) by enumeration over " +
                       family_text(small_, small_text_, 3)));
    visit<3>(small_, 14, [&](const Obj& a, const Obj& b, const Obj& c) {
      rec.check(
          [&] {
            const auto i1 = K::inj1(a, b), i2 = K::inj2(a, b);
            const auto ac = K::homs(a, c), bc = K::homs(b, c), sc = K::homs(K::coproduct(a, b), c);
            if (sc.size() != ac.size() * bc.size()) return false;
            for (const auto& m : sc) {
              if (!(K::copairing(K::compose(i1, m), K::compose(i2, m)) == m)) return false;
            }
            for (const auto& m1 : ac) {
              for (const auto& m2 : bc) {
                const auto m = K::copairing(m1, m2);
                if (!(K::compose(i1, m) == m1) || !(K::compose(i2, m) == m2)) return false;
              }
            }
            return true;
          },
          [&] { return io::Json{{"objects", objects({{"A", &a}, {"B", &b}, {"C", &c}})}}; });
    });
    return rec.take();
  }

  LawResult fibre_law() {
    Recorder rec(law_name("fibres"),
                 scope("tensor, hom, product and coproduct agree with the Dial constructions in each fibre for "
                       "every pair of " +
                       family_text(full_, full_text_, 2)));
    visit<2>(full_, 15, [&](const Obj& a, const Obj& b) {
      rec.check(
          [&] {
            bool ok = true;
            for (const Fibre f : {Fibre::pre, Fibre::post}) {
              ok = ok && net_tensor(a, b).fibre(f) == dialnet::tensor(a.fibre(f), b.fibre(f)) &&
                   net_hom(a, b).fibre(f) == internal_hom(a.fibre(f), b.fibre(f)) &&
                   net_product(a, b).fibre(f) == dialnet::product(a.fibre(f), b.fibre(f)) &&
                   net_coproduct(a, b).fibre(f) == dialnet::coproduct(a.fibre(f), b.fibre(f));
            }
            return ok && net_unit().pre_fibre() == unit_object(pre_orientation) &&
                   net_unit().post_fibre() == unit_object(post_orientation);
          },
          [&] { return io::Json{{"objects", objects({{"A", &a}, {"B", &b}})}}; });
    });
    return rec.take();
  }

  const LawSuiteConfig& cfg_;
  bool empty_ = false;
  bool exhaustive_ = true;
  std::size_t samples_ = 0;
  std::vector<Obj> full_, reduced_, small_;
  std::string full_text_, reduced_text_, small_text_;
};

}  // namespace laws

/// Runs both suites under the configured cap.
inline LawSuiteReport run_law_suite(const LawSuiteConfig& cfg) {
  ScopedCap cap(cfg.cap);
  LawSuiteReport rep;
  rep.config = cfg;
  rep.dial = laws::Suite<laws::DialKind>(cfg).run();
  rep.fnets = laws::Suite<laws::NetKind>(cfg).run();
  for (const auto* group : {&rep.dial, &rep.fnets}) {
    for (const auto& r : *group) {
      if (r.instances == 0) rep.warnings.push_back(r.name + ": zero instances checked; the pass is vacuous");
    }
  }
  return rep;
}

inline io::Json to_json(const LawResult& r) {
  io::Json j = io::Json::object();
  j["law"] = r.name;
  j["status"] = r.passed() ? "pass" : "fail";
  j["instances"] = r.instances;
  j["failures"] = r.failures;
  j["scope"] = r.scope;
  if (r.counterexample) j["counterexample"] = *r.counterexample;
  return j;
}

inline io::Json to_json(const LawSuiteReport& rep) {
  io::Json cfg = io::Json::object();
  cfg["max_carrier_size"] = rep.config.max_carrier_size;
  io::Json grid = io::Json::array();
  for (const auto& d : rep.config.grid) grid.push_back(d.str());
  cfg["grid"] = grid;
  cfg["seed"] = rep.config.seed;
  cfg["mode"] = std::string(to_string(rep.config.mode));
  cfg["samples"] = rep.config.samples;
  cfg["cap"] = rep.config.cap;
  io::Json j = io::Json::object();
  j["config"] = cfg;
  j["status"] = rep.passed() ? "pass" : "fail";
  j["failures"] = rep.failures();
  io::Json dial = io::Json::array(), fnets = io::Json::array();
  for (const auto& r : rep.dial) dial.push_back(to_json(r));
  for (const auto& r : rep.fnets) fnets.push_back(to_json(r));
  j["dial"] = dial;
  j["fnets"] = fnets;
  io::Json warnings = io::Json::array();
  for (const auto& w : rep.warnings) warnings.push_back(w);
  j["warnings"] = warnings;
  return j;
}

}  // namespace dialnet
