#pragma once

// Small-instance generators and brute-force oracles shared by the unit tests.
// Nothing here calls the factored enumeration in the library.

#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "dialnet/dialectica.hpp"

namespace dialnet::oracle {

inline Degree d(Degree::int_type p, Degree::int_type q) { return Degree(p, q); }

inline std::vector<Degree> grid3() { return {Degree::zero(), d(1, 2), Degree::one()}; }

/// Calls fn(values) for every assignment of grid values to n slots.
inline void for_each_assignment(std::size_t n, const std::vector<Degree>& grid,
                                const std::function<void(const std::vector<Degree>&)>& fn) {
  std::vector<std::size_t> idx(n, 0);
  std::vector<Degree> vals(n, grid.front());
  while (true) {
    for (std::size_t i = 0; i < n; ++i) vals[i] = grid[idx[i]];
    fn(vals);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++idx[k] < grid.size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (n == 0) return;
  }
}

/// Every object with |U|, |X| <= max_size and entries from grid.
inline std::vector<DialObject> all_objects(std::size_t max_size, const std::vector<Degree>& grid,
                                           Orientation o = Orientation::standard) {
  std::vector<DialObject> out;
  for (std::size_t nu = 0; nu <= max_size; ++nu) {
    for (std::size_t nx = 0; nx <= max_size; ++nx) {
      const auto u = FinSet::numbered("u", nu);
      const auto x = FinSet::numbered("x", nx);
      for_each_assignment(nu * nx, grid, [&](const std::vector<Degree>& rel) {
        out.emplace_back(u, x, rel, o);
      });
    }
  }
  return out;
}

/// Brute force: every map pair, filtered by check_morphism.
inline std::vector<DialMorphism> brute_morphisms(const DialObject& a, const DialObject& b) {
  std::vector<DialMorphism> out;
  for_each_table(a.left().size(), b.left().size(), [&](std::span<const std::size_t> f) {
    for_each_table(b.right().size(), a.right().size(), [&](std::span<const std::size_t> g) {
      FinMap fm(a.left(), b.left(), {f.begin(), f.end()});
      FinMap gm(b.right(), a.right(), {g.begin(), g.end()});
      if (check_morphism(a, b, fm, gm)) out.push_back(DialMorphism::create(a, b, fm, gm));
    });
  });
  return out;
}

inline DialObject random_object(std::mt19937_64& rng, std::size_t max_size,
                                const std::vector<Degree>& grid, Orientation o = Orientation::standard) {
  const std::size_t nu = rng() % (max_size + 1);
  const std::size_t nx = rng() % (max_size + 1);
  std::vector<Degree> rel(nu * nx);
  for (auto& e : rel) e = grid[rng() % grid.size()];
  return DialObject(FinSet::numbered("u", nu), FinSet::numbered("x", nx), rel, o);
}

}  // namespace dialnet::oracle

#include "dialnet/toposys.hpp"

namespace dialnet::oracle {

/// The five-element frame bottom < m < a, b < top with a /\ b = m.
inline Frame pentagon_frame() {
  const std::vector<std::string> names{"bot", "m", "a", "b", "top"};
  std::vector<std::vector<bool>> le(5, std::vector<bool>(5, false));
  auto set = [&](std::size_t x, std::size_t y) { le[x][y] = true; };
  for (std::size_t i = 0; i < 5; ++i) {
    set(0, i);
    set(i, 4);
    set(i, i);
  }
  set(1, 2);
  set(1, 3);
  return Frame(FinSet::atoms(names), le);
}

/// Frames with at most five opens.
inline std::vector<Frame> small_frames() {
  std::vector<Frame> out;
  out.push_back(Frame::chain({"top"}));
  out.push_back(Frame::chain({"bot", "top"}));
  out.push_back(Frame::chain({"bot", "c", "top"}));
  out.push_back(Frame::chain({"bot", "c1", "c2", "top"}));
  out.push_back(Frame::chain({"bot", "c1", "c2", "c3", "top"}));
  out.push_back(Frame::powerset({"p", "q"}));
  out.push_back(pentagon_frame());
  return out;
}

/// Join-irreducible elements: not bottom and not a join of two strictly smaller opens.
inline std::vector<std::size_t> join_irreducibles(const Frame& fr) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < fr.size(); ++j) {
    if (j == fr.bottom()) continue;
    bool irreducible = true;
    for (std::size_t a = 0; a < fr.size() && irreducible; ++a) {
      for (std::size_t b = 0; b < fr.size(); ++b) {
        if (a != j && b != j && fr.join(a, b) == j) {
          irreducible = false;
          break;
        }
      }
    }
    if (irreducible) out.push_back(j);
  }
  return out;
}

/// A random satisfaction matrix. When `valid` is set, each point satisfies
/// exactly the opens above a random join-irreducible, with random positive
/// degrees there; otherwise entries are arbitrary grid values.
inline std::vector<Degree> random_sat(std::mt19937_64& rng, const Frame& fr, std::size_t points, bool valid) {
  const std::vector<Degree> grid{Degree::zero(), d(1, 4), d(1, 2), d(3, 4), Degree::one()};
  std::vector<Degree> sat(points * fr.size(), Degree::zero());
  const auto irr = join_irreducibles(fr);
  for (std::size_t x = 0; x < points; ++x) {
    const std::size_t j = irr.empty() ? fr.top() : irr[rng() % irr.size()];
    for (std::size_t a = 0; a < fr.size(); ++a) {
      if (valid) {
        sat[x * fr.size() + a] = fr.le(j, a) ? grid[1 + rng() % 4] : Degree::zero();
      } else {
        sat[x * fr.size() + a] = grid[rng() % grid.size()];
      }
    }
  }
  return sat;
}

}  // namespace dialnet::oracle
