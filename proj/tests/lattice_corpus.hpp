#pragma once

// Deterministic corpus of small finite lattices for property tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "glc/poset.hpp"

namespace corpus {

using glc::poset::FinitePoset;

struct Named {
  std::string name;
  FinitePoset lattice;
};

/// Lattice of a family of subsets (bitmasks) ordered by inclusion.
inline FinitePoset from_sets(const std::vector<unsigned>& sets) {
  return FinitePoset::from_relation(sets.size(), [&](std::size_t a, std::size_t b) {
    return (sets[a] & ~sets[b]) == 0;
  });
}

/// M_k: bottom, k pairwise incomparable atoms, top.
inline FinitePoset diamond(int k) {
  const std::size_t n = static_cast<std::size_t>(k) + 2;
  return FinitePoset::from_relation(n, [&](std::size_t a, std::size_t b) {
    return a == b || a == 0 || b == n - 1;
  });
}

/// N_5: 0 < a < b < 1 and 0 < c < 1.
inline FinitePoset pentagon() {
  // ids: 0 bottom, 1 a, 2 b, 3 c, 4 top
  return FinitePoset::from_relation(5, [](std::size_t x, std::size_t y) {
    if (x == y || x == 0 || y == 4) return true;
    return x == 1 && y == 2;
  });
}

/// Every lattice with at most max_size elements that the generator reaches:
/// named families plus random intersection-closed set systems (every finite
/// lattice arises this way), all from a fixed seed.
inline std::vector<Named> lattices(std::size_t max_size = 12, int random_count = 400) {
  std::vector<Named> out;
  auto add = [&](std::string name, FinitePoset p) {
    if (p.size() <= max_size) out.push_back({std::move(name), std::move(p)});
  };
  for (int len = 0; len <= 11; ++len) add("chain" + std::to_string(len), glc::poset::chain(len));
  for (int r = 0; r <= 3; ++r) add("boolean" + std::to_string(r), glc::poset::boolean_lattice(r));
  const std::vector<std::vector<int>> profiles = {{2, 1}, {2, 2}, {3, 1}, {3, 2}, {4, 1}, {5, 1}, {2, 1, 1}, {1, 1, 1}};
  for (const auto& pr : profiles) {
    std::string name = "chains";
    for (int w : pr) name += "_" + std::to_string(w);
    add(name, glc::poset::product_of_chains(pr));
  }
  for (int k = 3; k <= 10; ++k) add("M" + std::to_string(k), diamond(k));
  add("N5", pentagon());
  add("N5xC1", glc::poset::direct_product(pentagon(), glc::poset::chain(1)));
  add("M3xC1", glc::poset::direct_product(diamond(3), glc::poset::chain(1)));

  std::mt19937_64 rng(20240601);
  for (int i = 0; i < random_count; ++i) {
    const int ground = 2 + static_cast<int>(rng() % 4);
    const unsigned full = (1u << ground) - 1;
    const int gens = 1 + static_cast<int>(rng() % 7);
    std::set<unsigned> family = {full};
    for (int g = 0; g < gens; ++g) family.insert(static_cast<unsigned>(rng()) & full);
    bool grew = true;
    while (grew && family.size() <= max_size) {
      grew = false;
      std::vector<unsigned> cur(family.begin(), family.end());
      for (unsigned a : cur)
        for (unsigned b : cur)
          if (family.insert(a & b).second) grew = true;
    }
    if (family.size() > max_size) continue;
    add("closure" + std::to_string(i), from_sets(std::vector<unsigned>(family.begin(), family.end())));
  }
  return out;
}

/// Every order ideal of p, including the empty one.
inline std::vector<glc::poset::Bits> order_ideals(const FinitePoset& p) {
  std::vector<glc::poset::Bits> out;
  const std::size_t n = p.size();
  // Extend along the linear extension: an element may join only if its whole
  // down-set is already in.
  const auto& order = p.linear_extension();
  glc::poset::Bits cur(n);
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      out.push_back(cur);
      return;
    }
    const std::size_t x = order[k];
    self(self, k + 1);
    glc::poset::Bits below = p.down(x);
    below.reset(x);
    if (below.is_subset_of(cur)) {
      cur.set(x);
      self(self, k + 1);
      cur.reset(x);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace corpus
