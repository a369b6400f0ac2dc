#pragma once

// Seeded generators shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "eqnoeth/fingrp.hpp"
#include "eqnoeth/gog.hpp"
#include "eqnoeth/words.hpp"

namespace eqnoeth::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Random reduced word of at most max_len letters (with multiplicity).
inline Word random_word(Rng& rng, int n_vars, int max_len, bool positive) {
  std::vector<Letter> raw;
  const int len = uniform(rng, 0, max_len);
  for (int i = 0; i < len; ++i) {
    const int v = uniform(rng, 1, n_vars);
    const long long e = positive || uniform(rng, 0, 1) ? 1 : -1;
    raw.push_back({v, e});
  }
  return reduce(n_vars, raw);
}

inline std::vector<int> random_tuple(Rng& rng, const FiniteGroup& g, int n) {
  std::vector<int> t(n);
  for (auto& x : t) x = uniform(rng, 0, g.order() - 1);
  return t;
}

// ---------------------------------------------------------------------------
// Random graphs of groups with extensions on every edge.
//
// A core group G is fixed per graph; each vertex carries G or G x C_2. Each
// edge pair u -- v gets a subgroup A of G, an automorphism ψ of G (inner,
// or a coprime power map when G is abelian) and
//   ι_e = emb_u ∘ (A -> G),  ι_ē = emb_v ∘ ψ ∘ (A -> G),
//   φ̄_e = emb_v ∘ ψ ∘ proj_u,  φ̄_ē = emb_u ∘ ψ^{-1} ∘ proj_v,
// where emb(x) = (x, 0) and proj(x, c) = x on the G x C_2 vertices.

struct RandomGogOptions {
  int max_vertices = 4;
  int max_extra_edges = 2;  // pairs beyond a spanning tree
  std::vector<FiniteGroup> pool;
};

inline std::vector<FiniteGroup> small_group_pool() {
  return {cyclic_group(1), cyclic_group(2), cyclic_group(3), cyclic_group(4), cyclic_group(6), klein_four_group(),
          symmetric_group(3), dihedral_group(4), alternating_group(4), dihedral_group(6), cyclic_group(12)};
}

inline std::vector<FiniteGroup> medium_group_pool() {
  return {symmetric_group(3), dihedral_group(4), alternating_group(4), dihedral_group(6),
          symmetric_group(4), dihedral_group(12), cyclic_group(24), cyclic_group(8)};
}

inline std::vector<int> random_automorphism(Rng& rng, const FiniteGroup& g) {
  std::vector<int> psi(g.order());
  if (g.is_abelian() && uniform(rng, 0, 1)) {
    std::vector<int> ks;
    for (int k = 1; k <= g.order(); ++k)
      if (std::gcd(k, g.order()) == 1) ks.push_back(k);
    const int k = ks[uniform(rng, 0, static_cast<int>(ks.size()) - 1)];
    for (int x = 0; x < g.order(); ++x) psi[x] = g.power(x, k);
  } else {
    const int c = uniform(rng, 0, g.order() - 1);
    for (int x = 0; x < g.order(); ++x) psi[x] = g.conjugate(x, c);
  }
  return psi;
}

inline GraphOfGroups random_gog(Rng& rng, const RandomGogOptions& opt) {
  const FiniteGroup core = opt.pool[uniform(rng, 0, static_cast<int>(opt.pool.size()) - 1)];
  const int n = uniform(rng, 1, opt.max_vertices);
  const auto doubled = direct_product(core, cyclic_group(2));
  std::vector<FiniteGroup> vertices;
  std::vector<char> is_doubled;
  for (int v = 0; v < n; ++v) {
    const bool d = doubled.group.order() <= 12 && uniform(rng, 0, 2) == 0;
    is_doubled.push_back(d);
    vertices.push_back(d ? doubled.group : core);
  }
  auto emb = [&](int v, int x) { return is_doubled[v] ? doubled.pair(x, 0) : x; };
  auto proj = [&](int v, int x) { return is_doubled[v] ? doubled.first(x) : x; };

  std::vector<std::pair<int, int>> pairs;
  for (int v = 1; v < n; ++v) pairs.emplace_back(uniform(rng, 0, v - 1), v);
  const int extra = uniform(rng, n == 1 ? 1 : 0, opt.max_extra_edges);
  for (int i = 0; i < extra; ++i) pairs.emplace_back(uniform(rng, 0, n - 1), uniform(rng, 0, n - 1));

  std::vector<GogEdge> edges;
  int next_id = 0;
  for (auto [u, v] : pairs) {
    std::vector<int> gens;
    for (int k = uniform(rng, 0, 2); k > 0; --k) gens.push_back(uniform(rng, 0, core.order() - 1));
    const auto sub = subgroup_as_group(subgroup_generated(core, gens));
    const auto psi = random_automorphism(rng, core);
    std::vector<int> psi_inv(core.order());
    for (int x = 0; x < core.order(); ++x) psi_inv[psi[x]] = x;

    std::vector<int> incl_e, incl_b, ext_e, ext_b;
    for (int a = 0; a < sub.group.order(); ++a) {
      incl_e.push_back(emb(u, sub.inclusion(a)));
      incl_b.push_back(emb(v, psi[sub.inclusion(a)]));
    }
    for (int x = 0; x < vertices[u].order(); ++x) ext_e.push_back(emb(v, psi[proj(u, x)]));
    for (int x = 0; x < vertices[v].order(); ++x) ext_b.push_back(emb(u, psi_inv[proj(v, x)]));
    const int e = next_id++, b = next_id++;
    edges.push_back(GogEdge{e, b, u, sub.group, Homomorphism(sub.group, vertices[u], incl_e),
                            Homomorphism(vertices[u], vertices[v], ext_e)});
    edges.push_back(GogEdge{b, e, v, sub.group, Homomorphism(sub.group, vertices[v], incl_b),
                            Homomorphism(vertices[v], vertices[u], ext_b)});
  }
  return GraphOfGroups(std::move(vertices), std::move(edges));
}

// ---------------------------------------------------------------------------
// Path words, not necessarily closed.

struct PathWord {
  int start = 0;
  std::vector<int> elements{0};
  std::vector<int> edges;
};

inline int path_end(const GraphOfGroups& g, const PathWord& p) { return p.edges.empty() ? p.start : g.to(p.edges.back()); }

inline PathWord concat(const GraphOfGroups& g, const PathWord& a, const PathWord& b) {
  PathWord out = a;
  const int v = path_end(g, a);
  out.elements.back() = g.vertex(v).multiply(out.elements.back(), b.elements.front());
  out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
  out.elements.insert(out.elements.end(), b.elements.begin() + 1, b.elements.end());
  return out;
}

inline PathWord path_inverse(const GraphOfGroups& g, const PathWord& p) {
  PathWord out{path_end(g, p), {}, {}};
  std::vector<int> vs{p.start};
  for (int e : p.edges) vs.push_back(g.to(e));
  for (std::size_t j = p.elements.size(); j-- > 0;) {
    out.elements.push_back(g.vertex(vs[j]).inverse(p.elements[j]));
    if (j > 0) out.edges.push_back(g.bar(p.edges[j - 1]));
  }
  return out;
}

inline GoGWord closed(const PathWord& p) { return GoGWord{p.start, p.elements, p.edges}; }

/// Random walk of `steps` edges with random vertex elements.
inline PathWord random_walk(Rng& rng, const GraphOfGroups& g, int start, int steps) {
  PathWord p{start, {uniform(rng, 0, g.vertex(start).order() - 1)}, {}};
  int cur = start;
  for (int s = 0; s < steps; ++s) {
    std::vector<int> out;
    for (const auto& e : g.edges())
      if (e.from == cur) out.push_back(e.id);
    if (out.empty()) break;
    const int e = out[uniform(rng, 0, static_cast<int>(out.size()) - 1)];
    cur = g.to(e);
    p.edges.push_back(e);
    p.elements.push_back(uniform(rng, 0, g.vertex(cur).order() - 1));
  }
  return p;
}

/// Closes a path back to its start along the maximal tree.
inline PathWord close_by_tree(const GraphOfGroups& g, PathWord p) {
  for (int e : g.tree_path(path_end(g, p), p.start)) {
    p.edges.push_back(e);
    p.elements.push_back(0);
  }
  return p;
}

/// ē ι_e(x) e ι_ē(x)^{-1}, a closed path at i(ē) that is trivial in π_1.
inline PathWord relator(const GraphOfGroups& g, int e, int x) {
  const auto& E = g.edge(e);
  const auto& B = g.edge(E.bar);
  const int v = B.from;
  return PathWord{v, {0, E.incl(x), g.vertex(v).inverse(B.incl(x))}, {E.bar, e}};
}

/// Product of k conjugates u r u^{-1} of random relator instances, closed at `base`.
inline GoGWord random_relator_product(Rng& rng, const GraphOfGroups& g, int base, int k, int walk) {
  PathWord acc{base, {0}, {}};
  for (int i = 0; i < k; ++i) {
    PathWord u = random_walk(rng, g, base, uniform(rng, 0, walk));
    const int t = path_end(g, u);
    std::vector<int> out;
    for (const auto& e : g.edges())
      if (g.to(e.id) == t) out.push_back(e.id);  // e with i(ē) = t
    if (out.empty()) continue;
    const int e = out[uniform(rng, 0, static_cast<int>(out.size()) - 1)];
    const int x = uniform(rng, 0, g.edge(e).group.order() - 1);
    acc = concat(g, acc, concat(g, concat(g, u, relator(g, e, x)), path_inverse(g, u)));
  }
  return closed(acc);
}

/// A closed word with at least one edge letter and no pinch, or nothing if
/// the attempt runs into a forced pinch.
inline std::optional<GoGWord> random_pinch_free(Rng& rng, const GraphOfGroups& g, int base, int steps) {
  PathWord p = close_by_tree(g, random_walk(rng, g, base, steps));
  if (p.edges.empty()) return std::nullopt;
  for (std::size_t k = 0; k + 1 < p.edges.size(); ++k) {
    if (p.edges[k + 1] != g.bar(p.edges[k])) continue;
    const int v = g.to(p.edges[k]);
    std::vector<int> outside;
    for (int x = 0; x < g.vertex(v).order(); ++x)
      if (!g.in_edge_image(p.edges[k + 1], x)) outside.push_back(x);
    if (outside.empty()) return std::nullopt;
    p.elements[k + 1] = outside[uniform(rng, 0, static_cast<int>(outside.size()) - 1)];
  }
  return closed(p);
}

/// Composites over all paths of length exactly 0..max_len from v, by levels.
inline std::vector<std::vector<int>> brute_force_path_homs(const GraphOfGroups& g, int v, int w, int max_len) {
  std::set<std::pair<int, std::vector<int>>> level, all;
  std::vector<int> id(g.vertex(v).order());
  std::iota(id.begin(), id.end(), 0);
  level.emplace(v, id);
  all = level;
  for (int len = 1; len <= max_len; ++len) {
    std::set<std::pair<int, std::vector<int>>> next;
    for (const auto& [u, h] : level)
      for (const auto& e : g.edges()) {
        if (e.from != u) continue;
        std::vector<int> img(h.size());
        for (std::size_t x = 0; x < h.size(); ++x) img[x] = (*e.ext)(h[x]);
        next.emplace(g.to(e.id), std::move(img));
      }
    all.insert(next.begin(), next.end());
    level = std::move(next);
  }
  std::vector<std::vector<int>> out;
  for (const auto& [u, h] : all)
    if (u == w) out.push_back(h);
  return out;
}

/// max |ι_e(G_e) ∩ g^{-1} ι_f(G_f) g| by explicit set intersection.
inline int malnormality_oracle(const GraphOfGroups& g) {
  int best = 1;
  for (const auto& e : g.edges())
    for (const auto& f : g.edges()) {
      if (e.from != f.from) continue;
      const auto& gv = g.vertex(e.from);
      std::set<int> ie;
      for (int x = 0; x < e.group.order(); ++x) ie.insert(e.incl(x));
      for (int c = 0; c < gv.order(); ++c) {
        if (e.id == f.id && ie.contains(c)) continue;
        std::set<int> conj;
        for (int y = 0; y < f.group.order(); ++y)
          conj.insert(gv.multiply(gv.multiply(gv.inverse(c), f.incl(y)), c));
        std::vector<int> both;
        std::set_intersection(ie.begin(), ie.end(), conj.begin(), conj.end(), std::back_inserter(both));
        best = std::max(best, static_cast<int>(both.size()));
      }
    }
  return best;
}

}  // namespace eqnoeth::testing
