#include "eqnoeth/gog.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <random>
#include <set>
#include <sstream>

namespace eqnoeth {

namespace {

std::string edge_label(int id) { return "edge " + std::to_string(id); }

}  // namespace

GraphOfGroups::GraphOfGroups(std::vector<FiniteGroup> vertices, std::vector<GogEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (vertices_.empty()) throw GogError("a graph of groups needs at least one vertex");
  std::sort(edges_.begin(), edges_.end(), [](const GogEdge& a, const GogEdge& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (!position_.emplace(edges_[i].id, static_cast<int>(i)).second)
      throw GogError("duplicate " + edge_label(edges_[i].id));
  }
  for (const auto& e : edges_) {
    if (e.from < 0 || e.from >= vertex_count()) throw GogError(edge_label(e.id) + ": initial vertex out of range");
    if (!position_.contains(e.bar)) throw GogError(edge_label(e.id) + ": reverse edge " + std::to_string(e.bar) + " missing");
    if (e.bar == e.id) throw GogError(edge_label(e.id) + ": an edge cannot be its own reverse");
    const auto& b = edges_[position_.at(e.bar)];
    if (b.bar != e.id) throw GogError(edge_label(e.id) + ": reverse of the reverse is not the edge");
    if (!(b.group == e.group)) throw GogError(edge_label(e.id) + ": edge group differs from that of its reverse");
    if (!(e.incl.source() == e.group)) throw GogError(edge_label(e.id) + ": inclusion source is not the edge group");
    if (!(e.incl.target() == vertices_[e.from])) throw GogError(edge_label(e.id) + ": inclusion target is not G_{i(e)}");
    if (!e.incl.injective()) throw GogError(edge_label(e.id) + ": inclusion is not injective");
  }
  for (const auto& e : edges_) {
    if (!e.ext) continue;
    const auto& b = edges_[position_.at(e.bar)];
    if (!(e.ext->source() == vertices_[e.from]) || !(e.ext->target() == vertices_[b.from]))
      throw GogError(edge_label(e.id) + ": extension must map G_{i(e)} to G_{i(ē)}");
    for (int x = 0; x < e.group.order(); ++x)
      if ((*e.ext)(e.incl(x)) != b.incl(x))
        throw GogError(edge_label(e.id) + ": extension does not restrict to ι_ē ∘ ι_e^{-1} (edge element " +
                       std::to_string(x) + ")");
  }
  preimage_.resize(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    preimage_[i].assign(vertices_[edges_[i].from].order(), -1);
    for (int x = 0; x < edges_[i].group.order(); ++x) preimage_[i][edges_[i].incl(x)] = x;
  }

  const int n = vertex_count();
  parent_edge_.assign(n, -1);
  depth_.assign(n, -1);
  depth_[0] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const auto& e : edges_) {
      if (e.from != u) continue;
      const int v = to(e.id);
      if (depth_[v] >= 0) continue;
      depth_[v] = depth_[u] + 1;
      parent_edge_[v] = e.id;
      tree_.push_back(e.id);
      tree_.push_back(e.bar);
      queue.push_back(v);
    }
  }
  for (int v = 0; v < n; ++v)
    if (depth_[v] < 0) throw GogError("graph is not connected: vertex " + std::to_string(v) + " unreachable from 0");
  std::sort(tree_.begin(), tree_.end());
}

const GogEdge& GraphOfGroups::edge(int id) const {
  auto it = position_.find(id);
  if (it == position_.end()) throw GogError("unknown " + edge_label(id));
  return edges_[it->second];
}

bool GraphOfGroups::has_extensions() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const GogEdge& e) { return e.ext.has_value(); });
}

std::optional<int> GraphOfGroups::edge_preimage(int id, int x) const {
  const auto& pre = preimage_.at(position_.at(id));
  if (x < 0 || x >= static_cast<int>(pre.size())) throw GogError("element out of range for " + edge_label(id));
  if (pre[x] < 0) return std::nullopt;
  return pre[x];
}

bool GraphOfGroups::in_tree(int id) const { return std::binary_search(tree_.begin(), tree_.end(), id); }

std::vector<int> GraphOfGroups::tree_path(int u, int v) const {
  if (u < 0 || u >= vertex_count() || v < 0 || v >= vertex_count()) throw GogError("tree path vertex out of range");
  std::vector<int> up, down;  // up: edges from u toward the meeting point; down: reversed tail into v
  while (u != v) {
    if (depth_[u] >= depth_[v]) {
      const int e = parent_edge_[u];
      up.push_back(bar(e));
      u = from(e);
    } else {
      const int e = parent_edge_[v];
      down.push_back(e);
      v = from(e);
    }
  }
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

// ---------------------------------------------------------------------------
// JSON.

GraphOfGroups gog_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
    throw GogError("graph JSON needs a \"vertices\" array");
  std::vector<FiniteGroup> vertices;
  for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
    const auto& v = j["vertices"][i];
    try {
      vertices.push_back(group_from_json(v.is_object() && v.contains("group") ? v["group"] : v));
    } catch (const std::exception& ex) {
      throw GogError("vertices[" + std::to_string(i) + "]: " + ex.what());
    }
  }
  const nlohmann::json edges_json = j.value("edges", nlohmann::json::array());
  if (!edges_json.is_array()) throw GogError("\"edges\" must be an array");
  std::map<int, FiniteGroup> groups;
  for (const auto& e : edges_json)
    if (e.is_object() && e.contains("group") && e.contains("id")) groups.emplace(e["id"].get<int>(), group_from_json(e["group"]));
  std::vector<GogEdge> edges;
  for (std::size_t i = 0; i < edges_json.size(); ++i) {
    const auto& e = edges_json[i];
    const std::string where = "edges[" + std::to_string(i) + "]";
    try {
      for (const char* key : {"id", "bar", "from", "incl"})
        if (!e.contains(key)) throw GogError(std::string("missing \"") + key + "\"");
      const int id = e["id"].get<int>();
      const int bar = e["bar"].get<int>();
      const int from = e["from"].get<int>();
      if (from < 0 || from >= static_cast<int>(vertices.size())) throw GogError("initial vertex out of range");
      FiniteGroup group;
      if (groups.contains(id))
        group = groups.at(id);
      else if (groups.contains(bar))
        group = groups.at(bar);
      else
        throw GogError("no edge group given for the edge or its reverse");
      Homomorphism incl(group, vertices[from], e["incl"].get<std::vector<int>>());
      std::optional<Homomorphism> ext;
      if (e.contains("ext") && !e["ext"].is_null()) {
        int target = -1;
        for (const auto& f : edges_json)
          if (f.contains("id") && f["id"].get<int>() == bar) target = f.value("from", -1);
        if (target < 0 || target >= static_cast<int>(vertices.size()))
          throw GogError("extension needs the reverse edge's initial vertex");
        ext.emplace(vertices[from], vertices[target], e["ext"].get<std::vector<int>>());
      }
      edges.push_back(GogEdge{id, bar, from, group, std::move(incl), std::move(ext)});
    } catch (const nlohmann::json::exception& ex) {
      throw GogError(where + ": " + ex.what());
    } catch (const std::exception& ex) {
      throw GogError(where + ": " + ex.what());
    }
  }
  return GraphOfGroups(std::move(vertices), std::move(edges));
}

nlohmann::json gog_to_json(const GraphOfGroups& g) {
  nlohmann::json out;
  out["vertices"] = nlohmann::json::array();
  for (const auto& v : g.vertices()) out["vertices"].push_back({{"group", group_to_json(v)}});
  out["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    nlohmann::json je{{"id", e.id}, {"bar", e.bar}, {"from", e.from}, {"group", group_to_json(e.group)},
                      {"incl", e.incl.images()}};
    if (e.ext) je["ext"] = e.ext->images();
    out["edges"].push_back(std::move(je));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Words.

std::vector<int> word_vertices(const GraphOfGroups& g, const GoGWord& w) {
  std::vector<int> vs{w.base};
  for (int e : w.edges) vs.push_back(g.to(e));
  return vs;
}

void check_word(const GraphOfGroups& g, const GoGWord& w) {
  if (w.base < 0 || w.base >= g.vertex_count()) throw GogError("word base vertex out of range");
  if (w.elements.size() != w.edges.size() + 1) throw GogError("a word with n edge letters needs n+1 vertex elements");
  int v = w.base;
  for (std::size_t j = 0; j < w.elements.size(); ++j) {
    if (j > 0) {
      const int e = w.edges[j - 1];
      if (!g.has_edge(e)) throw GogError("word uses unknown " + edge_label(e));
      if (g.from(e) != v)
        throw GogError("edge letter " + std::to_string(j) + " (" + edge_label(e) + ") does not start at vertex " +
                       std::to_string(v));
      v = g.to(e);
    }
    if (w.elements[j] < 0 || w.elements[j] >= g.vertex(v).order())
      throw GogError("vertex element " + std::to_string(j) + " out of range for vertex " + std::to_string(v));
  }
  if (v != w.base) throw GogError("word is not a closed path at its base vertex");
}

GoGWord identity_word(int base) { return GoGWord{base, {0}, {}}; }

namespace {

/// Appends an edge letter followed by the identity of its terminal vertex.
void push_edge(GoGWord& w, int e) {
  w.edges.push_back(e);
  w.elements.push_back(0);
}

int parse_int(const std::string& s, std::size_t& i, const std::string& token) {
  std::size_t start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (start == i) throw GogError("malformed token \"" + token + "\"");
  return std::stoi(s.substr(start, i - start));
}

}  // namespace

GoGWord parse_gog_word(const GraphOfGroups& g, const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  if (tokens.empty()) return identity_word(0);

  struct Token {
    bool is_edge;
    int a, b;
  };
  std::vector<Token> parsed;
  for (const auto& t : tokens) {
    std::size_t i = 1;
    if (t[0] == 'e') {
      const int id = parse_int(t, i, t);
      if (i != t.size()) throw GogError("malformed token \"" + t + "\"");
      if (!g.has_edge(id)) throw GogError("unknown " + edge_label(id) + " in word");
      parsed.push_back({true, id, 0});
    } else if (t[0] == 'g') {
      const int v = parse_int(t, i, t);
      if (i >= t.size() || t[i] != ':') throw GogError("malformed token \"" + t + "\"");
      ++i;
      const int x = parse_int(t, i, t);
      if (i != t.size()) throw GogError("malformed token \"" + t + "\"");
      if (v >= g.vertex_count()) throw GogError("vertex out of range in token \"" + t + "\"");
      if (x >= g.vertex(v).order()) throw GogError("element out of range in token \"" + t + "\"");
      parsed.push_back({false, v, x});
    } else {
      throw GogError("malformed token \"" + t + "\"");
    }
  }
  const int base = parsed.front().is_edge ? g.from(parsed.front().a) : parsed.front().a;
  GoGWord w = identity_word(base);
  int cur = base;
  auto walk_to = [&](int v) {
    for (int e : g.tree_path(cur, v)) push_edge(w, e);
    cur = v;
  };
  for (const auto& t : parsed) {
    if (t.is_edge) {
      walk_to(g.from(t.a));
      push_edge(w, t.a);
      cur = g.to(t.a);
    } else {
      walk_to(t.a);
      w.elements.back() = g.vertex(cur).multiply(w.elements.back(), t.b);
    }
  }
  walk_to(base);
  return w;
}

std::string to_string(const GraphOfGroups& g, const GoGWord& w) {
  check_word(g, w);
  const auto vs = word_vertices(g, w);
  std::string s;
  auto add = [&](const std::string& t) {
    if (!s.empty()) s += ' ';
    s += t;
  };
  for (std::size_t j = 0; j < w.elements.size(); ++j) {
    if (j > 0) add("e" + std::to_string(w.edges[j - 1]));
    if (w.elements[j] != 0) add("g" + std::to_string(vs[j]) + ":" + std::to_string(w.elements[j]));
  }
  return s.empty() ? "g" + std::to_string(w.base) + ":0" : s;
}

GoGWord word_inverse(const GraphOfGroups& g, const GoGWord& w) {
  check_word(g, w);
  const auto vs = word_vertices(g, w);
  GoGWord out{w.base, {}, {}};
  for (std::size_t j = w.elements.size(); j-- > 0;) {
    out.elements.push_back(g.vertex(vs[j]).inverse(w.elements[j]));
    if (j > 0) out.edges.push_back(g.bar(w.edges[j - 1]));
  }
  return out;
}

GoGWord word_product(const GraphOfGroups& g, const GoGWord& a, const GoGWord& b) {
  check_word(g, a);
  check_word(g, b);
  if (a.base != b.base) throw GogError("words have different base vertices");
  GoGWord out = a;
  out.elements.back() = g.vertex(a.base).multiply(out.elements.back(), b.elements.front());
  out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
  out.elements.insert(out.elements.end(), b.elements.begin() + 1, b.elements.end());
  return out;
}

// ---------------------------------------------------------------------------
// Pinch reduction.

namespace {

std::optional<PinchStep> pinch_at(const GraphOfGroups& g, const GoGWord& w, int k) {
  const int e = w.edges[k];
  if (w.edges[k + 1] != g.bar(e)) return std::nullopt;
  const int middle = w.elements[k + 1];
  const auto x = g.edge_preimage(g.bar(e), middle);
  if (!x) return std::nullopt;
  return PinchStep{k, e, *x, middle, g.edge(e).incl(*x)};
}

void collapse(const GraphOfGroups& g, GoGWord& w, const PinchStep& s, int vertex) {
  const auto& gv = g.vertex(vertex);
  const int k = s.position;
  w.elements[k] = gv.multiply(gv.multiply(w.elements[k], s.replacement), w.elements[k + 2]);
  w.elements.erase(w.elements.begin() + k + 1, w.elements.begin() + k + 3);
  w.edges.erase(w.edges.begin() + k, w.edges.begin() + k + 2);
}

}  // namespace

std::vector<int> pinch_positions(const GraphOfGroups& g, const GoGWord& w) {
  std::vector<int> out;
  for (int k = 0; k + 1 < w.edge_count(); ++k)
    if (pinch_at(g, w, k)) out.push_back(k);
  return out;
}

GoGWord apply_pinch(const GraphOfGroups& g, const GoGWord& w, const PinchStep& step) {
  if (step.position < 0 || step.position + 1 >= w.edge_count()) throw GogError("pinch position out of range");
  const int k = step.position;
  const int e = w.edges[k];
  if (e != step.edge || w.edges[k + 1] != g.bar(e)) throw GogError("recorded pinch does not match the word");
  const auto& edge = g.edge(e);
  const auto& reverse = g.edge(edge.bar);
  if (step.edge_element < 0 || step.edge_element >= edge.group.order()) throw GogError("edge element out of range");
  if (reverse.incl(step.edge_element) != w.elements[k + 1] || step.middle != w.elements[k + 1])
    throw GogError("middle element is not the recorded ι_ē image");
  if (edge.incl(step.edge_element) != step.replacement) throw GogError("replacement is not the recorded ι_e image");
  GoGWord out = w;
  collapse(g, out, step, edge.from);
  return out;
}

Reduction britton_reduce(const GraphOfGroups& g, const GoGWord& w, std::optional<std::uint64_t> seed) {
  check_word(g, w);
  Reduction r{w, {}};
  auto& cur = r.word;
  if (!seed) {
    int k = 0;
    while (k + 1 < cur.edge_count()) {
      auto step = pinch_at(g, cur, k);
      if (!step) {
        ++k;
        continue;
      }
      collapse(g, cur, *step, g.from(step->edge));
      r.trace.push_back(*step);
      k = std::max(0, k - 1);
    }
    return r;
  }
  std::mt19937_64 rng(*seed);
  for (auto ps = pinch_positions(g, cur); !ps.empty(); ps = pinch_positions(g, cur)) {
    std::uniform_int_distribution<std::size_t> pick(0, ps.size() - 1);
    const auto step = *pinch_at(g, cur, ps[pick(rng)]);
    collapse(g, cur, step, g.from(step.edge));
    r.trace.push_back(step);
  }
  return r;
}

bool is_trivial(const GraphOfGroups& g, const GoGWord& w) {
  const auto r = britton_reduce(g, w);
  return r.word.edges.empty() && r.word.elements.front() == 0;
}

GoGWord edge_membership_word(const GraphOfGroups& g, int edge_id, int h) {
  const auto& e = g.edge(edge_id);
  if (!e.ext) throw GogError(edge_label(edge_id) + " has no extension");
  if (h < 0 || h >= g.vertex(e.from).order()) throw GogError("element out of range for the initial vertex");
  const int target = g.to(edge_id);
  return GoGWord{e.from, {0, g.vertex(target).inverse((*e.ext)(h)), h}, {edge_id, e.bar}};
}

bool edge_membership_test(const GraphOfGroups& g, int edge_id, int h) {
  return is_trivial(g, edge_membership_word(g, edge_id, h));
}

// ---------------------------------------------------------------------------
// Path homomorphisms.

std::vector<Homomorphism> path_homomorphisms(const GraphOfGroups& g, int v, int w) {
  if (v < 0 || v >= g.vertex_count() || w < 0 || w >= g.vertex_count()) throw GogError("vertex out of range");
  if (!g.has_extensions()) throw GogError("path homomorphisms need an extension on every edge");
  std::set<std::pair<int, std::vector<int>>> seen;
  std::deque<std::pair<int, std::vector<int>>> queue;
  std::vector<int> id(g.vertex(v).order());
  for (int x = 0; x < g.vertex(v).order(); ++x) id[x] = x;
  seen.emplace(v, id);
  queue.emplace_back(v, std::move(id));
  while (!queue.empty()) {
    auto [u, images] = std::move(queue.front());
    queue.pop_front();
    for (const auto& e : g.edges()) {
      if (e.from != u) continue;
      std::vector<int> next(images.size());
      for (std::size_t x = 0; x < images.size(); ++x) next[x] = (*e.ext)(images[x]);
      const int t = g.to(e.id);
      if (seen.emplace(t, next).second) queue.emplace_back(t, std::move(next));
    }
  }
  std::vector<Homomorphism> out;
  for (const auto& [u, images] : seen)
    if (u == w) out.push_back(Homomorphism::trusted(g.vertex(v), g.vertex(w), images));
  return out;
}

std::vector<Homomorphism> closed_path_endomorphisms(const GraphOfGroups& g, int v) {
  return path_homomorphisms(g, v, v);
}

// ---------------------------------------------------------------------------
// Compatible collections.

std::optional<int> incompatible_edge(const GraphOfGroups& g, const CompatibleCollection& c) {
  if (c.normals.size() != static_cast<std::size_t>(g.vertex_count()))
    throw GogError("collection needs one subgroup per vertex");
  for (const auto& e : g.edges()) {
    const auto& b = g.edge(e.bar);
    for (int x = 0; x < e.group.order(); ++x)
      if (c.normals[e.from].contains(e.incl(x)) != c.normals[b.from].contains(b.incl(x))) return e.id;
  }
  return std::nullopt;
}

bool is_compatible(const GraphOfGroups& g, const CompatibleCollection& c) { return !incompatible_edge(g, c); }

CompatibleCollection compatible_from_seed(const GraphOfGroups& g, int w, const Subgroup& n) {
  if (w < 0 || w >= g.vertex_count()) throw GogError("seed vertex out of range");
  if (!(n.parent() == g.vertex(w))) throw GogError("seed subgroup is not in the seed vertex group");
  if (!is_normal(n)) throw GogError("seed subgroup is not normal");
  CompatibleCollection c;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto homs = path_homomorphisms(g, v, w);
    std::vector<int> keep;
    for (int x = 0; x < g.vertex(v).order(); ++x)
      if (std::all_of(homs.begin(), homs.end(), [&](const Homomorphism& h) { return n.contains(h(x)); }))
        keep.push_back(x);
    c.normals.emplace_back(g.vertex(v), std::move(keep));
  }
  return c;
}

CompatibleCollection trivial_collection(const GraphOfGroups& g) {
  CompatibleCollection c;
  for (const auto& v : g.vertices()) c.normals.emplace_back(v, std::vector<int>{0});
  return c;
}

GoGWord QuotientGoG::map(const GoGWord& w) const {
  GoGWord out = w;
  const auto vs = word_vertices(graph, w);
  for (std::size_t j = 0; j < w.elements.size(); ++j) out.elements[j] = projections[vs[j]](w.elements[j]);
  return out;
}

QuotientGoG quotient_gog(const GraphOfGroups& g, const CompatibleCollection& c) {
  if (auto bad = incompatible_edge(g, c)) throw GogError("collection is not compatible at " + edge_label(*bad));
  std::vector<FiniteGroup> vertices;
  std::vector<Homomorphism> projections;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!is_normal(c.normals[v])) throw GogError("N_" + std::to_string(v) + " is not normal");
    auto q = quotient(g.vertex(v), c.normals[v]);
    vertices.push_back(q.group);
    projections.push_back(q.projection);
  }
  // The edge quotient is shared by e and ē; build it once per pair.
  std::map<int, QuotientResult> edge_quotients;
  for (const auto& e : g.edges()) {
    if (edge_quotients.contains(e.bar)) continue;
    std::vector<int> kernel;
    for (int x = 0; x < e.group.order(); ++x)
      if (c.normals[e.from].contains(e.incl(x))) kernel.push_back(x);
    edge_quotients.emplace(e.id, quotient(e.group, Subgroup(e.group, std::move(kernel))));
  }
  std::vector<GogEdge> edges;
  for (const auto& e : g.edges()) {
    const auto& eq = edge_quotients.contains(e.id) ? edge_quotients.at(e.id) : edge_quotients.at(e.bar);
    std::vector<int> incl(eq.group.order());
    for (int k = 0; k < eq.group.order(); ++k) incl[k] = projections[e.from](e.incl(eq.representatives[k]));
    Homomorphism hat(eq.group, vertices[e.from], std::move(incl));
    if (!hat.injective()) throw GogError("induced inclusion on " + edge_label(e.id) + " is not injective");
    std::optional<Homomorphism> ext;
    if (e.ext) {
      const int t = g.to(e.id);
      bool defined = true;
      for (int x : c.normals[e.from].elements())
        if (!c.normals[t].contains((*e.ext)(x))) defined = false;
      if (defined) {
        const auto& q = quotient(g.vertex(e.from), c.normals[e.from]);
        std::vector<int> images(vertices[e.from].order());
        for (int k = 0; k < vertices[e.from].order(); ++k) images[k] = projections[t]((*e.ext)(q.representatives[k]));
        ext = Homomorphism::trusted(vertices[e.from], vertices[t], std::move(images));
      }
    }
    edges.push_back(GogEdge{e.id, e.bar, e.from, eq.group, std::move(hat), std::move(ext)});
  }
  return QuotientGoG{GraphOfGroups(std::move(vertices), std::move(edges)), std::move(projections)};
}

RfWitness rf_witness(const GraphOfGroups& g, const GoGWord& w) {
  check_word(g, w);
  if (is_trivial(g, w)) throw GogError("word is trivial; no quotient can separate it from 1");
  int candidates = 0;
  auto attempt = [&](const CompatibleCollection& c) -> std::optional<RfWitness> {
    ++candidates;
    auto q = quotient_gog(g, c);
    auto image = q.map(w);
    auto reduced = britton_reduce(q.graph, image).word;
    if (reduced.edges.empty() && reduced.elements.front() == 0) return std::nullopt;
    return RfWitness{-1, {}, c, std::move(image), std::move(reduced), 0};
  };
  if (g.has_extensions()) {
    for (int v = 0; v < g.vertex_count(); ++v)
      for (const auto& n : normal_subgroups(g.vertex(v))) {
        if (auto r = attempt(compatible_from_seed(g, v, n))) {
          r->seed_vertex = v;
          r->seed = n.elements();
          r->candidates = candidates;
          return *r;
        }
      }
  }
  auto r = attempt(trivial_collection(g));
  if (!r) throw GogError("no compatible collection separates the word");
  r->candidates = candidates;
  return *r;
}

// ---------------------------------------------------------------------------
// Malnormality.

Malnormality malnormality_constant(const GraphOfGroups& g) {
  Malnormality out;
  int best = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& gv = g.vertex(v);
    std::vector<const GogEdge*> at;
    for (const auto& e : g.edges())
      if (e.from == v) at.push_back(&e);
    for (const auto* e : at)
      for (const auto* f : at) {
        const auto fimg = f->incl.image().elements();
        for (int x = 0; x < gv.order(); ++x) {
          if (e == f && g.in_edge_image(e->id, x)) continue;
          int count = 0;
          for (int y : fimg)
            if (g.in_edge_image(e->id, gv.conjugate(y, x))) ++count;
          if (count > best) {
            best = count;
            out = Malnormality{0, v, e->id, f->id, x};
          }
        }
      }
  }
  out.D = std::max(best, 1);
  return out;
}

AcylConstants acyl_constants(int D, double eps) {
  if (D < 1) throw GogError("the malnormality constant is at least 1");
  if (eps < 0) throw GogError("ε must be nonnegative");
  return AcylConstants{2 * eps + 1, 2.0 * D * (2 * eps + 1)};
}

}  // namespace eqnoeth
