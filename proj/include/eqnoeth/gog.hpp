#pragma once

// Finite graphs of groups with finite vertex groups. Directed edges come in
// pairs e, ē; each edge has a group G_e = G_ē and an injective inclusion
// ι_e: G_e -> G_{i(e)}. Elements of the fundamental group are closed-path
// words g_0 e_1 g_1 ... e_n g_n at a base vertex, subject to e ē = 1 and
// ē ι_e(x) e = ι_ē(x). A pinch e g ē with g in ι_ē(G_e) collapses to
// ι_e(ι_ē^{-1}(g)); a word without pinches and with an edge letter is
// nontrivial, so pinch reduction decides the word problem.
//
// Word grammar (whitespace separated tokens):
//   word  := token*
//   token := "g" vertex ":" index   element of G_vertex by table index
//          | "e" id                 edge letter
// Consecutive tokens that do not meet are joined by the path in the maximal
// tree, and the word is closed back to its base the same way. The base is
// the vertex of the first token (i(e) for an edge), or vertex 0 when empty.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqnoeth/fingrp.hpp"
#include "json.hpp"

namespace eqnoeth {

class GogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GogEdge {
  int id = 0;
  int bar = 0;
  int from = 0;  // i(e)
  FiniteGroup group;
  Homomorphism incl;                // ι_e: G_e -> G_{i(e)}
  std::optional<Homomorphism> ext;  // φ̄_e: G_{i(e)} -> G_{i(ē)} extending ι_ē ∘ ι_e^{-1}
};

class GraphOfGroups {
 public:
  /// Validates every invariant and throws GogError on the first failure.
  GraphOfGroups(std::vector<FiniteGroup> vertices, std::vector<GogEdge> edges);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const FiniteGroup& vertex(int v) const { return vertices_.at(v); }
  const std::vector<FiniteGroup>& vertices() const { return vertices_; }
  /// Edges sorted by id.
  const std::vector<GogEdge>& edges() const { return edges_; }
  const GogEdge& edge(int id) const;
  bool has_edge(int id) const { return position_.contains(id); }
  int bar(int id) const { return edge(id).bar; }
  int from(int id) const { return edge(id).from; }
  int to(int id) const { return edge(edge(id).bar).from; }
  bool has_extensions() const;

  /// ι_e^{-1}(x) for x in G_{i(e)}, or nothing when x is outside the image.
  std::optional<int> edge_preimage(int id, int x) const;
  bool in_edge_image(int id, int x) const { return edge_preimage(id, x).has_value(); }

  /// Edges of the breadth-first maximal tree from vertex 0 (both
  /// orientations), visiting edges by increasing id.
  const std::vector<int>& tree_edges() const { return tree_; }
  bool in_tree(int id) const;
  /// Edge letters of the tree path from u to v.
  std::vector<int> tree_path(int u, int v) const;

 private:
  std::vector<FiniteGroup> vertices_;
  std::vector<GogEdge> edges_;
  std::map<int, int> position_;
  std::vector<std::vector<int>> preimage_;  // per edge position, indexed by G_{i(e)}
  std::vector<int> parent_edge_;            // tree edge into each vertex, -1 at the root
  std::vector<int> depth_;
  std::vector<int> tree_;
};

GraphOfGroups gog_from_json(const nlohmann::json& j);
nlohmann::json gog_to_json(const GraphOfGroups& g);

// ---------------------------------------------------------------------------
// Words.

struct GoGWord {
  int base = 0;
  std::vector<int> elements{0};  // g_0 ... g_n
  std::vector<int> edges;        // e_1 ... e_n
  int edge_count() const { return static_cast<int>(edges.size()); }
  bool operator==(const GoGWord&) const = default;
};

/// Throws GogError unless the word is a closed path at its base with each
/// element in the right vertex group.
void check_word(const GraphOfGroups& g, const GoGWord& w);
/// v_0 ... v_n.
std::vector<int> word_vertices(const GraphOfGroups& g, const GoGWord& w);
GoGWord identity_word(int base);
GoGWord parse_gog_word(const GraphOfGroups& g, const std::string& text);
std::string to_string(const GraphOfGroups& g, const GoGWord& w);
GoGWord word_inverse(const GraphOfGroups& g, const GoGWord& w);
/// Both words must share a base.
GoGWord word_product(const GraphOfGroups& g, const GoGWord& a, const GoGWord& b);

struct PinchStep {
  int position = 0;     // index of the first edge letter of the pinch
  int edge = 0;         // e, the pinch being e g ē
  int edge_element = 0; // x in G_e with ι_ē(x) = g
  int middle = 0;       // g
  int replacement = 0;  // ι_e(x)
};

struct Reduction {
  GoGWord word;
  std::vector<PinchStep> trace;
};

/// Removes pinches until none remain. Without a seed the leftmost pinch is
/// taken each time; with a seed the pinch is drawn uniformly from all
/// current pinches.
Reduction britton_reduce(const GraphOfGroups& g, const GoGWord& w, std::optional<std::uint64_t> seed = {});
/// Applies one recorded step; throws GogError if it is not a pinch.
GoGWord apply_pinch(const GraphOfGroups& g, const GoGWord& w, const PinchStep& step);
/// Positions k at which edges k, k+1 form a pinch.
std::vector<int> pinch_positions(const GraphOfGroups& g, const GoGWord& w);
bool is_trivial(const GraphOfGroups& g, const GoGWord& w);

/// Decides h in ι_e(G_e) through triviality of e φ̄_e(h)^{-1} ē h.
bool edge_membership_test(const GraphOfGroups& g, int edge_id, int h);
GoGWord edge_membership_word(const GraphOfGroups& g, int edge_id, int h);

// ---------------------------------------------------------------------------
// Path homomorphisms and compatible collections.

/// All composites φ̄_{e_n} ∘ ... ∘ φ̄_{e_1}: G_v -> G_w over paths from v to
/// w (the empty path gives the identity when v = w), sorted by images.
std::vector<Homomorphism> path_homomorphisms(const GraphOfGroups& g, int v, int w);
std::vector<Homomorphism> closed_path_endomorphisms(const GraphOfGroups& g, int v);

struct CompatibleCollection {
  std::vector<Subgroup> normals;  // N_v per vertex
};

/// First edge id with ι_e^{-1}(N_{i(e)}) != ι_ē^{-1}(N_{i(ē)}), if any.
std::optional<int> incompatible_edge(const GraphOfGroups& g, const CompatibleCollection& c);
bool is_compatible(const GraphOfGroups& g, const CompatibleCollection& c);
/// N_v = intersection of h^{-1}(N) over h in path_homomorphisms(v, w).
CompatibleCollection compatible_from_seed(const GraphOfGroups& g, int w, const Subgroup& n);
CompatibleCollection trivial_collection(const GraphOfGroups& g);

struct QuotientGoG {
  GraphOfGroups graph;
  std::vector<Homomorphism> projections;  // G_v -> G_v / N_v
  /// The induced map on words; edge letters are unchanged.
  GoGWord map(const GoGWord& w) const;
};

/// G_v / N_v at each vertex and G_e / ι_e^{-1}(N_{i(e)}) on each edge. An
/// extension is carried over when it maps N_{i(e)} into N_{i(ē)}.
QuotientGoG quotient_gog(const GraphOfGroups& g, const CompatibleCollection& c);

struct RfWitness {
  int seed_vertex = -1;  // -1: the trivial collection
  std::vector<int> seed; // elements of the seed subgroup
  CompatibleCollection collection;
  GoGWord image;
  GoGWord reduced_image;
  int candidates = 0;
};

/// Finds a compatible collection whose quotient keeps w nontrivial. Seeds
/// run over vertices in order and their normal subgroups by increasing
/// index; the trivial collection is the last resort. Throws GogError when w
/// is trivial.
RfWitness rf_witness(const GraphOfGroups& g, const GoGWord& w);

// ---------------------------------------------------------------------------
// Almost malnormality and acylindricity constants.

struct Malnormality {
  int D = 1;  // at least 1
  // Triple attaining D, or -1 when no offending triple exists.
  int vertex = -1, e = -1, f = -1, g = -1;
};

/// Maximum of |ι_e(G_e) ∩ g^{-1} ι_f(G_f) g| over vertices v, edges e, f
/// with i(e) = i(f) = v and g in G_v, excluding e = f with g in ι_e(G_e).
Malnormality malnormality_constant(const GraphOfGroups& g);

struct AcylConstants {
  double d_eps = 0;  // 2ε + 1
  double n_eps = 0;  // 2D(2ε + 1)
};
AcylConstants acyl_constants(int D, double eps);

}  // namespace eqnoeth
