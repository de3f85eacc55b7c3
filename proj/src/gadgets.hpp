// gadgets.hpp
// List-coloring gadget constructors: weak edges (forbid one ordered color
// pair on two endpoints), implication bundles (color c1 on u1 forces c2 on
// u2) and OR gadgets (some member of an independent set gets color 1), plus
// the two list-removal transformations.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cw_expr.hpp"
#include "graph.hpp"
#include "util.hpp"

namespace cwcolor {

struct GadgetRecord {
  enum class Kind : std::uint8_t { WeakEdge, Implication, OrGadget };
  Kind kind;
  std::vector<int> endpoints;  // weak/implication: {u1,u2}; OR: the member set
  int c1 = 0, c2 = 0;
  std::vector<int> internals;  // ids in creation order (OR: path order w0..ws)
};

// Grows a list-coloring instance; internal gadget vertices touch nothing
// outside their gadget except the declared endpoints.
class InstanceBuilder {
 public:
  explicit InstanceBuilder(int k);

  int add_vertex(ColorMask list = 0);  // 0 = full list
  void add_edge(int u, int v);

  // Rules out exactly the ordered pair (c1,c2) on (u1,u2). Three internal
  // vertices, four path edges; spare colors are the smallest admissible ones.
  // Requires k >= 3.
  int weak_edge(int u1, int u2, int c1, int c2);

  // k-1 weak edges; forbids color c1 on u1 together with any color != c2 on
  // u2.
  int implication(int u1, int u2, int c1, int c2);

  // Members must be pairwise non-adjacent and nonempty; their lists are set
  // to {1,2,3}. Internal path endpoints get lists {2} and {3}.
  int or_gadget(const std::vector<int>& members);

  int k() const { return inst_.k; }
  const ListColoringInstance& instance() const { return inst_; }
  ListColoringInstance take_instance() { return std::move(inst_); }
  const std::vector<GadgetRecord>& gadgets() const { return records_; }
  std::vector<GadgetRecord> take_gadgets() { return std::move(records_); }

 private:
  ListColoringInstance inst_;
  std::vector<GadgetRecord> records_;
};

// Internal-vertex lists of a (c1,c2)-weak edge, path order v1,v2,v3. Spare
// colors are the smallest ones outside {c1,c2} (resp. {c1} and {c1,c'}).
std::array<ColorMask, 3> weak_edge_lists(int c1, int c2, int k);

// List-removal, graph form: a k-clique c_1..c_k appended after the original
// vertices; each vertex with list L is joined to every c_i with i not in L.
// k-colorability of the result equals list-colorability of the input.
Graph delist_graph(const ListColoringInstance& inst);

// List-removal, expression form: every leaf gains k companion vertices on fresh
// labels l_1..l_k, joined per the leaf's list complement; the root gains all
// pairwise joins among l_1..l_k. Width grows by exactly k. Leaf lists of the
// result are cleared. first_fresh_label = 0 picks max label + 1.
CwExpr delist_cw(const CwExpr& e, int k, int first_fresh_label = 0);

}  // namespace cwcolor
