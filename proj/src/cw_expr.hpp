// cw_expr.hpp
// Clique-width expression DSL: a flat-arena AST with parse/serialize,
// evaluation to a labeled graph, width, and per-node live-label annotation.
// Expressions from the reduction pipeline reach hundreds of thousands of
// nodes, so every walk here is iterative.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "graph.hpp"
#include "util.hpp"

namespace cwcolor {

enum class CwKind : std::uint8_t { Intro, Union, Rename, Join };

// Node children always precede their parent in the arena, so iterating by
// index is a valid bottom-up order.
struct CwNode {
  CwKind kind;
  int a = 0;           // Intro: label; Rename: from; Join: first label
  int b = 0;           // Rename: to; Join: second label
  std::int32_t left = -1;   // Union: left child; Rename/Join: child
  std::int32_t right = -1;  // Union: right child
  ColorMask list = 0;  // optional leaf list (0 = unrestricted); gadget use

  bool operator==(const CwNode&) const = default;
};

struct CwExpr {
  std::vector<CwNode> nodes;
  std::int32_t root = -1;

  bool empty() const { return root < 0; }
  std::size_t size() const { return nodes.size(); }

  std::int32_t intro(int label, ColorMask list = 0);
  std::int32_t make_union(std::int32_t l, std::int32_t r);
  std::int32_t rename(int from, int to, std::int32_t child);
  std::int32_t join(int l1, int l2, std::int32_t child);  // l1 != l2

  bool has_lists() const;
  bool operator==(const CwExpr& o) const { return nodes == o.nodes && root == o.root; }
};

struct LabeledGraph {
  Graph graph;
  std::vector<int> label;  // vertex -> label, 1-indexed
};

// Per-node liveness annotation. live[t] holds node t's live labels in
// increasing order; a label is live when its class is nonempty and some edge
// of the final graph incident on it is still missing from G_t.
struct LivenessMap {
  std::vector<std::vector<int>> live;
  const std::vector<int>& at(std::int32_t node) const { return live[node]; }
  std::size_t max_live() const;
};

// Grammar: expr := (intro L) | (union expr expr) | (rename L L expr)
//                | (join L L expr), labels positive decimal integers.
// '#' starts a comment running to end of line. Errors carry line:column.
CwExpr parse_expr(const std::string& text);
CwExpr parse_expr_file(const std::string& path);

std::string serialize(const CwExpr& e);
void write_expr_file(const std::string& path, const CwExpr& e,
                     const std::string& header_comment = "");

// Evaluates to the labeled graph of the root; vertices are numbered by leaf
// order (left to right, 1-indexed). Joins are idempotent; vacuous joins are
// no-ops.
LabeledGraph evaluate(const CwExpr& e);

// Number of distinct labels appearing anywhere in e.
int width(const CwExpr& e);
std::int64_t leaf_count(const CwExpr& e);

LivenessMap annotate_liveness(const CwExpr& e);

// Leaf lists in vertex-numbering order (0 entries mean unrestricted).
std::vector<ColorMask> leaf_lists_in_order(const CwExpr& e);

// Convenience builders used by tests and the bench profiles.
CwExpr make_clique_expr(int n);         // two labels, n >= 1
CwExpr make_cycle_expr(int n);          // four labels, n >= 3
CwExpr make_clique_expr_wide(int n);    // n labels, peak live = n; bench
CwExpr make_path_expr(int n);

}  // namespace cwcolor
