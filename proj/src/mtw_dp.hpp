// mtw_dp.hpp
// k-colorability via multi-coloring of the twin-contracted graph over a nice
// tree decomposition. Each quotient vertex v demands b(v) distinct colors
// (its true-twin class size); adjacent vertices need disjoint color sets, so
// per-bag states number at most (k choose floor(k/2))^|bag|.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "graph.hpp"
#include "util.hpp"

namespace cwcolor {

struct TreeDecomposition {
  int n = 0;                                  // vertex count of the graph
  std::vector<std::vector<int>> bags;         // bag ids are indices + 1
  std::vector<std::pair<int, int>> tree_edges;
  int declared_width = -1;

  int width() const;  // max bag size - 1 (-1 when there are no bags)
};

// PACE-2017 format: "s td <#bags> <width+1> <n>", "b <id> <v...>",
// bag-edge lines "<i> <j>", comments "c ...".
TreeDecomposition parse_td(std::istream& in);
TreeDecomposition parse_td_file(const std::string& path);
void write_td(std::ostream& out, const TreeDecomposition& td);

// Checks the three decomposition axioms plus tree-ness; throws
// ValidationError naming the offending vertex or edge.
void validate_td(const TreeDecomposition& td, const Graph& g);

struct NiceTreeDecomposition {
  enum class Kind : std::uint8_t { Leaf, IntroduceVertex, ForgetVertex, JoinBags };
  struct Node {
    Kind kind;
    int vertex = 0;                 // introduced / forgotten vertex
    std::int32_t left = -1, right = -1;
    std::vector<int> bag;           // sorted
  };
  std::vector<Node> nodes;          // children precede parents
  std::int32_t root = -1;
  int width() const;
};

// Same width; the root bag is empty and every leaf bag is empty.
NiceTreeDecomposition make_nice(const TreeDecomposition& td);

// Min-fill elimination ordering; valid but not optimal.
TreeDecomposition heuristic_td(const Graph& g);

// Twin contraction for multi-coloring: false-twin duplicates removed, true
// twin classes collapsed with their sizes as demands. With lists, twin
// classes are refined by list first (twins with different lists stay apart;
// e.g. the two pinned endpoints of a one-member OR gadget are false twins
// with lists {2} and {3}).
struct ListContraction {
  Quotient quotient;
  std::vector<int> orig_to_quot;   // every original vertex -> quotient vertex
  std::vector<ColorMask> allowed;  // per quotient vertex; empty without lists
};
ListContraction contract_for_multicoloring(const Graph& g,
                                           const std::vector<ColorMask>* lists = nullptr);

struct MtwOptions {
  std::uint64_t max_states = 50'000'000;  // per-node state guard
};
struct MtwStats {
  std::uint64_t peak_states = 1;
  std::uint64_t nodes = 0;
};

// Decides whether each vertex v can receive demand[v] distinct colors from
// {1..k} (restricted to allowed[v] when given) with adjacent sets disjoint.
// Demands above k reject immediately.
bool decide_multicolor(const Quotient& q, int k, const NiceTreeDecomposition& ntd,
                       const std::vector<ColorMask>* allowed = nullptr,
                       const MtwOptions& opt = {}, MtwStats* stats = nullptr);

// Full pipeline: remove false twins, contract true twins, decompose (the
// given td may describe either the quotient or the original graph; bags of
// the latter are contracted through the class map and re-validated), refine
// to a nice decomposition and run the multi-coloring DP.
bool decide_colorable_mtw(const Graph& g, int k, const TreeDecomposition* td = nullptr,
                          const MtwOptions& opt = {}, MtwStats* stats = nullptr);

// List-aware variant for gadget-generated instances. Requires all twins to
// share the same list (asserted); quotient vertices inherit the class list.
bool decide_list_colorable_mtw(const ListColoringInstance& inst,
                               const TreeDecomposition* td = nullptr,
                               const MtwOptions& opt = {}, MtwStats* stats = nullptr);

}  // namespace cwcolor
