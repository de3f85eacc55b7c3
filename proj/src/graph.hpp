// graph.hpp
// Simple undirected graphs, list-coloring instances, twin-class detection and
// the twin contraction G -> G^t with per-vertex demands.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "util.hpp"

namespace cwcolor {

// Vertices are 1-indexed. No self-loops, no parallel edges; insertion is
// idempotent.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int vertex_count() const { return n_; }
  std::uint64_t edge_count() const { return m_; }

  // Returns true if the edge was new. Throws ValidationError on self-loops or
  // out-of-range endpoints.
  bool add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  int add_vertex();  // returns the new vertex id

  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  std::vector<std::pair<int, int>> edges() const;  // u < v, sorted

  bool operator==(const Graph& o) const;

 private:
  void check_vertex(int v) const;
  int n_ = 0;
  std::uint64_t m_ = 0;
  std::vector<std::vector<int>> adj_;  // adj_[0] unused; each list sorted
};

struct ListColoringInstance {
  Graph graph;
  int k = 0;
  // lists[v] for v in 1..n; every list nonempty and a subset of {1..k}.
  std::vector<ColorMask> lists;

  ListColoringInstance() = default;
  ListColoringInstance(Graph g, int k_);
  void validate() const;
};

enum class TwinKind { TRUE_CLASS, FALSE_CLASS, SINGLETON };

struct TwinPartition {
  struct Class {
    std::vector<int> members;  // sorted ascending
    TwinKind kind;
  };
  std::vector<Class> classes;       // ordered by lowest member
  std::vector<int> class_of;        // vertex -> index into classes
};

struct Quotient {
  Graph graph;                 // one vertex per retained class
  std::vector<int> demand;     // demand[v] >= 1, v in 1..graph.n
  std::vector<int> class_map;  // original vertex -> quotient vertex
};

// The unique coarsest twin partition. Classes of size >= 2 are TRUE iff
// closed neighborhoods coincide; mixed classes cannot exist (asserted).
TwinPartition twin_classes(const Graph& g);

// Keeps the lowest-indexed member of each false-twin class. k-colorability is
// preserved for every k. The optional out parameter receives the map from old
// vertex ids to new ones (0 for deleted vertices).
Graph remove_false_twins(const Graph& g, std::vector<int>* old_to_new = nullptr);

// Collapses every true-twin class to its lowest member; demand = class size.
// Requires a graph without false twins.
Quotient contract_true_twins(const Graph& g);

// DIMACS: "p edge <n> <m>", edge lines "e <u> <v>", comments "c ...".
Graph parse_dimacs(std::istream& in);
Graph parse_dimacs_file(const std::string& path);
void write_dimacs(std::ostream& out, const Graph& g);

// Companion list file: lines "l <v> <c1> <c2> ...". Colors must lie in 1..k.
std::vector<ColorMask> parse_lists(std::istream& in, int n, int k);
std::vector<ColorMask> parse_lists_file(const std::string& path, int n, int k);
void write_lists(std::ostream& out, const ListColoringInstance& inst);

}  // namespace cwcolor
