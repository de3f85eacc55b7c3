#include "cw_expr.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

namespace cwcolor {

static void check_label(int label) {
  if (label < 1) throw ValidationError("labels must be positive");
}

std::int32_t CwExpr::intro(int label, ColorMask list) {
  check_label(label);
  CwNode n;
  n.kind = CwKind::Intro;
  n.a = label;
  n.list = list;
  nodes.push_back(n);
  root = static_cast<std::int32_t>(nodes.size()) - 1;
  return root;
}

std::int32_t CwExpr::make_union(std::int32_t l, std::int32_t r) {
  CwNode n;
  n.kind = CwKind::Union;
  n.left = l;
  n.right = r;
  nodes.push_back(n);
  root = static_cast<std::int32_t>(nodes.size()) - 1;
  return root;
}

std::int32_t CwExpr::rename(int from, int to, std::int32_t child) {
  check_label(from);
  check_label(to);
  if (from == to) throw ValidationError("rename with equal labels");
  CwNode n;
  n.kind = CwKind::Rename;
  n.a = from;
  n.b = to;
  n.left = child;
  nodes.push_back(n);
  root = static_cast<std::int32_t>(nodes.size()) - 1;
  return root;
}

std::int32_t CwExpr::join(int l1, int l2, std::int32_t child) {
  check_label(l1);
  check_label(l2);
  if (l1 == l2) throw ValidationError("join with equal labels");
  CwNode n;
  n.kind = CwKind::Join;
  n.a = l1;
  n.b = l2;
  n.left = child;
  nodes.push_back(n);
  root = static_cast<std::int32_t>(nodes.size()) - 1;
  return root;
}

bool CwExpr::has_lists() const {
  for (const auto& n : nodes)
    if (n.kind == CwKind::Intro && n.list != 0) return true;
  return false;
}

namespace {

struct Token {
  enum Kind { LParen, RParen, Symbol, End } kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) {}
  Token next() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
        continue;
      }
      if (c == '\n') { ++line_; col_ = 1; ++pos_; continue; }
      if (c == ' ' || c == '\t' || c == '\r') { ++col_; ++pos_; continue; }
      int line = line_, col = col_;
      if (c == '(') { ++pos_; ++col_; return {Token::LParen, "(", line, col}; }
      if (c == ')') { ++pos_; ++col_; return {Token::RParen, ")", line, col}; }
      std::string sym;
      while (pos_ < s_.size() && !strchr_ws(s_[pos_])) {
        sym += s_[pos_++];
        ++col_;
      }
      return {Token::Symbol, sym, line, col};
    }
    return {Token::End, "", line_, col_};
  }

 private:
  static bool strchr_ws(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '(' || c == ')' || c == '#';
  }
  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

[[noreturn]] void fail(const Token& t, const std::string& what) {
  throw ParseError(std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + what);
}

int parse_label(const Token& t) {
  if (t.kind != Token::Symbol) fail(t, "expected a label");
  long long v = 0;
  for (char c : t.text) {
    if (c < '0' || c > '9') fail(t, "labels must be decimal integers, got '" + t.text + "'");
    v = v * 10 + (c - '0');
    if (v > 0x7fffffffLL) fail(t, "label exceeds 2^31-1");
  }
  if (t.text.empty() || v == 0) fail(t, "label 0 is not allowed");
  return static_cast<int>(v);
}

}  // namespace

CwExpr parse_expr(const std::string& text) {
  // Iterative recursive-descent: a frame per open operator. Nesting depth in
  // generated expressions is far too deep for the call stack.
  struct Frame {
    CwKind kind;
    int a = 0, b = 0;
    int labels_needed = 0;
    int children_needed = 0;
    std::vector<std::int32_t> children;
    Token open;
  };
  CwExpr e;
  Lexer lex(text);
  std::vector<Frame> stack;
  std::int32_t done = -1;  // a completed expression waiting for a parent

  auto attach = [&](std::int32_t node, const Token& at) {
    if (stack.empty()) {
      if (done != -1) fail(at, "more than one top-level expression");
      done = node;
    } else {
      Frame& f = stack.back();
      if (static_cast<int>(f.children.size()) >= f.children_needed)
        fail(at, "too many sub-expressions");
      f.children.push_back(node);
    }
  };

  for (Token t = lex.next(); t.kind != Token::End; t = lex.next()) {
    if (t.kind == Token::LParen) {
      if (!stack.empty() && stack.back().labels_needed > 0)
        fail(t, "expected a label, got '('");
      Token op = lex.next();
      if (op.kind != Token::Symbol) fail(op, "expected an operator name");
      Frame f;
      f.open = t;
      if (op.text == "intro") { f.kind = CwKind::Intro; f.labels_needed = 1; }
      else if (op.text == "union") { f.kind = CwKind::Union; f.children_needed = 2; }
      else if (op.text == "rename") { f.kind = CwKind::Rename; f.labels_needed = 2; f.children_needed = 1; }
      else if (op.text == "join") { f.kind = CwKind::Join; f.labels_needed = 2; f.children_needed = 1; }
      else fail(op, "unknown operator '" + op.text + "'");
      stack.push_back(std::move(f));
    } else if (t.kind == Token::RParen) {
      if (stack.empty()) fail(t, "unmatched ')'");
      Frame f = std::move(stack.back());
      stack.pop_back();
      if (f.labels_needed > 0) fail(t, "missing label");
      if (static_cast<int>(f.children.size()) != f.children_needed)
        fail(t, "missing sub-expression");
      std::int32_t node;
      try {
        switch (f.kind) {
          case CwKind::Intro: node = e.intro(f.a); break;
          case CwKind::Union: node = e.make_union(f.children[0], f.children[1]); break;
          case CwKind::Rename: node = e.rename(f.a, f.b, f.children[0]); break;
          case CwKind::Join: node = e.join(f.a, f.b, f.children[0]); break;
          default: fail(t, "internal parser state");
        }
      } catch (const ValidationError& err) {
        fail(t, err.what());
      }
      attach(node, t);
    } else {
      if (stack.empty()) fail(t, "expected '('");
      Frame& f = stack.back();
      if (f.labels_needed == 0) fail(t, "unexpected token '" + t.text + "'");
      int lbl = parse_label(t);
      if (f.labels_needed == 2 || (f.kind == CwKind::Intro)) {
        if (f.a == 0) f.a = lbl; else f.b = lbl;
      } else {
        f.b = lbl;
      }
      --f.labels_needed;
    }
  }
  if (!stack.empty()) fail(stack.back().open, "unclosed '('");
  if (done == -1) throw ParseError("empty input");
  e.root = done;
  return e;
}

CwExpr parse_expr_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_expr(ss.str());
}

std::string serialize(const CwExpr& e) {
  if (e.empty()) throw ValidationError("cannot serialize an empty expression");
  std::string out;
  out.reserve(e.nodes.size() * 12);
  // Work items are either a node to expand or a literal piece of text.
  struct Item { std::int32_t node; const char* text; };
  std::vector<Item> stack{{e.root, nullptr}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.text) { out += it.text; continue; }
    const CwNode& n = e.nodes[it.node];
    switch (n.kind) {
      case CwKind::Intro:
        out += "(intro " + std::to_string(n.a) + ")";
        break;
      case CwKind::Union:
        out += "(union ";
        stack.push_back({-1, ")"});
        stack.push_back({n.right, nullptr});
        stack.push_back({-1, " "});
        stack.push_back({n.left, nullptr});
        break;
      case CwKind::Rename:
        out += "(rename " + std::to_string(n.a) + " " + std::to_string(n.b) + " ";
        stack.push_back({-1, ")"});
        stack.push_back({n.left, nullptr});
        break;
      case CwKind::Join:
        out += "(join " + std::to_string(n.a) + " " + std::to_string(n.b) + " ";
        stack.push_back({-1, ")"});
        stack.push_back({n.left, nullptr});
        break;
    }
  }
  return out;
}

void write_expr_file(const std::string& path, const CwExpr& e,
                     const std::string& header_comment) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  if (!header_comment.empty()) out << "# " << header_comment << "\n";
  out << serialize(e) << "\n";
}

namespace {

// Shared iterative post-order walk (left child before right). Calls visit(t)
// after both children of t have been visited.
template <typename Visit>
void postorder(const CwExpr& e, Visit&& visit) {
  if (e.empty()) throw ValidationError("empty expression");
  struct Item { std::int32_t node; bool expanded; };
  std::vector<Item> stack{{e.root, false}};
  while (!stack.empty()) {
    auto [t, expanded] = stack.back();
    stack.pop_back();
    const CwNode& n = e.nodes[t];
    if (expanded || n.kind == CwKind::Intro) {
      visit(t);
      continue;
    }
    stack.push_back({t, true});
    if (n.kind == CwKind::Union) stack.push_back({n.right, false});
    stack.push_back({n.left, false});
  }
}

struct EvalData {
  LabeledGraph lg;
  std::vector<std::uint64_t> new_edges;  // per node; nonzero only at joins
  std::vector<std::int32_t> leaf_vertex; // per node; set at intros
};

EvalData evaluate_ex(const CwExpr& e) {
  EvalData out;
  out.new_edges.assign(e.nodes.size(), 0);
  out.leaf_vertex.assign(e.nodes.size(), 0);

  std::int64_t n = leaf_count(e);
  out.lg.graph = Graph(static_cast<int>(n));
  out.lg.label.assign(n + 1, 0);

  // label -> vertices carrying it in the subgraph of the current node
  using LabelMap = std::map<int, std::vector<int>>;
  std::vector<LabelMap> pending(e.nodes.size());
  int next_vertex = 0;

  postorder(e, [&](std::int32_t t) {
    const CwNode& node = e.nodes[t];
    switch (node.kind) {
      case CwKind::Intro: {
        int v = ++next_vertex;
        out.leaf_vertex[t] = v;
        out.lg.label[v] = node.a;
        pending[t][node.a] = {v};
        break;
      }
      case CwKind::Union: {
        LabelMap m = std::move(pending[node.left]);
        for (auto& [lbl, verts] : pending[node.right]) {
          auto& dst = m[lbl];
          dst.insert(dst.end(), verts.begin(), verts.end());
        }
        pending[node.right].clear();
        pending[t] = std::move(m);
        break;
      }
      case CwKind::Rename: {
        LabelMap m = std::move(pending[node.left]);
        auto it = m.find(node.a);
        if (it != m.end()) {
          auto& dst = m[node.b];
          dst.insert(dst.end(), it->second.begin(), it->second.end());
          m.erase(node.a);
          for (int v : m[node.b]) out.lg.label[v] = node.b;
        }
        pending[t] = std::move(m);
        break;
      }
      case CwKind::Join: {
        LabelMap m = std::move(pending[node.left]);
        auto i1 = m.find(node.a), i2 = m.find(node.b);
        if (i1 != m.end() && i2 != m.end()) {
          std::uint64_t added = 0;
          for (int u : i1->second)
            for (int v : i2->second)
              if (out.lg.graph.add_edge(u, v)) ++added;
          out.new_edges[t] = added;
        }
        pending[t] = std::move(m);
        break;
      }
    }
  });
  return out;
}

}  // namespace

LabeledGraph evaluate(const CwExpr& e) { return std::move(evaluate_ex(e).lg); }

int width(const CwExpr& e) {
  std::unordered_set<int> labels;
  for (const auto& n : e.nodes) {
    if (n.kind == CwKind::Intro) labels.insert(n.a);
    else if (n.kind != CwKind::Union) { labels.insert(n.a); labels.insert(n.b); }
  }
  return static_cast<int>(labels.size());
}

std::int64_t leaf_count(const CwExpr& e) {
  std::int64_t n = 0;
  for (const auto& node : e.nodes)
    if (node.kind == CwKind::Intro) ++n;
  return n;
}

std::size_t LivenessMap::max_live() const {
  std::size_t m = 0;
  for (const auto& l : live) m = std::max(m, l.size());
  return m;
}

LivenessMap annotate_liveness(const CwExpr& e) {
  EvalData ev = evaluate_ex(e);
  const Graph& g = ev.lg.graph;

  // Per label: class size, sum of final degrees, sum of current degrees.
  // Classes only ever merge, so these aggregates compose without vertex sets.
  struct Stat { std::int64_t cnt = 0, deg_final = 0, deg_cur = 0; };
  using StatMap = std::map<int, Stat>;
  std::vector<StatMap> pending(e.nodes.size());
  LivenessMap lm;
  lm.live.assign(e.nodes.size(), {});

  auto emit_live = [&](std::int32_t t, const StatMap& m) {
    auto& lv = lm.live[t];
    for (const auto& [lbl, st] : m) {
      if (st.deg_cur > st.deg_final)
        throw ValidationError("liveness bookkeeping underflow at label " + std::to_string(lbl));
      if (st.cnt > 0 && st.deg_final > st.deg_cur) lv.push_back(lbl);
    }
  };

  postorder(e, [&](std::int32_t t) {
    const CwNode& node = e.nodes[t];
    switch (node.kind) {
      case CwKind::Intro: {
        int v = ev.leaf_vertex[t];
        pending[t][node.a] = {1, g.degree(v), 0};
        break;
      }
      case CwKind::Union: {
        StatMap m = std::move(pending[node.left]);
        for (auto& [lbl, st] : pending[node.right]) {
          Stat& d = m[lbl];
          d.cnt += st.cnt;
          d.deg_final += st.deg_final;
          d.deg_cur += st.deg_cur;
        }
        pending[node.right].clear();
        pending[t] = std::move(m);
        break;
      }
      case CwKind::Rename: {
        StatMap m = std::move(pending[node.left]);
        auto it = m.find(node.a);
        if (it != m.end()) {
          Stat& d = m[node.b];
          d.cnt += it->second.cnt;
          d.deg_final += it->second.deg_final;
          d.deg_cur += it->second.deg_cur;
          m.erase(node.a);
        }
        pending[t] = std::move(m);
        break;
      }
      case CwKind::Join: {
        StatMap m = std::move(pending[node.left]);
        std::uint64_t added = ev.new_edges[t];
        if (added > 0) {
          // A join that adds edges must touch two live classes; a finished
          // class gaining an edge would contradict the liveness definition.
          const auto& child_live = lm.live[node.left];
          bool a_live = std::binary_search(child_live.begin(), child_live.end(), node.a);
          bool b_live = std::binary_search(child_live.begin(), child_live.end(), node.b);
          if (!a_live || !b_live)
            throw ValidationError("join adds edges to a non-live label class");
          m[node.a].deg_cur += static_cast<std::int64_t>(added);
          m[node.b].deg_cur += static_cast<std::int64_t>(added);
        }
        pending[t] = std::move(m);
        break;
      }
    }
    emit_live(t, pending[t]);
  });

  if (!lm.live[e.root].empty())
    throw ValidationError("root has live labels; expression bookkeeping broken");
  return lm;
}

std::vector<ColorMask> leaf_lists_in_order(const CwExpr& e) {
  std::vector<ColorMask> out;
  postorder(e, [&](std::int32_t t) {
    if (e.nodes[t].kind == CwKind::Intro) out.push_back(e.nodes[t].list);
  });
  return out;
}

CwExpr make_clique_expr(int n) {
  if (n < 1) throw ValidationError("clique size must be >= 1");
  CwExpr e;
  std::int32_t acc = e.intro(1);
  for (int i = 2; i <= n; ++i) {
    acc = e.make_union(acc, e.intro(2));
    acc = e.join(1, 2, acc);
    acc = e.rename(2, 1, acc);
  }
  e.root = acc;
  return e;
}

CwExpr make_cycle_expr(int n) {
  if (n < 3) throw ValidationError("cycle length must be >= 3");
  // Label roles: 1 = first vertex, 2 = current path end, 3 = retired interior,
  // 4 = freshly introduced vertex.
  CwExpr e;
  std::int32_t acc = e.intro(1);
  acc = e.make_union(acc, e.intro(2));
  acc = e.join(1, 2, acc);
  for (int i = 3; i <= n; ++i) {
    acc = e.make_union(acc, e.intro(4));
    acc = e.join(2, 4, acc);
    acc = e.rename(2, 3, acc);
    acc = e.rename(4, 2, acc);
  }
  acc = e.join(1, 2, acc);
  e.root = acc;
  return e;
}

CwExpr make_clique_expr_wide(int n) {
  if (n < 1) throw ValidationError("clique size must be >= 1");
  CwExpr e;
  std::int32_t acc = e.intro(1);
  for (int i = 2; i <= n; ++i) acc = e.make_union(acc, e.intro(i));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) acc = e.join(i, j, acc);
  e.root = acc;
  return e;
}

CwExpr make_path_expr(int n) {
  if (n < 1) throw ValidationError("path length must be >= 1");
  CwExpr e;
  std::int32_t acc = e.intro(1);
  if (n == 1) { e.root = acc; return e; }
  acc = e.make_union(acc, e.intro(2));
  acc = e.join(1, 2, acc);
  for (int i = 3; i <= n; ++i) {
    acc = e.make_union(acc, e.intro(4));
    acc = e.join(2, 4, acc);
    acc = e.rename(2, 3, acc);
    acc = e.rename(4, 2, acc);
  }
  e.root = acc;
  return e;
}

}  // namespace cwcolor
