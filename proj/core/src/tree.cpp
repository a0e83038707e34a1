#include "pottslab/tree.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pottslab {

RootedTree::RootedTree(int root, std::vector<int> parent)
    : root_(root), parent_(std::move(parent)) {
  const int n = static_cast<int>(parent_.size());
  if (n <= 0) throw std::invalid_argument("RootedTree: empty vertex set");
  if (root_ < 0 || root_ >= n) throw std::invalid_argument("RootedTree: root out of range");
  if (parent_[root_] != -1) throw std::invalid_argument("RootedTree: root must have parent -1");

  children_.assign(n, {});
  for (int v = 0; v < n; ++v) {
    if (v == root_) continue;
    const int p = parent_[v];
    if (p < 0 || p >= n) throw std::invalid_argument("RootedTree: parent id out of range");
    children_[p].push_back(v);
  }

  // BFS from the root assigns depths and proves connectivity (n-1 parent
  // pointers cannot contain a cycle that is also reachable from the root).
  depth_.assign(n, -1);
  std::vector<int> queue;
  queue.reserve(n);
  queue.push_back(root_);
  depth_[root_] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int c : children_[v]) {
      depth_[c] = depth_[v] + 1;
      queue.push_back(c);
    }
  }
  if (static_cast<int>(queue.size()) != n)
    throw std::invalid_argument("RootedTree: not connected (or parent cycle off the root)");
  height_ = *std::max_element(depth_.begin(), depth_.end());

  // Reversed BFS order lists children before parents.
  post_order_.assign(queue.rbegin(), queue.rend());
}

RootedTree RootedTree::from_edges(int vertex_count, int root,
                                  const std::vector<std::pair<int, int>>& edges) {
  if (vertex_count <= 0) throw std::invalid_argument("from_edges: vertex_count must be positive");
  if (static_cast<int>(edges.size()) != vertex_count - 1)
    throw std::invalid_argument("from_edges: a tree on n vertices has exactly n-1 edges");
  std::vector<int> parent(vertex_count, -2);
  if (root < 0 || root >= vertex_count) throw std::invalid_argument("from_edges: root out of range");
  parent[root] = -1;
  for (const auto& [p, c] : edges) {
    if (p < 0 || p >= vertex_count || c < 0 || c >= vertex_count)
      throw std::invalid_argument("from_edges: edge endpoint out of range");
    if (c == root) throw std::invalid_argument("from_edges: root listed as a child");
    if (parent[c] != -2) throw std::invalid_argument("from_edges: vertex has two parents");
    parent[c] = p;
  }
  for (int v = 0; v < vertex_count; ++v)
    if (parent[v] == -2) throw std::invalid_argument("from_edges: vertex unreachable from root");
  return RootedTree(root, std::move(parent));
}

RootedTree RootedTree::single_vertex() { return RootedTree(0, {-1}); }

RootedTree RootedTree::complete(int arity, int height) {
  if (arity < 1) throw std::invalid_argument("complete: arity must be >= 1");
  if (height < 0) throw std::invalid_argument("complete: height must be >= 0");
  std::vector<int> parent{-1};
  std::vector<int> level{0};
  for (int h = 0; h < height; ++h) {
    std::vector<int> next;
    next.reserve(level.size() * arity);
    for (int p : level) {
      for (int k = 0; k < arity; ++k) {
        next.push_back(static_cast<int>(parent.size()));
        parent.push_back(p);
      }
    }
    level = std::move(next);
  }
  return RootedTree(0, std::move(parent));
}

std::vector<int> RootedTree::vertices_at_depth(int t) const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v)
    if (depth_[v] == t) out.push_back(v);
  return out;
}

bool RootedTree::respects_degree_bound(int d) const {
  for (int v = 0; v < vertex_count(); ++v)
    if (child_count(v) > d) return false;
  return true;
}

int BoundaryCondition::fixed_count() const {
  int n = 0;
  for (int c : color_)
    if (c != kFree) ++n;
  return n;
}

void BoundaryCondition::validate(int q) const {
  for (int v = 0; v < vertex_count(); ++v) {
    const int c = color_[v];
    if (c != kFree && (c < 0 || c >= q))
      throw std::invalid_argument("BoundaryCondition: color out of range at vertex " +
                                  std::to_string(v));
  }
}

Instance load_instance_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("instance JSON: ") + e.what());
  }
  for (const char* key : {"q", "w", "root", "edges"})
    if (!doc.contains(key))
      throw std::invalid_argument(std::string("instance JSON: missing field '") + key + "'");

  PottsParams params;
  params.q = doc.at("q").get<int>();
  params.w = doc.at("w").get<double>();

  std::vector<std::pair<int, int>> edges;
  int max_id = doc.at("root").get<int>();
  for (const auto& e : doc.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("instance JSON: edges must be [parent, child] pairs");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    max_id = std::max({max_id, edges.back().first, edges.back().second});
  }
  const int n = max_id + 1;
  RootedTree tree = RootedTree::from_edges(n, doc.at("root").get<int>(), edges);

  BoundaryCondition bc(n);
  if (doc.contains("boundary")) {
    for (const auto& [key, val] : doc.at("boundary").items()) {
      const int v = std::stoi(key);
      if (v < 0 || v >= n)
        throw std::invalid_argument("instance JSON: boundary vertex out of range: " + key);
      const int color1 = val.get<int>();  // 1-based in files
      if (color1 < 1 || color1 > params.q)
        throw std::invalid_argument("instance JSON: color " + std::to_string(color1) +
                                    " outside 1.." + std::to_string(params.q));
      bc.fix(v, color1 - 1);
    }
  }
  bc.validate(params.q);

  if (doc.contains("d")) {
    params.d = doc.at("d").get<int>();
  } else {
    int max_children = 2;
    for (int v = 0; v < n; ++v) max_children = std::max(max_children, tree.child_count(v));
    params.d = max_children;
  }
  params.validate();
  if (!tree.respects_degree_bound(params.d))
    throw std::invalid_argument("instance JSON: tree violates the declared degree bound");
  return Instance{params, std::move(tree), std::move(bc)};
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open instance file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_instance_json(ss.str());
}

RootedTree random_tree(Rng& rng, int vertex_count, int max_children) {
  if (vertex_count < 1) throw std::invalid_argument("random_tree: vertex_count must be >= 1");
  if (max_children < 1) throw std::invalid_argument("random_tree: max_children must be >= 1");
  std::vector<int> parent(vertex_count, -1);
  std::vector<int> child_count(vertex_count, 0);
  std::vector<int> open;  // vertices with spare child capacity
  open.push_back(0);
  for (int v = 1; v < vertex_count; ++v) {
    const int pick = rng.next_int(static_cast<int>(open.size()));
    const int p = open[pick];
    parent[v] = p;
    if (++child_count[p] == max_children) open.erase(open.begin() + pick);
    open.push_back(v);
  }
  return RootedTree(0, std::move(parent));
}

BoundaryCondition random_boundary(Rng& rng, const RootedTree& tree, int q, double fix_prob) {
  BoundaryCondition bc(tree.vertex_count());
  for (int v = 0; v < tree.vertex_count(); ++v) {
    if (v == tree.root()) continue;
    if (rng.next_bool(fix_prob)) bc.fix(v, rng.next_int(q));
  }
  return bc;
}

}  // namespace pottslab
