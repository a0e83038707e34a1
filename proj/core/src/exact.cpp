#include "pottslab/exact.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace pottslab {

namespace {

// Kahan accumulator; the enumerated weights span [w^{|E|}, 1], so plain
// summation could lose the small terms against the large ones.
struct Compensated {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

struct Enumerator {
  const RootedTree& tree;
  const PottsParams& params;
  std::vector<int> color;       // working assignment, kFree marks unassigned
  std::vector<int> free_order;  // assignment order of the free vertices
  Compensated total;
  Compensated restricted;  // colorings with target_vertex == target_color
  int target_vertex = -1;
  int target_color = -1;

  Enumerator(const RootedTree& t, const BoundaryCondition& bc, const PottsParams& p)
      : tree(t), params(p), color(t.vertex_count(), BoundaryCondition::kFree) {
    for (int v = 0; v < t.vertex_count(); ++v)
      if (bc.fixed(v)) color[v] = bc.color(v);
    // Root first so the restricted sum needs no extra passes; then id order.
    if (!bc.fixed(t.root())) free_order.push_back(t.root());
    for (int v = 0; v < t.vertex_count(); ++v)
      if (!bc.fixed(v) && v != t.root()) free_order.push_back(v);
  }

  // Weight factor for assigning color c to v: one power of w per already
  // colored neighbor sharing c.
  double factor(int v, int c) const {
    double f = 1.0;
    const int p = tree.parent(v);
    if (p >= 0 && color[p] == c) f *= params.w;
    for (int u : tree.children(v))
      if (color[u] == c) f *= params.w;
    return f;
  }

  void run(std::size_t pos, double weight) {
    if (pos == free_order.size()) {
      total.add(weight);
      if (target_vertex >= 0 && color[target_vertex] == target_color) restricted.add(weight);
      return;
    }
    const int v = free_order[pos];
    for (int c = 0; c < params.q; ++c) {
      const double f = factor(v, c);
      if (f == 0.0) continue;  // w = 0 against an already monochromatic edge
      color[v] = c;
      run(pos + 1, weight * f);
    }
    color[v] = BoundaryCondition::kFree;
  }
};

void check_preconditions(const RootedTree& tree, const BoundaryCondition& bc,
                         const PottsParams& params) {
  params.validate();
  if (bc.vertex_count() != tree.vertex_count())
    throw std::invalid_argument("brute force: boundary size mismatch");
  bc.validate(params.q);
  const int free_vertices = bc.free_count();
  if (free_vertices > kMaxBruteForceFree)
    throw std::invalid_argument("brute force: " + std::to_string(free_vertices) +
                                " free vertices exceeds the cap of " +
                                std::to_string(kMaxBruteForceFree));
}

double fixed_edge_weight(const RootedTree& tree, const BoundaryCondition& bc, double w) {
  // Edges with both endpoints fixed contribute a constant factor.
  double f = 1.0;
  for (int v = 0; v < tree.vertex_count(); ++v) {
    const int p = tree.parent(v);
    if (p >= 0 && bc.fixed(v) && bc.fixed(p) && bc.color(v) == bc.color(p)) f *= w;
  }
  return f;
}

}  // namespace

double brute_force_partition(const RootedTree& tree, const BoundaryCondition& bc,
                             const PottsParams& params) {
  check_preconditions(tree, bc, params);
  const double base = fixed_edge_weight(tree, bc, params.w);
  if (base == 0.0) return 0.0;
  Enumerator e(tree, bc, params);
  e.run(0, base);
  return e.total.sum;
}

double brute_force_marginal(const RootedTree& tree, const BoundaryCondition& bc,
                            const PottsParams& params, int v, int c) {
  check_preconditions(tree, bc, params);
  if (v < 0 || v >= tree.vertex_count()) throw std::invalid_argument("marginal: vertex out of range");
  if (c < 0 || c >= params.q) throw std::invalid_argument("marginal: color out of range");
  if (bc.fixed(v)) throw std::invalid_argument("marginal: queried vertex is fixed");

  const double base = fixed_edge_weight(tree, bc, params.w);
  Enumerator e(tree, bc, params);
  e.target_vertex = v;
  e.target_color = c;
  if (base > 0.0) e.run(0, base);
  if (e.total.sum <= 0.0)
    throw DegenerateInstance("brute force: partition function is zero");
  return e.restricted.sum / e.total.sum;
}

}  // namespace pottslab
