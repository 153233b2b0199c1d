// SPDX-License-Identifier: MIT

#include "fec2d/lattice.hpp"

#include <algorithm>

#include "fec2d/errors.hpp"

namespace fec2d {

SubSimplex SubSimplex::edge(int i, int j) {
  if (i > j) std::swap(i, j);
  return SubSimplex{{i, j}};
}

SubSimplex SubSimplex::complement() const {
  SubSimplex c;
  for (int i = 0; i < 3; ++i)
    if (!contains(i)) c.vertices.push_back(i);
  return c;
}

bool SubSimplex::contains(int i) const {
  return std::find(vertices.begin(), vertices.end(), i) != vertices.end();
}

const std::array<SubSimplex, 3>& localEdges() {
  static const std::array<SubSimplex, 3> edges = {
      SubSimplex::edge(0, 1), SubSimplex::edge(0, 2), SubSimplex::edge(1, 2)};
  return edges;
}

int oppositeVertex(int localEdge) {
  static constexpr std::array<int, 3> opp = {2, 1, 0};
  return opp[static_cast<size_t>(localEdge)];
}

std::vector<MultiIndex> enumerateLattice(int k) {
  std::vector<MultiIndex> nodes;
  if (k < 0) return nodes;
  nodes.reserve(static_cast<size_t>((k + 1) * (k + 2) / 2));
  for (int a0 = 0; a0 <= k; ++a0)
    for (int a1 = 0; a1 <= k - a0; ++a1) nodes.push_back(MultiIndex{{a0, a1, k - a0 - a1}});
  return nodes;
}

Index latticeIndex(const MultiIndex& alpha) {
  const int k = alpha.degree();
  const int a0 = alpha[0];
  const int a1 = alpha[1];
  // Nodes with first component < a0 fill a triangular block.
  Index before = 0;
  for (int i = 0; i < a0; ++i) before += k - i + 1;
  return before + a1;
}

int distance(const MultiIndex& alpha, const SubSimplex& f) {
  int d = 0;
  for (int i = 0; i < 3; ++i)
    if (!f.contains(i)) d += alpha[i];
  return d;
}

std::vector<MultiIndex> tube(int k, const SubSimplex& f, int r) {
  std::vector<MultiIndex> nodes;
  if (r < 0) return nodes;
  for (const auto& alpha : enumerateLattice(k))
    if (distance(alpha, f) <= r) nodes.push_back(alpha);
  return nodes;
}

std::vector<MultiIndex> line(int k, const SubSimplex& f, int s) {
  std::vector<MultiIndex> nodes;
  for (const auto& alpha : enumerateLattice(k))
    if (distance(alpha, f) == s) nodes.push_back(alpha);
  return nodes;
}

Index LatticeDecomposition::s0Size() const {
  Index n = 0;
  for (const auto& v : s0) n += static_cast<Index>(v.size());
  return n;
}

Index LatticeDecomposition::s1Size() const {
  Index n = 0;
  for (const auto& v : s1) n += static_cast<Index>(v.size());
  return n;
}

bool decompositionAdmissible(int k, const SmoothnessPair& r) {
  if (r.re < -1) return false;
  if (r.rv < std::max(2 * r.re, -1)) return false;
  if (k < std::max(2 * r.rv + 1, 0)) return false;
  return true;
}

static void requireAdmissible(int k, const SmoothnessPair& r) {
  if (r.re < -1) throw ParameterError("lattice decomposition requires r_edge >= -1");
  if (r.rv < std::max(2 * r.re, -1))
    throw ParameterError("lattice decomposition requires r_vertex >= max(2 r_edge, -1)");
  if (k < std::max(2 * r.rv + 1, 0))
    throw ParameterError("lattice decomposition requires k >= max(2 r_vertex + 1, 0)");
}

LatticeDecomposition geometricDecomposition(int k, const SmoothnessPair& r) {
  requireAdmissible(k, r);
  LatticeDecomposition dec;
  for (const auto& alpha : enumerateLattice(k)) {
    int atVertex = -1;
    for (int v = 0; v < 3; ++v) {
      if (distance(alpha, SubSimplex::vertex(v)) <= r.rv) {
        atVertex = v;
        break;  // tubes are disjoint when k >= 2 rv + 1
      }
    }
    if (atVertex >= 0) {
      dec.s0[static_cast<size_t>(atVertex)].push_back(alpha);
      continue;
    }
    int atEdge = -1;
    for (int e = 0; e < 3; ++e) {
      if (distance(alpha, localEdges()[static_cast<size_t>(e)]) <= r.re) {
        atEdge = e;
        break;  // edge tubes minus vertex tubes are disjoint when rv >= 2 re
      }
    }
    if (atEdge >= 0) {
      dec.s1[static_cast<size_t>(atEdge)].push_back(alpha);
      continue;
    }
    dec.s2.push_back(alpha);
  }
  return dec;
}

std::vector<MultiIndex> bubbleSet(int k, const SmoothnessPair& r) {
  requireAdmissible(k, r);
  std::vector<MultiIndex> nodes;
  // Interior nodes satisfy a_i > re and a_i < k - rv componentwise.
  for (const auto& alpha : enumerateLattice(k)) {
    bool inside = true;
    for (int i = 0; i < 3 && inside; ++i)
      inside = alpha[i] >= r.re + 1 && alpha[i] <= k - r.rv - 1;
    if (inside) nodes.push_back(alpha);
  }
  return nodes;
}

Index bubbleDim(int k, const SmoothnessPair& r) {
  requireAdmissible(k, r);
  auto choose2 = [](long n) -> Index { return n >= 2 ? static_cast<Index>(n * (n - 1) / 2) : 0; };
  if (r.re < 0) return choose2(k + 2) - 3 * choose2(r.rv + 2);
  return choose2(k - 3 * r.re - 1) - 3 * choose2(r.rv - 2 * r.re);
}

}  // namespace fec2d
