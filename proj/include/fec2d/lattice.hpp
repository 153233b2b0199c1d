// SPDX-License-Identifier: MIT
//
// The simplicial lattice of degree k on a triangle: multi-indices, distance
// to sub-simplices, tubes, and the vertex/edge/interior decomposition that
// underlies every smoothness-parametrized element in this project.

#ifndef FEC2D_LATTICE_HPP
#define FEC2D_LATTICE_HPP

#include <array>
#include <vector>

#include "fec2d/numbers.hpp"

namespace fec2d {

/// A lattice node alpha = (a0, a1, a2) with a0 + a1 + a2 = k.
struct MultiIndex {
  std::array<int, 3> a{0, 0, 0};

  int degree() const { return a[0] + a[1] + a[2]; }
  int operator[](int i) const { return a[static_cast<size_t>(i)]; }
  bool operator==(const MultiIndex&) const = default;
  /// Lexicographic on (a0, a1, a2); fixes the basis order everywhere.
  bool operator<(const MultiIndex& o) const { return a < o.a; }
};

/// A nonempty subset of the vertex set {0,1,2}: a vertex or an edge (or T).
struct SubSimplex {
  std::vector<int> vertices;  // strictly increasing

  static SubSimplex vertex(int i) { return SubSimplex{{i}}; }
  static SubSimplex edge(int i, int j);
  SubSimplex complement() const;
  bool contains(int i) const;
  int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

/// Smoothness orders (r_vertex, r_edge); value -1 means no continuity.
struct SmoothnessPair {
  int rv = -1;
  int re = -1;

  bool operator==(const SmoothnessPair&) const = default;
  SmoothnessPair operator+(int c) const { return {rv + c, re + c}; }
  SmoothnessPair operator-(int c) const { return {rv - c, re - c}; }
};

/// Componentwise max with a constant, the recurring max{r - c, -1} pattern.
inline SmoothnessPair maxWith(const SmoothnessPair& r, int floor_) {
  return {std::max(r.rv, floor_), std::max(r.re, floor_)};
}

/// The three local edges in lexicographic vertex-pair order.
/// localEdges()[e] is opposite vertex oppositeVertex(e).
const std::array<SubSimplex, 3>& localEdges();
int oppositeVertex(int localEdge);

/// All nodes of the degree-k lattice in lexicographic order;
/// size C(k+2, 2). k < 0 yields the empty list.
std::vector<MultiIndex> enumerateLattice(int k);

/// Position of a node in enumerateLattice(degree); -1 if degree mismatch.
Index latticeIndex(const MultiIndex& alpha);

/// Sum of the components of alpha opposite to f.
int distance(const MultiIndex& alpha, const SubSimplex& f);

/// Tube D(f, r) = { alpha : dist(alpha, f) <= r }; empty for r < 0.
std::vector<MultiIndex> tube(int k, const SubSimplex& f, int r);

/// Line L(f, s) = { alpha : dist(alpha, f) = s }.
std::vector<MultiIndex> line(int k, const SubSimplex& f, int s);

/// S0 (per vertex), S1 (per edge), S2 (interior) partition of the lattice.
struct LatticeDecomposition {
  std::array<std::vector<MultiIndex>, 3> s0;  // per vertex tube
  std::array<std::vector<MultiIndex>, 3> s1;  // per local edge, tube minus vertex tubes
  std::vector<MultiIndex> s2;

  Index s0Size() const;
  Index s1Size() const;
  Index s2Size() const { return static_cast<Index>(s2.size()); }
};

/// Requires re >= -1, rv >= max(2 re, -1), k >= max(2 rv + 1, 0); throws
/// ParameterError naming the violated inequality otherwise.
LatticeDecomposition geometricDecomposition(int k, const SmoothnessPair& r);

/// The interior node set S2; the span of its Bernstein monomials is the
/// bubble space B_k(r). For re = -1 this is the lattice minus vertex tubes.
std::vector<MultiIndex> bubbleSet(int k, const SmoothnessPair& r);

/// |S2| without enumerating (closed form).
Index bubbleDim(int k, const SmoothnessPair& r);

/// True when (k, r) satisfies the decomposition preconditions.
bool decompositionAdmissible(int k, const SmoothnessPair& r);

}  // namespace fec2d

#endif
