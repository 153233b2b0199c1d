// SPDX-License-Identifier: MIT
//
// Conforming triangulations with rational vertices, derived edge incidence,
// the global edge orientation convention, and Euler bookkeeping.

#ifndef FEC2D_MESH_HPP
#define FEC2D_MESH_HPP

#include <array>
#include <string>
#include <vector>

#include "fec2d/bernstein.hpp"
#include "fec2d/numbers.hpp"

namespace fec2d {

enum class SquarePattern { Diagonal, Crisscross };

class Mesh {
 public:
  /// Validates and derives incidence; throws GeometryError / TopologyError.
  Mesh(std::vector<RatVector2> vertices, std::vector<std::array<int, 3>> triangles);

  /// Parse the JSON mesh document {"vertices": [["p/q","r"],...],
  /// "triangles": [[i,j,k],...]}.
  static Mesh load(const std::string& document);
  /// Bit-exact round-trip serialization.
  std::string save() const;

  static Mesh referenceTriangle();
  static Mesh unitSquare(int n, SquarePattern pattern);
  /// "builtin:reference-triangle", "builtin:square-diagonal-N",
  /// "builtin:square-crisscross-N".
  static Mesh builtin(const std::string& name);

  Index numVertices() const { return static_cast<Index>(vertices_.size()); }
  Index numEdges() const { return static_cast<Index>(edges_.size()); }
  Index numTriangles() const { return static_cast<Index>(triangles_.size()); }

  const RatVector2& vertex(Index v) const { return vertices_[static_cast<size_t>(v)]; }
  const std::array<int, 3>& triangle(Index t) const { return triangles_[static_cast<size_t>(t)]; }
  /// Sorted global vertex pair of an edge (low index first).
  const std::array<int, 2>& edge(Index e) const { return edges_[static_cast<size_t>(e)]; }
  /// Global edge id of a triangle's local edge (localEdges() numbering).
  Index triangleEdge(Index t, int localEdge) const {
    return triangleEdges_[static_cast<size_t>(t)][static_cast<size_t>(localEdge)];
  }
  const std::vector<Index>& edgeTriangles(Index e) const {
    return edgeTriangles_[static_cast<size_t>(e)];
  }
  bool edgeOnBoundary(Index e) const { return edgeTriangles_[static_cast<size_t>(e)].size() == 1; }

  TriangleGeom triangleGeom(Index t) const;
  /// The triangle's edges carrying the global orientation (low -> high
  /// global vertex index), expressed in local vertex indices.
  std::array<EdgeGeom, 3> triangleEdgeGeoms(Index t) const;

  long eulerCharacteristic() const;
  Index boundaryLoopCount() const;
  bool simplyConnected() const;

 private:
  std::vector<RatVector2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<Index, 3>> triangleEdges_;
  std::vector<std::vector<Index>> edgeTriangles_;
};

}  // namespace fec2d

#endif
