// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fec2d/errors.hpp"
#include "fec2d/mesh.hpp"

using namespace fec2d;

TEST_CASE("builtin meshes") {
  const Mesh diag = Mesh::unitSquare(1, SquarePattern::Diagonal);
  CHECK(diag.numVertices() == 4);
  CHECK(diag.numEdges() == 5);
  CHECK(diag.numTriangles() == 2);

  const Mesh criss = Mesh::unitSquare(1, SquarePattern::Crisscross);
  CHECK(criss.numVertices() == 5);
  CHECK(criss.numEdges() == 8);
  CHECK(criss.numTriangles() == 4);

  const Mesh tri = Mesh::referenceTriangle();
  CHECK(tri.numVertices() == 3);
  CHECK(tri.numEdges() == 3);
  CHECK(tri.numTriangles() == 1);

  CHECK(Mesh::builtin("builtin:square-diagonal-2").numTriangles() == 8);
  CHECK(Mesh::builtin("builtin:square-crisscross-2").numTriangles() == 16);
  CHECK_THROWS_AS(Mesh::builtin("builtin:dodecahedron"), ParseError);
}

TEST_CASE("euler characteristic") {
  CHECK(Mesh::unitSquare(1, SquarePattern::Diagonal).eulerCharacteristic() == 1);
  CHECK(Mesh::unitSquare(1, SquarePattern::Crisscross).eulerCharacteristic() == 1);
  CHECK(Mesh::unitSquare(3, SquarePattern::Diagonal).eulerCharacteristic() == 1);

  // Square with a square hole: 8 outer + 8 inner boundary-ring vertices.
  std::vector<RatVector2> v;
  const long outer[8][2] = {{0, 0}, {3, 0}, {6, 0}, {6, 3}, {6, 6}, {3, 6}, {0, 6}, {0, 3}};
  const long inner[8][2] = {{2, 2}, {4, 2}, {4, 4}, {2, 4}, {3, 2}, {4, 3}, {3, 4}, {2, 3}};
  for (auto& p : outer) v.push_back(RatVector2(p[0], p[1]));
  for (auto& p : inner) v.push_back(RatVector2(p[0], p[1]));
  // inner ring order around the hole: 8,12,9,13,10,14,11,15
  std::vector<std::array<int, 3>> tris = {
      {0, 1, 8},  {1, 12, 8},  {1, 9, 12},  {1, 2, 9},  {2, 3, 9},  {3, 13, 9},
      {3, 10, 13}, {3, 4, 10}, {4, 5, 10},  {5, 14, 10}, {5, 11, 14}, {5, 6, 11},
      {6, 7, 11},  {7, 15, 11}, {7, 8, 15}, {7, 0, 8}};
  const Mesh annulus(std::move(v), std::move(tris));
  CHECK(annulus.eulerCharacteristic() == 0);
  CHECK(annulus.boundaryLoopCount() == 2);
  CHECK_FALSE(annulus.simplyConnected());
}

TEST_CASE("edge count identity 3 T = 2 interior + boundary") {
  for (const auto& m : {Mesh::unitSquare(1, SquarePattern::Diagonal),
                        Mesh::unitSquare(2, SquarePattern::Crisscross),
                        Mesh::unitSquare(3, SquarePattern::Diagonal)}) {
    Index interior = 0, boundary = 0;
    for (Index e = 0; e < m.numEdges(); ++e)
      (m.edgeOnBoundary(e) ? boundary : interior) += 1;
    CHECK(3 * m.numTriangles() == 2 * interior + boundary);
  }
}

TEST_CASE("document round trip is byte-exact") {
  const Mesh m = Mesh::unitSquare(2, SquarePattern::Crisscross);
  const std::string doc = m.save();
  const Mesh again = Mesh::load(doc);
  CHECK(again.save() == doc);
  CHECK(again.numEdges() == m.numEdges());
  for (Index e = 0; e < m.numEdges(); ++e) CHECK(again.edge(e) == m.edge(e));
}

TEST_CASE("load validates") {
  CHECK_THROWS_AS(Mesh::load("not json"), ParseError);
  CHECK_THROWS_AS(Mesh::load(R"({"vertices": [["0","0"],["1","0"],["2","0"]],
                                 "triangles": [[0,1,2]]})"),
                  GeometryError);
  // Shared edge in opposite orientations with a hanging vertex.
  CHECK_THROWS_AS(Mesh::load(R"({"vertices": [["0","0"],["2","0"],["1","1"],["1","0"],["1","-1"]],
                                 "triangles": [[0,1,2],[0,3,4],[3,1,4]]})"),
                  TopologyError);
}

TEST_CASE("single-reference-triangle document") {
  const Mesh m = Mesh::load(R"({"vertices": [["0","0"],["1","0"],["0","1"]],
                                "triangles": [[0,1,2]]})");
  CHECK(m.numVertices() == 3);
  CHECK(m.numEdges() == 3);
  CHECK(m.numTriangles() == 1);
}

TEST_CASE("global edge orientation is shared between adjacent triangles") {
  const Mesh m = Mesh::unitSquare(1, SquarePattern::Diagonal);
  for (Index e = 0; e < m.numEdges(); ++e) {
    const auto& tris = m.edgeTriangles(e);
    if (tris.size() != 2) continue;
    // The oriented tangent computed from either side must agree.
    std::array<RatVector2, 2> tangents;
    for (size_t s = 0; s < 2; ++s) {
      const auto geoms = m.triangleEdgeGeoms(tris[s]);
      for (const auto& g : geoms)
        if (m.triangleEdge(tris[s], g.localEdge) == e) tangents[s] = g.tangent;
    }
    CHECK(tangents[0] == tangents[1]);
  }
}
