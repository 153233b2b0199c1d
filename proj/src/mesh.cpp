// SPDX-License-Identifier: MIT

#include "fec2d/mesh.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "fec2d/errors.hpp"

namespace fec2d {

Mesh::Mesh(std::vector<RatVector2> vertices, std::vector<std::array<int, 3>> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  const int nv = static_cast<int>(vertices_.size());
  for (const auto& tri : triangles_) {
    std::set<int> distinct(tri.begin(), tri.end());
    if (distinct.size() != 3) throw TopologyError("triangle with repeated vertex");
    for (int v : tri)
      if (v < 0 || v >= nv) throw TopologyError("triangle vertex index out of range");
  }
  // Degeneracy check via signed area.
  for (size_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    const Rational area2 = cross2(vertices_[static_cast<size_t>(tri[1])] - vertices_[static_cast<size_t>(tri[0])],
                                  vertices_[static_cast<size_t>(tri[2])] - vertices_[static_cast<size_t>(tri[0])]);
    if (area2 == 0) throw GeometryError("degenerate triangle " + std::to_string(t));
  }
  // Derive the sorted edge list deterministically.
  std::map<std::array<int, 2>, Index> edgeId;
  for (const auto& tri : triangles_) {
    for (const auto& le : localEdges()) {
      std::array<int, 2> key = {tri[static_cast<size_t>(le.vertices[0])],
                                tri[static_cast<size_t>(le.vertices[1])]};
      if (key[0] > key[1]) std::swap(key[0], key[1]);
      edgeId.emplace(key, 0);
    }
  }
  Index next = 0;
  for (auto& [key, id] : edgeId) {
    id = next++;
    edges_.push_back(key);
  }
  edgeTriangles_.assign(edges_.size(), {});
  triangleEdges_.resize(triangles_.size());
  for (size_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    for (int e = 0; e < 3; ++e) {
      const auto& le = localEdges()[static_cast<size_t>(e)];
      std::array<int, 2> key = {tri[static_cast<size_t>(le.vertices[0])],
                                tri[static_cast<size_t>(le.vertices[1])]};
      if (key[0] > key[1]) std::swap(key[0], key[1]);
      const Index id = edgeId.at(key);
      triangleEdges_[t][static_cast<size_t>(e)] = id;
      edgeTriangles_[static_cast<size_t>(id)].push_back(static_cast<Index>(t));
    }
  }
  for (size_t e = 0; e < edges_.size(); ++e)
    if (edgeTriangles_[e].size() > 2)
      throw TopologyError("edge shared by more than two triangles");
  // Conformity: triangles sharing two vertices must share them as an edge,
  // which holds by construction of the edge map; what remains to reject is
  // a vertex of one triangle lying inside an edge of another (hanging
  // node). Detect hanging nodes on boundary-interior incidences.
  for (size_t e = 0; e < edges_.size(); ++e) {
    const auto [a, b] = std::pair(edges_[e][0], edges_[e][1]);
    const RatVector2& pa = vertices_[static_cast<size_t>(a)];
    const RatVector2& pb = vertices_[static_cast<size_t>(b)];
    for (int v = 0; v < static_cast<int>(vertices_.size()); ++v) {
      if (v == a || v == b) continue;
      const RatVector2& p = vertices_[static_cast<size_t>(v)];
      if (cross2(pb - pa, p - pa) != 0) continue;
      const Rational t = (pb - pa).dot(p - pa);
      const Rational len2 = (pb - pa).dot(pb - pa);
      if (t > 0 && t < len2)
        throw TopologyError("nonconforming mesh: vertex " + std::to_string(v) +
                            " lies inside edge " + std::to_string(e));
    }
  }
}

Mesh Mesh::load(const std::string& document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("mesh document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("triangles"))
    throw ParseError("mesh document must contain 'vertices' and 'triangles'");
  std::vector<RatVector2> vertices;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_array() || v.size() != 2) throw ParseError("vertex must be a pair");
    auto coord = [](const nlohmann::json& c) {
      if (c.is_string()) return ratFromString(c.get<std::string>());
      if (c.is_number_integer()) return Rational(c.get<long>());
      throw ParseError("vertex coordinate must be an integer or a 'p/q' string");
    };
    vertices.push_back(RatVector2(coord(v[0]), coord(v[1])));
  }
  std::vector<std::array<int, 3>> triangles;
  for (const auto& t : doc["triangles"]) {
    if (!t.is_array() || t.size() != 3) throw ParseError("triangle must be an index triple");
    triangles.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
  }
  return Mesh(std::move(vertices), std::move(triangles));
}

std::string Mesh::save() const {
  nlohmann::ordered_json doc;
  doc["vertices"] = nlohmann::json::array();
  for (const auto& v : vertices_)
    doc["vertices"].push_back({ratToString(v[0]), ratToString(v[1])});
  doc["triangles"] = nlohmann::json::array();
  for (const auto& t : triangles_) doc["triangles"].push_back({t[0], t[1], t[2]});
  return doc.dump(2);
}

Mesh Mesh::referenceTriangle() {
  return Mesh({RatVector2(0, 0), RatVector2(1, 0), RatVector2(0, 1)}, {{0, 1, 2}});
}

Mesh Mesh::unitSquare(int n, SquarePattern pattern) {
  if (n < 1) throw ParameterError("unitSquare requires n >= 1");
  std::vector<RatVector2> vertices;
  auto gridId = [n](int i, int j) { return i * (n + 1) + j; };
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) vertices.push_back(RatVector2(Rational(i, n), Rational(j, n)));
  std::vector<std::array<int, 3>> triangles;
  if (pattern == SquarePattern::Diagonal) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const int a = gridId(i, j), b = gridId(i + 1, j), c = gridId(i + 1, j + 1),
                  d = gridId(i, j + 1);
        triangles.push_back({a, b, c});
        triangles.push_back({a, c, d});
      }
    }
  } else {
    int center = static_cast<int>(vertices.size());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        vertices.push_back(RatVector2(Rational(2 * i + 1, 2 * n), Rational(2 * j + 1, 2 * n)));
        const int a = gridId(i, j), b = gridId(i + 1, j), c = gridId(i + 1, j + 1),
                  d = gridId(i, j + 1);
        triangles.push_back({a, b, center});
        triangles.push_back({b, c, center});
        triangles.push_back({c, d, center});
        triangles.push_back({d, a, center});
        ++center;
      }
    }
  }
  return Mesh(std::move(vertices), std::move(triangles));
}

Mesh Mesh::builtin(const std::string& name) {
  const std::string prefix = "builtin:";
  std::string body = name;
  if (body.rfind(prefix, 0) == 0) body = body.substr(prefix.size());
  if (body == "reference-triangle") return referenceTriangle();
  auto parseN = [&](const std::string& stem) -> int {
    if (body.rfind(stem, 0) != 0) return -1;
    try {
      return std::stoi(body.substr(stem.size()));
    } catch (...) {
      return -1;
    }
  };
  if (int n = parseN("square-diagonal-"); n > 0) return unitSquare(n, SquarePattern::Diagonal);
  if (int n = parseN("square-crisscross-"); n > 0) return unitSquare(n, SquarePattern::Crisscross);
  throw ParseError("unknown builtin mesh '" + name + "'");
}

TriangleGeom Mesh::triangleGeom(Index t) const {
  const auto& tri = triangles_[static_cast<size_t>(t)];
  return TriangleGeom::fromVertices(vertices_[static_cast<size_t>(tri[0])],
                                    vertices_[static_cast<size_t>(tri[1])],
                                    vertices_[static_cast<size_t>(tri[2])]);
}

std::array<EdgeGeom, 3> Mesh::triangleEdgeGeoms(Index t) const {
  const auto& tri = triangles_[static_cast<size_t>(t)];
  std::array<EdgeGeom, 3> out;
  for (int e = 0; e < 3; ++e) {
    const auto& le = localEdges()[static_cast<size_t>(e)];
    int la = le.vertices[0];
    int lb = le.vertices[1];
    // Orient by global vertex index, low -> high.
    if (tri[static_cast<size_t>(la)] > tri[static_cast<size_t>(lb)]) std::swap(la, lb);
    EdgeGeom g;
    g.localEdge = e;
    g.localEndpoints = {la, lb};
    g.tangent = vertices_[static_cast<size_t>(tri[static_cast<size_t>(lb)])] -
                vertices_[static_cast<size_t>(tri[static_cast<size_t>(la)])];
    g.normal = perp(g.tangent);
    out[static_cast<size_t>(e)] = g;
  }
  return out;
}

long Mesh::eulerCharacteristic() const {
  return static_cast<long>(numVertices()) - static_cast<long>(numEdges()) +
         static_cast<long>(numTriangles());
}

Index Mesh::boundaryLoopCount() const {
  // Walk boundary edges vertex-to-vertex.
  std::map<int, std::vector<Index>> vertexBoundaryEdges;
  std::set<Index> boundary;
  for (Index e = 0; e < numEdges(); ++e) {
    if (!edgeOnBoundary(e)) continue;
    boundary.insert(e);
    vertexBoundaryEdges[edges_[static_cast<size_t>(e)][0]].push_back(e);
    vertexBoundaryEdges[edges_[static_cast<size_t>(e)][1]].push_back(e);
  }
  for (const auto& [v, es] : vertexBoundaryEdges)
    if (es.size() != 2) throw TopologyError("boundary is not a union of closed loops");
  Index loops = 0;
  std::set<Index> seen;
  for (Index start : boundary) {
    if (seen.count(start)) continue;
    ++loops;
    Index cur = start;
    int enterVertex = edges_[static_cast<size_t>(cur)][0];
    while (!seen.count(cur)) {
      seen.insert(cur);
      const int exitVertex = edges_[static_cast<size_t>(cur)][0] == enterVertex
                                 ? edges_[static_cast<size_t>(cur)][1]
                                 : edges_[static_cast<size_t>(cur)][0];
      for (Index nxt : vertexBoundaryEdges[exitVertex]) {
        if (nxt != cur) {
          cur = nxt;
          break;
        }
      }
      enterVertex = exitVertex;
    }
  }
  return loops;
}

bool Mesh::simplyConnected() const {
  return eulerCharacteristic() == 1 && boundaryLoopCount() == 1;
}

}  // namespace fec2d
