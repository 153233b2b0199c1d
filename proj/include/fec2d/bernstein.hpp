// SPDX-License-Identifier: MIT
//
// Exact polynomial algebra on a triangle in Bernstein-barycentric form:
// arithmetic, Cartesian derivatives, edge traces, closed-form integration,
// and the differential operators of the 2D complexes.

#ifndef FEC2D_BERNSTEIN_HPP
#define FEC2D_BERNSTEIN_HPP

#include <array>
#include <vector>

#include "fec2d/lattice.hpp"
#include "fec2d/numbers.hpp"

namespace fec2d {

/// A nondegenerate triangle with exact rational vertices and the barycentric
/// gradient vectors derived from them.
struct TriangleGeom {
  std::array<RatVector2, 3> vertices;
  Rational signedArea2;                  // twice the signed area, nonzero
  std::array<RatVector2, 3> gradLambda;  // sum to (0,0)

  static TriangleGeom fromVertices(const RatVector2& v0, const RatVector2& v1,
                                   const RatVector2& v2);
  static TriangleGeom reference();

  /// Exact barycentric coordinates of a point.
  std::array<Rational, 3> barycentric(const RatVector2& p) const;
};

/// An oriented edge of a triangle. The orientation (endpoint order) is the
/// caller's convention; meshes orient low global vertex index -> high.
/// tangent = x_b - x_a unnormalized, normal = tangent rotated by
/// (a,b) -> (b,-a). Arc-length DoF integrals use the parametric measure
/// (the |e| factor dropped), a fixed per-edge rescaling of every moment.
struct EdgeGeom {
  int localEdge;              // index into localEdges() of the owning triangle
  std::array<int, 2> localEndpoints;  // local vertex indices in global order
  RatVector2 tangent;
  RatVector2 normal;

  Rational tangentLengthSq() const { return tangent.dot(tangent); }
};

/// The three oriented edges of a triangle; standalone triangles orient by
/// ascending local vertex index.
std::array<EdgeGeom, 3> standaloneEdges(const TriangleGeom& t);

/// Polynomial in Bernstein form: coefficients over the degree-k lattice in
/// lexicographic node order.
class BernsteinPoly {
 public:
  BernsteinPoly() : degree_(0), coeffs_(RatVector::Zero(1)) {}
  BernsteinPoly(int degree, RatVector coeffs);

  static BernsteinPoly zero(int degree);
  static BernsteinPoly constant(int degree, const Rational& value);
  /// The Bernstein monomial lambda^alpha viewed at its own degree.
  static BernsteinPoly monomial(const MultiIndex& alpha);
  /// The affine function with the given vertex values, at degree 1.
  static BernsteinPoly affine(const Rational& atV0, const Rational& atV1, const Rational& atV2);

  int degree() const { return degree_; }
  const RatVector& coeffs() const { return coeffs_; }
  bool isZero() const;

  BernsteinPoly operator+(const BernsteinPoly& o) const;
  BernsteinPoly operator-(const BernsteinPoly& o) const;
  BernsteinPoly operator*(const Rational& s) const;
  BernsteinPoly operator*(const BernsteinPoly& o) const;

  /// Rewrite at a higher degree (exact).
  BernsteinPoly elevatedTo(int degree) const;

  /// d/dx_j, degree drops by one (constants stay degree 0).
  BernsteinPoly derivative(const TriangleGeom& t, int j) const;

  Rational evaluateBary(const std::array<Rational, 3>& lambda) const;
  Rational evaluate(const TriangleGeom& t, const RatVector2& p) const;

  /// Integral over the triangle: sum of coeff(alpha) |area2| alpha!/(k+2)!.
  Rational integrate(const TriangleGeom& t) const;

 private:
  int degree_;
  RatVector coeffs_;
};

/// Univariate Bernstein polynomial on an oriented edge, basis
/// lambda_a^(k-j) lambda_b^j for j = 0..k with (a, b) the edge orientation.
struct EdgePoly {
  int degree = 0;
  RatVector coeffs;  // size degree + 1

  static EdgePoly basis(int degree, int j);
  bool isZero() const;
  /// Parametric-measure integral: sum coeff_j (k-j)! j! / (k+1)!.
  Rational integrate() const;
  EdgePoly operator*(const EdgePoly& o) const;
};

/// Restriction to an edge, killing the opposite barycentric coordinate.
EdgePoly traceToEdge(const BernsteinPoly& p, const EdgeGeom& e);

/// Parametric-measure integral of the product of two traces.
Rational integrateEdge(const EdgePoly& p);

enum class FieldShape { Scalar, Vector2, Matrix22, Sym22 };

Index shapeComponents(FieldShape s);

/// A polynomial field: scalar, vector, matrix or symmetric-matrix valued,
/// all components Bernstein polynomials of one shared degree.
/// Component order: Vector2 [v0, v1]; Matrix22 [m00, m01, m10, m11];
/// Sym22 [s00, s01, s11].
class PolyField {
 public:
  PolyField() : shape_(FieldShape::Scalar), comps_(1) {}
  PolyField(FieldShape shape, std::vector<BernsteinPoly> comps);

  static PolyField zero(FieldShape shape, int degree);
  static PolyField scalar(BernsteinPoly p);
  static PolyField vector(BernsteinPoly v0, BernsteinPoly v1);

  FieldShape shape() const { return shape_; }
  int degree() const { return comps_[0].degree(); }
  Index components() const { return static_cast<Index>(comps_.size()); }
  const BernsteinPoly& comp(Index i) const { return comps_[static_cast<size_t>(i)]; }
  BernsteinPoly& comp(Index i) { return comps_[static_cast<size_t>(i)]; }
  /// Matrix entry access handling the Sym22 packing.
  const BernsteinPoly& entry(int i, int j) const;
  bool isZero() const;

  PolyField operator+(const PolyField& o) const;
  PolyField operator-(const PolyField& o) const;
  PolyField operator*(const Rational& s) const;
  PolyField elevatedTo(int degree) const;

  /// Componentwise Cartesian derivative D^beta.
  PolyField cartesianDerivative(const TriangleGeom& t, int bx, int by) const;

  /// L2(T) pairing (Frobenius for matrices; the symmetric packing weights
  /// the off-diagonal component twice).
  Rational innerProduct(const PolyField& o, const TriangleGeom& t) const;

 private:
  FieldShape shape_;
  std::vector<BernsteinPoly> comps_;
};

enum class DiffOp {
  Grad,             // scalar -> vector
  CurlScalar,       // scalar -> vector, (d2 u, -d1 u)
  RotVector,        // vector -> scalar, d1 v2 - d2 v1
  DivVector,        // vector -> scalar
  CurlVectorRowwise,  // vector -> matrix, row i = curl v_i
  DivMatrixRowwise,   // matrix/sym -> vector
  Sym,              // matrix -> sym
  Sskw,             // matrix -> scalar, (m10 - m01)/2
  Mskw,             // scalar -> matrix [[0,-u],[u,0]]
  Air,              // scalar -> sym, curl curl
  SymCurl,          // vector -> sym
  DivDiv,           // matrix/sym -> scalar
  Hess,             // scalar -> sym
  RotMatrixRowwise,   // matrix/sym -> vector, row i = rot (row i)
  SymGrad,          // vector -> sym
  RotRot,           // sym -> scalar
  CurlDiv           // vector -> vector, curl(div v)
};

/// Order (degree drop) of the operator.
int diffOpOrder(DiffOp op);
FieldShape diffOpSourceShape(DiffOp op, FieldShape given);
FieldShape diffOpTargetShape(DiffOp op, FieldShape source);

/// Apply the operator exactly; throws ShapeError on mismatch.
PolyField differential(const PolyField& p, const TriangleGeom& t, DiffOp op);

/// Field x = (x1, x2) as a degree-1 vector field on the triangle.
PolyField positionField(const TriangleGeom& t);
/// Field x-perp = (x2, -x1).
PolyField positionPerpField(const TriangleGeom& t);
/// Coordinate function x_j as a degree-1 scalar.
BernsteinPoly coordinate(const TriangleGeom& t, int j);

}  // namespace fec2d

#endif
