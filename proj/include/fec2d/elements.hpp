// SPDX-License-Identifier: MIT
//
// Finite element DoF families on a triangle: vertex jets, edge moments of
// traces and normal derivatives, interior moments against bubble-derived
// weight spaces, and exact-rank unisolvence certification.

#ifndef FEC2D_ELEMENTS_HPP
#define FEC2D_ELEMENTS_HPP

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "fec2d/bernstein.hpp"
#include "fec2d/exact_linalg.hpp"
#include "fec2d/lattice.hpp"

namespace fec2d {

enum class Family {
  ScalarSmooth,      // C^{r^e} scalar element, optionally vector-valued copies
  VectorDiv,         // H(div)-type vector element with div-smoothness r2
  VectorDivTn,       // tangential-normal vector element (BDM / vertex-continuous)
  SymDiv,            // H(div; S) symmetric-tensor element
  MatrixDivDivPlus,  // H(div div^+; M) matrix element
  SymDivDivPlus,     // H(div div^+; S) element (r1^e >= 0 and r1^e = -1 variants)
  SymDivDivRelaxed   // H(div div; S) element, normal-normal + trace continuity only
};

std::string familyName(Family f);
Family familyFromName(const std::string& name);

struct ElementSpec {
  Family family = Family::ScalarSmooth;
  int degree = 1;
  SmoothnessPair r1{-1, -1};
  SmoothnessPair r2{-1, -1};  // ignored by ScalarSmooth and VectorDivTn
  int components = 1;         // ScalarSmooth only: 2 stacks two scalar copies

  FieldShape shape() const;
  /// Throws ParameterError naming the violated inequality.
  void validate() const;
  std::string describe() const;
  bool operator==(const ElementSpec&) const = default;
};

enum class DerivedField { Value, Div, DivDiv };

enum class EdgeSelector {
  Identity,   // scalar field
  DotN,       // vector . n
  DotT,       // vector . t
  Comp,       // vector component (Cartesian)
  MatNComp,   // (tau n) component
  MatTComp,   // (tau t) component
  NN,         // n' tau n
  TT,         // t' tau t
  TN,         // t' tau n
  Trace2DivDiv  // d_t(t' tau n)/|t|^2 + n' div tau
};

enum class DoFKind { PointDeriv, EdgeMoment, InteriorMoment };

struct DoFunctional {
  DoFKind kind = DoFKind::PointDeriv;
  bool shared = true;
  int entity = 0;  // local vertex or local edge; unused for interior
  DerivedField derived = DerivedField::Value;
  // PointDeriv
  int betaX = 0, betaY = 0;
  int component = 0;
  // EdgeMoment
  EdgeSelector selector = EdgeSelector::Identity;
  int normalOrder = 0;
  EdgePoly weight1d;
  // InteriorMoment
  PolyField weightField;

  Rational evaluate(const PolyField& u, const TriangleGeom& t,
                    const std::array<EdgeGeom, 3>& edges) const;
};

struct UnisolvenceResult {
  Index rows = 0;
  Index cols = 0;
  bool square = false;
  bool nonsingular = false;
};

/// A DoF set instantiated on a concrete triangle: evaluable functionals,
/// DoF matrix and, when unisolvent, the dual basis.
class LocalElement {
 public:
  LocalElement(ElementSpec spec, TriangleGeom geom, std::array<EdgeGeom, 3> edges);

  const ElementSpec& spec() const { return spec_; }
  const TriangleGeom& geom() const { return geom_; }
  const std::array<EdgeGeom, 3>& edges() const { return edges_; }
  const std::vector<DoFunctional>& functionals() const { return functionals_; }

  /// Shape-space dimension (not necessarily the functional count).
  Index dim() const;
  /// Shape basis: lattice node major, component minor.
  PolyField basisField(Index j) const;

  const RatMatrix& dofMatrix() const { return dofMatrix_; }
  UnisolvenceResult unisolvence() const;

  /// Dual basis coefficients (inverse DoF matrix); column i holds the
  /// shape-basis coefficients of the i-th dual basis field. Throws
  /// SingularMatrixError when the set is not unisolvent.
  const RatMatrix& dualCoeffs() const;
  PolyField dualField(Index i) const;
  PolyField fieldFromCoeffs(const RatVector& coeffs) const;
  RatVector fieldCoeffs(const PolyField& u) const;

  RatVector evaluateAll(const PolyField& u) const;

  Index perVertexCount() const { return perVertexCount_; }
  Index perEdgeSharedCount() const { return perEdgeSharedCount_; }
  Index perEdgeLocalCount() const { return perEdgeLocalCount_; }
  Index interiorCount() const { return interiorCount_; }

 private:
  ElementSpec spec_;
  TriangleGeom geom_;
  std::array<EdgeGeom, 3> edges_;
  std::vector<DoFunctional> functionals_;
  RatMatrix dofMatrix_;
  mutable RatMatrix dualCoeffs_;
  mutable std::once_flag dualOnce_;
  mutable bool dualOk_ = false;
  Index perVertexCount_ = 0;
  Index perEdgeSharedCount_ = 0;
  Index perEdgeLocalCount_ = 0;
  Index interiorCount_ = 0;

  void build();
  void computeEntityCounts();
};

/// Build the DoF set on a standalone triangle (edges oriented by ascending
/// local vertex index).
std::shared_ptr<const LocalElement> buildDofs(const ElementSpec& spec, const TriangleGeom& t);
std::shared_ptr<const LocalElement> buildDofs(const ElementSpec& spec, const TriangleGeom& t,
                                              const std::array<EdgeGeom, 3>& edges);

UnisolvenceResult checkUnisolvence(const ElementSpec& spec, const TriangleGeom& t);

struct DofCounts {
  Index perVertex = 0;
  Index perEdge = 0;  // shared + local edge moments
  Index interior = 0;
  Index total() const { return 3 * perVertex + 3 * perEdge + interior; }
};

/// Per-entity counts evaluated on the reference triangle.
DofCounts dofCounts(const ElementSpec& spec);

/// Scalar bubble basis fields of B_k(r).
std::vector<PolyField> scalarBubbleBasis(int k, const SmoothnessPair& r);
std::vector<PolyField> vectorBubbleBasis(int k, const SmoothnessPair& r);
/// { curl b : b in B_k(r) } as vector fields.
std::vector<PolyField> curlBubbleBasis(int k, const SmoothnessPair& r, const TriangleGeom& t);
/// { Air b : b in B_k(r) } as symmetric fields.
std::vector<PolyField> airBubbleBasis(int k, const SmoothnessPair& r, const TriangleGeom& t);
/// Rowwise curls of vector bubbles, matrix-valued.
std::vector<PolyField> curlVectorBubbleBasis(int k, const SmoothnessPair& r,
                                             const TriangleGeom& t);

/// Weights realizing moments against ambient/quotient: a deterministic
/// subset W of the ambient basis such that the moment functionals of
/// W together with those of the quotient generators act with full rank on
/// the ambient span, |W| = |ambient| - |generators|. The generators' action
/// is supplied elsewhere (integration by parts), so only W is materialized.
/// Throws QuotientError when the generators act with deficient rank.
std::vector<PolyField> quotientWeights(const std::vector<PolyField>& ambient,
                                       const std::vector<PolyField>& quotientGens,
                                       const TriangleGeom& t);

/// Span generators of the classical kernels, on a given triangle.
std::vector<PolyField> rigidMotions(const TriangleGeom& t);      // RM
std::vector<PolyField> raviartThomasKernel(const TriangleGeom& t);  // RT
std::vector<PolyField> linearScalars(const TriangleGeom& t);     // P1
std::vector<PolyField> constantScalar();                         // R

}  // namespace fec2d

#endif
