// SPDX-License-Identifier: MIT
//
// Global finite element spaces on a mesh, exact matrices of the discrete
// differential operators, and exactness verdicts for the 2D complexes:
// de Rham, curl div, elasticity/Hessian, and the div div family.

#ifndef FEC2D_COMPLEXES_HPP
#define FEC2D_COMPLEXES_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fec2d/elements.hpp"
#include "fec2d/mesh.hpp"

namespace fec2d {

/// A finite element space over a mesh: per-triangle local elements plus a
/// deterministic global numbering (vertices, then edges, then triangles).
struct GlobalSpace {
  ElementSpec elem;
  const Mesh* mesh = nullptr;
  Index dim = 0;
  Index perVertex = 0;
  Index perEdge = 0;      // shared edge DoFs
  Index perTriangle = 0;  // local edge moments + interior moments
  std::vector<std::shared_ptr<const LocalElement>> local;  // one per triangle
  std::vector<std::vector<Index>> globalIndex;             // [triangle][local dof]

  /// Triangles incident to the entity carrying a global DoF.
  std::vector<std::vector<Index>> dofTriangles;
};

GlobalSpace assembleGlobal(const ElementSpec& spec, const Mesh& mesh);

struct OperatorMatrix {
  DiffOp op = DiffOp::Grad;
  RatMatrix matrix;  // dim(dst) x dim(src)
  bool inclusionOk = true;
  std::string inclusionNote;
};

/// Column j holds the dst-DoF values of op applied to the j-th global dual
/// basis function of src. Certifies d(src) within dst: shared dst DoFs must
/// agree from every adjacent triangle and vanish where the source function
/// does. Throws InclusionError if certification fails (unless deferred).
OperatorMatrix assembleOperator(const GlobalSpace& src, const GlobalSpace& dst, DiffOp op,
                                bool throwOnInclusionFailure = true);

/// Interpolate a globally defined field (given per triangle) into the
/// space; returns nothing when the field is not in the space (shared-DoF
/// disagreement or re-expansion residual).
std::optional<RatVector> interpolateGlobal(
    const GlobalSpace& space, const std::function<PolyField(Index)>& fieldOnTriangle);

enum class ComplexKind {
  DeRham,
  CurlDiv,
  Elasticity,
  DivDivPlus,      // continuous tensor variant
  DivDivBdmStart,  // H(div) start, r1^e = -1 middle
  DivDivRelaxed    // H(div div) only middle
};

std::string complexKindName(ComplexKind k);
ComplexKind complexKindFromName(const std::string& name);

struct ComplexSpec {
  ComplexKind kind = ComplexKind::DeRham;
  int degree = 1;
  SmoothnessPair r1{-1, -1};
  SmoothnessPair r2{-1, -1};
  SmoothnessPair r3{-1, -1};  // CurlDiv only

  void validate() const;
  std::string describe() const;
};

struct ExactnessVerdict {
  std::string spec;
  bool applicable = true;  // false on non-simply-connected meshes
  std::vector<Index> dims;  // space dimensions, left kernel excluded
  std::vector<Index> ranks;
  std::vector<Index> nullities;
  Index leftKernelExpected = 0;
  bool leftKernelDimOk = false;
  bool leftKernelContained = false;
  bool isComplex = false;   // consecutive products vanish
  bool inclusionOk = false;
  std::vector<bool> kerImgOk;  // interior links rank(d_i) == nullity(d_{i+1})
  bool surjectiveEnd = false;
  long alternatingSum = 0;
  Index bettiObstruction = 0;  // reported when not applicable
  bool exact = false;
  std::vector<std::string> warnings;
};

ExactnessVerdict verifyComplex(const ComplexSpec& cs, const Mesh& mesh);

/// Re-verifies the 90-degree-rotated chain (grad/rot for de Rham, Hessian
/// for elasticity, sym grad/rot rot for div div) by conjugating fields and
/// assembling the rotated differential operators directly; asserts the
/// rotated operator matrices coincide with the unrotated ones and returns
/// the rotated verdict (which must match).
ExactnessVerdict rotateComplex(const ComplexSpec& cs, const Mesh& mesh);

/// Single-triangle bubble complex
///   0 -> B_{k+1}(r1+1) -curl-> B^div_k(r1,r2) -div-> B_{k-1}(r2) -Q0-> R -> 0.
struct BubbleVerdict {
  std::vector<Index> dims;  // the three bubble spaces
  long alternatingSum = 0;  // 0 - dims[0] + dims[1] - dims[2] + 1
  bool dimensionIdentity = false;  // dim B^div = dim B_{k-1}(r2) + dim B_{k+1}(r1+1) - 1
  bool exact = false;
};

BubbleVerdict verifyBubbleComplex(int k, const SmoothnessPair& r1, const SmoothnessPair& r2);

/// The polynomial dimension identity 1 - C(k+3,2) + 2C(k+2,2) - C(k+1,2) = 0
/// for k = 1..kMax, and the per-entity alternating sums (1, -1, 1) of the
/// de Rham dimension table over a parameter grid.
bool checkPolyIdentity(int kMax);

/// Criterion-9 style mutation: re-run the verdict with one interior DoF
/// removed from the last space; surjectivity and the last ker/img equality
/// must both flip while the unmutated verdict is exact.
struct MutationProbe {
  ExactnessVerdict original;
  bool mutatedSurjective = true;
  bool mutatedKerImgLast = true;
  long mutatedAlternatingSum = 0;
};

MutationProbe mutateLastSpace(const ComplexSpec& cs, const Mesh& mesh);

/// Column-space containment V^div_k(r1, r2) within V^div_k(r1, max(r1-1,-1))
/// realized by interpolating every dual basis function of the smaller space
/// into the larger one.
bool divSpaceContained(int k, const SmoothnessPair& r1, const SmoothnessPair& r2,
                       const Mesh& mesh);

}  // namespace fec2d

#endif
