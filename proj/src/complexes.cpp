// SPDX-License-Identifier: MIT

#include "fec2d/complexes.hpp"

#include <algorithm>

#include "fec2d/errors.hpp"

namespace fec2d {

GlobalSpace assembleGlobal(const ElementSpec& spec, const Mesh& mesh) {
  spec.validate();
  GlobalSpace space;
  space.elem = spec;
  space.mesh = &mesh;
  space.local.reserve(static_cast<size_t>(mesh.numTriangles()));
  for (Index t = 0; t < mesh.numTriangles(); ++t)
    space.local.push_back(buildDofs(spec, mesh.triangleGeom(t), mesh.triangleEdgeGeoms(t)));

  const auto& first = *space.local[0];
  space.perVertex = first.perVertexCount();
  space.perEdge = first.perEdgeSharedCount();
  space.perTriangle = 3 * first.perEdgeLocalCount() + first.interiorCount();
  const Index vertexBase = 0;
  const Index edgeBase = mesh.numVertices() * space.perVertex;
  const Index triBase = edgeBase + mesh.numEdges() * space.perEdge;
  space.dim = triBase + mesh.numTriangles() * space.perTriangle;
  space.dofTriangles.assign(static_cast<size_t>(space.dim), {});

  space.globalIndex.resize(static_cast<size_t>(mesh.numTriangles()));
  for (Index t = 0; t < mesh.numTriangles(); ++t) {
    const auto& elem = *space.local[static_cast<size_t>(t)];
    auto& map = space.globalIndex[static_cast<size_t>(t)];
    map.resize(elem.functionals().size());
    std::array<Index, 3> vertexSeen{0, 0, 0};
    std::array<Index, 3> edgeSeen{0, 0, 0};
    Index localSeen = 0;
    for (size_t i = 0; i < elem.functionals().size(); ++i) {
      const auto& f = elem.functionals()[i];
      Index gid = -1;
      if (f.kind == DoFKind::PointDeriv) {
        const int gv = mesh.triangle(t)[static_cast<size_t>(f.entity)];
        gid = vertexBase + gv * space.perVertex + vertexSeen[static_cast<size_t>(f.entity)]++;
      } else if (f.kind == DoFKind::EdgeMoment && f.shared) {
        const Index ge = mesh.triangleEdge(t, f.entity);
        gid = edgeBase + ge * space.perEdge + edgeSeen[static_cast<size_t>(f.entity)]++;
      } else {
        gid = triBase + t * space.perTriangle + localSeen++;
      }
      map[i] = gid;
      auto& tris = space.dofTriangles[static_cast<size_t>(gid)];
      if (tris.empty() || tris.back() != t) tris.push_back(t);
    }
  }
  // Vertex DoFs live on every triangle at the vertex, not only those that
  // wrote them; rebuild entity incidence from the mesh.
  for (Index t = 0; t < mesh.numTriangles(); ++t) {
    for (int lv = 0; lv < 3; ++lv) {
      const int gv = mesh.triangle(t)[static_cast<size_t>(lv)];
      for (Index i = 0; i < space.perVertex; ++i) {
        auto& tris = space.dofTriangles[static_cast<size_t>(vertexBase + gv * space.perVertex + i)];
        if (std::find(tris.begin(), tris.end(), t) == tris.end()) tris.push_back(t);
      }
    }
    for (int le = 0; le < 3; ++le) {
      const Index ge = mesh.triangleEdge(t, le);
      for (Index i = 0; i < space.perEdge; ++i) {
        auto& tris = space.dofTriangles[static_cast<size_t>(edgeBase + ge * space.perEdge + i)];
        if (std::find(tris.begin(), tris.end(), t) == tris.end()) tris.push_back(t);
      }
    }
  }
  for (auto& tris : space.dofTriangles) std::sort(tris.begin(), tris.end());
  return space;
}

namespace {

bool isActive(const GlobalSpace& space, Index globalDof, Index triangle) {
  const auto& map = space.globalIndex[static_cast<size_t>(triangle)];
  return std::find(map.begin(), map.end(), globalDof) != map.end();
}

}  // namespace

OperatorMatrix assembleOperator(const GlobalSpace& src, const GlobalSpace& dst, DiffOp op,
                                bool throwOnInclusionFailure) {
  if (diffOpTargetShape(op, src.elem.shape()) != dst.elem.shape())
    throw ShapeError("operator target shape does not match the target space");
  if (src.elem.degree - diffOpOrder(op) > dst.elem.degree)
    throw ShapeError("operator image degree exceeds the target space degree");
  const Mesh& mesh = *src.mesh;
  OperatorMatrix out;
  out.op = op;
  out.matrix = RatMatrix::Zero(dst.dim, src.dim);
  std::vector<std::vector<bool>> written(static_cast<size_t>(dst.dim),
                                         std::vector<bool>(static_cast<size_t>(src.dim), false));
  auto fail = [&](const std::string& note) {
    out.inclusionOk = false;
    if (out.inclusionNote.empty()) out.inclusionNote = note;
    if (throwOnInclusionFailure) throw InclusionError(note);
  };

  for (Index t = 0; t < mesh.numTriangles(); ++t) {
    const auto& srcE = *src.local[static_cast<size_t>(t)];
    const auto& dstE = *dst.local[static_cast<size_t>(t)];
    const TriangleGeom geom = mesh.triangleGeom(t);
    for (size_t j = 0; j < srcE.functionals().size(); ++j) {
      const Index J = src.globalIndex[static_cast<size_t>(t)][j];
      const PolyField dphi =
          differential(srcE.dualField(static_cast<Index>(j)), geom, op);
      const RatVector vals = dstE.evaluateAll(dphi);
      // Re-expansion certificate: the target interpolant reproduces dphi.
      const RatVector interp = dstE.dualCoeffs() * vals;
      if (interp != dstE.fieldCoeffs(dphi))
        fail("re-expansion residual nonzero on triangle " + std::to_string(t));
      for (size_t i = 0; i < dstE.functionals().size(); ++i) {
        const Index I = dst.globalIndex[static_cast<size_t>(t)][i];
        if (written[static_cast<size_t>(I)][static_cast<size_t>(J)]) {
          if (out.matrix(I, J) != vals[static_cast<Index>(i)])
            fail("shared target DoF is double-valued on the image");
        } else {
          out.matrix(I, J) = vals[static_cast<Index>(i)];
          written[static_cast<size_t>(I)][static_cast<size_t>(J)] = true;
        }
      }
    }
  }
  // Support certificate: a nonzero entry (I, J) requires the source basis
  // function J to be active on every triangle incident to I's entity.
  for (Index I = 0; I < dst.dim && out.inclusionOk; ++I) {
    for (Index J = 0; J < src.dim; ++J) {
      if (out.matrix(I, J) == 0) continue;
      for (Index t : dst.dofTriangles[static_cast<size_t>(I)]) {
        if (!isActive(src, J, t)) {
          fail("image of a source basis function leaks outside its support");
          break;
        }
      }
      if (!out.inclusionOk) break;
    }
  }
  return out;
}

std::optional<RatVector> interpolateGlobal(
    const GlobalSpace& space, const std::function<PolyField(Index)>& fieldOnTriangle) {
  const Mesh& mesh = *space.mesh;
  RatVector coeffs = RatVector::Zero(space.dim);
  std::vector<bool> written(static_cast<size_t>(space.dim), false);
  for (Index t = 0; t < mesh.numTriangles(); ++t) {
    const auto& elem = *space.local[static_cast<size_t>(t)];
    const PolyField f = fieldOnTriangle(t);
    const RatVector vals = elem.evaluateAll(f);
    const RatVector interp = elem.dualCoeffs() * vals;
    if (interp != elem.fieldCoeffs(f)) return std::nullopt;
    for (size_t i = 0; i < elem.functionals().size(); ++i) {
      const Index I = space.globalIndex[static_cast<size_t>(t)][i];
      if (written[static_cast<size_t>(I)]) {
        if (coeffs[I] != vals[static_cast<Index>(i)]) return std::nullopt;
      } else {
        coeffs[I] = vals[static_cast<Index>(i)];
        written[static_cast<size_t>(I)] = true;
      }
    }
  }
  return coeffs;
}

std::string complexKindName(ComplexKind k) {
  switch (k) {
    case ComplexKind::DeRham: return "derham";
    case ComplexKind::CurlDiv: return "curldiv";
    case ComplexKind::Elasticity: return "elasticity";
    case ComplexKind::DivDivPlus: return "divdiv-plus";
    case ComplexKind::DivDivBdmStart: return "divdiv-bdm-start";
    case ComplexKind::DivDivRelaxed: return "divdiv-relaxed";
  }
  return "?";
}

ComplexKind complexKindFromName(const std::string& name) {
  for (ComplexKind k : {ComplexKind::DeRham, ComplexKind::CurlDiv, ComplexKind::Elasticity,
                        ComplexKind::DivDivPlus, ComplexKind::DivDivBdmStart,
                        ComplexKind::DivDivRelaxed})
    if (complexKindName(k) == name) return k;
  throw ParseError("unknown complex kind '" + name + "'");
}

namespace {

void require(bool ok, const std::string& inequality) {
  if (!ok) throw ParameterError("parameter constraint violated: " + inequality);
}

std::string pairStr(const SmoothnessPair& r) {
  return "(" + std::to_string(r.rv) + "," + std::to_string(r.re) + ")";
}

/// The chain of element specs, operators, and left-kernel data of a complex.
struct ChainPlan {
  std::vector<ElementSpec> elems;
  std::vector<DiffOp> ops;
  bool augmentWithPosition = false;  // (curl, x) start of the curl div chain
  // Left kernel generators as global fields per triangle.
  std::function<std::vector<PolyField>(const TriangleGeom&)> leftGens;
  Index leftKernelExpected = 0;
  std::vector<std::string> warnings;
};

ChainPlan planChain(const ComplexSpec& cs) {
  ChainPlan plan;
  const int k = cs.degree;
  const SmoothnessPair r1 = cs.r1;
  const SmoothnessPair r2 = cs.r2;
  switch (cs.kind) {
    case ComplexKind::DeRham: {
      plan.elems = {ElementSpec{Family::ScalarSmooth, k + 1, r1 + 1, {}, 1},
                    ElementSpec{Family::VectorDiv, k, r1, r2},
                    ElementSpec{Family::ScalarSmooth, k - 1, r2, {}, 1}};
      plan.ops = {DiffOp::CurlScalar, DiffOp::DivVector};
      plan.leftGens = [](const TriangleGeom&) { return constantScalar(); };
      plan.leftKernelExpected = 1;
      if (bubbleDim(k - 1, r2) == 1)
        plan.warnings.push_back("dim B_{k-1}(r2) = 1 sits at the admissibility boundary");
      break;
    }
    case ComplexKind::CurlDiv: {
      const SmoothnessPair r3 = cs.r3;
      require(r2.rv >= std::max(r1.rv - 1, 0) && r2.re >= std::max(r1.re - 1, 0),
              "r2 >= max(r1 - 1, 0)");
      const SmoothnessPair lower3 = maxWith(r2 - 2, -1);
      require(r3.rv >= lower3.rv && r3.re >= lower3.re, "r3 >= max(r2 - 2, -1)");
      require(r3.rv >= std::max(2 * r3.re, -1), "r3^v >= max(2 r3^e, -1)");
      require(k >= std::max({2 * r1.rv + 2, 2 * r2.rv + 2, 2 * r3.rv + 4, 3}),
              "k >= max(2 r1^v + 2, 2 r2^v + 2, 2 r3^v + 4, 3)");
      require(bubbleDim(k - 1, r2) >= 1, "dim B_{k-1}(r2) >= 1");
      require(bubbleDim(k - 3, r3) >= 1, "dim B_{k-3}(r3) >= 1");
      plan.elems = {ElementSpec{Family::ScalarSmooth, k + 1, r1 + 1, {}, 1},
                    ElementSpec{Family::VectorDiv, k, r1, r2},
                    ElementSpec{Family::VectorDiv, k - 2, r2 - 1, r3},
                    ElementSpec{Family::ScalarSmooth, k - 3, r3, {}, 1}};
      plan.ops = {DiffOp::CurlScalar, DiffOp::CurlDiv, DiffOp::DivVector};
      plan.augmentWithPosition = true;
      plan.leftGens = [](const TriangleGeom&) { return constantScalar(); };
      plan.leftKernelExpected = 1;
      if (bubbleDim(k - 1, r2) == 1 || bubbleDim(k - 3, r3) == 1)
        plan.warnings.push_back("a bubble dimension bound sits at the admissibility boundary");
      break;
    }
    case ComplexKind::Elasticity: {
      plan.elems = {ElementSpec{Family::ScalarSmooth, k + 2, r1 + 2, {}, 1},
                    ElementSpec{Family::SymDiv, k, r1, r2},
                    ElementSpec{Family::ScalarSmooth, k - 1, r2, {}, 2}};
      plan.ops = {DiffOp::Air, DiffOp::DivMatrixRowwise};
      plan.leftGens = [](const TriangleGeom& t) { return linearScalars(t); };
      plan.leftKernelExpected = 3;
      break;
    }
    case ComplexKind::DivDivPlus: {
      require(r1.re >= 0, "r1 >= 0 (continuous tensor divdiv chain)");
      plan.elems = {ElementSpec{Family::ScalarSmooth, k + 1, r1 + 1, {}, 2},
                    ElementSpec{Family::SymDivDivPlus, k, r1, r2},
                    ElementSpec{Family::ScalarSmooth, k - 2, r2, {}, 1}};
      plan.ops = {DiffOp::SymCurl, DiffOp::DivDiv};
      plan.leftGens = [](const TriangleGeom& t) { return raviartThomasKernel(t); };
      plan.leftKernelExpected = 3;
      break;
    }
    case ComplexKind::DivDivBdmStart: {
      require(r1.re == -1, "r1^e = -1 (H(div)-start divdiv chain)");
      plan.elems = {
          ElementSpec{Family::VectorDiv, k + 1, SmoothnessPair{r1.rv + 1, 0},
                      SmoothnessPair{r1.rv, 0}},
          ElementSpec{Family::SymDivDivPlus, k, r1, r2},
          ElementSpec{Family::ScalarSmooth, k - 2, r2, {}, 1}};
      plan.ops = {DiffOp::SymCurl, DiffOp::DivDiv};
      plan.leftGens = [](const TriangleGeom& t) { return raviartThomasKernel(t); };
      plan.leftKernelExpected = 3;
      break;
    }
    case ComplexKind::DivDivRelaxed: {
      require(r1.re == -1, "r1^e = -1 (relaxed divdiv chain)");
      plan.elems = {
          ElementSpec{Family::ScalarSmooth, k + 1, SmoothnessPair{r1.rv + 1, 0}, {}, 2},
          ElementSpec{Family::SymDivDivRelaxed, k, r1, r2},
          ElementSpec{Family::ScalarSmooth, k - 2, r2, {}, 1}};
      plan.ops = {DiffOp::SymCurl, DiffOp::DivDiv};
      plan.leftGens = [](const TriangleGeom& t) { return raviartThomasKernel(t); };
      plan.leftKernelExpected = 3;
      break;
    }
  }
  for (const auto& e : plan.elems) e.validate();
  return plan;
}

struct AssembledChain {
  ChainPlan plan;
  std::vector<GlobalSpace> spaces;
  std::vector<OperatorMatrix> matrices;  // matrices[i]: spaces[i] -> spaces[i+1]
  bool positionContained = true;
};

AssembledChain assembleChain(const ComplexSpec& cs, const Mesh& mesh) {
  AssembledChain chain;
  chain.plan = planChain(cs);
  for (const auto& e : chain.plan.elems) chain.spaces.push_back(assembleGlobal(e, mesh));
  for (size_t i = 0; i + 1 < chain.spaces.size(); ++i)
    chain.matrices.push_back(assembleOperator(chain.spaces[i], chain.spaces[i + 1],
                                              chain.plan.ops[i], /*throw=*/false));
  if (chain.plan.augmentWithPosition) {
    // Adjoin the column of the global field x to the first operator.
    const auto xcol = interpolateGlobal(chain.spaces[1], [&](Index t) {
      return positionField(mesh.triangleGeom(t));
    });
    chain.positionContained = xcol.has_value();
    RatMatrix augmented(chain.matrices[0].matrix.rows(), chain.matrices[0].matrix.cols() + 1);
    augmented.leftCols(chain.matrices[0].matrix.cols()) = chain.matrices[0].matrix;
    if (xcol)
      augmented.col(augmented.cols() - 1) = *xcol;
    else
      augmented.col(augmented.cols() - 1).setZero();
    chain.matrices[0].matrix = std::move(augmented);
  }
  return chain;
}

ExactnessVerdict verdictFromChain(const ComplexSpec& cs, const Mesh& mesh,
                                  const AssembledChain& chain) {
  ExactnessVerdict v;
  v.spec = cs.describe();
  v.warnings = chain.plan.warnings;
  v.leftKernelExpected = chain.plan.leftKernelExpected;
  for (size_t i = 0; i < chain.spaces.size(); ++i) {
    Index d = chain.spaces[i].dim;
    if (i == 0 && chain.plan.augmentWithPosition) d += 1;
    v.dims.push_back(d);
  }
  v.inclusionOk = chain.positionContained;
  for (const auto& m : chain.matrices) {
    v.ranks.push_back(rank(m.matrix));
    v.nullities.push_back(nullity(m.matrix));
    if (!m.inclusionOk) {
      v.inclusionOk = false;
      if (!m.inclusionNote.empty()) v.warnings.push_back(m.inclusionNote);
    }
  }
  v.isComplex = true;
  for (size_t i = 0; i + 1 < chain.matrices.size(); ++i)
    v.isComplex = v.isComplex && isZero(chain.matrices[i + 1].matrix * chain.matrices[i].matrix);
  // Left kernel: dimension and generator containment.
  v.leftKernelDimOk = v.nullities[0] == v.leftKernelExpected;
  v.leftKernelContained = true;
  {
    std::vector<std::vector<PolyField>> gensPerTriangle;
    for (Index t = 0; t < mesh.numTriangles(); ++t)
      gensPerTriangle.push_back(chain.plan.leftGens(mesh.triangleGeom(t)));
    const size_t nGens = gensPerTriangle.empty() ? 0 : gensPerTriangle[0].size();
    for (size_t g = 0; g < nGens; ++g) {
      const auto coeffs = interpolateGlobal(chain.spaces[0], [&](Index t) {
        return gensPerTriangle[static_cast<size_t>(t)][g];
      });
      if (!coeffs) {
        v.leftKernelContained = false;
        continue;
      }
      RatVector full = RatVector::Zero(chain.matrices[0].matrix.cols());
      full.head(coeffs->size()) = *coeffs;
      if (!isZero(chain.matrices[0].matrix * full)) v.leftKernelContained = false;
    }
  }
  for (size_t i = 0; i + 1 < chain.matrices.size(); ++i)
    v.kerImgOk.push_back(v.ranks[i] == v.nullities[i + 1]);
  v.surjectiveEnd = chain.matrices.back().inclusionOk &&
                    v.ranks.back() == chain.spaces.back().dim;
  long sum = static_cast<long>(v.leftKernelExpected);
  long sign = -1;
  for (Index d : v.dims) {
    sum += sign * static_cast<long>(d);
    sign = -sign;
  }
  v.alternatingSum = sum;
  v.applicable = mesh.simplyConnected();
  if (!v.applicable && chain.matrices.size() >= 2)
    v.bettiObstruction = v.nullities[1] - v.ranks[0];
  bool links = true;
  for (bool ok : v.kerImgOk) links = links && ok;
  v.exact = v.applicable && v.isComplex && v.inclusionOk && v.leftKernelDimOk &&
            v.leftKernelContained && links && v.surjectiveEnd && v.alternatingSum == 0;
  return v;
}

}  // namespace

void ComplexSpec::validate() const { (void)planChain(*this); }

std::string ComplexSpec::describe() const {
  std::string s = complexKindName(kind) + " k=" + std::to_string(degree) + " r1=" + pairStr(r1) +
                  " r2=" + pairStr(r2);
  if (kind == ComplexKind::CurlDiv) s += " r3=" + pairStr(r3);
  return s;
}

ExactnessVerdict verifyComplex(const ComplexSpec& cs, const Mesh& mesh) {
  const AssembledChain chain = assembleChain(cs, mesh);
  return verdictFromChain(cs, mesh, chain);
}

namespace {

enum class FieldRotation { None, VectorPerp, SymConjugate };

/// v -> R'v = (-v2, v1); tau -> R' tau R. Both are the exact conjugations
/// that turn curl/div chains into grad/rot chains.
PolyField rotateField(const PolyField& f, FieldRotation rot, bool inverse) {
  switch (rot) {
    case FieldRotation::None: return f;
    case FieldRotation::VectorPerp: {
      if (!inverse)  // R' (v0, v1) = (-v1, v0)
        return PolyField(FieldShape::Vector2, {f.comp(1) * Rational(-1), f.comp(0)});
      return PolyField(FieldShape::Vector2, {f.comp(1), f.comp(0) * Rational(-1)});
    }
    case FieldRotation::SymConjugate: {
      // R' tau R swaps the diagonal and negates the off-diagonal entry;
      // the map is an involution.
      return PolyField(FieldShape::Sym22,
                       {f.comp(2), f.comp(1) * Rational(-1), f.comp(0)});
    }
  }
  throw ShapeError("bad field rotation");
}

struct RotationPlan {
  std::vector<FieldRotation> spaceRot;
  std::vector<DiffOp> rotOps;
};

RotationPlan planRotation(ComplexKind kind) {
  switch (kind) {
    case ComplexKind::DeRham:
      return {{FieldRotation::None, FieldRotation::VectorPerp, FieldRotation::None},
              {DiffOp::Grad, DiffOp::RotVector}};
    case ComplexKind::Elasticity:
      return {{FieldRotation::None, FieldRotation::SymConjugate, FieldRotation::VectorPerp},
              {DiffOp::Hess, DiffOp::RotMatrixRowwise}};
    case ComplexKind::DivDivPlus:
    case ComplexKind::DivDivBdmStart:
    case ComplexKind::DivDivRelaxed:
      return {{FieldRotation::VectorPerp, FieldRotation::SymConjugate, FieldRotation::None},
              {DiffOp::SymGrad, DiffOp::RotRot}};
    case ComplexKind::CurlDiv:
      throw ParameterError("rotation is defined for de Rham, elasticity, and divdiv chains");
  }
  throw ParameterError("bad complex kind");
}

}  // namespace

ExactnessVerdict rotateComplex(const ComplexSpec& cs, const Mesh& mesh) {
  const RotationPlan rot = planRotation(cs.kind);
  AssembledChain chain = assembleChain(cs, mesh);
  // Assemble each rotated operator directly (rotated dual fields, rotated
  // differential, rotated target DoFs) and require it to coincide with the
  // unrotated matrix: this certifies the conjugation identities
  // d_rot o rho = rho o d on every basis function.
  for (size_t opIdx = 0; opIdx < chain.matrices.size(); ++opIdx) {
    const GlobalSpace& src = chain.spaces[opIdx];
    const GlobalSpace& dst = chain.spaces[opIdx + 1];
    RatMatrix rotated = RatMatrix::Zero(dst.dim, src.dim);
    std::vector<std::vector<bool>> written(
        static_cast<size_t>(dst.dim), std::vector<bool>(static_cast<size_t>(src.dim), false));
    for (Index t = 0; t < mesh.numTriangles(); ++t) {
      const auto& srcE = *src.local[static_cast<size_t>(t)];
      const auto& dstE = *dst.local[static_cast<size_t>(t)];
      const TriangleGeom geom = mesh.triangleGeom(t);
      for (size_t j = 0; j < srcE.functionals().size(); ++j) {
        const Index J = src.globalIndex[static_cast<size_t>(t)][j];
        const PolyField phiRot =
            rotateField(srcE.dualField(static_cast<Index>(j)), rot.spaceRot[opIdx], false);
        const PolyField w = differential(phiRot, geom, rot.rotOps[opIdx]);
        const PolyField back = rotateField(w, rot.spaceRot[opIdx + 1], true);
        const RatVector vals = dstE.evaluateAll(back);
        for (size_t i = 0; i < dstE.functionals().size(); ++i) {
          const Index I = dst.globalIndex[static_cast<size_t>(t)][i];
          if (!written[static_cast<size_t>(I)][static_cast<size_t>(J)]) {
            rotated(I, J) = vals[static_cast<Index>(i)];
            written[static_cast<size_t>(I)][static_cast<size_t>(J)] = true;
          }
        }
      }
    }
    if (rotated != chain.matrices[opIdx].matrix)
      throw InclusionError("rotated operator does not conjugate to the unrotated one");
    chain.matrices[opIdx].matrix = std::move(rotated);
  }
  ExactnessVerdict v = verdictFromChain(cs, mesh, chain);
  v.spec = "rotated " + v.spec;
  return v;
}

BubbleVerdict verifyBubbleComplex(int k, const SmoothnessPair& r1, const SmoothnessPair& r2) {
  const TriangleGeom t = TriangleGeom::reference();
  const ElementSpec divSpec{Family::VectorDiv, k, r1, r2};
  divSpec.validate();
  const auto elem = buildDofs(divSpec, t);

  // B^div_k(r1, r2): the kernel of the shared (vertex + edge) DoFs.
  std::vector<Index> sharedRows;
  for (Index i = 0; i < static_cast<Index>(elem->functionals().size()); ++i) {
    const auto& f = elem->functionals()[static_cast<size_t>(i)];
    if (f.kind != DoFKind::InteriorMoment && f.shared) sharedRows.push_back(i);
  }
  RatMatrix shared(static_cast<Index>(sharedRows.size()), elem->dim());
  for (Index i = 0; i < shared.rows(); ++i)
    shared.row(i) = elem->dofMatrix().row(sharedRows[static_cast<size_t>(i)]);
  const RatMatrix bdivBasis = nullspaceBasis(shared);

  const auto b0nodes = bubbleSet(k + 1, r1 + 1);
  const auto b2nodes = bubbleSet(k - 1, r2);

  BubbleVerdict v;
  v.dims = {static_cast<Index>(b0nodes.size()), bdivBasis.cols(),
            static_cast<Index>(b2nodes.size())};
  v.alternatingSum = -v.dims[0] + v.dims[1] - v.dims[2] + 1;
  v.dimensionIdentity =
      v.dims[1] == static_cast<Index>(b0nodes.size() + b2nodes.size()) - 1;

  // d1 = curl: B_{k+1}(r1+1) -> B^div, in the chosen bases.
  RatMatrix d1(bdivBasis.cols(), static_cast<Index>(b0nodes.size()));
  bool curlContained = true;
  for (size_t j = 0; j < b0nodes.size(); ++j) {
    const PolyField curlB = differential(
        PolyField::scalar(BernsteinPoly::monomial(b0nodes[j])), t, DiffOp::CurlScalar);
    const auto coords = solveConsistent(bdivBasis, elem->fieldCoeffs(curlB));
    if (!coords) {
      curlContained = false;
      break;
    }
    d1.col(static_cast<Index>(j)) = *coords;
  }

  // d2 = div: B^div -> B_{k-1}(r2): membership is coefficient support on S2.
  const auto latticeLow = enumerateLattice(k - 1);
  std::vector<Index> nodePos(latticeLow.size(), -1);
  RatMatrix d2(static_cast<Index>(b2nodes.size()), bdivBasis.cols());
  d2.setZero();
  bool divContained = true;
  for (size_t n = 0; n < b2nodes.size(); ++n) nodePos[static_cast<size_t>(latticeIndex(b2nodes[n]))] = static_cast<Index>(n);
  for (Index j = 0; j < bdivBasis.cols(); ++j) {
    const PolyField field = elem->fieldFromCoeffs(bdivBasis.col(j));
    const PolyField divF = differential(field, t, DiffOp::DivVector);
    const RatVector& c = divF.comp(0).coeffs();
    for (Index n = 0; n < c.size(); ++n) {
      if (c[n] == 0) continue;
      if (nodePos[static_cast<size_t>(n)] < 0) {
        divContained = false;
        break;
      }
      d2(nodePos[static_cast<size_t>(n)], j) = c[n];
    }
  }

  // d3 = Q0: mean-value functional on B_{k-1}(r2).
  RatMatrix d3(1, static_cast<Index>(b2nodes.size()));
  for (size_t n = 0; n < b2nodes.size(); ++n)
    d3(0, static_cast<Index>(n)) = BernsteinPoly::monomial(b2nodes[n]).integrate(t);

  const bool products = isZero(d2 * d1) && isZero(d3 * d2);
  const Index r1k = rank(d1);
  const Index r2k = rank(d2);
  const Index r3k = rank(d3);
  v.exact = curlContained && divContained && products && nullity(d1) == 0 &&
            r1k == nullity(d2) && r2k == nullity(d3) && r3k == 1 && v.alternatingSum == 0;
  return v;
}

bool checkPolyIdentity(int kMax) {
  if (kMax < 1) throw ParameterError("checkPolyIdentity requires kMax >= 1");
  for (long k = 1; k <= kMax; ++k) {
    const Integer lhs =
        1 - binomial(k + 3, 2) + 2 * binomial(k + 2, 2) - binomial(k + 1, 2);
    if (lhs != 0) return false;
  }
  // Per-entity alternating sums of the de Rham dimension table over a grid
  // of admissible (r1, k) with r0 = r1 + 1, r2 = r1 - 1.
  for (int r1e = 0; r1e <= 2; ++r1e) {
    for (int r1v = 2 * r1e + 1; r1v <= 2 * r1e + 3; ++r1v) {
      for (long k = 2 * r1v + 2; k <= 2 * r1v + 5; ++k) {
        const SmoothnessPair r1{r1v, r1e};
        const SmoothnessPair r0 = r1 + 1;
        const SmoothnessPair r2 = r1 - 1;
        const Integer c00 = binomial(r0.rv + 2, 2);
        const Integer c10 = 2 * binomial(r1.rv + 2, 2);
        const Integer c20 = binomial(r2.rv + 2, 2);
        Integer c01 = 0, c11 = 0, c21 = 0;
        for (int i = 0; i <= r0.re; ++i) c01 += k - 2 * r0.rv + i;
        for (int i = 0; i <= r1.re; ++i) c11 += 2 * (k - 1 - 2 * r1.rv + i);
        for (int i = 0; i <= r2.re; ++i) c21 += k - 2 - 2 * r2.rv + i;
        const Integer c02 = binomial(k + 3, 2) - 3 * (c00 + c01);
        const Integer c12 = 2 * binomial(k + 2, 2) - 3 * (c10 + c11);
        const Integer c22 = binomial(k + 1, 2) - 3 * (c20 + c21);
        if (c00 - c10 + c20 != 1) return false;
        if (c01 - c11 + c21 != -1) return false;
        if (c02 - c12 + c22 != 1) return false;
      }
    }
  }
  return true;
}

MutationProbe mutateLastSpace(const ComplexSpec& cs, const Mesh& mesh) {
  const AssembledChain chain = assembleChain(cs, mesh);
  MutationProbe probe;
  probe.original = verdictFromChain(cs, mesh, chain);
  const GlobalSpace& last = chain.spaces.back();
  if (last.perTriangle == 0)
    throw ParameterError("mutation requires an interior DoF in the last space");
  const RatMatrix& a = chain.matrices.back().matrix;
  const Index dropped = last.dim - 1;  // numbering ends with interior DoFs
  const RatMatrix reduced = a.topRows(dropped);
  // Surjectivity onto the reduced space includes the containment of the
  // image: the dropped functional must vanish on every image vector.
  const bool imageContained = isZero(RatMatrix(a.row(dropped)));
  probe.mutatedSurjective = imageContained && rank(reduced) == dropped;
  const Index prevRank = chain.matrices.size() >= 2
                             ? rank(chain.matrices[chain.matrices.size() - 2].matrix)
                             : 0;
  probe.mutatedKerImgLast = nullity(reduced) == prevRank;
  long sum = static_cast<long>(probe.original.leftKernelExpected);
  long sign = -1;
  for (size_t i = 0; i < chain.spaces.size(); ++i) {
    long d = chain.spaces[i].dim;
    if (i == 0 && chain.plan.augmentWithPosition) d += 1;
    if (i + 1 == chain.spaces.size()) d -= 1;
    sum += sign * d;
    sign = -sign;
  }
  probe.mutatedAlternatingSum = sum;
  return probe;
}

bool divSpaceContained(int k, const SmoothnessPair& r1, const SmoothnessPair& r2,
                       const Mesh& mesh) {
  const GlobalSpace small = assembleGlobal(ElementSpec{Family::VectorDiv, k, r1, r2}, mesh);
  const GlobalSpace big =
      assembleGlobal(ElementSpec{Family::VectorDiv, k, r1, maxWith(r1 - 1, -1)}, mesh);
  for (Index J = 0; J < small.dim; ++J) {
    const auto coeffs = interpolateGlobal(big, [&](Index t) -> PolyField {
      const auto& map = small.globalIndex[static_cast<size_t>(t)];
      for (size_t j = 0; j < map.size(); ++j)
        if (map[j] == J) return small.local[static_cast<size_t>(t)]->dualField(static_cast<Index>(j));
      return PolyField::zero(FieldShape::Vector2, k);
    });
    if (!coeffs) return false;
  }
  return true;
}

}  // namespace fec2d
