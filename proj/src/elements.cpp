// SPDX-License-Identifier: MIT

#include "fec2d/elements.hpp"

#include <algorithm>

#include "fec2d/errors.hpp"

namespace fec2d {

std::string familyName(Family f) {
  switch (f) {
    case Family::ScalarSmooth: return "scalar";
    case Family::VectorDiv: return "vector-div";
    case Family::VectorDivTn: return "vector-div-tn";
    case Family::SymDiv: return "sym-div";
    case Family::MatrixDivDivPlus: return "matrix-divdiv-plus";
    case Family::SymDivDivPlus: return "sym-divdiv-plus";
    case Family::SymDivDivRelaxed: return "sym-divdiv-relaxed";
  }
  return "?";
}

Family familyFromName(const std::string& name) {
  for (Family f : {Family::ScalarSmooth, Family::VectorDiv, Family::VectorDivTn, Family::SymDiv,
                   Family::MatrixDivDivPlus, Family::SymDivDivPlus, Family::SymDivDivRelaxed})
    if (familyName(f) == name) return f;
  throw ParseError("unknown element family '" + name + "'");
}

FieldShape ElementSpec::shape() const {
  switch (family) {
    case Family::ScalarSmooth:
      return components == 2 ? FieldShape::Vector2 : FieldShape::Scalar;
    case Family::VectorDiv:
    case Family::VectorDivTn: return FieldShape::Vector2;
    case Family::SymDiv:
    case Family::SymDivDivPlus:
    case Family::SymDivDivRelaxed: return FieldShape::Sym22;
    case Family::MatrixDivDivPlus: return FieldShape::Matrix22;
  }
  return FieldShape::Scalar;
}

namespace {

void require(bool ok, const std::string& inequality) {
  if (!ok) throw ParameterError("parameter constraint violated: " + inequality);
}

std::string pairStr(const SmoothnessPair& r) {
  return "(" + std::to_string(r.rv) + "," + std::to_string(r.re) + ")";
}

}  // namespace

void ElementSpec::validate() const {
  const int k = degree;
  switch (family) {
    case Family::ScalarSmooth:
      require(components == 1 || components == 2, "components in {1,2}");
      require(r1.re >= -1, "r^e >= -1");
      require(r1.rv >= std::max(2 * r1.re, -1), "r^v >= max(2 r^e, -1)");
      require(k >= std::max(2 * r1.rv + 1, 0), "k >= max(2 r^v + 1, 0)");
      return;
    case Family::VectorDiv: {
      require(r1.rv >= -1 && r1.re >= -1, "r1 >= -1");
      require(r1.rv >= 2 * r1.re + 1, "r1^v >= 2 r1^e + 1");
      const SmoothnessPair lower = maxWith(r1 - 1, -1);
      require(r2.rv >= lower.rv && r2.re >= lower.re, "r2 >= max(r1 - 1, -1)");
      require(r2.rv >= std::max(2 * r2.re, -1), "r2^v >= max(2 r2^e, -1)");
      require(k >= std::max({2 * r1.rv + 2, 2 * r2.rv + 2, 1}),
              "k >= max(2 r1^v + 2, 2 r2^v + 2, 1)");
      require(bubbleDim(k - 1, r2) >= 1, "dim B_{k-1}(r2) >= 1");
      return;
    }
    case Family::VectorDivTn:
      require(r1.re == -1, "r1^e = -1 (tangential-normal family)");
      require(r1.rv >= -1, "r1^v >= -1");
      require(k >= std::max(2 * r1.rv + 2, 1), "k >= max(2 r1^v + 2, 1)");
      return;
    case Family::SymDiv: {
      require(r1.rv >= -1 && r1.re >= -1, "r1 >= -1");
      require(r1.rv >= 2 * r1.re + 2, "r1^v >= 2 r1^e + 2");
      const SmoothnessPair lower = maxWith(r1 - 1, -1);
      require(r2.rv >= lower.rv && r2.re >= lower.re, "r2 >= max(r1 - 1, -1)");
      require(r2.rv >= std::max(2 * r2.re, -1), "r2^v >= max(2 r2^e, -1)");
      require(k >= std::max(2 * r1.rv + 3, 2 * r2.rv + 2), "k >= max(2 r1^v + 3, 2 r2^v + 2)");
      require(2 * bubbleDim(k - 1, r2) >= 3, "dim B^2_{k-1}(r2) >= 3");
      return;
    }
    case Family::MatrixDivDivPlus:
    case Family::SymDivDivPlus:
    case Family::SymDivDivRelaxed: {
      if (family == Family::SymDivDivRelaxed)
        require(r1.re == -1, "r1^e = -1 (relaxed family)");
      if (family == Family::MatrixDivDivPlus) require(r1.re >= 0, "r1^e >= 0 (matrix family)");
      if (r1.re >= 0) {
        require(r1.rv >= 0, "r1 >= 0");
        if (family == Family::MatrixDivDivPlus)
          require(r1.rv >= 2 * r1.re + 1, "r1^v >= 2 r1^e + 1");
        else
          require(r1.rv >= 2 * r1.re + 2, "r1^v >= 2 r1^e + 2");
      } else {
        require(r1.re == -1, "r1^e >= -1");
        require(r1.rv >= 0, "r1^v >= 0");
      }
      const SmoothnessPair lower = maxWith(r1 - 2, -1);
      require(r2.rv >= lower.rv && r2.re >= lower.re, "r2 >= max(r1 - 2, -1)");
      require(r2.rv >= std::max(2 * r2.re, -1), "r2^v >= max(2 r2^e, -1)");
      require(k >= std::max(2 * r1.rv + 3, 2 * r2.rv + 3), "k >= max(2 r1^v + 3, 2 r2^v + 3)");
      require(bubbleDim(k - 2, r2) >= 3, "dim B_{k-2}(r2) >= 3");
      return;
    }
  }
}

std::string ElementSpec::describe() const {
  std::string s = familyName(family) + " k=" + std::to_string(degree) + " r1=" + pairStr(r1);
  if (family != Family::ScalarSmooth && family != Family::VectorDivTn) s += " r2=" + pairStr(r2);
  if (components == 2) s += " (two components)";
  return s;
}

namespace {

PolyField applyDerived(const PolyField& u, const TriangleGeom& t, DerivedField d) {
  switch (d) {
    case DerivedField::Value: return u;
    case DerivedField::Div:
      return differential(u, t,
                          u.shape() == FieldShape::Vector2 ? DiffOp::DivVector
                                                           : DiffOp::DivMatrixRowwise);
    case DerivedField::DivDiv: return differential(u, t, DiffOp::DivDiv);
  }
  throw ShapeError("bad derived field");
}

BernsteinPoly applySelector(const PolyField& w, const PolyField& original, const TriangleGeom& t,
                            const EdgeGeom& e, EdgeSelector sel, int component) {
  const RatVector2& n = e.normal;
  const RatVector2& tg = e.tangent;
  switch (sel) {
    case EdgeSelector::Identity: return w.comp(0);
    case EdgeSelector::DotN: return w.comp(0) * n[0] + w.comp(1) * n[1];
    case EdgeSelector::DotT: return w.comp(0) * tg[0] + w.comp(1) * tg[1];
    case EdgeSelector::Comp: return w.comp(component);
    case EdgeSelector::MatNComp:
      return w.entry(component, 0) * n[0] + w.entry(component, 1) * n[1];
    case EdgeSelector::MatTComp:
      return w.entry(component, 0) * tg[0] + w.entry(component, 1) * tg[1];
    case EdgeSelector::NN:
      return w.entry(0, 0) * (n[0] * n[0]) + w.entry(0, 1) * (2 * n[0] * n[1]) +
             w.entry(1, 1) * (n[1] * n[1]);
    case EdgeSelector::TT:
      return w.entry(0, 0) * (tg[0] * tg[0]) + w.entry(0, 1) * (2 * tg[0] * tg[1]) +
             w.entry(1, 1) * (tg[1] * tg[1]);
    case EdgeSelector::TN:
      return w.entry(0, 0) * (tg[0] * n[0]) + w.entry(0, 1) * (tg[0] * n[1] + tg[1] * n[0]) +
             w.entry(1, 1) * (tg[1] * n[1]);
    case EdgeSelector::Trace2DivDiv: {
      // d_t(t' u n)/|t|^2 + n . div u: the div div edge trace, with the
      // rational |t|^2 factor keeping both terms at one common per-edge
      // scale (the whole functional is |e| times the unit-frame trace).
      const BernsteinPoly tn = applySelector(w, original, t, e, EdgeSelector::TN, 0);
      const BernsteinPoly dtTn = tn.derivative(t, 0) * tg[0] + tn.derivative(t, 1) * tg[1];
      const PolyField divu = applyDerived(original, t, DerivedField::Div);
      const BernsteinPoly ndiv = divu.comp(0) * n[0] + divu.comp(1) * n[1];
      const Rational invLen2 = Rational(1) / e.tangentLengthSq();
      return dtTn * invLen2 + ndiv;
    }
  }
  throw ShapeError("bad edge selector");
}

}  // namespace

Rational DoFunctional::evaluate(const PolyField& u, const TriangleGeom& t,
                                const std::array<EdgeGeom, 3>& edges) const {
  const PolyField w = applyDerived(u, t, derived);
  switch (kind) {
    case DoFKind::PointDeriv: {
      BernsteinPoly p = w.comp(component);
      for (int i = 0; i < betaX; ++i) p = p.derivative(t, 0);
      for (int i = 0; i < betaY; ++i) p = p.derivative(t, 1);
      std::array<Rational, 3> bary{0, 0, 0};
      bary[static_cast<size_t>(entity)] = 1;
      return p.evaluateBary(bary);
    }
    case DoFKind::EdgeMoment: {
      const EdgeGeom& e = edges[static_cast<size_t>(entity)];
      BernsteinPoly s = applySelector(w, u, t, e, selector, component);
      for (int i = 0; i < normalOrder; ++i)
        s = s.derivative(t, 0) * e.normal[0] + s.derivative(t, 1) * e.normal[1];
      const EdgePoly traced = traceToEdge(s, e);
      return integrateEdge(traced * weight1d);
    }
    case DoFKind::InteriorMoment: return w.innerProduct(weightField, t);
  }
  throw ShapeError("bad DoF kind");
}

std::vector<PolyField> scalarBubbleBasis(int k, const SmoothnessPair& r) {
  std::vector<PolyField> basis;
  for (const auto& alpha : bubbleSet(k, r))
    basis.push_back(PolyField::scalar(BernsteinPoly::monomial(alpha)));
  return basis;
}

std::vector<PolyField> vectorBubbleBasis(int k, const SmoothnessPair& r) {
  std::vector<PolyField> basis;
  for (const auto& alpha : bubbleSet(k, r)) {
    const BernsteinPoly mono = BernsteinPoly::monomial(alpha);
    const BernsteinPoly z = BernsteinPoly::zero(k);
    basis.push_back(PolyField(FieldShape::Vector2, {mono, z}));
    basis.push_back(PolyField(FieldShape::Vector2, {z, mono}));
  }
  return basis;
}

std::vector<PolyField> curlBubbleBasis(int k, const SmoothnessPair& r, const TriangleGeom& t) {
  std::vector<PolyField> basis;
  for (const auto& alpha : bubbleSet(k, r)) {
    const auto b = PolyField::scalar(BernsteinPoly::monomial(alpha));
    basis.push_back(differential(b, t, DiffOp::CurlScalar));
  }
  return basis;
}

std::vector<PolyField> airBubbleBasis(int k, const SmoothnessPair& r, const TriangleGeom& t) {
  std::vector<PolyField> basis;
  for (const auto& alpha : bubbleSet(k, r)) {
    const auto b = PolyField::scalar(BernsteinPoly::monomial(alpha));
    basis.push_back(differential(b, t, DiffOp::Air));
  }
  return basis;
}

std::vector<PolyField> curlVectorBubbleBasis(int k, const SmoothnessPair& r,
                                             const TriangleGeom& t) {
  std::vector<PolyField> basis;
  for (const auto& alpha : bubbleSet(k, r)) {
    const BernsteinPoly mono = BernsteinPoly::monomial(alpha);
    const BernsteinPoly z = BernsteinPoly::zero(k);
    for (int row = 0; row < 2; ++row) {
      const PolyField v = row == 0 ? PolyField(FieldShape::Vector2, {mono, z})
                                   : PolyField(FieldShape::Vector2, {z, mono});
      basis.push_back(differential(v, t, DiffOp::CurlVectorRowwise));
    }
  }
  return basis;
}

std::vector<PolyField> quotientWeights(const std::vector<PolyField>& ambient,
                                       const std::vector<PolyField>& quotientGens,
                                       const TriangleGeom& t) {
  const Index n = static_cast<Index>(ambient.size());
  const Index g = static_cast<Index>(quotientGens.size());
  if (n == 0) {
    if (g > 0)
      throw QuotientError("quotient of an empty moment space by a nonempty generator set");
    return {};
  }
  // Moment functionals in coordinates on the ambient span: one Gram row per
  // generator, then greedily appended ambient rows until the action on the
  // ambient span has full rank. The generators' moments are supplied by
  // integration by parts, so only the appended weights become DoFs.
  RatMatrix rows(g + n, n);
  for (Index i = 0; i < g; ++i)
    for (Index j = 0; j < n; ++j)
      rows(i, j) =
          quotientGens[static_cast<size_t>(i)].innerProduct(ambient[static_cast<size_t>(j)], t);
  if (g > 0 && rank(rows.topRows(g)) != g)
    throw QuotientError("quotient generators act with deficient rank on the moment space");
  std::vector<PolyField> chosen;
  Index cur = g;
  Index curRank = g;
  for (Index cand = 0; cand < n && curRank < n; ++cand) {
    for (Index j = 0; j < n; ++j)
      rows(cur, j) =
          ambient[static_cast<size_t>(cand)].innerProduct(ambient[static_cast<size_t>(j)], t);
    const Index r = rank(rows.topRows(cur + 1));
    if (r > curRank) {
      chosen.push_back(ambient[static_cast<size_t>(cand)]);
      curRank = r;
      ++cur;
    }
  }
  if (curRank != n) throw QuotientError("moment space Gram matrix is rank-deficient");
  return chosen;
}

std::vector<PolyField> rigidMotions(const TriangleGeom& t) {
  const BernsteinPoly one = BernsteinPoly::constant(0, 1);
  const BernsteinPoly zero = BernsteinPoly::zero(0);
  return {PolyField::vector(one, zero), PolyField::vector(zero, one),
          PolyField::vector(coordinate(t, 1) * Rational(-1), coordinate(t, 0))};
}

std::vector<PolyField> raviartThomasKernel(const TriangleGeom& t) {
  const BernsteinPoly one = BernsteinPoly::constant(0, 1);
  const BernsteinPoly zero = BernsteinPoly::zero(0);
  return {PolyField::vector(one, zero), PolyField::vector(zero, one),
          PolyField::vector(coordinate(t, 0), coordinate(t, 1))};
}

std::vector<PolyField> linearScalars(const TriangleGeom& t) {
  return {PolyField::scalar(BernsteinPoly::constant(0, 1)), PolyField::scalar(coordinate(t, 0)),
          PolyField::scalar(coordinate(t, 1))};
}

std::vector<PolyField> constantScalar() {
  return {PolyField::scalar(BernsteinPoly::constant(0, 1))};
}

namespace {

struct Builder {
  const TriangleGeom& geom;
  std::vector<DoFunctional> dofs;

  void vertexJets(int vertex, DerivedField derived, int minOrder, int maxOrder, Index comps) {
    for (int m = std::max(minOrder, 0); m <= maxOrder; ++m) {
      for (int bx = m; bx >= 0; --bx) {
        for (Index c = 0; c < comps; ++c) {
          DoFunctional f;
          f.kind = DoFKind::PointDeriv;
          f.entity = vertex;
          f.derived = derived;
          f.betaX = bx;
          f.betaY = m - bx;
          f.component = static_cast<int>(c);
          f.shared = true;
          dofs.push_back(std::move(f));
        }
      }
    }
  }

  void edgeMoments(int edge, DerivedField derived, EdgeSelector sel, int normalOrder,
                   int weightDegree, Index comps, bool shared) {
    if (weightDegree < 0) return;
    for (int j = 0; j <= weightDegree; ++j) {
      for (Index c = 0; c < comps; ++c) {
        DoFunctional f;
        f.kind = DoFKind::EdgeMoment;
        f.entity = edge;
        f.derived = derived;
        f.selector = sel;
        f.normalOrder = normalOrder;
        f.component = static_cast<int>(c);
        f.weight1d = EdgePoly::basis(weightDegree, j);
        f.shared = shared;
        dofs.push_back(std::move(f));
      }
    }
  }

  void interiorMoments(DerivedField derived, const std::vector<PolyField>& weights) {
    for (const auto& w : weights) {
      DoFunctional f;
      f.kind = DoFKind::InteriorMoment;
      f.entity = 0;
      f.derived = derived;
      f.weightField = w;
      f.shared = false;
      dofs.push_back(std::move(f));
    }
  }
};

std::vector<DoFunctional> buildFunctionals(const ElementSpec& spec, const TriangleGeom& geom) {
  Builder b{geom, {}};
  const int k = spec.degree;
  const SmoothnessPair r1 = spec.r1;
  const SmoothnessPair r2 = spec.r2;
  const Index nc = shapeComponents(spec.shape());

  switch (spec.family) {
    case Family::ScalarSmooth: {
      for (int v = 0; v < 3; ++v) b.vertexJets(v, DerivedField::Value, 0, r1.rv, nc);
      for (int e = 0; e < 3; ++e)
        for (int i = 0; i <= r1.re; ++i)
          b.edgeMoments(e, DerivedField::Value,
                        nc == 1 ? EdgeSelector::Identity : EdgeSelector::Comp, i,
                        k - 2 * (r1.rv + 1) + i, nc, true);
      b.interiorMoments(DerivedField::Value,
                        nc == 1 ? scalarBubbleBasis(k, r1) : vectorBubbleBasis(k, r1));
      break;
    }

    case Family::VectorDiv: {
      for (int v = 0; v < 3; ++v) {
        b.vertexJets(v, DerivedField::Value, 0, r1.rv, 2);
        b.vertexJets(v, DerivedField::Div, std::max(r1.rv, 0), r2.rv, 1);
      }
      for (int e = 0; e < 3; ++e) {
        b.edgeMoments(e, DerivedField::Value, EdgeSelector::DotN, 0, k - 2 * (r1.rv + 1), 1, true);
        for (int i = 0; i <= r1.re; ++i)
          b.edgeMoments(e, DerivedField::Value, EdgeSelector::DotT, i, k - 2 * (r1.rv + 1) + i, 1,
                        true);
        for (int i = 0; i <= r2.re; ++i)
          b.edgeMoments(e, DerivedField::Div, EdgeSelector::Identity, i,
                        k - 1 - 2 * (r2.rv + 1) + i, 1, true);
      }
      b.interiorMoments(DerivedField::Div,
                        quotientWeights(scalarBubbleBasis(k - 1, r2), constantScalar(), geom));
      b.interiorMoments(DerivedField::Value, curlBubbleBasis(k + 1, r1 + 1, geom));
      break;
    }

    case Family::VectorDivTn: {
      const bool vertexContinuous = r1.rv >= 0;
      if (vertexContinuous)
        for (int v = 0; v < 3; ++v) b.vertexJets(v, DerivedField::Value, 0, r1.rv, 2);
      const int nDeg = vertexContinuous ? k - 2 * (r1.rv + 1) : k;
      const int tDeg = vertexContinuous ? k - 2 * (r1.rv + 1) : k - 2;
      for (int e = 0; e < 3; ++e) {
        b.edgeMoments(e, DerivedField::Value, EdgeSelector::DotN, 0, nDeg, 1, true);
        // Tangential moments stay local: the t component is an H(div) bubble.
        b.edgeMoments(e, DerivedField::Value, EdgeSelector::DotT, 0, tDeg, 1, false);
      }
      b.interiorMoments(DerivedField::Value,
                        vectorBubbleBasis(k, SmoothnessPair{std::max(r1.rv, 0), 0}));
      break;
    }

    case Family::SymDiv: {
      for (int v = 0; v < 3; ++v) {
        b.vertexJets(v, DerivedField::Value, 0, r1.rv, 3);
        b.vertexJets(v, DerivedField::Div, std::max(r1.rv, 0), r2.rv, 2);
      }
      for (int e = 0; e < 3; ++e) {
        b.edgeMoments(e, DerivedField::Value, EdgeSelector::MatNComp, 0, k - 2 * (r1.rv + 1), 2,
                      true);
        for (int i = 0; i <= r1.re; ++i)
          b.edgeMoments(e, DerivedField::Value, EdgeSelector::TT, i, k - 2 * (r1.rv + 1) + i, 1,
                        true);
        for (int i = 0; i <= r2.re; ++i)
          b.edgeMoments(e, DerivedField::Div, EdgeSelector::Comp, i, k - 1 - 2 * (r2.rv + 1) + i,
                        2, true);
      }
      b.interiorMoments(DerivedField::Div,
                        quotientWeights(vectorBubbleBasis(k - 1, r2), rigidMotions(geom), geom));
      b.interiorMoments(DerivedField::Value, airBubbleBasis(k + 2, r1 + 2, geom));
      break;
    }

    case Family::MatrixDivDivPlus: {
      for (int v = 0; v < 3; ++v) {
        b.vertexJets(v, DerivedField::Value, 0, r1.rv, 4);
        b.vertexJets(v, DerivedField::DivDiv, std::max(r1.rv - 1, 0), r2.rv, 1);
      }
      for (int e = 0; e < 3; ++e) {
        b.edgeMoments(e, DerivedField::Value, EdgeSelector::MatNComp, 0, k - 2 * (r1.rv + 1), 2,
                      true);
        for (int i = 0; i <= r1.re; ++i)
          b.edgeMoments(e, DerivedField::Value, EdgeSelector::MatTComp, i,
                        k - 2 * (r1.rv + 1) + i, 2, true);
        b.edgeMoments(e, DerivedField::Div, EdgeSelector::DotN, 0, k - 1 - 2 * r1.rv, 1, true);
        for (int i = 0; i <= r1.re - 1; ++i)
          b.edgeMoments(e, DerivedField::Div, EdgeSelector::DotT, i, k - 1 - 2 * r1.rv + i, 1,
                        true);
        for (int i = 0; i <= r2.re; ++i)
          b.edgeMoments(e, DerivedField::DivDiv, EdgeSelector::Identity, i,
                        k - 2 - 2 * (r2.rv + 1) + i, 1, true);
      }
      b.interiorMoments(DerivedField::Div, curlBubbleBasis(k, r1, geom));
      b.interiorMoments(DerivedField::DivDiv,
                        quotientWeights(scalarBubbleBasis(k - 2, r2), linearScalars(geom), geom));
      b.interiorMoments(DerivedField::Value, curlVectorBubbleBasis(k + 1, r1 + 1, geom));
      break;
    }

    case Family::SymDivDivPlus: {
      const SmoothnessPair divPair = r1.re >= 0 ? r1 : SmoothnessPair{r1.rv, 0};
      for (int v = 0; v < 3; ++v) {
        b.vertexJets(v, DerivedField::Value, 0, r1.rv, 3);
        b.vertexJets(v, DerivedField::DivDiv, std::max(r1.rv - 1, 0), r2.rv, 1);
      }
      for (int e = 0; e < 3; ++e) {
        b.edgeMoments(e, DerivedField::Value, EdgeSelector::MatNComp, 0, k - 2 * (r1.rv + 1), 2,
                      true);
        for (int i = 0; i <= r1.re; ++i)
          b.edgeMoments(e, DerivedField::Value, EdgeSelector::TT, i, k - 2 * (r1.rv + 1) + i, 1,
                        true);
        b.edgeMoments(e, DerivedField::Div, EdgeSelector::DotN, 0, k - 1 - 2 * r1.rv, 1, true);
        for (int i = 0; i <= r1.re - 1; ++i)
          b.edgeMoments(e, DerivedField::Div, EdgeSelector::DotT, i, k - 1 - 2 * r1.rv + i, 1,
                        true);
        for (int i = 0; i <= r2.re; ++i)
          b.edgeMoments(e, DerivedField::DivDiv, EdgeSelector::Identity, i,
                        k - 2 * (r2.rv + 2) + i, 1, true);
      }
      b.interiorMoments(
          DerivedField::Div,
          quotientWeights(curlBubbleBasis(k, divPair, geom), {positionPerpField(geom)}, geom));
      b.interiorMoments(DerivedField::DivDiv,
                        quotientWeights(scalarBubbleBasis(k - 2, r2), linearScalars(geom), geom));
      b.interiorMoments(DerivedField::Value, airBubbleBasis(k + 2, r1 + 2, geom));
      break;
    }

    case Family::SymDivDivRelaxed: {
      for (int v = 0; v < 3; ++v) {
        b.vertexJets(v, DerivedField::Value, 0, r1.rv, 3);
        b.vertexJets(v, DerivedField::DivDiv, std::max(r1.rv - 1, 0), r2.rv, 1);
      }
      for (int e = 0; e < 3; ++e) {
        b.edgeMoments(e, DerivedField::Value, EdgeSelector::NN, 0, k - 2 * (r1.rv + 1), 1, true);
        // t' tau n is local: only nn and the div div trace are continuous.
        b.edgeMoments(e, DerivedField::Value, EdgeSelector::TN, 0, k - 2 * (r1.rv + 1), 1, false);
        b.edgeMoments(e, DerivedField::Value, EdgeSelector::Trace2DivDiv, 0, k - 1 - 2 * r1.rv, 1,
                      true);
        for (int i = 0; i <= r2.re; ++i)
          b.edgeMoments(e, DerivedField::DivDiv, EdgeSelector::Identity, i,
                        k - 2 * (r2.rv + 2) + i, 1, true);
      }
      b.interiorMoments(DerivedField::Div,
                        quotientWeights(curlBubbleBasis(k, SmoothnessPair{r1.rv, 0}, geom),
                                        {positionPerpField(geom)}, geom));
      b.interiorMoments(DerivedField::DivDiv,
                        quotientWeights(scalarBubbleBasis(k - 2, r2), linearScalars(geom), geom));
      b.interiorMoments(DerivedField::Value, airBubbleBasis(k + 2, r1 + 2, geom));
      break;
    }
  }
  return b.dofs;
}

}  // namespace

LocalElement::LocalElement(ElementSpec spec, TriangleGeom geom, std::array<EdgeGeom, 3> edges)
    : spec_(spec), geom_(std::move(geom)), edges_(std::move(edges)) {
  spec_.validate();
  build();
}

void LocalElement::build() {
  functionals_ = buildFunctionals(spec_, geom_);
  // Entity-major order (vertices, edges, interior); the builder already
  // emits the family block order within each entity.
  std::stable_sort(functionals_.begin(), functionals_.end(),
                   [](const DoFunctional& a, const DoFunctional& b) {
                     auto key = [](const DoFunctional& f) {
                       const int kindRank = f.kind == DoFKind::PointDeriv    ? 0
                                            : f.kind == DoFKind::EdgeMoment ? 1
                                                                            : 2;
                       return std::pair(kindRank, f.entity);
                     };
                     return key(a) < key(b);
                   });
  computeEntityCounts();
  dofMatrix_.resize(static_cast<Index>(functionals_.size()), dim());
  for (Index j = 0; j < dim(); ++j) {
    const PolyField phi = basisField(j);
    for (Index i = 0; i < static_cast<Index>(functionals_.size()); ++i)
      dofMatrix_(i, j) = functionals_[static_cast<size_t>(i)].evaluate(phi, geom_, edges_);
  }
}

void LocalElement::computeEntityCounts() {
  std::array<Index, 3> vertexCounts{0, 0, 0};
  std::array<Index, 3> edgeShared{0, 0, 0};
  std::array<Index, 3> edgeLocal{0, 0, 0};
  interiorCount_ = 0;
  for (const auto& f : functionals_) {
    switch (f.kind) {
      case DoFKind::PointDeriv: ++vertexCounts[static_cast<size_t>(f.entity)]; break;
      case DoFKind::EdgeMoment:
        ++(f.shared ? edgeShared : edgeLocal)[static_cast<size_t>(f.entity)];
        break;
      case DoFKind::InteriorMoment: ++interiorCount_; break;
    }
  }
  if (vertexCounts[0] != vertexCounts[1] || vertexCounts[0] != vertexCounts[2])
    throw ParameterError("internal: vertex DoF counts differ between vertices");
  if (edgeShared[0] != edgeShared[1] || edgeShared[0] != edgeShared[2] ||
      edgeLocal[0] != edgeLocal[1] || edgeLocal[0] != edgeLocal[2])
    throw ParameterError("internal: edge DoF counts differ between edges");
  perVertexCount_ = vertexCounts[0];
  perEdgeSharedCount_ = edgeShared[0];
  perEdgeLocalCount_ = edgeLocal[0];
}

Index LocalElement::dim() const {
  const int k = spec_.degree;
  return static_cast<Index>((k + 1) * (k + 2) / 2) * shapeComponents(spec_.shape());
}

PolyField LocalElement::basisField(Index j) const {
  const Index nc = shapeComponents(spec_.shape());
  const Index node = j / nc;
  const Index comp = j % nc;
  const auto nodes = enumerateLattice(spec_.degree);
  std::vector<BernsteinPoly> comps(static_cast<size_t>(nc), BernsteinPoly::zero(spec_.degree));
  comps[static_cast<size_t>(comp)] = BernsteinPoly::monomial(nodes[static_cast<size_t>(node)]);
  return PolyField(spec_.shape(), std::move(comps));
}

UnisolvenceResult LocalElement::unisolvence() const {
  UnisolvenceResult res;
  res.rows = dofMatrix_.rows();
  res.cols = dofMatrix_.cols();
  res.square = res.rows == res.cols;
  res.nonsingular = res.square && rank(dofMatrix_) == res.cols;
  return res;
}

const RatMatrix& LocalElement::dualCoeffs() const {
  std::call_once(dualOnce_, [this] {
    if (dofMatrix_.rows() == dofMatrix_.cols()) {
      dualCoeffs_ = invert(dofMatrix_);
      dualOk_ = true;
    }
  });
  if (!dualOk_)
    throw SingularMatrixError("DoF matrix is not square: " + std::to_string(dofMatrix_.rows()) +
                              "x" + std::to_string(dofMatrix_.cols()) + " for " +
                              spec_.describe());
  return dualCoeffs_;
}

PolyField LocalElement::dualField(Index i) const { return fieldFromCoeffs(dualCoeffs().col(i)); }

PolyField LocalElement::fieldFromCoeffs(const RatVector& coeffs) const {
  const Index nc = shapeComponents(spec_.shape());
  const auto nodes = enumerateLattice(spec_.degree);
  std::vector<BernsteinPoly> comps;
  for (Index c = 0; c < nc; ++c) {
    RatVector cc = RatVector::Zero(static_cast<Index>(nodes.size()));
    for (Index node = 0; node < static_cast<Index>(nodes.size()); ++node)
      cc[node] = coeffs[node * nc + c];
    comps.emplace_back(spec_.degree, std::move(cc));
  }
  return PolyField(spec_.shape(), std::move(comps));
}

RatVector LocalElement::fieldCoeffs(const PolyField& u) const {
  if (u.shape() != spec_.shape()) throw ShapeError("fieldCoeffs: shape mismatch");
  const PolyField v = u.degree() == spec_.degree ? u : u.elevatedTo(spec_.degree);
  const Index nc = shapeComponents(spec_.shape());
  const Index nNodes = dim() / nc;
  RatVector out(dim());
  for (Index node = 0; node < nNodes; ++node)
    for (Index c = 0; c < nc; ++c) out[node * nc + c] = v.comp(c).coeffs()[node];
  return out;
}

RatVector LocalElement::evaluateAll(const PolyField& u) const {
  RatVector out(static_cast<Index>(functionals_.size()));
  for (Index i = 0; i < out.size(); ++i)
    out[i] = functionals_[static_cast<size_t>(i)].evaluate(u, geom_, edges_);
  return out;
}

std::shared_ptr<const LocalElement> buildDofs(const ElementSpec& spec, const TriangleGeom& t) {
  return buildDofs(spec, t, standaloneEdges(t));
}

std::shared_ptr<const LocalElement> buildDofs(const ElementSpec& spec, const TriangleGeom& t,
                                              const std::array<EdgeGeom, 3>& edges) {
  return std::make_shared<const LocalElement>(spec, t, edges);
}

UnisolvenceResult checkUnisolvence(const ElementSpec& spec, const TriangleGeom& t) {
  return buildDofs(spec, t)->unisolvence();
}

DofCounts dofCounts(const ElementSpec& spec) {
  const auto elem = buildDofs(spec, TriangleGeom::reference());
  DofCounts c;
  c.perVertex = elem->perVertexCount();
  c.perEdge = elem->perEdgeSharedCount() + elem->perEdgeLocalCount();
  c.interior = elem->interiorCount();
  return c;
}

}  // namespace fec2d
