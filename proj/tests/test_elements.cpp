// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fec2d/elements.hpp"
#include "fec2d/errors.hpp"
#include "oracles.hpp"

using namespace fec2d;

namespace {

const TriangleGeom& ref() {
  static const TriangleGeom t = TriangleGeom::reference();
  return t;
}

// Three fixed rational triangles used throughout the unisolvence checks.
std::vector<TriangleGeom> probeTriangles() {
  return {
      TriangleGeom::fromVertices(RatVector2(0, 0), RatVector2(3, 1), RatVector2(Rational(1, 2), 2)),
      TriangleGeom::fromVertices(RatVector2(-1, Rational(1, 3)), RatVector2(2, Rational(-1, 2)),
                                 RatVector2(Rational(1, 2), Rational(5, 2))),
      TriangleGeom::fromVertices(RatVector2(Rational(1, 7), 0), RatVector2(Rational(2, 3), Rational(1, 5)),
                                 RatVector2(Rational(-1, 2), 1))};
}

void expectUnisolvent(const ElementSpec& spec, Index expectedDim = -1) {
  CAPTURE(spec.describe());
  const auto onRef = checkUnisolvence(spec, ref());
  if (expectedDim >= 0) CHECK(onRef.rows == expectedDim);
  CHECK(onRef.square);
  CHECK(onRef.nonsingular);
  for (const auto& t : probeTriangles()) {
    const auto res = checkUnisolvence(spec, t);
    CHECK(res.square);
    CHECK(res.nonsingular);
  }
}

}  // namespace

TEST_CASE("argyris element: counts and unisolvence") {
  const ElementSpec argyris{Family::ScalarSmooth, 5, {2, 1}, {}, 1};
  const auto counts = dofCounts(argyris);
  CHECK(counts.perVertex == 6);
  CHECK(counts.perEdge == 1);
  CHECK(counts.interior == 0);
  CHECK(counts.total() == 21);
  expectUnisolvent(argyris, 21);
}

TEST_CASE("scalar family ladder: lagrange, hermite, argyris, bramble-zlamal") {
  expectUnisolvent({Family::ScalarSmooth, 1, {0, 0}, {}, 1}, 3);
  expectUnisolvent({Family::ScalarSmooth, 3, {1, 0}, {}, 1}, 10);
  expectUnisolvent({Family::ScalarSmooth, 9, {4, 2}, {}, 1}, 55);
  // Discontinuous and vertex-continuous variants.
  expectUnisolvent({Family::ScalarSmooth, 0, {-1, -1}, {}, 1}, 1);
  expectUnisolvent({Family::ScalarSmooth, 3, {0, -1}, {}, 1}, 10);
  // Vector-valued copies share the scalar structure.
  expectUnisolvent({Family::ScalarSmooth, 2, {0, 0}, {}, 2}, 12);
}

TEST_CASE("scalar family DoF matrix is block triangular as the distance lemma predicts") {
  // Functionals sorted (vertex, edge, interior) against the basis sorted by
  // lattice node: a vertex derivative of order |beta| kills monomials with
  // dist(node, vertex) > |beta|; an order-i edge moment kills monomials with
  // dist(node, edge) > i.
  const ElementSpec spec{Family::ScalarSmooth, 5, {2, 1}, {}, 1};
  const auto elem = buildDofs(spec, probeTriangles()[0]);
  const auto nodes = enumerateLattice(5);
  const auto& fns = elem->functionals();
  for (Index i = 0; i < static_cast<Index>(fns.size()); ++i) {
    const auto& f = fns[static_cast<size_t>(i)];
    for (Index j = 0; j < elem->dim(); ++j) {
      const auto& node = nodes[static_cast<size_t>(j)];
      bool predictedZero = false;
      if (f.kind == DoFKind::PointDeriv)
        predictedZero = distance(node, SubSimplex::vertex(f.entity)) > f.betaX + f.betaY;
      else if (f.kind == DoFKind::EdgeMoment)
        predictedZero = distance(node, localEdges()[static_cast<size_t>(f.entity)]) > f.normalOrder;
      if (predictedZero) CHECK(elem->dofMatrix()(i, j) == 0);
    }
  }
}

TEST_CASE("vector-div element (smooth H(div) with div control)") {
  const ElementSpec fn{Family::VectorDiv, 4, {1, 0}, {0, -1}};
  const auto counts = dofCounts(fn);
  CHECK(counts.perVertex == 6);
  CHECK(counts.perEdge == 2);
  CHECK(counts.interior == 6);
  CHECK(counts.total() == 30);
  expectUnisolvent(fn, 30);

  // Continuous-pressure variant and the fully discontinuous low-order one.
  expectUnisolvent({Family::VectorDiv, 4, {1, 0}, {0, 0}}, 30);
  expectUnisolvent({Family::VectorDiv, 1, {-1, -1}, {-1, -1}}, 6);
  expectUnisolvent({Family::VectorDiv, 2, {-1, -1}, {-1, -1}}, 12);
  expectUnisolvent({Family::VectorDiv, 4, {-1, -1}, {0, 0}}, 30);
  expectUnisolvent({Family::VectorDiv, 4, {1, 0}, {1, 0}}, 30);
}

TEST_CASE("tangential-normal family: BDM and the vertex-continuous variant") {
  const ElementSpec bdm1{Family::VectorDivTn, 1, {-1, -1}, {}};
  const auto c1 = dofCounts(bdm1);
  CHECK(c1.perVertex == 0);
  CHECK(c1.perEdge == 2);
  CHECK(c1.interior == 0);
  expectUnisolvent(bdm1, 6);
  expectUnisolvent({Family::VectorDivTn, 2, {-1, -1}, {}}, 12);

  const ElementSpec stenberg{Family::VectorDivTn, 2, {0, -1}, {}};
  const auto c2 = dofCounts(stenberg);
  CHECK(c2.perVertex == 2);
  CHECK(c2.perEdge == 2);
  CHECK(c2.interior == 0);
  expectUnisolvent(stenberg, 12);
  expectUnisolvent({Family::VectorDivTn, 3, {0, -1}, {}}, 20);
}

TEST_CASE("sym-div element (Hu-Zhang type)") {
  const ElementSpec hz{Family::SymDiv, 3, {0, -1}, {-1, -1}};
  const auto counts = dofCounts(hz);
  CHECK(counts.perVertex == 3);
  CHECK(counts.perEdge == 4);
  CHECK(counts.interior == 9);
  CHECK(counts.total() == 30);
  expectUnisolvent(hz, 30);
  expectUnisolvent({Family::SymDiv, 4, {0, -1}, {-1, -1}}, 45);
  // div continuity at vertices and edges (mixed elasticity with continuous
  // displacement) needs k large enough for the vector bubble quotient.
  expectUnisolvent({Family::SymDiv, 5, {0, -1}, {0, 0}}, 63);
}

TEST_CASE("matrix divdiv-plus element") {
  expectUnisolvent({Family::MatrixDivDivPlus, 5, {1, 0}, {-1, -1}}, 84);
  expectUnisolvent({Family::MatrixDivDivPlus, 6, {1, 0}, {-1, -1}}, 112);
}

TEST_CASE("sym divdiv-plus element, r1^e = -1 variant") {
  const ElementSpec hmz{Family::SymDivDivPlus, 3, {0, -1}, {-1, -1}};
  const auto counts = dofCounts(hmz);
  CHECK(counts.perVertex == 3);
  CHECK(counts.perEdge == 7);
  CHECK(counts.interior == 0);
  expectUnisolvent(hmz, 30);
  expectUnisolvent({Family::SymDivDivPlus, 4, {0, -1}, {-1, -1}}, 45);
}

TEST_CASE("sym divdiv-plus element, tangentially continuous variant") {
  // The smallest pair satisfying r1^v >= 2 r1^e + 2 with r1^e >= 0, at the
  // minimal degree and the next one.
  expectUnisolvent({Family::SymDivDivPlus, 7, {2, 0}, {0, -1}}, 108);
  expectUnisolvent({Family::SymDivDivPlus, 7, {2, 0}, {0, 0}}, 108);
  expectUnisolvent({Family::SymDivDivPlus, 8, {2, 0}, {0, -1}}, 135);
}

TEST_CASE("sym divdiv relaxed element (normal-normal + trace continuity)") {
  const ElementSpec ch{Family::SymDivDivRelaxed, 3, {0, -1}, {-1, -1}};
  const auto counts = dofCounts(ch);
  CHECK(counts.perVertex == 3);
  CHECK(counts.perEdge == 7);
  CHECK(counts.interior == 0);
  expectUnisolvent(ch, 30);
  expectUnisolvent({Family::SymDivDivRelaxed, 4, {0, -1}, {-1, -1}}, 45);
}

TEST_CASE("interior replacement DoFs span the same functional space (bubble DoFs)") {
  // For the vector-div family, moments against the H(div) bubble space
  // (kernel of the shared DoFs) have the same row space as the div/curl
  // interior blocks, and the bubble dimension satisfies the closed form
  // dim B^div_k(r1, r2) = dim B_{k-1}(r2) + dim B_{k+1}(r1+1) - 1.
  for (const ElementSpec spec : {ElementSpec{Family::VectorDiv, 4, {1, 0}, {0, -1}},
                                 ElementSpec{Family::VectorDiv, 3, {0, -1}, {-1, -1}},
                                 ElementSpec{Family::VectorDiv, 4, {1, 0}, {0, 0}}}) {
    CAPTURE(spec.describe());
    const auto t = probeTriangles()[0];
    const auto elem = buildDofs(spec, t);
    // Shared rows (vertex + shared edge DoFs) as a matrix.
    std::vector<Index> sharedRows, interiorRows;
    for (Index i = 0; i < static_cast<Index>(elem->functionals().size()); ++i) {
      const auto& f = elem->functionals()[static_cast<size_t>(i)];
      if (f.kind == DoFKind::InteriorMoment)
        interiorRows.push_back(i);
      else if (f.shared)
        sharedRows.push_back(i);
    }
    RatMatrix shared(static_cast<Index>(sharedRows.size()), elem->dim());
    for (Index i = 0; i < shared.rows(); ++i) shared.row(i) = elem->dofMatrix().row(sharedRows[static_cast<size_t>(i)]);
    const RatMatrix bubbles = nullspaceBasis(shared);
    const Index expected = bubbleDim(spec.degree - 1, spec.r2) +
                           bubbleDim(spec.degree + 1, spec.r1 + 1) - 1;
    CHECK(bubbles.cols() == expected);

    // Replacement moments: v -> integral of v . q for q in the bubble space.
    RatMatrix replacement(bubbles.cols(), elem->dim());
    for (Index i = 0; i < bubbles.cols(); ++i) {
      const PolyField q = elem->fieldFromCoeffs(bubbles.col(i));
      for (Index j = 0; j < elem->dim(); ++j)
        replacement(i, j) = elem->basisField(j).innerProduct(q, t);
    }
    RatMatrix interior(static_cast<Index>(interiorRows.size()), elem->dim());
    for (Index i = 0; i < interior.rows(); ++i)
      interior.row(i) = elem->dofMatrix().row(interiorRows[static_cast<size_t>(i)]);
    // Equal row spaces, after factoring out the annihilated shared block:
    // both sets of functionals agree on the bubble subspace.
    const RatMatrix onBubblesA = interior * bubbles;
    const RatMatrix onBubblesB = replacement * bubbles;
    CHECK(rank(onBubblesA) == bubbles.cols());
    CHECK(rank(onBubblesB) == bubbles.cols());
    RatMatrix stacked(onBubblesA.rows() + onBubblesB.rows(), bubbles.cols());
    stacked << onBubblesA, onBubblesB;
    CHECK(rank(stacked) == bubbles.cols());
  }
}

TEST_CASE("relaxed divdiv trace rows are combinations of the plus-variant rows") {
  // trace2 = d_t(t' tau n) + n' div tau, so the relaxed family's functional
  // row space coincides with the r1^e = -1 plus-variant's; in particular the
  // n' div tau moments lie in the span of the relaxed rows.
  const auto t = probeTriangles()[1];
  const ElementSpec relaxed{Family::SymDivDivRelaxed, 3, {0, -1}, {-1, -1}};
  const ElementSpec plus{Family::SymDivDivPlus, 3, {0, -1}, {-1, -1}};
  const auto er = buildDofs(relaxed, t);
  const auto ep = buildDofs(plus, t);
  const RatMatrix& rows = er->dofMatrix();
  CHECK(rank(rows) == 30);
  // n' div tau rows of the plus variant.
  std::vector<Index> ndivRows;
  for (Index i = 0; i < static_cast<Index>(ep->functionals().size()); ++i) {
    const auto& f = ep->functionals()[static_cast<size_t>(i)];
    if (f.kind == DoFKind::EdgeMoment && f.derived == DerivedField::Div &&
        f.selector == EdgeSelector::DotN)
      ndivRows.push_back(i);
  }
  CHECK_FALSE(ndivRows.empty());
  RatMatrix stacked(rows.rows() + static_cast<Index>(ndivRows.size()), rows.cols());
  stacked.topRows(rows.rows()) = rows;
  for (Index i = 0; i < static_cast<Index>(ndivRows.size()); ++i)
    stacked.row(rows.rows() + i) = ep->dofMatrix().row(ndivRows[static_cast<size_t>(i)]);
  CHECK(rank(stacked) == rank(rows));
}

TEST_CASE("quotient weights") {
  const auto t = ref();
  SUBCASE("quotient by constants inside a full bubble space") {
    const auto weights = quotientWeights(scalarBubbleBasis(3, {-1, -1}), constantScalar(), t);
    CHECK(weights.size() == 9);  // dim P3 - 1
  }
  SUBCASE("degenerate: constants act trivially only on an empty space") {
    CHECK_THROWS_AS(quotientWeights({}, constantScalar(), t), QuotientError);
  }
  SUBCASE("one-dimensional bubble space against the constant") {
    // B_3((0,0)) = span{b_T}; the constant pairs nontrivially, so the
    // quotient is empty and div moments come from integration by parts.
    const auto weights = quotientWeights(scalarBubbleBasis(3, {0, 0}), constantScalar(), t);
    CHECK(weights.empty());
  }
  SUBCASE("P1 against a too-small bubble space is deficient") {
    CHECK_THROWS_AS(quotientWeights(scalarBubbleBasis(3, {0, 0}), linearScalars(t), t),
                    QuotientError);
  }
}

TEST_CASE("parameter validation rejects with the violated inequality named") {
  CHECK_THROWS_WITH_AS((void)buildDofs({Family::ScalarSmooth, 3, {2, 1}, {}, 1}, ref()),
                       doctest::Contains("k >= max(2 r^v + 1, 0)"), ParameterError);
  CHECK_THROWS_AS((void)buildDofs({Family::VectorDiv, 1, {0, 0}, {-1, -1}}, ref()),
                  ParameterError);
  CHECK_THROWS_AS((void)buildDofs({Family::VectorDivTn, 2, {0, 0}, {}}, ref()), ParameterError);
  // The catalogued corner that is genuinely inadmissible: r1=(1,0)
  // fails r1^v >= 2 r1^e + 2, and dim B_{k-2}(r2) = 1 < 3 on top of it.
  CHECK_THROWS_WITH_AS((void)buildDofs({Family::SymDivDivPlus, 5, {1, 0}, {0, 0}}, ref()),
                       doctest::Contains("r1^v >= 2 r1^e + 2"), ParameterError);
  CHECK_THROWS_WITH_AS((void)buildDofs({Family::SymDivDivPlus, 7, {2, 0}, {2, 1}}, ref()),
                       doctest::Contains("dim B_{k-2}(r2) >= 3"), ParameterError);
  // And r1=(1,0) violates r1^v >= 2 r1^e + 2 for the symmetric families.
  CHECK_THROWS_WITH_AS((void)buildDofs({Family::SymDivDivPlus, 8, {1, 0}, {-1, -1}}, ref()),
                       doctest::Contains("r1^v >= 2 r1^e + 2"), ParameterError);
}

TEST_CASE("unisolvence grid: every family at minimal degree and minimal + 1") {
  // ScalarSmooth
  expectUnisolvent({Family::ScalarSmooth, 0, {-1, -1}, {}, 1});
  expectUnisolvent({Family::ScalarSmooth, 1, {-1, -1}, {}, 1});
  expectUnisolvent({Family::ScalarSmooth, 1, {0, -1}, {}, 1});
  expectUnisolvent({Family::ScalarSmooth, 2, {0, -1}, {}, 1});
  expectUnisolvent({Family::ScalarSmooth, 5, {2, 1}, {}, 1});
  expectUnisolvent({Family::ScalarSmooth, 6, {2, 1}, {}, 1});
  // VectorDiv
  expectUnisolvent({Family::VectorDiv, 1, {-1, -1}, {-1, -1}});
  expectUnisolvent({Family::VectorDiv, 2, {-1, -1}, {-1, -1}});
  // VectorDivTn
  expectUnisolvent({Family::VectorDivTn, 1, {-1, -1}, {}});
  expectUnisolvent({Family::VectorDivTn, 2, {-1, -1}, {}});
  expectUnisolvent({Family::VectorDivTn, 2, {0, -1}, {}});
  expectUnisolvent({Family::VectorDivTn, 3, {0, -1}, {}});
  // SymDiv
  expectUnisolvent({Family::SymDiv, 3, {0, -1}, {-1, -1}});
  expectUnisolvent({Family::SymDiv, 4, {0, -1}, {-1, -1}});
  // MatrixDivDivPlus (covered above at k=5,6)
  // SymDivDivPlus
  expectUnisolvent({Family::SymDivDivPlus, 3, {0, -1}, {-1, -1}});
  expectUnisolvent({Family::SymDivDivPlus, 4, {0, -1}, {-1, -1}});
  // SymDivDivRelaxed
  expectUnisolvent({Family::SymDivDivRelaxed, 3, {0, -1}, {-1, -1}});
  expectUnisolvent({Family::SymDivDivRelaxed, 4, {0, -1}, {-1, -1}});
}

TEST_CASE("dual basis reproduces the DoF duality") {
  const ElementSpec spec{Family::ScalarSmooth, 3, {1, 0}, {}, 1};
  const auto elem = buildDofs(spec, probeTriangles()[2]);
  for (Index i = 0; i < elem->dim(); ++i) {
    const RatVector values = elem->evaluateAll(elem->dualField(i));
    for (Index j = 0; j < elem->dim(); ++j) CHECK(values[j] == (i == j ? 1 : 0));
  }
}
