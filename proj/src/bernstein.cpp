// SPDX-License-Identifier: MIT

#include "fec2d/bernstein.hpp"

#include "fec2d/errors.hpp"

namespace fec2d {

namespace {

Index latticeSize(int k) { return k < 0 ? 0 : static_cast<Index>((k + 1) * (k + 2) / 2); }

RatVector2 perpCcw(const RatVector2& v) { return RatVector2(-v[1], v[0]); }

}  // namespace

TriangleGeom TriangleGeom::fromVertices(const RatVector2& v0, const RatVector2& v1,
                                        const RatVector2& v2) {
  TriangleGeom t;
  t.vertices = {v0, v1, v2};
  t.signedArea2 = cross2(v1 - v0, v2 - v0);
  if (t.signedArea2 == 0) throw GeometryError("degenerate triangle");
  for (int i = 0; i < 3; ++i) {
    const RatVector2& a = t.vertices[static_cast<size_t>((i + 1) % 3)];
    const RatVector2& b = t.vertices[static_cast<size_t>((i + 2) % 3)];
    t.gradLambda[static_cast<size_t>(i)] = perpCcw(b - a) / t.signedArea2;
  }
  return t;
}

TriangleGeom TriangleGeom::reference() {
  return fromVertices(RatVector2(0, 0), RatVector2(1, 0), RatVector2(0, 1));
}

std::array<Rational, 3> TriangleGeom::barycentric(const RatVector2& p) const {
  std::array<Rational, 3> lambda;
  for (int i = 0; i < 3; ++i) {
    const auto& gi = gradLambda[static_cast<size_t>(i)];
    const Rational atV0 = (i == 0) ? Rational(1) : Rational(0);
    lambda[static_cast<size_t>(i)] = atV0 + gi.dot(p - vertices[0]);
  }
  return lambda;
}

std::array<EdgeGeom, 3> standaloneEdges(const TriangleGeom& t) {
  std::array<EdgeGeom, 3> edges;
  for (int e = 0; e < 3; ++e) {
    const auto& f = localEdges()[static_cast<size_t>(e)];
    EdgeGeom g;
    g.localEdge = e;
    g.localEndpoints = {f.vertices[0], f.vertices[1]};
    g.tangent = t.vertices[static_cast<size_t>(f.vertices[1])] -
                t.vertices[static_cast<size_t>(f.vertices[0])];
    g.normal = perp(g.tangent);
    if (g.tangent == RatVector2(0, 0)) throw GeometryError("zero-length edge");
    edges[static_cast<size_t>(e)] = g;
  }
  return edges;
}

BernsteinPoly::BernsteinPoly(int degree, RatVector coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != latticeSize(degree_))
    throw ParameterError("BernsteinPoly: coefficient count does not match degree");
}

BernsteinPoly BernsteinPoly::zero(int degree) {
  return BernsteinPoly(degree, RatVector::Zero(latticeSize(degree)));
}

BernsteinPoly BernsteinPoly::constant(int degree, const Rational& value) {
  // 1 = (l0 + l1 + l2)^k expands with multinomial coefficients.
  RatVector c = RatVector::Zero(latticeSize(degree));
  for (const auto& alpha : enumerateLattice(degree)) {
    Rational multi(factorial(degree) / (factorial(alpha[0]) * factorial(alpha[1]) * factorial(alpha[2])));
    c[latticeIndex(alpha)] = value * multi;
  }
  return BernsteinPoly(degree, std::move(c));
}

BernsteinPoly BernsteinPoly::monomial(const MultiIndex& alpha) {
  RatVector c = RatVector::Zero(latticeSize(alpha.degree()));
  c[latticeIndex(alpha)] = 1;
  return BernsteinPoly(alpha.degree(), std::move(c));
}

BernsteinPoly BernsteinPoly::affine(const Rational& atV0, const Rational& atV1,
                                    const Rational& atV2) {
  RatVector c(3);
  // Degree-1 lattice order: (0,0,1), (0,1,0), (1,0,0).
  c << atV2, atV1, atV0;
  return BernsteinPoly(1, std::move(c));
}

bool BernsteinPoly::isZero() const {
  for (Index i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

BernsteinPoly BernsteinPoly::operator+(const BernsteinPoly& o) const {
  const int d = std::max(degree_, o.degree_);
  RatVector c = elevatedTo(d).coeffs_ + o.elevatedTo(d).coeffs_;
  return BernsteinPoly(d, std::move(c));
}

BernsteinPoly BernsteinPoly::operator-(const BernsteinPoly& o) const {
  const int d = std::max(degree_, o.degree_);
  RatVector c = elevatedTo(d).coeffs_ - o.elevatedTo(d).coeffs_;
  return BernsteinPoly(d, std::move(c));
}

BernsteinPoly BernsteinPoly::operator*(const Rational& s) const {
  return BernsteinPoly(degree_, coeffs_ * s);
}

BernsteinPoly BernsteinPoly::operator*(const BernsteinPoly& o) const {
  const int d = degree_ + o.degree_;
  RatVector c = RatVector::Zero(latticeSize(d));
  const auto nodesA = enumerateLattice(degree_);
  const auto nodesB = enumerateLattice(o.degree_);
  for (const auto& a : nodesA) {
    const Rational& ca = coeffs_[latticeIndex(a)];
    if (ca == 0) continue;
    for (const auto& b : nodesB) {
      const Rational& cb = o.coeffs_[latticeIndex(b)];
      if (cb == 0) continue;
      MultiIndex g{{a[0] + b[0], a[1] + b[1], a[2] + b[2]}};
      c[latticeIndex(g)] += ca * cb;
    }
  }
  return BernsteinPoly(d, std::move(c));
}

BernsteinPoly BernsteinPoly::elevatedTo(int degree) const {
  if (degree < degree_) throw ParameterError("cannot elevate to a lower degree");
  if (degree == degree_) return *this;
  // Multiply by (l0 + l1 + l2) once and recurse.
  RatVector c = RatVector::Zero(latticeSize(degree_ + 1));
  for (const auto& alpha : enumerateLattice(degree_)) {
    const Rational& ca = coeffs_[latticeIndex(alpha)];
    if (ca == 0) continue;
    for (int i = 0; i < 3; ++i) {
      MultiIndex up = alpha;
      up.a[static_cast<size_t>(i)] += 1;
      c[latticeIndex(up)] += ca;
    }
  }
  return BernsteinPoly(degree_ + 1, std::move(c)).elevatedTo(degree);
}

BernsteinPoly BernsteinPoly::derivative(const TriangleGeom& t, int j) const {
  if (degree_ == 0) return zero(0);
  RatVector c = RatVector::Zero(latticeSize(degree_ - 1));
  for (const auto& alpha : enumerateLattice(degree_)) {
    const Rational& ca = coeffs_[latticeIndex(alpha)];
    if (ca == 0) continue;
    for (int i = 0; i < 3; ++i) {
      if (alpha[i] == 0) continue;
      MultiIndex down = alpha;
      down.a[static_cast<size_t>(i)] -= 1;
      c[latticeIndex(down)] += ca * alpha[i] * t.gradLambda[static_cast<size_t>(i)][j];
    }
  }
  return BernsteinPoly(degree_ - 1, std::move(c));
}

Rational BernsteinPoly::evaluateBary(const std::array<Rational, 3>& lambda) const {
  Rational sum = 0;
  for (const auto& alpha : enumerateLattice(degree_)) {
    const Rational& ca = coeffs_[latticeIndex(alpha)];
    if (ca == 0) continue;
    Rational term = ca;
    for (int i = 0; i < 3; ++i)
      for (int p = 0; p < alpha[i]; ++p) term *= lambda[static_cast<size_t>(i)];
    sum += term;
  }
  return sum;
}

Rational BernsteinPoly::evaluate(const TriangleGeom& t, const RatVector2& p) const {
  return evaluateBary(t.barycentric(p));
}

Rational BernsteinPoly::integrate(const TriangleGeom& t) const {
  Rational area2 = t.signedArea2 < 0 ? -t.signedArea2 : t.signedArea2;
  Rational sum = 0;
  const Integer kfact = factorial(degree_ + 2);
  for (const auto& alpha : enumerateLattice(degree_)) {
    const Rational& ca = coeffs_[latticeIndex(alpha)];
    if (ca == 0) continue;
    sum += ca * Rational(factorial(alpha[0]) * factorial(alpha[1]) * factorial(alpha[2]), kfact);
  }
  return sum * area2;
}

EdgePoly EdgePoly::basis(int degree, int j) {
  EdgePoly p;
  p.degree = degree;
  p.coeffs = RatVector::Zero(degree + 1);
  p.coeffs[j] = 1;
  return p;
}

bool EdgePoly::isZero() const {
  for (Index i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) return false;
  return true;
}

Rational EdgePoly::integrate() const {
  Rational sum = 0;
  const Integer kfact = factorial(degree + 1);
  for (int j = 0; j <= degree; ++j) {
    if (coeffs[j] == 0) continue;
    sum += coeffs[j] * Rational(factorial(degree - j) * factorial(j), kfact);
  }
  return sum;
}

EdgePoly EdgePoly::operator*(const EdgePoly& o) const {
  EdgePoly out;
  out.degree = degree + o.degree;
  out.coeffs = RatVector::Zero(out.degree + 1);
  for (int i = 0; i <= degree; ++i) {
    if (coeffs[i] == 0) continue;
    for (int j = 0; j <= o.degree; ++j) out.coeffs[i + j] += coeffs[i] * o.coeffs[j];
  }
  return out;
}

EdgePoly traceToEdge(const BernsteinPoly& p, const EdgeGeom& e) {
  const int a = e.localEndpoints[0];
  const int b = e.localEndpoints[1];
  int c = 3 - a - b;
  EdgePoly out;
  out.degree = p.degree();
  out.coeffs = RatVector::Zero(p.degree() + 1);
  for (const auto& alpha : enumerateLattice(p.degree())) {
    if (alpha[c] != 0) continue;
    out.coeffs[alpha[b]] += p.coeffs()[latticeIndex(alpha)];
  }
  return out;
}

Rational integrateEdge(const EdgePoly& p) { return p.integrate(); }

Index shapeComponents(FieldShape s) {
  switch (s) {
    case FieldShape::Scalar: return 1;
    case FieldShape::Vector2: return 2;
    case FieldShape::Matrix22: return 4;
    case FieldShape::Sym22: return 3;
  }
  return 0;
}

PolyField::PolyField(FieldShape shape, std::vector<BernsteinPoly> comps)
    : shape_(shape), comps_(std::move(comps)) {
  if (static_cast<Index>(comps_.size()) != shapeComponents(shape_))
    throw ShapeError("PolyField: wrong component count for shape");
  for (auto& c : comps_)
    if (c.degree() != comps_[0].degree())
      throw ShapeError("PolyField: components must share one degree");
}

PolyField PolyField::zero(FieldShape shape, int degree) {
  std::vector<BernsteinPoly> comps(static_cast<size_t>(shapeComponents(shape)),
                                   BernsteinPoly::zero(degree));
  return PolyField(shape, std::move(comps));
}

PolyField PolyField::scalar(BernsteinPoly p) { return PolyField(FieldShape::Scalar, {std::move(p)}); }

PolyField PolyField::vector(BernsteinPoly v0, BernsteinPoly v1) {
  const int d = std::max(v0.degree(), v1.degree());
  return PolyField(FieldShape::Vector2, {v0.elevatedTo(d), v1.elevatedTo(d)});
}

const BernsteinPoly& PolyField::entry(int i, int j) const {
  if (shape_ == FieldShape::Matrix22) return comps_[static_cast<size_t>(2 * i + j)];
  if (shape_ == FieldShape::Sym22) return comps_[static_cast<size_t>(i + j)];
  throw ShapeError("entry() requires a matrix-valued field");
}

bool PolyField::isZero() const {
  for (const auto& c : comps_)
    if (!c.isZero()) return false;
  return true;
}

PolyField PolyField::operator+(const PolyField& o) const {
  if (shape_ != o.shape_) throw ShapeError("field shape mismatch in +");
  std::vector<BernsteinPoly> comps;
  comps.reserve(comps_.size());
  for (size_t i = 0; i < comps_.size(); ++i) comps.push_back(comps_[i] + o.comps_[i]);
  return PolyField(shape_, std::move(comps));
}

PolyField PolyField::operator-(const PolyField& o) const {
  if (shape_ != o.shape_) throw ShapeError("field shape mismatch in -");
  std::vector<BernsteinPoly> comps;
  comps.reserve(comps_.size());
  for (size_t i = 0; i < comps_.size(); ++i) comps.push_back(comps_[i] - o.comps_[i]);
  return PolyField(shape_, std::move(comps));
}

PolyField PolyField::operator*(const Rational& s) const {
  std::vector<BernsteinPoly> comps;
  comps.reserve(comps_.size());
  for (const auto& c : comps_) comps.push_back(c * s);
  return PolyField(shape_, std::move(comps));
}

PolyField PolyField::elevatedTo(int degree) const {
  std::vector<BernsteinPoly> comps;
  comps.reserve(comps_.size());
  for (const auto& c : comps_) comps.push_back(c.elevatedTo(degree));
  return PolyField(shape_, std::move(comps));
}

PolyField PolyField::cartesianDerivative(const TriangleGeom& t, int bx, int by) const {
  std::vector<BernsteinPoly> comps;
  comps.reserve(comps_.size());
  for (const auto& c : comps_) {
    BernsteinPoly d = c;
    for (int i = 0; i < bx; ++i) d = d.derivative(t, 0);
    for (int i = 0; i < by; ++i) d = d.derivative(t, 1);
    comps.push_back(std::move(d));
  }
  return PolyField(shape_, std::move(comps));
}

Rational PolyField::innerProduct(const PolyField& o, const TriangleGeom& t) const {
  if (shape_ != o.shape_) throw ShapeError("field shape mismatch in innerProduct");
  Rational sum = 0;
  for (size_t i = 0; i < comps_.size(); ++i) {
    Rational w = 1;
    if (shape_ == FieldShape::Sym22 && i == 1) w = 2;  // off-diagonal appears twice
    sum += (comps_[i] * o.comps_[i]).integrate(t) * w;
  }
  return sum;
}

int diffOpOrder(DiffOp op) {
  switch (op) {
    case DiffOp::Sym:
    case DiffOp::Sskw:
    case DiffOp::Mskw: return 0;
    case DiffOp::Grad:
    case DiffOp::CurlScalar:
    case DiffOp::RotVector:
    case DiffOp::DivVector:
    case DiffOp::CurlVectorRowwise:
    case DiffOp::DivMatrixRowwise:
    case DiffOp::SymCurl:
    case DiffOp::SymGrad:
    case DiffOp::RotMatrixRowwise: return 1;
    case DiffOp::Air:
    case DiffOp::DivDiv:
    case DiffOp::Hess:
    case DiffOp::RotRot:
    case DiffOp::CurlDiv: return 2;
  }
  return 0;
}

FieldShape diffOpTargetShape(DiffOp op, FieldShape source) {
  switch (op) {
    case DiffOp::Grad:
    case DiffOp::CurlScalar: return FieldShape::Vector2;
    case DiffOp::RotVector:
    case DiffOp::DivVector:
    case DiffOp::Sskw:
    case DiffOp::DivDiv:
    case DiffOp::RotRot: return FieldShape::Scalar;
    case DiffOp::CurlVectorRowwise:
    case DiffOp::Mskw: return FieldShape::Matrix22;
    case DiffOp::DivMatrixRowwise:
    case DiffOp::RotMatrixRowwise:
    case DiffOp::CurlDiv: return FieldShape::Vector2;
    case DiffOp::Sym:
    case DiffOp::Air:
    case DiffOp::SymCurl:
    case DiffOp::Hess:
    case DiffOp::SymGrad: return FieldShape::Sym22;
  }
  return source;
}

namespace {

void requireShape(const PolyField& p, FieldShape s, const char* op) {
  if (p.shape() != s) throw ShapeError(std::string(op) + ": wrong field shape");
}

void requireMatrixLike(const PolyField& p, const char* op) {
  if (p.shape() != FieldShape::Matrix22 && p.shape() != FieldShape::Sym22)
    throw ShapeError(std::string(op) + ": matrix-valued field required");
}

BernsteinPoly dx(const BernsteinPoly& p, const TriangleGeom& t, int j) {
  return p.derivative(t, j);
}

}  // namespace

PolyField differential(const PolyField& p, const TriangleGeom& t, DiffOp op) {
  using FS = FieldShape;
  switch (op) {
    case DiffOp::Grad: {
      requireShape(p, FS::Scalar, "grad");
      return PolyField(FS::Vector2, {dx(p.comp(0), t, 0), dx(p.comp(0), t, 1)});
    }
    case DiffOp::CurlScalar: {
      requireShape(p, FS::Scalar, "curl");
      return PolyField(FS::Vector2, {dx(p.comp(0), t, 1), dx(p.comp(0), t, 0) * Rational(-1)});
    }
    case DiffOp::RotVector: {
      requireShape(p, FS::Vector2, "rot");
      return PolyField::scalar(dx(p.comp(1), t, 0) - dx(p.comp(0), t, 1));
    }
    case DiffOp::DivVector: {
      requireShape(p, FS::Vector2, "div");
      return PolyField::scalar(dx(p.comp(0), t, 0) + dx(p.comp(1), t, 1));
    }
    case DiffOp::CurlVectorRowwise: {
      requireShape(p, FS::Vector2, "curl (rowwise)");
      return PolyField(FS::Matrix22,
                       {dx(p.comp(0), t, 1), dx(p.comp(0), t, 0) * Rational(-1),
                        dx(p.comp(1), t, 1), dx(p.comp(1), t, 0) * Rational(-1)});
    }
    case DiffOp::DivMatrixRowwise: {
      requireMatrixLike(p, "div (rowwise)");
      return PolyField(FS::Vector2, {dx(p.entry(0, 0), t, 0) + dx(p.entry(0, 1), t, 1),
                                     dx(p.entry(1, 0), t, 0) + dx(p.entry(1, 1), t, 1)});
    }
    case DiffOp::Sym: {
      requireMatrixLike(p, "sym");
      return PolyField(FS::Sym22, {p.entry(0, 0),
                                   (p.entry(0, 1) + p.entry(1, 0)) * Rational(1, 2),
                                   p.entry(1, 1)});
    }
    case DiffOp::Sskw: {
      requireShape(p, FS::Matrix22, "sskw");
      return PolyField::scalar((p.entry(1, 0) - p.entry(0, 1)) * Rational(1, 2));
    }
    case DiffOp::Mskw: {
      requireShape(p, FS::Scalar, "mskw");
      return PolyField(FS::Matrix22, {BernsteinPoly::zero(p.degree()), p.comp(0) * Rational(-1),
                                      p.comp(0), BernsteinPoly::zero(p.degree())});
    }
    case DiffOp::Air: {
      requireShape(p, FS::Scalar, "air");
      return differential(differential(p, t, DiffOp::CurlScalar), t, DiffOp::SymCurl);
    }
    case DiffOp::SymCurl: {
      requireShape(p, FS::Vector2, "sym curl");
      return differential(differential(p, t, DiffOp::CurlVectorRowwise), t, DiffOp::Sym);
    }
    case DiffOp::DivDiv: {
      requireMatrixLike(p, "div div");
      return differential(differential(p, t, DiffOp::DivMatrixRowwise), t, DiffOp::DivVector);
    }
    case DiffOp::Hess: {
      requireShape(p, FS::Scalar, "hess");
      return differential(differential(p, t, DiffOp::Grad), t, DiffOp::SymGrad);
    }
    case DiffOp::RotMatrixRowwise: {
      requireMatrixLike(p, "rot (rowwise)");
      return PolyField(FS::Vector2, {dx(p.entry(0, 1), t, 0) - dx(p.entry(0, 0), t, 1),
                                     dx(p.entry(1, 1), t, 0) - dx(p.entry(1, 0), t, 1)});
    }
    case DiffOp::SymGrad: {
      requireShape(p, FS::Vector2, "sym grad");
      return PolyField(FS::Sym22, {dx(p.comp(0), t, 0),
                                   (dx(p.comp(0), t, 1) + dx(p.comp(1), t, 0)) * Rational(1, 2),
                                   dx(p.comp(1), t, 1)});
    }
    case DiffOp::RotRot: {
      requireMatrixLike(p, "rot rot");
      return differential(differential(p, t, DiffOp::RotMatrixRowwise), t, DiffOp::RotVector);
    }
    case DiffOp::CurlDiv: {
      requireShape(p, FS::Vector2, "curl div");
      return differential(differential(p, t, DiffOp::DivVector), t, DiffOp::CurlScalar);
    }
  }
  throw ShapeError("unknown differential operator");
}

BernsteinPoly coordinate(const TriangleGeom& t, int j) {
  return BernsteinPoly::affine(t.vertices[0][j], t.vertices[1][j], t.vertices[2][j]);
}

PolyField positionField(const TriangleGeom& t) {
  return PolyField(FieldShape::Vector2, {coordinate(t, 0), coordinate(t, 1)});
}

PolyField positionPerpField(const TriangleGeom& t) {
  return PolyField(FieldShape::Vector2, {coordinate(t, 1), coordinate(t, 0) * Rational(-1)});
}

}  // namespace fec2d
