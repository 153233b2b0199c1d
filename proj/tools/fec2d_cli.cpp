// SPDX-License-Identifier: MIT
//
// Command-line front end: unisolvence and exactness campaigns with
// machine-readable (json) and human-readable (table) reports.
//
// Exit codes: 0 all checks passed; 1 a mathematical check failed;
// 2 invalid input or parameters.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fec2d/complexes.hpp"
#include "fec2d/errors.hpp"
#include "fec2d/report.hpp"

namespace {

using namespace fec2d;

SmoothnessPair parsePair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    throw ParseError("smoothness pair must be 'v,e', got '" + s + "'");
  try {
    return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
  } catch (...) {
    throw ParseError("smoothness pair must be 'v,e', got '" + s + "'");
  }
}

Mesh loadMesh(const std::string& arg) {
  if (arg.rfind("builtin:", 0) == 0) return Mesh::builtin(arg);
  std::ifstream in(arg);
  if (!in) throw ParseError("cannot open mesh file '" + arg + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return Mesh::load(buf.str());
}

void emit(const Json& report, const std::string& format) {
  if (format == "json")
    std::cout << report.dump(2) << "\n";
  else
    std::cout << renderTable(report);
}

// The three fixed rational probe triangles of the verification campaigns.
std::vector<std::pair<std::string, TriangleGeom>> probeTriangles() {
  return {{"probe-1", TriangleGeom::fromVertices(RatVector2(0, 0), RatVector2(3, 1),
                                                 RatVector2(Rational(1, 2), 2))},
          {"probe-2", TriangleGeom::fromVertices(RatVector2(-1, Rational(1, 3)),
                                                 RatVector2(2, Rational(-1, 2)),
                                                 RatVector2(Rational(1, 2), Rational(5, 2)))},
          {"probe-3", TriangleGeom::fromVertices(RatVector2(Rational(1, 7), 0),
                                                 RatVector2(Rational(2, 3), Rational(1, 5)),
                                                 RatVector2(Rational(-1, 2), 1))}};
}

int runIdentity(int kMax, const std::string& format) {
  const bool pass = checkPolyIdentity(kMax);
  Json report;
  report["command"] = "identity";
  report["k_max"] = kMax;
  report["pass"] = pass;
  emit(report, format);
  return pass ? 0 : 1;
}

int runUnisolvence(const ElementSpec& spec, const std::string& triangle,
                   const std::string& format) {
  std::vector<std::pair<std::string, TriangleGeom>> triangles;
  if (triangle == "ref") {
    triangles.emplace_back("ref", TriangleGeom::reference());
  } else if (triangle == "random") {
    triangles.emplace_back("ref", TriangleGeom::reference());
    for (auto& p : probeTriangles()) triangles.push_back(p);
  } else {
    const Mesh mesh = loadMesh(triangle);
    for (Index t = 0; t < mesh.numTriangles(); ++t)
      triangles.emplace_back("triangle-" + std::to_string(t), mesh.triangleGeom(t));
  }
  const DofCounts counts = dofCounts(spec);
  Json runs = Json::array();
  bool pass = true;
  for (const auto& [name, geom] : triangles) {
    const auto res = checkUnisolvence(spec, geom);
    runs.push_back(unisolvenceJson(spec, name, res, counts));
    pass = pass && res.square && res.nonsingular;
  }
  Json report;
  report["command"] = "unisolvence";
  report["spec"] = elementSpecJson(spec);
  report["runs"] = runs;
  report["pass"] = pass;
  emit(report, format);
  return pass ? 0 : 1;
}

int runComplex(const std::string& kindName, int k, const SmoothnessPair& r1,
               const SmoothnessPair& r2, const SmoothnessPair& r3, bool rotated,
               const std::string& meshName, bool strict, const std::string& format,
               bool haveR0, const SmoothnessPair& r0) {
  if (kindName == "bubble") {
    const auto v = verifyBubbleComplex(k, r1, r2);
    Json report = bubbleVerdictJson(k, r1, r2, v);
    report["pass"] = v.exact;
    emit(report, format);
    return v.exact ? 0 : 1;
  }
  std::string name = kindName;
  if (name == "derham-rotated") {
    name = "derham";
    rotated = true;
  }
  ComplexSpec cs;
  cs.kind = complexKindFromName(name);
  cs.degree = k;
  cs.r1 = r1;
  cs.r2 = r2;
  cs.r3 = r3;
  if (haveR0 && (r0.rv != r1.rv + 1 || r0.re != r1.re + 1))
    throw ParameterError("r0 must equal r1 + 1 for these chains");
  const Mesh mesh = loadMesh(meshName);
  const ExactnessVerdict v = rotated ? rotateComplex(cs, mesh) : verifyComplex(cs, mesh);
  Json report;
  report["command"] = "complex";
  report["mesh"] = meshInfoJson(meshName, mesh);
  report["verdict"] = verdictJson(v);
  bool pass = v.exact;
  if (strict && !v.warnings.empty()) pass = false;
  report["pass"] = pass;
  emit(report, format);
  return pass ? 0 : 1;
}

int runCatalog(const std::string& format) {
  Json families = Json::array();
  families.push_back({{"family", "scalar"},
                      {"constraints", "r^v >= max(2 r^e, -1), k >= max(2 r^v + 1, 0)"},
                      {"instances",
                       {"Lagrange (0,0)", "Hermite (1,0) k=3", "Argyris (2,1) k=5",
                        "Bramble-Zlamal (2m,m) k=4m+1"}}});
  families.push_back({{"family", "vector-div"},
                      {"constraints",
                       "r1^v >= 2 r1^e + 1, r2 >= max(r1-1,-1), r2^v >= 2 r2^e, "
                       "k >= max(2 r1^v + 2, 2 r2^v + 2, 1), dim B_{k-1}(r2) >= 1"},
                      {"instances", {"BDM-like (-1,-1)", "Falk-Neilan (1,0),(0,-1) k=4"}}});
  families.push_back({{"family", "vector-div-tn"},
                      {"constraints", "r1^e = -1, k >= max(2 r1^v + 2, 1)"},
                      {"instances", {"BDM r1^v=-1 k=1", "Stenberg r1^v=0 k=2"}}});
  families.push_back({{"family", "sym-div"},
                      {"constraints",
                       "r1^v >= 2 r1^e + 2, r2 >= max(r1-1,-1), "
                       "k >= max(2 r1^v + 3, 2 r2^v + 2), dim B^2_{k-1}(r2) >= 3"},
                      {"instances", {"Hu-Zhang (0,-1),(-1,-1) k=3"}}});
  families.push_back({{"family", "matrix-divdiv-plus"},
                      {"constraints",
                       "r1 >= 0, r1^v >= 2 r1^e + 1, r2 >= max(r1-2,-1), "
                       "k >= max(2 r1^v + 3, 2 r2^v + 3), dim B_{k-2}(r2) >= 3"},
                      {"instances", Json::array()}});
  families.push_back({{"family", "sym-divdiv-plus"},
                      {"constraints",
                       "r1^e = -1 with r1^v >= 0, or r1 >= 0 with r1^v >= 2 r1^e + 2; "
                       "r2 >= max(r1-2,-1), k >= max(2 r1^v + 3, 2 r2^v + 3), "
                       "dim B_{k-2}(r2) >= 3"},
                      {"instances", {"Hu-Ma-Zhang style (0,-1),(-1,-1) k=3"}}});
  families.push_back({{"family", "sym-divdiv-relaxed"},
                      {"constraints", "as sym-divdiv-plus with r1^e = -1"},
                      {"instances", {"Chen-Huang style (0,-1),(-1,-1) k=3"}}});
  Json kinds = Json::array();
  for (const char* kind : {"derham", "derham-rotated", "bubble", "curldiv", "elasticity",
                           "divdiv-plus", "divdiv-bdm-start", "divdiv-relaxed"})
    kinds.push_back(kind);
  Json report;
  report["command"] = "catalog";
  report["families"] = families;
  report["complex_kinds"] = kinds;
  report["builtin_meshes"] = Json::array({"builtin:reference-triangle",
                                          "builtin:square-diagonal-N",
                                          "builtin:square-crisscross-N"});
  emit(report, format);
  return 0;
}

int runMeshInfo(const std::string& meshName, const std::string& format) {
  const Mesh mesh = loadMesh(meshName);
  Json report;
  report["command"] = "mesh-info";
  report["info"] = meshInfoJson(meshName, mesh);
  emit(report, format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact construction and verification of 2D finite element complexes"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "table";
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "table"}));

  auto* identity = app.add_subcommand("identity", "polynomial dimension identity sweep");
  int kMax = 20;
  identity->add_option("--k-max", kMax, "largest degree checked");

  auto* unisolvence = app.add_subcommand("unisolvence", "DoF matrix rank certification");
  std::string familyArg = "scalar";
  int rv = -1, re = -1, kArg = 1, components = 1;
  std::string r1Arg, r2Arg, triangleArg = "ref";
  unisolvence->add_option("--family", familyArg, "element family");
  unisolvence->add_option("--rv", rv, "vertex smoothness (scalar family shorthand)");
  unisolvence->add_option("--re", re, "edge smoothness (scalar family shorthand)");
  unisolvence->add_option("--r1", r1Arg, "first smoothness pair 'v,e'");
  unisolvence->add_option("--r2", r2Arg, "second smoothness pair 'v,e'");
  unisolvence->add_option("--k", kArg, "polynomial degree");
  unisolvence->add_option("--components", components, "1 or 2 (scalar family)");
  unisolvence->add_option("--triangle", triangleArg, "ref | random | mesh file");

  auto* complexCmd = app.add_subcommand("complex", "exactness verdict for a complex");
  std::string kindArg = "derham", meshArg = "builtin:square-diagonal-1";
  std::string r0Arg, r1cArg = "-1,-1", r2cArg = "-1,-1", r3cArg = "-1,-1";
  int kC = 1;
  bool rotated = false, strict = false;
  complexCmd->add_option("--kind", kindArg, "complex kind");
  complexCmd->add_option("--k", kC, "polynomial degree of the middle space");
  complexCmd->add_option("--r0", r0Arg, "first smoothness pair (must be r1 + 1)");
  complexCmd->add_option("--r1", r1cArg, "middle smoothness pair 'v,e'");
  complexCmd->add_option("--r2", r2cArg, "div smoothness pair 'v,e'");
  complexCmd->add_option("--r3", r3cArg, "curldiv tail smoothness pair 'v,e'");
  complexCmd->add_option("--mesh", meshArg, "mesh file or builtin:NAME");
  complexCmd->add_flag("--rotated", rotated, "verify the rotated chain");
  complexCmd->add_flag("--strict", strict, "boundary-bound warnings become failures");

  auto* catalog = app.add_subcommand("catalog", "list families and complex kinds");
  auto* meshInfo = app.add_subcommand("mesh-info", "entity counts and topology");
  std::string meshInfoArg = "builtin:square-diagonal-1";
  meshInfo->add_option("--mesh", meshInfoArg, "mesh file or builtin:NAME");

  CLI11_PARSE(app, argc, argv);

  try {
    if (identity->parsed()) return runIdentity(kMax, format);
    if (unisolvence->parsed()) {
      ElementSpec spec;
      spec.family = familyFromName(familyArg);
      spec.degree = kArg;
      spec.components = components;
      if (!r1Arg.empty())
        spec.r1 = parsePair(r1Arg);
      else
        spec.r1 = {rv, re};
      if (!r2Arg.empty()) spec.r2 = parsePair(r2Arg);
      return runUnisolvence(spec, triangleArg, format);
    }
    if (complexCmd->parsed())
      return runComplex(kindArg, kC, parsePair(r1cArg), parsePair(r2cArg), parsePair(r3cArg),
                        rotated, meshArg, strict, format, !r0Arg.empty(),
                        r0Arg.empty() ? SmoothnessPair{} : parsePair(r0Arg));
    if (catalog->parsed()) return runCatalog(format);
    if (meshInfo->parsed()) return runMeshInfo(meshInfoArg, format);
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
