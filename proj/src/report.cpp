// SPDX-License-Identifier: MIT

#include "fec2d/report.hpp"

#include <sstream>

namespace fec2d {

Json smoothnessJson(const SmoothnessPair& r) { return Json::array({r.rv, r.re}); }

Json elementSpecJson(const ElementSpec& spec) {
  Json j;
  j["family"] = familyName(spec.family);
  j["k"] = spec.degree;
  j["r1"] = smoothnessJson(spec.r1);
  if (spec.family != Family::ScalarSmooth && spec.family != Family::VectorDivTn)
    j["r2"] = smoothnessJson(spec.r2);
  if (spec.components != 1) j["components"] = spec.components;
  return j;
}

Json unisolvenceJson(const ElementSpec& spec, const std::string& triangleName,
                     const UnisolvenceResult& result, const DofCounts& counts) {
  Json j;
  j["command"] = "unisolvence";
  j["spec"] = elementSpecJson(spec);
  j["triangle"] = triangleName;
  j["rows"] = result.rows;
  j["cols"] = result.cols;
  j["square"] = result.square;
  j["nonsingular"] = result.nonsingular;
  j["counts"] = {{"vertex", counts.perVertex}, {"edge", counts.perEdge},
                 {"interior", counts.interior}};
  j["pass"] = result.square && result.nonsingular;
  return j;
}

Json meshInfoJson(const std::string& name, const Mesh& mesh) {
  Json j;
  j["mesh"] = name;
  j["vertices"] = mesh.numVertices();
  j["edges"] = mesh.numEdges();
  j["triangles"] = mesh.numTriangles();
  j["euler_characteristic"] = mesh.eulerCharacteristic();
  j["boundary_loops"] = mesh.boundaryLoopCount();
  j["simply_connected"] = mesh.simplyConnected();
  return j;
}

Json verdictJson(const ExactnessVerdict& v) {
  Json j;
  j["spec"] = v.spec;
  j["applicable"] = v.applicable;
  j["dims"] = v.dims;
  j["ranks"] = v.ranks;
  j["nullities"] = v.nullities;
  j["left_kernel_expected"] = v.leftKernelExpected;
  j["checks"] = {{"is_complex", v.isComplex},
                 {"inclusion", v.inclusionOk},
                 {"left_kernel_dim", v.leftKernelDimOk},
                 {"left_kernel_contained", v.leftKernelContained},
                 {"ker_img_links", v.kerImgOk},
                 {"surjective_end", v.surjectiveEnd},
                 {"alternating_sum", v.alternatingSum}};
  if (!v.applicable) j["betti_obstruction"] = v.bettiObstruction;
  j["warnings"] = v.warnings;
  j["exact"] = v.exact;
  return j;
}

Json bubbleVerdictJson(int k, const SmoothnessPair& r1, const SmoothnessPair& r2,
                       const BubbleVerdict& v) {
  Json j;
  j["spec"] = "bubble k=" + std::to_string(k);
  j["r1"] = smoothnessJson(r1);
  j["r2"] = smoothnessJson(r2);
  j["dims"] = v.dims;
  j["alternating_sum"] = v.alternatingSum;
  j["dimension_identity"] = v.dimensionIdentity;
  j["exact"] = v.exact;
  return j;
}

namespace {

void renderValue(std::ostringstream& out, const std::string& key, const Json& value,
                 int indent) {
  for (int i = 0; i < indent; ++i) out << "  ";
  out << key << ": ";
  if (value.is_object()) {
    out << "\n";
    for (const auto& [k, val] : value.items()) renderValue(out, k, val, indent + 1);
    return;
  }
  if (value.is_array() && !value.empty() && value[0].is_object()) {
    out << "\n";
    for (size_t i = 0; i < value.size(); ++i)
      renderValue(out, "[" + std::to_string(i) + "]", value[i], indent + 1);
    return;
  }
  out << value.dump() << "\n";
}

}  // namespace

std::string renderTable(const Json& report) {
  std::ostringstream out;
  for (const auto& [key, value] : report.items()) renderValue(out, key, value, 0);
  return out.str();
}

}  // namespace fec2d
