// SPDX-License-Identifier: MIT
//
// Deterministic machine- and human-readable reports for unisolvence and
// exactness runs. The JSON form is the stable contract; identical inputs
// produce byte-identical output.

#ifndef FEC2D_REPORT_HPP
#define FEC2D_REPORT_HPP

#include <string>

#include <json.hpp>

#include "fec2d/complexes.hpp"

namespace fec2d {

using Json = nlohmann::ordered_json;

Json smoothnessJson(const SmoothnessPair& r);
Json elementSpecJson(const ElementSpec& spec);
Json unisolvenceJson(const ElementSpec& spec, const std::string& triangleName,
                     const UnisolvenceResult& result, const DofCounts& counts);
Json meshInfoJson(const std::string& name, const Mesh& mesh);
Json verdictJson(const ExactnessVerdict& v);
Json bubbleVerdictJson(int k, const SmoothnessPair& r1, const SmoothnessPair& r2,
                       const BubbleVerdict& v);

std::string renderTable(const Json& report);

}  // namespace fec2d

#endif
