#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "hermsub/factor.hpp"
#include "hermsub/schemes.hpp"

namespace hermsub {

/// MaskFile format: {"dim": m, "lo": l, "taps": [tap...]} with each tap a
/// dim x dim array of [re, im] pairs. Round-trips bit-identically for finite
/// values (shortest round-trip double serialization).
nlohmann::json mask_to_json(const MatrixMask& mask);
MatrixMask mask_from_json(const nlohmann::json& j);

void write_mask_file(const std::string& path, const MatrixMask& mask);
MatrixMask read_mask_file(const std::string& path);

nlohmann::json report_to_json(const ResidualReport& report);
nlohmann::json factor_to_json(const FactorResult& result);
nlohmann::json det_report_to_json(const DetIdentityReport& report);

/// CSV columns: level, alpha, x (= alpha / 2^level), component, value_re,
/// value_im. Rows sorted by (level, alpha, component).
void write_csv(std::ostream& os, const IterateStack& stack);

/// Static polyline of one component at the final level.
void write_svg(std::ostream& os, const IterateStack& stack, int component = 0);

}  // namespace hermsub
