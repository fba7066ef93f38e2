#pragma once

#include <json.hpp>

#include "fhsrisk/diagnostics.hpp"
#include "fhsrisk/fhs.hpp"
#include "fhsrisk/gjr_garch.hpp"

// nlohmann/json bindings. Doubles round-trip exactly (shortest repr), so a
// FitResult written and read back compares equal field by field.
namespace fhsrisk::diagnostics {
void to_json(nlohmann::json& j, const DiagnosticsRow& row);
void from_json(const nlohmann::json& j, DiagnosticsRow& row);
void to_json(nlohmann::json& j, const CorrelationMatrix& corr);
} // namespace fhsrisk::diagnostics

namespace fhsrisk::garch {
void to_json(nlohmann::json& j, const GjrParams& p);
void from_json(const nlohmann::json& j, GjrParams& p);
void to_json(nlohmann::json& j, const FitResult& fit);
void from_json(const nlohmann::json& j, FitResult& fit);
} // namespace fhsrisk::garch

namespace fhsrisk::fhs {
void to_json(nlohmann::json& j, const RiskSpec& spec);
void to_json(nlohmann::json& j, const RiskReport& report);
} // namespace fhsrisk::fhs
