#pragma once

#include <span>
#include <string>
#include <vector>

#include "gverify/compliance.hpp"
#include "gverify/gcode.hpp"
#include "gverify/hmi.hpp"
#include "gverify/report.hpp"

namespace gverify {

// Canonical phrases for dark indicators, mirrored in truth files.
inline constexpr const char* kColletIssue = "COLLET CLAMPED indicator is not active";
inline constexpr const char* kRefxIssue = "REF X indicator is not active";
inline constexpr const char* kRefzIssue = "REF Z indicator is not active";

// One templated suggestion per defect, ordered HMI issues first, then
// G-code errors, then compliance errors, deduplicated by sentence so one
// root cause yields one suggestion.
std::vector<std::string> generate_corrections(const IndicatorStates& indicators,
                                              std::span<const GcodeIssue> issues,
                                              const ComplianceResult& compliance);

// The rule-based reference verifier: composes tokenize/validate, the
// indicator states, and the compliance rules into a full report. Total —
// unlexable input becomes a G-code validity failure, never an exception.
VerificationReport verify_oracle(const std::string& gcode_text, const IndicatorStates& indicators,
                                 const ValidationLimits& limits = {});

}  // namespace gverify
