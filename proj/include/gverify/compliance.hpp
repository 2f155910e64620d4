#pragma once

#include <set>
#include <string>
#include <vector>

#include "gverify/gcode.hpp"
#include "gverify/hmi.hpp"

namespace gverify {

// What the program demands from the machine state, derived from the text
// alone: spindle control words require the collet, motion on an axis
// requires that axis to be referenced.
struct RequiredStates {
    bool needs_collet = false;
    bool needs_refx = false;
    bool needs_refz = false;

    bool operator==(const RequiredStates&) const = default;
};

struct ComplianceResult {
    bool consistent = true;
    std::vector<std::string> errors;
};

// Canonical violation phrases. Truth files and the oracle both use these,
// so semantic evaluation has a stable reference.
inline constexpr const char* kColletViolation =
    "Spindle command issued but COLLET CLAMPED is not active";
inline constexpr const char* kRefxViolation =
    "X-axis motion commanded but REF X is not referenced";
inline constexpr const char* kRefzViolation =
    "Z-axis motion commanded but REF Z is not referenced";

// Spindle control words; M5 counts because the rule covers all spindle
// control commands.
RequiredStates derive_requirements(const Program& program,
                                   const std::set<int>& spindle_m_codes = {3, 4, 5});

ComplianceResult check_compliance(const RequiredStates& required,
                                  const IndicatorStates& indicators);

}  // namespace gverify
