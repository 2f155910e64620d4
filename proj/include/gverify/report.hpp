#pragma once

#include <string>
#include <vector>

#include "gverify/errors.hpp"

namespace gverify {

// The verification output document. Field names here are internal; the
// wire format uses the exact report keys ("HMI issues", "g-code errors",
// "HMI and G-code compliance", "HMI and G-code errors").
struct VerificationReport {
    struct Slots {
        bool collet_clamped = false;
        bool refx = false;
        bool refz = false;
        std::vector<std::string> hmi_issues;
        bool operator==(const Slots&) const = default;
    };
    struct GcodeValidity {
        bool valid = true;
        std::vector<std::string> errors;
        bool operator==(const GcodeValidity&) const = default;
    };
    struct Compliance {
        bool consistent = true;
        std::vector<std::string> errors;
        bool operator==(const Compliance&) const = default;
    };

    Slots slots;
    GcodeValidity gcode_validity;
    Compliance compliance;
    std::vector<std::string> corrections;

    bool operator==(const VerificationReport&) const = default;
};

struct SchemaVerdict {
    bool valid = false;
    std::vector<std::string> violations;  // one per defect, with field path
};

// Serializes to a single JSON object with the fixed key order, 2-space
// indented. serialize_report_compact emits the same object on one line
// (used when embedding reports in chat messages).
std::string serialize_report(const VerificationReport& report);
std::string serialize_report_compact(const VerificationReport& report);

// Parses arbitrary text into a report. A code-fence wrapper around the
// object is tolerated (and stripped); anything else must be exactly one
// JSON object. Throws ParseError when the text is not a lone object,
// SchemaError when the object does not match the report schema.
VerificationReport parse_report(const std::string& text);

struct SchemaError : Error {
    SchemaError(const std::string& what, SchemaVerdict verdict)
        : Error(what), verdict(std::move(verdict)) {}
    SchemaVerdict verdict;
};

// Total: never throws. valid=true iff parse_report would succeed;
// violations enumerate every defect, not only the first.
SchemaVerdict validate_schema(const std::string& text);

// The JSON Schema document describing the report shape, shipped to the
// model inside the system prompt.
const std::string& report_json_schema();

}  // namespace gverify
