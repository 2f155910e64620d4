#include "gverify/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>

namespace gverify {

using ordered_json = nlohmann::ordered_json;

namespace {

// Wire key spellings, byte-exact.
constexpr const char* kSlots = "slots";
constexpr const char* kColletClamped = "collet_clamped";
constexpr const char* kRefx = "refx";
constexpr const char* kRefz = "refz";
constexpr const char* kHmiIssues = "HMI issues";
constexpr const char* kGcodeValidity = "gcode_validity";
constexpr const char* kValid = "valid";
constexpr const char* kGcodeErrors = "g-code errors";
constexpr const char* kCompliance = "HMI and G-code compliance";
constexpr const char* kConsistent = "consistent";
constexpr const char* kComplianceErrors = "HMI and G-code errors";
constexpr const char* kCorrections = "corrections";

ordered_json to_json(const VerificationReport& report) {
    ordered_json j;
    j[kSlots][kColletClamped] = report.slots.collet_clamped;
    j[kSlots][kRefx] = report.slots.refx;
    j[kSlots][kRefz] = report.slots.refz;
    j[kSlots][kHmiIssues] = report.slots.hmi_issues;
    j[kGcodeValidity][kValid] = report.gcode_validity.valid;
    j[kGcodeValidity][kGcodeErrors] = report.gcode_validity.errors;
    j[kCompliance][kConsistent] = report.compliance.consistent;
    j[kCompliance][kComplianceErrors] = report.compliance.errors;
    j[kCorrections] = report.corrections;
    return j;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Removes a ``` / ```json wrapper when the whole text is one fenced
// section. Anything outside the fence is left in place so parsing fails.
std::string strip_code_fence(const std::string& text) {
    std::string body = trim(text);
    if (body.rfind("```", 0) != 0) return body;
    size_t open_end = body.find('\n');
    if (open_end == std::string::npos) return body;
    std::string fence_word = trim(body.substr(3, open_end - 3));
    if (!std::all_of(fence_word.begin(), fence_word.end(),
                     [](unsigned char c) { return std::isalnum(c); })) {
        return body;
    }
    if (body.size() < open_end + 4 || body.compare(body.size() - 3, 3, "```") != 0) return body;
    return trim(body.substr(open_end + 1, body.size() - 3 - (open_end + 1)));
}

void check_string_array(const ordered_json& value, const std::string& path,
                        std::vector<std::string>& violations) {
    if (!value.is_array()) {
        violations.push_back(path + ": expected array of strings, got " +
                             std::string(value.type_name()));
        return;
    }
    for (size_t i = 0; i < value.size(); ++i) {
        if (!value[i].is_string()) {
            violations.push_back(path + "[" + std::to_string(i) + "]: expected string, got " +
                                 std::string(value[i].type_name()));
        }
    }
}

void check_boolean(const ordered_json& value, const std::string& path,
                   std::vector<std::string>& violations) {
    if (!value.is_boolean()) {
        violations.push_back(path + ": expected boolean, got " + std::string(value.type_name()));
    }
}

enum class FieldKind { Boolean, StringArray, Object };

struct FieldSpec {
    const char* key;
    FieldKind kind;
};

void check_object(const ordered_json& value, const std::string& path,
                  const std::vector<FieldSpec>& fields, std::vector<std::string>& violations) {
    if (!value.is_object()) {
        violations.push_back(path + ": expected object, got " + std::string(value.type_name()));
        return;
    }
    for (const FieldSpec& field : fields) {
        std::string field_path = path.empty() ? field.key : path + "." + field.key;
        if (!value.contains(field.key)) {
            violations.push_back(field_path + ": missing");
            continue;
        }
        switch (field.kind) {
            case FieldKind::Boolean: check_boolean(value[field.key], field_path, violations); break;
            case FieldKind::StringArray:
                check_string_array(value[field.key], field_path, violations);
                break;
            case FieldKind::Object: break;  // checked by the caller
        }
    }
    for (auto it = value.begin(); it != value.end(); ++it) {
        bool known = std::any_of(fields.begin(), fields.end(),
                                 [&](const FieldSpec& f) { return it.key() == f.key; });
        if (!known) {
            std::string field_path = path.empty() ? it.key() : path + "." + it.key();
            violations.push_back(field_path + ": unexpected key");
        }
    }
}

SchemaVerdict check_document(const ordered_json& j) {
    SchemaVerdict verdict;
    check_object(j, "",
                 {{kSlots, FieldKind::Object},
                  {kGcodeValidity, FieldKind::Object},
                  {kCompliance, FieldKind::Object},
                  {kCorrections, FieldKind::StringArray}},
                 verdict.violations);
    if (j.is_object()) {
        if (j.contains(kSlots)) {
            check_object(j[kSlots], kSlots,
                         {{kColletClamped, FieldKind::Boolean},
                          {kRefx, FieldKind::Boolean},
                          {kRefz, FieldKind::Boolean},
                          {kHmiIssues, FieldKind::StringArray}},
                         verdict.violations);
        }
        if (j.contains(kGcodeValidity)) {
            check_object(j[kGcodeValidity], kGcodeValidity,
                         {{kValid, FieldKind::Boolean}, {kGcodeErrors, FieldKind::StringArray}},
                         verdict.violations);
        }
        if (j.contains(kCompliance)) {
            check_object(j[kCompliance], kCompliance,
                         {{kConsistent, FieldKind::Boolean},
                          {kComplianceErrors, FieldKind::StringArray}},
                         verdict.violations);
        }
    }
    verdict.valid = verdict.violations.empty();
    return verdict;
}

}  // namespace

std::string serialize_report(const VerificationReport& report) { return to_json(report).dump(2); }

std::string serialize_report_compact(const VerificationReport& report) {
    return to_json(report).dump();
}

VerificationReport parse_report(const std::string& text) {
    std::string body = strip_code_fence(text);
    ordered_json j;
    try {
        j = ordered_json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("not a JSON object: ") + e.what());
    }
    if (!j.is_object()) {
        throw ParseError("top-level JSON value is not an object");
    }
    SchemaVerdict verdict = check_document(j);
    if (!verdict.valid) {
        std::string what = "report does not match the schema:";
        for (const auto& v : verdict.violations) what += "\n  " + v;
        throw SchemaError(what, std::move(verdict));
    }

    VerificationReport report;
    report.slots.collet_clamped = j[kSlots][kColletClamped].get<bool>();
    report.slots.refx = j[kSlots][kRefx].get<bool>();
    report.slots.refz = j[kSlots][kRefz].get<bool>();
    report.slots.hmi_issues = j[kSlots][kHmiIssues].get<std::vector<std::string>>();
    report.gcode_validity.valid = j[kGcodeValidity][kValid].get<bool>();
    report.gcode_validity.errors = j[kGcodeValidity][kGcodeErrors].get<std::vector<std::string>>();
    report.compliance.consistent = j[kCompliance][kConsistent].get<bool>();
    report.compliance.errors = j[kCompliance][kComplianceErrors].get<std::vector<std::string>>();
    report.corrections = j[kCorrections].get<std::vector<std::string>>();
    return report;
}

SchemaVerdict validate_schema(const std::string& text) {
    try {
        parse_report(text);
        return SchemaVerdict{true, {}};
    } catch (const SchemaError& e) {
        return e.verdict;
    } catch (const ParseError& e) {
        return SchemaVerdict{false, {std::string("(document): ") + e.what()}};
    } catch (const std::exception& e) {
        return SchemaVerdict{false, {std::string("(document): ") + e.what()}};
    }
}

const std::string& report_json_schema() {
    static const std::string schema = ordered_json{
        {"$schema", "http://json-schema.org/draft-07/schema#"},
        {"title", "CNC G-code and HMI verification report"},
        {"type", "object"},
        {"additionalProperties", false},
        {"required", ordered_json::array({kSlots, kGcodeValidity, kCompliance, kCorrections})},
        {"properties",
         ordered_json{
             {kSlots,
              ordered_json{
                  {"type", "object"},
                  {"additionalProperties", false},
                  {"required",
                   ordered_json::array({kColletClamped, kRefx, kRefz, kHmiIssues})},
                  {"properties",
                   ordered_json{{kColletClamped, ordered_json{{"type", "boolean"}}},
                                {kRefx, ordered_json{{"type", "boolean"}}},
                                {kRefz, ordered_json{{"type", "boolean"}}},
                                {kHmiIssues,
                                 ordered_json{{"type", "array"},
                                              {"items", ordered_json{{"type", "string"}}}}}}}}},
             {kGcodeValidity,
              ordered_json{
                  {"type", "object"},
                  {"additionalProperties", false},
                  {"required", ordered_json::array({kValid, kGcodeErrors})},
                  {"properties",
                   ordered_json{{kValid, ordered_json{{"type", "boolean"}}},
                                {kGcodeErrors,
                                 ordered_json{{"type", "array"},
                                              {"items", ordered_json{{"type", "string"}}}}}}}}},
             {kCompliance,
              ordered_json{
                  {"type", "object"},
                  {"additionalProperties", false},
                  {"required", ordered_json::array({kConsistent, kComplianceErrors})},
                  {"properties",
                   ordered_json{{kConsistent, ordered_json{{"type", "boolean"}}},
                                {kComplianceErrors,
                                 ordered_json{{"type", "array"},
                                              {"items", ordered_json{{"type", "string"}}}}}}}}},
             {kCorrections,
              ordered_json{{"type", "array"}, {"items", ordered_json{{"type", "string"}}}}},
         }},
    }.dump(2);
    return schema;
}

}  // namespace gverify
