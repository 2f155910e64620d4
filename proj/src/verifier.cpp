#include "gverify/verifier.hpp"

#include <algorithm>

namespace gverify {

namespace {

const char* correction_for(IssueCategory category) {
    switch (category) {
        case IssueCategory::ModalConflict:
            return "Remove one of the conflicting motion commands so each block has a single "
                   "motion mode.";
        case IssueCategory::InvalidCommand:
            return "Replace the invalid command with a supported, well-formed code.";
        case IssueCategory::NonNumericCoordinate:
            return "Replace the non-numeric coordinate with a numeric axis value.";
        case IssueCategory::MissingFeedValue:
            return "Edit the feed word to provide a numeric value for F.";
        case IssueCategory::UnknownCode:
            return "Replace the unknown code with a code the machine supports.";
        case IssueCategory::EmptyMotionBlock:
            return "Add an X or Z target to the motion block.";
        case IssueCategory::UnsafeFeed:
            return "Reduce the feed rate to at most the configured maximum.";
        case IssueCategory::Other:
            return "Review the flagged line and correct it.";
    }
    return "Review the flagged line and correct it.";
}

constexpr const char* kClampCollet = "Clamp the collet before running this program.";
constexpr const char* kReferenceX = "Reference the X axis before running this program.";
constexpr const char* kReferenceZ = "Reference the Z axis before running this program.";

}  // namespace

std::vector<std::string> generate_corrections(const IndicatorStates& indicators,
                                              std::span<const GcodeIssue> issues,
                                              const ComplianceResult& compliance) {
    std::vector<std::string> corrections;
    auto add = [&](const std::string& sentence) {
        if (std::find(corrections.begin(), corrections.end(), sentence) == corrections.end()) {
            corrections.push_back(sentence);
        }
    };

    if (!indicators.collet_clamped) add(kClampCollet);
    if (!indicators.refx) add(kReferenceX);
    if (!indicators.refz) add(kReferenceZ);

    for (const GcodeIssue& issue : issues) add(correction_for(issue.category));

    for (const std::string& error : compliance.errors) {
        if (error == kColletViolation) add(kClampCollet);
        if (error == kRefxViolation) add(kReferenceX);
        if (error == kRefzViolation) add(kReferenceZ);
    }
    return corrections;
}

VerificationReport verify_oracle(const std::string& gcode_text, const IndicatorStates& indicators,
                                 const ValidationLimits& limits) {
    Program program;
    std::vector<GcodeIssue> issues;
    try {
        program = tokenize(gcode_text);
        issues = validate(program, limits);
    } catch (const LexError& e) {
        program = Program{{}, gcode_text};  // no parsable blocks, no requirements
        issues.push_back({e.line, IssueCategory::Other, e.what()});
    }

    VerificationReport report;
    report.slots.collet_clamped = indicators.collet_clamped;
    report.slots.refx = indicators.refx;
    report.slots.refz = indicators.refz;
    if (!indicators.collet_clamped) report.slots.hmi_issues.push_back(kColletIssue);
    if (!indicators.refx) report.slots.hmi_issues.push_back(kRefxIssue);
    if (!indicators.refz) report.slots.hmi_issues.push_back(kRefzIssue);

    report.gcode_validity.valid = issues.empty();
    for (const GcodeIssue& issue : issues) report.gcode_validity.errors.push_back(issue.message);

    ComplianceResult compliance = check_compliance(derive_requirements(program), indicators);
    report.compliance.consistent = compliance.consistent;
    report.compliance.errors = compliance.errors;

    report.corrections = generate_corrections(indicators, issues, compliance);
    return report;
}

}  // namespace gverify
