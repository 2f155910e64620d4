#include "gverify/compliance.hpp"

#include <cmath>

namespace gverify {

RequiredStates derive_requirements(const Program& program, const std::set<int>& spindle_m_codes) {
    RequiredStates required;
    for (const Block& block : program.blocks) {
        bool motion = false;
        bool has_x = false;
        bool has_z = false;
        for (const Word& word : block.words) {
            if (word.letter == 'M' && word.numeric_value &&
                *word.numeric_value == std::floor(*word.numeric_value) &&
                spindle_m_codes.count(static_cast<int>(*word.numeric_value))) {
                required.needs_collet = true;
            }
            if (is_motion_word(word)) motion = true;
            if (word.letter == 'X') has_x = true;
            if (word.letter == 'Z') has_z = true;
        }
        // Axis words demand a reference only when the block commands motion.
        if (motion && has_x) required.needs_refx = true;
        if (motion && has_z) required.needs_refz = true;
    }
    return required;
}

ComplianceResult check_compliance(const RequiredStates& required,
                                  const IndicatorStates& indicators) {
    ComplianceResult result;
    if (required.needs_collet && !indicators.collet_clamped)
        result.errors.push_back(kColletViolation);
    if (required.needs_refx && !indicators.refx) result.errors.push_back(kRefxViolation);
    if (required.needs_refz && !indicators.refz) result.errors.push_back(kRefzViolation);
    result.consistent = result.errors.empty();
    return result;
}

}  // namespace gverify
