#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gverify/errors.hpp"

namespace gverify {

// One letter-value pair inside a block, e.g. G0, X1.5, F120.
struct Word {
    char letter = '?';            // always uppercase A-Z
    std::string raw_value;        // text after the letter, whitespace removed
    std::optional<double> numeric_value;  // present iff raw_value is a signed decimal

    std::string text() const { return std::string(1, letter) + raw_value; }
    bool operator==(const Word&) const = default;
};

// One source line that carries words.
struct Block {
    int line_no = 0;              // 1-based source line
    std::vector<Word> words;
    std::optional<std::string> comment;

    bool operator==(const Block&) const = default;
};

struct Program {
    std::vector<Block> blocks;
    std::string source;           // original text, unmodified

    bool operator==(const Program&) const = default;
};

enum class IssueCategory {
    ModalConflict,
    InvalidCommand,
    NonNumericCoordinate,
    MissingFeedValue,
    UnknownCode,
    EmptyMotionBlock,
    UnsafeFeed,
    Other,
};

const char* to_string(IssueCategory category);

struct GcodeIssue {
    int line_no = 0;
    IssueCategory category = IssueCategory::Other;
    std::string message;     // includes the offending word and source line

    bool operator==(const GcodeIssue&) const = default;
};

// Tunable validation thresholds and code dictionaries.
struct ValidationLimits {
    double max_feed = 500.0;  // machine units per minute
    std::set<int> known_g_codes = {0, 1, 2, 3, 4, 18, 20, 21, 28, 40, 54, 90, 91, 94, 95, 96, 97};
    std::set<int> known_m_codes = {3, 4, 5, 8, 9, 30};
};

// Splits text into blocks of words. Whitespace between a letter and its
// value (or inside the value) is tolerated; "G 00X1.0" lexes the same as
// "G00 X1.0". Parenthesized and semicolon comments are stripped before
// word scanning. Blank and comment-only lines produce no block.
//
// Throws LexError when a character that cannot start or continue a word
// is found where a word would have to begin.
Program tokenize(const std::string& text);

// Runs every rule over every block and returns all issues found, in
// deterministic order. An empty result means the program is valid.
std::vector<GcodeIssue> validate(const Program& program, const ValidationLimits& limits = {});

// Blocks rendered back to text, one line per block: letter+value words
// space-separated, comments re-attached in parentheses.
std::string reserialize(const Program& program);

// True when value is an optionally signed decimal number ("1", "-0.5", "+2.").
bool is_signed_decimal(const std::string& value);

// True for G0..G3 words, the mutually exclusive motion group.
bool is_motion_word(const Word& word);

}  // namespace gverify
