#include "gverify/gcode.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace gverify {

namespace {

bool is_word_letter(char c) { return c >= 'A' && c <= 'Z'; }

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::optional<double> parse_decimal(const std::string& value) {
    if (!is_signed_decimal(value)) return std::nullopt;
    const char* begin = value.data();
    const char* end = begin + value.size();
    if (*begin == '+') ++begin;  // from_chars rejects a leading plus
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, out, std::chars_format::fixed);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return out;
}

// Motion code if the word is G with an integral value in 0..3.
std::optional<int> integral_code(const Word& word) {
    if (!word.numeric_value) return std::nullopt;
    double v = *word.numeric_value;
    if (v != std::floor(v)) return std::nullopt;
    return static_cast<int>(v);
}

std::string trimmed(const std::string& line) {
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    size_t e = line.find_last_not_of(" \t\r");
    return line.substr(b, e - b + 1);
}

// Formats a limit without trailing zeros so messages read "500", not "500.000000".
std::string format_limit(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

struct LineScan {
    std::vector<Word> words;
    std::vector<std::string> comments;
};

LineScan scan_line(const std::string& line, int line_no) {
    LineScan out;
    std::optional<Word> open;

    auto close_word = [&] {
        if (!open) return;
        open->numeric_value = parse_decimal(open->raw_value);
        out.words.push_back(std::move(*open));
        open.reset();
    };

    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (is_space(c)) continue;
        if (c == ';') {
            std::string text = trimmed(line.substr(i + 1));
            if (!text.empty()) out.comments.push_back(text);
            break;
        }
        if (c == '(') {
            size_t close = line.find(')', i + 1);
            size_t end = close == std::string::npos ? line.size() : close;
            std::string text = trimmed(line.substr(i + 1, end - i - 1));
            if (!text.empty()) out.comments.push_back(text);
            i = end;  // unclosed comment swallows the rest of the line
            continue;
        }
        if (is_word_letter(c)) {
            close_word();
            open = Word{c, "", std::nullopt};
            continue;
        }
        if (!open) {
            throw LexError("unexpected character '" + std::string(1, c) +
                               "' cannot start a word (line " + std::to_string(line_no) +
                               ", column " + std::to_string(i + 1) + ")",
                           line_no, static_cast<int>(i + 1));
        }
        open->raw_value.push_back(c);
    }
    close_word();
    return out;
}

}  // namespace

const char* to_string(IssueCategory category) {
    switch (category) {
        case IssueCategory::ModalConflict: return "ModalConflict";
        case IssueCategory::InvalidCommand: return "InvalidCommand";
        case IssueCategory::NonNumericCoordinate: return "NonNumericCoordinate";
        case IssueCategory::MissingFeedValue: return "MissingFeedValue";
        case IssueCategory::UnknownCode: return "UnknownCode";
        case IssueCategory::EmptyMotionBlock: return "EmptyMotionBlock";
        case IssueCategory::UnsafeFeed: return "UnsafeFeed";
        case IssueCategory::Other: return "Other";
    }
    return "Other";
}

bool is_signed_decimal(const std::string& value) {
    size_t i = 0;
    if (i < value.size() && (value[i] == '+' || value[i] == '-')) ++i;
    bool digit = false;
    bool dot = false;
    for (; i < value.size(); ++i) {
        char c = value[i];
        if (c >= '0' && c <= '9') {
            digit = true;
        } else if (c == '.') {
            if (dot) return false;
            dot = true;
        } else {
            return false;
        }
    }
    return digit;
}

bool is_motion_word(const Word& word) {
    if (word.letter != 'G') return false;
    auto code = integral_code(word);
    return code && *code >= 0 && *code <= 3;
}

Program tokenize(const std::string& text) {
    Program program;
    program.source = text;

    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        size_t end = nl == std::string::npos ? text.size() : nl;
        std::string line = text.substr(pos, end - pos);
        ++line_no;

        LineScan scan = scan_line(line, line_no);
        if (!scan.words.empty()) {
            Block block;
            block.line_no = line_no;
            block.words = std::move(scan.words);
            if (!scan.comments.empty()) {
                std::string joined;
                for (const auto& c : scan.comments) {
                    if (!joined.empty()) joined += ' ';
                    joined += c;
                }
                block.comment = joined;
            }
            program.blocks.push_back(std::move(block));
        }

        if (nl == std::string::npos) break;
        pos = nl + 1;
    }
    return program;
}

std::string reserialize(const Program& program) {
    std::string out;
    for (const Block& block : program.blocks) {
        std::string line;
        for (const Word& word : block.words) {
            if (!line.empty()) line += ' ';
            line += word.text();
        }
        if (block.comment) {
            if (!line.empty()) line += ' ';
            line += "(" + *block.comment + ")";
        }
        out += line;
        out += '\n';
    }
    return out;
}

std::vector<GcodeIssue> validate(const Program& program, const ValidationLimits& limits) {
    std::vector<GcodeIssue> issues;

    // Messages cite the line by number, not by text: quoting the raw line
    // would break the whitespace-invariance of the issue list.
    auto add = [&](int line_no, IssueCategory category, const std::string& detail) {
        GcodeIssue issue;
        issue.line_no = line_no;
        issue.category = category;
        issue.message = detail + " (line " + std::to_string(line_no) + ")";
        issues.push_back(std::move(issue));
    };

    for (const Block& block : program.blocks) {
        std::vector<const Word*> motion;
        bool has_x = false;
        bool has_z = false;

        for (const Word& word : block.words) {
            if (is_motion_word(word)) motion.push_back(&word);
            if (word.letter == 'X') has_x = true;
            if (word.letter == 'Z') has_z = true;
        }

        if (motion.size() >= 2) {
            std::string list;
            for (const Word* w : motion) {
                if (!list.empty()) list += ", ";
                list += w->text();
            }
            add(block.line_no, IssueCategory::ModalConflict,
                "modal conflict: multiple motion commands (" + list + ") in one block");
        }

        for (const Word& word : block.words) {
            switch (word.letter) {
                case 'N':
                    break;  // line numbers are accepted and ignored
                case 'G':
                case 'M': {
                    if (!word.numeric_value) {
                        add(block.line_no, IssueCategory::InvalidCommand,
                            "invalid command: word '" + word.text() + "' has a malformed value");
                        break;
                    }
                    auto code = integral_code(word);
                    const auto& known = word.letter == 'G' ? limits.known_g_codes
                                                           : limits.known_m_codes;
                    if (!code || !known.count(*code)) {
                        add(block.line_no, IssueCategory::UnknownCode,
                            "unknown code: word '" + word.text() +
                                "' is not a recognized code");
                    }
                    break;
                }
                case 'X':
                case 'Z':
                    if (!word.numeric_value) {
                        add(block.line_no, IssueCategory::NonNumericCoordinate,
                            "non-numeric coordinate: word '" + word.text() +
                                "' is not a number");
                    }
                    break;
                case 'F':
                    if (word.raw_value.empty()) {
                        add(block.line_no, IssueCategory::MissingFeedValue,
                            "feed F missing value: word '" + word.text() + "' has no value");
                    } else if (!word.numeric_value) {
                        add(block.line_no, IssueCategory::InvalidCommand,
                            "invalid command: word '" + word.text() + "' has a malformed value");
                    } else if (*word.numeric_value > limits.max_feed) {
                        add(block.line_no, IssueCategory::UnsafeFeed,
                            "unsafe feed: word '" + word.text() + "' exceeds the " +
                                format_limit(limits.max_feed) + " unit/min limit");
                    }
                    break;
                default:
                    if (!word.numeric_value) {
                        add(block.line_no, IssueCategory::InvalidCommand,
                            "invalid command: word '" + word.text() + "' has a malformed value");
                    }
                    break;
            }
        }

        if (!motion.empty() && !has_x && !has_z) {
            add(block.line_no, IssueCategory::EmptyMotionBlock,
                "empty motion block: motion command '" + motion.front()->text() +
                    "' has no X or Z target");
        }
    }
    return issues;
}

}  // namespace gverify
