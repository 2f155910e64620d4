#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gverify/gcode.hpp"
#include "gverify/hmi.hpp"
#include "gverify/image.hpp"
#include "gverify/report.hpp"

namespace gverify {

enum class Role { System, User, Assistant };

const char* to_string(Role role);

struct MessagePart {
    enum class Kind { Text, Image };
    Kind kind = Kind::Text;
    std::string text;                      // Kind::Text
    std::vector<std::uint8_t> image_data;  // Kind::Image, PNG-encoded
    std::string media_type = "image/png";

    static MessagePart make_text(std::string t) {
        MessagePart p;
        p.text = std::move(t);
        return p;
    }
    static MessagePart make_image(std::vector<std::uint8_t> bytes) {
        MessagePart p;
        p.kind = Kind::Image;
        p.image_data = std::move(bytes);
        return p;
    }
};

struct ChatMessage {
    Role role = Role::User;
    std::vector<MessagePart> parts;
};

// One worked example injected as a prior user/assistant turn.
struct FewShotExample {
    std::string label;
    std::string gcode;
    Image image;
    VerificationReport expected_report;
};

enum class Backend { Oracle, Mock, Remote };
enum class Shots { Zero, Few };
enum class ViewMode { Full, FullPlusCluster };

struct RunConfig {
    Backend backend = Backend::Oracle;
    Shots shots = Shots::Zero;
    ViewMode view_mode = ViewMode::Full;
    BBoxPct cluster_bbox = default_cluster_bbox();
    double temperature = 0.0;
    std::string model_name = "gpt-4.1";
    int max_parallel = 4;
    std::string endpoint = "https://api.openai.com/v1";
    std::chrono::milliseconds timeout{30000};
    int retries = 3;
    std::chrono::milliseconds retry_backoff{1000};  // doubles per attempt
    std::filesystem::path recordings_dir = "recordings";
    ValidationLimits limits;
    IndicatorLayout layout;
};

// Environment variables consulted by the remote backend.
inline constexpr const char* kApiKeyEnv = "GVERIFY_API_KEY";
inline constexpr const char* kEndpointEnv = "GVERIFY_ENDPOINT";

// Builds the full message sequence: system prompt (with the schema
// embedded), the few-shot example turns when shots=few, and the final
// user message carrying the fixed user prompt, the test G-code, the full
// screenshot, and the cluster crop when view_mode=full_plus_cluster.
// Example turns mirror the run's view mode. The test ground truth never
// appears anywhere in the sequence.
std::vector<ChatMessage> build_messages(const RunConfig& config, const std::string& gcode,
                                        const Image& image,
                                        const std::vector<FewShotExample>& examples,
                                        const std::string& schema_text);

// The instance-independent part of the sequence (system message plus the
// example turns) and the final user message. build_messages is their
// concatenation; batch runs cache the prefix per configuration.
std::vector<ChatMessage> build_message_prefix(const RunConfig& config,
                                              const std::vector<FewShotExample>& examples,
                                              const std::string& schema_text);
ChatMessage build_instance_message(const RunConfig& config, const std::string& gcode,
                                   const Image& image);

// Dispatches the sequence to the configured backend and returns the raw
// response text. Remote sends one chat-completions request (images as
// base64 data URLs, temperature 0); mock looks up a recorded response by
// message digest; oracle runs the local verifier on the final message's
// G-code and screenshot.
std::string call_model(const std::vector<ChatMessage>& messages, const RunConfig& config);

// Content digest used to key mock recordings: text parts plus decoded
// pixel digests of image parts, so the key does not depend on the PNG
// encoder byte stream.
std::string digest_messages(const std::vector<ChatMessage>& messages);

struct ExtractOutcome {
    std::optional<VerificationReport> report;
    SchemaVerdict verdict;
    std::string raw_text;

    bool ok() const { return report.has_value(); }
};

// Total wrapper over parse_report: failures carry the violation list and
// the raw text instead of throwing.
ExtractOutcome extract_report(const std::string& raw_text);

std::string base64_encode(const std::uint8_t* data, size_t size);

}  // namespace gverify
