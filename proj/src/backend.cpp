#include "gverify/backend.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "gverify/prompts.hpp"
#include "gverify/verifier.hpp"

namespace gverify {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a(std::uint64_t h, const void* data, size_t size) {
    const auto* bytes = static_cast<const std::uint8_t*>(data);
    for (size_t i = 0; i < size; ++i) {
        h ^= bytes[i];
        h *= kFnvPrime;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    static const char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

struct ParsedEndpoint {
    std::string origin;       // scheme://host[:port]
    std::string path_prefix;  // may be empty
};

ParsedEndpoint parse_endpoint(const std::string& endpoint) {
    size_t scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("endpoint must include a scheme: " + endpoint);
    }
    size_t path_start = endpoint.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {endpoint, ""};
    std::string prefix = endpoint.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    return {endpoint.substr(0, path_start), prefix};
}

void append_instance_parts(std::vector<MessagePart>& parts, const RunConfig& config,
                           const std::string& gcode, const Image& image) {
    parts.push_back(MessagePart::make_text(kGcodeMarker + gcode));
    parts.push_back(MessagePart::make_text("Full HMI screenshot:"));
    parts.push_back(MessagePart::make_image(encode_png(image)));
    if (config.view_mode == ViewMode::FullPlusCluster) {
        parts.push_back(MessagePart::make_text("Indicator cluster crop:"));
        parts.push_back(MessagePart::make_image(encode_png(crop_pct(image, config.cluster_bbox))));
    }
}

std::string call_oracle(const std::vector<ChatMessage>& messages, const RunConfig& config) {
    const ChatMessage& last = messages.back();
    std::string gcode;
    const MessagePart* screenshot = nullptr;
    for (const MessagePart& part : last.parts) {
        if (part.kind == MessagePart::Kind::Text && part.text.rfind(kGcodeMarker, 0) == 0) {
            gcode = part.text.substr(std::string(kGcodeMarker).size());
        } else if (part.kind == MessagePart::Kind::Image && !screenshot) {
            screenshot = &part;  // first image part is the full screenshot
        }
    }
    if (!screenshot) throw ConfigError("oracle backend: final message has no image part");

    Image full = decode_png(screenshot->image_data);
    IndicatorStates states =
        classify_indicators(crop_pct(full, config.cluster_bbox), config.layout);
    return serialize_report(verify_oracle(gcode, states, config.limits));
}

std::string call_mock(const std::vector<ChatMessage>& messages, const RunConfig& config) {
    std::string digest = digest_messages(messages);
    std::filesystem::path path = config.recordings_dir / (digest + ".txt");
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MockMissError("no recording for digest " + digest + " under " +
                            config.recordings_dir.string());
    }
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

nlohmann::json request_body(const std::vector<ChatMessage>& messages, const RunConfig& config) {
    nlohmann::json body;
    body["model"] = config.model_name;
    body["temperature"] = config.temperature;
    body["messages"] = nlohmann::json::array();
    for (const ChatMessage& message : messages) {
        nlohmann::json content = nlohmann::json::array();
        for (const MessagePart& part : message.parts) {
            if (part.kind == MessagePart::Kind::Text) {
                content.push_back({{"type", "text"}, {"text", part.text}});
            } else {
                std::string url = "data:" + part.media_type + ";base64," +
                                  base64_encode(part.image_data.data(), part.image_data.size());
                content.push_back({{"type", "image_url"}, {"image_url", {{"url", url}}}});
            }
        }
        body["messages"].push_back({{"role", to_string(message.role)}, {"content", content}});
    }
    return body;
}

std::string call_remote(const std::vector<ChatMessage>& messages, const RunConfig& config) {
    ParsedEndpoint endpoint = parse_endpoint(config.endpoint);
    std::string payload = request_body(messages, config).dump();

    httplib::Client client(endpoint.origin);
    client.set_connection_timeout(config.timeout);
    client.set_read_timeout(config.timeout);

    httplib::Headers headers;
    if (const char* key = std::getenv(kApiKeyEnv)) {
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    std::string last_error;
    for (int attempt = 0; attempt <= config.retries; ++attempt) {
        if (attempt > 0) {
            auto delay = config.retry_backoff * (1LL << (attempt - 1));
            std::this_thread::sleep_for(delay);
        }
        httplib::Result result = client.Post(endpoint.path_prefix + "/chat/completions", headers,
                                             payload, "application/json");
        if (!result) {
            last_error = httplib::to_string(result.error());
            continue;  // transport-level failure: retry
        }
        if (result->status < 200 || result->status >= 300) {
            throw ApiError("chat completion failed with status " +
                               std::to_string(result->status),
                           result->status, result->body);
        }
        nlohmann::json response;
        try {
            response = nlohmann::json::parse(result->body);
            return response.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const std::exception& e) {
            throw ApiError(std::string("malformed completion response: ") + e.what(),
                           result->status, result->body);
        }
    }
    throw TransportError("chat completion failed after " + std::to_string(config.retries) +
                         " retries: " + last_error);
}

}  // namespace

const char* to_string(Role role) {
    switch (role) {
        case Role::System: return "system";
        case Role::User: return "user";
        case Role::Assistant: return "assistant";
    }
    return "user";
}

std::string base64_encode(const std::uint8_t* data, size_t size) {
    static const char alphabet[] =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((size + 2) / 3 * 4);
    for (size_t i = 0; i < size; i += 3) {
        std::uint32_t chunk = std::uint32_t(data[i]) << 16;
        if (i + 1 < size) chunk |= std::uint32_t(data[i + 1]) << 8;
        if (i + 2 < size) chunk |= std::uint32_t(data[i + 2]);
        out.push_back(alphabet[(chunk >> 18) & 0x3F]);
        out.push_back(alphabet[(chunk >> 12) & 0x3F]);
        out.push_back(i + 1 < size ? alphabet[(chunk >> 6) & 0x3F] : '=');
        out.push_back(i + 2 < size ? alphabet[chunk & 0x3F] : '=');
    }
    return out;
}

std::vector<ChatMessage> build_message_prefix(const RunConfig& config,
                                              const std::vector<FewShotExample>& examples,
                                              const std::string& schema_text) {
    if (config.shots == Shots::Few && examples.empty()) {
        throw ConfigError("few-shot run requires a non-empty example pack");
    }

    std::vector<ChatMessage> messages;
    messages.push_back({Role::System, {MessagePart::make_text(system_prompt_text(schema_text))}});

    if (config.shots == Shots::Few) {
        for (const FewShotExample& example : examples) {
            ChatMessage user{Role::User, {}};
            user.parts.push_back(MessagePart::make_text("Worked example: " + example.label));
            append_instance_parts(user.parts, config, example.gcode, example.image);
            messages.push_back(std::move(user));
            messages.push_back(
                {Role::Assistant,
                 {MessagePart::make_text(serialize_report_compact(example.expected_report))}});
        }
    }
    return messages;
}

ChatMessage build_instance_message(const RunConfig& config, const std::string& gcode,
                                   const Image& image) {
    ChatMessage final_user{Role::User, {MessagePart::make_text(kUserPrompt)}};
    append_instance_parts(final_user.parts, config, gcode, image);
    return final_user;
}

std::vector<ChatMessage> build_messages(const RunConfig& config, const std::string& gcode,
                                        const Image& image,
                                        const std::vector<FewShotExample>& examples,
                                        const std::string& schema_text) {
    std::vector<ChatMessage> messages = build_message_prefix(config, examples, schema_text);
    messages.push_back(build_instance_message(config, gcode, image));
    return messages;
}

std::string digest_messages(const std::vector<ChatMessage>& messages) {
    std::uint64_t h = kFnvOffset;
    for (const ChatMessage& message : messages) {
        std::string role = to_string(message.role);
        h = fnv1a(h, role.data(), role.size());
        h = fnv1a(h, "\x1d", 1);
        for (const MessagePart& part : message.parts) {
            if (part.kind == MessagePart::Kind::Text) {
                h = fnv1a(h, "T", 1);
                h = fnv1a(h, part.text.data(), part.text.size());
            } else {
                // Hash decoded pixels so the digest survives PNG encoder
                // differences; dimensions go in as decimal text to stay
                // endianness-independent.
                Image img = decode_png(part.image_data);
                std::string dims = std::to_string(img.width) + "x" + std::to_string(img.height);
                std::uint64_t ih = kFnvOffset;
                ih = fnv1a(ih, dims.data(), dims.size());
                ih = fnv1a(ih, img.data.data(), img.data.size());
                std::string ihex = hex64(ih);
                h = fnv1a(h, "I", 1);
                h = fnv1a(h, ihex.data(), ihex.size());
            }
            h = fnv1a(h, "\x1e", 1);
        }
    }
    return hex64(h);
}

std::string call_model(const std::vector<ChatMessage>& messages, const RunConfig& config) {
    if (messages.empty() || messages.front().role != Role::System) {
        throw ConfigError("message sequence must start with a system message");
    }
    switch (config.backend) {
        case Backend::Oracle: return call_oracle(messages, config);
        case Backend::Mock: return call_mock(messages, config);
        case Backend::Remote: return call_remote(messages, config);
    }
    throw ConfigError("unknown backend");
}

ExtractOutcome extract_report(const std::string& raw_text) {
    ExtractOutcome outcome;
    outcome.raw_text = raw_text;
    try {
        outcome.report = parse_report(raw_text);
        outcome.verdict = SchemaVerdict{true, {}};
    } catch (const SchemaError& e) {
        outcome.verdict = e.verdict;
    } catch (const ParseError& e) {
        outcome.verdict = SchemaVerdict{false, {std::string("(document): ") + e.what()}};
    } catch (const std::exception& e) {
        outcome.verdict = SchemaVerdict{false, {std::string("(document): ") + e.what()}};
    }
    return outcome;
}

}  // namespace gverify
