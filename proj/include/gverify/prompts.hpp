#pragma once

#include <string>

namespace gverify {

// System prompt template; "<<SCHEMA>>" is replaced with the report JSON
// schema at message-build time. Shipped verbatim as assets/system_prompt.txt.
extern const char* const kSystemPromptTemplate;

// Fixed user prompt sent with every test instance.
extern const char* const kUserPrompt;

// Marker that introduces the G-code text part of a message; the oracle
// backend locates the program by this prefix.
extern const char* const kGcodeMarker;

// System prompt with the schema substituted in.
std::string system_prompt_text(const std::string& schema_text);

}  // namespace gverify
