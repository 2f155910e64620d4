#pragma once

#include <stdexcept>
#include <string>

namespace gverify {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem-level failure (missing file, unreadable, write failure).
struct IoError : Error {
    using Error::Error;
};

// Raster file is not a format we can decode.
struct DecodeError : Error {
    using Error::Error;
};

// G-code lexer hit a character that cannot start a word.
struct LexError : Error {
    LexError(const std::string& what, int line, int column)
        : Error(what), line(line), column(column) {}
    int line;
    int column;
};

// Indicator layout does not fit the supplied image.
struct LayoutError : Error {
    using Error::Error;
};

// Report text is not a single structured object.
struct ParseError : Error {
    using Error::Error;
};

// Invalid run configuration (e.g. few-shot without examples).
struct ConfigError : Error {
    using Error::Error;
};

// Network-level failure after the configured retries.
struct TransportError : Error {
    using Error::Error;
};

// Remote endpoint answered with a non-success status.
struct ApiError : Error {
    ApiError(const std::string& what, int status, std::string body)
        : Error(what), status(status), body(std::move(body)) {}
    int status;
    std::string body;
};

// No recorded response for the message digest.
struct MockMissError : Error {
    using Error::Error;
};

// Manifest is structurally broken (duplicate id, missing file).
struct ManifestError : Error {
    using Error::Error;
};

// Vector dimensions disagree.
struct DimensionError : Error {
    using Error::Error;
};

// Cosine of a zero-length vector is undefined.
struct ZeroVectorError : Error {
    using Error::Error;
};

// Remote embedding service failure.
struct ProviderError : Error {
    using Error::Error;
};

}  // namespace gverify
