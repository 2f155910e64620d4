#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gverify/backend.hpp"
#include "gverify/report.hpp"

namespace gverify {

// Text embedding source. embed returns a unit-norm vector of fixed
// dimension for non-empty text; empty text maps to the zero vector.
class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual std::vector<double> embed(const std::string& text) = 0;
    virtual int dimension() const = 0;
    virtual std::string name() const = 0;
};

// Deterministic offline stand-in for the remote embedding service:
// lowercase, split on non-alphanumerics, term-frequency hashed into
// `dimension` buckets (FNV-1a with the seed below), L2-normalized.
inline constexpr std::uint64_t kLexicalHashSeed = 0x5ca1ab1e0ddba11ULL;

class LexicalEmbedding final : public EmbeddingProvider {
public:
    explicit LexicalEmbedding(int dimension = 512) : dimension_(dimension) {}
    std::vector<double> embed(const std::string& text) override;
    int dimension() const override { return dimension_; }
    std::string name() const override { return "lexical"; }

private:
    int dimension_ = 512;
};

// POST <endpoint>/embeddings client, bearer token from GVERIFY_API_KEY.
// Throws ProviderError on any failure.
class RemoteEmbedding final : public EmbeddingProvider {
public:
    explicit RemoteEmbedding(std::string endpoint,
                             std::string model_name = "text-embedding-3-small",
                             std::chrono::milliseconds timeout = std::chrono::milliseconds(30000));
    std::vector<double> embed(const std::string& text) override;
    int dimension() const override { return dimension_; }
    std::string name() const override { return "remote:" + model_name_; }

private:
    std::string endpoint_;
    std::string model_name_;
    std::chrono::milliseconds timeout_;
    int dimension_ = 0;  // learned from the first response
};

// Standard cosine similarity. Throws DimensionError on length mismatch,
// ZeroVectorError when either vector has zero norm.
double cosine(const std::vector<double>& u, const std::vector<double>& v);

struct MatchPair {
    size_t pred_index = 0;
    size_t truth_index = 0;
    double similarity = 0.0;
    bool matched = false;  // similarity strictly exceeds the threshold
};

struct MatchResult {
    double match_rate = 0.0;
    double avg_similarity = 0.0;  // mean over matched pairs, 0 when none
    size_t match_count = 0;
    std::vector<MatchPair> pairs;
};

// Greedy alignment: repeatedly take the highest-similarity remaining
// (pred, truth) pair; a selected pair matches iff similarity > threshold.
// match_rate divides by max(|pred|, |truth|). Two empty lists agree
// vacuously (1.0, 1.0); exactly one empty scores (0.0, 0.0).
MatchResult semantic_match(const std::vector<std::string>& pred_list,
                           const std::vector<std::string>& truth_list,
                           EmbeddingProvider& provider, double threshold = 0.80);

// Per-instance structural comparison. A schema failure (absent pred)
// counts as incorrect on every boolean field.
struct FieldCorrectness {
    std::string instance_id;
    bool schema_valid = false;
    bool collet = false;
    bool refx = false;
    bool refz = false;
    bool validity = false;
    bool compliance = false;
};

FieldCorrectness structural_compare(const std::string& instance_id,
                                    const std::optional<VerificationReport>& pred,
                                    const VerificationReport& truth);

enum class SemanticCategory { GcodeError, HmiError, CombinedError, Corrections };

const char* to_string(SemanticCategory category);

struct CategoryScore {
    double match_rate = 0.0;
    double avg_similarity = 0.0;
    bool scored = false;  // true when match_rate > 0 (pool member for averaging)
};

struct InstanceRecord {
    std::string instance_id;
    FieldCorrectness fields;
    CategoryScore gcode_error;
    CategoryScore hmi_error;
    CategoryScore combined_error;
    CategoryScore corrections;
};

// Structural + semantic comparison of one prediction against its truth.
// Schema-invalid predictions zero-score every semantic category.
InstanceRecord evaluate_instance(const std::string& instance_id, const ExtractOutcome& pred,
                                 const VerificationReport& truth, EmbeddingProvider& provider,
                                 double threshold = 0.80);

struct StructuralMetrics {
    double schema_validity = 0.0;
    double acc_collet = 0.0;
    double acc_refx = 0.0;
    double acc_refz = 0.0;
    double acc_gcode_validity = 0.0;
    double acc_compliance = 0.0;
    int n_instances = 0;
};

struct CategoryMetrics {
    double match_rate = 0.0;
    double avg_similarity_of_matches = 0.0;
};

struct SemanticMetrics {
    CategoryMetrics gcode_error;
    CategoryMetrics hmi_error;
    CategoryMetrics combined_error;
    CategoryMetrics corrections;
};

struct RunSummary {
    std::string config_name;
    StructuralMetrics structural;
    SemanticMetrics semantic;
};

// Aggregates per-instance records: accuracies are correct/n; semantic
// metrics are macro-averaged across instances (the similarity average
// pools only instances that had matches, so it stays above threshold
// whenever the match rate is positive). Record order does not matter.
RunSummary summarize_run(std::vector<InstanceRecord> records, const std::string& config_name);

// Three-decimal display rounding, half up: 15/16 -> "0.938".
std::string format3(double value);

// Plain-text tables (structural, semantic match rate, semantic cosine
// similarity), one column per summary.
std::string render_tables(const std::vector<RunSummary>& summaries);

// Machine-readable summary document.
std::string summaries_to_json(const std::vector<RunSummary>& summaries);

}  // namespace gverify
