#include "gverify/eval.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <utility>

namespace gverify {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t hash_token(const std::string& token) {
    std::uint64_t h = kFnvOffset;
    std::uint64_t seed = kLexicalHashSeed;
    for (int i = 0; i < 8; ++i) {  // absorb the seed low byte first
        h ^= (seed >> (8 * i)) & 0xFF;
        h *= kFnvPrime;
    }
    for (unsigned char c : token) {
        h ^= c;
        h *= kFnvPrime;
    }
    return h;
}

std::vector<std::string> tokenize_text(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

double norm(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x * x;
    return std::sqrt(sum);
}

// Similarity with zero-vector items defined as 0 so empty strings can
// never match anything.
double safe_similarity(const std::vector<double>& u, const std::vector<double>& v) {
    if (norm(u) == 0.0 || norm(v) == 0.0) return 0.0;
    return cosine(u, v);
}

CategoryScore score_category(const std::vector<std::string>& pred,
                             const std::vector<std::string>& truth, EmbeddingProvider& provider,
                             double threshold) {
    MatchResult result = semantic_match(pred, truth, provider, threshold);
    return CategoryScore{result.match_rate, result.avg_similarity, result.match_rate > 0.0};
}

struct CategoryAccumulator {
    double rate_sum = 0.0;
    double sim_sum = 0.0;
    int scored = 0;

    void add(const CategoryScore& s) {
        rate_sum += s.match_rate;
        if (s.scored) {
            sim_sum += s.avg_similarity;
            ++scored;
        }
    }
    CategoryMetrics metrics(int n) const {
        CategoryMetrics m;
        m.match_rate = n > 0 ? rate_sum / n : 0.0;
        m.avg_similarity_of_matches = scored > 0 ? sim_sum / scored : 0.0;
        return m;
    }
};

struct TableRow {
    std::string label;
    std::vector<std::string> cells;
};

void render_block(std::ostringstream& out, const std::string& title,
                  const std::vector<std::string>& columns, const std::vector<TableRow>& rows) {
    size_t label_width = 0;
    for (const TableRow& row : rows) label_width = std::max(label_width, row.label.size());

    std::vector<size_t> widths;
    for (size_t i = 0; i < columns.size(); ++i) {
        size_t w = columns[i].size();
        for (const TableRow& row : rows) w = std::max(w, row.cells[i].size());
        widths.push_back(w);
    }

    // Last column unpadded so lines carry no trailing spaces.
    auto pad = [&](const std::string& text, size_t width, bool last) {
        return last ? text : text + std::string(width - text.size(), ' ');
    };

    out << title << "\n" << std::string(label_width, ' ');
    for (size_t i = 0; i < columns.size(); ++i) {
        out << "  " << pad(columns[i], widths[i], i + 1 == columns.size());
    }
    out << "\n";
    for (const TableRow& row : rows) {
        out << pad(row.label, label_width, false);
        for (size_t i = 0; i < row.cells.size(); ++i) {
            out << "  " << pad(row.cells[i], widths[i], i + 1 == row.cells.size());
        }
        out << "\n";
    }
    out << "\n";
}

}  // namespace

std::vector<double> LexicalEmbedding::embed(const std::string& text) {
    std::vector<double> vec(static_cast<size_t>(dimension_), 0.0);
    for (const std::string& token : tokenize_text(text)) {
        vec[hash_token(token) % static_cast<std::uint64_t>(dimension_)] += 1.0;
    }
    double n = norm(vec);
    if (n > 0.0) {
        for (double& x : vec) x /= n;
    }
    return vec;  // zero vector for empty/token-free text
}

RemoteEmbedding::RemoteEmbedding(std::string endpoint, std::string model_name,
                                 std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), model_name_(std::move(model_name)), timeout_(timeout) {}

std::vector<double> RemoteEmbedding::embed(const std::string& text) {
    size_t scheme_end = endpoint_.find("://");
    if (scheme_end == std::string::npos) {
        throw ProviderError("embedding endpoint must include a scheme: " + endpoint_);
    }
    size_t path_start = endpoint_.find('/', scheme_end + 3);
    std::string origin = path_start == std::string::npos ? endpoint_
                                                         : endpoint_.substr(0, path_start);
    std::string prefix = path_start == std::string::npos ? "" : endpoint_.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

    httplib::Client client(origin);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);

    httplib::Headers headers;
    if (const char* key = std::getenv(kApiKeyEnv)) {
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    nlohmann::json body{{"model", model_name_}, {"input", text}};
    httplib::Result result =
        client.Post(prefix + "/embeddings", headers, body.dump(), "application/json");
    if (!result) {
        throw ProviderError("embedding request failed: " + httplib::to_string(result.error()));
    }
    if (result->status < 200 || result->status >= 300) {
        throw ProviderError("embedding request failed with status " +
                            std::to_string(result->status) + ": " + result->body);
    }
    try {
        auto response = nlohmann::json::parse(result->body);
        auto vec = response.at("data").at(0).at("embedding").get<std::vector<double>>();
        if (dimension_ == 0) dimension_ = static_cast<int>(vec.size());
        double n = norm(vec);
        if (n > 0.0) {
            for (double& x : vec) x /= n;
        }
        return vec;
    } catch (const nlohmann::json::exception& e) {
        throw ProviderError("malformed embedding response: " + std::string(e.what()));
    }
}

double cosine(const std::vector<double>& u, const std::vector<double>& v) {
    if (u.size() != v.size()) {
        throw DimensionError("cosine: dimensions differ (" + std::to_string(u.size()) + " vs " +
                             std::to_string(v.size()) + ")");
    }
    double nu = norm(u);
    double nv = norm(v);
    if (nu == 0.0 || nv == 0.0) throw ZeroVectorError("cosine of a zero vector is undefined");
    double dot = 0.0;
    for (size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
    return dot / (nu * nv);
}

MatchResult semantic_match(const std::vector<std::string>& pred_list,
                           const std::vector<std::string>& truth_list,
                           EmbeddingProvider& provider, double threshold) {
    MatchResult result;
    if (pred_list.empty() && truth_list.empty()) {
        result.match_rate = 1.0;  // vacuous agreement
        result.avg_similarity = 1.0;
        return result;
    }
    if (pred_list.empty() || truth_list.empty()) {
        return result;  // one-sided emptiness: (0, 0)
    }

    std::vector<std::vector<double>> pred_vecs;
    std::vector<std::vector<double>> truth_vecs;
    pred_vecs.reserve(pred_list.size());
    truth_vecs.reserve(truth_list.size());
    for (const auto& s : pred_list) pred_vecs.push_back(provider.embed(s));
    for (const auto& s : truth_list) truth_vecs.push_back(provider.embed(s));

    std::vector<std::vector<double>> sims(pred_list.size(),
                                          std::vector<double>(truth_list.size(), 0.0));
    for (size_t i = 0; i < pred_list.size(); ++i)
        for (size_t j = 0; j < truth_list.size(); ++j)
            sims[i][j] = safe_similarity(pred_vecs[i], truth_vecs[j]);

    std::vector<bool> pred_used(pred_list.size(), false);
    std::vector<bool> truth_used(truth_list.size(), false);
    size_t rounds = std::min(pred_list.size(), truth_list.size());
    double matched_sum = 0.0;

    for (size_t r = 0; r < rounds; ++r) {
        double best = -2.0;
        size_t bi = 0;
        size_t bj = 0;
        for (size_t i = 0; i < pred_list.size(); ++i) {
            if (pred_used[i]) continue;
            for (size_t j = 0; j < truth_list.size(); ++j) {
                if (truth_used[j]) continue;
                if (sims[i][j] > best) {
                    best = sims[i][j];
                    bi = i;
                    bj = j;
                }
            }
        }
        pred_used[bi] = true;
        truth_used[bj] = true;
        bool matched = best > threshold;
        result.pairs.push_back({bi, bj, best, matched});
        if (matched) {
            ++result.match_count;
            matched_sum += best;
        }
    }

    result.match_rate = static_cast<double>(result.match_count) /
                        static_cast<double>(std::max(pred_list.size(), truth_list.size()));
    result.avg_similarity =
        result.match_count > 0 ? matched_sum / static_cast<double>(result.match_count) : 0.0;
    return result;
}

const char* to_string(SemanticCategory category) {
    switch (category) {
        case SemanticCategory::GcodeError: return "G-Code Error";
        case SemanticCategory::HmiError: return "HMI Error";
        case SemanticCategory::CombinedError: return "HMI and G-Code Error";
        case SemanticCategory::Corrections: return "Corrections";
    }
    return "?";
}

FieldCorrectness structural_compare(const std::string& instance_id,
                                    const std::optional<VerificationReport>& pred,
                                    const VerificationReport& truth) {
    FieldCorrectness fields;
    fields.instance_id = instance_id;
    if (!pred) return fields;  // schema failure: incorrect everywhere
    fields.schema_valid = true;
    fields.collet = pred->slots.collet_clamped == truth.slots.collet_clamped;
    fields.refx = pred->slots.refx == truth.slots.refx;
    fields.refz = pred->slots.refz == truth.slots.refz;
    fields.validity = pred->gcode_validity.valid == truth.gcode_validity.valid;
    fields.compliance = pred->compliance.consistent == truth.compliance.consistent;
    return fields;
}

InstanceRecord evaluate_instance(const std::string& instance_id, const ExtractOutcome& pred,
                                 const VerificationReport& truth, EmbeddingProvider& provider,
                                 double threshold) {
    InstanceRecord record;
    record.instance_id = instance_id;
    record.fields = structural_compare(instance_id, pred.report, truth);
    if (pred.ok()) {
        record.gcode_error = score_category(pred.report->gcode_validity.errors,
                                            truth.gcode_validity.errors, provider, threshold);
        record.hmi_error = score_category(pred.report->slots.hmi_issues, truth.slots.hmi_issues,
                                          provider, threshold);
        record.combined_error = score_category(pred.report->compliance.errors,
                                               truth.compliance.errors, provider, threshold);
        record.corrections =
            score_category(pred.report->corrections, truth.corrections, provider, threshold);
    }
    return record;
}

RunSummary summarize_run(std::vector<InstanceRecord> records, const std::string& config_name) {
    if (records.empty()) throw Error("summarize_run: no records");
    std::sort(records.begin(), records.end(),
              [](const InstanceRecord& a, const InstanceRecord& b) {
                  return a.instance_id < b.instance_id;
              });
    for (size_t i = 1; i < records.size(); ++i) {
        if (records[i].instance_id == records[i - 1].instance_id) {
            throw Error("summarize_run: duplicate instance id " + records[i].instance_id);
        }
    }

    RunSummary summary;
    summary.config_name = config_name;
    int n = static_cast<int>(records.size());
    summary.structural.n_instances = n;

    int schema = 0;
    int collet = 0;
    int refx = 0;
    int refz = 0;
    int validity = 0;
    int compliance = 0;
    CategoryAccumulator gcode_acc;
    CategoryAccumulator hmi_acc;
    CategoryAccumulator combined_acc;
    CategoryAccumulator corrections_acc;

    for (const InstanceRecord& record : records) {
        schema += record.fields.schema_valid;
        collet += record.fields.collet;
        refx += record.fields.refx;
        refz += record.fields.refz;
        validity += record.fields.validity;
        compliance += record.fields.compliance;
        gcode_acc.add(record.gcode_error);
        hmi_acc.add(record.hmi_error);
        combined_acc.add(record.combined_error);
        corrections_acc.add(record.corrections);
    }

    summary.structural.schema_validity = double(schema) / n;
    summary.structural.acc_collet = double(collet) / n;
    summary.structural.acc_refx = double(refx) / n;
    summary.structural.acc_refz = double(refz) / n;
    summary.structural.acc_gcode_validity = double(validity) / n;
    summary.structural.acc_compliance = double(compliance) / n;
    summary.semantic.gcode_error = gcode_acc.metrics(n);
    summary.semantic.hmi_error = hmi_acc.metrics(n);
    summary.semantic.combined_error = combined_acc.metrics(n);
    summary.semantic.corrections = corrections_acc.metrics(n);
    return summary;
}

std::string format3(double value) {
    long long scaled = std::llround(value * 1000.0);  // half rounds away from zero
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::ostringstream out;
    out << (negative ? "-" : "") << scaled / 1000 << "." << std::setfill('0') << std::setw(3)
        << scaled % 1000;
    return out.str();
}

std::string render_tables(const std::vector<RunSummary>& summaries) {
    std::vector<std::string> columns;
    for (const RunSummary& s : summaries) columns.push_back(s.config_name);

    auto structural_row = [&](const std::string& label, auto getter) {
        TableRow row{label, {}};
        for (const RunSummary& s : summaries) row.cells.push_back(format3(getter(s)));
        return row;
    };

    std::ostringstream out;
    render_block(
        out, "Structural metrics", columns,
        {structural_row("Schema Validity",
                        [](const RunSummary& s) { return s.structural.schema_validity; }),
         structural_row("Collet clamped",
                        [](const RunSummary& s) { return s.structural.acc_collet; }),
         structural_row("Ref X", [](const RunSummary& s) { return s.structural.acc_refx; }),
         structural_row("Ref Z", [](const RunSummary& s) { return s.structural.acc_refz; }),
         structural_row("G-code Validity Accuracy",
                        [](const RunSummary& s) { return s.structural.acc_gcode_validity; }),
         structural_row("Compliance Accuracy",
                        [](const RunSummary& s) { return s.structural.acc_compliance; })});

    auto semantic_rows = [&](auto getter) {
        std::vector<TableRow> rows;
        const std::pair<SemanticCategory, CategoryMetrics SemanticMetrics::*> cats[] = {
            {SemanticCategory::GcodeError, &SemanticMetrics::gcode_error},
            {SemanticCategory::HmiError, &SemanticMetrics::hmi_error},
            {SemanticCategory::CombinedError, &SemanticMetrics::combined_error},
            {SemanticCategory::Corrections, &SemanticMetrics::corrections},
        };
        for (const auto& [category, member] : cats) {
            TableRow row{to_string(category), {}};
            for (const RunSummary& s : summaries) {
                row.cells.push_back(format3(getter(s.semantic.*member)));
            }
            rows.push_back(std::move(row));
        }
        return rows;
    };

    render_block(out, "Semantic match rate", columns,
                 semantic_rows([](const CategoryMetrics& m) { return m.match_rate; }));
    render_block(
        out, "Semantic cosine similarity", columns,
        semantic_rows([](const CategoryMetrics& m) { return m.avg_similarity_of_matches; }));
    return out.str();
}

std::string summaries_to_json(const std::vector<RunSummary>& summaries) {
    ordered_json root;
    root["configs"] = ordered_json::object();
    for (const RunSummary& s : summaries) {
        ordered_json structural{
            {"n_instances", s.structural.n_instances},
            {"schema_validity", format3(s.structural.schema_validity)},
            {"collet_clamped", format3(s.structural.acc_collet)},
            {"refx", format3(s.structural.acc_refx)},
            {"refz", format3(s.structural.acc_refz)},
            {"gcode_validity", format3(s.structural.acc_gcode_validity)},
            {"compliance", format3(s.structural.acc_compliance)},
        };
        auto category = [&](const CategoryMetrics& m) {
            return ordered_json{{"match_rate", format3(m.match_rate)},
                                {"avg_similarity_of_matches",
                                 format3(m.avg_similarity_of_matches)}};
        };
        ordered_json semantic{
            {"gcode_error", category(s.semantic.gcode_error)},
            {"hmi_error", category(s.semantic.hmi_error)},
            {"combined_error", category(s.semantic.combined_error)},
            {"corrections", category(s.semantic.corrections)},
        };
        root["configs"][s.config_name] =
            ordered_json{{"structural", structural}, {"semantic", semantic}};
    }
    return root.dump(2) + "\n";
}

}  // namespace gverify
