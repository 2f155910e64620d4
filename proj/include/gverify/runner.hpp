#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gverify/backend.hpp"
#include "gverify/dataset.hpp"
#include "gverify/eval.hpp"

namespace gverify {

// Configuration presets, one per results-table column.
inline const std::vector<std::string> kAllPresets = {"zs-full", "zs-cluster", "fs-full",
                                                     "fs-cluster"};

// Sets shots/view_mode from a preset name. Throws ConfigError on an
// unknown name.
RunConfig apply_preset(RunConfig base, const std::string& preset);

// build_messages + call_model + extract_report for one instance.
ExtractOutcome verify_instance(const RunConfig& config, const std::string& gcode,
                               const Image& image, const std::vector<FewShotExample>& examples,
                               std::string* digest_out = nullptr);

struct BatchOptions {
    std::vector<std::string> configs;  // preset names
    RunConfig base;
    std::filesystem::path out_dir;
    std::filesystem::path examples_dir;  // few-shot pack, required for fs-* presets
};

struct BatchOutcome {
    int completed = 0;
    int failed = 0;
};

// Runs every (config, instance) pair through the configured backend with
// a bounded worker pool and writes one prediction file per pair under
// <out_dir>/<config>/<id>.json. Per-instance failures are recorded in the
// prediction file and do not stop the run.
BatchOutcome run_batch(const Manifest& manifest, const BatchOptions& options);

struct EvalOptions {
    double threshold = 0.80;
    std::vector<std::string> configs;   // empty: every preset directory present
    std::filesystem::path out_dir;      // empty: do not write summary files
};

// Scores predictions against the manifest truths. A missing or errored
// prediction counts as schema-invalid. When out_dir is set, writes
// summary.json and tables.txt there.
std::vector<RunSummary> run_eval(const std::filesystem::path& pred_dir, const Manifest& manifest,
                                 EmbeddingProvider& provider, const EvalOptions& options);

// Reads one prediction file's raw text; missing/errored files yield a
// schema-invalid outcome describing why.
ExtractOutcome load_prediction(const std::filesystem::path& path);

}  // namespace gverify
