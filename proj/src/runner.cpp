#include "gverify/runner.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace gverify {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read: " + path.string());
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

void write_prediction(const fs::path& path, const std::string& config, const std::string& id,
                      const std::string& status, const std::string& payload) {
    ordered_json j;
    j["instance"] = id;
    j["config"] = config;
    j["status"] = status;
    j[status == "ok" ? "raw" : "error"] = payload;
    write_text(path, j.dump(2) + "\n");
}

}  // namespace

RunConfig apply_preset(RunConfig base, const std::string& preset) {
    if (preset == "zs-full") {
        base.shots = Shots::Zero;
        base.view_mode = ViewMode::Full;
    } else if (preset == "zs-cluster") {
        base.shots = Shots::Zero;
        base.view_mode = ViewMode::FullPlusCluster;
    } else if (preset == "fs-full") {
        base.shots = Shots::Few;
        base.view_mode = ViewMode::Full;
    } else if (preset == "fs-cluster") {
        base.shots = Shots::Few;
        base.view_mode = ViewMode::FullPlusCluster;
    } else {
        throw ConfigError("unknown configuration preset: " + preset);
    }
    return base;
}

ExtractOutcome verify_instance(const RunConfig& config, const std::string& gcode,
                               const Image& image, const std::vector<FewShotExample>& examples,
                               std::string* digest_out) {
    std::vector<ChatMessage> messages =
        build_messages(config, gcode, image, examples, report_json_schema());
    if (digest_out) *digest_out = digest_messages(messages);
    return extract_report(call_model(messages, config));
}

BatchOutcome run_batch(const Manifest& manifest, const BatchOptions& options) {
    std::vector<FewShotExample> examples;
    bool needs_examples = std::any_of(options.configs.begin(), options.configs.end(),
                                      [](const std::string& c) { return c.rfind("fs-", 0) == 0; });
    if (needs_examples) examples = load_fewshot_pack(options.examples_dir);

    // The system message and example turns are identical for every
    // instance of a configuration; build them once up front.
    std::map<std::string, std::vector<ChatMessage>> prefixes;
    for (const std::string& config : options.configs) {
        RunConfig run = apply_preset(options.base, config);
        prefixes[config] = build_message_prefix(
            run, run.shots == Shots::Few ? examples : std::vector<FewShotExample>{},
            report_json_schema());
    }

    struct Job {
        std::string config;
        const InstanceEntry* entry;
    };
    std::vector<Job> jobs;
    for (const std::string& config : options.configs) {
        fs::create_directories(options.out_dir / config);
        for (const InstanceEntry& entry : manifest.instances) {
            jobs.push_back({config, &entry});
        }
    }

    std::atomic<size_t> next{0};
    std::atomic<int> completed{0};
    std::atomic<int> failed{0};

    auto worker = [&] {
        for (;;) {
            size_t index = next.fetch_add(1);
            if (index >= jobs.size()) return;
            const Job& job = jobs[index];
            fs::path out_path = options.out_dir / job.config / (job.entry->id + ".json");
            try {
                RunConfig config = apply_preset(options.base, job.config);
                Instance instance = load_instance(manifest, *job.entry);
                Image image = load_image(instance.image_path);
                std::vector<ChatMessage> messages = prefixes.at(job.config);
                messages.push_back(build_instance_message(config, instance.gcode, image));
                std::string raw = call_model(messages, config);
                write_prediction(out_path, job.config, job.entry->id, "ok", raw);
                ++completed;
            } catch (const std::exception& e) {
                try {
                    write_prediction(out_path, job.config, job.entry->id, "error", e.what());
                } catch (...) {
                }
                ++failed;
            }
        }
    };

    int pool = std::clamp(options.base.max_parallel, 1, 32);
    std::vector<std::thread> threads;
    for (int i = 0; i < pool; ++i) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();

    return BatchOutcome{completed.load(), failed.load()};
}

ExtractOutcome load_prediction(const fs::path& path) {
    if (!fs::exists(path)) {
        ExtractOutcome outcome;
        outcome.verdict.valid = false;
        outcome.verdict.violations.push_back("(document): prediction file missing: " +
                                             path.string());
        return outcome;
    }
    try {
        ordered_json j = ordered_json::parse(read_text(path));
        if (j.at("status").get<std::string>() != "ok") {
            ExtractOutcome outcome;
            outcome.verdict.valid = false;
            outcome.verdict.violations.push_back("(document): instance errored: " +
                                                 j.value("error", std::string("unknown")));
            return outcome;
        }
        return extract_report(j.at("raw").get<std::string>());
    } catch (const std::exception& e) {
        ExtractOutcome outcome;
        outcome.verdict.valid = false;
        outcome.verdict.violations.push_back("(document): unreadable prediction: " +
                                             std::string(e.what()));
        return outcome;
    }
}

std::vector<RunSummary> run_eval(const fs::path& pred_dir, const Manifest& manifest,
                                 EmbeddingProvider& provider, const EvalOptions& options) {
    std::vector<std::string> configs = options.configs;
    if (configs.empty()) {
        for (const std::string& preset : kAllPresets) {
            if (fs::is_directory(pred_dir / preset)) configs.push_back(preset);
        }
        if (configs.empty()) throw IoError("no prediction directories under " + pred_dir.string());
    }

    std::vector<RunSummary> summaries;
    for (const std::string& config : configs) {
        std::vector<InstanceRecord> records;
        for (const InstanceEntry& entry : manifest.instances) {
            VerificationReport truth =
                parse_report(read_text(manifest.root / entry.truth_path));
            ExtractOutcome outcome = load_prediction(pred_dir / config / (entry.id + ".json"));
            records.push_back(
                evaluate_instance(entry.id, outcome, truth, provider, options.threshold));
        }
        summaries.push_back(summarize_run(std::move(records), config));
    }

    if (!options.out_dir.empty()) {
        fs::create_directories(options.out_dir);
        write_text(options.out_dir / "summary.json", summaries_to_json(summaries));
        write_text(options.out_dir / "tables.txt", render_tables(summaries));
    }
    return summaries;
}

}  // namespace gverify
