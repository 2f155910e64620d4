#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gverify/backend.hpp"
#include "gverify/hmi.hpp"
#include "gverify/report.hpp"

namespace gverify {

// One paired (G-code, screenshot, ground truth) test case.
struct Instance {
    std::string id;  // e.g. "S3-i1"
    int scenario = 0;
    IndicatorStates indicators;
    std::string gcode;
    std::filesystem::path image_path;
    VerificationReport truth;
};

struct InstanceEntry {
    std::string id;
    int scenario = 0;
    IndicatorStates indicators;
    std::filesystem::path gcode_path;  // relative to the manifest
    std::filesystem::path image_path;
    std::filesystem::path truth_path;
};

struct Manifest {
    std::string version = "1";
    std::filesystem::path root;  // directory the manifest was loaded from
    std::vector<InstanceEntry> instances;
};

// Writes the eight-scenario, two-instance catalog: per instance a folder
// with program.nc, screen.png (rendered from the scenario's indicator
// states) and truth.json (from the rule oracle), plus manifest.json.
// Regeneration is deterministic and overwrites in place.
Manifest build_catalog(const std::filesystem::path& output_dir);

// Writes the seven-example few-shot pack: three syntax-error examples,
// two compliance violations, one HMI-only fault, one fully valid case.
// Every expected report is schema-valid and no example reuses a catalog
// instance's G-code.
std::vector<FewShotExample> build_fewshot_pack(const std::filesystem::path& output_dir);

void save_manifest(const Manifest& manifest, const std::filesystem::path& path);

// Loads and verifies a manifest: unique ids, every referenced file
// present. Throws ManifestError naming the offending id.
Manifest load_manifest(const std::filesystem::path& path);

// Materializes one entry: reads the G-code text and the truth report.
Instance load_instance(const Manifest& manifest, const InstanceEntry& entry);

// Reads a pack written by build_fewshot_pack.
std::vector<FewShotExample> load_fewshot_pack(const std::filesystem::path& dir);

}  // namespace gverify
