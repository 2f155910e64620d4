#include "gverify/dataset.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include "gverify/verifier.hpp"

namespace gverify {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

struct ScenarioSpec {
    int scenario;
    int instance;  // 1 = faulty, 2 = clean
    IndicatorStates indicators;
    const char* gcode;
};

// Indicator columns follow the scenario table; i1 programs embed exactly
// the scenario's error class, i2 programs are valid under the same states.
const ScenarioSpec kCatalog[] = {
    {1, 1, {true, false, false},
     "N10 G21 G18\n"
     "N20 G00 G01 X5.0 Z-1.0\n"
     "N30 M30\n"},
    {1, 2, {true, false, false},
     "N10 G21 G18\n"
     "N20 G00 X5.0 Z-1.0\n"
     "N30 G01 Z-10.0 F200\n"
     "N40 M30\n"},
    {2, 1, {false, false, false},
     "N10 G21\n"
     "N20 M3 S12..5\n"
     "N30 G01 X4.0 F150\n"
     "N40 M5\n"},
    {2, 2, {true, false, true},
     "N10 G21\n"
     "N20 M3 S1200\n"
     "N30 G01 Z-2.5 F150\n"
     "N40 M5\n"
     "N50 M30\n"},
    {3, 1, {true, true, false},
     "N10 G00 G01 X3.0\n"
     "N20 G01 Z-4.0 F\n"
     "N30 M30\n"},
    {3, 2, {true, true, false},
     "N10 G00 X3.0\n"
     "N20 G01 X1.5 F120\n"
     "N30 M30\n"},
    {4, 1, {true, false, true},
     "N10 G21\n"
     "N20 G01 Xabc F100\n"
     "N30 M30\n"},
    {4, 2, {true, false, true},
     "N10 G21\n"
     "N20 G01 Z-3.0 F100\n"
     "N30 M30\n"},
    {5, 1, {false, true, false},
     "N10 G00 X2.0\n"
     "N20 G01 X1.0 F\n"
     "N30 M30\n"},
    {5, 2, {false, true, false},
     "N10 G00 X2.0\n"
     "N20 G01 X0.5 F180\n"
     "N30 M30\n"},
    {6, 1, {false, true, true},
     "N10 G999 X1.0\n"
     "N20 G01 Z-1.0 F100\n"
     "N30 M30\n"},
    {6, 2, {false, true, true},
     "N10 G00 X1.0\n"
     "N20 G01 Z-1.5 F100\n"
     "N30 M30\n"},
    {7, 1, {true, true, true},
     "N10 G21\n"
     "N20 G01\n"
     "N30 M30\n"},
    {7, 2, {true, true, true},
     "N10 G21\n"
     "N20 M3 S1000\n"
     "N30 G00 X2.0 Z1.0\n"
     "N40 G01 Z-5.0 F200\n"
     "N50 M5\n"
     "N60 M30\n"},
    {8, 1, {false, false, false},
     "N10 G00 X2.0\n"
     "N20 G01 Z-3.0 F9999\n"
     "N30 M30\n"},
    {8, 2, {false, false, false},
     "N10 G00 X2.0\n"
     "N20 G01 Z-3.0 F250\n"
     "N30 M30\n"},
};

struct FewShotSpec {
    const char* label;
    IndicatorStates indicators;
    const char* gcode;
};

const FewShotSpec kFewShot[] = {
    {"modal-conflict", {true, true, true},
     "N10 G00 G01 X8.0\n"
     "N20 M30\n"},
    {"missing-feed-value", {true, true, true},
     "N10 G01 X6.0 F\n"
     "N20 M30\n"},
    {"unknown-code", {true, true, true},
     "N10 G77 X1.5\n"
     "N20 M30\n"},
    {"spindle-open-collet", {false, true, true},
     "N10 M3 S800\n"
     "N20 G01 X2.0 F100\n"
     "N30 M5\n"
     "N40 M30\n"},
    {"x-motion-unreferenced", {true, false, true},
     "N10 G00 X7.5\n"
     "N20 G01 X3.0 F120\n"
     "N30 M30\n"},
    {"refz-dark", {true, true, false},
     "N10 G00 X4.0\n"
     "N20 G01 X2.5 F150\n"
     "N30 M30\n"},
    {"fully-valid", {true, true, true},
     "N10 G21\n"
     "N20 M3 S900\n"
     "N30 G00 X1.5 Z0.5\n"
     "N40 G01 Z-2.0 F180\n"
     "N50 M5\n"
     "N60 M30\n"},
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read: " + path.string());
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

ordered_json indicators_to_json(const IndicatorStates& s) {
    return ordered_json{{"collet_clamped", s.collet_clamped}, {"refx", s.refx}, {"refz", s.refz}};
}

IndicatorStates indicators_from_json(const ordered_json& j) {
    return IndicatorStates{j.at("collet_clamped").get<bool>(), j.at("refx").get<bool>(),
                           j.at("refz").get<bool>()};
}

}  // namespace

Manifest build_catalog(const fs::path& output_dir) {
    fs::create_directories(output_dir);

    Manifest manifest;
    manifest.root = output_dir;
    for (const ScenarioSpec& spec : kCatalog) {
        std::string id = "S" + std::to_string(spec.scenario) + "-i" + std::to_string(spec.instance);
        fs::path dir = output_dir / id;
        fs::create_directories(dir);

        write_text(dir / "program.nc", spec.gcode);

        std::uint32_t seed = static_cast<std::uint32_t>(spec.scenario * 10 + spec.instance);
        save_image(render_synthetic(spec.indicators, seed), dir / "screen.png");

        VerificationReport truth = verify_oracle(spec.gcode, spec.indicators);
        write_text(dir / "truth.json", serialize_report(truth) + "\n");

        InstanceEntry entry;
        entry.id = id;
        entry.scenario = spec.scenario;
        entry.indicators = spec.indicators;
        entry.gcode_path = fs::path(id) / "program.nc";
        entry.image_path = fs::path(id) / "screen.png";
        entry.truth_path = fs::path(id) / "truth.json";
        manifest.instances.push_back(std::move(entry));
    }
    save_manifest(manifest, output_dir / "manifest.json");
    return manifest;
}

std::vector<FewShotExample> build_fewshot_pack(const fs::path& output_dir) {
    fs::create_directories(output_dir);

    std::vector<FewShotExample> pack;
    ordered_json index;
    index["version"] = "1";
    index["examples"] = ordered_json::array();

    std::uint32_t seed = 100;
    for (const FewShotSpec& spec : kFewShot) {
        fs::path dir = output_dir / spec.label;
        fs::create_directories(dir);

        FewShotExample example;
        example.label = spec.label;
        example.gcode = spec.gcode;
        example.image = render_synthetic(spec.indicators, seed++);
        example.expected_report = verify_oracle(spec.gcode, spec.indicators);

        write_text(dir / "program.nc", example.gcode);
        save_image(example.image, dir / "screen.png");
        write_text(dir / "expected.json", serialize_report(example.expected_report) + "\n");

        index["examples"].push_back(ordered_json{
            {"label", spec.label},
            {"indicators", indicators_to_json(spec.indicators)},
            {"gcode", spec.label + std::string("/program.nc")},
            {"image", spec.label + std::string("/screen.png")},
            {"report", spec.label + std::string("/expected.json")},
        });
        pack.push_back(std::move(example));
    }
    write_text(output_dir / "pack.json", index.dump(2) + "\n");
    return pack;
}

void save_manifest(const Manifest& manifest, const fs::path& path) {
    ordered_json j;
    j["version"] = manifest.version;
    j["instances"] = ordered_json::array();
    for (const InstanceEntry& entry : manifest.instances) {
        j["instances"].push_back(ordered_json{
            {"id", entry.id},
            {"scenario", entry.scenario},
            {"indicators", indicators_to_json(entry.indicators)},
            {"gcode", entry.gcode_path.generic_string()},
            {"image", entry.image_path.generic_string()},
            {"truth", entry.truth_path.generic_string()},
        });
    }
    write_text(path, j.dump(2) + "\n");
}

Manifest load_manifest(const fs::path& path) {
    if (!fs::exists(path)) throw IoError("manifest not found: " + path.string());

    ordered_json j;
    try {
        j = ordered_json::parse(read_text(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ManifestError("manifest is not valid JSON: " + std::string(e.what()));
    }

    Manifest manifest;
    manifest.root = path.parent_path();
    try {
        manifest.version = j.at("version").get<std::string>();
        std::set<std::string> seen;
        for (const auto& item : j.at("instances")) {
            InstanceEntry entry;
            entry.id = item.at("id").get<std::string>();
            entry.scenario = item.at("scenario").get<int>();
            entry.indicators = indicators_from_json(item.at("indicators"));
            entry.gcode_path = item.at("gcode").get<std::string>();
            entry.image_path = item.at("image").get<std::string>();
            entry.truth_path = item.at("truth").get<std::string>();

            if (!seen.insert(entry.id).second) {
                throw ManifestError("duplicate instance id: " + entry.id);
            }
            for (const fs::path& rel :
                 {entry.gcode_path, entry.image_path, entry.truth_path}) {
                if (!fs::exists(manifest.root / rel)) {
                    throw ManifestError("instance " + entry.id +
                                        " references a missing file: " + rel.string());
                }
            }
            manifest.instances.push_back(std::move(entry));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ManifestError("manifest structure invalid: " + std::string(e.what()));
    }
    return manifest;
}

Instance load_instance(const Manifest& manifest, const InstanceEntry& entry) {
    Instance instance;
    instance.id = entry.id;
    instance.scenario = entry.scenario;
    instance.indicators = entry.indicators;
    instance.gcode = read_text(manifest.root / entry.gcode_path);
    instance.image_path = manifest.root / entry.image_path;
    instance.truth = parse_report(read_text(manifest.root / entry.truth_path));
    return instance;
}

std::vector<FewShotExample> load_fewshot_pack(const fs::path& dir) {
    fs::path index_path = dir / "pack.json";
    if (!fs::exists(index_path)) throw IoError("few-shot pack not found: " + index_path.string());

    ordered_json j;
    try {
        j = ordered_json::parse(read_text(index_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ManifestError("pack index is not valid JSON: " + std::string(e.what()));
    }

    std::vector<FewShotExample> pack;
    for (const auto& item : j.at("examples")) {
        FewShotExample example;
        example.label = item.at("label").get<std::string>();
        example.gcode = read_text(dir / item.at("gcode").get<std::string>());
        example.image = load_image(dir / item.at("image").get<std::string>());
        example.expected_report = parse_report(read_text(dir / item.at("report").get<std::string>()));
        pack.push_back(std::move(example));
    }
    return pack;
}

}  // namespace gverify
