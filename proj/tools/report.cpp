#include "report.hpp"

#include <cmath>

#include "cgo/field_io.hpp"
#include "json.hpp"

namespace cgo::cli {

void Report::expect(const std::string& name, double value, const std::string& relation, double threshold,
                    const std::string& note) {
    bool ok = false;
    if (std::isfinite(value) || std::isinf(value)) {
        if (relation == "<=") ok = value <= threshold;
        else if (relation == "<") ok = value < threshold;
        else if (relation == ">=") ok = value >= threshold;
        else if (relation == ">") ok = value > threshold;
        else throw Error(ErrorCode::config_error, "unknown relation " + relation);
    }
    checks.push_back({name, value, relation, threshold, ok, note});
}

void Report::require(const std::string& name, bool ok, const std::string& note) {
    checks.push_back({name, ok ? 1.0 : 0.0, "bool", 1.0, ok, note});
}

void Report::info(const std::string& name, double value, const std::string& note) {
    checks.push_back({name, value, "info", 0.0, true, note});
}

void Report::add_file(std::string name, std::string contents) { files.push_back({std::move(name), std::move(contents)}); }

void Report::merge(Report other) {
    for (auto& c : other.checks) {
        c.name = other.command + "/" + c.name;
        checks.push_back(std::move(c));
    }
    for (auto& f : other.files) files.push_back(std::move(f));
    if (!other.error.empty()) error += (error.empty() ? "" : "; ") + other.command + ": " + other.error;
}

bool Report::passed() const {
    if (!error.empty()) return false;
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string Report::verdict_json(const Config& config) const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["schema_version"] = schema_version;
    j["pass"] = passed();
    if (!error.empty()) j["error"] = error;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        if (std::isfinite(c.value)) e["value"] = c.value;
        else e["value"] = std::isnan(c.value) ? "nan" : (c.value > 0 ? "inf" : "-inf");
        e["relation"] = c.relation;
        if (c.relation != "info") e["threshold"] = c.threshold;
        e["pass"] = c.pass;
        if (!c.note.empty()) e["note"] = c.note;
        list.push_back(std::move(e));
    }
    j["checks"] = std::move(list);
    nlohmann::ordered_json cfg;
    for (const auto& [k, v] : config.entries()) cfg[k] = v;
    j["config"] = std::move(cfg);
    return j.dump(2) + "\n";
}

void write_report(const std::filesystem::path& dir, const Report& report, const Config& config) {
    std::filesystem::create_directories(dir);
    for (const auto& f : report.files) {
        const auto path = dir / f.name;
        if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
        write_file_atomic(path, f.contents);
    }
    write_file_atomic(dir / (report.command + "_verdict.json"), report.verdict_json(config));
}

}  // namespace cgo::cli
