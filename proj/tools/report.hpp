#pragma once

// Checks, output files and the JSON verdict written by every subcommand.

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"

namespace cgo::cli {

struct Check {
    std::string name;
    double value = 0.0;
    std::string relation;  // "<=", "<", ">=", ">", "bool", "info"
    double threshold = 0.0;
    bool pass = true;
    std::string note;
};

struct OutputFile {
    std::string name;  // relative to the output directory
    std::string contents;
};

struct Report {
    std::string command;
    std::vector<Check> checks;
    std::vector<OutputFile> files;
    // Set when the subcommand stopped on an error instead of finishing.
    std::string error;

    // value relation threshold; NaN values fail.
    void expect(const std::string& name, double value, const std::string& relation, double threshold,
                const std::string& note = {});
    void require(const std::string& name, bool ok, const std::string& note = {});
    void info(const std::string& name, double value, const std::string& note = {});
    void add_file(std::string name, std::string contents);
    void merge(Report other);

    bool passed() const;
    std::string verdict_json(const Config& config) const;
};

// Writes every file and <command>_verdict.json atomically under dir.
void write_report(const std::filesystem::path& dir, const Report& report, const Config& config);

}  // namespace cgo::cli
