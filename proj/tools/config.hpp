#pragma once

// Versioned key-value experiment configuration. The schema is the default
// config file (configs/default.cfg, embedded at build time): it lists every
// key with its default, and user files may only override listed keys.

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cgo/grid.hpp"

namespace cgo::cli {

inline constexpr int schema_version = 1;

class Config {
  public:
    // The embedded schema with its defaults.
    static Config defaults();
    // Defaults overridden by the keys in text. origin names the source in
    // error messages.
    static Config parse(std::string_view text, const std::string& origin = "<config>");
    static Config load(const std::filesystem::path& path);

    // Throws config_error for keys outside the schema.
    void set(const std::string& key, const std::string& value);

    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    long get_int(const std::string& key) const;
    std::vector<double> get_doubles(const std::string& key) const;
    std::vector<std::string> get_strings(const std::string& key) const;
    // Items written re:im (or a bare real).
    std::vector<cplx> get_complexes(const std::string& key) const;

    // Canonical text: every key in sorted order, one per line.
    std::string serialize() const;
    const std::map<std::string, std::string>& entries() const { return values_; }

  private:
    std::map<std::string, std::string> values_;
};

std::string_view default_config_text();

}  // namespace cgo::cli
