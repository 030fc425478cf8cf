#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace cgo::cli {

namespace {

constexpr std::string_view embedded =
#include "default_config.inc"
    ;

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::map<std::string, std::string> parse_lines(std::string_view text, const std::string& origin) {
    std::map<std::string, std::string> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        ++line_no;
        std::string line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        if (const auto hash = line.find('#'); hash != std::string::npos) line = trim(line.substr(0, hash));
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::config_error, origin + ":" + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw Error(ErrorCode::config_error, origin + ":" + std::to_string(line_no) + ": empty key");
        if (out.count(key))
            throw Error(ErrorCode::config_error, origin + ":" + std::to_string(line_no) + ": duplicate key " + key);
        out[key] = trim(line.substr(eq + 1));
        if (end == text.size()) break;
    }
    return out;
}

double to_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw Error(ErrorCode::config_error, "key " + key + ": '" + text + "' is not a number");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

std::string_view default_config_text() { return embedded; }

Config Config::defaults() {
    Config c;
    c.values_ = parse_lines(embedded, "default.cfg");
    return c;
}

Config Config::parse(std::string_view text, const std::string& origin) {
    Config c = defaults();
    const auto user = parse_lines(text, origin);
    for (const auto& [k, v] : user) c.set(k, v);
    if (c.get_int("schema_version") != schema_version)
        throw Error(ErrorCode::config_error, origin + ": unsupported schema_version " + c.get_string("schema_version"));
    return c;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::config_error, "cannot read config " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

void Config::set(const std::string& key, const std::string& value) {
    auto it = values_.find(key);
    if (it == values_.end()) throw Error(ErrorCode::config_error, "unknown config key '" + key + "'");
    it->second = value;
}

std::string Config::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw Error(ErrorCode::config_error, "missing config key '" + key + "'");
    return it->second;
}

double Config::get_double(const std::string& key) const { return to_double(key, get_string(key)); }

long Config::get_int(const std::string& key) const {
    const double v = get_double(key);
    if (v != std::floor(v)) throw Error(ErrorCode::config_error, "key " + key + " must be an integer");
    return static_cast<long>(v);
}

std::vector<double> Config::get_doubles(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split(get_string(key), ',')) out.push_back(to_double(key, item));
    return out;
}

std::vector<std::string> Config::get_strings(const std::string& key) const { return split(get_string(key), ','); }

std::vector<cplx> Config::get_complexes(const std::string& key) const {
    std::vector<cplx> out;
    for (const auto& item : split(get_string(key), ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            out.emplace_back(to_double(key, item), 0.0);
        } else {
            out.emplace_back(to_double(key, item.substr(0, colon)), to_double(key, item.substr(colon + 1)));
        }
    }
    return out;
}

std::string Config::serialize() const {
    std::ostringstream os;
    os << "schema_version = " << values_.at("schema_version") << '\n';
    for (const auto& [k, v] : values_)
        if (k != "schema_version") os << k << " = " << v << '\n';
    return os.str();
}

}  // namespace cgo::cli
