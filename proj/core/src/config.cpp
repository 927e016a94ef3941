#include "conewave/config.hpp"
#include "conewave/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace conewave {

namespace {
std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}
} // namespace

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw invalid_parameter("config: line " + std::to_string(lineno) +
                                    " is not 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) {
            throw invalid_parameter("config: empty key or value at line " +
                                    std::to_string(lineno));
        }
        if (cfg.kv_.count(key)) {
            throw invalid_parameter("config: duplicate key '" + key + "'");
        }
        cfg.kv_[key] = val;
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw invalid_parameter("config: cannot read '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_string(ss.str());
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::get_string(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw invalid_parameter("config: missing key '" + key + "'");
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
    const std::string v = get_string(key);
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw invalid_parameter("config: key '" + key + "' is not a number");
    return d;
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
    const double d = get_double(key);
    const int i = static_cast<int>(d);
    if (d != i) throw invalid_parameter("config: key '" + key + "' is not an integer");
    return i;
}

int Config::get_int(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

void Config::enforce_known_keys(const std::vector<std::string>& allowed) const {
    for (const auto& [key, value] : kv_) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw invalid_parameter("config: unknown key '" + key + "'");
        }
    }
}

} // namespace conewave
