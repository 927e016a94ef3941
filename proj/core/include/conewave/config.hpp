#ifndef CONEWAVE_CONFIG_HPP
#define CONEWAVE_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

namespace conewave {

// Plain dotted-key config file: one "section.key = value" per line, '#'
// comments.  Unknown keys are rejected up front against the experiment's
// whitelist.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;

    // Throws invalid_parameter when a key outside `allowed` is present.
    void enforce_known_keys(const std::vector<std::string>& allowed) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

} // namespace conewave

#endif
