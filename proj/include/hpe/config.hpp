// Line-oriented config: `section.key = value`, UTF-8, # comments.  Every
// key must be consumed by a getter or check_consumed() throws, so typos in
// config files never pass silently.  Getters record the resolved value
// (including defaults), and the manifest echoes them back in the same
// key = value format for bit-exact reruns.

#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hpe {

std::string format_double(double v); // %.17g

class Config {
  public:
    Config() = default;

    // Throws std::invalid_argument on malformed lines or duplicate keys.
    static Config parse(std::istream& is);
    static Config parse_string(const std::string& text);
    static Config parse_file(const std::string& path); // std::runtime_error if unreadable

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::string require_string(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    double require_double(const std::string& key) const;
    long long get_int(const std::string& key, long long fallback) const;
    long long require_int(const std::string& key) const;
    bool get_bool(const std::string& key, bool fallback) const;

    // Extra manifest entries (run.seed, run.git_like_version, ...).
    void note(const std::string& key, const std::string& value) const;

    // Unknown (never consumed) keys are errors.
    void check_consumed() const;

    const std::vector<std::pair<std::string, std::string>>& manifest() const {
        return manifest_;
    }
    void write_manifest(std::ostream& os) const;

  private:
    std::string lookup(const std::string& key, const std::string* fallback) const;

    std::map<std::string, std::string> values_;
    mutable std::set<std::string> consumed_;
    mutable std::vector<std::pair<std::string, std::string>> manifest_;
};

} // namespace hpe
