#include "hpe/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hpe {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool valid_key(const std::string& k) {
    if (k.empty() || k.find('.') == std::string::npos) return false;
    for (char c : k) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                  (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
        if (!ok) return false;
    }
    return true;
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Config Config::parse(std::istream& is) {
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (!valid_key(key))
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": malformed key '" + key + "'");
        if (!cfg.values_.emplace(key, value).second)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": duplicate key '" + key + "'");
    }
    return cfg;
}

Config Config::parse_string(const std::string& text) {
    std::istringstream is(text);
    return parse(is);
}

Config Config::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path);
    return parse(is);
}

std::string Config::lookup(const std::string& key, const std::string* fallback) const {
    auto it = values_.find(key);
    std::string value;
    if (it != values_.end()) {
        consumed_.insert(key);
        value = it->second;
    } else if (fallback) {
        value = *fallback;
    } else {
        throw std::invalid_argument("missing required config key: " + key);
    }
    manifest_.emplace_back(key, value);
    return value;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    return lookup(key, &fallback);
}

std::string Config::require_string(const std::string& key) const {
    return lookup(key, nullptr);
}

double Config::get_double(const std::string& key, double fallback) const {
    std::string def = format_double(fallback);
    std::string raw = lookup(key, &def);
    std::size_t used = 0;
    double v = std::stod(raw, &used);
    if (used != raw.size())
        throw std::invalid_argument("config key " + key + ": not a number: " + raw);
    return v;
}

double Config::require_double(const std::string& key) const {
    std::string raw = lookup(key, nullptr);
    std::size_t used = 0;
    double v = std::stod(raw, &used);
    if (used != raw.size())
        throw std::invalid_argument("config key " + key + ": not a number: " + raw);
    return v;
}

long long Config::get_int(const std::string& key, long long fallback) const {
    std::string def = std::to_string(fallback);
    std::string raw = lookup(key, &def);
    std::size_t used = 0;
    long long v = std::stoll(raw, &used);
    if (used != raw.size())
        throw std::invalid_argument("config key " + key + ": not an integer: " + raw);
    return v;
}

long long Config::require_int(const std::string& key) const {
    std::string raw = lookup(key, nullptr);
    std::size_t used = 0;
    long long v = std::stoll(raw, &used);
    if (used != raw.size())
        throw std::invalid_argument("config key " + key + ": not an integer: " + raw);
    return v;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    std::string def = fallback ? "true" : "false";
    std::string raw = lookup(key, &def);
    if (raw == "true") return true;
    if (raw == "false") return false;
    throw std::invalid_argument("config key " + key + ": expected true or false: " + raw);
}

void Config::note(const std::string& key, const std::string& value) const {
    manifest_.emplace_back(key, value);
}

void Config::check_consumed() const {
    std::string unknown;
    for (const auto& [key, value] : values_) {
        if (!consumed_.count(key)) {
            if (!unknown.empty()) unknown += ", ";
            unknown += key;
        }
    }
    if (!unknown.empty()) throw std::invalid_argument("unknown config keys: " + unknown);
}

void Config::write_manifest(std::ostream& os) const {
    // A manifest must reparse as a config, and the parser rejects duplicate
    // keys: keep first-appearance order but let the latest value win, so a
    // note() recording an override shadows the original read.
    std::vector<std::string> order;
    std::map<std::string, std::string> latest;
    for (const auto& [key, value] : manifest_) {
        if (!latest.count(key)) order.push_back(key);
        latest[key] = value;
    }
    for (const auto& key : order) os << key << " = " << latest[key] << "\n";
}

} // namespace hpe
