#include "pottslab/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pottslab {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

ExperimentConfig ExperimentConfig::parse_string(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        if (cfg.has(key)) throw ConfigError("duplicate config key: " + key);
        cfg.entries_.emplace_back(key, value);
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

std::string ExperimentConfig::render() const {
    std::ostringstream out;
    for (const auto& [k, v] : entries_) out << k << " = " << v << "\n";
    return out.str();
}

bool ExperimentConfig::has(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return true;
    return false;
}

std::string ExperimentConfig::get(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return v;
    throw ConfigError("missing config key: " + key);
}

std::string ExperimentConfig::get(const std::string& key, const std::string& fallback) const {
    return has(key) ? get(key) : fallback;
}

int64_t ExperimentConfig::get_int(const std::string& key, int64_t fallback) const {
    if (!has(key)) return fallback;
    const std::string v = get(key);
    size_t pos = 0;
    int64_t r;
    try {
        r = std::stoll(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": not an integer: " + v);
    }
    if (pos != v.size()) throw ConfigError("config key " + key + ": not an integer: " + v);
    return r;
}

uint64_t ExperimentConfig::get_u64(const std::string& key, uint64_t fallback) const {
    if (!has(key)) return fallback;
    const std::string v = get(key);
    size_t pos = 0;
    uint64_t r;
    try {
        r = std::stoull(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": not an unsigned integer: " + v);
    }
    if (pos != v.size())
        throw ConfigError("config key " + key + ": not an unsigned integer: " + v);
    return r;
}

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const std::string v = get(key);
    size_t pos = 0;
    double r;
    try {
        r = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": not a number: " + v);
    }
    if (pos != v.size()) throw ConfigError("config key " + key + ": not a number: " + v);
    return r;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = value;
            return;
        }
    }
    entries_.emplace_back(key, value);
}

void ExperimentConfig::require_known(const std::vector<std::string>& allowed) const {
    for (const auto& [k, v] : entries_) {
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw ConfigError("unknown config key: " + k);
    }
}

std::string config_hash(const ExperimentConfig& cfg) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : cfg.render()) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace pottslab
