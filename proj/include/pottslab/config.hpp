#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pottslab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key=value experiment configuration. '#' starts a comment, keys are
// dotted paths, duplicates are an error. render/parse round-trips exactly.
class ExperimentConfig {
public:
    static ExperimentConfig parse_string(const std::string& text);
    static ExperimentConfig parse_file(const std::string& path);

    std::string render() const;

    bool has(const std::string& key) const;
    std::string get(const std::string& key) const;
    std::string get(const std::string& key, const std::string& fallback) const;
    int64_t get_int(const std::string& key, int64_t fallback) const;
    uint64_t get_u64(const std::string& key, uint64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;

    void set(const std::string& key, const std::string& value);

    // hard error naming the first key outside the allowed set
    void require_known(const std::vector<std::string>& allowed) const;

    bool operator==(const ExperimentConfig& o) const { return entries_ == o.entries_; }

    const std::vector<std::pair<std::string, std::string>>& entries() const {
        return entries_;
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

// FNV-1a hash of the rendered config, hex string; keys the manifest
std::string config_hash(const ExperimentConfig& cfg);

} // namespace pottslab
