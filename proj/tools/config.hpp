#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "yangian/fock.hpp"

namespace yangian::cli {

// Malformed configuration: reported as a usage error.
class ConfigError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    std::vector<std::string> suites;
    std::vector<std::string> relations;  // empty: every relation of the suite
    OracleConfig oracle;
    std::optional<std::uint64_t> seed;
    std::string report;  // JSON report path, empty for none
    int threads = 0;     // 0: hardware concurrency

    // Echoed into every record.
    std::string summary() const;
};

// Flat "key = value" text with optional [section] headers. Keys are looked
// up as "section.key"; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path);

// Applies one key (without section) to the run configuration.
void apply_key(RunConfig& rc, const std::string& key, const std::string& value);

// Applies a whole file; sections must match the keys they hold.
void apply_file(RunConfig& rc, const std::map<std::string, std::string>& kv);

Window parse_window(const std::string& text);  // "lo:hi"
std::vector<std::string> split_list(const std::string& text);

}  // namespace yangian::cli
