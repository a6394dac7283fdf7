#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace debrisim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat "[section] / key = value" text configuration. '#' starts a comment.
class Config {
public:
    Config() = default;
    static Config load(const std::string& path);
    static Config parse(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;

    void set(const std::string& section, const std::string& key, const std::string& value);

private:
    std::string lookup(const std::string& section, const std::string& key) const;
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace debrisim
