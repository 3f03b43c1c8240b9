#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pricewave {

/// Flat key=value configuration with '#' comments.  Values read from a
/// file can be overridden one by one (the CLI layers its flags on top);
/// keys nobody consumed are reported as errors.
class KeyValueConfig {
public:
    KeyValueConfig() = default;

    static KeyValueConfig from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open config file: " + path);
        KeyValueConfig cfg;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const auto first = line.find_first_not_of(" \t\r\n");
            if (first == std::string::npos) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                            ": expected key=value");
            cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
        return cfg;
    }

    void set(const std::string& key, const std::string& value) {
        if (key.empty()) throw std::invalid_argument("empty config key");
        values_[key] = value;
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        consumed_.insert(key);
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        consumed_.insert(key);
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        return parse_double(key, it->second);
    }

    int get_int(const std::string& key, int fallback) const {
        consumed_.insert(key);
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(it->second, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("config key '" + key + "': not an integer: " + it->second);
        }
        if (pos != it->second.size())
            throw std::invalid_argument("config key '" + key + "': not an integer: " + it->second);
        return v;
    }

    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const {
        consumed_.insert(key);
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        std::vector<double> out;
        std::stringstream ss(it->second);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!trim(tok).empty()) out.push_back(parse_double(key, trim(tok)));
        return out;
    }

    /// Keys present in the config that no reader asked for.
    std::vector<std::string> unknown_keys() const {
        std::vector<std::string> unknown;
        for (const auto& [k, v] : values_)
            if (consumed_.count(k) == 0) unknown.push_back(k);
        return unknown;
    }

    void require_all_consumed() const {
        const auto unknown = unknown_keys();
        if (!unknown.empty()) {
            std::string msg = "unknown config keys:";
            for (const auto& k : unknown) msg += " " + k;
            throw std::invalid_argument(msg);
        }
    }

private:
    static std::string trim(const std::string& s) {
        const auto a = s.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) return "";
        const auto b = s.find_last_not_of(" \t\r\n");
        return s.substr(a, b - a + 1);
    }

    static double parse_double(const std::string& key, const std::string& value) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(value, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("config key '" + key + "': not a number: " + value);
        }
        if (pos != value.size())
            throw std::invalid_argument("config key '" + key + "': not a number: " + value);
        return v;
    }

    std::map<std::string, std::string> values_;
    mutable std::set<std::string> consumed_;
};

}  // namespace pricewave
