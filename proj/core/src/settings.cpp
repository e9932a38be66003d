#include "smotfs/settings.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>

#include "smotfs/errors.hpp"

namespace smotfs {

namespace {

std::string trim(std::string_view s) {
    auto first = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
    auto last = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
    return first < last ? std::string(first, last) : std::string();
}

template <typename T>
std::optional<T> parse_number(std::string_view key, const std::optional<std::string>& raw) {
    if (!raw) return std::nullopt;
    T value{};
    const char* begin = raw->data();
    const char* end = begin + raw->size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError("setting '" + std::string(key) + "': cannot parse '" + *raw + "'");
    }
    return value;
}

}  // namespace

Settings Settings::parse(std::istream& in) {
    Settings s;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        std::string key = trim(std::string_view(body).substr(0, eq));
        std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        }
        s.set(std::move(key), std::move(value));
    }
    return s;
}

Settings Settings::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse(in);
}

void Settings::set(std::string key, std::string value) { values_[std::move(key)] = std::move(value); }

void Settings::merge(const Settings& other) {
    for (const auto& [k, v] : other.values_) values_[k] = v;
}

bool Settings::contains(std::string_view key) const { return values_.find(key) != values_.end(); }

std::optional<std::string> Settings::get(std::string_view key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::optional<long long> Settings::get_int(std::string_view key) const {
    return parse_number<long long>(key, get(key));
}

std::optional<std::uint64_t> Settings::get_u64(std::string_view key) const {
    return parse_number<std::uint64_t>(key, get(key));
}

std::optional<double> Settings::get_double(std::string_view key) const {
    return parse_number<double>(key, get(key));
}

std::optional<bool> Settings::get_bool(std::string_view key) const {
    const auto raw = get(key);
    if (!raw) return std::nullopt;
    if (*raw == "true" || *raw == "1" || *raw == "yes") return true;
    if (*raw == "false" || *raw == "0" || *raw == "no") return false;
    throw ConfigError("setting '" + std::string(key) + "': expected a boolean, got '" + *raw + "'");
}

}  // namespace smotfs
