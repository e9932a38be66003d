#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace smotfs {

/// Flat `key = value` settings, one per line; `#` starts a comment.
class Settings {
public:
    static Settings parse(std::istream& in);
    static Settings load(const std::string& path);

    void set(std::string key, std::string value);
    /// Entries of `other` replace ours.
    void merge(const Settings& other);

    bool contains(std::string_view key) const;
    std::optional<std::string> get(std::string_view key) const;

    std::optional<long long> get_int(std::string_view key) const;
    std::optional<std::uint64_t> get_u64(std::string_view key) const;
    std::optional<double> get_double(std::string_view key) const;
    std::optional<bool> get_bool(std::string_view key) const;

    const std::map<std::string, std::string, std::less<>>& entries() const noexcept { return values_; }

private:
    std::map<std::string, std::string, std::less<>> values_;
};

}  // namespace smotfs
