#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace hypvol {

/// Ordered key=value report. Keys are dotted paths; values never contain newlines.
/// Reals are printed with 15 significant digits so reruns compare byte for byte.
class Report {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, const char* value) { set(key, std::string(value)); }
    void set(const std::string& key, double value);
    void set(const std::string& key, int value);
    void set(const std::string& key, std::size_t value);
    void set(const std::string& key, bool value);
    void set(const std::string& key, const std::vector<double>& values);
    void set(const std::string& key, const std::vector<std::size_t>& values);

    void warn(const std::string& message);

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    /// Value of `key`, or an empty string.
    std::string get(const std::string& key) const;
    bool has(const std::string& key) const;

    /// Entries in insertion order, then warning.count and warning.N lines.
    std::string str() const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
    std::vector<std::string> warnings_;
};

std::string format_real(double value);

std::ostream& operator<<(std::ostream& os, const Report& report);

/// Parses text produced by Report::str back into key/value pairs.
std::vector<std::pair<std::string, std::string>> parse_report(const std::string& text);

}  // namespace hypvol
