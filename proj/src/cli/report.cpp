#include "hypvol/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hypvol {

namespace {

std::string sanitize(std::string value) {
    std::replace(value.begin(), value.end(), '\n', ' ');
    return value;
}

}  // namespace

std::string format_real(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    if (value == 0.0) {
        return "0";  // folds -0
    }
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.15g", value);
    return buffer;
}

void Report::set(const std::string& key, const std::string& value) {
    if (key.empty() || key.find_first_of("=\n ") != std::string::npos) {
        throw std::invalid_argument("bad report key '" + key + "'");
    }
    const auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
    if (it != entries_.end()) {
        it->second = sanitize(value);
    } else {
        entries_.emplace_back(key, sanitize(value));
    }
}

void Report::set(const std::string& key, double value) { set(key, format_real(value)); }
void Report::set(const std::string& key, int value) { set(key, std::to_string(value)); }
void Report::set(const std::string& key, std::size_t value) { set(key, std::to_string(value)); }
void Report::set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }

void Report::set(const std::string& key, const std::vector<double>& values) {
    std::string text;
    for (std::size_t i = 0; i < values.size(); ++i) {
        text += (i ? "," : "") + format_real(values[i]);
    }
    set(key, text);
}

void Report::set(const std::string& key, const std::vector<std::size_t>& values) {
    std::string text;
    for (std::size_t i = 0; i < values.size(); ++i) {
        text += (i ? "," : "") + std::to_string(values[i]);
    }
    set(key, text);
}

void Report::warn(const std::string& message) { warnings_.push_back(sanitize(message)); }

std::string Report::get(const std::string& key) const {
    for (const auto& [k, v] : entries_) {
        if (k == key) {
            return v;
        }
    }
    return {};
}

bool Report::has(const std::string& key) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
}

std::string Report::str() const {
    std::ostringstream os;
    for (const auto& [k, v] : entries_) {
        os << k << '=' << v << '\n';
    }
    os << "warning.count=" << warnings_.size() << '\n';
    for (std::size_t i = 0; i < warnings_.size(); ++i) {
        os << "warning." << i << '=' << warnings_[i] << '\n';
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Report& report) { return os << report.str(); }

std::vector<std::pair<std::string, std::string>> parse_report(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("report line without '=': " + line);
        }
        out.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return out;
}

}  // namespace hypvol
