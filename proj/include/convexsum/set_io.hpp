// Set file format: one decimal integer per line, strictly increasing.
// Lines whose first non-blank character is '#' are comments; blank lines are
// ignored.
#pragma once

#include <cctype>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "convexsum/integer_set.hpp"

namespace convexsum {

class SetParseError : public std::runtime_error {
public:
    SetParseError(const std::string& source, std::size_t line, const std::string& message)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

/// Parses an optionally signed decimal integer; nullopt on anything else.
inline std::optional<Int> parse_integer(std::string_view token) {
    bool negative = false;
    if (!token.empty() && (token.front() == '+' || token.front() == '-')) {
        negative = token.front() == '-';
        token.remove_prefix(1);
    }
    if (token.empty()) return std::nullopt;
    for (char c : token)
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    Int v{std::string(token)};
    return negative ? Int(-v) : v;
}

inline bool is_skippable(std::string_view line) {
    line = trim(line);
    return line.empty() || line.front() == '#';
}

}  // namespace detail

inline IntegerSet parse_set(std::istream& in, const std::string& source = "<input>") {
    std::vector<Int> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::is_skippable(line)) continue;
        auto v = detail::parse_integer(detail::trim(line));
        if (!v) throw SetParseError(source, lineno, "not a decimal integer: '" + line + "'");
        if (!values.empty()) {
            if (*v == values.back())
                throw SetParseError(source, lineno, "duplicate element " + v->str());
            if (*v < values.back())
                throw SetParseError(source, lineno,
                                    "element " + v->str() + " is smaller than the previous one");
        }
        values.push_back(std::move(*v));
    }
    return IntegerSet(std::move(values));
}

inline IntegerSet read_set_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open set file " + path.string());
    return parse_set(in, path.string());
}

inline void write_set(std::ostream& out, const IntegerSet& a,
                      std::span<const std::string> comments = {}) {
    for (const auto& c : comments) out << "# " << c << '\n';
    a.visit([&](auto s) {
        for (const auto& x : s) out << x << '\n';
    });
}

}  // namespace convexsum
