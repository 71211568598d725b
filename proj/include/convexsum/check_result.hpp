// Outcome of an exact comparison, stored in cross-multiplied integer form.
#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "convexsum/integer_set.hpp"

namespace convexsum {

enum class Relation { equal, less, less_equal, greater, greater_equal };

inline std::string_view relation_symbol(Relation r) {
    switch (r) {
        case Relation::equal: return "=";
        case Relation::less: return "<";
        case Relation::less_equal: return "<=";
        case Relation::greater: return ">";
        case Relation::greater_equal: return ">=";
    }
    return "?";
}

inline bool compare(const Int& lhs, Relation r, const Int& rhs) {
    switch (r) {
        case Relation::equal: return lhs == rhs;
        case Relation::less: return lhs < rhs;
        case Relation::less_equal: return lhs <= rhs;
        case Relation::greater: return lhs > rhs;
        case Relation::greater_equal: return lhs >= rhs;
    }
    return false;
}

struct CheckResult {
    std::string name;
    Int lhs;
    Int rhs;
    Relation relation = Relation::equal;
    bool holds = false;
    std::optional<std::string> witness;  // set iff !holds
};

/// Evaluates `lhs relation rhs`; the witness is kept only on failure.
inline CheckResult make_check(std::string name, Int lhs, Relation relation, Int rhs,
                              std::string witness = "violated") {
    CheckResult r{std::move(name), std::move(lhs), std::move(rhs), relation, false, std::nullopt};
    r.holds = compare(r.lhs, relation, r.rhs);
    if (!r.holds) r.witness = std::move(witness);
    return r;
}

namespace detail {

inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace detail

inline constexpr std::string_view kCheckCsvHeader = "set_id,check,lhs,rhs,holds,witness";

inline void write_check_row(std::ostream& out, std::string_view set_id, const CheckResult& r) {
    out << detail::csv_field(set_id) << ',' << detail::csv_field(r.name) << ',' << r.lhs << ','
        << r.rhs << ',' << (r.holds ? "true" : "false") << ','
        << detail::csv_field(r.witness.value_or("")) << '\n';
}

inline void write_check_csv(std::ostream& out, std::string_view set_id,
                            std::span<const CheckResult> results, bool header = true) {
    if (header) out << kCheckCsvHeader << '\n';
    for (const auto& r : results) write_check_row(out, set_id, r);
}

}  // namespace convexsum
