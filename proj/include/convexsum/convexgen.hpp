// Convex sets, gap vectors, and the benchmark families.
#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "convexsum/integer_set.hpp"
#include "convexsum/rng.hpp"

namespace convexsum {

/// a_{i+1} - a_i > a_i - a_{i-1} for every interior i. Sets of size <= 2
/// are vacuously convex.
inline bool is_convex(const IntegerSet& a) {
    return a.visit([](auto s) {
        using T = typename decltype(s)::value_type;
        for (std::size_t i = 1; i + 1 < s.size(); ++i)
            if (!(T(s[i + 1] - s[i]) > T(s[i] - s[i - 1]))) return false;
        return true;
    });
}

inline bool has_distinct_consecutive_differences(const IntegerSet& a) {
    return a.visit([](auto s) {
        using T = typename decltype(s)::value_type;
        std::vector<T> gaps;
        for (std::size_t i = 1; i < s.size(); ++i) gaps.push_back(T(s[i] - s[i - 1]));
        std::sort(gaps.begin(), gaps.end());
        return std::adjacent_find(gaps.begin(), gaps.end()) == gaps.end();
    });
}

/// Second-difference encoding of a convex set: the i-th gap is the sum of
/// the first i increments, so increments >= 1 make every realization convex.
struct GapVector {
    Int base = 0;
    std::vector<Int> increments;

    friend bool operator==(const GapVector&, const GapVector&) = default;
};

inline IntegerSet realize(const GapVector& g) {
    std::vector<Int> out;
    out.reserve(g.increments.size() + 1);
    out.push_back(g.base);
    Int gap = 0;
    for (const auto& u : g.increments) {
        if (u <= 0) throw std::invalid_argument("realize: increments must be >= 1");
        gap += u;
        out.push_back(out.back() + gap);
    }
    return IntegerSet(std::move(out));
}

/// Inverse of realize on nonempty convex sets.
inline GapVector extract_gaps(const IntegerSet& a) {
    if (a.empty()) throw std::invalid_argument("extract_gaps: empty set");
    if (!is_convex(a)) throw std::invalid_argument("extract_gaps: set is not convex");
    GapVector g;
    g.base = a.front();
    Int prev = 0;
    for (std::size_t i = 1; i < a.size(); ++i) {
        Int gap = a[i] - a[i - 1];
        g.increments.push_back(gap - prev);
        prev = std::move(gap);
    }
    return g;
}

/// First n terms of the greedy Sidon sequence 1, 2, 4, 8, 13, 21, ...
inline IntegerSet mian_chowla(std::size_t n) {
    std::vector<std::int64_t> terms;
    std::vector<bool> used;  // used[d]: difference d already realized
    std::vector<std::int64_t> fresh;
    for (std::int64_t c = 1; terms.size() < n; ++c) {
        fresh.clear();
        bool ok = true;
        for (auto t : terms) {
            const auto d = static_cast<std::size_t>(c - t);
            if (d < used.size() && used[d]) {
                ok = false;
                break;
            }
            fresh.push_back(c - t);
        }
        if (!ok) continue;
        for (auto d : fresh) {
            if (static_cast<std::size_t>(d) >= used.size()) used.resize(2 * d + 1, false);
            used[static_cast<std::size_t>(d)] = true;
        }
        terms.push_back(c);
    }
    return IntegerSet(std::move(terms));
}

enum class FamilyKind { squares, powers, polynomial, random_convex, mian_chowla };

/// A named instance family. CLI spellings: squares, powers, poly:k,
/// randconv:M:seed (or randconv:M with the seed supplied later), mianchowla.
struct Family {
    FamilyKind kind = FamilyKind::squares;
    unsigned degree = 2;                 // polynomial
    std::uint64_t max_increment = 1;     // random_convex
    std::optional<std::uint64_t> seed;   // random_convex

    std::string name() const {
        switch (kind) {
            case FamilyKind::squares: return "squares";
            case FamilyKind::powers: return "powers";
            case FamilyKind::polynomial: return "poly:" + std::to_string(degree);
            case FamilyKind::random_convex:
                return "randconv:" + std::to_string(max_increment) +
                       (seed ? ":" + std::to_string(*seed) : std::string());
            case FamilyKind::mian_chowla: return "mianchowla";
        }
        return {};
    }

    /// Whether every generated set is convex.
    bool convex() const { return kind != FamilyKind::mian_chowla; }

    /// Copy with the seed filled in if this family takes one and has none.
    Family with_default_seed(std::uint64_t s) const {
        Family f = *this;
        if (f.kind == FamilyKind::random_convex && !f.seed) f.seed = s;
        return f;
    }
};

namespace detail {

inline std::uint64_t parse_u64(std::string_view s, std::string_view what) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
        throw std::invalid_argument("invalid " + std::string(what) + ": '" + std::string(s) + "'");
    return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace detail

inline Family parse_family(std::string_view spec) {
    const auto parts = detail::split(spec, ':');
    Family f;
    const auto head = parts[0];
    if (head == "squares" && parts.size() == 1) {
        f.kind = FamilyKind::squares;
    } else if (head == "powers" && parts.size() == 1) {
        f.kind = FamilyKind::powers;
    } else if (head == "mianchowla" && parts.size() == 1) {
        f.kind = FamilyKind::mian_chowla;
    } else if (head == "poly" && parts.size() == 2) {
        f.kind = FamilyKind::polynomial;
        const auto k = detail::parse_u64(parts[1], "polynomial degree");
        if (k < 2) throw std::invalid_argument("poly:k needs k >= 2");
        f.degree = static_cast<unsigned>(k);
    } else if (head == "randconv" && (parts.size() == 2 || parts.size() == 3)) {
        f.kind = FamilyKind::random_convex;
        f.max_increment = detail::parse_u64(parts[1], "max increment");
        if (f.max_increment < 1) throw std::invalid_argument("randconv:M needs M >= 1");
        if (parts.size() == 3) f.seed = detail::parse_u64(parts[2], "seed");
    } else {
        throw std::invalid_argument("unknown family '" + std::string(spec) + "'");
    }
    return f;
}

inline IntegerSet generate(const Family& f, std::size_t n) {
    if (n < 1) throw std::invalid_argument("generate: n must be >= 1");
    switch (f.kind) {
        case FamilyKind::squares:
        case FamilyKind::polynomial: {
            const unsigned k = f.kind == FamilyKind::squares ? 2 : f.degree;
            if (k < 2) throw std::invalid_argument("poly:k needs k >= 2");
            std::vector<Int> out;
            out.reserve(n);
            for (std::size_t i = 1; i <= n; ++i) out.push_back(boost::multiprecision::pow(Int(i), k));
            return IntegerSet(std::move(out));
        }
        case FamilyKind::powers: {
            std::vector<Int> out;
            out.reserve(n);
            for (std::size_t i = 1; i <= n; ++i) out.push_back(Int(1) << i);
            return IntegerSet(std::move(out));
        }
        case FamilyKind::random_convex: {
            if (!f.seed) throw std::invalid_argument("randconv needs a seed (randconv:M:seed)");
            if (f.max_increment < 1) throw std::invalid_argument("randconv:M needs M >= 1");
            Rng rng(*f.seed);
            GapVector g;
            g.increments.reserve(n - 1);
            for (std::size_t i = 0; i + 1 < n; ++i) g.increments.emplace_back(rng.uniform(1, f.max_increment));
            return realize(g);
        }
        case FamilyKind::mian_chowla:
            return mian_chowla(n);
    }
    throw std::invalid_argument("generate: unknown family");
}

inline IntegerSet generate(std::string_view family, std::size_t n) {
    return generate(parse_family(family), n);
}

}  // namespace convexsum
