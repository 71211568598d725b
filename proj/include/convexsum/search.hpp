// Hill climbing over gap vectors. A candidate is the convex set with base 0
// and second differences u_1..u_{n-1} in [1, M], so every candidate is convex
// by construction.
#pragma once

#include <cmath>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "convexsum/convexgen.hpp"
#include "convexsum/energy.hpp"
#include "convexsum/parallel.hpp"
#include "convexsum/rng.hpp"
#include "convexsum/setcore.hpp"

namespace convexsum {

enum class Objective { min_sum, min_diff, max_e3 };

inline std::string_view objective_name(Objective o) {
    switch (o) {
        case Objective::min_sum: return "min_sum";
        case Objective::min_diff: return "min_diff";
        case Objective::max_e3: return "max_e3";
    }
    return "?";
}

inline Objective parse_objective(std::string_view name) {
    for (auto o : {Objective::min_sum, Objective::min_diff, Objective::max_e3})
        if (objective_name(o) == name) return o;
    throw std::invalid_argument("unknown objective '" + std::string(name) + "'");
}

/// Lower is better: |A+A|, |A-A|, or -E_3(A).
inline Rational score(const IntegerSet& a, Objective o) {
    if (!is_convex(a)) throw std::invalid_argument("score: set is not convex");
    switch (o) {
        case Objective::min_sum: return Rational(Int(sumset(a, a).size()));
        case Objective::min_diff: return Rational(Int(diffset(a, a).size()));
        case Objective::max_e3: return Rational(Int(-energy3(a)));
    }
    return {};
}

struct SearchConfig {
    std::size_t n = 3;
    Objective objective = Objective::min_sum;
    std::uint64_t max_gap = 1;
    std::uint64_t iterations = 1;  // sweep cap; a sweep with no improvement ends a restart early
    std::uint64_t restarts = 1;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

struct SearchResult {
    IntegerSet best_set;
    std::vector<std::uint64_t> gaps;  // second differences of best_set
    Rational best_score;
    std::vector<Rational> history;  // best score of each restart
    std::optional<double> exponent;       // log(objective set size) / log n
    double theorem_ratio = 0;             // best against the matching growth rate
};

namespace detail {

inline IntegerSet candidate(const std::vector<std::uint64_t>& u) {
    std::vector<std::int64_t> v{0};
    std::int64_t gap = 0;
    for (auto x : u) {
        gap += static_cast<std::int64_t>(x);
        v.push_back(v.back() + gap);
    }
    return IntegerSet(std::move(v));
}

// n^{14/9} ln^{-2/3} n, n^{8/5} ln^{-2/5} n, n^3 ln n.
inline void finish(SearchResult& r, std::size_t n, Objective o) {
    const double nd = static_cast<double>(n);
    const double ln = std::log(nd);
    const double value = std::abs(r.best_score.convert_to<double>());
    switch (o) {
        case Objective::min_sum:
            r.exponent = std::log(value) / ln;
            r.theorem_ratio = value / (std::pow(nd, 14.0 / 9.0) * std::pow(ln, -2.0 / 3.0));
            break;
        case Objective::min_diff:
            r.exponent = std::log(value) / ln;
            r.theorem_ratio = value / (std::pow(nd, 1.6) * std::pow(ln, -0.4));
            break;
        case Objective::max_e3:
            r.theorem_ratio = value / (nd * nd * nd * ln);
            break;
    }
}

inline void validate(std::size_t n, std::uint64_t max_gap) {
    if (n < 3) throw std::invalid_argument("search: n must be at least 3");
    if (max_gap < 1) throw std::invalid_argument("search: max gap must be at least 1");
}

struct Climb {
    std::vector<std::uint64_t> gaps;
    Rational score;
};

inline Climb climb(const SearchConfig& cfg, std::uint64_t restart) {
    Rng rng(derive_seed(cfg.seed, restart));
    Climb c;
    c.gaps.resize(cfg.n - 1);
    for (auto& u : c.gaps) u = rng.uniform(1, cfg.max_gap);
    c.score = score(candidate(c.gaps), cfg.objective);

    // move k: index k / 2, direction +1 if k is even
    std::vector<std::size_t> moves(2 * c.gaps.size());
    for (std::uint64_t sweep = 0; sweep < cfg.iterations; ++sweep) {
        for (std::size_t k = 0; k < moves.size(); ++k) moves[k] = k;
        for (std::size_t k = moves.size(); k > 1; --k) std::swap(moves[k - 1], moves[rng.uniform(0, k - 1)]);
        bool improved = false;
        for (auto m : moves) {
            auto& u = c.gaps[m / 2];
            const bool up = m % 2 == 0;
            if (up ? u == cfg.max_gap : u == 1) continue;
            u = up ? u + 1 : u - 1;
            auto s = score(candidate(c.gaps), cfg.objective);
            if (s < c.score) {
                c.score = std::move(s);
                improved = true;
            } else {
                u = up ? u - 1 : u + 1;
            }
        }
        if (!improved) break;
    }
    return c;
}

inline bool better(const Rational& s, const std::vector<std::uint64_t>& g, const Rational& t,
                   const std::vector<std::uint64_t>& h) {
    return s < t || (s == t && g < h);
}

}  // namespace detail

/// Independent restarts from random gap vectors, each climbing by +-1 moves
/// in a shuffled order and accepting strict improvements only. The result is
/// the best over restarts, ties going to the lexicographically smaller gaps.
inline SearchResult local_search(const SearchConfig& cfg) {
    detail::validate(cfg.n, cfg.max_gap);
    if (cfg.restarts < 1) throw std::invalid_argument("search: restarts must be at least 1");
    std::vector<detail::Climb> runs(cfg.restarts);
    detail::parallel_for(runs.size(), cfg.jobs, [&](std::size_t k) { runs[k] = detail::climb(cfg, k); });

    SearchResult r;
    std::size_t best = 0;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        r.history.push_back(runs[k].score);
        if (detail::better(runs[k].score, runs[k].gaps, runs[best].score, runs[best].gaps)) best = k;
    }
    r.gaps = runs[best].gaps;
    r.best_score = runs[best].score;
    r.best_set = detail::candidate(r.gaps);
    detail::finish(r, cfg.n, cfg.objective);
    return r;
}

inline constexpr std::uint64_t kExhaustiveLimit = 10'000'000;

/// Every gap vector in [1, M]^{n-1}; the lexicographically first optimum wins.
inline SearchResult exhaustive(std::size_t n, std::uint64_t max_gap, Objective o) {
    detail::validate(n, max_gap);
    std::uint64_t space = 1;
    for (std::size_t i = 1; i < n; ++i) {
        if (space > kExhaustiveLimit / max_gap)
            throw std::invalid_argument("exhaustive: search space exceeds 10^7 candidates");
        space *= max_gap;
    }

    std::vector<std::uint64_t> u(n - 1, 1);
    SearchResult r;
    bool first = true;
    for (;;) {
        auto s = score(detail::candidate(u), o);
        if (first || s < r.best_score) {
            r.best_score = std::move(s);
            r.gaps = u;
            first = false;
        }
        // odometer, last index fastest, so candidates come in lexicographic order
        std::size_t i = u.size();
        while (i > 0 && u[i - 1] == max_gap) u[--i] = 1;
        if (i == 0) break;
        ++u[i - 1];
    }
    r.best_set = detail::candidate(r.gaps);
    r.history = {r.best_score};
    detail::finish(r, n, o);
    return r;
}

inline void write_history_csv(std::ostream& out, const SearchResult& r) {
    out << "restart,score\n";
    for (std::size_t k = 0; k < r.history.size(); ++k)
        out << k << ',' << detail::rational_string(r.history[k]) << '\n';
}

}  // namespace convexsum
