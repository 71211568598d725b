// Additive energies, third moments, ranked differences, popular sets and
// dyadic layers. Every threshold is compared by integer cross-multiplication.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "convexsum/integer_set.hpp"
#include "convexsum/setcore.hpp"

namespace convexsum {

using u128 = unsigned __int128;

namespace detail {

/// Calls f(i, j) for every value at position i of x and position j of y.
template <class F>
void for_each_common(const IntegerSet& x, const IntegerSet& y, F&& f) {
    visit_pair(x, y, [&](auto sx, auto sy) {
        std::size_t i = 0, j = 0;
        while (i < sx.size() && j < sy.size()) {
            if (sx[i] < sy[j]) {
                ++i;
            } else if (sy[j] < sx[i]) {
                ++j;
            } else {
                f(i, j);
                ++i;
                ++j;
            }
        }
        return 0;
    });
}

}  // namespace detail

/// sum_s r(s)^2 for a representation function r.
inline Int energy_from(const RepFunction& r) {
    u128 acc = 0;
    for (auto c : r.counts()) acc += static_cast<u128>(c) * c;
    return detail::to_int(acc);
}

/// E(A,B) = sum_s delta_{A,B}(s)^2.
inline Int energy(const IntegerSet& a, const IntegerSet& b) {
    return energy_from(rep_function(a, b, RepMode::difference));
}

/// The three textbook formulas for E(A,B), computed independently.
struct EnergyFormulas {
    Int delta_product;      // sum_s delta_A(s) delta_B(s)
    Int difference_square;  // sum_s delta_{A,B}(s)^2
    Int sum_square;         // sum_s sigma_{A,B}(s)^2

    bool agree() const { return delta_product == difference_square && difference_square == sum_square; }
};

inline Int delta_product(const RepFunction& x, const RepFunction& y) {
    u128 acc = 0;
    detail::for_each_common(x.support(), y.support(), [&](std::size_t i, std::size_t j) {
        acc += static_cast<u128>(x.counts()[i]) * y.counts()[j];
    });
    return detail::to_int(acc);
}

inline EnergyFormulas energy_formulas(const IntegerSet& a, const IntegerSet& b) {
    const auto da = rep_function(a, a, RepMode::difference);
    const auto db = rep_function(b, b, RepMode::difference);
    return {delta_product(da, db), energy_from(rep_function(a, b, RepMode::difference)),
            energy_from(rep_function(a, b, RepMode::sum))};
}

enum class EnergyCheck { off, debug };

/// With EnergyCheck::debug all three formulas are evaluated and a mismatch
/// throws std::logic_error.
inline Int energy(const IntegerSet& a, const IntegerSet& b, EnergyCheck check) {
    if (check == EnergyCheck::off) return energy(a, b);
    auto f = energy_formulas(a, b);
    if (!f.agree())
        throw std::logic_error("energy formulas disagree: " + f.delta_product.str() + " / " +
                               f.difference_square.str() + " / " + f.sum_square.str());
    return f.difference_square;
}

inline Int energy3(const RepFunction& delta) {
    u128 acc = 0;
    for (auto c : delta.counts()) acc += static_cast<u128>(c) * c * c;
    return detail::to_int(acc);
}

/// E_3(A) = sum_s delta_A(s)^3.
inline Int energy3(const IntegerSet& a) { return energy3(rep_function(a, a, RepMode::difference)); }

struct RankedDifference {
    Int value;
    std::uint64_t count = 0;

    friend bool operator==(const RankedDifference&, const RankedDifference&) = default;
};

/// (s_r, delta_A(s_r)) for r = 1..|A-A|, by count descending then value
/// ascending.
struct RankedDifferences {
    std::vector<RankedDifference> entries;
};

inline RankedDifferences ranked_differences(const RepFunction& delta) {
    std::vector<std::size_t> order(delta.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto counts = delta.counts();
    // The support is value-ascending, so a stable sort on counts keeps the tie-break.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return counts[x] > counts[y]; });
    RankedDifferences out;
    out.entries.reserve(order.size());
    for (auto i : order) out.entries.push_back({delta.support()[i], counts[i]});
    return out;
}

inline RankedDifferences ranked_differences(const IntegerSet& a) {
    if (a.empty()) throw std::invalid_argument("ranked_differences: empty set");
    return ranked_differences(rep_function(a, a, RepMode::difference));
}

enum class PopularKind { P, P_prime };

/// P = {s : delta_A(s) >= |A|^2/(2|A-A|)}, P' the same with |A+A|.
struct PopularSet {
    PopularKind kind = PopularKind::P;
    IntegerSet members;
    Rational threshold;
};

/// `spread` is |A-A| for P and |A+A| for P'.
inline PopularSet popular_set(const RepFunction& delta, std::size_t n, std::size_t spread,
                              PopularKind kind) {
    PopularSet out;
    out.kind = kind;
    out.threshold = Rational(Int(n) * n, Int(2) * spread);
    const u128 n2 = static_cast<u128>(n) * n;
    const auto counts = delta.counts();
    std::vector<bool> keep(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        keep[i] = static_cast<u128>(2) * spread * counts[i] >= n2;
    delta.support().visit([&](auto s) {
        using T = typename decltype(s)::value_type;
        std::vector<T> members;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (keep[i]) members.push_back(s[i]);
        out.members = IntegerSet(std::move(members));
    });
    return out;
}

inline PopularSet popular_set(const IntegerSet& a, PopularKind kind) {
    if (a.empty()) throw std::invalid_argument("popular_set: empty set");
    const auto delta = rep_function(a, a, RepMode::difference);
    const std::size_t spread = kind == PopularKind::P ? delta.size() : sumset(a, a).size();
    return popular_set(delta, a.size(), spread, kind);
}

/// Differences s with 2^{j-1}|A|/L < |A_s| <= 2^j |A|/L, L = |A+A|/|A|.
struct DyadicLayer {
    unsigned j = 1;
    Rational lower;
    Rational upper;
    IntegerSet members;
    std::uint64_t mass = 0;  // sum of |A_s| over members
};

struct DyadicScan {
    Rational doubling;  // L
    std::vector<DyadicLayer> layers;
    IntegerSet residue;  // |A_s| <= |A|/L
    std::uint64_t residue_mass = 0;
};

inline DyadicScan dyadic_layers(const RepFunction& delta, std::size_t n, std::size_t sum_size) {
    DyadicScan scan;
    scan.doubling = Rational(Int(sum_size), Int(n));
    const u128 n2 = static_cast<u128>(n) * n;

    // |A_s| * |A+A| <= 2^j n^2 is the upper window edge; layers continue
    // until the edge reaches |A|.
    unsigned layers = 0;
    do {
        ++layers;
    } while ((n2 << layers) < static_cast<u128>(n) * sum_size);

    std::vector<std::vector<std::size_t>> picks(layers + 1);  // slot 0 = residue
    const auto counts = delta.counts();
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const u128 scaled = static_cast<u128>(counts[i]) * sum_size;
        unsigned slot = 0;
        if (scaled > n2) {
            slot = 1;
            while ((n2 << slot) < scaled) ++slot;
        }
        picks[slot].push_back(i);
    }

    auto gather = [&](const std::vector<std::size_t>& idx, std::uint64_t& mass) {
        IntegerSet out;
        delta.support().visit([&](auto s) {
            using T = typename decltype(s)::value_type;
            std::vector<T> v;
            v.reserve(idx.size());
            for (auto i : idx) {
                v.push_back(s[i]);
                mass += counts[i];
            }
            out = IntegerSet(std::move(v));
        });
        return out;
    };

    scan.residue = gather(picks[0], scan.residue_mass);
    for (unsigned j = 1; j <= layers; ++j) {
        DyadicLayer layer;
        layer.j = j;
        layer.lower = Rational(Int(1) << (j - 1)) * n * n / Int(sum_size);
        layer.upper = Rational(Int(1) << j) * n * n / Int(sum_size);
        layer.members = gather(picks[j], layer.mass);
        scan.layers.push_back(std::move(layer));
    }
    return scan;
}

inline DyadicScan dyadic_layers(const IntegerSet& a) {
    if (a.empty()) throw std::invalid_argument("dyadic_layers: empty set");
    return dyadic_layers(rep_function(a, a, RepMode::difference), a.size(), sumset(a, a).size());
}

}  // namespace convexsum
