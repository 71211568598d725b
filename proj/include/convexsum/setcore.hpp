// Sumsets, difference sets, representation functions and slices.
#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include <boost/sort/spreadsort/integer_sort.hpp>

#include "convexsum/integer_set.hpp"

namespace convexsum {

enum class RepMode { difference, sum };

/// How rep_function tallies pair values. `automatic` picks the counting
/// array when the value range is small enough, sorting otherwise; the two
/// forced strategies exist so the paths can be compared.
enum class RepStrategy { automatic, sorted, counting_array };

/// delta_{A,B} or sigma_{A,B}: value -> number of ordered pairs, zero counts
/// omitted. The support is stored as an IntegerSet with counts in parallel.
class RepFunction {
public:
    RepFunction() = default;
    RepFunction(RepMode mode, IntegerSet support, std::vector<std::uint64_t> counts)
        : mode_(mode), support_(std::move(support)), counts_(std::move(counts)) {
        if (support_.size() != counts_.size())
            throw std::invalid_argument("RepFunction: support and counts differ in length");
        for (auto c : counts_) {
            if (c == 0) throw std::invalid_argument("RepFunction: zero count stored");
            total_ += c;
        }
    }

    RepMode mode() const { return mode_; }
    const IntegerSet& support() const { return support_; }
    std::span<const std::uint64_t> counts() const { return counts_; }
    std::uint64_t total() const { return total_; }
    std::size_t size() const { return counts_.size(); }

    /// Count at s; 0 outside the support.
    std::uint64_t operator()(const Int& s) const {
        auto i = support_.index_of(s);
        return i ? counts_[*i] : 0;
    }

    friend bool operator==(const RepFunction&, const RepFunction&) = default;

private:
    RepMode mode_ = RepMode::difference;
    IntegerSet support_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

namespace detail {

// Counting-array cap: 2^24 cells (64 MiB of uint32).
inline constexpr std::uint64_t kArrayPathMaxRange = std::uint64_t{1} << 24;

template <class T>
struct Tally {
    std::vector<T> values;
    std::vector<std::uint64_t> counts;
};

template <class T>
void sort_values(std::vector<T>& v) {
    if constexpr (std::is_same_v<T, std::int64_t>)
        boost::sort::spreadsort::integer_sort(v.begin(), v.end());
    else
        std::sort(v.begin(), v.end());
}

template <class T>
void run_length(const std::vector<T>& sorted, Tally<T>& out) {
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        out.values.push_back(sorted[i]);
        out.counts.push_back(j - i);
        i = j;
    }
}

// delta_A for A = B: tally the n(n-1)/2 positive differences, then mirror.
template <class T>
Tally<T> mirror_half(const Tally<T>& half, std::size_t n) {
    Tally<T> out;
    out.values.reserve(2 * half.values.size() + 1);
    out.counts.reserve(2 * half.values.size() + 1);
    for (std::size_t k = half.values.size(); k-- > 0;) {
        out.values.push_back(T(-half.values[k]));
        out.counts.push_back(half.counts[k]);
    }
    out.values.push_back(T(0));
    out.counts.push_back(n);
    for (std::size_t k = 0; k < half.values.size(); ++k) {
        out.values.push_back(half.values[k]);
        out.counts.push_back(half.counts[k]);
    }
    return out;
}

template <class T>
Tally<T> tally_self_difference(std::span<const T> a) {
    std::vector<T> pos;
    pos.reserve(a.size() * (a.size() - 1) / 2);
    for (std::size_t j = 1; j < a.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) pos.push_back(T(a[j] - a[i]));
    sort_values(pos);
    Tally<T> half;
    run_length(pos, half);
    pos = {};
    return mirror_half(half, a.size());
}

// Positive differences counted in an array indexed by value.
inline Tally<std::int64_t> tally_self_array(std::span<const std::int64_t> a) {
    const auto span = static_cast<std::size_t>(a.back() - a.front());
    std::vector<std::uint32_t> cells(span + 1, 0);
    for (std::size_t j = 1; j < a.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) ++cells[static_cast<std::size_t>(a[j] - a[i])];
    Tally<std::int64_t> half;
    for (std::size_t k = 1; k <= span; ++k) {
        if (cells[k] == 0) continue;
        half.values.push_back(static_cast<std::int64_t>(k));
        half.counts.push_back(cells[k]);
    }
    cells = {};
    return mirror_half(half, a.size());
}

template <class T>
Tally<T> tally_sorted(std::span<const T> a, std::span<const T> b, RepMode mode) {
    if (a.empty() || b.empty()) return {};
    if (mode == RepMode::difference && a.data() == b.data() && a.size() == b.size())
        return tally_self_difference(a);
    std::vector<T> v;
    v.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) v.push_back(mode == RepMode::sum ? T(x + y) : T(x - y));
    sort_values(v);
    Tally<T> out;
    run_length(v, out);
    return out;
}

struct ValueRange {
    std::int64_t lo = 0;
    std::uint64_t width = 0;  // hi - lo + 1
};

inline ValueRange pair_range(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                             RepMode mode) {
    const std::int64_t lo = mode == RepMode::sum ? a.front() + b.front() : a.front() - b.back();
    const std::int64_t hi = mode == RepMode::sum ? a.back() + b.back() : a.back() - b.front();
    return {lo, static_cast<std::uint64_t>(hi - lo) + 1};
}

inline Tally<std::int64_t> tally_array(std::span<const std::int64_t> a,
                                       std::span<const std::int64_t> b, RepMode mode,
                                       ValueRange range) {
    std::vector<std::uint32_t> cells(range.width, 0);
    if (mode == RepMode::sum) {
        for (auto x : a) {
            const std::int64_t base = x - range.lo;
            for (auto y : b) ++cells[static_cast<std::size_t>(base + y)];
        }
    } else {
        for (auto x : a) {
            const std::int64_t base = x - range.lo;
            for (auto y : b) ++cells[static_cast<std::size_t>(base - y)];
        }
    }
    Tally<std::int64_t> out;
    for (std::uint64_t k = 0; k < range.width; ++k) {
        if (cells[k] == 0) continue;
        out.values.push_back(range.lo + static_cast<std::int64_t>(k));
        out.counts.push_back(cells[k]);
    }
    return out;
}

// The array costs O(range + pairs) against O(pairs log pairs) for sorting.
inline bool prefer_array(ValueRange range, std::size_t pairs) {
    return range.width <= kArrayPathMaxRange && range.width <= 4 * static_cast<std::uint64_t>(pairs) + 4096;
}

}  // namespace detail

/// delta_{A,B} (mode difference) or sigma_{A,B} (mode sum) over ordered pairs.
inline RepFunction rep_function(const IntegerSet& a, const IntegerSet& b, RepMode mode,
                                RepStrategy strategy = RepStrategy::automatic) {
    if (a.empty() || b.empty()) return RepFunction(mode, IntegerSet{}, {});

    if (a.is_narrow() && b.is_narrow()) {
        auto sa = a.narrow();
        auto sb = b.narrow();
        // Same object: keep the span identity so the symmetric path can kick in.
        if (&a == &b || a == b) sb = sa;
        const auto range = detail::pair_range(sa, sb, mode);
        bool use_array = strategy == RepStrategy::counting_array;
        if (strategy == RepStrategy::automatic)
            use_array = detail::prefer_array(range, sa.size() * sb.size());
        if (use_array && range.width > (std::uint64_t{1} << 32))
            throw std::invalid_argument("rep_function: value range too wide for the counting array");
        const bool self_difference = mode == RepMode::difference && sa.data() == sb.data();
        if (strategy == RepStrategy::automatic && self_difference && !use_array) {
            // only the positive half is tallied, so the array costs half as much
            const auto span = static_cast<std::uint64_t>(sa.back() - sa.front());
            if (detail::prefer_array({1, span}, sa.size() * (sa.size() - 1) / 2)) {
                auto t = detail::tally_self_array(sa);
                return RepFunction(mode, IntegerSet(std::move(t.values)), std::move(t.counts));
            }
        }
        auto t = use_array ? detail::tally_array(sa, sb, mode, range)
                           : detail::tally_sorted(sa, sb, mode);
        return RepFunction(mode, IntegerSet(std::move(t.values)), std::move(t.counts));
    }
    if (strategy == RepStrategy::counting_array)
        throw std::invalid_argument("rep_function: counting array needs int64-range sets");

    const auto wa = a.widened();
    std::vector<Int> wb_store;
    std::span<const Int> sb = wa;
    if (!(&a == &b || a == b)) {
        wb_store = b.widened();
        sb = wb_store;
    }
    auto t = detail::tally_sorted<Int>(wa, sb, mode);
    return RepFunction(mode, IntegerSet(std::move(t.values)), std::move(t.counts));
}

inline IntegerSet sumset(const IntegerSet& a, const IntegerSet& b) {
    return rep_function(a, b, RepMode::sum).support();
}

inline IntegerSet diffset(const IntegerSet& a, const IntegerSet& b) {
    return rep_function(a, b, RepMode::difference).support();
}

namespace detail {

template <class T>
std::vector<T> slice_values(std::span<const T> a, const T& s) {
    std::vector<T> out;
    std::size_t j = 0;
    for (const auto& x : a) {
        const T want = T(x - s);
        while (j < a.size() && a[j] < want) ++j;
        if (j == a.size()) break;
        if (a[j] == want) out.push_back(x);
    }
    return out;
}

}  // namespace detail

/// A_s = A ∩ (A + s).
inline IntegerSet slice(const IntegerSet& a, const Int& s) {
    if (a.is_narrow()) {
        // Narrow diameters are at most 2^61, so larger shifts give nothing.
        if (abs(s) > Int(kNarrowLimit) * 2) return IntegerSet{};
        return IntegerSet(detail::slice_values(a.narrow(), static_cast<std::int64_t>(s)));
    }
    const auto w = a.widened();
    return IntegerSet(detail::slice_values<Int>(w, s));
}

namespace detail {

inline constexpr std::uint64_t kBitsetMaxWidth = std::uint64_t{1} << 28;

// |X ∩ (X+s)| = popcount(bits & (bits << s)) over a packed bitset of X.
#if defined(__GNUC__) && defined(__x86_64__) && !defined(__clang__)
#define CONVEXSUM_POPCNT_CLONES __attribute__((target_clones("popcnt", "default")))
#else
#define CONVEXSUM_POPCNT_CLONES
#endif

// popcount(bits & (bits << s)) over the whole bitset.
CONVEXSUM_POPCNT_CLONES
inline std::uint64_t shifted_and_count(const std::uint64_t* bits, std::size_t words, std::uint64_t s) {
    const std::size_t q = static_cast<std::size_t>(s / 64);
    const unsigned r = static_cast<unsigned>(s % 64);
    std::uint64_t total = 0;
    if (r == 0) {
        for (std::size_t w = q; w < words; ++w) total += static_cast<std::uint64_t>(__builtin_popcountll(bits[w] & bits[w - q]));
        return total;
    }
    total += static_cast<std::uint64_t>(__builtin_popcountll(bits[q] & (bits[0] << r)));
    for (std::size_t w = q + 1; w < words; ++w) {
        const std::uint64_t shifted = (bits[w - q] << r) | (bits[w - q - 1] >> (64 - r));
        total += static_cast<std::uint64_t>(__builtin_popcountll(bits[w] & shifted));
    }
    return total;
}

inline std::vector<std::uint64_t> overlap_bitset(std::span<const std::int64_t> x,
                                                 std::span<const std::int64_t> shifts) {
    const std::int64_t lo = x.front();
    const auto width = static_cast<std::uint64_t>(x.back() - lo) + 1;
    const std::size_t words = (width + 63) / 64;
    std::vector<std::uint64_t> bits(words, 0);
    for (auto v : x) {
        const auto k = static_cast<std::uint64_t>(v - lo);
        bits[k / 64] |= std::uint64_t{1} << (k % 64);
    }
    std::vector<std::uint64_t> out(shifts.size(), 0);
    // |X ∩ (X+s)| = |X ∩ (X-s)|; shifts are sorted, so -s (if present) has
    // already been counted when s > 0 is reached.
    for (std::size_t t = 0; t < shifts.size(); ++t) {
        const std::int64_t s = shifts[t];
        if (s > 0) {
            const auto it = std::lower_bound(shifts.begin(), shifts.begin() + t, -s);
            if (it != shifts.begin() + t && *it == -s) {
                out[t] = out[it - shifts.begin()];
                continue;
            }
        }
        const auto mag = static_cast<std::uint64_t>(s < 0 ? -s : s);
        if (mag < width) out[t] = shifted_and_count(bits.data(), words, mag);
    }
    return out;
}

template <class T>
std::vector<std::uint64_t> overlap_merge(std::span<const T> x, std::span<const T> shifts) {
    std::vector<std::uint64_t> out(shifts.size(), 0);
    for (std::size_t t = 0; t < shifts.size(); ++t) {
        const T& s = shifts[t];
        std::size_t i = 0, j = 0;
        std::uint64_t hits = 0;
        // count x_i with x_i - s in X
        while (i < x.size() && j < x.size()) {
            const T want = T(x[i] - s);
            if (x[j] < want) {
                ++j;
            } else {
                if (x[j] == want) ++hits;
                ++i;
            }
        }
        out[t] = hits;
    }
    return out;
}

}  // namespace detail

/// delta_X(s) = |X ∩ (X+s)| for every s in `shifts`, in order.
inline std::vector<std::uint64_t> self_overlaps(const IntegerSet& x, const IntegerSet& shifts) {
    if (x.empty() || shifts.empty()) return std::vector<std::uint64_t>(shifts.size(), 0);
    if (x.is_narrow() && shifts.is_narrow()) {
        auto sx = x.narrow();
        const auto width = static_cast<std::uint64_t>(sx.back() - sx.front()) + 1;
        if (width <= detail::kBitsetMaxWidth) return detail::overlap_bitset(sx, shifts.narrow());
    }
    return detail::visit_pair(x, shifts, [](auto sx, auto ss) { return detail::overlap_merge(sx, ss); });
}

}  // namespace convexsum
