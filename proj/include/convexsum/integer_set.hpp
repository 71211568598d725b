// Exact finite sets of integers.
//
// An IntegerSet is a strictly increasing sequence of arbitrary-precision
// integers. Sets whose elements all lie in [-2^60, 2^60] are stored as int64
// so that the hot kernels run on machine words; everything else is stored as
// cpp_int. The representation is canonical, so two equal sets always hold
// the same alternative.
#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace convexsum {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Magnitude bound for the int64 representation. Sums and differences of two
/// such values, and of one such value with a value of twice the bound, still
/// fit in int64.
inline constexpr std::int64_t kNarrowLimit = std::int64_t{1} << 60;

namespace detail {

inline bool fits_narrow(std::int64_t v) { return v >= -kNarrowLimit && v <= kNarrowLimit; }
inline bool fits_narrow(const Int& v) { return v >= -kNarrowLimit && v <= kNarrowLimit; }

template <class T>
bool strictly_increasing(std::span<const T> v) {
    return std::adjacent_find(v.begin(), v.end(),
                              [](const T& x, const T& y) { return !(x < y); }) == v.end();
}

inline Int to_int(std::int64_t v) { return Int(v); }
inline const Int& to_int(const Int& v) { return v; }

inline Int to_int(unsigned __int128 v) {
    Int r = static_cast<std::uint64_t>(v >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(v);
    return r;
}

inline std::string rational_string(const Rational& q) {
    const auto den = boost::multiprecision::denominator(q);
    if (den == 1) return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

}  // namespace detail

class IntegerSet {
public:
    using Narrow = std::vector<std::int64_t>;
    using Wide = std::vector<Int>;

    IntegerSet() = default;

    IntegerSet(std::initializer_list<long long> values)
        : IntegerSet(Narrow(values.begin(), values.end())) {}

    /// Takes ownership of an already strictly increasing sequence.
    explicit IntegerSet(Narrow values) : data_(std::move(values)) {
        if (!detail::strictly_increasing<std::int64_t>(std::get<Narrow>(data_)))
            throw std::invalid_argument("IntegerSet: elements must be strictly increasing");
        canonicalize();
    }

    explicit IntegerSet(Wide values) : data_(std::move(values)) {
        if (!detail::strictly_increasing<Int>(std::get<Wide>(data_)))
            throw std::invalid_argument("IntegerSet: elements must be strictly increasing");
        canonicalize();
    }

    static IntegerSet from_unsorted(Narrow values) {
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        return IntegerSet(std::move(values));
    }

    static IntegerSet from_unsorted(Wide values) {
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        return IntegerSet(std::move(values));
    }

    std::size_t size() const {
        return std::visit([](const auto& v) { return v.size(); }, data_);
    }
    bool empty() const { return size() == 0; }
    bool is_narrow() const { return std::holds_alternative<Narrow>(data_); }

    std::span<const std::int64_t> narrow() const { return std::get<Narrow>(data_); }
    std::span<const Int> wide() const { return std::get<Wide>(data_); }

    /// Copy of the elements as cpp_int regardless of storage.
    Wide widened() const {
        if (!is_narrow()) return std::get<Wide>(data_);
        const auto& v = std::get<Narrow>(data_);
        return Wide(v.begin(), v.end());
    }

    /// Calls f with a span over the stored elements (int64 or cpp_int).
    template <class F>
    decltype(auto) visit(F&& f) const {
        return std::visit(
            [&](const auto& v) -> decltype(auto) {
                using T = typename std::decay_t<decltype(v)>::value_type;
                return f(std::span<const T>(v));
            },
            data_);
    }

    Int operator[](std::size_t i) const {
        return std::visit([i](const auto& v) { return detail::to_int(v[i]); }, data_);
    }
    Int front() const { return (*this)[0]; }
    Int back() const { return (*this)[size() - 1]; }

    std::optional<std::size_t> index_of(const Int& x) const {
        return visit([&](auto s) -> std::optional<std::size_t> {
            using T = typename decltype(s)::value_type;
            if constexpr (std::is_same_v<T, std::int64_t>) {
                if (!detail::fits_narrow(x)) return std::nullopt;
                const auto key = static_cast<std::int64_t>(x);
                auto it = std::lower_bound(s.begin(), s.end(), key);
                if (it == s.end() || *it != key) return std::nullopt;
                return static_cast<std::size_t>(it - s.begin());
            } else {
                auto it = std::lower_bound(s.begin(), s.end(), x);
                if (it == s.end() || *it != x) return std::nullopt;
                return static_cast<std::size_t>(it - s.begin());
            }
        });
    }

    bool contains(const Int& x) const { return index_of(x).has_value(); }

    bool is_subset_of(const IntegerSet& other) const {
        if (size() > other.size()) return false;
        if (is_narrow() && other.is_narrow()) {
            auto a = narrow();
            auto b = other.narrow();
            return std::includes(b.begin(), b.end(), a.begin(), a.end());
        }
        const auto a = widened();
        const auto b = other.widened();
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    }

    IntegerSet translated(const Int& t) const {
        Wide out;
        out.reserve(size());
        visit([&](auto s) {
            for (const auto& x : s) out.push_back(detail::to_int(x) + t);
        });
        return IntegerSet(std::move(out));
    }

    IntegerSet negated() const {
        Wide out;
        out.reserve(size());
        visit([&](auto s) {
            for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back(-detail::to_int(*it));
        });
        return IntegerSet(std::move(out));
    }

    std::string to_string() const {
        std::ostringstream os;
        os << '{';
        visit([&](auto s) {
            for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s[i];
        });
        os << '}';
        return os.str();
    }

    friend bool operator==(const IntegerSet&, const IntegerSet&) = default;

private:
    void canonicalize() {
        if (auto* n = std::get_if<Narrow>(&data_)) {
            if (!n->empty() && (!detail::fits_narrow(n->front()) || !detail::fits_narrow(n->back())))
                data_ = Wide(n->begin(), n->end());
            return;
        }
        auto& w = std::get<Wide>(data_);
        if (w.empty() || (detail::fits_narrow(w.front()) && detail::fits_narrow(w.back()))) {
            Narrow n;
            n.reserve(w.size());
            for (const auto& x : w) n.push_back(static_cast<std::int64_t>(x));
            data_ = std::move(n);
        }
    }

    std::variant<Narrow, Wide> data_;
};

namespace detail {

/// Runs f on both sets with a common element type: int64 when both are
/// narrow, cpp_int otherwise.
template <class F>
decltype(auto) visit_pair(const IntegerSet& a, const IntegerSet& b, F&& f) {
    if (a.is_narrow() && b.is_narrow()) return f(a.narrow(), b.narrow());
    IntegerSet::Wide wa, wb;
    std::span<const Int> sa, sb;
    if (a.is_narrow()) {
        wa = a.widened();
        sa = wa;
    } else {
        sa = a.wide();
    }
    if (b.is_narrow()) {
        wb = b.widened();
        sb = wb;
    } else {
        sb = b.wide();
    }
    return f(sa, sb);
}

}  // namespace detail

}  // namespace convexsum
