// Points on the grid (Q+I) x (A'+B) and the translates
// l_{alpha,beta} = {(q + alpha, a_q + beta) : q in Q} of the graph of a convex
// set, where I = {1..|A|} and Q holds the (1-based) positions of A' inside A.
// Any two translates share at most one point because consecutive gaps of A
// strictly increase.
#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "convexsum/check_result.hpp"
#include "convexsum/convexgen.hpp"
#include "convexsum/parallel.hpp"
#include "convexsum/rng.hpp"
#include "convexsum/setcore.hpp"

namespace convexsum {

struct Point {
    std::int64_t x = 0;
    Int y;

    friend bool operator==(const Point&, const Point&) = default;
    friend std::strong_ordering operator<=>(const Point& p, const Point& q) {
        if (auto c = p.x <=> q.x; c != 0) return c;
        return p.y < q.y ? std::strong_ordering::less
               : q.y < p.y ? std::strong_ordering::greater
                           : std::strong_ordering::equal;
    }
};

/// Sorted, duplicate-free.
class PointSet {
public:
    PointSet() = default;

    static PointSet from_unsorted(std::vector<Point> pts) {
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        PointSet out;
        out.points_ = std::move(pts);
        return out;
    }

    const std::vector<Point>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

    /// Position of p, or size() if absent.
    std::size_t find(const Point& p) const {
        auto it = std::lower_bound(points_.begin(), points_.end(), p);
        return it != points_.end() && *it == p ? static_cast<std::size_t>(it - points_.begin()) : size();
    }
    bool contains(const Point& p) const { return find(p) != size(); }

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::vector<Point> points_;
};

struct Curve {
    std::int64_t alpha = 0;
    Int beta;
    std::vector<std::size_t> indices;  // Q, 1-based positions in A
    std::vector<Point> points;         // sorted by x
};

struct PseudoLineSystem {
    std::vector<std::pair<std::size_t, Int>> base_curve;  // q -> a_q over Q
    std::vector<Curve> curves;
};

struct IncidenceInstance {
    PointSet points;
    PseudoLineSystem system;
    std::size_t index_range = 0;  // |I| = |A|
};

inline Curve make_curve(const PseudoLineSystem& sys, std::int64_t alpha, const Int& beta) {
    Curve c;
    c.alpha = alpha;
    c.beta = beta;
    for (const auto& [q, f] : sys.base_curve) {
        c.indices.push_back(q);
        c.points.push_back({static_cast<std::int64_t>(q) + alpha, f + beta});
    }
    return c;
}

inline IncidenceInstance build_system(const IntegerSet& a, const IntegerSet& a_prime, const IntegerSet& b) {
    if (!is_convex(a)) throw std::invalid_argument("build_system: A is not convex");
    if (a_prime.empty() || b.empty()) throw std::invalid_argument("build_system: A' and B must be nonempty");
    if (!a_prime.is_subset_of(a)) throw std::invalid_argument("build_system: A' is not a subset of A");

    IncidenceInstance out;
    out.index_range = a.size();
    auto& sys = out.system;
    for (std::size_t i = 0; i < a_prime.size(); ++i) {
        const auto pos = a.index_of(a_prime[i]);
        sys.base_curve.emplace_back(*pos + 1, a_prime[i]);
    }
    const auto alphas = static_cast<std::int64_t>(a.size());
    sys.curves.reserve(a.size() * b.size());
    for (std::int64_t alpha = 1; alpha <= alphas; ++alpha)
        for (std::size_t k = 0; k < b.size(); ++k) sys.curves.push_back(make_curve(sys, alpha, b[k]));

    // (Q + I) x (A' + B)
    std::vector<std::int64_t> abscissas;
    for (const auto& [q, f] : sys.base_curve)
        for (std::int64_t i = 1; i <= alphas; ++i) abscissas.push_back(static_cast<std::int64_t>(q) + i);
    std::sort(abscissas.begin(), abscissas.end());
    abscissas.erase(std::unique(abscissas.begin(), abscissas.end()), abscissas.end());
    const auto ordinates = sumset(a_prime, b);
    std::vector<Point> pts;
    pts.reserve(abscissas.size() * ordinates.size());
    for (auto x : abscissas)
        for (std::size_t k = 0; k < ordinates.size(); ++k) pts.push_back({x, ordinates[k]});
    out.points = PointSet::from_unsorted(std::move(pts));
    return out;
}

namespace detail {

// Number of points of each curve inside P, summed over curves [lo, hi).
inline std::uint64_t incidences_in(const PointSet& p, const PseudoLineSystem& sys, std::size_t lo,
                                   std::size_t hi, std::vector<std::uint32_t>* degree = nullptr) {
    std::uint64_t total = 0;
    for (std::size_t c = lo; c < hi; ++c)
        for (const auto& pt : sys.curves[c].points) {
            const auto k = p.find(pt);
            if (k == p.size()) continue;
            ++total;
            if (degree) ++(*degree)[k];
        }
    return total;
}

}  // namespace detail

/// |{(p, l) : p in P, l in L, p on l}|.
inline std::uint64_t count_incidences(const PointSet& p, const PseudoLineSystem& sys, unsigned jobs = 1) {
    if (p.empty() || sys.curves.empty()) return 0;
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(jobs, sys.curves.size()));
    std::vector<std::uint64_t> partial(chunks, 0);
    const std::size_t per = (sys.curves.size() + chunks - 1) / chunks;
    detail::parallel_for(chunks, jobs, [&](std::size_t k) {
        const std::size_t lo = k * per, hi = std::min(sys.curves.size(), lo + per);
        if (lo < hi) partial[k] = detail::incidences_in(p, sys, lo, hi);
    });
    return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

struct PseudoLineCheck {
    bool holds = true;
    bool sampled = false;
    std::uint64_t pairs_examined = 0;
    std::string witness;  // first offending pair, when one is found
};

inline constexpr std::size_t kExhaustivePairLimit = 4096;
inline constexpr std::uint64_t kSampledPairs = 1'000'000;
inline constexpr std::uint64_t kSampleSeed = 0x5eed;

namespace detail {

inline std::size_t shared_points(const Curve& c, const Curve& d) {
    std::size_t i = 0, j = 0, hits = 0;
    while (i < c.points.size() && j < d.points.size()) {
        if (c.points[i] < d.points[j])
            ++i;
        else if (d.points[j] < c.points[i])
            ++j;
        else {
            ++hits;
            ++i;
            ++j;
        }
    }
    return hits;
}

inline std::string pair_witness(const PseudoLineSystem& sys, std::size_t i, std::size_t j) {
    const auto& c = sys.curves[i];
    const auto& d = sys.curves[j];
    return "curves (" + std::to_string(c.alpha) + "," + c.beta.str() + ") and (" + std::to_string(d.alpha) + "," +
           d.beta.str() + ") share " + std::to_string(shared_points(c, d)) + " points";
}

}  // namespace detail

/// Every pair of distinct curves meets in at most one point. Exhaustive up to
/// kExhaustivePairLimit curves (via point co-occurrence), sampled above.
inline PseudoLineCheck verify_pseudoline(const PseudoLineSystem& sys) {
    PseudoLineCheck out;
    const std::size_t m = sys.curves.size();
    if (m <= kExhaustivePairLimit) {
        out.pairs_examined = static_cast<std::uint64_t>(m) * (m - (m > 0)) / 2;
        std::vector<std::pair<const Point*, std::uint32_t>> incidences;
        for (std::uint32_t c = 0; c < m; ++c)
            for (const auto& pt : sys.curves[c].points) incidences.emplace_back(&pt, c);
        std::sort(incidences.begin(), incidences.end(), [](const auto& u, const auto& v) {
            if (auto cmp = *u.first <=> *v.first; cmp != 0) return cmp < 0;
            return u.second < v.second;
        });
        std::vector<std::uint64_t> pairs;
        for (std::size_t lo = 0; lo < incidences.size();) {
            std::size_t hi = lo + 1;
            while (hi < incidences.size() && *incidences[hi].first == *incidences[lo].first) ++hi;
            for (std::size_t i = lo; i < hi; ++i)
                for (std::size_t j = i + 1; j < hi; ++j)
                    pairs.push_back((std::uint64_t{incidences[i].second} << 32) | incidences[j].second);
            lo = hi;
        }
        std::sort(pairs.begin(), pairs.end());
        const auto dup = std::adjacent_find(pairs.begin(), pairs.end());
        if (dup != pairs.end()) {
            out.holds = false;
            out.witness = detail::pair_witness(sys, *dup >> 32, *dup & 0xffffffffu);
        }
        return out;
    }
    out.sampled = true;
    Rng rng(kSampleSeed);
    for (std::uint64_t k = 0; k < kSampledPairs; ++k) {
        const auto i = rng.uniform(0, m - 1);
        auto j = rng.uniform(0, m - 2);
        if (j >= i) ++j;
        ++out.pairs_examined;
        if (detail::shared_points(sys.curves[i], sys.curves[j]) > 1) {
            out.holds = false;
            out.witness = detail::pair_witness(sys, std::min(i, j), std::max(i, j));
            break;
        }
    }
    return out;
}

/// I(P, L) / (|P|^{2/3} |L|^{2/3} + |P| + |L|).
inline double st_ratio(const PointSet& p, const PseudoLineSystem& sys, unsigned jobs = 1) {
    const auto check = verify_pseudoline(sys);
    if (!check.holds) throw std::invalid_argument("st_ratio: not a pseudo-line system: " + check.witness);
    if (p.empty()) return 0;
    const double np = static_cast<double>(p.size());
    const double nl = static_cast<double>(sys.curves.size());
    const double bound = std::cbrt(np * np * nl * nl) + np + nl;
    return static_cast<double>(count_incidences(p, sys, jobs)) / bound;
}

/// Points of P lying on at least tau curves.
inline PointSet rich_points(const PointSet& p, const PseudoLineSystem& sys, std::uint64_t tau) {
    if (tau == 0) throw std::invalid_argument("rich_points: tau must be at least 1");
    std::vector<std::uint32_t> degree(p.size(), 0);
    detail::incidences_in(p, sys, 0, sys.curves.size(), &degree);
    std::vector<Point> out;
    for (std::size_t k = 0; k < p.size(); ++k)
        if (degree[k] >= tau) out.push_back(p.points()[k]);
    return PointSet::from_unsorted(std::move(out));
}

/// I(P_tau, L) >= tau |P_tau|.
inline CheckResult check_richness(const PointSet& rich, const PseudoLineSystem& sys, std::uint64_t tau) {
    return make_check("richness[tau=" + std::to_string(tau) + "]", Int(count_incidences(rich, sys)),
                      Relation::greater_equal, Int(tau) * Int(rich.size()));
}

/// Ordinates x in A'+B against the rich points above them. A representation
/// x = a_q + beta puts (X, x) on the curves with alpha = X - q in I, so an
/// ordinate with sigma_{A',B}(x) >= 2 tau - 1 contributes at least |I| rich
/// points: lhs = |I| * #{x : sigma(x) >= 2 tau - 1} <= rhs = |P_tau|.
/// `plain_count` is #{x : sigma(x) >= tau}, reported next to |P_tau| / |I|.
struct OrdinateReport {
    CheckResult check;
    std::size_t plain_count = 0;
};

inline OrdinateReport check_ordinate_richness(const IncidenceInstance& inst, const IntegerSet& a_prime,
                                              const IntegerSet& b, std::uint64_t tau, std::size_t rich_size) {
    if (tau == 0) throw std::invalid_argument("check_ordinate_richness: tau must be at least 1");
    const auto sigma = rep_function(a_prime, b, RepMode::sum);
    std::size_t strong = 0, plain = 0;
    for (auto c : sigma.counts()) {
        strong += c >= 2 * tau - 1;
        plain += c >= tau;
    }
    OrdinateReport out{make_check("ordinate_richness[tau=" + std::to_string(tau) + "]",
                                  Int(strong) * Int(inst.index_range), Relation::less_equal, Int(rich_size)),
                       plain};
    return out;
}

/// One line per curve: alpha beta q1 q2 ...
inline void write_curves(std::ostream& out, const PseudoLineSystem& sys) {
    for (const auto& c : sys.curves) {
        out << c.alpha << ' ' << c.beta;
        for (auto q : c.indices) out << ' ' << q;
        out << '\n';
    }
}

/// One point per line, "x y", with optional '#' comment lines first.
inline void write_points(std::ostream& out, const PointSet& p, std::span<const std::string> comments = {}) {
    for (const auto& c : comments) out << "# " << c << '\n';
    for (const auto& pt : p.points()) out << pt.x << ' ' << pt.y << '\n';
}

}  // namespace convexsum
