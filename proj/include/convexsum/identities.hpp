// Zero-tolerance checks of the unconditional identities and inequalities:
// the slice identity sum_s E(A, A_s) = E_3(A), the popular-set mass and
// energy bounds, the Cauchy-Schwarz lower bound for sum_s |A ± A_s|, the
// three energy formulas, and the containments A ± A_s ⊆ (D or S) ∩ shift.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "convexsum/check_result.hpp"
#include "convexsum/energy.hpp"
#include "convexsum/integer_set.hpp"
#include "convexsum/rng.hpp"
#include "convexsum/setcore.hpp"

namespace convexsum {

enum class Sign { plus, minus };

inline std::string_view sign_name(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

/// |A_s|, |A + A_s| and |A - A_s| for every s in A - A (value order).
struct SliceTable {
    IntegerSet differences;
    std::vector<std::uint64_t> slice_size;
    std::vector<std::uint64_t> plus_size;
    std::vector<std::uint64_t> minus_size;
};

namespace detail {

inline constexpr std::uint64_t kStampMaxWidth = std::uint64_t{1} << 24;

// Distinct counting over a fixed int64 window without clearing between rounds.
class StampSet {
public:
    StampSet(std::int64_t lo, std::uint64_t width) : lo_(lo), stamps_(width, 0) {}

    void reset() {
        if (++epoch_ == 0) {
            std::fill(stamps_.begin(), stamps_.end(), 0);
            epoch_ = 1;
        }
        count_ = 0;
    }

    void insert(std::int64_t v) {
        auto& st = stamps_[static_cast<std::size_t>(v - lo_)];
        if (st != epoch_) {
            st = epoch_;
            ++count_;
        }
    }

    std::uint64_t count() const { return count_; }

private:
    std::int64_t lo_;
    std::vector<std::uint32_t> stamps_;
    std::uint32_t epoch_ = 0;
    std::uint64_t count_ = 0;
};

inline std::string short_set(const IntegerSet& s, std::size_t limit = 12) {
    if (s.size() <= limit) return s.to_string();
    std::string out = "{";
    for (std::size_t i = 0; i < limit; ++i) out += (i ? " " : "") + s[i].str();
    return out + " ... (" + std::to_string(s.size()) + " elements)}";
}

}  // namespace detail

inline SliceTable slice_table(const IntegerSet& a, const RepFunction& delta) {
    SliceTable t;
    t.differences = delta.support();
    t.slice_size.assign(delta.counts().begin(), delta.counts().end());
    const std::size_t m = t.differences.size();
    t.plus_size.assign(m, 0);
    t.minus_size.assign(m, 0);
    if (m == 0) return t;

    // A - A is symmetric about 0, so index mid holds s = 0 and index
    // m-1-k holds -s. A_{-s} = A_s - s has the same sumset sizes.
    const std::size_t mid = m / 2;

    bool done = false;
    if (a.is_narrow()) {
        auto sa = a.narrow();
        const auto diam = static_cast<std::uint64_t>(sa.back() - sa.front());
        if (2 * diam + 1 <= detail::kStampMaxWidth) {
            detail::StampSet plus(2 * sa.front(), 2 * diam + 1);
            detail::StampSet minus(sa.front() - sa.back(), 2 * diam + 1);
            auto sd = t.differences.narrow();
            for (std::size_t k = mid; k < m; ++k) {
                const auto part = detail::slice_values(sa, sd[k]);
                plus.reset();
                minus.reset();
                for (auto x : sa)
                    for (auto y : part) {
                        plus.insert(x + y);
                        minus.insert(x - y);
                    }
                t.plus_size[k] = t.plus_size[m - 1 - k] = plus.count();
                t.minus_size[k] = t.minus_size[m - 1 - k] = minus.count();
            }
            done = true;
        }
    }
    if (!done) {
        for (std::size_t k = mid; k < m; ++k) {
            const auto part = slice(a, t.differences[k]);
            t.plus_size[k] = t.plus_size[m - 1 - k] = sumset(a, part).size();
            t.minus_size[k] = t.minus_size[m - 1 - k] = diffset(a, part).size();
        }
    }
    return t;
}

inline SliceTable slice_table(const IntegerSet& a) {
    return slice_table(a, rep_function(a, a, RepMode::difference));
}

/// Everything the checks share for one set A.
struct SetContext {
    IntegerSet set;
    RepFunction delta;  // delta_A
    IntegerSet sums;    // A + A
    Int e3;
    SliceTable slices;

    explicit SetContext(IntegerSet a)
        : set(std::move(a)),
          delta(rep_function(set, set, RepMode::difference)),
          sums(sumset(set, set)),
          e3(energy3(delta)),
          slices(slice_table(set, delta)) {}

    std::size_t n() const { return set.size(); }
    const IntegerSet& differences() const { return delta.support(); }
};

namespace detail {

// sum over s in subset of values[index of s in support]^power; throws if
// subset is not contained in support.
inline Int sum_over(const IntegerSet& subset, const IntegerSet& support,
                    std::span<const std::uint64_t> values, unsigned power = 1) {
    u128 acc = 0;
    std::size_t hits = 0;
    for_each_common(subset, support, [&](std::size_t, std::size_t j) {
        u128 term = 1;
        for (unsigned p = 0; p < power; ++p) term *= values[j];
        acc += term;
        ++hits;
    });
    if (hits != subset.size()) {
        for (std::size_t i = 0; i < subset.size(); ++i)
            if (!support.contains(subset[i]))
                throw std::invalid_argument("element " + subset[i].str() + " is not in A-A");
    }
    return to_int(acc);
}

// sum_{s in A-A} E(A, A_s), each term as an incremental sum of squares of
// delta_{A,A_s} over a reusable counter array.
inline Int slice_energy_total(const IntegerSet& a, const IntegerSet& differences) {
    if (a.is_narrow()) {
        auto sa = a.narrow();
        const std::int64_t lo = sa.front() - sa.back();
        const auto width = static_cast<std::uint64_t>(sa.back() - sa.front()) * 2 + 1;
        if (width <= kStampMaxWidth) {
            std::vector<std::uint32_t> cells(width, 0);
            u128 total = 0;
            for (auto s : differences.narrow()) {
                const auto part = slice_values(sa, s);
                for (auto x : sa)
                    for (auto y : part) total += 2 * static_cast<u128>(cells[x - y - lo]++) + 1;
                for (auto x : sa)
                    for (auto y : part) cells[x - y - lo] = 0;
            }
            return to_int(total);
        }
    }
    Int total = 0;
    for (std::size_t k = 0; k < differences.size(); ++k)
        total += energy(a, slice(a, differences[k]));
    return total;
}

}  // namespace detail

inline CheckResult check_e3_identity(const SetContext& ctx) {
    return make_check("e3_identity", detail::slice_energy_total(ctx.set, ctx.differences()),
                      Relation::equal, ctx.e3, "sum_s E(A,A_s) differs from E3(A)");
}

/// sum_{s in A-A} E(A, A_s) = E_3(A).
inline CheckResult check_e3_identity(const IntegerSet& a) {
    if (a.empty()) throw std::invalid_argument("check_e3_identity: empty set");
    const auto delta = rep_function(a, a, RepMode::difference);
    return make_check("e3_identity", detail::slice_energy_total(a, delta.support()), Relation::equal,
                      energy3(delta), "sum_s E(A,A_s) differs from E3(A)");
}

inline CheckResult check_popular_mass(const SetContext& ctx) {
    const auto p = popular_set(ctx.delta, ctx.n(), ctx.differences().size(), PopularKind::P);
    const Int mass = detail::sum_over(p.members, ctx.differences(), ctx.delta.counts());
    const Int n = ctx.n();
    return make_check("popular_mass", 2 * mass, Relation::greater, n * n,
                      "popular differences carry at most half of |A|^2");
}

/// 2 sum_{s in P} |A_s| > |A|^2.
inline CheckResult check_popular_mass(const IntegerSet& a) {
    if (a.empty()) throw std::invalid_argument("check_popular_mass: empty set");
    return check_popular_mass(SetContext(a));
}

inline CheckResult check_popular_energy(const SetContext& ctx) {
    const auto p = popular_set(ctx.delta, ctx.n(), ctx.sums.size(), PopularKind::P_prime);
    const Int sq = detail::sum_over(p.members, ctx.differences(), ctx.delta.counts(), 2);
    const Int n = ctx.n();
    return make_check("popular_energy", n * n * n * n, Relation::less_equal,
                      2 * Int(ctx.sums.size()) * sq, "P' misses too much energy");
}

/// |A|^4 <= 2 |A+A| sum_{s in P'} |A_s|^2.
inline CheckResult check_popular_energy(const IntegerSet& a) {
    if (a.empty()) throw std::invalid_argument("check_popular_energy: empty set");
    return check_popular_energy(SetContext(a));
}

inline CheckResult check_cs_lower(const SetContext& ctx, const IntegerSet& p_star, Sign sign,
                                  std::string label = {}) {
    const auto& t = ctx.slices;
    const Int mass = detail::sum_over(p_star, t.differences, t.slice_size);
    const Int spread =
        detail::sum_over(p_star, t.differences, sign == Sign::plus ? t.plus_size : t.minus_size);
    const Int n = ctx.n();
    std::string name = "cs_lower_" + std::string(sign_name(sign));
    if (!label.empty()) name += "[" + label + "]";
    return make_check(std::move(name), ctx.e3 * spread, Relation::greater_equal, mass * mass * n * n,
                      "P_star=" + detail::short_set(p_star));
}

/// E_3(A) * sum_{s in P*} |A ± A_s| >= (sum_{s in P*} |A_s|)^2 |A|^2, the
/// integer form of sum |A ± A_s| >= eta^2 |A|^6 / E_3(A).
inline CheckResult check_cs_lower(const IntegerSet& a, const IntegerSet& p_star, Sign sign) {
    if (a.empty()) {
        if (!p_star.empty()) throw std::invalid_argument("element " + p_star[0].str() + " is not in A-A");
        return make_check("cs_lower_" + std::string(sign_name(sign)), 0, Relation::greater_equal, 0);
    }
    return check_cs_lower(SetContext(a), p_star, sign);
}

/// Both equalities sum delta_A delta_B = sum delta_{A,B}^2 = sum sigma_{A,B}^2.
inline std::vector<CheckResult> check_energy_formulas(const IntegerSet& a, const IntegerSet& b) {
    const auto f = energy_formulas(a, b);
    return {make_check("energy_delta_vs_diff_square", f.delta_product, Relation::equal,
                       f.difference_square),
            make_check("energy_delta_vs_sum_square", f.delta_product, Relation::equal,
                       f.sum_square)};
}

inline std::vector<CheckResult> check_cs_energy(const SetContext& ctx) {
    const Int e = energy_from(ctx.delta);
    const Int n = ctx.n();
    const Int n4 = n * n * n * n;
    return {make_check("cs_energy_sum", e * ctx.sums.size(), Relation::greater_equal, n4),
            make_check("cs_energy_diff", e * ctx.differences().size(), Relation::greater_equal, n4)};
}

/// E(A,A) |A+A| >= |A|^4 and E(A,A) |A-A| >= |A|^4.
inline std::vector<CheckResult> check_cs_energy(const IntegerSet& a) { return check_cs_energy(SetContext(a)); }

inline std::vector<CheckResult> check_containments(const SetContext& ctx) {
    const auto& d = ctx.differences();
    const auto& s_set = ctx.sums;
    const auto delta_d = self_overlaps(d, d);
    const auto delta_s = self_overlaps(s_set, d);
    std::uint64_t bad_minus = 0, bad_plus = 0;
    std::string first_minus, first_plus;
    for (std::size_t k = 0; k < d.size(); ++k) {
        const Int s = d[k];
        const auto part = slice(ctx.set, s);
        const auto minus = diffset(ctx.set, part);
        const auto plus = sumset(ctx.set, part);
        bool ok_minus = minus.size() <= delta_d[k];
        for (std::size_t i = 0; ok_minus && i < minus.size(); ++i) {
            const Int x = minus[i];
            ok_minus = d.contains(x) && d.contains(x + s);
        }
        bool ok_plus = plus.size() <= delta_s[k];
        for (std::size_t i = 0; ok_plus && i < plus.size(); ++i) {
            const Int x = plus[i];
            ok_plus = s_set.contains(x) && s_set.contains(x - s);
        }
        if (!ok_minus && bad_minus++ == 0) first_minus = "s=" + s.str();
        if (!ok_plus && bad_plus++ == 0) first_plus = "s=" + s.str();
    }
    return {make_check("containment_minus", bad_minus, Relation::equal, 0, first_minus),
            make_check("containment_plus", bad_plus, Relation::equal, 0, first_plus)};
}

/// For every s: A - A_s ⊆ D ∩ (D - s) and A + A_s ⊆ S ∩ (S + s), with the
/// size bounds |A - A_s| <= delta_D(s), |A + A_s| <= delta_S(s). Each result
/// counts the violating s.
inline std::vector<CheckResult> check_containments(const IntegerSet& a) {
    return check_containments(SetContext(a));
}

struct SubsetChoice {
    std::string label;
    IntegerSet members;
};

/// The deterministic choices (empty, {0}, P, P', A-A) followed by
/// `random_count` uniformly random subsets of A-A.
inline std::vector<SubsetChoice> cs_subsets(const SetContext& ctx, std::uint64_t seed,
                                            std::size_t random_count = 20) {
    std::vector<SubsetChoice> out;
    const auto& d = ctx.differences();
    out.push_back({"empty", IntegerSet{}});
    out.push_back({"zero", IntegerSet{0}});
    out.push_back({"P", popular_set(ctx.delta, ctx.n(), d.size(), PopularKind::P).members});
    out.push_back({"P_prime", popular_set(ctx.delta, ctx.n(), ctx.sums.size(), PopularKind::P_prime).members});
    out.push_back({"full", d});
    for (std::size_t k = 0; k < random_count; ++k) {
        Rng rng(derive_seed(seed, k));
        d.visit([&](auto s) {
            using T = typename decltype(s)::value_type;
            std::vector<T> pick;
            for (const auto& x : s)
                if (rng.coin()) pick.push_back(x);
            out.push_back({"random" + std::to_string(k), IntegerSet(std::move(pick))});
        });
    }
    return out;
}

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::size_t random_subsets = 20;
    std::size_t containment_max_n = 64;  // containments are O(n^3 log n)
};

/// Every unconditional check on one nonempty set, in a fixed order.
inline std::vector<CheckResult> verify_set(const SetContext& ctx, const VerifyOptions& opt = {}) {
    std::vector<CheckResult> out;
    out.push_back(check_e3_identity(ctx));
    out.push_back(check_popular_mass(ctx));
    out.push_back(check_popular_energy(ctx));
    for (auto& r : check_energy_formulas(ctx.set, ctx.set)) out.push_back(std::move(r));
    for (auto& r : check_cs_energy(ctx)) out.push_back(std::move(r));
    for (const auto& choice : cs_subsets(ctx, opt.seed, opt.random_subsets))
        for (Sign sign : {Sign::plus, Sign::minus})
            out.push_back(check_cs_lower(ctx, choice.members, sign, choice.label));
    if (ctx.n() <= opt.containment_max_n)
        for (auto& r : check_containments(ctx)) out.push_back(std::move(r));
    return out;
}

inline std::vector<CheckResult> verify_set(const IntegerSet& a, const VerifyOptions& opt = {}) {
    if (a.empty()) throw std::invalid_argument("verify_set: empty set");
    return verify_set(SetContext(a), opt);
}

inline bool all_hold(std::span<const CheckResult> results) {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.holds; });
}

}  // namespace convexsum
