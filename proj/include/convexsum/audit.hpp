// Measured constants for the asymptotic statements about convex sets, and a
// step-by-step trace of the argument bounding |A-A| and |A+A| from below.
//
// Everything is computed over the integers. Logarithms (natural) enter only
// when a report quantity is formed.
#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "convexsum/check_result.hpp"
#include "convexsum/convexgen.hpp"
#include "convexsum/energy.hpp"
#include "convexsum/identities.hpp"
#include "convexsum/parallel.hpp"
#include "convexsum/setcore.hpp"

namespace convexsum {

enum class Statement { lcon, core3, lpop_add, lpop_tau, soly, thm_minus, thm_plus, thm_mixed };

inline constexpr std::array kAllStatements{Statement::lcon,     Statement::core3,     Statement::lpop_add,
                                           Statement::lpop_tau, Statement::soly,      Statement::thm_minus,
                                           Statement::thm_plus, Statement::thm_mixed};

inline std::string_view statement_name(Statement s) {
    switch (s) {
        case Statement::lcon: return "lcon";
        case Statement::core3: return "core3";
        case Statement::lpop_add: return "lpop_add";
        case Statement::lpop_tau: return "lpop_tau";
        case Statement::soly: return "soly";
        case Statement::thm_minus: return "thm_minus";
        case Statement::thm_plus: return "thm_plus";
        case Statement::thm_mixed: return "thm_mixed";
    }
    return "?";
}

inline Statement parse_statement(std::string_view name) {
    for (auto s : kAllStatements)
        if (statement_name(s) == name) return s;
    throw std::invalid_argument("unknown statement '" + std::string(name) + "'");
}

/// Six significant digits, the precision every report uses.
inline std::string format_constant(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

inline double to_double(const Int& x) { return x.convert_to<double>(); }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

struct ConstantReport {
    Statement statement = Statement::lcon;
    std::string family;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double constant = 0;
    std::string detail;
};

namespace detail {

inline void require_convex(const IntegerSet& a, std::string_view op) {
    if (!is_convex(a)) throw std::invalid_argument(std::string(op) + ": set is not convex");
}

inline void require_log_size(const IntegerSet& a, std::string_view op) {
    if (a.size() < 3) throw std::invalid_argument(std::string(op) + ": need |A| >= 3");
}

inline ConstantReport make_report(Statement s, std::size_t n, double c, std::string detail) {
    ConstantReport r;
    r.statement = s;
    r.n = n;
    r.constant = c;
    r.detail = std::move(detail);
    return r;
}

}  // namespace detail

/// max_r delta_A(s_r) r^{1/3} / |A| over the ranked differences.
inline ConstantReport constant_lcon(const RepFunction& delta, std::size_t n) {
    const auto ranked = ranked_differences(delta);
    double best = 0;
    std::size_t best_r = 1;
    for (std::size_t r = 1; r <= ranked.entries.size(); ++r) {
        const double v = static_cast<double>(ranked.entries[r - 1].count) * std::cbrt(static_cast<double>(r));
        if (v > best) {
            best = v;
            best_r = r;
        }
    }
    const auto& e = ranked.entries[best_r - 1];
    return detail::make_report(Statement::lcon, n, best / static_cast<double>(n),
                               "r=" + std::to_string(best_r) + ";s=" + e.value.str() +
                                   ";delta=" + std::to_string(e.count));
}

inline ConstantReport constant_lcon(const IntegerSet& a) {
    detail::require_convex(a, "constant_lcon");
    if (a.empty()) throw std::invalid_argument("constant_lcon: empty set");
    return constant_lcon(rep_function(a, a, RepMode::difference), a.size());
}

/// E_3(A) / (n^3 ln n).
inline ConstantReport constant_core3(const Int& e3, std::size_t n) {
    const double nd = static_cast<double>(n);
    return detail::make_report(Statement::core3, n, to_double(e3) / (nd * nd * nd * std::log(nd)),
                               "e3=" + e3.str());
}

inline ConstantReport constant_core3(const IntegerSet& a) {
    detail::require_convex(a, "constant_core3");
    detail::require_log_size(a, "constant_core3");
    return constant_core3(energy3(a), a.size());
}

struct TauRow {
    std::uint64_t tau = 1;
    std::size_t count = 0;  // |{x : delta_{A,B}(x) >= tau}|
    double constant = 0;
};

struct LpopReport {
    double c_add = 0;
    std::size_t sum_size = 0;  // |A'+B|
    std::vector<TauRow> taus;
    std::size_t worst_tau = 0;  // index into taus of the largest constant

    ConstantReport additive(std::size_t n) const {
        return detail::make_report(Statement::lpop_add, n, c_add, "sumset=" + std::to_string(sum_size));
    }
    ConstantReport popular(std::size_t n) const {
        const auto& t = taus[worst_tau];
        return detail::make_report(Statement::lpop_tau, n, t.constant,
                                   "tau=" + std::to_string(t.tau) + ";count=" + std::to_string(t.count));
    }
};

/// c_add = |A'+B| |A|^{1/2} / (|A'|^{3/2} |B|^{1/2}) and, for tau = 1, 2, 4, ...
/// up to min(|A|,|B|), c_tau = |{x : delta_{A,B}(x) >= tau}| tau^3 / (|A||B|^2).
inline LpopReport lpop_sweep(const IntegerSet& a, const IntegerSet& a_prime, const IntegerSet& b) {
    detail::require_convex(a, "constant_lpop");
    if (a.empty() || a_prime.empty() || b.empty()) throw std::invalid_argument("constant_lpop: empty input");
    if (!a_prime.is_subset_of(a)) throw std::invalid_argument("constant_lpop: A' is not a subset of A");

    LpopReport out;
    const double na = static_cast<double>(a.size());
    const double np = static_cast<double>(a_prime.size());
    const double nb = static_cast<double>(b.size());
    out.sum_size = sumset(a_prime, b).size();
    out.c_add = static_cast<double>(out.sum_size) * std::sqrt(na) / (np * std::sqrt(np) * std::sqrt(nb));

    const auto delta = rep_function(a, b, RepMode::difference);
    std::vector<std::uint64_t> counts(delta.counts().begin(), delta.counts().end());
    std::sort(counts.begin(), counts.end(), std::greater<>());
    const std::uint64_t top = std::min(a.size(), b.size());
    for (std::uint64_t tau = 1; tau <= top; tau *= 2) {
        TauRow row;
        row.tau = tau;
        row.count = static_cast<std::size_t>(
            std::partition_point(counts.begin(), counts.end(), [&](auto c) { return c >= tau; }) - counts.begin());
        const double t = static_cast<double>(tau);
        row.constant = static_cast<double>(row.count) * t * t * t / (na * nb * nb);
        if (out.taus.empty() || row.constant > out.taus[out.worst_tau].constant) out.worst_tau = out.taus.size();
        out.taus.push_back(row);
    }
    return out;
}

inline ConstantReport constant_lpop_add(const IntegerSet& a, const IntegerSet& a_prime, const IntegerSet& b) {
    return lpop_sweep(a, a_prime, b).additive(a.size());
}

inline ConstantReport constant_lpop_tau(const IntegerSet& a, const IntegerSet& a_prime, const IntegerSet& b) {
    return lpop_sweep(a, a_prime, b).popular(a.size());
}

/// |A+B| / (|A| |B|^{1/2}).
inline ConstantReport constant_soly(const IntegerSet& a, const IntegerSet& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("constant_soly: empty input");
    if (!has_distinct_consecutive_differences(a))
        throw std::invalid_argument("constant_soly: consecutive differences of A are not distinct");
    const auto s = sumset(a, b).size();
    const double c =
        static_cast<double>(s) / (static_cast<double>(a.size()) * std::sqrt(static_cast<double>(b.size())));
    return detail::make_report(Statement::soly, a.size(), c, "sumset=" + std::to_string(s));
}

/// Ratios against the three main bounds:
///   |A-A| / (n^{8/5} ln^{-2/5} n), |A+A| / (n^{14/9} ln^{-2/3} n),
///   |A+A|^3 |A-A|^2 ln^2 n / n^8.
inline ConstantReport constant_theorem(Statement which, std::size_t n, std::size_t diff_size,
                                       std::size_t sum_size) {
    const double nd = static_cast<double>(n);
    const double ln = std::log(nd);
    const double d = static_cast<double>(diff_size);
    const double s = static_cast<double>(sum_size);
    switch (which) {
        case Statement::thm_minus:
            return detail::make_report(which, n, d * std::pow(ln, 0.4) / std::pow(nd, 1.6),
                                       "diffset=" + std::to_string(diff_size));
        case Statement::thm_plus:
            return detail::make_report(which, n, s * std::pow(ln, 2.0 / 3.0) / std::pow(nd, 14.0 / 9.0),
                                       "sumset=" + std::to_string(sum_size));
        case Statement::thm_mixed:
            return detail::make_report(which, n, s * s * s * d * d * ln * ln / std::pow(nd, 8),
                                       "sumset=" + std::to_string(sum_size) +
                                           ";diffset=" + std::to_string(diff_size));
        default: break;
    }
    throw std::invalid_argument("constant_theorem: not a theorem statement");
}

inline ConstantReport constant_theorem(Statement which, const IntegerSet& a) {
    detail::require_convex(a, "constant_theorem");
    detail::require_log_size(a, "constant_theorem");
    return constant_theorem(which, a.size(), diffset(a, a).size(), sumset(a, a).size());
}

/// One inequality of the chain. Unconditional steps carry an exact check;
/// the others hide an absolute constant and only record lhs/rhs.
struct ChainStep {
    std::string label;
    std::optional<CheckResult> exact;
    double lhs = 0;
    double rhs = 0;
    double ratio = 0;

    bool unconditional() const { return exact.has_value(); }
    bool holds() const { return !exact || exact->holds; }
};

struct TraceReport {
    std::size_t n = 0;
    std::size_t diff_size = 0;  // |D|, D = A-A
    std::size_t sum_size = 0;   // |S|, S = A+A
    Rational K;
    Rational L;
    Int e3;
    Int energy_ad;  // E(A, D)
    Int energy_as;  // E(A, S)
    Rational delta_scaled;  // n^2 / K^2; the truncation level is this over ln n
    double delta = 0;
    Int truncated_energy;  // sum of delta_{A,D}(x)^2 over x with delta_{A,D}(x) >= delta
    std::size_t popular_size = 0;
    std::size_t popular_prime_size = 0;
    DyadicScan dyadic;
    unsigned dyadic_best_j = 1;
    std::uint64_t dyadic_best_mass = 0;
    std::vector<ChainStep> chain;
    double exponent_minus = 0;
    double exponent_plus = 0;
    double exponent_mixed = 0;

    bool unconditional_steps_hold() const {
        for (const auto& s : chain)
            if (!s.holds()) return false;
        return true;
    }
};

namespace detail {

inline Int sum_counts(std::span<const std::uint64_t> v) {
    u128 acc = 0;
    for (auto x : v) acc += x;
    return to_int(acc);
}

inline ChainStep exact_step(std::string label, Int lhs, Relation rel, Int rhs) {
    ChainStep s;
    s.lhs = to_double(lhs);
    s.rhs = to_double(rhs);
    s.ratio = s.rhs == 0 ? 0 : s.lhs / s.rhs;
    s.exact = make_check(label, std::move(lhs), rel, std::move(rhs));
    s.label = std::move(label);
    return s;
}

inline ChainStep ratio_step(std::string label, double lhs, double rhs) {
    return ChainStep{std::move(label), std::nullopt, lhs, rhs, rhs == 0 ? 0 : lhs / rhs};
}

}  // namespace detail

inline TraceReport trace_theorem(const IntegerSet& a) {
    detail::require_convex(a, "trace_theorem");
    detail::require_log_size(a, "trace_theorem");

    const SetContext ctx(a);
    const std::size_t n = ctx.n();
    const Int nn = n;
    const IntegerSet& diffs = ctx.differences();
    const IntegerSet& sums = ctx.sums;

    TraceReport t;
    t.n = n;
    t.diff_size = diffs.size();
    t.sum_size = sums.size();
    t.K = Rational(Int(t.diff_size), nn);
    t.L = Rational(Int(t.sum_size), nn);
    t.e3 = ctx.e3;

    const auto popular = popular_set(ctx.delta, n, t.diff_size, PopularKind::P);
    const auto popular_prime = popular_set(ctx.delta, n, t.sum_size, PopularKind::P_prime);
    t.popular_size = popular.members.size();
    t.popular_prime_size = popular_prime.members.size();

    const auto& tab = ctx.slices;
    const Int mass = detail::sum_over(popular.members, diffs, tab.slice_size);
    const Int minus_total = detail::sum_over(popular.members, diffs, tab.minus_size);
    const Int plus_total = detail::sum_over(popular.members, diffs, tab.plus_size);
    const Int prime_square = detail::sum_over(popular_prime.members, diffs, tab.slice_size, 2);
    const Int overlap_d = detail::sum_counts(self_overlaps(diffs, popular.members));
    const Int overlap_s = detail::sum_counts(self_overlaps(sums, popular.members));

    const auto rep_ad = rep_function(a, diffs, RepMode::difference);
    t.energy_ad = energy_from(rep_ad);
    t.energy_as = energy(a, sums);

    const double nd = static_cast<double>(n);
    const double ln = std::log(nd);
    const Int d = t.diff_size;
    const Int s = t.sum_size;
    t.delta_scaled = Rational(nn * nn * nn * nn, d * d);
    t.delta = to_double(t.delta_scaled) / ln;
    {
        u128 acc = 0;
        for (auto c : rep_ad.counts())
            if (static_cast<double>(c) >= t.delta) acc += static_cast<u128>(c) * c;
        t.truncated_energy = detail::to_int(acc);
    }

    t.dyadic = dyadic_layers(ctx.delta, n, t.sum_size);
    for (const auto& layer : t.dyadic.layers) {
        const u128 weight = static_cast<u128>(layer.mass) << layer.j;
        const u128 best = static_cast<u128>(t.dyadic_best_mass) << t.dyadic_best_j;
        if (weight > best) {
            t.dyadic_best_j = layer.j;
            t.dyadic_best_mass = layer.mass;
        }
    }

    const Int n2 = nn * nn, n4 = n2 * n2, n6 = n4 * n2, n8 = n4 * n4;
    auto& c = t.chain;
    using detail::exact_step;
    using detail::ratio_step;
    c.push_back(exact_step("popular_mass", n2, Relation::less, 2 * mass));
    c.push_back(exact_step("popular_energy", n4, Relation::less_equal, 2 * s * prime_square));
    c.push_back(exact_step("cs_minus", n6, Relation::less_equal, 4 * t.e3 * minus_total));
    c.push_back(exact_step("containment_minus", minus_total, Relation::less_equal, overlap_d));
    c.push_back(exact_step("weighting_minus", n2 * overlap_d, Relation::less_equal, 2 * d * t.energy_ad));
    c.push_back(exact_step("energy_ad_lower", n8, Relation::less_equal, 8 * d * t.e3 * t.energy_ad));
    c.push_back(exact_step("cs_plus", n6, Relation::less_equal, 4 * t.e3 * plus_total));
    c.push_back(exact_step("containment_plus", plus_total, Relation::less_equal, overlap_s));
    c.push_back(exact_step("weighting_plus", n2 * overlap_s, Relation::less_equal, 2 * d * t.energy_as));
    c.push_back(exact_step("energy_as_lower", n8, Relation::less_equal, 8 * d * t.e3 * t.energy_as));

    const double K = to_double(t.K), L = to_double(t.L);
    const double j2 = std::ldexp(1.0, static_cast<int>(t.dyadic_best_j));
    c.push_back(ratio_step("core3_energy", to_double(t.e3), nd * nd * nd * ln));
    c.push_back(ratio_step("energy_ad_vs_k", std::pow(nd, 4) / (K * ln), to_double(t.energy_ad)));
    c.push_back(ratio_step("energy_ad_truncation", to_double(t.energy_ad), to_double(t.truncated_energy)));
    c.push_back(ratio_step("truncated_vs_k4", to_double(t.truncated_energy), std::pow(K, 4) * nd * ln));
    c.push_back(ratio_step("k_lower", std::pow(nd, 0.6) * std::pow(ln, -0.4), K));
    c.push_back(ratio_step("energy_as_vs_lk", to_double(t.energy_as), L * L * L * K * nd * ln));
    c.push_back(ratio_step("mixed_bound", std::pow(nd, 8),
                           std::pow(to_double(s), 3) * std::pow(to_double(d), 2) * ln * ln));
    c.push_back(ratio_step("dyadic_layer_mass", nd * nd / (j2 * ln), static_cast<double>(t.dyadic_best_mass)));
    c.push_back(ratio_step("dyadic_plus", nd * nd * nd, std::pow(L, 5) * j2 * j2 * std::pow(ln, 6)));
    c.push_back(ratio_step("l_lower", std::pow(nd, 5.0 / 9.0) * std::pow(ln, -2.0 / 3.0), L));

    t.exponent_minus = std::log(static_cast<double>(t.diff_size)) / ln;
    t.exponent_plus = std::log(static_cast<double>(t.sum_size)) / ln;
    t.exponent_mixed = (3 * std::log(static_cast<double>(t.sum_size)) + 2 * std::log(static_cast<double>(t.diff_size))) / ln;
    return t;
}

inline void write_trace(std::ostream& out, const TraceReport& t) {
    auto rat = [](const Rational& r) { return detail::rational_string(r); };
    out << "n " << t.n << '\n'
        << "diffset " << t.diff_size << '\n'
        << "sumset " << t.sum_size << '\n'
        << "K " << rat(t.K) << " (" << format_constant(to_double(t.K)) << ")\n"
        << "L " << rat(t.L) << " (" << format_constant(to_double(t.L)) << ")\n"
        << "e3 " << t.e3 << '\n'
        << "energy_ad " << t.energy_ad << '\n'
        << "energy_as " << t.energy_as << '\n'
        << "delta " << rat(t.delta_scaled) << "/ln(n) (" << format_constant(t.delta) << ")\n"
        << "truncated_energy " << t.truncated_energy << '\n'
        << "popular " << t.popular_size << '\n'
        << "popular_prime " << t.popular_prime_size << '\n';
    for (const auto& layer : t.dyadic.layers)
        out << "layer " << layer.j << " members " << layer.members.size() << " mass " << layer.mass << '\n';
    out << "layer residue members " << t.dyadic.residue.size() << " mass " << t.dyadic.residue_mass << '\n'
        << "dyadic_best_j " << t.dyadic_best_j << '\n';
    out << "step,kind,lhs,rhs,ratio,holds\n";
    for (const auto& s : t.chain) {
        out << s.label << ',' << (s.unconditional() ? "exact" : "ratio") << ',';
        if (s.exact)
            out << s.exact->lhs << ',' << s.exact->rhs;
        else
            out << format_constant(s.lhs) << ',' << format_constant(s.rhs);
        out << ',' << format_constant(s.ratio) << ',' << (s.unconditional() ? (s.holds() ? "true" : "false") : "-")
            << '\n';
    }
    out << "exponent_minus " << format_constant(t.exponent_minus) << '\n'
        << "exponent_plus " << format_constant(t.exponent_plus) << '\n'
        << "exponent_mixed " << format_constant(t.exponent_mixed) << '\n';
}

/// Measures one statement on one set. Statements about a pair (A', B) use
/// A' = B = A.
inline ConstantReport measure(Statement which, const IntegerSet& a) {
    switch (which) {
        case Statement::lcon: return constant_lcon(a);
        case Statement::core3: return constant_core3(a);
        case Statement::lpop_add: return constant_lpop_add(a, a, a);
        case Statement::lpop_tau: return constant_lpop_tau(a, a, a);
        case Statement::soly: return constant_soly(a, a);
        default: return constant_theorem(which, a);
    }
}

struct SweepConfig {
    std::vector<Family> families;
    std::vector<std::size_t> sizes;
    std::vector<std::uint64_t> seeds{1};
    std::vector<Statement> statements;
    unsigned jobs = 1;
};

/// Rows in (family, n, seed, statement) order whatever the job count.
inline std::vector<ConstantReport> sweep(const SweepConfig& cfg) {
    for (auto n : cfg.sizes)
        if (n < 3) throw std::invalid_argument("sweep: sizes must be at least 3");
    struct Task {
        const Family* family;
        std::size_t n;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (const auto& f : cfg.families)
        for (auto n : cfg.sizes)
            for (auto seed : cfg.seeds) tasks.push_back({&f, n, seed});

    const std::size_t per = cfg.statements.size();
    std::vector<ConstantReport> rows(tasks.size() * per);
    if (per == 0) return rows;
    detail::parallel_for(tasks.size(), cfg.jobs, [&](std::size_t i) {
        const auto& task = tasks[i];
        const auto a = generate(task.family->with_default_seed(task.seed), task.n);
        for (std::size_t k = 0; k < per; ++k) {
            auto r = measure(cfg.statements[k], a);
            r.family = task.family->name();
            r.seed = task.seed;
            rows[i * per + k] = std::move(r);
        }
    });
    return rows;
}

inline constexpr std::string_view kSweepCsvHeader = "family,n,seed,statement,constant,detail";

inline void write_sweep_csv(std::ostream& out, std::span<const ConstantReport> rows) {
    out << kSweepCsvHeader << '\n';
    for (const auto& r : rows)
        out << detail::csv_field(r.family) << ',' << r.n << ',' << r.seed << ',' << statement_name(r.statement)
            << ',' << format_constant(r.constant) << ',' << detail::csv_field(r.detail) << '\n';
}

}  // namespace convexsum
