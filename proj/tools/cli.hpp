// Command-line front end. run() never touches std::cout/std::cerr directly so
// tests can drive it with string streams.
//
// Exit codes: 0 all checks held, 1 some check failed, 2 usage or input error.
#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "convexsum/audit.hpp"
#include "convexsum/convexgen.hpp"
#include "convexsum/energy.hpp"
#include "convexsum/identities.hpp"
#include "convexsum/incidence.hpp"
#include "convexsum/search.hpp"
#include "convexsum/set_io.hpp"

namespace convexsum::cli {

inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;

/// "1..5" or "1,4,9".
inline std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
    std::vector<std::uint64_t> out;
    if (auto dots = text.find(".."); dots != std::string_view::npos) {
        const auto lo = detail::parse_u64(text.substr(0, dots), "seed range");
        const auto hi = detail::parse_u64(text.substr(dots + 2), "seed range");
        if (hi < lo) throw std::invalid_argument("empty seed range '" + std::string(text) + "'");
        for (auto s = lo; s <= hi; ++s) out.push_back(s);
        return out;
    }
    for (auto part : detail::split(text, ',')) out.push_back(detail::parse_u64(part, "seed"));
    return out;
}

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    if (text.empty()) return out;
    for (auto part : detail::split(text, ',')) out.emplace_back(part);
    return out;
}

/// Resolved settings, echoed as '# key: value' lines before any result.
class Header {
public:
    void add(std::string key, std::string value) { lines_.emplace_back(std::move(key), std::move(value)); }
    template <class T>
    void add(std::string key, const T& value) {
        std::ostringstream s;
        s << value;
        add(std::move(key), s.str());
    }
    std::vector<std::string> comments() const {
        std::vector<std::string> out;
        for (const auto& [k, v] : lines_) out.push_back(k + ": " + v);
        return out;
    }
    void write(std::ostream& out) const {
        for (const auto& c : comments()) out << "# " << c << '\n';
    }

private:
    std::vector<std::pair<std::string, std::string>> lines_;
};

/// A set named on the command line: a file, or a family at a size.
struct SetSource {
    std::string path;
    std::string family;
    std::size_t n = 0;
    std::uint64_t seed = 1;

    void bind(CLI::App* cmd, const std::string& prefix = "") {
        const auto p = prefix.empty() ? std::string() : prefix + "-";
        auto* in = cmd->add_option("--" + p + "in", path, "set file");
        auto* fam = cmd->add_option("--" + p + "family", family, "squares, powers, poly:k, randconv:M[:seed], mianchowla");
        cmd->add_option("--" + p + "n", n, "size for --" + p + "family");
        in->excludes(fam);
    }

    bool given() const { return !path.empty() || !family.empty(); }

    IntegerSet load(Header& h, const std::string& label) const {
        if (!path.empty()) {
            h.add(label + " file", path);
            return read_set_file(path);
        }
        if (family.empty()) throw CLI::ValidationError(label, "give a set file or a family");
        const auto f = parse_family(family).with_default_seed(seed);
        h.add(label + " family", f.name());
        h.add(label + " n", n);
        return generate(f, n);
    }
};

namespace detail {

struct Output {
    std::ofstream file;
    std::ostream* stream;

    Output(const std::string& path, std::ostream& fallback) : stream(&fallback) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::runtime_error("cannot write " + path);
        stream = &file;
    }
    std::ostream& operator*() { return *stream; }
};

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sum and difference sets of convex sets: generators, exact checks, constants, incidences, search",
                 "convexsum-cli"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::function<int()> action;
    Header header;

    // gen
    auto* gen = app.add_subcommand("gen", "write a generated set in the set file format");
    std::string gen_family, gen_out;
    std::size_t gen_n = 0;
    std::uint64_t gen_seed = 1;
    gen->add_option("--family", gen_family, "family name")->required();
    gen->add_option("--n", gen_n, "number of elements")->required();
    gen->add_option("--seed", gen_seed, "seed for randconv:M without its own seed");
    gen->add_option("--out", gen_out, "output file (default stdout)");
    gen->callback([&] {
        action = [&] {
            const auto f = parse_family(gen_family).with_default_seed(gen_seed);
            header.add("command", "gen");
            header.add("family", f.name());
            header.add("n", gen_n);
            const auto a = generate(f, gen_n);
            if (gen_out.empty()) {
                write_set(out, a, header.comments());
            } else {
                header.add("out", gen_out);
                header.write(out);
                detail::Output o(gen_out, out);
                write_set(*o, a, header.comments());
            }
            return kOk;
        };
    });

    // stats
    auto* stats = app.add_subcommand("stats", "size, sumset, difference set, energies, convexity");
    SetSource stats_src;
    stats_src.bind(stats);
    stats->add_option("--seed", stats_src.seed, "seed for randconv:M");
    stats->callback([&] {
        action = [&] {
            header.add("command", "stats");
            const auto a = stats_src.load(header, "set");
            header.write(out);
            const auto delta = rep_function(a, a, RepMode::difference);
            out << "n " << a.size() << '\n'
                << "sumset " << sumset(a, a).size() << '\n'
                << "diffset " << delta.size() << '\n'
                << "energy " << energy_from(delta) << '\n'
                << "e3 " << energy3(delta) << '\n'
                << "convex " << detail::yes_no(is_convex(a)) << '\n'
                << "distinct_gaps " << detail::yes_no(has_distinct_consecutive_differences(a)) << '\n';
            return kOk;
        };
    });

    // verify
    auto* verify = app.add_subcommand("verify", "run every exact identity and inequality on one set");
    SetSource verify_src;
    VerifyOptions verify_opt;
    std::string verify_out, verify_id;
    verify_src.bind(verify);
    verify->add_option("--seed", verify_opt.seed, "seed for random subsets (and randconv:M)");
    verify->add_option("--subsets", verify_opt.random_subsets, "random subsets per sign");
    verify->add_option("--id", verify_id, "set_id column (default: file or family name)");
    verify->add_option("--out", verify_out, "CSV output file (default stdout)");
    verify->callback([&] {
        action = [&] {
            header.add("command", "verify");
            verify_src.seed = verify_opt.seed;
            const auto a = verify_src.load(header, "set");
            header.add("seed", verify_opt.seed);
            header.add("subsets", verify_opt.random_subsets);
            const auto id = !verify_id.empty()          ? verify_id
                            : !verify_src.path.empty() ? verify_src.path
                                                       : parse_family(verify_src.family).with_default_seed(verify_opt.seed).name() +
                                                             "@" + std::to_string(verify_src.n);
            header.write(out);
            const auto results = verify_set(a, verify_opt);
            detail::Output o(verify_out, out);
            write_check_csv(*o, id, results);
            std::size_t failed = 0;
            for (const auto& r : results) failed += !r.holds;
            out << "# checks " << results.size() << " failed " << failed << '\n';
            return failed ? kCheckFailed : kOk;
        };
    });

    // trace
    auto* trace = app.add_subcommand("trace", "step-by-step trace of the lower-bound argument");
    SetSource trace_src;
    trace_src.bind(trace);
    trace->add_option("--seed", trace_src.seed, "seed for randconv:M");
    trace->callback([&] {
        action = [&] {
            header.add("command", "trace");
            const auto a = trace_src.load(header, "set");
            header.write(out);
            const auto t = trace_theorem(a);
            write_trace(out, t);
            return t.unconditional_steps_hold() ? kOk : kCheckFailed;
        };
    });

    // sweep
    auto* sw = app.add_subcommand("sweep", "measured constants over families, sizes and seeds");
    std::string sw_families, sw_sizes, sw_seeds = "1", sw_out;
    std::string sw_statements = "lcon,core3,lpop_add,lpop_tau,soly,thm_minus,thm_plus,thm_mixed";
    unsigned sw_jobs = 1;
    sw->add_option("--families", sw_families, "comma-separated families")->required();
    sw->add_option("--sizes", sw_sizes, "comma-separated sizes (each >= 3)")->required();
    sw->add_option("--seeds", sw_seeds, "seed list or range, e.g. 1..5");
    sw->add_option("--statements", sw_statements, "comma-separated statements (empty for none)");
    sw->add_option("--jobs", sw_jobs, "worker threads");
    sw->add_option("--out", sw_out, "CSV output file (default stdout)");
    sw->callback([&] {
        action = [&] {
            SweepConfig cfg;
            for (const auto& f : split_list(sw_families)) cfg.families.push_back(parse_family(f));
            for (const auto& s : split_list(sw_sizes)) cfg.sizes.push_back(convexsum::detail::parse_u64(s, "size"));
            cfg.seeds = parse_seed_list(sw_seeds);
            for (const auto& s : split_list(sw_statements)) cfg.statements.push_back(parse_statement(s));
            cfg.jobs = sw_jobs;
            header.add("command", "sweep");
            header.add("families", sw_families);
            header.add("sizes", sw_sizes);
            header.add("seeds", sw_seeds);
            header.add("statements", sw_statements);
            header.write(out);
            const auto rows = sweep(cfg);
            detail::Output o(sw_out, out);
            write_sweep_csv(*o, rows);
            return kOk;
        };
    });

    // incidence
    auto* inc = app.add_subcommand("incidence", "build the curve system for (A, A', B) and count incidences");
    SetSource inc_a, inc_prime, inc_b;
    std::vector<std::uint64_t> inc_taus;
    std::string inc_curves, inc_points;
    unsigned inc_jobs = 1;
    std::uint64_t inc_seed = 1;
    inc_a.bind(inc);
    inc_prime.bind(inc, "a-prime");
    inc_b.bind(inc, "b");
    inc->add_option("--seed", inc_seed, "seed for randconv:M families");
    inc->add_option("--tau", inc_taus, "richness levels (default 1, 2, 4, ... up to min(|A|, |B|))")->delimiter(',');
    inc->add_option("--jobs", inc_jobs, "worker threads for counting");
    inc->add_option("--dump-curves", inc_curves, "write curves as 'alpha beta q1 q2 ...'");
    inc->add_option("--dump-points", inc_points, "write the point grid as 'x y' lines");
    inc->callback([&] {
        action = [&] {
            header.add("command", "incidence");
            inc_a.seed = inc_prime.seed = inc_b.seed = inc_seed;
            const auto a = inc_a.load(header, "A");
            const auto a_prime = inc_prime.given() ? inc_prime.load(header, "A'") : a;
            const auto b = inc_b.given() ? inc_b.load(header, "B") : a;
            if (!inc_prime.given()) header.add("A'", "A");
            if (!inc_b.given()) header.add("B", "A");
            if (inc_taus.empty())
                for (std::uint64_t t = 1; t <= std::min(a.size(), b.size()); t *= 2) inc_taus.push_back(t);
            std::string taus;
            for (auto t : inc_taus) taus += (taus.empty() ? "" : ",") + std::to_string(t);
            header.add("tau", taus);
            header.write(out);

            const auto inst = build_system(a, a_prime, b);
            if (!inc_curves.empty()) {
                detail::Output o(inc_curves, out);
                write_curves(*o, inst.system);
            }
            if (!inc_points.empty()) {
                detail::Output o(inc_points, out);
                write_points(*o, inst.points);
            }
            const auto pl = verify_pseudoline(inst.system);
            out << "points " << inst.points.size() << '\n'
                << "curves " << inst.system.curves.size() << '\n'
                << "pseudoline " << detail::yes_no(pl.holds) << (pl.sampled ? " sampled " : " exhaustive ")
                << pl.pairs_examined << " pairs" << (pl.holds ? "" : " (" + pl.witness + ")") << '\n';
            if (!pl.holds) return kCheckFailed;
            out << "incidences " << count_incidences(inst.points, inst.system, inc_jobs) << '\n'
                << "st_ratio " << format_constant(st_ratio(inst.points, inst.system, inc_jobs)) << '\n';
            std::vector<CheckResult> checks;
            out << "tau,rich_points,ordinates_ge_tau,ordinate_bound\n";
            for (auto tau : inc_taus) {
                const auto rich = rich_points(inst.points, inst.system, tau);
                const auto ord = check_ordinate_richness(inst, a_prime, b, tau, rich.size());
                out << tau << ',' << rich.size() << ',' << ord.plain_count << ',' << ord.check.lhs << '\n';
                checks.push_back(check_richness(rich, inst.system, tau));
                checks.push_back(ord.check);
            }
            write_check_csv(out, "incidence", checks);
            return all_hold(checks) ? kOk : kCheckFailed;
        };
    });

    // search
    auto* se = app.add_subcommand("search", "hill climbing over convex gap vectors");
    SearchConfig se_cfg;
    std::string se_objective = "min_sum", se_out, se_history;
    bool se_exhaustive = false;
    se->add_option("--n", se_cfg.n, "set size (>= 3)")->required();
    se->add_option("--objective", se_objective, "min_sum, min_diff or max_e3");
    se->add_option("--max-gap", se_cfg.max_gap, "largest second difference M");
    se->add_option("--iters", se_cfg.iterations, "sweep cap per restart");
    se->add_option("--restarts", se_cfg.restarts, "independent starts");
    se->add_option("--seed", se_cfg.seed, "base seed");
    se->add_option("--jobs", se_cfg.jobs, "worker threads");
    se->add_flag("--exhaustive", se_exhaustive, "enumerate all of [1, M]^(n-1) instead");
    se->add_option("--out", se_out, "best set file (default stdout)");
    se->add_option("--history", se_history, "per-restart CSV file (default stdout)");
    se->callback([&] {
        action = [&] {
            se_cfg.objective = parse_objective(se_objective);
            header.add("command", "search");
            header.add("n", se_cfg.n);
            header.add("objective", se_objective);
            header.add("max_gap", se_cfg.max_gap);
            if (se_exhaustive) {
                header.add("mode", "exhaustive");
            } else {
                header.add("iters", se_cfg.iterations);
                header.add("restarts", se_cfg.restarts);
                header.add("seed", se_cfg.seed);
            }
            header.write(out);
            const auto r = se_exhaustive ? exhaustive(se_cfg.n, se_cfg.max_gap, se_cfg.objective)
                                         : local_search(se_cfg);
            std::vector<std::string> found{"score: " + convexsum::detail::rational_string(r.best_score)};
            if (r.exponent) found.push_back("exponent: " + format_constant(*r.exponent));
            found.push_back("theorem_ratio: " + format_constant(r.theorem_ratio));
            if (se_out.empty()) {
                write_set(out, r.best_set, found);
            } else {
                auto notes = header.comments();
                notes.insert(notes.end(), found.begin(), found.end());
                detail::Output o(se_out, out);
                write_set(*o, r.best_set, notes);
            }
            detail::Output h(se_history, out);
            write_history_csv(*h, r);
            return kOk;
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        // help requests exit 0 and print to `out`; everything else is a usage error
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }
    try {
        return action();
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kUsage;
}

}  // namespace convexsum::cli
