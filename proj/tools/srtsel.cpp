// srtsel: generate, check and exercise SRT quotient digit selection tables.
//
// Exit codes, uniform across subcommands:
//   0  success / table or parameters valid
//   1  mathematically invalid configuration or failed verification
//   2  usage errors, malformed files

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "srtsel/engine.hpp"
#include "srtsel/plot.hpp"
#include "srtsel/tables.hpp"
#include "srtsel/verify.hpp"

using namespace srtsel;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

struct BetaOption {
    std::int64_t beta = 0;
    int p = 0;

    RadixConfig config(std::int64_t a) const {
        std::int64_t b = beta != 0 ? beta : (std::int64_t{1} << p);
        return make_config(b, a);
    }
};

void add_beta_options(CLI::App* cmd, BetaOption& opt) {
    auto* beta = cmd->add_option("--beta", opt.beta, "radix, a power of two in [4, 128]");
    auto* p = cmd->add_option("-p", opt.p, "radix given as the exponent p, beta = 2^p");
    beta->excludes(p);
    p->excludes(beta);
    cmd->callback([&opt, beta, p] {
        if (beta->count() == 0 && p->count() == 0)
            throw CLI::RequiredError("--beta (or -p)");
    });
}

int cmd_params(const RadixConfig& cfg) {
    ParamMenu menu = enumerate_params(cfg);
    std::printf("beta=%lld a=%lld rho=%s u_min=%d u_max=%d\n", static_cast<long long>(cfg.beta),
                static_cast<long long>(cfg.a), cfg.rho().to_string().c_str(), u_min(cfg), u_max(cfg));
    std::printf("%4s %6s %7s %5s %3s %4s\n", "u", "t_hat", "simple", "rest", "t", "u+t");
    for (std::size_t i = 0; i < menu.entries.size(); ++i) {
        const DecisionRecord& rec = menu.entries[i];
        std::printf("%4d %6d %7s %5s %3d %4d%s\n", rec.u, rec.t_hat,
                    rec.simple_failed ? "FAIL" : "ok",
                    rec.simple_failed ? "-" : (rec.rest_failed ? "FAIL" : "ok"), rec.t_final,
                    rec.u + rec.t_final, i == menu.best ? "  *" : "");
    }
    const DecisionRecord& best = menu.entries[menu.best];
    std::printf("best: u=%d t=%d\n", best.u, best.t_final);
    return 0;
}

int cmd_table(const RadixConfig& cfg, int u, int t, const std::string& format,
              const std::string& output, bool unsafe) {
    if (!unsafe && !pair_accepted(cfg, u, t)) {
        std::fprintf(stderr,
                     "error: (u=%d, t=%d) does not admit a valid table for beta=%lld a=%lld "
                     "(rerun with --unsafe to emit it anyway)\n",
                     u, t, static_cast<long long>(cfg.beta), static_cast<long long>(cfg.a));
        return 1;
    }
    SelectionTable table = build_table(cfg, u, t, /*allow_unverified=*/true);
    write_output(output, emit_table(table, parse_table_format(format)));
    return 0;
}

int cmd_verify(const std::string& path) {
    SelectionTable table = parse_table_json(read_file(path));
    VerificationReport report = verify_table_geometric(table);
    std::cout << report.to_json();
    return report.valid() ? 0 : 1;
}

int cmd_simulate(const std::string& path, int trials, int digits, std::uint64_t seed,
                 const std::string& estimate, std::optional<std::int64_t> cell) {
    SelectionTable table = parse_table_json(read_file(path));
    EstimatePolicy policy;
    if (estimate == "exact") policy = EstimatePolicy::exact;
    else if (estimate == "low") policy = EstimatePolicy::low_by_one;
    else if (estimate == "random") policy = EstimatePolicy::randomized;
    else throw CLI::ValidationError("--estimate must be exact, low or random");
    if (cell && (*cell < table.k_begin() || *cell >= table.k_end()))
        throw CLI::ValidationError("--divisor-cell outside the table's k range");

    std::mt19937_64 rng(seed);
    int ok = 0;
    std::size_t shown = 0;
    for (int trial = 0; trial < trials; ++trial) {
        Dyadic x = random_unit_dyadic(table.u + 8, rng);
        Dyadic y = cell ? random_dyadic_in_cell(*cell, table.u, table.u + 8, rng)
                        : random_unit_dyadic(table.u + 8, rng);
        SrtTrace trace = simulate_division(table, x, y, digits, policy, &rng);
        if (!trace.failed) {
            ++ok;
        } else if (shown < 5) {
            ++shown;
            std::printf("trial %d failed at step %zu (k=%lld): %s\n", trial, trace.failed_step,
                        static_cast<long long>(trace.k), trace.failure.c_str());
        }
    }
    std::string cell_note = cell ? " divisor-cell=" + std::to_string(*cell) : "";
    std::printf("%d/%d ok  (digits=%d seed=%llu estimate=%s%s)\n", ok, trials, digits,
                static_cast<unsigned long long>(seed), estimate.c_str(), cell_note.c_str());
    return ok == trials ? 0 : 1;
}

int cmd_sweep(const std::string& range) {
    int lo = 0, hi = 0;
    auto dots = range.find("..");
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stoi(range);
        } else {
            lo = std::stoi(range.substr(0, dots));
            hi = std::stoi(range.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError("--p expects 'LO..HI' or a single exponent");
    }
    std::vector<AcceptEntry> list = sweep_accept_list(lo, hi);
    for (const AcceptEntry& e : list)
        std::printf("beta=%lld a=%lld u=%d t=%d\n", static_cast<long long>(e.beta),
                    static_cast<long long>(e.a), e.u, e.t);
    std::printf("%zu digit sets keep t=t_hat at u=u_min for p in [%d, %d]\n", list.size(), lo, hi);
    return 0;
}

int cmd_plot(const std::string& path, const std::string& output) {
    SelectionTable table = parse_table_json(read_file(path));
    VerificationReport report = verify_table_geometric(table);
    write_output(output, render_pd_svg(table, &report));
    std::fprintf(stderr, "%s: %lld cells checked, %zu violations highlighted\n", path.c_str(),
                 static_cast<long long>(report.checked_count), report.violations.size());
    return 0;
}

int cmd_repro() {
    int failures = 0;
    auto item = [&failures](const std::string& name, bool ok) {
        std::printf("%s  %s\n", ok ? "PASS" : "FAIL", name.c_str());
        if (!ok) ++failures;
    };

    item("gap 0.890625 at beta=16 u=9 d=15 k=256",
         delta_gap(make_config(16, 15), 2, 9, 15, 256) == Rational(57, 64));
    item("gap 0.94140625 at beta=32 u=11 d=31 k=1024",
         delta_gap(make_config(32, 31), 2, 11, 31, 1024) == Rational(241, 256));
    item("gap 1.25 at beta=16 u'=6", delta_gap(make_config(16, 15), 3, 6, 15, 32) == Rational(5, 4));
    item("gap 1.125 at beta=32 u'=7", delta_gap(make_config(32, 31), 3, 7, 31, 64) == Rational(9, 8));

    item("minimal u' for t=3: 6 (beta=16) and 7 (beta=32)",
         u_for_t(make_config(16, 15), 3) == 6 && u_for_t(make_config(32, 31), 3) == 7);

    {
        ParamMenu menu = enumerate_params(make_config(16, 8));
        const std::vector<TruncationPair> expected = {{8, 9}, {9, 7}, {10, 7}, {11, 7}, {12, 6}};
        bool ok = menu.entries.size() == expected.size();
        for (std::size_t i = 0; ok && i < expected.size(); ++i)
            ok = menu.entries[i].u == expected[i].u && menu.entries[i].t_final == expected[i].t;
        ok = ok && menu.entries[menu.best].u == 9 && menu.entries[menu.best].t_final == 7;
        item("beta=16 a=8 menu {(8,9),(9,7),(10,7),(11,7),(12,6)}, best (9,7)", ok);
    }

    {
        bool ok = true;
        for (int p = 2; p <= 7 && ok; ++p) {
            std::int64_t beta = std::int64_t{1} << p;
            std::vector<TruncationPair> closed = max_redundant_params(p);
            ParamMenu menu = enumerate_params(make_config(beta, beta - 1));
            ok = menu.entries.size() == closed.size();
            for (std::size_t i = 0; ok && i < closed.size(); ++i)
                ok = menu.entries[i].u == closed[i].u && menu.entries[i].t_final == closed[i].t;
        }
        item("maximally redundant closed form for p=2..7", ok);
    }

    {
        std::set<std::pair<std::int64_t, std::int64_t>> expected = {
            {4, 2},   {16, 10}, {32, 25}, {64, 38},  {64, 42},  {64, 44},
            {64, 46}, {64, 51}, {128, 81}, {128, 89}, {128, 94}, {128, 105}};
        std::set<std::pair<std::int64_t, std::int64_t>> got;
        for (const AcceptEntry& e : sweep_accept_list(2, 7)) got.insert({e.beta, e.a});
        item("accept list for p=2..7 (12 digit sets)", got == expected);
    }

    {
        auto has_digit = [](const std::vector<DeltaInputs>& ws, std::int64_t d) {
            for (const auto& w : ws)
                if (w.d == d) return true;
            return false;
        };
        std::vector<DeltaInputs> v16 = find_parameter_violations(make_config(16, 15), 9, 2);
        std::vector<DeltaInputs> v32 = find_parameter_violations(make_config(32, 31), 11, 2);
        item("counterexamples (9,2)/(11,2) refuted at d=a-1",
             !v16.empty() && has_digit(v16, 14) && !v32.empty() && has_digit(v32, 30));
        item("corrected pairs (6,3)/(7,3) accepted",
             find_parameter_violations(make_config(16, 15), 6, 3).empty() &&
                 find_parameter_violations(make_config(32, 31), 7, 3).empty());
    }

    if (failures == 0) std::printf("all reproduction items passed\n");
    else std::printf("%d reproduction items failed\n", failures);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SRT division digit-selection tables: parameters, generation, verification"};
    app.require_subcommand(1);

    BetaOption params_beta;
    std::int64_t params_a = 0;
    CLI::App* params = app.add_subcommand("params", "enumerate valid truncation parameters (u, t)");
    add_beta_options(params, params_beta);
    params->add_option("-a", params_a, "largest digit magnitude")->required();

    BetaOption table_beta;
    std::int64_t table_a = 0;
    int table_u = 0, table_t = 0;
    std::string table_format = "text";
    std::string table_output;
    bool table_unsafe = false;
    CLI::App* table = app.add_subcommand("table", "emit the selection-constant table for (u, t)");
    add_beta_options(table, table_beta);
    table->add_option("-a", table_a, "largest digit magnitude")->required();
    table->add_option("-u", table_u, "fractional divisor bits")->required();
    table->add_option("-t", table_t, "fractional shifted-remainder bits")->required();
    table->add_option("--format", table_format, "json, csv or text (default text)");
    table->add_option("-o,--output", table_output, "output path (default stdout)");
    table->add_flag("--unsafe", table_unsafe, "emit even if the pair is rejected by the engine");

    std::string verify_path;
    CLI::App* verify = app.add_subcommand("verify", "check a table file against the geometric oracle");
    verify->add_option("table", verify_path, "table JSON file")->required();

    std::string sim_path, sim_estimate = "random";
    int sim_trials = 1000, sim_digits = 12;
    std::uint64_t sim_seed = 1;
    std::int64_t sim_cell = -1;
    CLI::App* simulate = app.add_subcommand("simulate", "run random divisions against a table file");
    simulate->add_option("table", sim_path, "table JSON file")->required();
    simulate->add_option("--trials", sim_trials, "number of random operand pairs (default 1000)");
    simulate->add_option("--digits", sim_digits, "quotient digits per division (default 12)");
    simulate->add_option("--seed", sim_seed, "RNG seed (default 1)");
    simulate->add_option("--estimate", sim_estimate,
                         "selection input: exact, low (one ulp low), random (default)");
    simulate->add_option("--divisor-cell", sim_cell, "restrict y to divisor index k");

    std::string sweep_range = "2..7";
    CLI::App* sweep = app.add_subcommand("sweep", "list digit sets that keep t=t_hat at u=u_min");
    sweep->add_option("--p", sweep_range, "exponent range LO..HI within 2..7 (default 2..7)");

    CLI::App* repro = app.add_subcommand("repro", "recompute every reference value and report PASS/FAIL");

    std::string plot_path, plot_output = "pd.svg";
    CLI::App* plot = app.add_subcommand("plot", "render the P-D diagram of a table file as SVG");
    plot->add_option("table", plot_path, "table JSON file")->required();
    plot->add_option("-o,--output", plot_output, "SVG output path (default pd.svg)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (params->parsed()) return cmd_params(params_beta.config(params_a));
        if (table->parsed())
            return cmd_table(table_beta.config(table_a), table_u, table_t, table_format, table_output,
                             table_unsafe);
        if (verify->parsed()) return cmd_verify(verify_path);
        if (simulate->parsed())
            return cmd_simulate(sim_path, sim_trials, sim_digits, sim_seed, sim_estimate,
                                sim_cell >= 0 ? std::optional<std::int64_t>(sim_cell) : std::nullopt);
        if (sweep->parsed()) return cmd_sweep(sweep_range);
        if (repro->parsed()) return cmd_repro();
        if (plot->parsed()) return cmd_plot(plot_path, plot_output);
    } catch (const CLI::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
