#include "srtsel/engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>

namespace srtsel {

namespace {

// Scan one digit row for Delta < 0, collecting every failing k.
void scan_digit(const RadixConfig& cfg, int u, int t, std::int64_t d,
                std::vector<DeltaInputs>& out) {
    std::int64_t k_lo = std::int64_t{1} << (u - 1);
    for (std::int64_t k = k_lo; k < 2 * k_lo; ++k) {
        if (delta_margin(cfg, t, u, d, k) < 0) out.push_back({d, k});
    }
}

}  // namespace

CheckResult check_simple(const RadixConfig& cfg, int u, int t) {
    CheckResult res;
    scan_digit(cfg, u, t, cfg.a, res.witnesses);
    res.failed = !res.witnesses.empty();
    return res;
}

CheckResult check_rest(const RadixConfig& cfg, int u, int t) {
    // d = 0 has no selection constant, so the scan covers the positive
    // digits {1..a-1}.
    CheckResult res;
    for (std::int64_t d = 1; d < cfg.a; ++d) scan_digit(cfg, u, t, d, res.witnesses);
    res.failed = !res.witnesses.empty();
    return res;
}

DecisionRecord decide_t(const RadixConfig& cfg, int u) {
    int lo = u_min(cfg);
    int hi = u_max(cfg);
    if (u < lo || u > hi)
        throw std::domain_error("u=" + std::to_string(u) + " outside [u_min, u_max] = [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
    DecisionRecord rec;
    rec.cfg = cfg;
    rec.u = u;
    rec.t_hat = t_hat(cfg, u);
    CheckResult simple = check_simple(cfg, u, rec.t_hat);
    rec.simple_failed = simple.failed;
    rec.witnesses = std::move(simple.witnesses);
    if (!rec.simple_failed) {
        // Once simple fails t must be bumped anyway, so rest runs only here.
        CheckResult rest = check_rest(cfg, u, rec.t_hat);
        rec.rest_failed = rest.failed;
        rec.witnesses = std::move(rest.witnesses);
    }
    rec.t_final = (rec.simple_failed || rec.rest_failed) ? rec.t_hat + 1 : rec.t_hat;
    return rec;
}

ParamMenu enumerate_params(const RadixConfig& cfg) {
    ParamMenu menu;
    menu.cfg = cfg;
    int lo = u_min(cfg);
    int hi = u_max(cfg);
    for (int u = lo; u <= hi; ++u) menu.entries.push_back(decide_t(cfg, u));
    menu.best = 0;
    for (std::size_t i = 1; i < menu.entries.size(); ++i) {
        int cur = menu.entries[i].u + menu.entries[i].t_final;
        int best = menu.entries[menu.best].u + menu.entries[menu.best].t_final;
        if (cur < best) menu.best = i;  // ties keep the smaller u, i.e. the earlier entry
    }
    return menu;
}

std::vector<TruncationPair> max_redundant_params(int p) {
    if (p < 2 || p > 7) throw std::domain_error("p must be in [2, 7]");
    if (p == 2) return {{3, 2}};
    return {{p + 1, p}, {p + 2, 3}};
}

unsigned thread_budget() {
    const char* env = std::getenv("SRT_SELECT_THREADS");
    if (env == nullptr) return 1;
    long v = std::strtol(env, nullptr, 10);
    if (v < 1) return 1;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return static_cast<unsigned>(std::min<long>(v, hw));
}

std::vector<AcceptEntry> sweep_accept_list(int p_lo, int p_hi) {
    if (p_lo < 2 || p_hi > 7 || p_lo > p_hi) throw std::domain_error("p range must lie in [2, 7]");

    std::vector<RadixConfig> configs;
    for (int p = p_lo; p <= p_hi; ++p) {
        std::int64_t beta = std::int64_t{1} << p;
        for (std::int64_t a = beta / 2; a <= beta - 2; ++a) configs.push_back(make_config(beta, a));
    }

    auto accepted_at_umin = [](const RadixConfig& cfg) {
        DecisionRecord rec = decide_t(cfg, u_min(cfg));
        return rec.t_final == rec.t_hat;
    };

    std::vector<char> keep(configs.size(), 0);
    std::vector<int> tmin(configs.size(), 0), umin(configs.size(), 0);
    unsigned threads = std::min<unsigned>(thread_budget(), configs.size());
    auto worker = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < configs.size(); i += step) {
            umin[i] = u_min(configs[i]);
            tmin[i] = t_hat(configs[i], umin[i]);
            keep[i] = accepted_at_umin(configs[i]) ? 1 : 0;
        }
    };
    if (threads <= 1) {
        worker(0, 1);
    } else {
        std::vector<std::future<void>> jobs;
        for (unsigned w = 0; w < threads; ++w)
            jobs.push_back(std::async(std::launch::async, worker, w, threads));
        for (auto& j : jobs) j.get();
    }

    std::vector<AcceptEntry> out;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (keep[i]) out.push_back({configs[i].beta, configs[i].a, umin[i], tmin[i]});
    }
    return out;
}

bool pair_accepted(const RadixConfig& cfg, int u, int t) {
    if (u < u_min(cfg)) return false;
    int hi = u_max(cfg);
    DecisionRecord rec = decide_t(cfg, std::min(u, hi));
    // Valid pairs stay valid when either parameter grows, so u beyond u_max
    // inherits the u_max decision and larger t is always fine.
    return t >= rec.t_final;
}

}  // namespace srtsel
