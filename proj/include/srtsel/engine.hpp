#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "srtsel/params.hpp"

// Decision procedures that turn the margin formulas into concrete truncation
// parameters: the simple/rest scans deciding between t_hat and t_hat + 1, the
// closed form for maximally redundant digit sets, per-config enumeration of
// all workable u, and the full radix sweep.

namespace srtsel {

struct CheckResult {
    bool failed = false;
    std::vector<DeltaInputs> witnesses;  // all cells with Delta < 0
};

// simple: does any k in [2^{u-1}, 2^u) give Delta(t, u, a, rho, k) < 0?
// Scans the top digit d = a only.
CheckResult check_simple(const RadixConfig& cfg, int u, int t);

// rest: same scan over the remaining digits d in {1..a-1}.
CheckResult check_rest(const RadixConfig& cfg, int u, int t);

struct DecisionRecord {
    RadixConfig cfg;
    int u = 0;
    int t_hat = 0;
    bool simple_failed = false;
    bool rest_failed = false;
    int t_final = 0;  // t_hat + 1 iff a check failed, else t_hat
    std::vector<DeltaInputs> witnesses;
};

// Computes t_hat for u, runs the simple check and, only if it passes, the
// rest check; a failed check bumps t to t_hat + 1. Rejects u outside
// [u_min, u_max].
DecisionRecord decide_t(const RadixConfig& cfg, int u);

struct ParamMenu {
    RadixConfig cfg;
    std::vector<DecisionRecord> entries;  // one per u in [u_min, u_max]
    std::size_t best = 0;                 // index minimizing u + t, tie -> smallest u
};

ParamMenu enumerate_params(const RadixConfig& cfg);

// Closed-form parameter pairs for the maximally redundant digit set a = 2^p - 1:
// {(p+1, p), (p+2, 3)} for p > 2, and the single pair (3, 2) for p = 2.
std::vector<TruncationPair> max_redundant_params(int p);

struct AcceptEntry {
    std::int64_t beta = 0;
    std::int64_t a = 0;
    int u = 0;  // = u_min
    int t = 0;  // = t_hat(u_min), kept without increment

    friend bool operator==(const AcceptEntry& x, const AcceptEntry& y) {
        return x.beta == y.beta && x.a == y.a && x.u == y.u && x.t == y.t;
    }
};

// Scans every digit set beta/2 <= a < beta-1 for beta = 2^p, p in
// [p_lo, p_hi], and reports the configs whose decision at u = u_min keeps
// t = t_hat. Maximally redundant sets are excluded: they always keep t_hat at
// u_min and have their own closed form (max_redundant_params).
// Parallelized across configs when SRT_SELECT_THREADS allows; the result
// order is deterministic.
std::vector<AcceptEntry> sweep_accept_list(int p_lo, int p_hi);

// Gate used by table construction: a pair is accepted when u >= u_min and
// t >= t_final at u (for u beyond u_max, t_final at u_max carries over by the
// padding property).
bool pair_accepted(const RadixConfig& cfg, int u, int t);

// Thread budget: SRT_SELECT_THREADS if set (>= 1), else 1.
unsigned thread_budget();

}  // namespace srtsel
