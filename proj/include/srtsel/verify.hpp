#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "srtsel/tables.hpp"

// Two oracles that judge tables without reusing the margin formula of the
// params module: exact containment of uncertainty rectangles in P-D digit
// regions, and a division simulator that runs tables against exact rational
// remainders. Either one can refute a bad table on its own.

namespace srtsel {

// Closed uncertainty rectangle: divisor interval [y_lo, y_hi] of width 2^-u,
// shifted-remainder interval [p_lo, p_hi] of width 2^-t.
struct Rectangle {
    Dyadic y_lo, y_hi;
    Dyadic p_lo, p_hi;
};

Rectangle cell_rectangle(const RadixConfig& cfg, int u, int t, std::int64_t k, std::int64_t s);

// Is rect contained in digit d's region (d - rho) y <= beta r <= (d + rho) y?
// Checked on the closed rectangle; the upper side is waived for d = a, whose
// region top coincides with the reachable wedge beta rho y = (a + rho) y.
bool digit_region_contains(const RadixConfig& cfg, std::int64_t d, const Rectangle& rect);

enum class Side { lower, upper };

struct CellViolation {
    std::int64_t k = 0;
    std::int64_t s = 0;
    std::int64_t digit = 0;
    Side side = Side::lower;

    friend bool operator==(const CellViolation& x, const CellViolation& y) {
        return x.k == y.k && x.s == y.s && x.digit == y.digit && x.side == y.side;
    }
};

struct VerificationReport {
    RadixConfig cfg;
    int u = 0;
    int t = 0;
    std::int64_t checked_count = 0;
    std::vector<CellViolation> violations;

    bool valid() const { return violations.empty(); }
    std::string to_json() const;
};

// Scans every reachable cell (k, s >= 0) whose rectangle meets the wedge
// 0 <= beta r <= (a + rho) y. The digit select_digit picks for the cell must
// contain the rectangle, and each threshold cell (s equal to s_{d,k}) must
// additionally lie in the overlap with region d-1: a selection constant is
// only usable with one spare grid step below the region-(d-1) ceiling. The
// negative half-plane is covered by the sign-magnitude symmetry of
// select_digit and is not re-scanned.
VerificationReport verify_table_geometric(const SelectionTable& table);

// For each digit/divisor cell (d, k), decides from the region inequalities
// alone whether any integer threshold placement keeps the threshold cell
// valid for both neighboring digits d-1 and d. Returns the cells where none
// does; empty means (u, t) admits a valid table.
std::vector<DeltaInputs> find_parameter_violations(const RadixConfig& cfg, int u, int t);

// How the simulator derives the selection input from the exact shifted
// remainder: exact truncation, truncation lowered by one grid step (the
// slack a redundant remainder accumulator may introduce, which the selection
// condition provisions for), or a per-step random choice between the two.
enum class EstimatePolicy { exact, low_by_one, randomized };

struct SrtStep {
    std::int64_t digit = 0;
    Rational remainder;   // r_i after applying the digit
    bool bound_ok = true; // |r_i| <= rho y
};

struct SrtTrace {
    Dyadic x, y;
    std::int64_t k = 0;
    std::vector<SrtStep> steps;
    bool failed = false;
    std::size_t failed_step = 0;  // 1-based, meaningful when failed
    std::string failure;
};

// Runs n digit selections of x/y with r_0 = x/beta, exact rational
// remainders, divisor index k = floor(y 2^u) and sign-magnitude truncation
// of the shifted remainder. Requires dyadic 1/2 <= x < 1 and 1/2 <= y < 1
// with at most u+8 fractional bits. A remainder-bound violation or missing
// table entry flags the trace failed at the offending step.
SrtTrace simulate_division(const SelectionTable& table, const Dyadic& x, const Dyadic& y, int n,
                           EstimatePolicy policy = EstimatePolicy::randomized,
                           std::mt19937_64* rng = nullptr);

struct CrossCheckMismatch {
    int u = 0;
    int t = 0;
    bool engine_accepts = false;  // engine and oracle disagree on this pair
};

struct CrossCheckReport {
    RadixConfig cfg;
    bool ok = false;
    std::vector<CrossCheckMismatch> mismatches;
};

// For every u in [u_min, u_max]: the engine's t_final must be geometrically
// valid, and when the engine bumped t_hat, t_hat itself must be geometrically
// refutable (the engine is sound and tight at granularity 1).
CrossCheckReport cross_check_engine(const RadixConfig& cfg);

// Uniform dyadic in [1/2, 1) with frac_bits fractional bits.
Dyadic random_unit_dyadic(int frac_bits, std::mt19937_64& rng);

// Uniform dyadic in [k 2^-u, (k+1) 2^-u) with frac_bits fractional bits.
Dyadic random_dyadic_in_cell(std::int64_t k, int u, int frac_bits, std::mt19937_64& rng);

}  // namespace srtsel
