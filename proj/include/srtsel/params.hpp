#pragma once

#include <cstdint>

#include "srtsel/exactnum.hpp"

// Truncation-parameter formulas for SRT quotient digit selection. A radix
// beta = 2^p divider with digit set {-a..a} selects digits from u leading
// fractional bits of the divisor and t of the shifted partial remainder.
// Everything here is evaluated in exact rational arithmetic; the interesting
// cases sit exactly on rounding boundaries, so floating-point log2 is never
// consulted.

namespace srtsel {

struct RadixConfig {
    int p = 0;             // bits per digit
    std::int64_t beta = 0; // 2^p
    std::int64_t a = 0;    // max digit magnitude, beta/2 <= a <= beta-1

    // Redundancy index rho = a/(beta-1), in (1/2, 1].
    Rational rho() const { return Rational(a, beta - 1); }

    bool maximally_redundant() const { return a == beta - 1; }

    friend bool operator==(const RadixConfig& x, const RadixConfig& y) {
        return x.beta == y.beta && x.a == y.a;
    }
};

// Validates 2 <= p <= 7 and beta/2 <= a <= beta-1. Radix 2 is rejected: with
// beta=2 the only digit set has rho = a = 1 and the construction below does
// not apply.
RadixConfig make_config(std::int64_t beta, std::int64_t a);

struct TruncationPair {
    int u = 0;  // fractional divisor bits
    int t = 0;  // fractional shifted-remainder bits

    friend bool operator==(const TruncationPair& x, const TruncationPair& y) {
        return x.u == y.u && x.t == y.t;
    }
};

// Digit/divisor-index cell of the P-D diagram: divisor interval index k with
// 2^{u-1} <= k < 2^u, digit 1 <= d <= a.
struct DeltaInputs {
    std::int64_t d = 0;
    std::int64_t k = 0;

    friend bool operator==(const DeltaInputs& x, const DeltaInputs& y) {
        return x.d == y.d && x.k == y.k;
    }
    friend bool operator<(const DeltaInputs& x, const DeltaInputs& y) {
        if (x.d != y.d) return x.d < y.d;
        return x.k < y.k;
    }
};

Rational redundancy_index(const RadixConfig& cfg);

// Smallest u with 2^-u strictly below (rho - 1/2)/(a - rho). No valid table
// exists for smaller u.
int u_min(const RadixConfig& cfg);

// Smallest t with 2^{t-1} (rho - 1/2) > 1.
int t_prime(const RadixConfig& cfg);

// Smallest u with 2^-u <= (rho - 1/2 - 2^{1-t'})/(a - rho), t' = t_prime.
// Above this u the digit-selection margin is at least one full step and no
// per-cell testing is needed.
int u_max(const RadixConfig& cfg);

// Smallest u' with 2^-u' <= (rho - 1/2 - 2^{1-t})/(a - rho). Requires
// t >= t_prime(cfg); the right-hand side is nonpositive otherwise.
int u_for_t(const RadixConfig& cfg, int t);

// Smallest t with 2^-t <= (rho - 1/2) - (a - rho) 2^-u. Requires
// u >= u_min(cfg); the right-hand side is nonpositive otherwise.
int t_hat(const RadixConfig& cfg, int u);

// Gap between the two sides of the selection condition, before rounding:
// delta = 2^{t0-u}((2 rho - 1) k - (d - rho)) - 1.
// When delta >= 1 a representable constant always exists; 0 < delta < 1 is
// the regime where integer positions decide and the pre-correction test
// could err.
Rational delta_gap(const RadixConfig& cfg, int t0, int u, std::int64_t d, std::int64_t k);

// Integer margin between the rounded sides of the selection condition:
// Delta = floor(2^{t-u}(d + rho - 1) k) - ceil(2^{t-u}(d - rho)(k + 1) + 1).
// Delta >= 0 exactly when a selection constant on the 2^-t grid exists for
// this (d, k) cell.
std::int64_t delta_margin(const RadixConfig& cfg, int t, int u, std::int64_t d, std::int64_t k);

}  // namespace srtsel
