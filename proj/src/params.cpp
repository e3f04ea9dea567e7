#include "srtsel/params.hpp"

#include <stdexcept>
#include <string>

namespace srtsel {

namespace {

bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

// rho - 1/2 = (2a - beta + 1) / (2(beta - 1))
Rational rho_excess(const RadixConfig& cfg) {
    return Rational(2 * cfg.a - cfg.beta + 1, 2 * (cfg.beta - 1));
}

// a - rho = a(beta - 2) / (beta - 1)
Rational a_minus_rho(const RadixConfig& cfg) {
    return Rational(cfg.a * (cfg.beta - 2), cfg.beta - 1);
}

// Smallest n >= 1 with 2^-n < bound (strict) or <= bound (non-strict).
// bound must be positive.
int smallest_pow2_exponent(const Rational& bound, bool strict) {
    for (int n = 1; n <= 140; ++n) {
        Rational p = Rational::pow2(-n);
        if (strict ? (p < bound) : (p <= bound)) return n;
    }
    throw std::logic_error("no 2^-n below bound; parameters out of supported range");
}

void check_cell(const RadixConfig& cfg, int u, std::int64_t d, std::int64_t k) {
    if (d < 1 || d > cfg.a) throw std::domain_error("digit d out of range [1, a]");
    std::int64_t lo = std::int64_t{1} << (u - 1);
    if (k < lo || k >= 2 * lo) throw std::domain_error("divisor index k out of range [2^{u-1}, 2^u)");
}

}  // namespace

RadixConfig make_config(std::int64_t beta, std::int64_t a) {
    if (beta == 2)
        throw std::invalid_argument(
            "radix 2 is outside this construction (rho = a = 1; handle separately)");
    if (!is_power_of_two(beta) || beta < 4 || beta > 128)
        throw std::invalid_argument("beta must be a power of two in [4, 128]");
    if (a < beta / 2 || a > beta - 1)
        throw std::invalid_argument("digit bound a must satisfy beta/2 <= a <= beta-1");
    RadixConfig cfg;
    cfg.beta = beta;
    cfg.a = a;
    cfg.p = 0;
    for (std::int64_t v = beta; v > 1; v >>= 1) ++cfg.p;
    return cfg;
}

Rational redundancy_index(const RadixConfig& cfg) { return cfg.rho(); }

int u_min(const RadixConfig& cfg) {
    // 2^-u < (rho - 1/2)/(a - rho), strict as printed.
    Rational bound = rho_excess(cfg) * Rational(cfg.beta - 1, cfg.a * (cfg.beta - 2));
    return smallest_pow2_exponent(bound, /*strict=*/true);
}

int t_prime(const RadixConfig& cfg) {
    // smallest t with 2^{t-1} (rho - 1/2) > 1
    Rational excess = rho_excess(cfg);
    for (int t = 1; t <= 140; ++t) {
        if (Rational::pow2(t - 1) * excess > Rational(1)) return t;
    }
    throw std::logic_error("t_prime out of supported range");
}

int u_max(const RadixConfig& cfg) { return u_for_t(cfg, t_prime(cfg)); }

int u_for_t(const RadixConfig& cfg, int t) {
    Rational num = rho_excess(cfg) - Rational::pow2(1 - t);
    if (!(Rational(0) < num))
        throw std::domain_error("t below t_prime: no u satisfies the margin condition");
    Rational bound = num * Rational(cfg.beta - 1, cfg.a * (cfg.beta - 2));
    return smallest_pow2_exponent(bound, /*strict=*/false);
}

int t_hat(const RadixConfig& cfg, int u) {
    Rational rhs = rho_excess(cfg) - a_minus_rho(cfg) * Rational::pow2(-u);
    if (!(Rational(0) < rhs))
        throw std::domain_error("u below u_min: no t satisfies the weak condition");
    return smallest_pow2_exponent(rhs, /*strict=*/false);
}

Rational delta_gap(const RadixConfig& cfg, int t0, int u, std::int64_t d, std::int64_t k) {
    check_cell(cfg, u, d, k);
    Rational two_rho_minus_one = Rational(2 * cfg.a - cfg.beta + 1, cfg.beta - 1);
    Rational d_minus_rho = Rational(d * (cfg.beta - 1) - cfg.a, cfg.beta - 1);
    Rational inner = two_rho_minus_one * Rational(k) - d_minus_rho;
    return Rational::pow2(t0 - u) * inner - Rational(1);
}

std::int64_t delta_margin(const RadixConfig& cfg, int t, int u, std::int64_t d, std::int64_t k) {
    check_cell(cfg, u, d, k);
    // floor(2^{t-u}(d + rho - 1) k) - ceil(2^{t-u}(d - rho)(k + 1)) - 1,
    // cross-multiplied onto the common denominator (beta-1) 2^{max(0,u-t)}.
    Int128 scale = t >= u ? pow2_128(t - u) : 1;
    Int128 den = checked_mul(static_cast<Int128>(cfg.beta - 1), t >= u ? 1 : pow2_128(u - t));
    Int128 hi_num = checked_mul(checked_mul(static_cast<Int128>((d - 1) * (cfg.beta - 1) + cfg.a), scale),
                                static_cast<Int128>(k));
    Int128 lo_num = checked_mul(checked_mul(static_cast<Int128>(d * (cfg.beta - 1) - cfg.a), scale),
                                static_cast<Int128>(k + 1));
    Int128 delta = floor_div(hi_num, den) - ceil_div(lo_num, den) - 1;
    return static_cast<std::int64_t>(delta);
}

}  // namespace srtsel
