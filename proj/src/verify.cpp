#include "srtsel/verify.hpp"

#include <stdexcept>

#include <json.hpp>

#include "srtsel/engine.hpp"

namespace srtsel {

namespace {

// c/(beta-1) * y <= p, all exact. c may be negative.
bool line_le_point(Int128 c, const Dyadic& y, std::int64_t beta_minus_1, const Dyadic& p) {
    Int128 lhs = checked_mul(c, y.mantissa);
    Int128 rhs = checked_mul(static_cast<Int128>(beta_minus_1), p.mantissa);
    int el = y.exponent, er = p.exponent;
    if (el >= er) lhs = checked_mul(lhs, pow2_128(el - er));
    else rhs = checked_mul(rhs, pow2_128(er - el));
    return lhs <= rhs;
}

// p <= c/(beta-1) * y
bool point_le_line(const Dyadic& p, Int128 c, std::int64_t beta_minus_1, const Dyadic& y) {
    Int128 lhs = checked_mul(static_cast<Int128>(beta_minus_1), p.mantissa);
    Int128 rhs = checked_mul(c, y.mantissa);
    int el = p.exponent, er = y.exponent;
    if (el >= er) lhs = checked_mul(lhs, pow2_128(el - er));
    else rhs = checked_mul(rhs, pow2_128(er - el));
    return lhs <= rhs;
}

void require_wedge_identity(const RadixConfig& cfg) {
    // (beta - 1) rho = a, hence beta rho = a + rho; the clipping logic for
    // digit a leans on this.
    if (cfg.rho() * Rational(cfg.beta - 1) != Rational(cfg.a))
        throw std::logic_error("wedge identity (beta-1) rho = a violated");
}

}  // namespace

Rectangle cell_rectangle(const RadixConfig&, int u, int t, std::int64_t k, std::int64_t s) {
    Rectangle rect;
    rect.y_lo = make_dyadic(k, -u);
    rect.y_hi = make_dyadic(k + 1, -u);
    rect.p_lo = make_dyadic(s, -t);
    rect.p_hi = make_dyadic(s + 1, -t);
    return rect;
}

bool digit_region_contains(const RadixConfig& cfg, std::int64_t d, const Rectangle& rect) {
    if (d < 0 || d > cfg.a) throw std::domain_error("digit out of range [0, a]");
    std::int64_t bm1 = cfg.beta - 1;
    Int128 c_low = static_cast<Int128>(d) * bm1 - cfg.a;   // d - rho, scaled
    Int128 c_high = static_cast<Int128>(d) * bm1 + cfg.a;  // d + rho, scaled
    if (!line_le_point(c_low, rect.y_hi, bm1, rect.p_lo)) return false;
    if (d == cfg.a) return true;  // region top coincides with the wedge top
    return point_le_line(rect.p_hi, c_high, bm1, rect.y_lo);
}

VerificationReport verify_table_geometric(const SelectionTable& table) {
    const RadixConfig& cfg = table.cfg;
    require_wedge_identity(cfg);

    VerificationReport report;
    report.cfg = cfg;
    report.u = table.u;
    report.t = table.t;

    std::int64_t bm1 = cfg.beta - 1;
    for (std::int64_t k = table.k_begin(); k < table.k_end(); ++k) {
        Dyadic y_lo = make_dyadic(k, -table.u);
        Dyadic y_hi = make_dyadic(k + 1, -table.u);
        std::int64_t top = table.s_max(k);
        for (std::int64_t s = 0; s <= top; ++s) {
            ++report.checked_count;
            std::int64_t d = select_digit(table, {k, s});
            Dyadic p_lo = make_dyadic(s, -table.t);
            Dyadic p_hi = make_dyadic(s + 1, -table.t);
            if (d >= 1 && !line_le_point(static_cast<Int128>(d) * bm1 - cfg.a, y_hi, bm1, p_lo))
                report.violations.push_back({k, s, d, Side::lower});
            // Threshold cells must clear the previous digit's ceiling with a
            // full grid step of slack; elsewhere the cell's own region top
            // applies (none for d = a, where the wedge clips).
            bool boundary = d >= 1 && s == table.threshold(k, d);
            if (boundary) {
                Int128 c = static_cast<Int128>(d - 1) * bm1 + cfg.a;
                if (!point_le_line(p_hi, c, bm1, y_lo))
                    report.violations.push_back({k, s, d, Side::upper});
            } else if (d < cfg.a) {
                Int128 c = static_cast<Int128>(d) * bm1 + cfg.a;
                if (!point_le_line(p_hi, c, bm1, y_lo))
                    report.violations.push_back({k, s, d, Side::upper});
            }
        }
    }
    return report;
}

std::string VerificationReport::to_json() const {
    nlohmann::json j;
    j["valid"] = valid();
    j["checked"] = checked_count;
    j["violations"] = nlohmann::json::array();
    for (const auto& v : violations) {
        nlohmann::json e;
        e["k"] = v.k;
        e["s"] = v.s;
        e["d"] = v.digit;
        e["side"] = v.side == Side::lower ? "lower" : "upper";
        j["violations"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

std::vector<DeltaInputs> find_parameter_violations(const RadixConfig& cfg, int u, int t) {
    require_wedge_identity(cfg);
    std::vector<DeltaInputs> out;
    std::int64_t bm1 = cfg.beta - 1;
    // Work on the grid 2^-t: threshold s is usable for the d-1 / d boundary
    // at divisor index k iff
    //   s 2^-t >= (d - rho)(k+1) 2^-u   (cell above the threshold is in d)
    //   (s+1) 2^-t <= (d-1+rho) k 2^-u  (and still below d-1's ceiling)
    // Both sides are scaled by (beta-1) 2^max(0,u-t) to integers.
    Int128 scale = t >= u ? pow2_128(t - u) : 1;
    Int128 den = checked_mul(static_cast<Int128>(bm1), t >= u ? 1 : pow2_128(u - t));
    std::int64_t k_lo = std::int64_t{1} << (u - 1);
    for (std::int64_t d = 1; d <= cfg.a; ++d) {
        Int128 c_lo = checked_mul(static_cast<Int128>(d * bm1 - cfg.a), scale);
        Int128 c_hi = checked_mul(static_cast<Int128>((d - 1) * bm1 + cfg.a), scale);
        for (std::int64_t k = k_lo; k < 2 * k_lo; ++k) {
            Int128 s = ceil_div(checked_mul(c_lo, static_cast<Int128>(k + 1)), den);
            if (checked_mul(s + 1, den) > checked_mul(c_hi, static_cast<Int128>(k)))
                out.push_back({d, k});
        }
    }
    return out;
}

SrtTrace simulate_division(const SelectionTable& table, const Dyadic& x, const Dyadic& y, int n,
                           EstimatePolicy policy, std::mt19937_64* rng) {
    const RadixConfig& cfg = table.cfg;
    Rational x_rat = dyadic_to_rational(x);
    Rational y_rat = dyadic_to_rational(y);
    Rational half = Rational(1, 2);
    if (x_rat < half || !(x_rat < Rational(1))) throw std::domain_error("x must lie in [1/2, 1)");
    if (y_rat < half || !(y_rat < Rational(1))) throw std::domain_error("y must lie in [1/2, 1)");
    if (y.exponent < -(table.u + 8))
        throw std::domain_error("y must have at most u+8 fractional bits");
    if (n < 1) throw std::domain_error("need at least one digit");
    if (policy == EstimatePolicy::randomized && rng == nullptr)
        throw std::invalid_argument("randomized estimate policy needs an rng");

    SrtTrace trace;
    trace.x = x;
    trace.y = y;
    // k = floor(y 2^u); y in [1/2, 1) puts k in [2^{u-1}, 2^u).
    trace.k = static_cast<std::int64_t>((Rational::pow2(table.u) * y_rat).floor());

    Rational rho = cfg.rho();
    Rational bound = rho * y_rat;
    Rational r = x_rat * Rational(1, cfg.beta);  // r_0, |r_0| <= 1/4 <= rho y
    Rational beta_rat = Rational(cfg.beta);
    Rational pow_t = Rational::pow2(table.t);

    for (int i = 1; i <= n; ++i) {
        Rational shifted = beta_rat * r;
        bool negative = shifted.is_negative();
        Rational mag = negative ? -shifted : shifted;
        std::int64_t cell = static_cast<std::int64_t>((pow_t * mag).floor());
        std::int64_t eps = 0;
        if (policy == EstimatePolicy::low_by_one) eps = 1;
        else if (policy == EstimatePolicy::randomized) eps = static_cast<std::int64_t>((*rng)() & 1u);
        std::int64_t s_hat = cell - eps < 0 ? 0 : cell - eps;

        std::int64_t digit;
        try {
            // Select on the magnitude and negate afterwards: an integer index
            // cannot carry the sign of a zero cell.
            digit = select_digit(table, {trace.k, s_hat});
            if (negative) digit = -digit;
        } catch (const std::out_of_range& e) {
            trace.failed = true;
            trace.failed_step = static_cast<std::size_t>(i);
            trace.failure = e.what();
            return trace;
        }

        r = shifted - Rational(digit) * y_rat;
        SrtStep step;
        step.digit = digit;
        step.remainder = r;
        Rational abs_r = r.is_negative() ? -r : r;
        step.bound_ok = abs_r <= bound;
        trace.steps.push_back(step);
        if (!step.bound_ok) {
            trace.failed = true;
            trace.failed_step = static_cast<std::size_t>(i);
            trace.failure = "remainder bound |r| <= rho y violated";
            return trace;
        }
    }
    return trace;
}

CrossCheckReport cross_check_engine(const RadixConfig& cfg) {
    CrossCheckReport report;
    report.cfg = cfg;
    int lo = u_min(cfg);
    int hi = u_max(cfg);
    for (int u = lo; u <= hi; ++u) {
        DecisionRecord rec = decide_t(cfg, u);
        if (!find_parameter_violations(cfg, u, rec.t_final).empty())
            report.mismatches.push_back({u, rec.t_final, true});
        if (rec.t_final == rec.t_hat + 1 && find_parameter_violations(cfg, u, rec.t_hat).empty())
            report.mismatches.push_back({u, rec.t_hat, false});
    }
    report.ok = report.mismatches.empty();
    return report;
}

Dyadic random_unit_dyadic(int frac_bits, std::mt19937_64& rng) {
    if (frac_bits < 1 || frac_bits > 62) throw std::domain_error("frac_bits out of range");
    std::uint64_t half = std::uint64_t{1} << (frac_bits - 1);
    std::uint64_t mantissa = half + (rng() & (half - 1));
    return make_dyadic(static_cast<Int128>(mantissa), -frac_bits);
}

Dyadic random_dyadic_in_cell(std::int64_t k, int u, int frac_bits, std::mt19937_64& rng) {
    if (frac_bits < u || frac_bits > 62) throw std::domain_error("frac_bits must be >= u");
    std::uint64_t span = std::uint64_t{1} << (frac_bits - u);
    std::uint64_t mantissa = static_cast<std::uint64_t>(k) * span + (rng() & (span - 1));
    return make_dyadic(static_cast<Int128>(mantissa), -frac_bits);
}

}  // namespace srtsel
