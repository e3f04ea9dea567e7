#include "srtsel/exactnum.hpp"

#include <limits>

namespace srtsel {

namespace {

constexpr Int128 kInt128Max = (~static_cast<unsigned __int128>(0)) >> 1;
constexpr Int128 kInt128Min = -kInt128Max - 1;

}  // namespace

Int128 checked_add(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int128 add overflow");
    return r;
}

Int128 checked_sub(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int128 sub overflow");
    return r;
}

Int128 checked_mul(Int128 a, Int128 b) {
    // Manual check: some toolchains route __builtin_mul_overflow for __int128
    // through a libgcc call that may be absent.
    if (a == 0 || b == 0) return 0;
    if (a == kInt128Min || b == kInt128Min) throw OverflowError("int128 mul overflow");
    unsigned __int128 ua = a < 0 ? static_cast<unsigned __int128>(-a) : static_cast<unsigned __int128>(a);
    unsigned __int128 ub = b < 0 ? static_cast<unsigned __int128>(-b) : static_cast<unsigned __int128>(b);
    unsigned __int128 ur = ua * ub;
    if (ur / ua != ub) throw OverflowError("int128 mul overflow");
    bool neg = (a < 0) != (b < 0);
    unsigned __int128 limit =
        static_cast<unsigned __int128>(kInt128Max) + (neg ? 1 : 0);
    if (ur > limit) throw OverflowError("int128 mul overflow");
    return neg ? -static_cast<Int128>(ur) : static_cast<Int128>(ur);
}

Int128 pow2_128(int e) {
    if (e < 0 || e > 126) throw OverflowError("pow2_128 exponent out of range");
    return static_cast<Int128>(1) << e;
}

Int128 gcd_128(Int128 a, Int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Int128 floor_div(Int128 num, Int128 den) {
    if (den == 0) throw std::domain_error("floor_div by zero");
    Int128 q = num / den;
    Int128 r = num % den;
    if (r != 0 && ((r < 0) != (den < 0))) --q;
    return q;
}

Int128 ceil_div(Int128 num, Int128 den) {
    if (den == 0) throw std::domain_error("ceil_div by zero");
    Int128 q = num / den;
    Int128 r = num % den;
    if (r != 0 && ((r < 0) == (den < 0))) ++q;
    return q;
}

std::string to_string_128(Int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                              : static_cast<unsigned __int128>(v);
    std::string digits;
    while (u != 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
}

Rational::Rational(Int128 num, Int128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = checked_sub(0, num);
        den = checked_sub(0, den);
    }
    Int128 g = gcd_128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
    if (num_ == 0) den_ = 1;
}

Rational Rational::pow2(int e) {
    if (e >= 0) return Rational(pow2_128(e), 1);
    return Rational(1, pow2_128(-e));
}

Int128 Rational::floor() const { return floor_div(num_, den_); }

Int128 Rational::ceil() const { return ceil_div(num_, den_); }

Rational operator+(const Rational& x, const Rational& y) {
    // Work over lcm(x.den, y.den) so long dyadic chains keep headroom.
    Int128 g = gcd_128(x.den_, y.den_);
    Int128 num = checked_add(checked_mul(x.num_, y.den_ / g), checked_mul(y.num_, x.den_ / g));
    return Rational(num, checked_mul(x.den_, y.den_ / g));
}

Rational operator-(const Rational& x, const Rational& y) {
    Int128 g = gcd_128(x.den_, y.den_);
    Int128 num = checked_sub(checked_mul(x.num_, y.den_ / g), checked_mul(y.num_, x.den_ / g));
    return Rational(num, checked_mul(x.den_, y.den_ / g));
}

Rational operator*(const Rational& x, const Rational& y) {
    // Cross-reduce before multiplying to keep intermediates small.
    Int128 g1 = gcd_128(x.num_, y.den_);
    Int128 g2 = gcd_128(y.num_, x.den_);
    Int128 num = checked_mul(x.num_ / g1, y.num_ / g2);
    Int128 den = checked_mul(x.den_ / g2, y.den_ / g1);
    return Rational(num, den);
}

Rational operator-(const Rational& x) { return Rational(checked_sub(0, x.num_), x.den_); }

bool operator<(const Rational& x, const Rational& y) {
    return checked_mul(x.num_, y.den_) < checked_mul(y.num_, x.den_);
}

bool operator<=(const Rational& x, const Rational& y) {
    return checked_mul(x.num_, y.den_) <= checked_mul(y.num_, x.den_);
}

double Rational::to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
    if (den_ == 1) return to_string_128(num_);
    return to_string_128(num_) + "/" + to_string_128(den_);
}

Dyadic make_dyadic(Int128 mantissa, int exponent) {
    Dyadic d;
    if (mantissa == 0) return d;
    while ((mantissa & 1) == 0) {
        mantissa >>= 1;
        ++exponent;
    }
    d.mantissa = mantissa;
    d.exponent = exponent;
    return d;
}

Rational dyadic_to_rational(const Dyadic& d) {
    if (d.exponent >= 0) return Rational(checked_mul(d.mantissa, pow2_128(d.exponent)), 1);
    return Rational(d.mantissa, pow2_128(-d.exponent));
}

Dyadic dyadic_from_rational(const Rational& r) {
    Int128 den = r.denominator();
    int e = 0;
    while ((den & 1) == 0) {
        den >>= 1;
        ++e;
    }
    if (den != 1) throw std::domain_error("rational is not dyadic: " + r.to_string());
    return make_dyadic(r.numerator(), -e);
}

}  // namespace srtsel
