#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

// Exact arithmetic substrate: checked 128-bit integers, rationals in lowest
// terms, and dyadic values m * 2^e. No floating point is used for anything
// that feeds a decision; doubles appear only in diagnostics.

namespace srtsel {

using Int128 = __int128;

// Raised when a value leaves the representable range. The quantities handled
// by this library fit in far fewer than 128 bits, so any overflow is a bug in
// the caller, never something to wrap around.
struct OverflowError : std::overflow_error {
    explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

Int128 checked_add(Int128 a, Int128 b);
Int128 checked_sub(Int128 a, Int128 b);
Int128 checked_mul(Int128 a, Int128 b);

// 2^e for 0 <= e <= 126.
Int128 pow2_128(int e);

Int128 gcd_128(Int128 a, Int128 b);

// Floor and ceiling division with mathematical semantics (round toward
// -infinity / +infinity), den != 0.
Int128 floor_div(Int128 num, Int128 den);
Int128 ceil_div(Int128 num, Int128 den);

std::string to_string_128(Int128 v);

// Rational number, always stored in lowest terms with positive denominator.
// Zero is 0/1. All operations are exact; overflow throws.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(Int128 num, Int128 den);

    // 2^e for any e in [-126, 126].
    static Rational pow2(int e);

    Int128 numerator() const { return num_; }
    Int128 denominator() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_negative() const { return num_ < 0; }

    Int128 floor() const;
    Int128 ceil() const;

    friend Rational operator+(const Rational& x, const Rational& y);
    friend Rational operator-(const Rational& x, const Rational& y);
    friend Rational operator*(const Rational& x, const Rational& y);
    friend Rational operator-(const Rational& x);

    friend bool operator==(const Rational& x, const Rational& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const Rational& x, const Rational& y) { return !(x == y); }
    friend bool operator<(const Rational& x, const Rational& y);
    friend bool operator<=(const Rational& x, const Rational& y);
    friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
    friend bool operator>=(const Rational& x, const Rational& y) { return y <= x; }

    double to_double() const;     // diagnostics only
    std::string to_string() const;

  private:
    Int128 num_;
    Int128 den_;  // > 0
};

// Dyadic value mantissa * 2^exponent, canonical: mantissa odd, or zero with
// exponent zero. Converts to Rational without loss.
struct Dyadic {
    Int128 mantissa = 0;
    int exponent = 0;

    friend bool operator==(const Dyadic& x, const Dyadic& y) {
        return x.mantissa == y.mantissa && x.exponent == y.exponent;
    }
};

// Canonicalizing constructor.
Dyadic make_dyadic(Int128 mantissa, int exponent);

Rational dyadic_to_rational(const Dyadic& d);

// Exact conversion; throws std::domain_error if the rational is not dyadic.
Dyadic dyadic_from_rational(const Rational& r);

}  // namespace srtsel
