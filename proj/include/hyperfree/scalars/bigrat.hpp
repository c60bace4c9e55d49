#pragma once

#include <compare>
#include <gmpxx.h>
#include <ostream>
#include <string>
#include <string_view>

#include "hyperfree/errors.hpp"

namespace hyperfree {

using BigInt = mpz_class;

/// Arbitrary precision rational, always in lowest terms with positive denominator.
class BigRat {
public:
    BigRat() = default;
    BigRat(long v) : value_(v) {}
    BigRat(const BigInt& v) : value_(v) {}
    BigRat(const BigInt& num, const BigInt& den) {
        if (den == 0) throw DivisionByZero();
        value_ = mpq_class(num, den);
        value_.canonicalize();
    }
    explicit BigRat(const mpq_class& v) : value_(v) { value_.canonicalize(); }

    /// Parses "p" or "p/q" in base 10.
    static BigRat parse(std::string_view text) {
        std::string s(text);
        auto slash = s.find('/');
        BigInt num, den = 1;
        try {
            if (slash == std::string::npos) {
                num = BigInt(s, 10);
            } else {
                num = BigInt(s.substr(0, slash), 10);
                den = BigInt(s.substr(slash + 1), 10);
            }
        } catch (const std::invalid_argument&) {
            throw Error("invalid rational literal '" + s + "'");
        }
        return BigRat(num, den);
    }

    BigInt numerator() const { return value_.get_num(); }
    BigInt denominator() const { return value_.get_den(); }
    const mpq_class& raw() const { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    BigRat operator-() const { return BigRat(mpq_class(-value_)); }
    BigRat& operator+=(const BigRat& o) { value_ += o.value_; return *this; }
    BigRat& operator-=(const BigRat& o) { value_ -= o.value_; return *this; }
    BigRat& operator*=(const BigRat& o) { value_ *= o.value_; return *this; }
    BigRat& operator/=(const BigRat& o) {
        if (o.is_zero()) throw DivisionByZero();
        value_ /= o.value_;
        return *this;
    }
    friend BigRat operator+(BigRat a, const BigRat& b) { return a += b; }
    friend BigRat operator-(BigRat a, const BigRat& b) { return a -= b; }
    friend BigRat operator*(BigRat a, const BigRat& b) { return a *= b; }
    friend BigRat operator/(BigRat a, const BigRat& b) { return a /= b; }

    BigRat inverse() const { return BigRat(1) / *this; }

    friend bool operator==(const BigRat& a, const BigRat& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const BigRat& a, const BigRat& b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::string to_string() const { return value_.get_str(10); }
    friend std::ostream& operator<<(std::ostream& os, const BigRat& r) { return os << r.to_string(); }

private:
    mpq_class value_{0};
};

inline BigInt abs(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline bool is_perfect_square(const BigInt& v) {
    return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0;
}

inline BigInt isqrt(const BigInt& v) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

/// Splits v = d * s^2 with d square-free (sign carried by d). v must be nonzero.
inline std::pair<BigInt, BigInt> squarefree_decomposition(const BigInt& v) {
    if (v == 0) throw Error("squarefree decomposition of zero");
    BigInt rest = abs(v);
    BigInt d = 1, s = 1;
    for (BigInt p = 2; p * p <= rest; ++p) {
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) s *= p;
        if (e % 2 == 1) d *= p;
    }
    d *= rest;
    if (v < 0) d = -d;
    return {d, s};
}

} // namespace hyperfree
