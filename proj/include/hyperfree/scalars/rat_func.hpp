#pragma once

#include <string>
#include <utility>

#include "hyperfree/scalars/int_poly.hpp"

namespace hyperfree {

/// Element of the rational function field Q(t), stored as num/den with num, den in Z[t].
///
/// Canonical form: den has positive leading coefficient and num, den share no common
/// factor in Z[t] (neither a polynomial factor nor an integer content factor). Zero is 0/1.
/// Equality is therefore componentwise.
class RatFunc {
public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {}
    RatFunc(const BigRat& c) : num_(IntPoly(std::vector<BigInt>{c.numerator()})),
                               den_(IntPoly(std::vector<BigInt>{c.denominator()})) {}
    RatFunc(IntPoly p) : num_(std::move(p)), den_(1) {}
    RatFunc(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZero();
        normalize();
    }

    static RatFunc t() { return RatFunc(IntPoly{0, 1}); }

    const IntPoly& numerator() const { return num_; }
    const IntPoly& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RatFunc operator-() const { return RatFunc(-num_, den_, Reduced{}); }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return {};
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw DivisionByZero();
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string to_string() const {
        if (den_ == IntPoly(1)) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    struct Reduced {};
    RatFunc(IntPoly num, IntPoly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (num_.is_zero()) {
            den_ = IntPoly(1);
            return;
        }
        IntPoly g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = *divide_exact(num_, g);
            den_ = *divide_exact(den_, g);
        }
        BigInt c = gcd(num_.content(), den_.content());
        if (den_.lead() < 0) c = -c;
        if (c != 1) {
            num_ = *divide_exact(num_, IntPoly(std::vector<BigInt>{c}));
            den_ = *divide_exact(den_, IntPoly(std::vector<BigInt>{c}));
        }
    }

    IntPoly num_;
    IntPoly den_;
};

} // namespace hyperfree
