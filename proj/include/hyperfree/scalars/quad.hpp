#pragma once

#include <string>
#include <string_view>

#include "hyperfree/scalars/bigrat.hpp"

namespace hyperfree {

/// a + b*sqrt(d) in the quadratic field Q(sqrt(d)), d square-free and not 0 or 1.
///
/// Rational elements (b = 0) may carry d = 0, meaning "not yet attached to a field";
/// they combine with elements of any Q(sqrt(d)). Combining two different nonzero d is an error.
class QuadElem {
public:
    QuadElem() = default;
    QuadElem(long v) : a_(v) {}
    QuadElem(const BigRat& a) : a_(a) {}
    QuadElem(long d, BigRat a, BigRat b) : d_(d), a_(std::move(a)), b_(std::move(b)) {
        if (d == 0 || d == 1 || squarefree_decomposition(BigInt(d)).second != 1)
            throw Error("quadratic field parameter " + std::to_string(d) + " is not square-free");
    }

    /// sqrt(d) itself.
    static QuadElem sqrt_of(long d) { return QuadElem(d, BigRat(0), BigRat(1)); }

    long d() const { return d_; }
    const BigRat& a() const { return a_; }
    const BigRat& b() const { return b_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    QuadElem conjugate() const { return make(d_, a_, -b_); }
    /// a^2 - d b^2
    BigRat norm() const { return a_ * a_ - BigRat(d_) * b_ * b_; }

    QuadElem operator-() const { return make(d_, -a_, -b_); }
    friend QuadElem operator+(const QuadElem& x, const QuadElem& y) {
        return make(common(x, y), x.a_ + y.a_, x.b_ + y.b_);
    }
    friend QuadElem operator-(const QuadElem& x, const QuadElem& y) { return x + (-y); }
    friend QuadElem operator*(const QuadElem& x, const QuadElem& y) {
        long d = common(x, y);
        return make(d, x.a_ * y.a_ + BigRat(d) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
    }
    friend QuadElem operator/(const QuadElem& x, const QuadElem& y) {
        if (y.is_zero()) throw DivisionByZero();
        common(x, y);
        BigRat n = y.norm();
        QuadElem inv = make(y.d_, y.a_ / n, -y.b_ / n);
        return x * inv;
    }
    QuadElem& operator+=(const QuadElem& o) { return *this = *this + o; }
    QuadElem& operator-=(const QuadElem& o) { return *this = *this - o; }
    QuadElem& operator*=(const QuadElem& o) { return *this = *this * o; }
    QuadElem& operator/=(const QuadElem& o) { return *this = *this / o; }

    friend bool operator==(const QuadElem& x, const QuadElem& y) {
        if (x.b_.is_zero() && y.b_.is_zero()) return x.a_ == y.a_;
        return common(x, y) != 0 && x.a_ == y.a_ && x.b_ == y.b_;
    }

    /// "a" when rational, otherwise "(a + b*sqrt(d))".
    std::string to_string() const {
        if (b_.is_zero()) return a_.to_string();
        return "(" + a_.to_string() + " + " + b_.to_string() + "*sqrt(" + std::to_string(d_) + "))";
    }

    /// Inverse of to_string.
    static QuadElem parse(std::string_view text) {
        std::string s(text);
        if (s.empty() || s.front() != '(') return QuadElem(BigRat::parse(s));
        auto plus = s.find(" + ");
        auto star = s.find("*sqrt(");
        if (s.back() != ')' || plus == std::string::npos || star == std::string::npos || star < plus)
            throw Error("invalid quadratic literal '" + s + "'");
        BigRat a = BigRat::parse(s.substr(1, plus - 1));
        BigRat b = BigRat::parse(s.substr(plus + 3, star - plus - 3));
        long d = std::stol(s.substr(star + 6, s.size() - star - 8));
        return QuadElem(d, a, b);
    }

private:
    static QuadElem make(long d, BigRat a, BigRat b) {
        QuadElem q;
        q.a_ = std::move(a);
        q.b_ = std::move(b);
        q.d_ = d;
        return q;
    }

    static long common(const QuadElem& x, const QuadElem& y) {
        if (x.d_ == 0) return y.d_;
        if (y.d_ == 0 || y.d_ == x.d_) return x.d_;
        throw MixedQuadraticField(x.d_, y.d_);
    }

    long d_ = 0;
    BigRat a_;
    BigRat b_;
};

} // namespace hyperfree
