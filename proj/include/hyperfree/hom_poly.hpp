#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hyperfree/arrangement.hpp"
#include "hyperfree/scalars/domain.hpp"

namespace hyperfree {

/// Exponent vector (a, b, c) of the monomial x1^a x2^b x3^c.
using Monomial = std::array<int, 3>;

/// Monomials of degree p are indexed by decreasing a, then decreasing b:
/// x1^p, x1^(p-1) x2, x1^(p-1) x3, x1^(p-2) x2^2, ...
inline int monomial_count(int p) { return p < 0 ? 0 : (p + 1) * (p + 2) / 2; }

inline int monomial_index(int a, int b, int p) {
    const int r = p - a;
    return r * (r + 1) / 2 + (r - b);
}

inline std::vector<Monomial> monomials(int p) {
    std::vector<Monomial> out;
    for (int a = p; a >= 0; --a)
        for (int b = p - a; b >= 0; --b) out.push_back({a, b, p - a - b});
    return out;
}

/// Homogeneous polynomial of fixed degree in x1, x2, x3 with dense coefficients.
template <ScalarDomain K>
class HomPoly {
public:
    HomPoly() : HomPoly(0) {}
    explicit HomPoly(int degree) : degree_(degree), coeffs_(monomial_count(degree)) {}

    static HomPoly linear(const Vec3<K>& alpha) {
        HomPoly p(1);
        p.coeffs_ = {alpha[0], alpha[1], alpha[2]};
        return p;
    }

    int degree() const { return degree_; }
    const std::vector<K>& coeffs() const { return coeffs_; }
    std::vector<K>& coeffs() { return coeffs_; }
    const K& coeff(const Monomial& m) const { return coeffs_[monomial_index(m[0], m[1], degree_)]; }
    K& coeff(const Monomial& m) { return coeffs_[monomial_index(m[0], m[1], degree_)]; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    friend HomPoly operator+(HomPoly a, const HomPoly& b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
        return a;
    }
    friend HomPoly operator-(HomPoly a, const HomPoly& b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] -= b.coeffs_[i];
        return a;
    }
    HomPoly scaled(const K& s) const {
        HomPoly out = *this;
        for (auto& c : out.coeffs_) c *= s;
        return out;
    }
    friend HomPoly operator*(const HomPoly& a, const HomPoly& b) {
        HomPoly out(a.degree_ + b.degree_);
        const auto ma = monomials(a.degree_);
        const auto mb = monomials(b.degree_);
        for (std::size_t i = 0; i < ma.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < mb.size(); ++j) {
                if (b.coeffs_[j].is_zero()) continue;
                out.coeffs_[monomial_index(ma[i][0] + mb[j][0], ma[i][1] + mb[j][1], out.degree_)] +=
                    a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return out;
    }
    friend bool operator==(const HomPoly& a, const HomPoly& b) {
        if (a.degree_ == b.degree_) return a.coeffs_ == b.coeffs_;
        return a.is_zero() && b.is_zero();
    }

    K eval(const Vec3<K>& x) const {
        K acc{};
        const auto ms = monomials(degree_);
        for (std::size_t i = 0; i < ms.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            K term = coeffs_[i];
            for (int v = 0; v < 3; ++v)
                for (int k = 0; k < ms[i][v]; ++k) term *= x[v];
            acc += term;
        }
        return acc;
    }

    std::string to_string() const {
        std::string out;
        const auto ms = monomials(degree_);
        for (std::size_t i = 0; i < ms.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            std::string mono;
            for (int v = 0; v < 3; ++v) {
                if (ms[i][v] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += "x" + std::to_string(v + 1);
                if (ms[i][v] > 1) mono += "^" + std::to_string(ms[i][v]);
            }
            std::string c = coeffs_[i].to_string();
            if (mono.empty()) out += c;
            else if (c == "1") out += mono;
            else if (c == "-1") out += "-" + mono;
            else out += c + "*" + mono;
        }
        return out.empty() ? "0" : out;
    }

private:
    void check_same(const HomPoly& b) const {
        if (degree_ != b.degree_) throw Error("adding homogeneous polynomials of different degrees");
    }

    int degree_ = 0;
    std::vector<K> coeffs_;
};

/// Quotient g / alpha by long division in the pivot variable of alpha, or nullopt when the
/// remainder is nonzero.
template <ScalarDomain K>
std::optional<HomPoly<K>> divide_by_linear(const HomPoly<K>& g, const Vec3<K>& alpha) {
    int pivot = 0;
    while (pivot < 3 && alpha[pivot].is_zero()) ++pivot;
    if (pivot == 3) throw DivisionByZero();
    if (g.degree() == 0) {
        if (g.is_zero()) return HomPoly<K>(-1);
        return std::nullopt;
    }
    HomPoly<K> rem = g;
    HomPoly<K> quot(g.degree() - 1);
    const K inv = one<K>() / alpha[pivot];
    // eliminate terms by decreasing power of the pivot variable
    for (int e = g.degree(); e >= 1; --e) {
        for (const auto& m : monomials(g.degree())) {
            if (m[pivot] != e) continue;
            K c = rem.coeff(m);
            if (c.is_zero()) continue;
            Monomial q = m;
            --q[pivot];
            K f = c * inv;
            quot.coeff(q) += f;
            for (int v = 0; v < 3; ++v) {
                if (alpha[v].is_zero()) continue;
                Monomial t = q;
                ++t[v];
                rem.coeff(t) -= f * alpha[v];
            }
        }
    }
    if (!rem.is_zero()) return std::nullopt;
    return quot;
}

} // namespace hyperfree
