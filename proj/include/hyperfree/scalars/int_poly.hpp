#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperfree/scalars/bigrat.hpp"

namespace hyperfree {

/// Univariate polynomial with arbitrary precision integer coefficients, ascending degree.
/// The coefficient list never has a trailing zero; the zero polynomial is the empty list.
class IntPoly {
public:
    IntPoly() = default;
    IntPoly(long c) : coeffs_{BigInt(c)} { trim(); }
    IntPoly(std::initializer_list<long> cs) {
        for (long c : cs) coeffs_.emplace_back(c);
        trim();
    }
    explicit IntPoly(std::vector<BigInt> cs) : coeffs_(std::move(cs)) { trim(); }

    /// The monomial c * t^k.
    static IntPoly monomial(const BigInt& c, std::size_t k) {
        std::vector<BigInt> cs(k + 1, BigInt(0));
        cs[k] = c;
        return IntPoly(std::move(cs));
    }

    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    BigInt coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : BigInt(0); }
    BigInt lead() const { return coeffs_.empty() ? BigInt(0) : coeffs_.back(); }

    BigInt content() const {
        BigInt g = 0;
        for (const auto& c : coeffs_) g = gcd(g, c);
        return g;
    }

    /// p / content(p), with positive leading coefficient. Zero stays zero.
    IntPoly primitive_part() const {
        if (is_zero()) return {};
        BigInt g = content();
        if (lead() < 0) g = -g;
        std::vector<BigInt> cs = coeffs_;
        for (auto& c : cs) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        return IntPoly(std::move(cs));
    }

    IntPoly derivative() const {
        std::vector<BigInt> cs;
        for (std::size_t k = 1; k < coeffs_.size(); ++k) cs.push_back(coeffs_[k] * static_cast<long>(k));
        return IntPoly(std::move(cs));
    }

    IntPoly operator-() const {
        auto cs = coeffs_;
        for (auto& c : cs) c = -c;
        return IntPoly(std::move(cs));
    }
    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> cs(std::max(a.coeffs_.size(), b.coeffs_.size()), BigInt(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) cs[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) cs[i] += b.coeffs_[i];
        return IntPoly(std::move(cs));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> cs(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) cs[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return IntPoly(std::move(cs));
    }
    IntPoly& operator+=(const IntPoly& o) { return *this = *this + o; }
    IntPoly& operator-=(const IntPoly& o) { return *this = *this - o; }
    IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }

    IntPoly scaled(const BigInt& s) const {
        auto cs = coeffs_;
        for (auto& c : cs) c *= s;
        return IntPoly(std::move(cs));
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// Total order: by degree, then coefficients from the top down.
    friend bool operator<(const IntPoly& a, const IntPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (int k = a.degree(); k >= 0; --k) {
            if (a.coeffs_[k] != b.coeffs_[k]) return a.coeffs_[k] < b.coeffs_[k];
        }
        return false;
    }

    /// Exact value at a rational point.
    BigRat at(const BigRat& x) const {
        BigRat acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + BigRat(*it);
        return acc;
    }

    std::string to_string(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const BigInt& c = coeffs_[k];
            if (c == 0) continue;
            BigInt mag = abs(c);
            if (out.empty()) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            bool unit = mag == 1 && k > 0;
            if (!unit) out += mag.get_str();
            if (k > 0) {
                if (!unit) out += "*";
                out += var;
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<BigInt> coeffs_;
};

/// Division in Z[t]. Returns the quotient when q divides p with integral quotient,
/// otherwise nullopt. Throws on q = 0.
inline std::optional<IntPoly> divide_exact(const IntPoly& p, const IntPoly& q) {
    if (q.is_zero()) throw DivisionByZero();
    if (p.is_zero()) return IntPoly{};
    if (p.degree() < q.degree()) return std::nullopt;
    std::vector<BigInt> rem = p.coeffs();
    std::vector<BigInt> quot(p.degree() - q.degree() + 1, BigInt(0));
    const auto& qc = q.coeffs();
    const BigInt lq = q.lead();
    for (int k = p.degree() - q.degree(); k >= 0; --k) {
        const BigInt& top = rem[k + q.degree()];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lq.get_mpz_t())) return std::nullopt;
        BigInt f = top / lq;
        quot[k] = f;
        for (std::size_t i = 0; i < qc.size(); ++i) rem[k + i] -= f * qc[i];
    }
    for (const auto& c : rem) {
        if (c != 0) return std::nullopt;
    }
    return IntPoly(std::move(quot));
}

/// Pseudo-remainder of p by q: the remainder of lc(q)^(deg p - deg q + 1) * p.
inline IntPoly pseudo_remainder(const IntPoly& p, const IntPoly& q) {
    if (q.is_zero()) throw DivisionByZero();
    if (p.degree() < q.degree()) return p;
    std::vector<BigInt> rem = p.coeffs();
    const auto& qc = q.coeffs();
    const BigInt lq = q.lead();
    const int dq = q.degree();
    for (int top = p.degree(); top >= dq; --top) {
        BigInt f = rem[top];
        for (auto& c : rem) c *= lq;
        if (f == 0) continue;
        for (int i = 0; i <= dq; ++i) rem[top - dq + i] -= f * qc[i];
    }
    return IntPoly(std::move(rem));
}

/// Primitive gcd in Q[t] with positive leading coefficient; gcd(0, 0) = 0.
inline IntPoly poly_gcd(const IntPoly& p, const IntPoly& q) {
    IntPoly a = p.primitive_part();
    IntPoly b = q.primitive_part();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = pseudo_remainder(a, b).primitive_part();
        a = std::move(b);
        b = std::move(r);
    }
    return a.primitive_part();
}

/// Ring homomorphism Z[t] -> K given by t -> x (Horner scheme).
template <class K>
K evaluate(const IntPoly& p, const K& x) {
    K acc{};
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + K(BigRat(*it));
    return acc;
}

namespace detail {

inline std::vector<BigInt> positive_divisors(const BigInt& value) {
    BigInt n = abs(value);
    std::vector<std::pair<BigInt, int>> primes;
    for (BigInt p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        primes.emplace_back(p, e);
    }
    if (n > 1) primes.emplace_back(n, 1);
    std::vector<BigInt> divs{BigInt(1)};
    for (const auto& [p, e] : primes) {
        std::size_t base = divs.size();
        BigInt pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

} // namespace detail

/// All rational roots of p (without multiplicity), ascending.
inline std::vector<BigRat> rational_roots(const IntPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial();
    IntPoly f = p.primitive_part();
    std::vector<BigRat> roots;
    std::size_t low = 0;
    while (low < f.coeffs().size() && f.coeffs()[low] == 0) ++low;
    if (low > 0) {
        roots.emplace_back(0);
        f = IntPoly(std::vector<BigInt>(f.coeffs().begin() + static_cast<long>(low), f.coeffs().end()));
    }
    if (f.degree() >= 1) {
        auto nums = detail::positive_divisors(f.coeffs().front());
        auto dens = detail::positive_divisors(f.lead());
        for (const auto& a : nums) {
            for (const auto& b : dens) {
                if (gcd(a, b) != 1) continue;
                for (int s : {1, -1}) {
                    BigRat r(BigInt(a * s), b);
                    if (f.at(r).is_zero()) roots.push_back(r);
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

/// Result of peeling linear and quadratic factors off a polynomial.
struct LowDegreeFactorization {
    /// Primitive factors with positive leading coefficient: linear ones first, then quadratics.
    std::vector<std::pair<IntPoly, int>> factors;
    /// Primitive cofactor with no rational root and no detected quadratic factor (1 if none).
    IntPoly remainder;
    bool fully_resolved() const { return remainder.degree() == 0; }
};

namespace detail {

/// Searches an integer quadratic a t^2 + b t + c dividing f (primitive, square-free,
/// without rational roots). The search is bounded; nullopt when none found within it.
inline std::optional<IntPoly> find_quadratic_factor(const IntPoly& f, std::size_t budget = 4'000'000) {
    if (f.degree() < 2) return std::nullopt;
    if (f.degree() == 2) return f;
    // Cauchy bound on |root|: every root r satisfies |r| < 1 + max |f_i / f_n|.
    BigRat bound_q;
    for (int i = 0; i < f.degree(); ++i) {
        BigRat q(abs(f.coeffs()[i]), abs(f.lead()));
        if (q > bound_q) bound_q = q;
    }
    BigInt cauchy = bound_q.numerator() / bound_q.denominator() + 2;
    std::size_t spent = 0;
    for (const auto& a : positive_divisors(f.lead())) {
        for (const auto& cabs : positive_divisors(f.coeffs().front())) {
            // b = -a (r1 + r2), so |b| <= 2 a cauchy.
            BigInt bmax = 2 * a * cauchy;
            for (int s : {1, -1}) {
                BigInt c = cabs * s;
                for (BigInt b = -bmax; b <= bmax; ++b) {
                    if (++spent > budget) return std::nullopt;
                    BigInt disc = b * b - 4 * a * c;
                    if (is_perfect_square(disc)) continue; // would have rational roots
                    IntPoly q(std::vector<BigInt>{c, b, a});
                    if (q.primitive_part() != q) continue;
                    if (divide_exact(f, q)) return q;
                }
            }
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Peels all linear factors (rational roots) and every irreducible quadratic factor of the
/// square-free part; higher degree irreducible factors stay in the remainder.
inline LowDegreeFactorization factor_low_degree(const IntPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial();
    LowDegreeFactorization out;
    IntPoly rest = p.primitive_part();
    for (const auto& r : rational_roots(rest)) {
        IntPoly lin(std::vector<BigInt>{-r.numerator(), r.denominator()});
        int mult = 0;
        while (auto q = divide_exact(rest, lin)) {
            rest = *q;
            ++mult;
        }
        out.factors.emplace_back(lin, mult);
    }
    rest = rest.primitive_part();
    if (rest.degree() >= 2) {
        IntPoly g = poly_gcd(rest, rest.derivative());
        IntPoly squarefree = *divide_exact(rest, g);
        std::vector<std::pair<IntPoly, int>> quads;
        while (auto q = detail::find_quadratic_factor(squarefree)) {
            int mult = 0;
            while (auto div = divide_exact(rest, *q)) {
                rest = *div;
                ++mult;
            }
            quads.emplace_back(*q, mult);
            squarefree = *divide_exact(squarefree, *q);
        }
        std::sort(quads.begin(), quads.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (auto& q : quads) out.factors.push_back(std::move(q));
    }
    out.remainder = rest.primitive_part();
    return out;
}

} // namespace hyperfree
