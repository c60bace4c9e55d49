#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hyperfree/arrangement.hpp"
#include "hyperfree/hom_poly.hpp"
#include "hyperfree/lattice.hpp"
#include "hyperfree/linalg.hpp"

namespace hyperfree {

/// theta = f1 d/dx1 + f2 d/dx2 + f3 d/dx3 with homogeneous coordinates of one degree.
template <ScalarDomain K>
struct Derivation {
    std::array<HomPoly<K>, 3> coords;

    int pdeg() const { return coords[0].degree(); }

    /// theta(alpha) for the linear form alpha.
    HomPoly<K> apply(const Vec3<K>& alpha) const {
        HomPoly<K> out(pdeg());
        for (int i = 0; i < 3; ++i)
            if (!alpha[i].is_zero()) out = out + coords[i].scaled(alpha[i]);
        return out;
    }

    friend bool operator==(const Derivation&, const Derivation&) = default;
};

/// True iff alpha_H divides theta(alpha_H) for every hyperplane (exact long division).
template <ScalarDomain K>
bool in_derivation_module(const Arrangement<K>& a, const Derivation<K>& theta) {
    for (const auto& alpha : a.columns())
        if (!divide_by_linear(theta.apply(alpha), alpha)) return false;
    return true;
}

template <ScalarDomain K>
Derivation<K> euler_derivation(const Arrangement<K>&) {
    Derivation<K> e;
    for (int i = 0; i < 3; ++i) {
        Vec3<K> unit{};
        unit[i] = one<K>();
        e.coords[i] = HomPoly<K>::linear(unit);
    }
    return e;
}

/// Q(A), the product of all covectors.
template <ScalarDomain K>
HomPoly<K> defining_polynomial(const Arrangement<K>& a) {
    HomPoly<K> q(0);
    q.coeffs()[0] = one<K>();
    for (const auto& alpha : a.columns()) q = q * HomPoly<K>::linear(alpha);
    return q;
}

/// Determinant of the coefficient matrix whose rows are the three derivations.
template <ScalarDomain K>
HomPoly<K> saito_determinant(const Derivation<K>& t1, const Derivation<K>& t2, const Derivation<K>& t3) {
    const auto& a = t1.coords;
    const auto& b = t2.coords;
    const auto& c = t3.coords;
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

/// Basis of the degree-p part of D(A) as a vector space.
template <ScalarDomain K>
struct GradedBasis {
    int degree = 0;
    std::vector<Derivation<K>> elements;
    int dimension() const { return static_cast<int>(elements.size()); }
};

/// Two vectors spanning ker(alpha): e_j - (alpha_j / alpha_k) e_k for the two j != k, where
/// k is the first nonzero coordinate of alpha.
template <ScalarDomain K>
std::array<Vec3<K>, 2> kernel_span(const Vec3<K>& alpha) {
    int k = 0;
    while (alpha[k].is_zero()) ++k;
    std::array<Vec3<K>, 2> out;
    int slot = 0;
    for (int j = 0; j < 3; ++j) {
        if (j == k) continue;
        Vec3<K> v{};
        v[j] = one<K>();
        v[k] = -(alpha[j] / alpha[k]);
        out[slot++] = v;
    }
    return out;
}

/// D(A)_p by exact linear algebra: theta(alpha_H) must vanish identically on s*u + r*v for the
/// spanning vectors u, v of each H, giving p + 1 linear conditions per hyperplane on the
/// 3 * C(p + 2, 2) coefficients. Each basis element is re-checked by long division.
template <ScalarDomain K>
GradedBasis<K> derivation_space(const Arrangement<K>& a, int p) {
    if (p < 0) throw Error("negative polynomial degree");
    const int m_count = monomial_count(p);
    const auto ms = monomials(p);
    Matrix<K> rows;
    for (const auto& alpha : a.columns()) {
        const auto [u, v] = kernel_span(alpha);
        // powers[i][e] = (s u_i + r v_i)^e as coefficients indexed by the power of r
        std::array<std::vector<std::vector<K>>, 3> powers;
        for (int i = 0; i < 3; ++i) {
            powers[i].push_back({one<K>()});
            for (int e = 1; e <= p; ++e) {
                const auto& prev = powers[i].back();
                std::vector<K> next(prev.size() + 1);
                for (std::size_t j = 0; j < prev.size(); ++j) {
                    next[j] += prev[j] * u[i];
                    next[j + 1] += prev[j] * v[i];
                }
                powers[i].push_back(std::move(next));
            }
        }
        std::vector<std::vector<K>> restricted(m_count);
        for (int m = 0; m < m_count; ++m) {
            std::vector<K> acc = powers[0][ms[m][0]];
            for (int i = 1; i < 3; ++i) {
                const auto& f = powers[i][ms[m][i]];
                std::vector<K> next(acc.size() + f.size() - 1);
                for (std::size_t x = 0; x < acc.size(); ++x) {
                    if (acc[x].is_zero()) continue;
                    for (std::size_t y = 0; y < f.size(); ++y) next[x + y] += acc[x] * f[y];
                }
                acc = std::move(next);
            }
            restricted[m] = std::move(acc);
        }
        for (int j = 0; j <= p; ++j) {
            std::vector<K> row(3 * m_count);
            bool nonzero = false;
            for (int i = 0; i < 3; ++i) {
                if (alpha[i].is_zero()) continue;
                for (int m = 0; m < m_count; ++m) {
                    if (restricted[m][j].is_zero()) continue;
                    row[i * m_count + m] = alpha[i] * restricted[m][j];
                    nonzero = true;
                }
            }
            if (nonzero) rows.push_back(std::move(row));
        }
    }
    GradedBasis<K> out;
    out.degree = p;
    for (auto& vec : nullspace(std::move(rows), 3 * m_count)) {
        Derivation<K> theta;
        for (int i = 0; i < 3; ++i) {
            theta.coords[i] = HomPoly<K>(p);
            for (int m = 0; m < m_count; ++m) theta.coords[i].coeffs()[m] = vec[i * m_count + m];
        }
        if (!in_derivation_module(a, theta))
            throw InternalAssertion("graded basis element fails the divisibility check");
        out.elements.push_back(std::move(theta));
    }
    return out;
}

/// Dimension of the degree-p part of a free graded module with the given exponents:
/// sum over e_i <= p of C(p - e_i + 2, 2).
inline long expected_graded_dim(const std::vector<int>& exponents, int p) {
    long total = 0;
    for (int e : exponents) {
        if (e > p) continue;
        long r = p - e;
        total += (r + 2) * (r + 1) / 2;
    }
    return total;
}

inline long expected_graded_dim(const Exponents& e, int p) {
    return expected_graded_dim(std::vector<int>(e.begin(), e.end()), p);
}

/// Three derivations with det = c * Q(A), c != 0.
template <ScalarDomain K>
struct SaitoCertificate {
    std::array<Derivation<K>, 3> basis;
    K constant;
};

/// The constant c when det(theta1, theta2, theta3) = c * Q(A) with c != 0.
template <ScalarDomain K>
std::optional<K> saito_check(const Arrangement<K>& a, const Derivation<K>& t1, const Derivation<K>& t2,
                             const Derivation<K>& t3) {
    const int total = t1.pdeg() + t2.pdeg() + t3.pdeg();
    if (total != a.size()) throw DegreeMismatch(total, a.size());
    const HomPoly<K> det = saito_determinant(t1, t2, t3);
    const HomPoly<K> q = defining_polynomial(a);
    std::size_t lead = 0;
    while (q.coeffs()[lead].is_zero()) ++lead;
    const K c = det.coeffs()[lead] / q.coeffs()[lead];
    if (c.is_zero() || !(det == q.scaled(c))) return std::nullopt;
    return c;
}

enum class FreenessStatus { Free, NotFree, Inconclusive };
enum class NotFreeReason { None, ChiDoesNotSplit, GradedDimensionMismatch };

struct DimensionRecord {
    int degree = 0;
    long expected = 0;
    long actual = 0;
};

template <ScalarDomain K>
struct FreenessVerdict {
    FreenessStatus status = FreenessStatus::Inconclusive;
    CharPoly chi;
    /// Exponents read off chi; certified when status is Free.
    std::optional<Exponents> exponents;
    std::optional<SaitoCertificate<K>> certificate;
    NotFreeReason reason = NotFreeReason::None;
    std::optional<DimensionRecord> mismatch;
    std::vector<DimensionRecord> dimensions;

    bool is_free() const { return status == FreenessStatus::Free; }

    std::string summary() const {
        switch (status) {
        case FreenessStatus::Free:
            return "free with exponents " + to_string(*exponents);
        case FreenessStatus::NotFree:
            if (reason == NotFreeReason::ChiDoesNotSplit) return "not free: chi = " + chi.factored() + " does not split";
            return "not free: dim D(A)_" + std::to_string(mismatch->degree) + " = " +
                   std::to_string(mismatch->actual) + ", expected " + std::to_string(mismatch->expected);
        case FreenessStatus::Inconclusive:
            break;
        }
        return "inconclusive: graded dimensions match " + to_string(*exponents) + " but no Saito basis found";
    }
};

namespace detail {

/// Coefficient of det(theta_E, a, b) at monomial w, computed without expanding the product.
template <ScalarDomain K>
K euler_det_coefficient(const Derivation<K>& a, const Derivation<K>& b, const Monomial& w) {
    K out{};
    const auto ma = monomials(a.pdeg());
    const int db = b.pdeg();
    for (int k = 0; k < 3; ++k) {
        if (w[k] == 0) continue;
        Monomial rest = w;
        --rest[k];
        const int i = (k + 1) % 3, j = (k + 2) % 3;
        // coefficient of (a_i b_j - a_j b_i) at rest
        for (std::size_t u = 0; u < ma.size(); ++u) {
            Monomial other{rest[0] - ma[u][0], rest[1] - ma[u][1], rest[2] - ma[u][2]};
            if (other[0] < 0 || other[1] < 0 || other[2] < 0) continue;
            const int o = monomial_index(other[0], other[1], db);
            const K& ai = a.coords[i].coeffs()[u];
            const K& aj = a.coords[j].coeffs()[u];
            if (!ai.is_zero()) out += ai * b.coords[j].coeffs()[o];
            if (!aj.is_zero()) out -= aj * b.coords[i].coeffs()[o];
        }
    }
    return out;
}

} // namespace detail

/// Decides freeness of an essential rank-3 arrangement.
///
/// NotFree is reported only when chi has no factorization (x-1)(x-e2)(x-e3) over the integers
/// or when dim D(A)_p differs from the value forced by those exponents for some p <= e3.
/// Free is reported only with a Saito certificate: theta_E plus basis elements of D(A)_e2
/// and D(A)_e3 whose determinant is a nonzero multiple of Q(A). Otherwise Inconclusive.
///
/// The determinant is bilinear in the last two derivations, so if no pair of basis elements
/// gives a nonzero multiple of Q, no linear combination does either.
template <ScalarDomain K>
FreenessVerdict<K> decide_freeness(const Arrangement<K>& a) {
    FreenessVerdict<K> out;
    out.chi = char_poly(lattice(a));
    out.exponents = out.chi.split_exponents();
    if (!out.exponents) {
        out.status = FreenessStatus::NotFree;
        out.reason = NotFreeReason::ChiDoesNotSplit;
        return out;
    }
    const int e2 = (*out.exponents)[1], e3 = (*out.exponents)[2];
    GradedBasis<K> low, high;
    for (int p = 0; p <= e3; ++p) {
        GradedBasis<K> basis = derivation_space(a, p);
        DimensionRecord rec{p, expected_graded_dim(*out.exponents, p), basis.dimension()};
        out.dimensions.push_back(rec);
        if (rec.expected != rec.actual) {
            out.status = FreenessStatus::NotFree;
            out.reason = NotFreeReason::GradedDimensionMismatch;
            out.mismatch = rec;
            return out;
        }
        if (p == e2) low = basis;
        if (p == e3) high = std::move(basis);
    }
    const Derivation<K> euler = euler_derivation(a);
    const HomPoly<K> q = defining_polynomial(a);
    std::size_t lead = 0;
    while (q.coeffs()[lead].is_zero()) ++lead;
    const Monomial w = monomials(q.degree())[lead];
    for (std::size_t i = 0; i < low.elements.size(); ++i) {
        for (std::size_t j = (e2 == e3 ? i + 1 : 0); j < high.elements.size(); ++j) {
            if (detail::euler_det_coefficient(low.elements[i], high.elements[j], w).is_zero()) continue;
            if (auto c = saito_check(a, euler, low.elements[i], high.elements[j])) {
                out.status = FreenessStatus::Free;
                out.certificate = SaitoCertificate<K>{{euler, low.elements[i], high.elements[j]}, *c};
                return out;
            }
        }
    }
    out.status = FreenessStatus::Inconclusive;
    return out;
}

} // namespace hyperfree
