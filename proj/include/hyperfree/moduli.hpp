#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hyperfree/arrangement.hpp"
#include "hyperfree/symmetry.hpp"

namespace hyperfree {

/// One-parameter family: n columns of three integer polynomials in t.
struct Family {
    std::string name;
    std::vector<std::array<IntPoly, 3>> columns;

    int size() const { return static_cast<int>(columns.size()); }
    /// True when every entry is constant, i.e. the family is a single rational arrangement.
    bool is_constant() const {
        for (const auto& c : columns)
            for (const auto& e : c)
                if (!e.is_constant()) return false;
        return true;
    }
};

/// 13 covectors over Z[t]; generically free with exponents [[1,6,6]].
inline Family family_13() {
    const IntPoly t{0, 1};
    const IntPoly one{1};
    const IntPoly zero;
    return {"paper13",
            {
                {one, zero, zero},
                {zero, one, zero},
                {zero, zero, one},
                {one, zero, -one},
                {zero, one, -one},
                {one, one, -one},
                {one, zero, -t},
                {zero, one, -t},
                {one, one, -t},
                {one, one, -t - one},
                {t, one, -t},
                {one, one - t, -one},
                {t - one, t, -(t * t)},
            }};
}

/// 15 covectors over Z[t]; generically free with exponents [[1,7,7]].
inline Family family_15() {
    const IntPoly t{0, 1};
    const IntPoly one{1};
    const IntPoly two{2};
    const IntPoly three{3};
    const IntPoly zero;
    return {"paper15",
            {
                {one, zero, zero},
                {one, one, zero},
                {one, zero, one},
                {one, one, one},
                {one, t, one},
                {zero, one, zero},
                {two, one, one},
                {t + one, t, one},
                {t + one, one, one},
                {two * t, t, one},
                {one, one - t, one},
                {one - three * t, t * t - three * t + one, -t},
                {three * t - one, t, t},
                {one - three * t, -(t * t), -t},
                {three * t - one, two * t - one, t},
            }};
}

/// The family as an arrangement over Q(t).
inline Arrangement<RatFunc> generic_arrangement(const Family& f) {
    std::vector<Vec3<RatFunc>> cols;
    for (const auto& c : f.columns) cols.push_back({RatFunc(c[0]), RatFunc(c[1]), RatFunc(c[2])});
    return Arrangement<RatFunc>::build(std::move(cols));
}

inline IntersectionLattice generic_lattice(const Family& f) { return lattice(generic_arrangement(f)); }

/// Arrangement obtained by evaluating every entry at omega, with zero columns dropped and
/// proportional columns merged into the first one.
template <ScalarDomain K>
struct SpecializationResult {
    K value;
    /// family index of each surviving hyperplane
    std::vector<int> kept;
    std::vector<int> dropped;
    /// (surviving family index, merged family index)
    std::vector<std::pair<int, int>> merged;
    std::optional<Arrangement<K>> arrangement;
    std::optional<IntersectionLattice> lattice;
    bool lattice_isomorphic = false;

    int count() const { return static_cast<int>(kept.size()); }
};

template <ScalarDomain K>
SpecializationResult<K> specialize(const Family& f, const K& omega, const IntersectionLattice& generic) {
    SpecializationResult<K> out;
    out.value = omega;
    std::vector<Vec3<K>> cols;
    for (int i = 0; i < f.size(); ++i) {
        Vec3<K> v{evaluate(f.columns[i][0], omega), evaluate(f.columns[i][1], omega),
                  evaluate(f.columns[i][2], omega)};
        if (is_zero_vec(v)) {
            out.dropped.push_back(i);
            continue;
        }
        bool merged = false;
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (proportional(cols[k], v)) {
                out.merged.emplace_back(out.kept[k], i);
                merged = true;
                break;
            }
        }
        if (merged) continue;
        cols.push_back(v);
        out.kept.push_back(i);
    }
    try {
        out.arrangement = Arrangement<K>::build(std::move(cols));
        out.lattice = hyperfree::lattice(*out.arrangement);
    } catch (const NotEssential&) {
        return out;
    }
    if (out.count() == f.size()) out.lattice_isomorphic = lattice_iso(*out.lattice, generic).has_value();
    return out;
}

template <ScalarDomain K>
SpecializationResult<K> specialize(const Family& f, const K& omega) {
    return specialize(f, omega, generic_lattice(f));
}

/// True iff the specialization keeps all n hyperplanes and has a lattice isomorphic to L.
template <ScalarDomain K>
bool vL_membership(const Family& f, const IntersectionLattice& lat, const K& omega) {
    auto s = specialize(f, omega, lat);
    return s.count() == f.size() && s.lattice && lattice_iso(*s.lattice, lat).has_value();
}

enum class DegeneracyTag { CountDrops, LatticeChanges };

inline std::string to_string(DegeneracyTag t) {
    return t == DegeneracyTag::CountDrops ? "CountDrops" : "LatticeChanges";
}

struct RationalExceptional {
    BigRat value;
    DegeneracyTag tag;
    int count;
};

struct QuadraticExceptional {
    IntPoly factor;
    /// The root (-b + s sqrt(d)) / (2a); its conjugate behaves identically (both are checked).
    QuadElem root;
    DegeneracyTag tag;
    int count;
};

struct DegeneracyReport {
    std::vector<RationalExceptional> rational;
    std::vector<QuadraticExceptional> quadratic;
    /// Primitive factors of degree >= 3 that were not split; their roots are not classified.
    std::vector<IntPoly> unresolved;
    /// Candidate rational values that turned out to keep count and lattice.
    std::vector<BigRat> discarded;
    std::vector<IntPoly> discarded_quadratic;

    bool complete() const { return unresolved.empty(); }
};

namespace detail {

inline IntPoly det3(const std::array<IntPoly, 3>& a, const std::array<IntPoly, 3>& b, const std::array<IntPoly, 3>& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

/// Polynomials whose roots are the only candidates for exceptional parameter values:
/// common zeros of a column, common zeros of the 2x2 minors of a pair, and nonvanishing
/// 3x3 minors.
inline std::vector<IntPoly> degeneracy_candidates(const Family& f) {
    std::set<IntPoly> polys;
    auto keep = [&](const IntPoly& p) {
        if (p.degree() >= 1) polys.insert(p.primitive_part());
    };
    const int n = f.size();
    for (const auto& c : f.columns) keep(poly_gcd(poly_gcd(c[0], c[1]), c[2]));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto& a = f.columns[i];
            const auto& b = f.columns[j];
            IntPoly g = poly_gcd(poly_gcd(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2]),
                                 a[0] * b[1] - a[1] * b[0]);
            if (g.is_zero()) throw Error("family columns " + std::to_string(i + 1) + " and " +
                                         std::to_string(j + 1) + " are identically proportional");
            keep(g);
            for (int k = j + 1; k < n; ++k) {
                IntPoly d = det3(a, b, f.columns[k]);
                if (!d.is_zero()) keep(d);
            }
        }
    }
    return {polys.begin(), polys.end()};
}

} // namespace detail

/// The exceptional parameter set of a family: candidates from minors, each confirmed by
/// specializing and comparing hyperplane count and lattice with the generic ones.
inline DegeneracyReport degeneracy_set(const Family& f) {
    const IntersectionLattice generic = generic_lattice(f);
    std::set<BigRat> roots;
    std::set<IntPoly> quads;
    std::set<IntPoly> unresolved;
    for (const auto& p : detail::degeneracy_candidates(f)) {
        auto fac = factor_low_degree(p);
        for (const auto& [q, mult] : fac.factors) {
            if (q.degree() == 1) roots.insert(BigRat(-q.coeff(0), q.coeff(1)));
            else quads.insert(q);
        }
        if (!fac.fully_resolved()) unresolved.insert(fac.remainder);
    }
    DegeneracyReport out;
    out.unresolved.assign(unresolved.begin(), unresolved.end());
    auto classify = [&](auto s) -> std::optional<DegeneracyTag> {
        if (s.count() < f.size()) return DegeneracyTag::CountDrops;
        if (!s.lattice_isomorphic) return DegeneracyTag::LatticeChanges;
        return std::nullopt;
    };
    for (const auto& r : roots) {
        auto s = specialize(f, r, generic);
        if (auto tag = classify(s)) out.rational.push_back({r, *tag, s.count()});
        else out.discarded.push_back(r);
    }
    for (const auto& q : quads) {
        const BigInt a = q.coeff(2), b = q.coeff(1), c = q.coeff(0);
        const auto [d, s] = squarefree_decomposition(b * b - 4 * a * c);
        const QuadElem root(d.get_si(), BigRat(-b, 2 * a), BigRat(s, 2 * a));
        if (!evaluate(q, root).is_zero()) throw InternalAssertion("quadratic root does not vanish");
        auto s1 = specialize(f, root, generic);
        auto s2 = specialize(f, root.conjugate(), generic);
        auto t1 = classify(s1);
        auto t2 = classify(s2);
        if (t1 != t2 || s1.count() != s2.count())
            throw InternalAssertion("conjugate roots of " + q.to_string() + " behave differently");
        if (t1) out.quadratic.push_back({q, root, *t1, s1.count()});
        else out.discarded_quadratic.push_back(q);
    }
    return out;
}

} // namespace hyperfree
