#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperfree/arrangement.hpp"
#include "hyperfree/freeness.hpp"
#include "hyperfree/symmetry.hpp"

namespace hyperfree {

/// Removes one copy of each value in `take` from the multiset e; nullopt if some value is missing.
inline std::optional<std::vector<int>> multiset_remove(const Exponents& e, std::initializer_list<int> take) {
    std::vector<int> rest(e.begin(), e.end());
    for (int v : take) {
        auto it = std::find(rest.begin(), rest.end(), v);
        if (it == rest.end()) return std::nullopt;
        rest.erase(it);
    }
    return rest;
}

inline Exponents sorted_exponents(int a, int b, int c) {
    Exponents e{a, b, c};
    std::sort(e.begin(), e.end());
    return e;
}

/// Exponents of A u {H} when A has exponents e and (A u {H})^H has k + 1 points, provided
/// exp of the restriction, [[1,k]], is contained in e.
inline std::optional<Exponents> exponents_after_addition(const Exponents& e, int k) {
    auto rest = multiset_remove(e, {1, k});
    if (!rest) return std::nullopt;
    return sorted_exponents(1, k, rest->front() + 1);
}

/// Exponents of A \ {H} when A has exponents e and A^H has k + 1 points, provided [[1,k]] is
/// contained in e.
inline std::optional<Exponents> exponents_after_deletion(const Exponents& e, int k) {
    auto rest = multiset_remove(e, {1, k});
    if (!rest) return std::nullopt;
    return sorted_exponents(1, k, rest->front() - 1);
}

// ---------------------------------------------------------------------------------------------
// Addition-Deletion triples

enum class TripleStatus { Decided, Inconclusive };

/// The triple (A, A \ {H}, A^H) with the three Addition-Deletion statements evaluated for the
/// only exponent assignment compatible with exp A^H = [[1,k]]:
///   s1: A free with exponents [[1, k, n-1-k]]
///   s2: A' free with exponents [[1, k, n-2-k]]
///   s3: A'' free with exponents [[1, k]] (always true in rank two)
struct TripleVerdict {
    int hyperplane = 0;
    int restriction_size = 0;
    TripleStatus status = TripleStatus::Decided;
    std::optional<Exponents> exp_a;
    std::optional<Exponents> exp_deletion;
    std::array<int, 2> exp_restriction{};
    bool s1 = false;
    bool s2 = false;
    bool s3 = true;

    bool consistent() const { return status == TripleStatus::Inconclusive || (s1 == s2); }
};

/// When A' is a pencil (A is a near pencil and H the line off the pencil), A' is taken with
/// its rank-two exponents [[0, 1, n-2]].
template <ScalarDomain K>
TripleVerdict triple_check(const Arrangement<K>& a, int h) {
    const IntersectionLattice lat = lattice(a);
    if (h < 0 || h >= a.size()) throw UnknownLabel(h + 1);
    TripleVerdict out;
    out.hyperplane = h;
    out.restriction_size = lat.restriction_size(h);
    const int n = a.size();
    const int k = out.restriction_size - 1;
    out.exp_restriction = {1, k};
    const auto va = decide_freeness(a);
    std::optional<FreenessVerdict<K>> vd;
    if (lat.without(h).rank() == 3) vd = decide_freeness(delete_hyperplane(a, h).arrangement);
    if (va.status == FreenessStatus::Inconclusive || (vd && vd->status == FreenessStatus::Inconclusive)) {
        out.status = TripleStatus::Inconclusive;
        return out;
    }
    if (va.is_free()) out.exp_a = va.exponents;
    if (!vd) out.exp_deletion = Exponents{0, 1, n - 2};
    else if (vd->is_free()) out.exp_deletion = vd->exponents;
    out.s1 = out.exp_a && *out.exp_a == sorted_exponents(1, k, n - 1 - k);
    out.s2 = out.exp_deletion && *out.exp_deletion == sorted_exponents(1, k, n - 2 - k);
    if (!out.consistent())
        throw InternalAssertion("addition-deletion violated at hyperplane " + std::to_string(h + 1));
    return out;
}

// ---------------------------------------------------------------------------------------------
// Inductive freeness

/// Restriction sizes that rule out inductive freeness for a free arrangement with exponents
/// [[1,e,f]]: none of them equals e+1 or f+1.
struct NonIFWitness {
    Exponents exponents;
    std::vector<int> restriction_sizes;
};

template <ScalarDomain K>
std::optional<NonIFWitness> quick_non_if(const Arrangement<K>& a) {
    const auto v = decide_freeness(a);
    if (!v.is_free()) return std::nullopt;
    const IntersectionLattice lat = lattice(a);
    NonIFWitness w{*v.exponents, {}};
    for (int h = 0; h < lat.size(); ++h) {
        const int s = lat.restriction_size(h);
        if (s == w.exponents[1] + 1 || s == w.exponents[2] + 1) return std::nullopt;
        w.restriction_sizes.push_back(s);
    }
    return w;
}

/// One deletion of an inductive chain: hyperplane `label` (in the labels of the starting
/// arrangement) is removed from an arrangement with exponents `exp_before`.
struct IFStep {
    int label = 0;
    int restriction_size = 0;
    Exponents exp_before{};
    Exponents exp_after{};
};

/// Deletions from the arrangement down to three hyperplanes in general position; read backwards
/// it is a sequence of additions, each satisfying exp A'' in exp A'.
struct IFCertificate {
    Exponents exponents{};
    std::vector<IFStep> steps;
};

/// Inductive freeness in rank three depends only on the lattice; verdicts are cached by
/// canonical key so one cache can serve many queries.
class InductiveFreeness {
public:
    bool is_if(const IntersectionLattice& lat) { return decide(lat).has_value(); }

    std::optional<IFCertificate> certificate(const IntersectionLattice& lat) {
        auto e = decide(lat);
        if (!e) return std::nullopt;
        IFCertificate cert{*e, {}};
        IntersectionLattice cur = lat;
        std::vector<int> labels(lat.size());
        for (int i = 0; i < lat.size(); ++i) labels[i] = i;
        Exponents exp = *e;
        while (cur.size() > 3) {
            bool moved = false;
            for (int h = 0; h < cur.size() && !moved; ++h) {
                auto next = admissible_deletion(cur, exp, h);
                if (!next) continue;
                const IntersectionLattice sub = cur.without(h);
                if (sub.rank() != 3) continue;
                auto se = decide(sub);
                if (!se || *se != *next) continue;
                cert.steps.push_back({labels[h], cur.restriction_size(h), exp, *next});
                labels.erase(labels.begin() + h);
                cur = sub;
                exp = *next;
                moved = true;
            }
            if (!moved) throw InternalAssertion("inductive chain could not be reconstructed");
        }
        return cert;
    }

    std::size_t cache_size() const { return memo_.size(); }

private:
    /// Exponents of A' when deleting h is an admissible inductive step shape-wise.
    static std::optional<Exponents> admissible_deletion(const IntersectionLattice& lat, const Exponents& e, int h) {
        const int k = lat.restriction_size(h) - 1;
        auto next = exponents_after_deletion(e, k);
        if (!next || (*next)[0] < 1) return std::nullopt;
        return next;
    }

    std::optional<Exponents> decide(const IntersectionLattice& lat) {
        if (lat.rank() != 3) throw NotEssential();
        auto e = char_poly(lat).split_exponents();
        if (!e) return std::nullopt;
        if (lat.size() == 3) return e;
        const std::string key = canonical_key(lat);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::optional<Exponents> result;
        for (int h = 0; h < lat.size() && !result; ++h) {
            auto next = admissible_deletion(lat, *e, h);
            if (!next) continue;
            const IntersectionLattice sub = lat.without(h);
            if (sub.rank() != 3) continue;
            auto se = decide(sub);
            // exp A'' = [[1,k]] must sit inside exp A'
            if (se && *se == *next) result = e;
        }
        memo_.emplace(key, result);
        return result;
    }

    std::unordered_map<std::string, std::optional<Exponents>> memo_;
};

inline std::optional<IFCertificate> inductively_free(const IntersectionLattice& lat) {
    InductiveFreeness search;
    return search.certificate(lat);
}

template <ScalarDomain K>
std::optional<IFCertificate> inductively_free(const Arrangement<K>& a) {
    return inductively_free(lattice(a));
}

/// Replays an inductive chain on actual coordinates: every step must be a triple in which all
/// three Addition-Deletion statements hold.
template <ScalarDomain K>
bool verify_if_certificate(const Arrangement<K>& a, const IFCertificate& cert) {
    Arrangement<K> cur = a;
    std::vector<int> labels(a.size());
    for (int i = 0; i < a.size(); ++i) labels[i] = i;
    for (const auto& step : cert.steps) {
        auto it = std::find(labels.begin(), labels.end(), step.label);
        if (it == labels.end()) return false;
        const int h = static_cast<int>(it - labels.begin());
        const auto t = triple_check(cur, h);
        if (t.status != TripleStatus::Decided || !t.s1 || !t.s2) return false;
        if (*t.exp_a != step.exp_before || *t.exp_deletion != step.exp_after) return false;
        cur = delete_hyperplane(cur, h).arrangement;
        labels.erase(it);
    }
    return cur.size() == 3;
}

// ---------------------------------------------------------------------------------------------
// Recursive freeness

/// New hyperplanes through at least two points of A whose restriction size in A u {H} lies
/// in `targets`. `complete` is true when every admissible hyperplane must pass through two
/// points, so the list is exhaustive.
template <ScalarDomain K>
struct CandidateSet {
    std::vector<Vec3<K>> candidates;
    std::vector<int> restriction_sizes;
    bool complete = false;
};

template <ScalarDomain K>
CandidateSet<K> candidate_additions(const Arrangement<K>& a, const std::set<int>& targets) {
    const IntersectionLattice lat = lattice(a);
    return candidate_additions(a, lat, targets);
}

template <ScalarDomain K>
CandidateSet<K> candidate_additions(const Arrangement<K>& a, const IntersectionLattice& lat,
                                    const std::set<int>& targets) {
    CandidateSet<K> out;
    const int n = a.size();
    if (!targets.empty()) out.complete = n - *targets.rbegin() > lat.max_multiplicity() - 1;
    std::vector<Vec3<K>> points;
    for (int x = 0; x < lat.flat_count(); ++x) points.push_back(flat_point(a, lat, x));
    std::set<std::string> existing;
    for (const auto& c : a.columns()) existing.insert(to_string(normalized(c)));
    std::map<std::string, std::pair<Vec3<K>, int>> found;
    for (std::size_t x = 0; x < points.size(); ++x) {
        for (std::size_t y = x + 1; y < points.size(); ++y) {
            const Vec3<K> beta = normalized(cross(points[x], points[y]));
            std::string key = to_string(beta);
            if (existing.count(key) || found.count(key)) continue;
            int excess = 0;
            for (int z = 0; z < lat.flat_count(); ++z)
                if (dot(beta, points[z]).is_zero()) excess += lat.multiplicity(z) - 1;
            const int size = n - excess;
            found.emplace(std::move(key), std::make_pair(beta, size));
        }
    }
    for (auto& [key, v] : found) {
        if (!targets.count(v.second)) continue;
        out.candidates.push_back(v.first);
        out.restriction_sizes.push_back(v.second);
    }
    return out;
}

enum class MoveKind { Add, Delete };

template <ScalarDomain K>
struct RFMove {
    MoveKind kind;
    /// the hyperplane added or deleted
    Vec3<K> covector;
    int restriction_size = 0;
    Exponents exp_after{};
};

enum class RFVerdict { RF, NotRF, Unknown };

inline std::string to_string(RFVerdict v) {
    switch (v) {
    case RFVerdict::RF: return "RF";
    case RFVerdict::NotRF: return "NotRF";
    case RFVerdict::Unknown: break;
    }
    return "Unknown";
}

struct ExpansionRecord {
    int state = 0;
    int n = 0;
    int max_multiplicity = 0;
    std::set<int> targets;
    bool complete = false;
    int additions = 0;
    int deletions = 0;
};

template <ScalarDomain K>
struct RFSearchReport {
    RFVerdict verdict = RFVerdict::Unknown;
    std::string reason;
    Exponents start_exponents{};
    /// moves from the input to an inductively free arrangement
    std::vector<RFMove<K>> chain;
    std::optional<IFCertificate> final_certificate;
    int explored = 0;
    /// additions not taken because they would exceed max_n
    int skipped_by_size = 0;
    std::vector<ExpansionRecord> expansions;
    int max_n = 0;

    /// Recomputed from the expansion records; NotRF is only sound when this holds.
    bool sound() const {
        for (const auto& e : expansions)
            if (e.n < max_n && !e.complete) return false;
        return true;
    }
};

/// Breadth-first search through the component of A in the graph whose edges are
/// Addition-Deletion triples of free arrangements, which is exactly where a recursive
/// derivation of A would have to pass. Reaching an inductively free state proves A in RF;
/// exhausting the component (restricted to at most max_n hyperplanes) with provably complete
/// candidate lists proves A not in RF relative to that bound.
template <ScalarDomain K>
RFSearchReport<K> recursively_free(const Arrangement<K>& a, int max_n, int max_states) {
    struct State {
        Arrangement<K> arr;
        Exponents exp;
        int parent;
        std::optional<RFMove<K>> move;
    };
    RFSearchReport<K> out;
    out.max_n = max_n;
    const auto start = decide_freeness(a);
    if (!start.is_free()) {
        out.verdict = start.status == FreenessStatus::NotFree ? RFVerdict::NotRF : RFVerdict::Unknown;
        out.reason = "start arrangement is " + start.summary();
        return out;
    }
    out.start_exponents = *start.exponents;
    InductiveFreeness ifree;
    std::vector<State> states;
    std::set<std::string> seen;
    auto state_key = [](const Arrangement<K>& arr, const IntersectionLattice& lat) {
        return canonical_key(lat) + "|" + arr.coordinate_key();
    };
    states.push_back({a, *start.exponents, -1, std::nullopt});
    seen.insert(state_key(a, lattice(a)));
    std::deque<int> queue{0};
    auto finish_rf = [&](int s, const IntersectionLattice& lat) {
        out.verdict = RFVerdict::RF;
        out.final_certificate = ifree.certificate(lat);
        for (int cur = s; states[cur].parent >= 0; cur = states[cur].parent) out.chain.push_back(*states[cur].move);
        std::reverse(out.chain.begin(), out.chain.end());
        out.reason = "inductively free arrangement reached after " + std::to_string(out.chain.size()) + " moves";
    };
    while (!queue.empty()) {
        const int s = queue.front();
        queue.pop_front();
        ++out.explored;
        const Arrangement<K> arr = states[s].arr;
        const Exponents exp = states[s].exp;
        const IntersectionLattice lat = lattice(arr);
        if (ifree.is_if(lat)) {
            finish_rf(s, lat);
            return out;
        }
        const int n = arr.size();
        ExpansionRecord rec;
        rec.state = s;
        rec.n = n;
        rec.max_multiplicity = lat.max_multiplicity();
        rec.targets = {exp[1] + 1, exp[2] + 1};
        auto push = [&](Arrangement<K> next, const IntersectionLattice& next_lat, RFMove<K> mv) {
            if (!seen.insert(state_key(next, next_lat)).second) return;
            states.push_back({std::move(next), mv.exp_after, s, std::move(mv)});
            queue.push_back(static_cast<int>(states.size()) - 1);
        };
        if (n < max_n) {
            const auto cands = candidate_additions(arr, lat, rec.targets);
            rec.complete = cands.complete;
            for (std::size_t i = 0; i < cands.candidates.size(); ++i) {
                auto e = exponents_after_addition(exp, cands.restriction_sizes[i] - 1);
                if (!e) continue;
                Arrangement<K> next = add_hyperplane(arr, cands.candidates[i]);
                const IntersectionLattice next_lat = lattice(next);
                ++rec.additions;
                push(std::move(next), next_lat,
                     {MoveKind::Add, cands.candidates[i], cands.restriction_sizes[i], *e});
            }
        } else {
            rec.complete = true;
            const auto cands = candidate_additions(arr, lat, rec.targets);
            out.skipped_by_size += static_cast<int>(cands.candidates.size());
        }
        for (int h = 0; h < n; ++h) {
            const int size = lat.restriction_size(h);
            auto e = exponents_after_deletion(exp, size - 1);
            if (!e || (*e)[0] < 1) continue;
            const IntersectionLattice next_lat = lat.without(h);
            if (next_lat.rank() != 3) continue;
            ++rec.deletions;
            push(delete_hyperplane(arr, h).arrangement, next_lat, {MoveKind::Delete, arr.column(h), size, *e});
        }
        out.expansions.push_back(std::move(rec));
        if (static_cast<int>(states.size()) > max_states && !queue.empty()) {
            out.verdict = RFVerdict::Unknown;
            out.reason = "state bound " + std::to_string(max_states) + " reached";
            return out;
        }
    }
    if (out.sound()) {
        out.verdict = RFVerdict::NotRF;
        out.reason = "component exhausted with at most " + std::to_string(max_n) + " hyperplanes";
    } else {
        out.verdict = RFVerdict::Unknown;
        out.reason = "component exhausted but some candidate lists were not provably complete";
    }
    return out;
}

/// Re-applies a chain of moves to A, re-checking every step as an Addition-Deletion triple
/// with actual freeness computations, and the inductive certificate at the end.
template <ScalarDomain K>
bool replay_chain(const Arrangement<K>& a, const std::vector<RFMove<K>>& chain) {
    Arrangement<K> cur = a;
    for (const auto& mv : chain) {
        if (mv.kind == MoveKind::Add) {
            Arrangement<K> next = add_hyperplane(cur, mv.covector);
            const auto t = triple_check(next, next.size() - 1);
            if (t.status != TripleStatus::Decided || !t.s1 || !t.s2 || *t.exp_a != mv.exp_after) return false;
            cur = std::move(next);
        } else {
            int h = -1;
            for (int i = 0; i < cur.size(); ++i)
                if (proportional(cur.column(i), mv.covector)) h = i;
            if (h < 0) return false;
            const auto t = triple_check(cur, h);
            if (t.status != TripleStatus::Decided || !t.s1 || !t.s2 || *t.exp_deletion != mv.exp_after) return false;
            cur = delete_hyperplane(cur, h).arrangement;
        }
    }
    auto cert = inductively_free(cur);
    return cert && verify_if_certificate(cur, *cert);
}

// ---------------------------------------------------------------------------------------------
// Abe's deletion-pair criterion

enum class AbeStatus { Consistent, Violated, NotApplicable };

inline std::string to_string(AbeStatus s) {
    switch (s) {
    case AbeStatus::Consistent: return "Consistent";
    case AbeStatus::Violated: return "Violated";
    case AbeStatus::NotApplicable: break;
    }
    return "NotApplicable";
}

struct AbeResult {
    AbeStatus status = AbeStatus::NotApplicable;
    /// gcd of chi(A)/(x-1) and chi(A')/(x-1)
    IntPoly common;
    std::string note;
};

/// chi(A) / (x - 1) as an integer polynomial.
inline IntPoly reduced_char_poly(const CharPoly& chi) {
    // synthetic division by (x - 1)
    const long long c2 = chi.coeffs[3];
    const long long c1 = chi.coeffs[2] + c2;
    const long long c0 = chi.coeffs[1] + c1;
    return IntPoly{static_cast<long>(c0), static_cast<long>(c1), static_cast<long>(c2)};
}

/// When the reduced characteristic polynomials of A and A \ {H} share a root, both must be free.
template <ScalarDomain K>
AbeResult abe_pair_check(const Arrangement<K>& a, int h) {
    const auto del = delete_hyperplane(a, h);
    AbeResult out;
    const CharPoly ca = char_poly(lattice(a));
    const CharPoly cd = char_poly(lattice(del.arrangement));
    out.common = poly_gcd(reduced_char_poly(ca), reduced_char_poly(cd));
    if (out.common.degree() < 1) {
        out.note = "no common root";
        return out;
    }
    const auto va = decide_freeness(a);
    const auto vd = decide_freeness(del.arrangement);
    if (va.status == FreenessStatus::Inconclusive || vd.status == FreenessStatus::Inconclusive) {
        out.note = "freeness inconclusive";
        return out;
    }
    out.status = va.is_free() && vd.is_free() ? AbeStatus::Consistent : AbeStatus::Violated;
    out.note = "A: " + va.summary() + "; A': " + vd.summary();
    return out;
}

} // namespace hyperfree
