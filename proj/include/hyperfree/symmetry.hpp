#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hyperfree/lattice.hpp"
#include "hyperfree/scalars/bigrat.hpp"

namespace hyperfree {

/// Bijection of hyperplane indices: perm[i] is the image of i.
using Permutation = std::vector<int>;

namespace detail {

/// Per-hyperplane invariant: (|A^H|, sorted incident multiplicities), refined once by the
/// invariants of the hyperplanes sharing each flat. Comparable across lattices.
inline std::vector<std::vector<int>> hyperplane_invariants(const IntersectionLattice& lat) {
    const int n = lat.size();
    std::vector<std::vector<int>> base(n);
    for (int h = 0; h < n; ++h) {
        base[h].push_back(lat.restriction_size(h));
        for (int m : lat.restriction_multiplicities(h)) base[h].push_back(m);
    }
    std::vector<std::vector<int>> out(n);
    for (int h = 0; h < n; ++h) {
        std::vector<std::vector<int>> around;
        for (int x : lat.flats_on(h)) {
            std::vector<std::vector<int>> members;
            for (int a : lat.flat(x))
                if (a != h) members.push_back(base[a]);
            std::sort(members.begin(), members.end());
            std::vector<int> enc{lat.multiplicity(x)};
            for (const auto& m : members) {
                enc.push_back(static_cast<int>(m.size()));
                enc.insert(enc.end(), m.begin(), m.end());
            }
            around.push_back(std::move(enc));
        }
        std::sort(around.begin(), around.end());
        out[h] = base[h];
        for (const auto& e : around) {
            out[h].push_back(static_cast<int>(e.size()));
            out[h].insert(out[h].end(), e.begin(), e.end());
        }
    }
    return out;
}

/// Backtracking search for a flat-preserving bijection L1 -> L2 extending a partial map.
class IsoSearch {
public:
    IsoSearch(const IntersectionLattice& l1, const IntersectionLattice& l2)
        : l1_(l1), l2_(l2), inv1_(hyperplane_invariants(l1)), inv2_(hyperplane_invariants(l2)) {
        const int n = l1.size();
        // rare invariant classes first; ties by index
        std::map<std::vector<int>, int> freq;
        for (const auto& v : inv1_) ++freq[v];
        order_.resize(n);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int a, int b) { return freq[inv1_[a]] < freq[inv1_[b]]; });
    }

    bool compatible_sizes() const {
        if (l1_.size() != l2_.size() || l1_.flat_count() != l2_.flat_count()) return false;
        auto a = inv1_, b = inv2_;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }

    /// Finds a bijection extending `fixed` (pairs v -> w), or nullopt.
    std::optional<Permutation> find(const std::vector<std::pair<int, int>>& fixed) {
        const int n = l1_.size();
        map_.assign(n, -1);
        used_.assign(n, false);
        mapped_.clear();
        for (auto [v, w] : fixed) {
            if (map_[v] != -1 || used_[w] || !consistent(v, w)) return std::nullopt;
            assign(v, w);
        }
        if (extend(0)) return map_;
        return std::nullopt;
    }

private:
    bool consistent(int v, int w) const {
        if (inv1_[v] != inv2_[w]) return false;
        for (std::size_t i = 0; i < mapped_.size(); ++i) {
            int a = mapped_[i];
            int fa = l1_.flat_of(v, a);
            int ga = l2_.flat_of(w, map_[a]);
            if (l1_.multiplicity(fa) != l2_.multiplicity(ga)) return false;
            for (std::size_t j = i + 1; j < mapped_.size(); ++j) {
                int b = mapped_[j];
                bool same1 = fa == l1_.flat_of(v, b);
                bool same2 = ga == l2_.flat_of(w, map_[b]);
                if (same1 != same2) return false;
            }
        }
        return true;
    }

    void assign(int v, int w) {
        map_[v] = w;
        used_[w] = true;
        mapped_.push_back(v);
    }

    void unassign(int v) {
        used_[map_[v]] = false;
        map_[v] = -1;
        mapped_.pop_back();
    }

    bool extend(std::size_t pos) {
        while (pos < order_.size() && map_[order_[pos]] != -1) ++pos;
        if (pos == order_.size()) return true;
        int v = order_[pos];
        for (int w = 0; w < l2_.size(); ++w) {
            if (used_[w] || !consistent(v, w)) continue;
            assign(v, w);
            if (extend(pos + 1)) return true;
            unassign(v);
        }
        return false;
    }

    const IntersectionLattice& l1_;
    const IntersectionLattice& l2_;
    std::vector<std::vector<int>> inv1_, inv2_;
    std::vector<int> order_;
    std::vector<int> map_;
    std::vector<bool> used_;
    std::vector<int> mapped_;
};

} // namespace detail

/// Checks that perm maps the flats of l1 exactly onto the flats of l2.
inline bool is_isomorphism(const IntersectionLattice& l1, const IntersectionLattice& l2, const Permutation& perm) {
    if (l1.size() != l2.size() || static_cast<int>(perm.size()) != l1.size()) return false;
    std::vector<bool> hit(perm.size(), false);
    for (int w : perm) {
        if (w < 0 || w >= l1.size() || hit[w]) return false;
        hit[w] = true;
    }
    return l1.relabeled(perm) == l2;
}

/// A hyperplane bijection inducing an isomorphism of intersection lattices, if one exists.
/// The witness is re-checked by direct flat comparison before it is returned.
inline std::optional<Permutation> lattice_iso(const IntersectionLattice& l1, const IntersectionLattice& l2) {
    detail::IsoSearch search(l1, l2);
    if (!search.compatible_sizes()) return std::nullopt;
    auto perm = search.find({});
    if (perm && !is_isomorphism(l1, l2, *perm)) throw InternalAssertion("lattice_iso produced an invalid witness");
    return perm;
}

struct AutomorphismGroup {
    BigInt order;
    std::vector<Permutation> generators;
};

/// Order of the group of hyperplane permutations preserving the flats, computed along the
/// stabilizer chain of hyperplanes 0, 1, ..., n-1 (product of orbit lengths).
inline AutomorphismGroup aut_order(const IntersectionLattice& lat) {
    const int n = lat.size();
    detail::IsoSearch search(lat, lat);
    std::vector<std::vector<Permutation>> level_gens(n);
    AutomorphismGroup out;
    out.order = 1;
    for (int i = n - 1; i >= 0; --i) {
        std::vector<Permutation> gens;
        for (int j = i; j < n; ++j) gens.insert(gens.end(), level_gens[j].begin(), level_gens[j].end());
        auto orbit_of = [&](int start) {
            std::vector<bool> in(n, false);
            std::vector<int> todo{start};
            in[start] = true;
            while (!todo.empty()) {
                int v = todo.back();
                todo.pop_back();
                for (const auto& g : gens) {
                    if (!in[g[v]]) {
                        in[g[v]] = true;
                        todo.push_back(g[v]);
                    }
                }
            }
            return in;
        };
        auto orbit = orbit_of(i);
        std::vector<std::pair<int, int>> fixed;
        for (int k = 0; k < i; ++k) fixed.emplace_back(k, k);
        for (int y = i + 1; y < n; ++y) {
            if (orbit[y]) continue;
            auto trial = fixed;
            trial.emplace_back(i, y);
            if (auto g = search.find(trial)) {
                if (!is_isomorphism(lat, lat, *g)) throw InternalAssertion("invalid automorphism");
                level_gens[i].push_back(*g);
                gens.push_back(*g);
                orbit = orbit_of(i);
            }
        }
        out.order *= static_cast<long>(std::count(orbit.begin(), orbit.end(), true));
    }
    for (int i = 0; i < n; ++i)
        for (auto& g : level_gens[i]) out.generators.push_back(std::move(g));
    return out;
}

/// Canonical labeling: a key equal for two lattices iff they are isomorphic, together with
/// the ordering of hyperplanes that realizes it (order[k] becomes label k).
struct CanonicalForm {
    std::string key;
    std::vector<int> order;
};

namespace detail {

class CanonicalSearch {
public:
    explicit CanonicalSearch(const IntersectionLattice& lat) : lat_(lat), n_(lat.size()) {}

    CanonicalForm run() {
        std::vector<std::vector<int>> cells(1);
        for (int h = 0; h < n_; ++h) cells[0].push_back(h);
        if (n_ > 0) search(std::move(cells), {});
        CanonicalForm out;
        out.order = best_order_;
        std::string key = std::to_string(n_) + ":";
        for (std::size_t i = 0; i < best_.size();) {
            int len = best_[i];
            key += "[";
            for (int k = 1; k <= len; ++k) {
                if (k > 1) key += ",";
                key += std::to_string(best_[i + k] + 1);
            }
            key += "]";
            i += len + 1;
        }
        out.key = key;
        return out;
    }

private:
    using Cells = std::vector<std::vector<int>>;

    Cells refine(Cells cells) const {
        std::vector<int> color(n_);
        while (true) {
            for (std::size_t c = 0; c < cells.size(); ++c)
                for (int h : cells[c]) color[h] = static_cast<int>(c);
            std::vector<std::pair<std::vector<int>, int>> sig;
            sig.reserve(n_);
            for (int h = 0; h < n_; ++h) {
                std::vector<std::vector<int>> around;
                for (int x : lat_.flats_on(h)) {
                    std::vector<int> enc;
                    for (int a : lat_.flat(x))
                        if (a != h) enc.push_back(color[a]);
                    std::sort(enc.begin(), enc.end());
                    enc.insert(enc.begin(), lat_.multiplicity(x));
                    around.push_back(std::move(enc));
                }
                std::sort(around.begin(), around.end());
                std::vector<int> s{color[h]};
                for (const auto& e : around) {
                    s.push_back(static_cast<int>(e.size()));
                    s.insert(s.end(), e.begin(), e.end());
                }
                sig.emplace_back(std::move(s), h);
            }
            std::sort(sig.begin(), sig.end());
            Cells next;
            for (std::size_t i = 0; i < sig.size(); ++i) {
                if (i == 0 || sig[i].first != sig[i - 1].first) next.emplace_back();
                next.back().push_back(sig[i].second);
            }
            if (next.size() == cells.size()) return cells;
            cells = std::move(next);
        }
    }

    std::vector<int> encode(const std::vector<int>& order) const {
        std::vector<int> pos(n_);
        for (int i = 0; i < n_; ++i) pos[order[i]] = i;
        std::vector<std::vector<int>> flats;
        for (const auto& f : lat_.flats()) {
            std::vector<int> g;
            for (int a : f) g.push_back(pos[a]);
            std::sort(g.begin(), g.end());
            flats.push_back(std::move(g));
        }
        std::sort(flats.begin(), flats.end());
        std::vector<int> enc;
        for (const auto& f : flats) {
            enc.push_back(static_cast<int>(f.size()));
            enc.insert(enc.end(), f.begin(), f.end());
        }
        return enc;
    }

    // Returns the depth to backtrack to, or -1 to continue normally.
    int search(Cells cells, std::vector<int> path) {
        cells = refine(std::move(cells));
        const int depth = static_cast<int>(path.size());
        if (static_cast<int>(cells.size()) == n_) {
            std::vector<int> order;
            for (const auto& c : cells) order.push_back(c[0]);
            auto enc = encode(order);
            if (best_order_.empty() || enc < best_) {
                best_ = std::move(enc);
                best_order_ = std::move(order);
                best_path_ = path;
                return -1;
            }
            if (enc == best_) {
                Permutation g(n_);
                for (int i = 0; i < n_; ++i) g[best_order_[i]] = order[i];
                autos_.push_back(std::move(g));
                // g maps the best leaf's branch at the divergence point onto this branch
                int common = 0;
                while (common < depth && common < static_cast<int>(best_path_.size()) &&
                       best_path_[common] == path[common])
                    ++common;
                return common;
            }
            return -1;
        }
        std::size_t target = cells.size();
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (cells[c].size() > 1 && (target == cells.size() || cells[c].size() < cells[target].size()))
                target = c;
        }
        std::vector<int> explored;
        for (int h : cells[target]) {
            if (in_explored_orbit(h, explored, path)) continue;
            explored.push_back(h);
            Cells child;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c != target) {
                    child.push_back(cells[c]);
                    continue;
                }
                child.push_back({h});
                std::vector<int> rest;
                for (int a : cells[c])
                    if (a != h) rest.push_back(a);
                child.push_back(std::move(rest));
            }
            auto child_path = path;
            child_path.push_back(h);
            int back = search(std::move(child), std::move(child_path));
            if (back != -1 && back < depth) return back;
        }
        return -1;
    }

    bool in_explored_orbit(int h, const std::vector<int>& explored, const std::vector<int>& path) const {
        if (explored.empty()) return false;
        std::vector<const Permutation*> gens;
        for (const auto& g : autos_) {
            bool fixes = std::all_of(path.begin(), path.end(), [&](int v) { return g[v] == v; });
            if (fixes) gens.push_back(&g);
        }
        if (gens.empty()) return false;
        std::vector<bool> in(n_, false);
        std::vector<int> todo{h};
        in[h] = true;
        while (!todo.empty()) {
            int v = todo.back();
            todo.pop_back();
            for (const auto* g : gens) {
                int w = (*g)[v];
                if (!in[w]) {
                    in[w] = true;
                    todo.push_back(w);
                }
            }
        }
        return std::any_of(explored.begin(), explored.end(), [&](int e) { return in[e]; });
    }

    const IntersectionLattice& lat_;
    int n_;
    std::vector<int> best_;
    std::vector<int> best_order_;
    std::vector<int> best_path_;
    std::vector<Permutation> autos_;
};

} // namespace detail

inline CanonicalForm canonical_form(const IntersectionLattice& lat) {
    return detail::CanonicalSearch(lat).run();
}

/// String equal for two lattices iff they are isomorphic.
inline std::string canonical_key(const IntersectionLattice& lat) { return canonical_form(lat).key; }

} // namespace hyperfree
