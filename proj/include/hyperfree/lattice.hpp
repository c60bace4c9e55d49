#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hyperfree/errors.hpp"

namespace hyperfree {

/// Rank-2 part of the intersection lattice of a central arrangement in dimension three.
///
/// Hyperplanes are indexed 0..n-1. A flat is the sorted set of hyperplanes through a common
/// line (a projective point), of size at least two; every pair of hyperplanes lies in exactly
/// one flat. Flats are kept in lexicographic order, which is the same as first appearance
/// when scanning hyperplanes 1..n.
class IntersectionLattice {
public:
    IntersectionLattice() = default;

    /// Validates pair coverage and builds the incidence tables.
    static IntersectionLattice from_flats(int n, std::vector<std::vector<int>> flats) {
        if (n < 0) throw InvalidLattice("negative hyperplane count");
        for (auto& f : flats) {
            std::sort(f.begin(), f.end());
            if (f.size() < 2) throw InvalidLattice("flat with fewer than two hyperplanes");
            if (std::adjacent_find(f.begin(), f.end()) != f.end())
                throw InvalidLattice("flat lists a hyperplane twice");
            if (f.front() < 0 || f.back() >= n) throw InvalidLattice("flat refers to unknown hyperplane");
        }
        std::sort(flats.begin(), flats.end());
        IntersectionLattice lat;
        lat.n_ = n;
        lat.flats_ = std::move(flats);
        lat.pair_flat_.assign(static_cast<std::size_t>(n) * n, -1);
        lat.per_hyperplane_.assign(n, {});
        for (int x = 0; x < static_cast<int>(lat.flats_.size()); ++x) {
            const auto& f = lat.flats_[x];
            for (std::size_t i = 0; i < f.size(); ++i) {
                lat.per_hyperplane_[f[i]].push_back(x);
                for (std::size_t j = i + 1; j < f.size(); ++j) {
                    int& slot = lat.pair_flat_[f[i] * n + f[j]];
                    if (slot != -1)
                        throw InvalidLattice("hyperplanes " + std::to_string(f[i] + 1) + " and " +
                                             std::to_string(f[j] + 1) + " lie in two flats");
                    slot = x;
                    lat.pair_flat_[f[j] * n + f[i]] = x;
                }
            }
        }
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (lat.pair_flat_[a * n + b] == -1)
                    throw InvalidLattice("hyperplanes " + std::to_string(a + 1) + " and " +
                                         std::to_string(b + 1) + " share no flat");
        return lat;
    }

    int size() const { return n_; }
    int flat_count() const { return static_cast<int>(flats_.size()); }
    const std::vector<std::vector<int>>& flats() const { return flats_; }
    const std::vector<int>& flat(int x) const { return flats_[x]; }
    int multiplicity(int x) const { return static_cast<int>(flats_[x].size()); }
    /// Sorted indices of the flats on hyperplane h.
    const std::vector<int>& flats_on(int h) const { return per_hyperplane_[h]; }
    /// The flat containing hyperplanes a != b.
    int flat_of(int a, int b) const { return pair_flat_[a * n_ + b]; }

    /// 3 when essential, 2 for a pencil, otherwise n (0 or 1).
    int rank() const {
        if (n_ <= 1) return n_;
        if (flats_.size() == 1) return 2;
        return 3;
    }

    /// |A^H|: number of points on hyperplane h.
    int restriction_size(int h) const { return static_cast<int>(per_hyperplane_[h].size()); }

    std::vector<int> restriction_multiplicities(int h) const {
        std::vector<int> ms;
        for (int x : per_hyperplane_[h]) ms.push_back(multiplicity(x));
        std::sort(ms.begin(), ms.end());
        return ms;
    }

    int max_multiplicity() const {
        int m = 0;
        for (const auto& f : flats_) m = std::max(m, static_cast<int>(f.size()));
        return m;
    }

    /// Sum over flats of (m_X - 1).
    long long multiplicity_excess() const {
        long long s = 0;
        for (const auto& f : flats_) s += static_cast<long long>(f.size()) - 1;
        return s;
    }

    /// Lattice of the deletion A \ {h}; hyperplanes above h shift down by one.
    IntersectionLattice without(int h) const {
        check_label(h);
        std::vector<std::vector<int>> out;
        for (const auto& f : flats_) {
            std::vector<int> g;
            for (int a : f)
                if (a != h) g.push_back(a > h ? a - 1 : a);
            if (g.size() >= 2) out.push_back(std::move(g));
        }
        return from_flats(n_ - 1, std::move(out));
    }

    /// Lattice of the sub-arrangement on the given hyperplanes (renumbered in the given order).
    IntersectionLattice restricted_to(const std::vector<int>& keep) const {
        std::vector<int> pos(n_, -1);
        for (std::size_t i = 0; i < keep.size(); ++i) {
            check_label(keep[i]);
            pos[keep[i]] = static_cast<int>(i);
        }
        std::vector<std::vector<int>> out;
        for (const auto& f : flats_) {
            std::vector<int> g;
            for (int a : f)
                if (pos[a] >= 0) g.push_back(pos[a]);
            if (g.size() >= 2) out.push_back(std::move(g));
        }
        return from_flats(static_cast<int>(keep.size()), std::move(out));
    }

    /// Image under the relabeling old index i -> perm[i].
    IntersectionLattice relabeled(const std::vector<int>& perm) const {
        std::vector<std::vector<int>> out;
        for (const auto& f : flats_) {
            std::vector<int> g;
            for (int a : f) g.push_back(perm.at(a));
            out.push_back(std::move(g));
        }
        return from_flats(n_, std::move(out));
    }

    /// One line per hyperplane listing its flats, numbered 1..k in first-appearance order,
    /// e.g. "[1, 2, 3, 4, 5, 6]".
    std::string listing() const {
        std::string out;
        for (int h = 0; h < n_; ++h) {
            out += "[";
            for (std::size_t i = 0; i < per_hyperplane_[h].size(); ++i) {
                if (i) out += ", ";
                out += std::to_string(per_hyperplane_[h][i] + 1);
            }
            out += "]\n";
        }
        return out;
    }

    /// Parses a listing: one bracketed list of flat numbers per hyperplane. Flat numbers are
    /// arbitrary positive integers; blank lines and '#' comments are ignored.
    static IntersectionLattice parse_listing(std::string_view text) {
        std::map<long, std::vector<int>> members;
        std::istringstream in{std::string(text)};
        std::string line;
        int h = 0;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto open = line.find('[');
            if (open == std::string::npos) {
                if (line.find_first_not_of(" \t\r,") != std::string::npos)
                    throw InvalidLattice("line " + std::to_string(lineno) + ": expected '['");
                continue;
            }
            auto close = line.find(']', open);
            if (close == std::string::npos)
                throw InvalidLattice("line " + std::to_string(lineno) + ": missing ']'");
            std::string body = line.substr(open + 1, close - open - 1);
            std::replace(body.begin(), body.end(), ',', ' ');
            std::istringstream items(body);
            std::string tok;
            while (items >> tok) {
                try {
                    std::size_t used = 0;
                    long id = std::stol(tok, &used);
                    if (used != tok.size()) throw std::invalid_argument(tok);
                    members[id].push_back(h);
                } catch (const std::exception&) {
                    throw InvalidLattice("line " + std::to_string(lineno) + ": bad flat number '" + tok + "'");
                }
            }
            ++h;
        }
        std::vector<std::vector<int>> flats;
        for (auto& [id, hs] : members) flats.push_back(std::move(hs));
        return from_flats(h, std::move(flats));
    }

    friend bool operator==(const IntersectionLattice& a, const IntersectionLattice& b) {
        return a.n_ == b.n_ && a.flats_ == b.flats_;
    }

private:
    void check_label(int h) const {
        if (h < 0 || h >= n_) throw UnknownLabel(h + 1);
    }

    int n_ = 0;
    std::vector<std::vector<int>> flats_;
    std::vector<std::vector<int>> per_hyperplane_;
    std::vector<int> pair_flat_;
};

/// Sorted exponents of a rank-3 arrangement.
using Exponents = std::array<int, 3>;

inline std::string to_string(const Exponents& e) {
    return "[[" + std::to_string(e[0]) + "," + std::to_string(e[1]) + "," + std::to_string(e[2]) + "]]";
}

/// Characteristic polynomial sum_k coeffs[k] x^k, degree three, monic.
struct CharPoly {
    std::array<long long, 4> coeffs{};

    long long at(long long x) const {
        return ((coeffs[3] * x + coeffs[2]) * x + coeffs[1]) * x + coeffs[0];
    }

    friend bool operator==(const CharPoly&, const CharPoly&) = default;

    /// (x - 1)(x - e2)(x - e3) with integers 1 <= e2 <= e3, when such a factorization exists.
    std::optional<Exponents> split_exponents() const {
        if (at(1) != 0 || coeffs[3] != 1) return std::nullopt;
        // x^3 + c2 x^2 + c1 x + c0 = (x - 1)(x^2 + b x + c)
        long long b = coeffs[2] + 1;
        long long c = -coeffs[0];
        long long disc = b * b - 4 * c;
        if (disc < 0) return std::nullopt;
        auto r = static_cast<long long>(std::llround(std::sqrt(static_cast<long double>(disc))));
        while (r * r > disc) --r;
        while ((r + 1) * (r + 1) <= disc) ++r;
        if (r * r != disc || (-b - r) % 2 != 0) return std::nullopt;
        long long e2 = (-b - r) / 2;
        long long e3 = (-b + r) / 2;
        if (e2 < 1) return std::nullopt;
        return Exponents{1, static_cast<int>(e2), static_cast<int>(e3)};
    }

    std::string to_string() const {
        std::string out;
        for (int k = 3; k >= 0; --k) {
            long long c = coeffs[k];
            if (c == 0) continue;
            long long mag = c < 0 ? -c : c;
            if (out.empty()) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            if (mag != 1 || k == 0) out += std::to_string(mag) + (k > 0 ? "*" : "");
            if (k > 0) out += k > 1 ? "x^" + std::to_string(k) : "x";
        }
        return out.empty() ? "0" : out;
    }

    /// Factored form over Z, e.g. "(x-1)(x-6)^2", "x(x-1)(x-3)" or "(x-1)(x^2-3x+3)".
    std::string factored() const {
        std::vector<long long> roots;
        std::array<long long, 4> rest = coeffs;
        int deg = 3;
        auto divide_root = [&](long long r) {
            // synthetic division of rest (degree deg) by (x - r)
            std::array<long long, 4> q{};
            long long carry = 0;
            for (int k = deg; k >= 1; --k) {
                carry = rest[k] + carry * r;
                q[k - 1] = carry;
            }
            rest = q;
            --deg;
        };
        auto value = [&](long long x) {
            long long v = 0;
            for (int k = deg; k >= 0; --k) v = v * x + rest[k];
            return v;
        };
        bool progress = true;
        while (progress && deg > 0) {
            progress = false;
            long long bound = 1;
            for (int k = 0; k < deg; ++k) bound = std::max(bound, std::llabs(rest[k]));
            for (long long r = 0; r <= bound && !progress; ++r) {
                for (long long cand : {r, -r}) {
                    if (value(cand) == 0) {
                        roots.push_back(cand);
                        divide_root(cand);
                        progress = true;
                        break;
                    }
                }
            }
        }
        std::sort(roots.begin(), roots.end());
        std::string out;
        for (std::size_t i = 0; i < roots.size();) {
            std::size_t j = i;
            while (j < roots.size() && roots[j] == roots[i]) ++j;
            long long r = roots[i];
            std::string f = r == 0 ? "x" : (r > 0 ? "(x-" + std::to_string(r) + ")" : "(x+" + std::to_string(-r) + ")");
            out += f;
            if (j - i > 1) out += "^" + std::to_string(j - i);
            i = j;
        }
        if (deg > 0) {
            std::string q;
            for (int k = deg; k >= 0; --k) {
                long long c = rest[k];
                if (c == 0) continue;
                long long mag = std::llabs(c);
                if (!q.empty()) q += c < 0 ? "-" : "+";
                else if (c < 0) q += "-";
                if (mag != 1 || k == 0) q += std::to_string(mag);
                if (k > 0) q += k > 1 ? "x^" + std::to_string(k) : "x";
            }
            out += "(" + q + ")";
        }
        return out;
    }
};

/// Characteristic polynomial from the Moebius function of the lattice:
/// mu(V) = 1, mu(H) = -1, mu(X) = m_X - 1, and the rank-3 top closes the zero sum.
inline CharPoly char_poly(const IntersectionLattice& lat) {
    const long long n = lat.size();
    const long long excess = lat.multiplicity_excess();
    CharPoly p;
    p.coeffs = {0, excess, -n, 1};
    if (lat.rank() == 3) p.coeffs[0] = -(1 - n + excess);
    return p;
}

/// chi of a rank-2 restriction with k points: x^2 - k x + (k - 1), as coefficients c0, c1, c2.
inline std::array<long long, 3> restriction_char_poly(int points) {
    return {points - 1, -points, 1};
}

} // namespace hyperfree
