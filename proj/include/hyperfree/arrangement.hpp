#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "hyperfree/errors.hpp"
#include "hyperfree/lattice.hpp"
#include "hyperfree/scalars/domain.hpp"

namespace hyperfree {

template <ScalarDomain K>
using Vec3 = std::array<K, 3>;

template <ScalarDomain K>
K dot(const Vec3<K>& a, const Vec3<K>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <ScalarDomain K>
Vec3<K> cross(const Vec3<K>& a, const Vec3<K>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <ScalarDomain K>
K det3(const Vec3<K>& a, const Vec3<K>& b, const Vec3<K>& c) {
    return dot(a, cross(b, c));
}

template <ScalarDomain K>
bool is_zero_vec(const Vec3<K>& a) {
    return a[0].is_zero() && a[1].is_zero() && a[2].is_zero();
}

/// True when a and b span a line (all 2x2 minors vanish).
template <ScalarDomain K>
bool proportional(const Vec3<K>& a, const Vec3<K>& b) {
    return is_zero_vec(cross(a, b));
}

/// a scaled so that its first nonzero coordinate is one.
template <ScalarDomain K>
Vec3<K> normalized(const Vec3<K>& a) {
    for (const auto& c : a) {
        if (!c.is_zero()) {
            K inv = one<K>() / c;
            return {a[0] * inv, a[1] * inv, a[2] * inv};
        }
    }
    return a;
}

template <ScalarDomain K>
std::string to_string(const Vec3<K>& a) {
    return "(" + a[0].to_string() + ", " + a[1].to_string() + ", " + a[2].to_string() + ")";
}

/// Central arrangement in K^3 given by its normal covectors, one per hyperplane.
///
/// Invariants: no covector is zero, no two are proportional and together they span K^3.
/// Hyperplanes are indexed 0..n-1 in input order; error messages use 1-based labels.
template <ScalarDomain K>
class Arrangement {
public:
    static Arrangement build(std::vector<Vec3<K>> columns) {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (is_zero_vec(columns[i])) throw ZeroColumn(static_cast<int>(i) + 1);
        for (std::size_t i = 0; i < columns.size(); ++i)
            for (std::size_t j = i + 1; j < columns.size(); ++j)
                if (proportional(columns[i], columns[j]))
                    throw ProportionalColumns(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
        if (!spans_space(columns)) throw NotEssential();
        Arrangement a;
        a.columns_ = std::move(columns);
        return a;
    }

    int size() const { return static_cast<int>(columns_.size()); }
    const std::vector<Vec3<K>>& columns() const { return columns_; }
    const Vec3<K>& column(int h) const { return columns_.at(h); }

    /// Sorted normalized covectors; equal for two arrangements iff they are the same set
    /// of hyperplanes.
    std::string coordinate_key() const {
        std::vector<std::string> cols;
        for (const auto& c : columns_) cols.push_back(to_string(normalized(c)));
        std::sort(cols.begin(), cols.end());
        std::string out;
        for (const auto& c : cols) out += c;
        return out;
    }

private:
    static bool spans_space(const std::vector<Vec3<K>>& cols) {
        if (cols.size() < 3) return false;
        // any two columns are independent, so rank 3 iff some third column leaves their plane
        Vec3<K> normal = cross(cols[0], cols[1]);
        for (std::size_t k = 2; k < cols.size(); ++k)
            if (!dot(normal, cols[k]).is_zero()) return true;
        return false;
    }

    std::vector<Vec3<K>> columns_;
};

/// Result of deleting one hyperplane: the smaller arrangement and, for each of its
/// hyperplanes, the index it had before.
template <ScalarDomain K>
struct Deletion {
    Arrangement<K> arrangement;
    std::vector<int> original_index;
};

template <ScalarDomain K>
Deletion<K> delete_hyperplane(const Arrangement<K>& a, int h) {
    if (h < 0 || h >= a.size()) throw UnknownLabel(h + 1);
    std::vector<Vec3<K>> cols;
    std::vector<int> idx;
    for (int i = 0; i < a.size(); ++i) {
        if (i == h) continue;
        cols.push_back(a.column(i));
        idx.push_back(i);
    }
    return {Arrangement<K>::build(std::move(cols)), std::move(idx)};
}

template <ScalarDomain K>
Arrangement<K> add_hyperplane(const Arrangement<K>& a, const Vec3<K>& alpha) {
    auto cols = a.columns();
    cols.push_back(alpha);
    return Arrangement<K>::build(std::move(cols));
}

/// Rank-2 flats by pairwise determinant clustering: hyperplanes i, j, k share a flat iff
/// det(alpha_i, alpha_j, alpha_k) = 0.
template <ScalarDomain K>
IntersectionLattice lattice(const Arrangement<K>& a) {
    const int n = a.size();
    std::vector<int> assigned(static_cast<std::size_t>(n) * n, 0);
    std::vector<std::vector<int>> flats;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (assigned[i * n + j]) continue;
            std::vector<int> flat{i, j};
            const Vec3<K> point = cross(a.column(i), a.column(j));
            for (int k = j + 1; k < n; ++k)
                if (dot(point, a.column(k)).is_zero()) flat.push_back(k);
            for (std::size_t x = 0; x < flat.size(); ++x)
                for (std::size_t y = x + 1; y < flat.size(); ++y) assigned[flat[x] * n + flat[y]] = 1;
            flats.push_back(std::move(flat));
        }
    }
    return IntersectionLattice::from_flats(n, std::move(flats));
}

/// Spanning vector of flat x (the common point of its hyperplanes in the dual plane).
template <ScalarDomain K>
Vec3<K> flat_point(const Arrangement<K>& a, const IntersectionLattice& lat, int x) {
    const auto& f = lat.flat(x);
    return cross(a.column(f[0]), a.column(f[1]));
}

struct RestrictionProfile {
    int size = 0;
    std::vector<int> multiplicities;
};

template <ScalarDomain K>
RestrictionProfile restriction_profile(const Arrangement<K>& a, int h) {
    if (h < 0 || h >= a.size()) throw UnknownLabel(h + 1);
    IntersectionLattice lat = lattice(a);
    return {lat.restriction_size(h), lat.restriction_multiplicities(h)};
}

} // namespace hyperfree
