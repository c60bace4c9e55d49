#pragma once

#include <concepts>
#include <string>

#include "hyperfree/scalars/bigrat.hpp"
#include "hyperfree/scalars/int_poly.hpp"
#include "hyperfree/scalars/quad.hpp"
#include "hyperfree/scalars/rat_func.hpp"

namespace hyperfree {

/// An exact field of characteristic zero with decidable equality.
/// A default constructed element is zero; K(BigRat) embeds the prime field.
template <class K>
concept ScalarDomain = std::regular<K> && std::constructible_from<K, BigRat> &&
    requires(const K& a, const K& b) {
        { a + b } -> std::same_as<K>;
        { a - b } -> std::same_as<K>;
        { a * b } -> std::same_as<K>;
        { a / b } -> std::same_as<K>;
        { -a } -> std::same_as<K>;
        { a.is_zero() } -> std::convertible_to<bool>;
        { a.to_string() } -> std::convertible_to<std::string>;
    };

template <ScalarDomain K>
K zero() { return K{}; }

template <ScalarDomain K>
K one() { return K(BigRat(1)); }

/// Human readable field name, e.g. "Q", "Q(t)", "Q(sqrt(2))".
inline std::string field_name(const BigRat&) { return "Q"; }
inline std::string field_name(const RatFunc&) { return "Q(t)"; }
inline std::string field_name(const QuadElem& x) {
    return x.d() == 0 ? "Q" : "Q(sqrt(" + std::to_string(x.d()) + "))";
}

} // namespace hyperfree
