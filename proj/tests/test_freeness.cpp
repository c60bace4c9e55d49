#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hyperfree;

namespace {

using A = Arrangement<BigRat>;
using D = Derivation<BigRat>;

A make(std::vector<std::array<long, 3>> rows) {
    std::vector<Vec3<BigRat>> cols;
    for (auto r : rows) cols.push_back({BigRat(r[0]), BigRat(r[1]), BigRat(r[2])});
    return A::build(cols);
}

A boolean() { return make({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }
A near_pencil4() { return make({{1, 0, 0}, {0, 1, 0}, {1, -1, 0}, {0, 0, 1}}); }

A family_at(const Family& f, long w) { return *specialize(f, BigRat(w)).arrangement; }

D monomial_derivation(int var) {
    D d;
    for (int i = 0; i < 3; ++i) d.coords[i] = HomPoly<BigRat>(1);
    Monomial m{0, 0, 0};
    m[var] = 1;
    d.coords[var].coeff(m) = 1;
    return d;
}

} // namespace

TEST(Derivations, EulerBelongsToEveryModule) {
    for (const auto& a : oracle::corpus(50, 3)) {
        const auto e = euler_derivation(a);
        EXPECT_EQ(e.pdeg(), 1);
        EXPECT_TRUE(in_derivation_module(a, e));
        for (const auto& alpha : a.columns()) EXPECT_EQ(e.apply(alpha), HomPoly<BigRat>::linear(alpha));
    }
}

TEST(Derivations, GradedDimensionExamples) {
    EXPECT_EQ(derivation_space(boolean(), 1).dimension(), 3);
    EXPECT_EQ(derivation_space(near_pencil4(), 1).dimension(), 2);
    EXPECT_EQ(derivation_space(family_at(family_13(), 3), 6).dimension(), 23);
    EXPECT_THROW(derivation_space(boolean(), -1), Error);
}

TEST(Derivations, ExpectedGradedDim) {
    EXPECT_EQ(expected_graded_dim(Exponents{1, 1, 1}, 1), 3);
    EXPECT_EQ(expected_graded_dim(Exponents{1, 6, 6}, 6), 23);
    EXPECT_EQ(expected_graded_dim(Exponents{1, 5, 7}, 5), 16);
    EXPECT_EQ(expected_graded_dim(Exponents{1, 5, 7}, 0), 0);
}

TEST(Derivations, SpaceMatchesEvaluationOracle) {
    for (const auto& a : oracle::corpus(40, 8)) {
        std::vector<oracle::V3> cols;
        for (const auto& c : a.columns()) cols.push_back(oracle::to_q(c));
        for (int p = 0; p <= std::min(a.size(), 5); ++p) {
            const auto basis = derivation_space(a, p);
            EXPECT_EQ(basis.dimension(), static_cast<int>(oracle::derivations(cols, p).size()));
            for (const auto& theta : basis.elements) {
                EXPECT_EQ(theta.pdeg(), p);
                EXPECT_TRUE(in_derivation_module(a, theta));
            }
        }
    }
}

TEST(Saito, Examples) {
    const auto b = boolean();
    auto c = saito_check(b, monomial_derivation(0), monomial_derivation(1), monomial_derivation(2));
    ASSERT_TRUE(c);
    EXPECT_EQ(*c, BigRat(1));
    EXPECT_FALSE(saito_check(b, monomial_derivation(0), monomial_derivation(1), monomial_derivation(1)));
    const auto a13 = family_at(family_13(), 3);
    const auto e = euler_derivation(a13);
    EXPECT_THROW(saito_check(a13, e, e, e), DegreeMismatch);
}

TEST(DecideFreeness, Examples) {
    auto v = decide_freeness(boolean());
    EXPECT_EQ(v.status, FreenessStatus::Free);
    EXPECT_EQ(v.exponents, (Exponents{1, 1, 1}));

    v = decide_freeness(make({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}));
    EXPECT_EQ(v.status, FreenessStatus::NotFree);
    EXPECT_EQ(v.reason, NotFreeReason::ChiDoesNotSplit);
    EXPECT_EQ(v.chi.factored(), "(x-1)(x^2-3x+3)");

    for (auto [w, e] : {std::pair{3L, Exponents{1, 6, 6}}, std::pair{2L, Exponents{1, 5, 7}}}) {
        const auto a = family_at(family_13(), w);
        v = decide_freeness(a);
        ASSERT_EQ(v.status, FreenessStatus::Free) << w;
        EXPECT_EQ(v.exponents, e);
        ASSERT_TRUE(v.certificate);
        EXPECT_TRUE(oracle::saito_identity(a, *v.certificate));
    }
    const auto a15 = family_at(family_15(), 3);
    v = decide_freeness(a15);
    ASSERT_EQ(v.status, FreenessStatus::Free);
    EXPECT_EQ(v.exponents, (Exponents{1, 7, 7}));
    EXPECT_TRUE(oracle::saito_identity(a15, *v.certificate));
}

TEST(DecideFreeness, GradedMismatchIsReported) {
    const auto a = oracle::six_line_pair()[1];
    const auto v = decide_freeness(a);
    const auto o = oracle::freeness(a);
    EXPECT_EQ(v.is_free(), o.free);
    if (v.status == FreenessStatus::NotFree && v.reason == NotFreeReason::GradedDimensionMismatch) {
        ASSERT_TRUE(v.mismatch);
        EXPECT_NE(v.mismatch->expected, v.mismatch->actual);
        EXPECT_EQ(v.mismatch->actual, o.dims[v.mismatch->degree]);
    }
}

TEST(DecideFreeness, AgreesWithBruteForceOnSubarrangements) {
    int free_count = 0, total = 0;
    for (const auto& six : oracle::six_line_pair()) {
        for (unsigned mask = 1; mask < (1u << six.size()); ++mask) {
            const auto sub = oracle::subarrangement(six, mask);
            if (!sub) continue;
            const auto v = decide_freeness(*sub);
            const auto o = oracle::freeness(*sub);
            ASSERT_NE(v.status, FreenessStatus::Inconclusive);
            EXPECT_EQ(v.is_free(), o.free) << mask;
            if (v.is_free()) {
                EXPECT_EQ(*v.exponents, o.exponents);
                EXPECT_TRUE(oracle::saito_identity(*sub, *v.certificate));
                ++free_count;
            }
            ++total;
        }
    }
    EXPECT_GT(free_count, 0);
    EXPECT_LT(free_count, total);
}

TEST(DecideFreeness, AgreesWithBruteForceOnCorpus) {
    for (const auto& a : oracle::corpus(60, 21)) {
        const auto v = decide_freeness(a);
        const auto o = oracle::freeness(a);
        ASSERT_NE(v.status, FreenessStatus::Inconclusive);
        EXPECT_EQ(v.is_free(), o.free);
        for (const auto& rec : v.dimensions) EXPECT_EQ(rec.actual, o.dims[rec.degree]);
        if (v.is_free()) {
            EXPECT_EQ(*v.exponents, o.exponents);
            // Terao: a free arrangement has chi = (x-1)(x-e2)(x-e3)
            const auto& e = *v.exponents;
            EXPECT_EQ(v.chi.at(e[1]), 0);
            EXPECT_EQ(v.chi.at(e[2]), 0);
            EXPECT_EQ(e[0] + e[1] + e[2], a.size());
            EXPECT_TRUE(oracle::saito_identity(a, *v.certificate));
        }
    }
}

TEST(DecideFreeness, QuadraticFieldExample) {
    const QuadElem s = QuadElem::sqrt_of(2);
    std::vector<Vec3<QuadElem>> cols{{QuadElem(1), QuadElem(0), QuadElem(0)},
                                     {QuadElem(0), QuadElem(1), QuadElem(0)},
                                     {QuadElem(0), QuadElem(0), QuadElem(1)},
                                     {QuadElem(1), s, QuadElem(0)}};
    const auto a = Arrangement<QuadElem>::build(cols);
    const auto v = decide_freeness(a);
    ASSERT_EQ(v.status, FreenessStatus::Free);
    EXPECT_EQ(v.exponents, (Exponents{1, 1, 2}));
    EXPECT_TRUE(oracle::saito_identity(a, *v.certificate));
}
