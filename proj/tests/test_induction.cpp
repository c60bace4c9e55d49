#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hyperfree;

namespace {

using A = Arrangement<BigRat>;

A make(std::vector<std::array<long, 3>> rows) {
    std::vector<Vec3<BigRat>> cols;
    for (auto r : rows) cols.push_back({BigRat(r[0]), BigRat(r[1]), BigRat(r[2])});
    return A::build(cols);
}

A boolean() { return make({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }
A near_pencil4() { return make({{1, 0, 0}, {0, 1, 0}, {1, -1, 0}, {0, 0, 1}}); }
A near_pencil5() { return make({{1, 0, 0}, {0, 1, 0}, {1, -1, 0}, {1, 1, 0}, {0, 0, 1}}); }

A family_at(const Family& f, long w) { return *specialize(f, BigRat(w)).arrangement; }

const std::vector<A>& small_corpus() {
    static const std::vector<A> c = oracle::corpus(30, 31);
    return c;
}

/// Restriction size of beta in A + beta, from the oracle's flats of the enlarged arrangement.
int oracle_added_size(const A& a, const Vec3<BigRat>& beta) {
    std::vector<oracle::V3> cols;
    for (const auto& c : a.columns()) cols.push_back(oracle::to_q(c));
    cols.push_back(oracle::to_q(beta));
    const int b = a.size();
    int size = 0;
    for (const auto& f : oracle::flats(cols))
        if (std::binary_search(f.begin(), f.end(), b)) ++size;
    return size;
}

} // namespace

TEST(Exponents, AdditionAndDeletionShapes) {
    EXPECT_EQ(exponents_after_addition({1, 2, 3}, 2), (Exponents{1, 2, 4}));
    EXPECT_EQ(exponents_after_deletion({1, 2, 3}, 3), (Exponents{1, 1, 3}));
    EXPECT_FALSE(exponents_after_deletion({1, 6, 6}, 5));
}

TEST(Triple, Examples) {
    auto t = triple_check(near_pencil4(), 3);
    EXPECT_EQ(t.status, TripleStatus::Decided);
    EXPECT_EQ(t.exp_a, (Exponents{1, 1, 2}));
    EXPECT_EQ(t.exp_deletion, (Exponents{0, 1, 2}));
    EXPECT_TRUE(t.s1 && t.s2 && t.s3);

    t = triple_check(near_pencil5(), 3);
    EXPECT_EQ(t.restriction_size, 2);
    EXPECT_EQ(t.exp_restriction, (std::array<int, 2>{1, 1}));
    EXPECT_EQ(t.exp_a, (Exponents{1, 1, 3}));
    EXPECT_EQ(t.exp_deletion, (Exponents{1, 1, 2}));
    EXPECT_TRUE(t.s1 && t.s2 && t.s3);

    const auto a13 = family_at(family_13(), 3);
    t = triple_check(a13, 0);
    EXPECT_EQ(t.restriction_size, 6);
    EXPECT_EQ(t.exp_a, (Exponents{1, 6, 6}));
    EXPECT_FALSE(t.s1);
    EXPECT_FALSE(t.s2);
    EXPECT_THROW(triple_check(a13, 13), UnknownLabel);
}

TEST(Triple, AdditionDeletionHoldsOnCorpus) {
    for (const auto& a : small_corpus()) {
        const auto lat = lattice(a);
        const auto fa = oracle::freeness(a);
        for (int h = 0; h < a.size(); ++h) {
            TripleVerdict t;
            ASSERT_NO_THROW(t = triple_check(a, h));
            ASSERT_EQ(t.status, TripleStatus::Decided);
            const int k = lat.restriction_size(h) - 1;
            EXPECT_EQ(t.s1, fa.free && fa.exponents == sorted_exponents(1, k, a.size() - 1 - k));
            if (lat.without(h).rank() == 3) {
                const auto fd = oracle::freeness(delete_hyperplane(a, h).arrangement);
                EXPECT_EQ(t.s2, fd.free && fd.exponents == sorted_exponents(1, k, a.size() - 2 - k));
            }
            EXPECT_EQ(t.s1, t.s2);
        }
    }
}

TEST(InductiveFreeness, Examples) {
    auto cert = inductively_free(boolean());
    ASSERT_TRUE(cert);
    EXPECT_TRUE(cert->steps.empty());

    cert = inductively_free(near_pencil5());
    ASSERT_TRUE(cert);
    EXPECT_EQ(cert->steps.size(), 2u);
    EXPECT_EQ(cert->exponents, (Exponents{1, 1, 3}));
    EXPECT_TRUE(verify_if_certificate(near_pencil5(), *cert));

    const auto a13 = family_at(family_13(), 3);
    EXPECT_FALSE(inductively_free(a13));
    const auto w = quick_non_if(a13);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->exponents, (Exponents{1, 6, 6}));
    EXPECT_EQ(w->restriction_sizes, std::vector<int>(13, 6));

    const auto w15 = quick_non_if(family_at(family_15(), 3));
    ASSERT_TRUE(w15);
    EXPECT_EQ(w15->exponents, (Exponents{1, 7, 7}));
    for (int s : w15->restriction_sizes) EXPECT_NE(s, 8);
    EXPECT_FALSE(quick_non_if(boolean()));
}

TEST(InductiveFreeness, ImpliesFreeAndRecursivelyFree) {
    int if_count = 0;
    for (const auto& a : small_corpus()) {
        const auto cert = inductively_free(a);
        const auto w = quick_non_if(a);
        if (w) EXPECT_FALSE(cert);
        if (!cert) continue;
        ++if_count;
        EXPECT_TRUE(verify_if_certificate(a, *cert));
        const auto o = oracle::freeness(a);
        ASSERT_TRUE(o.free);
        EXPECT_EQ(o.exponents, cert->exponents);
        const auto rf = recursively_free(a, a.size() + 1, 2000);
        EXPECT_EQ(rf.verdict, RFVerdict::RF);
        EXPECT_TRUE(replay_chain(a, rf.chain));
    }
    EXPECT_GT(if_count, 0);
}

TEST(InductiveFreeness, TamperedCertificateIsRejected) {
    auto cert = *inductively_free(near_pencil5());
    cert.steps.front().exp_after = {1, 2, 2};
    EXPECT_FALSE(verify_if_certificate(near_pencil5(), cert));
}

TEST(Candidates, MatchBruteForceLines) {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> c(-3, 3);
    for (const auto& a : oracle::corpus(40, 43)) {
        const auto lat = lattice(a);
        std::set<int> all;
        for (int s = 1; s <= a.size() + 1; ++s) all.insert(s);
        const auto cs = candidate_additions(a, all);
        std::map<std::string, int> listed;
        for (std::size_t i = 0; i < cs.candidates.size(); ++i) {
            listed[to_string(normalized(cs.candidates[i]))] = cs.restriction_sizes[i];
            EXPECT_EQ(cs.restriction_sizes[i], oracle_added_size(a, cs.candidates[i]));
            for (const auto& col : a.columns()) EXPECT_FALSE(proportional(col, cs.candidates[i]));
        }
        // every line through two flat points is listed
        std::vector<oracle::V3> pts;
        for (const auto& f : lat.flats()) pts.push_back(oracle::cross(oracle::to_q(a.column(f[0])), oracle::to_q(a.column(f[1]))));
        for (std::size_t x = 0; x < pts.size(); ++x)
            for (std::size_t y = x + 1; y < pts.size(); ++y) {
                const auto l = oracle::cross(pts[x], pts[y]);
                const Vec3<BigRat> beta{BigRat(l[0]), BigRat(l[1]), BigRat(l[2])};
                bool present = false;
                for (const auto& col : a.columns()) present = present || proportional(col, beta);
                if (!present) EXPECT_TRUE(listed.count(to_string(normalized(beta))));
            }
        // completeness: any line with a target size is listed when the flag is set
        const int m = lat.max_multiplicity();
        const std::set<int> targets{a.size() - m};
        const auto small = candidate_additions(a, lat, targets);
        EXPECT_EQ(small.complete, a.size() - (a.size() - m) > m - 1);
        EXPECT_FALSE(candidate_additions(a, lat, {a.size()}).complete);
        std::set<std::string> small_keys;
        for (const auto& v : small.candidates) small_keys.insert(to_string(normalized(v)));
        for (int trial = 0; trial < 50; ++trial) {
            const Vec3<BigRat> beta{BigRat(c(rng)), BigRat(c(rng)), BigRat(c(rng))};
            if (is_zero_vec(beta)) continue;
            bool present = false;
            for (const auto& col : a.columns()) present = present || proportional(col, beta);
            if (present) continue;
            if (small.complete && targets.count(oracle_added_size(a, beta)))
                EXPECT_TRUE(small_keys.count(to_string(normalized(beta))));
        }
    }
}

TEST(Candidates, FamilyCompleteness) {
    const auto a13 = family_at(family_13(), 3);
    const auto cs = candidate_additions(a13, {6, 7});
    EXPECT_TRUE(cs.complete);
    const auto a15 = family_at(family_15(), 3);
    EXPECT_TRUE(candidate_additions(a15, {7, 8}).complete);
}

TEST(RecursiveFreeness, Examples) {
    auto r = recursively_free(near_pencil5(), 6, 1000);
    EXPECT_EQ(r.verdict, RFVerdict::RF);
    EXPECT_TRUE(replay_chain(near_pencil5(), r.chain));

    r = recursively_free(family_at(family_13(), 3), 14, 20000);
    EXPECT_EQ(r.verdict, RFVerdict::NotRF);
    EXPECT_TRUE(r.sound());
    EXPECT_EQ(r.start_exponents, (Exponents{1, 6, 6}));

    r = recursively_free(family_at(family_15(), 3), 16, 20000);
    EXPECT_EQ(r.verdict, RFVerdict::NotRF);
    EXPECT_TRUE(r.sound());
}

TEST(RecursiveFreeness, NonFreeStartAndSoundness) {
    for (const auto& six : oracle::six_line_pair()) {
        const auto r = recursively_free(six, 7, 100);
        if (!oracle::freeness(six).free) EXPECT_EQ(r.verdict, RFVerdict::NotRF);
    }
    RFSearchReport<BigRat> rep;
    rep.max_n = 6;
    rep.expansions.push_back({0, 6, 3, {3}, false, 0, 0});
    EXPECT_TRUE(rep.sound());
    rep.expansions.push_back({1, 5, 3, {3}, false, 0, 0});
    EXPECT_FALSE(rep.sound());
}

TEST(RecursiveFreeness, TamperedChainIsRejected) {
    auto r = recursively_free(near_pencil5(), 6, 1000);
    if (r.chain.empty()) {
        r.chain.push_back({MoveKind::Delete, Vec3<BigRat>{BigRat(0), BigRat(0), BigRat(1)}, 4, {1, 2, 2}});
    } else {
        r.chain.front().exp_after = {1, 5, 5};
    }
    EXPECT_FALSE(replay_chain(near_pencil5(), r.chain));
}

TEST(Abe, Examples) {
    const auto r = abe_pair_check(near_pencil5(), 3);
    EXPECT_EQ(r.status, AbeStatus::Consistent);
    EXPECT_EQ(r.common, (IntPoly{-1, 1}));
    const auto a13 = family_at(family_13(), 3);
    for (int h = 0; h < 13; ++h) EXPECT_NE(abe_pair_check(a13, h).status, AbeStatus::Violated);
    EXPECT_EQ(reduced_char_poly(char_poly(lattice(boolean()))), (IntPoly{1, -2, 1}));
}

TEST(Abe, NeverViolatedOnCorpus) {
    int applicable = 0;
    for (const auto& a : small_corpus()) {
        const auto lat = lattice(a);
        for (int h = 0; h < a.size(); ++h) {
            if (lat.without(h).rank() != 3) continue;
            const auto r = abe_pair_check(a, h);
            EXPECT_NE(r.status, AbeStatus::Violated) << r.note;
            if (r.status == AbeStatus::Consistent) ++applicable;
        }
    }
    EXPECT_GT(applicable, 0);
}
