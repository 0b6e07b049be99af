#include "siegelkit/errors.hpp"
#include "siegelkit/formats.hpp"
#include "siegelkit/lattice.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace siegelkit;

namespace {

EvenLattice lat(const std::string& key) { return resolve_lattice(key); }

EnumerationOptions no_orbits() {
    EnumerationOptions o;
    o.orbit_reduction = false;
    return o;
}

EnumerationOptions threads(unsigned n) {
    EnumerationOptions o;
    o.threads = n;
    return o;
}

}  // namespace

TEST(ShortVectors, EnumerationMatchesBoxSearch) {
    for (const std::string key : {"a1", "a2", "a4", "d4"})
        for (long bound : {2L, 4L, 6L, 8L}) {
            const EvenLattice L = lat(key);
            const auto oracle = testsupport::box_search_counts(L.gram(), bound);
            const auto got = short_vectors(L, bound);
            for (long N = 2; N <= bound; N += 2) {
                const long want = oracle.count(N) ? oracle.at(N) : 0;
                EXPECT_EQ(got.at(N), want) << key << " N=" << N;
            }
        }
}

TEST(ShortVectors, E8UpToNormFourMatchesBoxSearch) {
    const EvenLattice E8 = lat("e8");
    const auto oracle = testsupport::box_search_counts(E8.gram(), 4);
    const auto got = short_vectors(E8, 4);
    EXPECT_EQ(got.at(2), oracle.at(2));
    EXPECT_EQ(got.at(4), oracle.at(4));
    EXPECT_EQ(got.at(2), 240);
    EXPECT_EQ(got.at(4), 2160);
}

TEST(ShortVectors, RawListIsClosedUnderNegationAndHasCorrectNorms) {
    const EvenLattice D4 = lat("d4");
    const VectorList v = enumerate_short_vectors(D4.gram(), 4);
    EXPECT_EQ(v.size(), 24u + 24u);
    std::set<std::vector<std::int32_t>> seen;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto* x = v.at(i);
        std::vector<std::int32_t> c(x, x + v.rank);
        long norm = 0;
        for (int a = 0; a < v.rank; ++a)
            for (int b = 0; b < v.rank; ++b) norm += static_cast<long>(c[a]) * D4.gram()(a, b) * c[b];
        EXPECT_EQ(norm, v.norms[i]);
        seen.insert(c);
    }
    for (const auto& c : seen) {
        std::vector<std::int32_t> m(c);
        for (auto& x : m) x = -x;
        EXPECT_TRUE(seen.count(m));
    }
}

TEST(ShortVectors, RejectsBadBounds) {
    EXPECT_THROW(short_vectors(lat("a2"), 3), DomainError);
    EXPECT_THROW(short_vectors(lat("a2"), 0), DomainError);
}

TEST(RepresentationCount, AgreesWithBruteForceTuples) {
    struct Case {
        std::string lattice, xi;
    };
    const std::vector<Case> cases = {{"a2", "1,-1/2;-1/2,1"}, {"a2", "1,1/2;1/2,1"}, {"d4", "1,0;0,1"},
                                     {"d4", "1,1/2;1/2,1"},   {"a4", "1,0;0,1"},     {"d4", "1,0,0;0,1,0;0,0,1"},
                                     {"e8", "1,1/2;1/2,1"},   {"e8", "1,0;0,2"}};
    for (const auto& c : cases) {
        const EvenLattice L = lat(c.lattice);
        const HalfIntegralForm xi = parse_inline_form(c.xi);
        const long want = testsupport::brute_representations(L.gram(), xi.two_xi());
        EXPECT_EQ(representation_count(L, xi), want) << c.lattice << " " << c.xi;
        EXPECT_EQ(representation_count(L, xi, no_orbits()), want) << c.lattice << " " << c.xi;
    }
}

TEST(RepresentationCount, KnownValuesOnE8) {
    const EvenLattice E8 = lat("e8");
    EXPECT_EQ(representation_count(E8, parse_inline_form("1,0;0,1")), 30240);
    EXPECT_EQ(representation_count(E8, parse_inline_form("1,1/2;1/2,1")), 13440);
    EXPECT_EQ(representation_count(E8, parse_inline_form("1,0;0,1"), no_orbits()), 30240);
    // xi with off-diagonal 1 (2 xi = [[2,2],[2,4]]) and its permutation.
    const BigInt a = representation_count(E8, parse_inline_form("1,1;1,2"));
    EXPECT_EQ(a, representation_count(E8, parse_inline_form("2,1;1,1")));
    EXPECT_EQ(a, 30240);
}

TEST(RepresentationCount, InvariantUnderUnimodularChangeOfXi) {
    const EvenLattice D4 = lat("d4");
    const HalfIntegralForm xi = parse_inline_form("1,1/2,0;1/2,1,1/2;0,1/2,1");
    const IntMatrix u = IntMatrix::from_rows({{1, 1, 0}, {0, 1, 0}, {0, -1, 1}});
    EXPECT_EQ(representation_count(D4, xi), representation_count(D4, xi.congruent(u)));
}

TEST(RepresentationCount, ZeroWhenImpossible) {
    EXPECT_EQ(representation_count(lat("a2"), parse_inline_form("1,0;0,1")), 0);
    // singular Gram [[2,2],[2,2]] forces u = v
    EXPECT_EQ(representation_count(lat("e8"), parse_inline_form("1,1;1,1")), 240);
    EXPECT_THROW(representation_count(lat("a2"), HalfIntegralForm::identity(3)), DomainError);
    EXPECT_THROW(representation_count(lat("a2"), HalfIntegralForm::identity(1), threads(0)), DomainError);
}

TEST(AutomorphismOrder, SmallRootLattices) {
    EXPECT_EQ(automorphism_order(lat("a1")), 2);
    EXPECT_EQ(automorphism_order(lat("a2")), 12);
    EXPECT_EQ(automorphism_order(lat("a4")), 240);  // 2 * 5!
    EXPECT_EQ(automorphism_order(lat("d4")), 1152);
    EXPECT_EQ(automorphism_order(lat("d4"), no_orbits()), 1152);
    EXPECT_EQ(automorphism_order(lat("a2"), no_orbits()), 12);
}

TEST(AutomorphismOrder, E8AndRankSixteen) {
    EXPECT_EQ(automorphism_order(lat("e8")), BigInt("696729600"));
    EXPECT_EQ(automorphism_order(lat("e8e8")), BigInt("970864271032320000"));  // 2 |W(E8)|^2
    EXPECT_EQ(automorphism_order(lat("d16plus")), BigInt("685597979049984000"));  // 2^15 16!
}

TEST(AutomorphismOrder, ThreadsGiveIdenticalCounts) {
    for (unsigned t : {2u, 3u, 8u}) {
        EXPECT_EQ(automorphism_order(lat("e8"), threads(t)), BigInt("696729600"));
        EXPECT_EQ(representation_count(lat("e8"), parse_inline_form("1,0;0,1"), threads(t)), 30240);
    }
}

TEST(AutomorphismOrder, InvariantUnderBasisChange) {
    std::mt19937_64 rng(12);
    const EvenLattice D4 = lat("d4");
    IntMatrix u = IntMatrix::identity(4);
    for (int t = 0; t < 8; ++t) {
        const int i = static_cast<int>(rng() % 4), j = static_cast<int>(rng() % 4);
        if (i != j)
            for (int r = 0; r < 4; ++r) u(r, j) += u(r, i);
    }
    const EvenLattice D4b("D4b", D4.gram().congruent(u));
    EXPECT_EQ(automorphism_order(D4b), 1152);
}

TEST(NiemeierLattices, RootCountsAreTwentyFourTimesCoxeterNumber) {
    const std::map<std::string, long> h = {
        {"d24", 46}, {"d16e8", 30}, {"e8x3", 30}, {"a24", 25},  {"d12x2", 22},   {"a17e7", 18},
        {"d10e7x2", 18}, {"a15d9", 16}, {"d8x3", 14}, {"a12x2", 13}, {"a11d7e6", 12}, {"e6x4", 12},
        {"a9x2d6", 10}, {"d6x4", 10}, {"a8x3", 9}, {"a7x2d5x2", 8}, {"a6x4", 7}, {"a5x4d4", 6},
        {"d4x6", 6}, {"a4x6", 5}, {"a3x8", 4}, {"a2x12", 3}, {"a1x24", 2}};
    ASSERT_EQ(h.size(), 23u);
    for (const auto& [key, coxeter] : h) {
        const EvenLattice L = lat("niemeier_" + key);
        EXPECT_EQ(L.rank(), 24);
        EXPECT_TRUE(L.is_unimodular()) << key;
        EXPECT_EQ(short_vectors(L, 2).at(2), 24 * coxeter) << key;
    }
    const EvenLattice leech = lat("leech");
    EXPECT_TRUE(leech.is_unimodular());
    EXPECT_EQ(short_vectors(leech, 2).at(2), 0);
}

TEST(Theta, CoefficientsForSeveralForms) {
    const EvenLattice E8 = lat("e8");
    const auto t = theta_coefficients(E8, 1, {HalfIntegralForm::diagonal({1}), HalfIntegralForm::diagonal({2}),
                                                HalfIntegralForm::diagonal({3})});
    ASSERT_EQ(t.size(), 3u);
    EXPECT_EQ(t[0].second, 240);
    EXPECT_EQ(t[1].second, 2160);
    EXPECT_EQ(t[2].second, 6720);
    EXPECT_THROW(theta_coefficients(E8, 2, {HalfIntegralForm::diagonal({1})}), DomainError);
}

TEST(Genus, MassAndValidation) {
    const GenusWithWeights g({lat("e8e8"), lat("d16plus")});
    EXPECT_EQ(g.rank(), 16);
    Rational mass = Rational(1) / Rational(BigInt("970864271032320000")) + Rational(1) / Rational(BigInt("685597979049984000"));
    mass.canonicalize();
    EXPECT_EQ(g.mass(), mass);
    // Minkowski-Siegel mass of the rank-16 genus: |B_8|/16 * prod_{j<8} |B_2j|/4j
    EXPECT_EQ(g.mass(), Rational(691, BigInt("277667181515243520000")));
    EXPECT_EQ(g.index_of("D16+"), 1u);
    EXPECT_THROW(g.index_of("E8"), DataError);
    EXPECT_THROW(GenusWithWeights({lat("e8"), lat("e8e8")}), DomainError);
    EXPECT_THROW(GenusWithWeights({lat("e8"), lat("e8")}), DomainError);
    EXPECT_THROW(GenusWithWeights(std::vector<EvenLattice>{}, std::vector<BigInt>{}), DomainError);
    EXPECT_THROW(GenusWithWeights({lat("e8")}, std::vector<BigInt>{BigInt(0)}), DomainError);
}

TEST(Genus, WeightedAverages) {
    const GenusWithWeights g({lat("e8e8"), lat("d16plus")});
    ClassFunction f{{"E8+E8", Rational(3)}, {"D16+", Rational(-5)}};
    // Gram(E8+E8) is represented only by E8+E8, and Gram(D16+) only by D16+.
    EXPECT_EQ(weighted_average(g, f, lat("e8e8").as_form()), 3);
    EXPECT_EQ(weighted_average(g, f, lat("d16plus").as_form()), -5);
    EXPECT_EQ(weighted_average(g, constant_class_function(g, 1), HalfIntegralForm::identity(1)),
              Rational(480) * g.mass());
    EXPECT_THROW(weighted_average(g, ClassFunction{{"E8+E8", Rational(1)}}, HalfIntegralForm::identity(1)), DataError);
    EXPECT_THROW(weighted_average(g, ClassFunction{{"E8+E8", 1}, {"D16+", 1}, {"X", 1}}, HalfIntegralForm::identity(1)),
                 DataError);
}
