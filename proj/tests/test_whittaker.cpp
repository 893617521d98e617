#include <gtest/gtest.h>

#include <random>

#include "endo/whittaker/whittaker.hpp"

using namespace endo;
using namespace endo::whittaker;
using ff::rational_key;

namespace {

struct Fixture {
    ff::WCurve E;
    ff::Census C;
    ff::EndoscopicDatum D;
};

const Fixture& e5() {
    static Fixture f = [] {
        Fixture r;
        r.E = ff::WCurve::short_form(ff::Tower(5, 1), -1, 0);
        r.C = ff::enumerate_closed_points(r.E, 3);
        r.D = ff::make_datum(r.E, 1);
        return r;
    }();
    return f;
}

const Fixture& e7() {
    static Fixture f = [] {
        Fixture r;
        r.E = ff::WCurve::short_form(ff::Tower(7, 1), 2, 0);
        r.C = ff::enumerate_closed_points(r.E, 3);
        r.D = ff::make_datum(r.E, 0);
        return r;
    }();
    return f;
}

CyclotomicValue cv(long k) { return CyclotomicValue(static_cast<int>(k)); }

}  // namespace

TEST(GL2Char, Examples) {
    auto g = GL2Eigen::diag(cv(2), cv(3));
    EXPECT_TRUE(gl2_char(g, 1, 0) == cv(5));
    EXPECT_TRUE(gl2_char(g, 2, 1) == cv(30));
    EXPECT_TRUE(gl2_char(GL2Eigen::refl(cv(1)), 3, 0).is_zero());
    // Sym^2 of diag(2,3): 4 + 6 + 9
    EXPECT_TRUE(gl2_char(g, 2, 0) == cv(19));
    EXPECT_TRUE(gl2_char(g, -1, -2) == CyclotomicValue(Rational(5, 36)));
    try {
        gl2_char(g, 0, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidWeight);
    }
}

TEST(GL2Char, RecurrenceAndReflectionVanishing) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> K(0, 11);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = CyclotomicValue::root(K(rng), 12), b = CyclotomicValue::root(K(rng), 12);
        for (long d = 2; d <= 10; ++d)
            EXPECT_TRUE(complete_homogeneous(a, b, d) ==
                        (a + b) * complete_homogeneous(a, b, d - 1) - a * b * complete_homogeneous(a, b, d - 2));
        auto r = GL2Eigen::refl(a);
        for (long k = -2; k <= 2; ++k)
            for (long m = k; m <= k + 8; ++m) EXPECT_EQ(gl2_char(r, m, k).is_zero(), (m - k) % 2 != 0);
    }
}

TEST(Whittaker, ValueExamples) {
    const auto& f = e5();
    auto eig = eigen_table(f.D, f.C, 1);
    EXPECT_TRUE(whittaker_value(eig, {}, {}) == cv(1));
    DiagonalAdele s{{rational_key(f.E, 4, 0), {1, 0}}};
    EXPECT_TRUE(whittaker_value(eig, {}, s).is_zero());
    DiagonalAdele low{{rational_key(f.E, 2, 1), {0, 1}}};
    EXPECT_TRUE(whittaker_value(eig, {}, low).is_zero());
    DiagonalAdele split{{rational_key(f.E, 2, 1), {1, 0}}};
    EXPECT_TRUE(whittaker_value(eig, {}, split) == cv(2));
    DiagonalAdele missing{{ff::PointKey{2, false, 0, 0}, {1, 0}}};
    EXPECT_THROW(whittaker_value(eig, {}, missing), Error);
}

TEST(Coset, WitnessExamples) {
    const auto& f = e5();
    DivisorFF D1;
    D1.add(rational_key(f.E, 4, 0), 1);
    auto r1 = coset_vanishing(f.D, f.C, D1);
    EXPECT_EQ(r1.verdict, Verdict::VanishesAll);
    EXPECT_TRUE(r1.agrees);
    EXPECT_GT(r1.shifts_tried, 1000);
    EXPECT_EQ(static_cast<long>(r1.vanishing_log.size()), r1.shifts_tried);

    DivisorFF D2 = D1;
    D2.add(rational_key(f.E, 1, 0), 1);
    auto r2 = coset_vanishing(f.D, f.C, D2);
    EXPECT_EQ(r2.verdict, Verdict::Nonzero);
    ASSERT_TRUE(r2.witness);
    // the witness support sums to D + div(F), which differs from D by a principal divisor
    DivisorFF sum;
    for (const auto& [x, mk] : r2.witness->support) sum.add(x, mk.first + mk.second);
    EXPECT_EQ(sum.str(), r2.witness->target.str());
    EXPECT_TRUE(ff::is_principal(f.E, f.C, r2.witness->target - D2));
    for (const auto& [x, n] : r2.witness->target.terms())
        if (n % 2) EXPECT_TRUE(ff::split_classify(f.C.at(x), f.D).split) << x.str();
    EXPECT_FALSE(r2.witness->value.is_zero());

    DivisorFF D3;
    D3.add(rational_key(f.E, 2, 1), 1);
    auto r3 = coset_vanishing(f.D, f.C, D3);
    EXPECT_EQ(r3.verdict, Verdict::Nonzero);
    ASSERT_TRUE(r3.witness);
    EXPECT_EQ(r3.witness->shift, "1");
    EXPECT_EQ(r3.witness->support.size(), 1u);
    EXPECT_EQ(r3.witness->support.begin()->second, (std::pair<long, long>{1, 0}));
}

TEST(Coset, DifferentialShiftsParity) {
    // delta = div(x - 3) = (3,2) + (3,3) - 2 inf is even, so the verdict only depends on D
    const auto& f = e5();
    auto g = ff::RationalFunctionFF::of(ff::x_minus(f.E, 3));
    DivisorFF D;
    D.add(rational_key(f.E, 4, 0), 1);
    auto r = coset_vanishing(f.D, f.C, D, g);
    EXPECT_EQ(r.parity_weight % 2, 1);
    EXPECT_EQ(r.verdict, Verdict::VanishesAll);
}

TEST(Coset, RandomizedParitySoundness) {
    std::mt19937 rng(2024);
    int instances = 0;
    for (const auto* f : {&e5(), &e7()}) {
        std::vector<ff::PointKey> deg1;
        for (const auto& x : f->C.points)
            if (x.degree == 1) deg1.push_back(x.key);
        // characters with chi'(P0) = 1 keep every split rotation trivial
        std::vector<std::vector<long>> chis{{}};
        for (auto c : ff::characters_of_order(f->D, 2))
            if (ff::make_datum(f->E, f->D.torsion_index, c).chi.value(f->D.cover.group.log(f->D.cover.P0)) == cv(1))
                chis.push_back(c);
        for (int t = 0; t < 6; ++t) {
            auto datum = ff::make_datum(f->E, f->D.torsion_index, chis[static_cast<size_t>(t) % chis.size()], t % 3, 3);
            DivisorFF D;
            for (const auto& k : deg1)
                if (rng() % 2) D.add(k, 1);
            CosetOptions opt;
            auto r = coset_vanishing(datum, f->C, D, ff::RationalFunctionFF::one(), opt);
            EXPECT_NE(r.verdict, Verdict::Inconclusive) << D.str();
            EXPECT_TRUE(r.agrees) << D.str() << " " << verdict_name(r.verdict);
            EXPECT_EQ(r.predicted_vanishing, ff::nonsplit_weight(datum, f->C, D) % 2 != 0);
            ++instances;
        }
    }
    EXPECT_GE(instances, 12);
}
