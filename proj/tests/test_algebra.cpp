#include <gtest/gtest.h>

#include <random>
#include <set>

#include "endo/algebra/abelian_group.hpp"
#include "endo/algebra/cyclotomic.hpp"
#include "endo/algebra/ff_poly.hpp"
#include "endo/algebra/finite_field.hpp"
#include "endo/algebra/matrix.hpp"
#include "endo/algebra/poly.hpp"
#include "endo/algebra/roots.hpp"

using namespace endo;

namespace {

using QPoly = Poly<Rational>;

QPoly qp(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return QPoly(v);
}

// determinant by Gaussian elimination over Q
Rational det(std::vector<std::vector<Rational>> m) {
    const size_t n = m.size();
    Rational d = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            Rational f = m[r][c] / m[c][c];
            for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return d;
}

Rational sylvester_resultant(const QPoly& a, const QPoly& b) {
    const int m = a.degree(), n = b.degree();
    const size_t N = static_cast<size_t>(m + n);
    std::vector<std::vector<Rational>> S(N, std::vector<Rational>(N, 0));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) S[static_cast<size_t>(r)][static_cast<size_t>(r + i)] = a.coeff(m - i);
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) S[static_cast<size_t>(n + r)][static_cast<size_t>(r + i)] = b.coeff(n - i);
    return det(S);
}

Rational sylvester_disc(const QPoly& f) {
    int n = f.degree();
    Rational s = ((n * (n - 1) / 2) % 2) ? -1 : 1;
    return s * sylvester_resultant(f, f.derivative()) / f.lead();
}

}  // namespace

TEST(Discriminant, Examples) {
    EXPECT_EQ(discriminant(qp({0, -1, 0, 1})), Rational(4));
    EXPECT_EQ(sylvester_disc(qp({0, -1, 0, 1})), Rational(4));
    EXPECT_EQ(discriminant(qp({-1, 0, 1})), Rational(4));
    EXPECT_EQ(discriminant(qp({1, -2, 1})), Rational(0));
    EXPECT_THROW(discriminant(QPoly()), Error);
}

TEST(Discriminant, MatchesSylvesterAndGcd) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-5, 5), deg(1, 6), coin(0, 2);
    for (int trial = 0; trial < 60; ++trial) {
        QPoly f;
        if (coin(rng) == 0) {
            // force a repeated factor
            QPoly g = qp({coef(rng), 1});
            QPoly h = qp({coef(rng), coef(rng), 1});
            f = g * g * h;
        } else {
            std::vector<Rational> c;
            int d = deg(rng);
            for (int i = 0; i < d; ++i) c.emplace_back(coef(rng));
            c.emplace_back(1);
            f = QPoly(c);
        }
        Rational d = discriminant(f);
        EXPECT_EQ(d, sylvester_disc(f));
        bool repeated = gcd(f, f.derivative()).degree() > 0;
        EXPECT_EQ(d == 0, repeated);
    }
}

TEST(ComplexRoots, Examples) {
    auto r = poly_roots_complex(qp({1, 0, 1}));
    ASSERT_EQ(r.size(), 2u);
    EXPECT_NEAR(static_cast<double>(std::abs(r[0] - Complex(0, -1))), 0, 1e-15);
    EXPECT_NEAR(static_cast<double>(std::abs(r[1] - Complex(0, 1))), 0, 1e-15);

    auto c = poly_roots_complex(qp({0, -1, 0, 1}));
    ASSERT_EQ(c.size(), 3u);
    EXPECT_NEAR(static_cast<double>(c[0].real()), -1, 1e-15);
    EXPECT_NEAR(static_cast<double>(std::abs(c[1])), 0, 1e-15);
    EXPECT_NEAR(static_cast<double>(c[2].real()), 1, 1e-15);

    // biquadratic by radicals: z^2 = -3 +- 2 sqrt 2
    auto q = poly_roots_complex(qp({1, 0, 6, 0, 1}));
    const Real s2 = std::sqrt(2.0L);
    std::vector<Complex> expect{{0, s2 + 1}, {0, -(s2 + 1)}, {0, s2 - 1}, {0, -(s2 - 1)}};
    for (const auto& e : expect) {
        Real best = 1;
        for (const auto& z : q) best = std::min(best, std::abs(z - e));
        EXPECT_LT(static_cast<double>(best), 1e-12);
    }
}

TEST(ComplexRoots, RandomResiduals) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-10, 10);
    std::uniform_int_distribution<int> deg(1, 8);
    for (int trial = 0; trial < 200; ++trial) {
        int d = deg(rng);
        std::vector<Complex> c;
        Real mx = 0;
        for (int i = 0; i <= d; ++i) {
            c.emplace_back(u(rng), u(rng));
            mx = std::max(mx, std::abs(c.back()));
        }
        Poly<Complex> f(c);
        auto roots = poly_roots_complex(f);
        ASSERT_EQ(static_cast<int>(roots.size()), f.degree());
        for (const auto& r : roots) EXPECT_LE(static_cast<double>(std::abs(f.eval(r))), 1e-10 * (1 + static_cast<double>(mx)));
        auto again = poly_roots_complex(f);
        EXPECT_EQ(roots, again);
    }
}

TEST(FiniteFieldTest, Basics) {
    auto F5 = FiniteField::get(5, 1);
    EXPECT_TRUE((F5.from_int(2) * F5.from_int(3)).is_one());

    auto F25 = FiniteField::get(5, 2);
    EXPECT_EQ(F25.size(), 25u);
    std::mt19937 rng(3);
    for (int i = 0; i < 5; ++i) {
        auto x = F25.element(1 + rng() % 24);
        EXPECT_TRUE(x.pow(24).is_one());
    }

    auto F8 = FiniteField::get(2, 3);
    for (auto x : F8.elements()) EXPECT_EQ(x.frobenius().frobenius().frobenius(), x);

    EXPECT_THROW(FiniteField::get(6, 1), Error);
    EXPECT_THROW(FiniteField::get(5, 9), Error);
}

TEST(FiniteFieldTest, ModulusIsIrreducibleByRootSearch) {
    // no roots of the degree-2 and degree-3 moduli in the prime field
    for (auto [p, m] : std::vector<std::pair<int, int>>{{3, 2}, {5, 2}, {7, 3}, {2, 4}}) {
        auto F = FiniteField::get(p, m);
        const auto& g = F.modulus();
        ASSERT_EQ(g.size(), static_cast<size_t>(m) + 1);
        EXPECT_EQ(g.back(), 1u);
        for (int x = 0; x < p; ++x) {
            long v = 0;
            for (int i = m; i >= 0; --i) v = (v * x + g[static_cast<size_t>(i)]) % p;
            EXPECT_NE(v, 0);
        }
    }
}

TEST(FiniteFieldTest, FieldAxioms) {
    std::mt19937 rng(5);
    for (auto [p, m] : std::vector<std::pair<int, int>>{{5, 1}, {5, 2}, {3, 3}, {7, 2}, {2, 5}}) {
        auto F = FiniteField::get(p, m);
        for (int i = 0; i < 100; ++i) {
            auto a = F.element(rng() % F.size()), b = F.element(rng() % F.size()), c = F.element(rng() % F.size());
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ((a + b) + c, a + (b + c));
            EXPECT_EQ(a * (b + c), a * b + a * c);
            EXPECT_TRUE((a - a).is_zero());
            if (!a.is_zero()) EXPECT_TRUE((a * a.inv()).is_one());
        }
    }
}

TEST(FiniteFieldTest, QuadraticSymbol) {
    auto F5 = FiniteField::get(5, 1);
    std::set<uint32_t> squares;
    for (auto x : F5.elements())
        if (!x.is_zero()) squares.insert((x * x).code());
    for (auto x : F5.elements()) {
        int expect = x.is_zero() ? 0 : (squares.count(x.code()) ? 1 : -1);
        EXPECT_EQ(quadratic_symbol(x), expect);
    }
    EXPECT_EQ(quadratic_symbol(F5.from_int(4)), 1);
    EXPECT_EQ(quadratic_symbol(F5.from_int(2)), -1);
    EXPECT_EQ(quadratic_symbol(F5.from_int(0)), 0);
    EXPECT_THROW(quadratic_symbol(FiniteField::get(2, 2).one()), Error);

    auto F49 = FiniteField::get(7, 2);
    std::set<uint32_t> sq49;
    for (auto x : F49.elements())
        if (!x.is_zero()) sq49.insert((x * x).code());
    EXPECT_EQ(sq49.size(), 24u);
    for (auto x : F49.elements()) {
        if (x.is_zero()) continue;
        EXPECT_EQ(quadratic_symbol(x), sq49.count(x.code()) ? 1 : -1);
        FFElement r;
        EXPECT_EQ(ff_sqrt(x, r), sq49.count(x.code()) > 0);
        if (sq49.count(x.code())) EXPECT_EQ(r * r, x);
    }
}

TEST(FiniteFieldTest, RootsAndEmbeddings) {
    auto F5 = FiniteField::get(5, 1);
    auto F25 = FiniteField::get(5, 2);
    FFPoly g{F5.one(), F5.zero(), F5.zero(), F5.one()};  // x^3 + 1
    auto r5 = roots_in(g, F5);
    ASSERT_EQ(r5.size(), 1u);  // x = 4
    EXPECT_EQ(r5[0].first.code(), 4u);
    auto r25 = roots_in(g, F25);
    EXPECT_EQ(r25.size(), 3u);
    for (auto& [r, mult] : r25) {
        EXPECT_EQ(mult, 1);
        EXPECT_TRUE((r * r * r + F25.one()).is_zero());
    }
    FFPoly sq{F5.from_int(4), F5.from_int(4), F5.one()};  // (x+2)^2
    auto rr = roots_in(sq, F5);
    ASSERT_EQ(rr.size(), 1u);
    EXPECT_EQ(rr[0].second, 2);

    auto F625 = FiniteField::get(5, 4);
    auto e = FieldEmbedding::make(F25, F625);
    for (auto a : F25.elements())
        for (uint32_t k = 0; k < 25; k += 7) {
            auto b = F25.element(k);
            EXPECT_EQ(e(a * b), e(a) * e(b));
            EXPECT_EQ(e(a + b), e(a) + e(b));
        }
    for (auto a : F25.elements()) EXPECT_EQ(e.preimage(e(a)), a);
}

TEST(Cyclotomic, Arithmetic) {
    auto i = CyclotomicValue::root(1, 4);
    EXPECT_EQ(i * i, CyclotomicValue(-1));
    auto w = CyclotomicValue::root(1, 3);
    EXPECT_TRUE((CyclotomicValue(1) + w + w * w).is_zero());
    EXPECT_EQ(w.conj(), w * w);
    auto x = CyclotomicValue(2) + w;
    EXPECT_EQ(x * x.inv(), CyclotomicValue(1));
    // zeta_6 lifted against zeta_4 products
    auto z6 = CyclotomicValue::root(1, 6);
    EXPECT_EQ(z6.pow(6), CyclotomicValue(1));
    EXPECT_EQ(z6 * i, CyclotomicValue::root(5, 12));
    EXPECT_EQ(CyclotomicValue::root(3, 12), i);
    auto b = CyclotomicValue::root(1, 5) + CyclotomicValue::root(4, 5);
    EXPECT_EQ(b, b.conj());
    EXPECT_NEAR(static_cast<double>(b.to_complex().real()), 2 * std::cos(2 * M_PI / 5), 1e-15);
    EXPECT_THROW(CyclotomicValue(0).inv(), Error);
}

TEST(Characters, Examples) {
    auto Z2 = FiniteAbelianGroup::from_orders({2});
    auto ch = group_characters(Z2);
    ASSERT_EQ(ch.size(), 2u);
    EXPECT_TRUE(ch[0].is_trivial());
    EXPECT_EQ(ch[1].value({1}), CyclotomicValue(-1));

    auto T = FiniteAbelianGroup::from_orders({});
    EXPECT_EQ(group_characters(T).size(), 1u);

    auto G = FiniteAbelianGroup::from_orders({4, 2});
    EXPECT_EQ(G.invariant_factors(), (std::vector<long>{2, 4}));
    auto cg = group_characters(G);
    ASSERT_EQ(cg.size(), 8u);
    for (size_t a = 0; a < cg.size(); ++a)
        for (size_t b = 0; b < cg.size(); ++b) EXPECT_EQ(character_inner(cg[a], cg[b]), CyclotomicValue(a == b ? 1 : 0));
    EXPECT_EQ(FiniteAbelianGroup::from_orders({2, 3}).invariant_factors(), (std::vector<long>{6}));
}

TEST(Characters, OrthogonalityAllSmallGroups) {
    // every invariant-factor chain with order <= 64
    std::vector<std::vector<long>> chains;
    std::function<void(std::vector<long>, long)> rec = [&](std::vector<long> cur, long ord) {
        chains.push_back(cur);
        long last = cur.empty() ? 2 : cur.back();
        for (long d = last; ord * d <= 64; d += (cur.empty() ? 1 : last))
            if (cur.empty() || d % last == 0) {
                auto nxt = cur;
                nxt.push_back(d);
                rec(nxt, ord * d);
            }
    };
    rec({}, 1);
    EXPECT_GT(chains.size(), 60u);
    for (const auto& c : chains) {
        auto G = FiniteAbelianGroup::from_orders(c);
        auto chars = group_characters(G);
        ASSERT_EQ(static_cast<long>(chars.size()), G.order());
        for (size_t a = 0; a < chars.size(); ++a)
            for (size_t b = 0; b < chars.size(); ++b)
                ASSERT_EQ(character_inner(chars[a], chars[b]), CyclotomicValue(a == b ? 1 : 0));
        // homomorphism on all pairs for small groups
        if (G.order() <= 16)
            for (const auto& chi : chars)
                for (const auto& g : G.elements())
                    for (const auto& h : G.elements()) ASSERT_EQ(chi.value(G.add(g, h)), chi.value(g) * chi.value(h));
    }
}

TEST(MatrixTest, Products) {
    Matrix<long> A{{1, 2}, {2, 1}};
    Matrix<long> B = A * A;
    EXPECT_EQ(B, (Matrix<long>{{5, 4}, {4, 5}}));
    EXPECT_EQ(A.trace(), 2);
}
