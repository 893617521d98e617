#include <gtest/gtest.h>

#include <random>

#include "endo/hitchin/cotangent.hpp"
#include "endo/hitchin/fibers.hpp"

using namespace endo;
using namespace endo::hitchin;

namespace {

// Sylvester-matrix resultant over Q by fraction-free elimination, independent of the Euclid path
Rational sylvester_disc(const Poly<Rational>& f) {
    Poly<Rational> g = f.derivative();
    int m = f.degree(), n = g.degree(), N = m + n;
    std::vector<std::vector<Rational>> S(N, std::vector<Rational>(N, 0));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) S[r][r + k] = f.coeff(m - k);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) S[n + r][r + k] = g.coeff(n - k);
    Rational det = 1;
    for (int c = 0; c < N; ++c) {
        int p = c;
        while (p < N && S[p][c] == 0) ++p;
        if (p == N) return 0;
        if (p != c) {
            std::swap(S[p], S[c]);
            det = -det;
        }
        det *= S[c][c];
        for (int r = c + 1; r < N; ++r) {
            Rational t = S[r][c] / S[c][c];
            for (int k = c; k < N; ++k) S[r][k] -= t * S[c][k];
        }
    }
    int sgn = ((m * (m - 1) / 2) % 2) ? -1 : 1;
    return sgn * det / f.lead();
}

std::vector<CurveParams> random_curves(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
    std::vector<CurveParams> out;
    while (static_cast<int>(out.size()) < n) {
        Rational a(num(rng), den(rng)), b(num(rng), den(rng));
        if (-4 * a * a * a - 27 * b * b == 0) continue;
        out.push_back(CurveParams::make(a, b));
    }
    return out;
}

CurveParams basic() { return CurveParams::make(-1, 0); }

}  // namespace

TEST(HitchinCurve, RootsAndValidation) {
    auto C = basic();
    ASSERT_TRUE(C.exact_roots.has_value());
    EXPECT_EQ((*C.exact_roots)[0], -1);
    EXPECT_EQ((*C.exact_roots)[1], 0);
    EXPECT_EQ((*C.exact_roots)[2], 1);
    try {
        CurveParams::make(-3, 2);
        FAIL() << "repeated root accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidCurve);
    }
    EXPECT_NEAR(static_cast<double>(parse_complex("i").imag()), 1.0, 0);
    EXPECT_NEAR(static_cast<double>(parse_complex("3/2").real()), 1.5, 0);
    EXPECT_NEAR(static_cast<double>(parse_complex("-1/2-3i").imag()), -3.0, 0);
}

TEST(HitchinFibers, SingularSetAndDiscriminant) {
    auto C = basic();
    auto S = singular_fibers(C);
    EXPECT_TRUE(S.certified);
    EXPECT_EQ(S.exponents, (std::array<int, 3>{2, 2, 2}));
    // oracle: Sylvester discriminant of g_w vanishes at w = -1, 0, 1 and nowhere else on a grid
    for (int k = -4; k <= 4; ++k) {
        Rational D = sylvester_disc(fiber_quartic<Rational>(C, Rational(k)));
        if (k >= -1 && k <= 1) EXPECT_EQ(D, 0) << k;
        else EXPECT_NE(D, 0) << k;
    }
    for (const auto& [w, D] : S.samples) EXPECT_EQ(D, sylvester_disc(fiber_quartic<Rational>(C, w)));
}

TEST(HitchinFibers, RandomCurvesSplitIdentity) {
    for (const auto& C : random_curves(20, 11)) {
        auto S = singular_fibers(C);
        EXPECT_TRUE(S.certified) << C.a << " " << C.b;
        for (int i = 0; i < 3; ++i) {
            EXPECT_TRUE(split_identity(C, i));
            // numeric oracle at random u
            for (double x : {0.3, -1.7, 2.2}) {
                Complex u(x, 0.4 * x);
                Complex w = C.e[i];
                Complex g = -(2.0L * u + w) * C.f_at(u) + C.fprime_at(u) * C.fprime_at(u) / 4.0L;
                Complex q = (u - C.e[i]) * (u - C.e[i]) - (C.e[i] - C.e[(i + 1) % 3]) * (C.e[i] - C.e[(i + 2) % 3]);
                EXPECT_LT(std::abs(g - q * q / 4.0L), 1e-9L * (1 + std::abs(g)));
            }
        }
    }
}

TEST(HitchinFibers, SplitFiberExample) {
    auto C = basic();
    auto R = analyze_fiber(C, Rational(0));
    ASSERT_TRUE(R.split);
    EXPECT_TRUE(R.identity_exact);
    ASSERT_EQ(R.double_points.size(), 2u);
    std::vector<Complex> us{R.double_points[0].u, R.double_points[1].u};
    std::sort(us.begin(), us.end(), canonical_less);
    EXPECT_LT(std::abs(us[0] - Complex(0, -1)), 1e-15L);
    EXPECT_LT(std::abs(us[1] - Complex(0, 1)), 1e-15L);
    for (const auto& d : R.double_points) {
        // dP/dw = f(u) = u^3 - u, at i equals -2i
        Complex expect = d.u * d.u * d.u - d.u;
        EXPECT_LT(std::abs(d.dP_dw - expect), 1e-15L);
        EXPECT_GT(std::abs(d.dP_dw), 1.9L);
    }
    EXPECT_TRUE(R.total_space_smooth);
    auto G = analyze_fiber(C, Rational(5));
    EXPECT_FALSE(G.split);
    EXPECT_EQ(to_complex(sylvester_disc(fiber_quartic<Rational>(C, Rational(5)))), G.quartic_disc);
    auto N = analyze_fiber(C, Complex(1e-12L, 0));
    EXPECT_TRUE(N.split);
}

TEST(HitchinQAction, InvolutionsAndFixedPoints) {
    auto C = basic();
    auto T1 = q_action(C, 0);
    // u -> (1 - u)/(1 + u)
    for (double x : {0.2, 3.0, -0.5}) {
        Complex u(x, 0.1);
        EXPECT_LT(std::abs(T1.map_u(u, C) - (1.0L - u) / (1.0L + u)), 1e-15L);
        EXPECT_LT(std::abs(T1.map_u(T1.map_u(u, C), C) - u), 1e-14L);
    }
    std::vector<Complex> fx = T1.fixed_u;
    std::sort(fx.begin(), fx.end(), canonical_less);
    EXPECT_LT(std::abs(fx[0] - Complex(-1 - std::sqrt(2.0L))), 1e-15L);
    EXPECT_LT(std::abs(fx[1] - Complex(-1 + std::sqrt(2.0L))), 1e-15L);
    auto T2 = q_action(C, 1);
    EXPECT_EQ(T2.action_on_fiber[0], -1);
    for (const auto& CC : random_curves(6, 5)) {
        for (int i = 0; i < 3; ++i) {
            auto T = q_action(CC, i);
            EXPECT_TRUE(T.involution);
            EXPECT_TRUE(T.preserves_surface);
            EXPECT_TRUE(T.fixes_own_double_points);
            for (int j = 0; j < 3; ++j) {
                EXPECT_EQ(T.action_on_fiber[j], i == j ? 1 : -1);
                if (j != i) EXPECT_TRUE(T.free_on_fiber[j]);
            }
            // numeric oracle: a surface point maps to a surface point
            Complex u(0.37, -0.21), rho(0.5, 0.8);
            Complex w = (CC.fprime_at(u) * CC.fprime_at(u) / 4.0L - rho * rho) / CC.f_at(u) - 2.0L * u;
            Complex u2 = T.map_u(u, CC), r2 = T.map_rho(u, rho, CC);
            Complex P = r2 * r2 + (2.0L * u2 + w) * CC.f_at(u2) - CC.fprime_at(u2) * CC.fprime_at(u2) / 4.0L;
            EXPECT_LT(std::abs(P), 1e-9L * (1 + std::norm(r2)));
        }
    }
}

TEST(HitchinImproper, SingularAndInfinityPoints) {
    auto C = basic();
    auto R = improper_fiber(C, Complex(0));
    ASSERT_TRUE(R.singular);
    ASSERT_EQ(R.singular_points.size(), 2u);
    EXPECT_EQ(R.singular_points[0][1], Complex(1));
    EXPECT_EQ(R.singular_points[1][1], Complex(-1));
    EXPECT_EQ(R.relation[0], Complex(-1));
    EXPECT_EQ(R.relation[1], Complex(0));
    EXPECT_EQ(R.relation[2], Complex(1));
    EXPECT_TRUE(R.infinity_single_orbit);
    EXPECT_EQ(R.infinity_points.size(), 4u);
    auto G = improper_fiber(C, Complex(5));
    EXPECT_FALSE(G.singular);
    EXPECT_EQ(G.sampled, 16);
    EXPECT_GT(G.min_jacobian_minor, 1e-6L);
}

TEST(HitchinSO3, Nodes) {
    auto C = basic();
    auto R = so3_fiber(C, Complex(0));
    EXPECT_TRUE(R.node);
    EXPECT_EQ(R.double_roots, 1);
    EXPECT_LT(std::abs(R.node_t), 1e-15L);
    EXPECT_EQ(R.hessian_rank, 3);
    EXPECT_TRUE(R.coincidence_exact);
    // oracle: z^2 = -t^2 (t - 1)/4, Hessian of z^2 + t^2 (t-1)/4 in (z,t) at 0 is diag(2, -1/2)
    EXPECT_LT(std::abs(R.hessian[1][1] - Complex(-0.5L)), 1e-15L);
    auto G = so3_fiber(C, Complex(5));
    EXPECT_FALSE(G.node);
    EXPECT_EQ(G.double_roots, 0);
    for (const auto& CC : random_curves(5, 3))
        for (int i = 0; i < 3; ++i) {
            auto N = so3_fiber(CC, CC.e[i]);
            EXPECT_TRUE(N.node);
            EXPECT_EQ(N.hessian_rank, 3);
        }
}

TEST(HitchinCotangent, BasicExample) {
    auto C = basic();
    auto M = cotangent_model(C, Complex(0.3L, 0.1L));
    EXPECT_TRUE(M.b_is_minus_dA);
    // A = -(z^4 + 6 z^2 + 1)
    EXPECT_EQ(M.A, (Poly<Complex>{-1, 0, -6, 0, -1}));
    // oracle: z^2 = -3 +- 2 sqrt 2 by radicals
    std::vector<Complex> expect;
    for (Real s : {1.0L, -1.0L})
        for (Real sq : {-3 + 2 * std::sqrt(2.0L), -3 - 2 * std::sqrt(2.0L)}) expect.push_back(s * Complex(0, std::sqrt(-sq)));
    for (const auto& z : M.zeros) {
        Real best = 1;
        for (const auto& x : expect) best = std::min(best, std::abs(z - x));
        EXPECT_LT(best, 1e-12L);
    }
    EXPECT_LT(M.zero_match, 1e-9L);
    for (const auto& r : M.residues) {
        EXPECT_LT(std::abs(r[0] - Complex(1)), 1e-8L);
        EXPECT_LT(std::abs(r[1]), 1e-8L);
    }
    EXPECT_LT(std::abs(M.total_residue - Complex(4)), 1e-8L);
    EXPECT_LT(std::abs(M.nilpotent_direction[1] - Complex(0, std::sqrt(2.0L))), 1e-15L);
    EXPECT_LT(std::abs(M.nilpotent_direction[2] - Complex(1)), 1e-15L);
    EXPECT_EQ(M.monodromy[0][0], Complex(1));
}

TEST(HitchinCotangent, RandomCurvesAndSigma) {
    for (const auto& C0 : random_curves(8, 21))
        for (Complex s0 : {Complex(1), Complex(1.5L), Complex(0, 1)}) {
            auto C = CurveParams::make(C0.a, C0.b, s0);
            auto M = cotangent_model(C, Complex(0.7L, -0.2L));
            EXPECT_TRUE(M.b_is_minus_dA);
            EXPECT_LT(M.zero_match, 1e-9L);
            for (const auto& r : M.residues) EXPECT_LT(std::abs(r[0] - s0), 1e-8L);
            EXPECT_LT(std::abs(M.total_residue - 4.0L * s0), 1e-8L);
        }
}

TEST(HitchinIsomorphism, BasicAndRandom) {
    auto C = basic();
    auto R = component_isomorphism(C);
    EXPECT_EQ(R.infinite_images, 1);
    EXPECT_LT(R.zero_image_error, 1e-9L);
    EXPECT_EQ(R.samples, 100);
    EXPECT_LT(R.max_plug_residual, 1e-9L);
    EXPECT_LT(R.max_quadric_residual, 1e-9L);
    EXPECT_LT(R.max_omega_error, 1e-9L);
    for (const auto& CC : random_curves(5, 8)) {
        auto Q = component_isomorphism(CC, 30);
        EXPECT_LT(Q.zero_image_error, 1e-9L) << CC.a << " " << CC.b;
        EXPECT_LT(Q.max_plug_residual, 1e-9L);
        EXPECT_LT(Q.max_omega_error, 1e-9L);
    }
}
