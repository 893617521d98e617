#include <gtest/gtest.h>

#include <random>

#include "endo/hecke/splice.hpp"

using namespace endo;
using namespace endo::hecke;

namespace {

CyclotomicValue cv(int k) { return CyclotomicValue(k); }

std::vector<FiniteGroupData> fixtures() {
    return {abelian_group({2}), abelian_group({2, 2}), abelian_group({4}), s3_group(), abelian_group({})};
}

// right multiplication by h on the regular representation commutes with the left action
CMat right_mult(const FiniteGroupData& G, int h) {
    const size_t n = G.order();
    CMat M(n, n);
    for (size_t g = 0; g < n; ++g) M(static_cast<size_t>(G.mul[g][static_cast<size_t>(h)]), g) = cv(1);
    return M;
}

// Tr(L_gamma R_h) = #{g : gamma g h = g}
long fixed_count(const FiniteGroupData& G, int gamma, int h) {
    long c = 0;
    for (size_t g = 0; g < G.order(); ++g)
        if (G.mul[static_cast<size_t>(G.mul[static_cast<size_t>(gamma)][g])][static_cast<size_t>(h)] == static_cast<int>(g)) ++c;
    return c;
}

}  // namespace

TEST(Groups, CharacterTablesAreValid) {
    for (const auto& G : fixtures()) {
        auto chk = validate(G);
        EXPECT_TRUE(chk.ok()) << G.name;
        long s = 0;
        for (size_t R = 0; R < G.num_irreps(); ++R) s += G.dim(R) * G.dim(R);
        EXPECT_EQ(s, static_cast<long>(G.order())) << G.name;
    }
    auto S3 = s3_group();
    ASSERT_EQ(S3.num_classes(), 3u);
    EXPECT_EQ(S3.class_size(0), 1);
    EXPECT_EQ(S3.class_size(1), 3);
    EXPECT_EQ(S3.class_size(2), 2);
    EXPECT_TRUE(S3.chi[2][1] == cv(0));
    EXPECT_TRUE(S3.chi[2][2] == cv(-1));
    EXPECT_FALSE(S3.abelian);
}

TEST(Isotypic, AdjointZ2Blocks) {
    auto G = abelian_group({2});
    auto gamma = z2_adjoint_gamma();
    for (int k = 0; k < 8; ++k) {
        ff::FrobeniusClass F;
        F.r = CyclotomicValue::root(k, 8);
        auto D = isotypic_decompose(G, gamma, ff::adjoint_model(ff::o2_matrix(F)));
        EXPECT_TRUE(D.idempotent && D.sum_identity && D.dims_ok && D.traces_ok);
        EXPECT_EQ(D.blocks[0].mult_dim, 1);
        EXPECT_EQ(D.blocks[1].mult_dim, 2);
        EXPECT_TRUE(D.blocks[0].a == cv(1));
        EXPECT_TRUE(D.blocks[1].a == F.r + F.r.inv());
    }
    ff::FrobeniusClass N;
    N.split = false;
    auto D = isotypic_decompose(G, gamma, ff::adjoint_model(ff::o2_matrix(N)));
    EXPECT_TRUE(D.blocks[0].a == cv(-1));
    EXPECT_TRUE(D.blocks[1].a == cv(0));
}

TEST(Isotypic, S3RegularAndTrivial) {
    auto G = s3_group();
    auto D = isotypic_decompose(G, regular_rep(G), CMat::identity(6));
    EXPECT_TRUE(D.idempotent && D.sum_identity && D.dims_ok && D.traces_ok);
    for (size_t R = 0; R < 3; ++R) {
        EXPECT_EQ(D.blocks[R].mult_dim, G.dim(R));
        EXPECT_TRUE(D.blocks[R].a == cv(static_cast<int>(G.dim(R))));
    }
    auto T = abelian_group({});
    auto Dt = isotypic_decompose(T, {CMat::identity(1)}, CMat::identity(1));
    ASSERT_EQ(Dt.blocks.size(), 1u);
    EXPECT_TRUE(Dt.blocks[0].a == cv(1));
}

TEST(Isotypic, NonCommutingRejected) {
    auto G = abelian_group({2});
    CMat sigma{{cv(1), cv(0), cv(0)}, {cv(0), cv(0), cv(1)}, {cv(1), cv(0), cv(0)}};
    sigma(0, 0) = cv(0);
    sigma(1, 0) = cv(1);
    try {
        isotypic_decompose(G, z2_adjoint_gamma(), sigma);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidDatum);
        EXPECT_NE(std::string(e.what()).find("gamma"), std::string::npos);
    }
}

TEST(Hecke, Z2Matrices) {
    EigenSystem S(abelian_group({2}));
    ff::FrobeniusClass split, nonsplit;
    nonsplit.split = false;
    S.add_point("split", isotypic_decompose(S.G, z2_adjoint_gamma(), ff::adjoint_model(ff::o2_matrix(split))));
    S.add_point("nonsplit", isotypic_decompose(S.G, z2_adjoint_gamma(), ff::adjoint_model(ff::o2_matrix(nonsplit))));
    EXPECT_TRUE(hecke_matrix(S, "split") == (CMat{{cv(1), cv(2)}, {cv(2), cv(1)}}));
    EXPECT_TRUE(hecke_matrix(S, "nonsplit") == (CMat{{cv(-1), cv(0)}, {cv(0), cv(-1)}}));
    auto F = fourier_diagonalize(S, "split");
    EXPECT_TRUE(F.eigenvalues[0] == cv(3));
    EXPECT_TRUE(F.eigenvalues[1] == cv(-1));
    EXPECT_TRUE(F.eigenvectors[0][0] == cv(1) && F.eigenvectors[0][1] == cv(1));
    EXPECT_TRUE(F.eigenvectors[1][0] == cv(1) && F.eigenvectors[1][1] == cv(-1));
    auto I = inverse_fourier(S);
    EXPECT_TRUE(I.round_trip);
    EXPECT_TRUE(I.inverse(0, 0) == CyclotomicValue(Rational(1, 2)) && I.inverse(0, 1) == CyclotomicValue(Rational(1, 2)));
    EXPECT_THROW(hecke_matrix(S, "missing"), Error);
}

TEST(Hecke, S3Regular) {
    EigenSystem S(s3_group());
    S.add_point("x", isotypic_decompose(S.G, regular_rep(S.G), CMat::identity(6)));
    auto T = hecke_matrix(S, "x");
    // regular (x) R = dim R copies of the regular representation
    for (size_t R = 0; R < 3; ++R)
        for (size_t Rpp = 0; Rpp < 3; ++Rpp)
            EXPECT_TRUE(T(Rpp, R) == cv(static_cast<int>(S.G.dim(R) * S.G.dim(Rpp))));
    auto F = fourier_diagonalize(S, "x");
    EXPECT_TRUE(F.twisted_ok);
    EXPECT_TRUE(F.eigenvalues[0] == cv(6));
    EXPECT_TRUE(F.eigenvalues[1] == cv(0));
    EXPECT_TRUE(F.eigenvalues[2] == cv(0));
    EXPECT_TRUE(inverse_fourier(S).round_trip);
}

TEST(Fourier, TwistedTraceOnAllFixtures) {
    for (const auto& G : fixtures()) {
        EigenSystem S(G);
        for (size_t h = 0; h < G.order(); ++h) {
            const std::string x = "h" + std::to_string(h);
            S.add_point(x, isotypic_decompose(G, regular_rep(G), right_mult(G, static_cast<int>(h))));
            auto F = fourier_diagonalize(S, x);
            EXPECT_TRUE(F.eigen_ok && F.twisted_ok) << G.name << " " << x;
            for (size_t c = 0; c < G.num_classes(); ++c)
                EXPECT_TRUE(F.eigenvalues[c] == cv(static_cast<int>(fixed_count(G, G.classes[c][0], static_cast<int>(h)))))
                    << G.name << " " << x << " " << F.classes[c];
        }
        EXPECT_TRUE(inverse_fourier(S).round_trip) << G.name;
    }
}

TEST(Fourier, DiscreteRoundTrip) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> U(-9, 9);
    for (long d : {1, 2, 3, 6, 8}) {
        std::vector<CyclotomicValue> v;
        for (long j = 0; j < d; ++j) v.push_back(cv(U(rng)) + cv(U(rng)) * CyclotomicValue::root(1, 3));
        auto back = inverse_discrete_fourier(discrete_fourier(v));
        for (long j = 0; j < d; ++j) EXPECT_TRUE(back[static_cast<size_t>(j)] == v[static_cast<size_t>(j)]);
    }
}

TEST(ToyModel, Census) {
    auto C = z2_toy_model(2);
    ASSERT_EQ(C.objects.size(), 2u);
    EXPECT_EQ(C.iso_classes, 1);
    auto t = toy_act({0, 0}, {1, 0}, 2);  // (lambda_+, lambda_-) = (-1, 1)
    EXPECT_EQ(t.plus, 1);
    EXPECT_EQ(t.minus, 1);
    EXPECT_TRUE(C.swap_bookkeeping);
    EXPECT_TRUE(C.swap_involution);
    EXPECT_EQ(C.equivariant_classes, 2);
    for (long n : {4, 6, 64}) {
        auto c = z2_toy_model(n);
        EXPECT_EQ(c.iso_classes, 1);
        EXPECT_EQ(c.equivariant_classes, 2);
        for (size_t i = 0; i < c.objects.size(); ++i) {
            auto w = toy_act({0, 0}, c.witness[i], n);
            EXPECT_EQ(w.plus, c.objects[i].plus);
        }
    }
    for (long n : {3, 5, 66}) {
        try {
            z2_toy_model(n);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::InvalidModel);
        }
    }
}

TEST(Splice, FunctionFieldStream) {
    auto E = ff::WCurve::short_form(ff::Tower(5, 1), -1, 0);
    auto C = ff::enumerate_closed_points(E, 4);
    std::vector<ff::EndoscopicDatum> data{ff::make_datum(E, 1)};
    auto chis = ff::characters_of_order(data[0], 2);
    ASSERT_FALSE(chis.empty());
    data.push_back(ff::make_datum(E, 1, chis.back(), 1, 3));
    for (const auto& D : data) {
        auto rows = z2_splice(D, C, 4);
        EXPECT_EQ(rows.size(), C.points.size());
        for (const auto& r : rows) {
            EXPECT_TRUE(r.ok) << r.key.str();
            EXPECT_TRUE(r.sigma_prime_trace == r.a + CyclotomicValue(r.degree % 2 ? -1 : 1) * r.b) << r.key.str();
        }
    }
}
