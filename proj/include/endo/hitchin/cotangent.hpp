#pragma once

#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "endo/hitchin/curve.hpp"

namespace endo::hitchin {

/// Principal branch (Re >= 0, ties toward Im >= 0) for every square root below.
inline const char* kSqrtConvention = "principal square root: Re >= 0, ties toward Im >= 0";

/// A(z) v~^2 + B(z) v~ + C(z) = 0 on the improper component.
template <class K>
struct CotangentPolys {
    Poly<K> A, B, C;
};

template <class K>
CotangentPolys<K> cotangent_polys(const K& e1, const K& e2, const K& e3, const K& w) {
    K d = e2 - e3;
    CotangentPolys<K> P;
    P.A = Poly<K>{d, K(0), K(4) * e1 - K(2) * e2 - K(2) * e3, K(0), d};
    P.B = Poly<K>{K(-4)} * Poly<K>{K(0), K(1)} * Poly<K>{K(2) * e1 - e2 - e3, K(0), d};
    P.C = K(4) * Poly<K>{e1 - w, K(0), d};
    return P;
}

struct CotangentModel {
    Complex w;
    Poly<Complex> A, B, C;
    bool b_is_minus_dA = false;          // exact, in the splitting algebra with symbolic w
    std::vector<Complex> zeros;          // zeros of A
    std::vector<Complex> predicted;      // +-sqrt((e2-e1)/(e2-e3)) +- sqrt((e3-e1)/(e2-e3))
    Real zero_match = 0;                 // max distance after matching
    std::vector<std::array<Complex, 2>> residues;  // (polar, regular) residues of v = sigma0 v~
    Complex total_residue;               // sum over poles and branches
    std::array<std::array<Complex, 2>, 2> monodromy{};  // diag(exp(-2 pi rho0), 1)
    std::array<Complex, 3> nilpotent_direction{};       // a with sum a^2 = sum e a^2 = 0, a1 = 1
    Real nilpotent_residual = 0;
    bool degenerate = false;             // A and C share a root
    std::string sqrt_convention = kSqrtConvention;
    std::string borel_choice = "the eigenvalue +sigma0 is attached to the polar branch";
};

inline bool cotangent_b_identity(const CurveParams& Cv) {
    // symbolic w: the w-dependence only enters C, so B + A' is checked with w = 0
    auto P = cotangent_polys<SplitElem>(SplitElem::root(Cv, 0), SplitElem::root(Cv, 1), SplitElem::root(Cv, 2), SplitElem(0));
    return (P.B + P.A.derivative()).is_zero();
}

/// Residue of the chosen branch at z0 from 8 samples on |z - z0| = radius: mean of v (z - z0).
template <class Branch>
Complex circle_residue(Branch&& v, Complex z0, Real radius = 1e-3L) {
    const Real pi = std::acos(-1.0L);
    Complex acc = 0;
    for (int k = 0; k < 8; ++k) {
        Complex dz = std::polar(radius, 2 * pi * k / 8 + 0.1L);
        acc += v(z0 + dz) * dz;
    }
    return acc / 8.0L;
}

inline CotangentModel cotangent_model(const CurveParams& Cv, Complex w, Real rho0 = 0) {
    CotangentModel M;
    M.w = w;
    const auto& e = Cv.e;
    auto P = cotangent_polys<Complex>(e[0], e[1], e[2], w);
    M.A = P.A;
    M.B = P.B;
    M.C = P.C;
    M.b_is_minus_dA = cotangent_b_identity(Cv);

    M.zeros = poly_roots_complex(M.A);
    Complex r1 = csqrt((e[1] - e[0]) / (e[1] - e[2])), r2 = csqrt((e[2] - e[0]) / (e[1] - e[2]));
    for (int s1 : {1, -1})
        for (int s2 : {1, -1}) M.predicted.push_back(Real(s1) * r1 + Real(s2) * r2);
    {
        std::vector<bool> used(4, false);
        for (const auto& z : M.zeros) {
            int best = -1;
            Real bd = 0;
            for (int k = 0; k < 4; ++k)
                if (!used[k] && (best < 0 || std::abs(z - M.predicted[k]) < bd)) {
                    best = k;
                    bd = std::abs(z - M.predicted[k]);
                }
            used[best] = true;
            M.zero_match = std::max(M.zero_match, bd);
        }
    }

    const Complex s0 = Cv.sigma0;
    M.total_residue = 0;
    for (const auto& zs : M.zeros) {
        auto roots = [&](Complex z) {
            Complex a = M.A.eval(z), b = M.B.eval(z), c = M.C.eval(z);
            Complex sq = std::sqrt(b * b - 4.0L * a * c);
            Complex v1 = (-b + sq) / (2.0L * a), v2 = (-b - sq) / (2.0L * a);
            return std::abs(v1) >= std::abs(v2) ? std::array<Complex, 2>{v1, v2} : std::array<Complex, 2>{v2, v1};
        };
        Complex polar = circle_residue([&](Complex z) { return s0 * roots(z)[0]; }, zs);
        Complex regular = circle_residue([&](Complex z) { return s0 * roots(z)[1]; }, zs);
        M.residues.push_back({polar, regular});
        M.total_residue += polar + regular;
        if (std::abs(M.C.eval(zs)) <= 1e-9L * poly_scale(M.C, zs)) M.degenerate = true;
    }

    const Real pi = std::acos(-1.0L);
    M.monodromy = {{{Complex(std::exp(-2 * pi * rho0)), Complex(0)}, {Complex(0), Complex(1)}}};

    Complex q2 = (e[2] - e[0]) / (e[1] - e[2]), q3 = (e[0] - e[1]) / (e[1] - e[2]);
    M.nilpotent_direction = {Complex(1), csqrt(q2), csqrt(q3)};
    Complex n1 = 0, n2 = 0;
    for (int i = 0; i < 3; ++i) {
        n1 += M.nilpotent_direction[i] * M.nilpotent_direction[i];
        n2 += e[i] * M.nilpotent_direction[i] * M.nilpotent_direction[i];
    }
    M.nilpotent_residual = std::max(std::abs(n1), std::abs(n2));
    return M;
}

// ---------------------------------------------------------------- component isomorphism

/// u(z) = (e2 s31 + e3 s21 + (e1 - s31 s21) s23 z)/(s31 + s21 + s23 z), s_xy = sqrt(e_x - e_y)
struct ComponentMap {
    CurveParams curve;
    Complex ma, mb, mc, md;  // u = (ma z + mb)/(mc z + md)

    explicit ComponentMap(const CurveParams& C) : curve(C) {
        const auto& e = C.e;
        Complex s31 = csqrt(e[2] - e[0]), s21 = csqrt(e[1] - e[0]), s23 = csqrt(e[1] - e[2]);
        ma = (e[0] - s31 * s21) * s23;
        mb = e[1] * s31 + e[2] * s21;
        mc = s23;
        md = s31 + s21;
    }

    Complex u_of_z(Complex z) const { return (ma * z + mb) / (mc * z + md); }
    Complex z_of_u(Complex u) const { return (md * u - mb) / (-mc * u + ma); }
    Complex du_dz(Complex z) const {
        Complex d = mc * z + md;
        return (ma * md - mb * mc) / (d * d);
    }

    Complex A(Complex z) const {
        const auto& e = curve.e;
        return (e[1] - e[2]) * z * z * z * z + (4.0L * e[0] - 2.0L * e[1] - 2.0L * e[2]) * z * z + (e[1] - e[2]);
    }
    Complex dA(Complex z) const {
        const auto& e = curve.e;
        return 4.0L * (e[1] - e[2]) * z * z * z + 2.0L * (4.0L * e[0] - 2.0L * e[1] - 2.0L * e[2]) * z;
    }

    /// v~ = -(rho du/dz / f(u) - A'/(2A)); the overall sign is the one that lands on the quadric.
    struct Image {
        Complex z, vt, b1, b2, b3;
    };
    Image map(Complex u, Complex rho) const {
        Image I;
        I.z = z_of_u(u);
        I.vt = -(rho * du_dz(I.z) / curve.f_at(u) - dA(I.z) / (2.0L * A(I.z)));
        const Complex z = I.z, v = I.vt;
        const Complex i(0, 1);
        I.b1 = 1.0L - z * v;
        I.b2 = (z * (2.0L - z * v) + v) / 2.0L;
        I.b3 = (z * (2.0L - z * v) - v) / (2.0L * i);
        return I;
    }
};

struct IsomorphismReport {
    std::vector<Complex> zero_images;   // u(z*) for the zeros of A (infinity reported as inf)
    Real zero_image_error = 0;          // distance of the finite images to {e_i}
    int infinite_images = 0;
    int samples = 0;
    Real max_plug_residual = 0;         // |A v^2 + B v + C| / (|A||v|^2 + |B||v| + |C|)
    Real max_quadric_residual = 0;      // sum b^2 = 1 and sum e b^2 = w, relative
    Real max_omega_error = 0;           // |i s0 J / b3 - s0 / f(u)| / |s0 / f(u)|
    bool w_preserved = true;
    std::string sqrt_convention = kSqrtConvention;
};

inline IsomorphismReport component_isomorphism(const CurveParams& Cv, int samples = 100, unsigned seed = 2024) {
    IsomorphismReport R;
    ComponentMap Mp(Cv);
    const auto& e = Cv.e;
    auto zeros = poly_roots_complex(cotangent_polys<Complex>(e[0], e[1], e[2], Complex(0)).A);
    std::vector<bool> hit(3, false);
    for (const auto& z : zeros) {
        Complex den = Mp.mc * z + Mp.md;
        if (std::abs(den) <= 1e-9L * (std::abs(Mp.mc * z) + std::abs(Mp.md))) {
            ++R.infinite_images;
            R.zero_images.emplace_back(std::numeric_limits<Real>::infinity(), 0);
            continue;
        }
        Complex u = Mp.u_of_z(z);
        R.zero_images.push_back(u);
        Real best = std::numeric_limits<Real>::infinity();
        int bi = 0;
        for (int i = 0; i < 3; ++i)
            if (std::abs(u - e[i]) < best) {
                best = std::abs(u - e[i]);
                bi = i;
            }
        hit[bi] = true;
        R.zero_image_error = std::max(R.zero_image_error, best);
    }
    if (!(hit[0] && hit[1] && hit[2] && R.infinite_images == 1)) R.zero_image_error = std::numeric_limits<Real>::infinity();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    const Complex s0 = Cv.sigma0, i(0, 1);
    int attempts = 0;
    while (R.samples < samples) {
        require(++attempts < 100 * samples, ErrorKind::NumericFailure, "could not sample regular surface points");
        Complex u(U(rng), U(rng)), rho(U(rng), U(rng));
        Complex fu = Cv.f_at(u), fpu = Cv.fprime_at(u);
        if (std::abs(fu) < 0.1L) continue;
        Complex w = (fpu * fpu / 4.0L - rho * rho) / fu - 2.0L * u;
        auto I = Mp.map(u, rho);
        if (std::abs(I.b3) < 1e-3L || std::abs(Mp.A(I.z)) < 1e-3L) continue;
        auto P = cotangent_polys<Complex>(e[0], e[1], e[2], w);
        Complex a = P.A.eval(I.z), b = P.B.eval(I.z), c = P.C.eval(I.z);
        Real sc = std::abs(a) * std::norm(I.vt) + std::abs(b) * std::abs(I.vt) + std::abs(c);
        R.max_plug_residual = std::max(R.max_plug_residual, std::abs(a * I.vt * I.vt + b * I.vt + c) / sc);
        Complex q1 = I.b1 * I.b1 + I.b2 * I.b2 + I.b3 * I.b3;
        Complex q2 = e[0] * I.b1 * I.b1 + e[1] * I.b2 * I.b2 + e[2] * I.b3 * I.b3;
        Real bsc = std::norm(I.b1) + std::norm(I.b2) + std::norm(I.b3);
        R.max_quadric_residual = std::max({R.max_quadric_residual, std::abs(q1 - 1.0L) / bsc,
                                           std::abs(q2 - w) / (bsc * (1 + Cv.max_root()))});
        // finite-difference Jacobian d(b1, b2)/d(u, rho)
        const Real h = 1e-6L;
        auto Ip = Mp.map(u + h, rho), Im = Mp.map(u - h, rho);
        auto Jp = Mp.map(u, rho + h), Jm = Mp.map(u, rho - h);
        Complex db1du = (Ip.b1 - Im.b1) / (2 * h), db2du = (Ip.b2 - Im.b2) / (2 * h);
        Complex db1dr = (Jp.b1 - Jm.b1) / (2 * h), db2dr = (Jp.b2 - Jm.b2) / (2 * h);
        Complex J = db1du * db2dr - db1dr * db2du;
        Complex lhs = i * s0 * J / I.b3, rhs = s0 / fu;
        R.max_omega_error = std::max(R.max_omega_error, std::abs(lhs - rhs) / std::abs(rhs));
        ++R.samples;
    }
    return R;
}

}  // namespace endo::hitchin
