#pragma once

#include <array>
#include <optional>
#include <string>

#include "endo/hitchin/curve.hpp"
#include "endo/hitchin/fibers.hpp"

namespace endo::spectral {

using hitchin::CurveParams;

/// Normalization w^2 = (z^2 + e_i - e_j)(z^2 + e_i - e_k) of y^2 = prod (z^2 + a - e_i) at a = e_i.
struct NormalizationG1 {
    int index = -1;
    Complex c, d;                 // quartic z^4 + c z^2 + d: c = 2e_i - e_j - e_k, d = (e_i - e_j)(e_i - e_k)
    Complex quartic_disc;         // nonzero: smooth genus 1
    std::array<Complex, 2> q;     // w-coordinates of q', q'' at z = 0
    // Weierstrass model E': Y^2 = X^3 - 2c X^2 + (c^2 - 4d) X via X = 2(w + z^2) + c, Y = 2 z X;
    // p' (w ~ +z^2 at infinity) goes to O, p'' to (0, 0)
    std::array<Complex, 2> q_image_x;
    bool q_two_torsion = false;   // images of q', q'' have Y = 0 and lie on E'
    bool q_relation = false;      // q' + q'' + (0,0) = O, i.e. q'' - q' = p'' - p'
};

struct SpectralReport {
    Complex a;
    bool singular = false;
    int genus = 2;                // 2 when smooth, normalization genus 1 when singular
    Complex sextic_disc;          // discriminant of prod (z^2 + a - e_i) in z
    int points_over_infinity = 2; // leading coefficient of the sextic is a square
    std::optional<NormalizationG1> normalization;
};

inline Complex quartic_disc(Complex c, Complex d) {
    // disc(z^4 + c z^2 + d) = 16 d (c^2 - 4d)^2
    return 16.0L * d * (c * c - 4.0L * d) * (c * c - 4.0L * d);
}

inline SpectralReport spectral_singularity(const CurveParams& C, Complex a) {
    SpectralReport R;
    R.a = a;
    Poly<Complex> sext = Poly<Complex>::constant(1);
    for (int i = 0; i < 3; ++i) sext *= Poly<Complex>{a - C.e[i], 0, 1};
    R.sextic_disc = discriminant(sext);
    auto idx = hitchin::special_index(C, a);
    if (!idx) return R;
    R.singular = true;
    R.genus = 1;
    const int i = *idx, j = (i + 1) % 3, k = (i + 2) % 3;
    NormalizationG1 N;
    N.index = i;
    N.c = (C.e[i] - C.e[j]) + (C.e[i] - C.e[k]);
    N.d = (C.e[i] - C.e[j]) * (C.e[i] - C.e[k]);
    N.quartic_disc = quartic_disc(N.c, N.d);
    Complex r = csqrt(N.d);
    N.q = {r, -r};
    Real scale = 1 + std::norm(N.c) + std::abs(N.d);
    bool on = true;
    for (int s = 0; s < 2; ++s) {
        Complex X = 2.0L * N.q[s] + N.c;  // z = 0
        N.q_image_x[s] = X;
        Complex rhs = X * X * X - 2.0L * N.c * X * X + (N.c * N.c - 4.0L * N.d) * X;
        on = on && std::abs(rhs) <= 1e-12L * scale * (1 + std::abs(X));
    }
    N.q_two_torsion = on;
    // the three roots of X^3 - 2c X^2 + (c^2 - 4d) X are 0 and the q-images; they sum to 2c
    N.q_relation = std::abs(N.q_image_x[0] + N.q_image_x[1] - 2.0L * N.c) <= 1e-12L * (1 + std::abs(N.c));
    R.normalization = N;
    return R;
}

/// deg L = n(n-1)(g-1) for an n-sheeted spectral cover of a genus g curve
inline long pushforward_degree(long n, long g) { return n * (n - 1) * (g - 1); }

}  // namespace endo::spectral
