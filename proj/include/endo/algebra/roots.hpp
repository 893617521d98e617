#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "endo/algebra/poly.hpp"
#include "endo/algebra/rational.hpp"
#include "endo/error.hpp"

namespace endo {

inline Poly<Complex> to_complex_poly(const Poly<Rational>& p) {
    return map_coeffs<Complex>(p, [](const Rational& r) { return to_complex(r); });
}

inline std::string describe(const Poly<Complex>& p) {
    std::string s;
    for (int i = p.degree(); i >= 0; --i) {
        Complex c = p.coeff(i);
        if (c == Complex(0)) continue;
        if (!s.empty()) s += " + ";
        s += "(" + std::to_string(static_cast<double>(c.real())) + "," +
             std::to_string(static_cast<double>(c.imag())) + ")x^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

/// max_i |c_i| * max(1,|z|)^i
inline Real poly_scale(const Poly<Complex>& f, Complex z) {
    Real r = std::max<Real>(1, std::abs(z)), acc = 0, pw = 1;
    for (const auto& c : f.coeffs()) {
        acc = std::max(acc, std::abs(c) * pw);
        pw *= r;
    }
    return acc;
}

/// Sort key used for canonical root order: coordinates rounded to 1e-9.
inline bool canonical_less(Complex a, Complex b) {
    auto rnd = [](Real x) { return std::round(x * 1e9L) / 1e9L; };
    Real ar = rnd(a.real()), br = rnd(b.real());
    if (ar != br) return ar < br;
    Real ai = rnd(a.imag()), bi = rnd(b.imag());
    if (ai != bi) return ai < bi;
    return false;
}

/// Simultaneous (Durand-Kerner) iteration from a fixed circle, then Newton polish.
inline std::vector<Complex> poly_roots_complex(const Poly<Complex>& f, Real tol = 1e-14L) {
    require(f.degree() >= 1, ErrorKind::InvalidInput, "root finding needs degree >= 1");
    require(tol >= 1e-14L, ErrorKind::InvalidInput, "tolerance below 1e-14");
    const int n = f.degree();
    const Complex lc = f.lead();
    std::vector<Complex> m(f.coeffs().size());
    for (size_t i = 0; i < m.size(); ++i) m[i] = f.coeffs()[i] / lc;
    Poly<Complex> g(m);

    Real radius = 1;
    for (int i = 0; i < n; ++i) radius = std::max(radius, 1 + std::abs(m[static_cast<size_t>(i)]));
    const Real pi = std::acos(-1.0L);
    std::vector<Complex> z(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
        z[static_cast<size_t>(k)] = std::polar(radius, 2 * pi * k / n + 0.4L);

    const int budget = 200 * n;
    bool converged = false;
    for (int it = 0; it < budget && !converged; ++it) {
        Real biggest = 0;
        for (int k = 0; k < n; ++k) {
            Complex zk = z[static_cast<size_t>(k)];
            Complex denom = 1;
            for (int j = 0; j < n; ++j)
                if (j != k) denom *= (zk - z[static_cast<size_t>(j)]);
            if (denom == Complex(0)) denom = Complex(1e-30L, 0);
            Complex step = g.eval(zk) / denom;
            z[static_cast<size_t>(k)] = zk - step;
            biggest = std::max(biggest, std::abs(step) / std::max<Real>(1, std::abs(zk)));
        }
        if (biggest < 1e-19L) converged = true;
    }

    Poly<Complex> dg = g.derivative();
    for (auto& r : z) {
        for (int it = 0; it < 3; ++it) {
            Complex d = dg.eval(r);
            if (std::abs(d) < 1e-12L) break;
            Complex nr = r - g.eval(r) / d;
            if (std::abs(g.eval(nr)) >= std::abs(g.eval(r))) break;
            r = nr;
        }
    }

    for (const auto& r : z) {
        if (!std::isfinite(static_cast<double>(r.real())) || !std::isfinite(static_cast<double>(r.imag())) ||
            std::abs(f.eval(r)) > tol * poly_scale(f, r))
            fail(ErrorKind::NumericFailure, "root finder did not converge for " + describe(f));
    }
    std::sort(z.begin(), z.end(), canonical_less);
    return z;
}

inline std::vector<Complex> poly_roots_complex(const Poly<Rational>& f, Real tol = 1e-14L) {
    return poly_roots_complex(to_complex_poly(f), tol);
}

}  // namespace endo
