#pragma once

#include <string>
#include <vector>

#include "endo/ff/endoscopy.hpp"
#include "endo/hecke/fractional.hpp"

namespace endo::hecke {

/// Gamma = Z2 inside SO3 acting on the adjoint model diag(det g) + g: the generator is diag(1,-1,-1).
inline std::vector<CMat> z2_adjoint_gamma() {
    CMat g = CMat::identity(3);
    g(1, 1) = CyclotomicValue(-1);
    g(2, 2) = CyclotomicValue(-1);
    return {CMat::identity(3), g};
}

struct SpliceRow {
    ff::PointKey key;
    unsigned degree = 0;
    CyclotomicValue a, b;          // from the Frobenius class
    CyclotomicValue a_iso, b_iso;  // from the isotypic decomposition of the adjoint model
    CMat hecke;
    CyclotomicValue twisted_eigenvalue;  // eigenvalue of fhat at gamma^deg
    CyclotomicValue sigma_prime_trace;
    bool ok = false;
};

/// feeds (a_x, b_x) of every closed point of degree <= max_degree into the Z2 system
inline std::vector<SpliceRow> z2_splice(const ff::EndoscopicDatum& D, const ff::Census& C, unsigned max_degree) {
    EigenSystem S(abelian_group({2}));
    const auto gamma = z2_adjoint_gamma();
    std::vector<SpliceRow> rows;
    for (const auto& x : C.points) {
        if (x.degree > max_degree) continue;
        auto F = ff::sigma_frobenius(x, D, false);
        auto sigma = ff::adjoint_model(ff::o2_matrix(F));
        const std::string label = x.key.str();
        S.add_point(label, isotypic_decompose(S.G, gamma, sigma));
        SpliceRow r;
        r.key = x.key;
        r.degree = x.degree;
        r.a = CyclotomicValue(F.a);
        r.b = F.b;
        r.a_iso = S.at(label).a[0];
        r.b_iso = S.at(label).a[1];
        r.hecke = hecke_matrix(S, label);
        auto FR = fourier_diagonalize(S, label);
        const int cls = S.G.class_of[static_cast<size_t>(group_power(S.G, 1, x.degree))];
        r.twisted_eigenvalue = FR.eigenvalues[static_cast<size_t>(cls)];
        r.sigma_prime_trace = ff::sigma_prime_check(x, F).adjoint_trace;
        r.ok = r.a == r.a_iso && r.b == r.b_iso && r.hecke == CMat{{r.a, r.b}, {r.b, r.a}} && FR.twisted_ok &&
               r.twisted_eigenvalue == r.sigma_prime_trace;
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace endo::hecke
