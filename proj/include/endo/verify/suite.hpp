#pragma once

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "endo/hecke/splice.hpp"
#include "endo/hitchin/cotangent.hpp"
#include "endo/hitchin/fibers.hpp"
#include "endo/spectral/operators.hpp"
#include "endo/spectral/prym.hpp"
#include "endo/whittaker/whittaker.hpp"

namespace endo::verify {

enum class Status { Pass, Fail, Inconclusive };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct CheckRecord {
    int id = 0;
    std::string name;
    std::string anchor;  // the claim being checked, in words
    Status status = Status::Fail;
    std::vector<std::pair<std::string, std::string>> witness;
    double seconds = 0;  // metadata, not part of the digest
};

struct SuiteOptions {
    unsigned seed = 2024;
};

namespace detail {

struct Recorder {
    CheckRecord& r;
    bool ok = true;
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            if (ok) r.witness.emplace_back("first_failure", what);
            ok = false;
        }
    }
    void note(const std::string& k, const std::string& v) { r.witness.emplace_back(k, v); }
};

inline std::vector<hitchin::CurveParams> random_curves(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
    std::vector<hitchin::CurveParams> out;
    while (static_cast<int>(out.size()) < n) {
        Rational a(num(rng), den(rng)), b(num(rng), den(rng));
        if (-4 * a * a * a - 27 * b * b == 0) continue;
        out.push_back(hitchin::CurveParams::make(a, b));
    }
    return out;
}

struct FFFixture {
    ff::WCurve E;
    ff::Census C;
    ff::EndoscopicDatum D;
};

inline FFFixture e5(unsigned N) {
    FFFixture f;
    f.E = ff::WCurve::short_form(ff::Tower(5, 1), -1, 0);
    f.C = ff::enumerate_closed_points(f.E, N);
    f.D = ff::make_datum(f.E, 1);
    return f;
}

inline FFFixture e7(unsigned N) {
    FFFixture f;
    f.E = ff::WCurve::short_form(ff::Tower(7, 1), 2, 0);
    f.C = ff::enumerate_closed_points(f.E, N);
    f.D = ff::make_datum(f.E, 0);
    return f;
}

inline std::string sci(Real x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3Le", x);
    return buf;
}

inline std::string mat_str(const spectral::IntMatrix& M) {
    std::string s = "[";
    for (size_t i = 0; i < M.rows(); ++i) {
        s += i ? ",[" : "[";
        for (size_t j = 0; j < M.cols(); ++j) s += (j ? "," : "") + std::to_string(M(i, j));
        s += "]";
    }
    return s + "]";
}

}  // namespace detail

// ---------------------------------------------------------------- the twelve checks

inline void check_singular_fibers(detail::Recorder& R, const SuiteOptions& o) {
    auto curves = detail::random_curves(20, o.seed);
    for (const auto& C : curves) {
        auto S = hitchin::singular_fibers(C);
        const std::string tag = "a=" + to_string(C.a) + " b=" + to_string(C.b);
        R.expect(S.certified, "discriminant identity not certified for " + tag);
        R.expect(S.exponents == std::array<int, 3>{2, 2, 2}, "exponents differ from (2,2,2) for " + tag);
        for (int i = 0; i < 3; ++i) R.expect(hitchin::split_identity(C, i), "split identity fails at e" + std::to_string(i + 1) + " for " + tag);
    }
    R.note("curves", std::to_string(curves.size()));
}

inline void check_q_action(detail::Recorder& R, const SuiteOptions& o) {
    auto curves = detail::random_curves(5, o.seed + 1);
    curves.insert(curves.begin(), hitchin::CurveParams::make(-1, 0));
    for (const auto& C : curves)
        for (int i = 0; i < 3; ++i) {
            auto T = hitchin::q_action(C, i);
            const std::string tag = "T" + std::to_string(i + 1) + " on a=" + to_string(C.a) + " b=" + to_string(C.b);
            R.expect(T.involution, tag + " is not an involution");
            R.expect(T.preserves_surface, tag + " does not preserve P = 0 and w");
            R.expect(T.fixes_own_double_points && T.fixed_u.size() == 2, tag + " does not fix exactly the two double points");
            for (int j = 0; j < 3; ++j) {
                if (j == i) continue;
                R.expect(T.action_on_fiber[j] == -1 && T.free_on_fiber[j],
                         tag + " does not swap the components over e" + std::to_string(j + 1));
            }
        }
    R.note("curves", std::to_string(curves.size()));
}

inline void check_cotangent(detail::Recorder& R, const SuiteOptions& o) {
    auto curves = detail::random_curves(3, o.seed + 2);
    curves.insert(curves.begin(), hitchin::CurveParams::make(-1, 0));
    Real worst_zero = 0, worst_res = 0;
    for (const auto& C0 : curves)
        for (Complex s0 : {Complex(1), Complex(1.5L), Complex(0, 1)}) {
            auto C = hitchin::CurveParams::make(C0.a, C0.b, s0);
            auto M = hitchin::cotangent_model(C, Complex(0.3L, 0.1L));
            R.expect(M.b_is_minus_dA, "B + dA/dz != 0");
            R.expect(M.residues.size() == 4, "expected 4 polar residues");
            worst_zero = std::max(worst_zero, M.zero_match);
            for (const auto& r : M.residues) worst_res = std::max(worst_res, std::abs(r[0] - s0));
        }
    R.expect(worst_zero <= 1e-9L, "zeros of A off by " + detail::sci(worst_zero));
    R.expect(worst_res <= 1e-8L, "polar residue off by " + detail::sci(worst_res));
    R.note("max_zero_error", detail::sci(worst_zero));
    R.note("max_residue_error", detail::sci(worst_res));
}

inline void check_isomorphism(detail::Recorder& R, const SuiteOptions& o) {
    auto rep = hitchin::component_isomorphism(hitchin::CurveParams::make(-1, 0), 100, o.seed);
    R.expect(rep.samples == 100, "expected 100 samples");
    R.expect(rep.max_plug_residual <= 1e-9L, "cotangent equation residual " + detail::sci(rep.max_plug_residual));
    R.expect(rep.w_preserved, "w not preserved");
    R.expect(rep.max_omega_error <= 1e-9L, "symplectic form mismatch " + detail::sci(rep.max_omega_error));
    R.note("max_plug_residual", detail::sci(rep.max_plug_residual));
    R.note("max_omega_error", detail::sci(rep.max_omega_error));
}

inline void check_so3_nodes(detail::Recorder& R, const SuiteOptions& o) {
    auto curves = detail::random_curves(4, o.seed + 3);
    curves.insert(curves.begin(), hitchin::CurveParams::make(-1, 0));
    for (const auto& C : curves)
        for (int i = 0; i < 3; ++i) {
            const std::string tag = "e" + std::to_string(i + 1) + " on a=" + to_string(C.a) + " b=" + to_string(C.b);
            auto N = hitchin::so3_fiber(C, C.e[i]);
            R.expect(N.node && N.double_roots == 1, "SO3 fiber at " + tag + " is not a single node");
            R.expect(N.hessian_rank == 3, "A1 certificate rank " + std::to_string(N.hessian_rank) + " at " + tag);
            auto F = hitchin::analyze_split_fiber(C, i);
            R.expect(F.total_space_smooth, "SL2 total space singular at a double point over " + tag);
        }
}

inline void check_operators(detail::Recorder& R, const SuiteOptions&) {
    using spectral::ComponentModule;
    auto G = spectral::graded_thooft(ComponentModule::proper(), ComponentModule::improper());
    auto W = spectral::wilson_matrix(ComponentModule::irreps());
    spectral::IntMatrix want{{1, 2}, {2, 1}};
    auto T = spectral::thooft_matrix(ComponentModule::proper());
    R.expect(G.identity_holds && G.TTilde_squared == G.one_plus_T, "T~^2 != 1 + T");
    R.expect(W.tilde_identity && W.WTilde_squared == W.one_plus_W, "W~^2 != 1 + W");
    R.expect(T == want, "T_p = " + detail::mat_str(T));
    R.expect(W.W == want, "W_p = " + detail::mat_str(W.W));
    R.note("T_p", detail::mat_str(T));
    R.note("W_p", detail::mat_str(W.W));
    R.note("T~^2", detail::mat_str(G.TTilde_squared));
}

inline void check_prym(detail::Recorder& R, const SuiteOptions&) {
    for (const auto& mk : spectral::genus_one_markers()) {
        auto c = spectral::prym_components(mk);
        R.expect(c.components == 2, "genus-one marker " + mk.str() + " gives " + std::to_string(c.components) + " components");
    }
    for (int g : {2, 3}) {
        auto c = spectral::prym_components(spectral::CoverMarker::standard(g));
        R.expect(c.components == 2, "g=" + std::to_string(g) + " gives " + std::to_string(c.components) + " components");
        auto gl = spectral::gluing_action(g);
        R.expect(gl.fixed == (1L << (2 * g - 2)), "g=" + std::to_string(g) + " fixed gluing census " + std::to_string(gl.fixed));
        R.note("g" + std::to_string(g) + "_fixed", std::to_string(gl.fixed));
    }
}

inline void check_arithmetic_census(detail::Recorder& R, const SuiteOptions&) {
    auto f = detail::e5(2);
    const long n1 = f.C.count_by_degree[0], n2 = f.C.count_by_degree[1];
    // exhaustive count over F_25
    auto F = FiniteField::get(5, 2);
    long pts = 1;
    for (const auto& x : F.elements())
        for (const auto& y : F.elements())
            if (y * y == x * x * x - x) ++pts;
    R.expect(n1 == 8 && n2 == 12, "closed-point counts " + std::to_string(n1) + "/" + std::to_string(n2));
    R.expect(n1 + 2 * n2 == pts, "zeta identity: 8 + 2*12 vs #E(F_25) = " + std::to_string(pts));
    R.expect(f.C.zeta_identity(), "census zeta identity fails");
    R.note("degree_counts", std::to_string(n1) + "/" + std::to_string(n2));
    R.note("E(F_25)", std::to_string(pts));
}

inline void check_reciprocity(detail::Recorder& R, const SuiteOptions& o) {
    std::mt19937 rng(o.seed);
    long divisors = 0, differentials = 0;
    for (const auto& f : {detail::e5(4), detail::e7(4)}) {
        const auto& F = f.E.tower().base();
        const long p = static_cast<long>(F.size());
        std::uniform_int_distribution<long> U(0, p - 1);
        auto rnd = [&] {
            ff::CurveFactor h;
            h.A = FFPoly{F.from_int(U(rng)), F.from_int(U(rng)), F.from_int(U(rng))};
            h.B = FFPoly{F.from_int(U(rng) % 2)};
            h.name = "A+By";
            return h;
        };
        auto nonzero = [](const ff::CurveFactor& h) { return !(h.A.is_zero() && h.B.is_zero()); };
        std::vector<ff::RationalFunctionFF> samples;
        while (samples.size() < 60) {
            auto g = rnd(), h = rnd();
            if (!nonzero(g) || !nonzero(h)) continue;
            auto fn = ff::RationalFunctionFF::of(g) * ff::RationalFunctionFF::of(h, -1);
            bool fits = true;
            auto dv = ff::divisor(f.E, f.C, fn);
            for (const auto& [k, n] : dv.terms())
                fits = fits && (ff::split_classify(f.C.at(k), f.D).split || ff::extension_fits(f.D, 2 * k.degree));
            if (fits) samples.push_back(fn);
        }
        auto chis = ff::characters_of_order(f.D, 2);
        chis.insert(chis.begin(), std::vector<long>{});
        for (const auto& chi : chis) {
            auto D = ff::make_datum(f.E, f.D.torsion_index, chi, 1, 3);
            for (const auto& r : ff::character_consistency(D, f.C, samples)) {
                ++divisors;
                R.expect(r.kappa_product == 1, "non-split sign product -1 on " + r.div.str());
                R.expect(r.mu_product == CyclotomicValue(1), "mu product " + r.mu_product.str() + " on " + r.div.str());
            }
        }
        for (int t = 0; t < 12; ++t) {
            auto g = rnd();
            if (!nonzero(g)) continue;
            try {
                ff::delta_parity(f.D, f.C, ff::RationalFunctionFF::of(g));
                ++differentials;
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::Resource) continue;
                R.expect(false, e.what());
            }
        }
    }
    R.expect(divisors >= 100, "only " + std::to_string(divisors) + " principal divisors checked");
    R.expect(differentials >= 20, "only " + std::to_string(differentials) + " differentials checked");
    R.note("divisors", std::to_string(divisors));
    R.note("differentials", std::to_string(differentials));
}

inline void check_eigenvalues(detail::Recorder& R, const SuiteOptions&) {
    auto f = detail::e5(4);
    auto chis = ff::characters_of_order(f.D, 2);
    R.expect(!chis.empty(), "no order-2 character on E'(F_5)");
    std::vector<ff::EndoscopicDatum> data{f.D};
    if (!chis.empty()) data.push_back(ff::make_datum(f.E, 1, chis.back(), 1, 3));
    long points = 0;
    for (const auto& D : data) {
        for (const auto& row : hecke::z2_splice(D, f.C, 4)) {
            ++points;
            const auto& x = f.C.at(row.key);
            auto F = ff::sigma_frobenius(x, D, false);
            auto chk = ff::sigma_prime_check(x, F);
            R.expect(chk.shape_ok, "shape constraints fail at " + x.str());
            R.expect(chk.ok, "a + (-1)^deg b != adjoint trace of sigma' at " + x.str());
            R.expect(row.hecke == hecke::CMat{{row.a, row.b}, {row.b, row.a}}, "T_W matrix at " + x.str());
            R.expect(row.ok, "fractional splice fails at " + x.str());
        }
    }
    R.note("points_checked", std::to_string(points));
    R.note("characters", std::to_string(data.size()));
}

inline void check_parity(detail::Recorder& R, const SuiteOptions& o, bool& inconclusive) {
    std::mt19937 rng(o.seed);
    long instances = 0, vanishing = 0, witnessed = 0;
    for (const auto& f : {detail::e5(3), detail::e7(3)}) {
        std::vector<ff::PointKey> deg1;
        for (const auto& x : f.C.points)
            if (x.degree == 1) deg1.push_back(x.key);
        std::vector<std::vector<long>> chis{{}};
        for (const auto& c : ff::characters_of_order(f.D, 2))
            if (ff::make_datum(f.E, f.D.torsion_index, c).chi.value(f.D.cover.group.log(f.D.cover.P0)) == CyclotomicValue(1))
                chis.push_back(c);
        for (int t = 0; t < 10; ++t) {
            auto datum = ff::make_datum(f.E, f.D.torsion_index, chis[static_cast<size_t>(t) % chis.size()], t % 3, 3);
            ff::DivisorFF D;
            for (const auto& k : deg1)
                if (rng() % 2) D.add(k, 1);
            auto rep = whittaker::coset_vanishing(datum, f.C, D);
            ++instances;
            const std::string tag = datum.E.tower().base().size() == 5 ? "E5" : "E7";
            if (rep.verdict == whittaker::Verdict::Inconclusive) {
                inconclusive = true;
                R.note("inconclusive", tag + " D=" + D.str());
                continue;
            }
            const bool odd = ff::nonsplit_weight(datum, f.C, D) % 2 != 0;
            R.expect(rep.agrees && (rep.verdict == whittaker::Verdict::VanishesAll) == odd,
                     tag + " D=" + D.str() + " verdict " + whittaker::verdict_name(rep.verdict));
            if (rep.verdict == whittaker::Verdict::VanishesAll) ++vanishing;
            if (rep.witness) {
                ++witnessed;
                R.expect(!rep.witness->value.is_zero(), "zero witness value");
                R.expect(ff::is_principal(f.E, f.C, rep.witness->target - D), "witness shift not principal");
            }
        }
    }
    R.expect(instances >= 20, "only " + std::to_string(instances) + " instances");
    R.expect(vanishing > 0 && witnessed > 0, "instances do not cover both verdicts");
    R.note("instances", std::to_string(instances));
    R.note("vanishes_all", std::to_string(vanishing));
    R.note("nonzero_witnessed", std::to_string(witnessed));
}

inline void check_fourier(detail::Recorder& R, const SuiteOptions&) {
    using namespace hecke;
    for (const auto& G : {abelian_group({2}), abelian_group({2, 2}), abelian_group({4}), s3_group()}) {
        R.expect(validate(G).ok(), G.name + " character table invalid");
        EigenSystem S(G);
        for (size_t h = 0; h < G.order(); ++h) {
            CMat right(G.order(), G.order());
            for (size_t g = 0; g < G.order(); ++g) right(static_cast<size_t>(G.mul[g][h]), g) = CyclotomicValue(1);
            const std::string x = "h=" + G.element_names[h];
            S.add_point(x, isotypic_decompose(G, regular_rep(G), right));
            auto F = fourier_diagonalize(S, x);
            R.expect(F.eigen_ok && F.twisted_ok, G.name + " twisted trace fails at " + x);
        }
        R.expect(inverse_fourier(S).round_trip, G.name + " round trip fails");
    }
    EigenSystem S3(s3_group());
    S3.add_point("trivial", isotypic_decompose(S3.G, regular_rep(S3.G), CMat::identity(6)));
    auto F = fourier_diagonalize(S3, "trivial");
    std::string vals;
    for (const auto& v : F.eigenvalues) vals += (vals.empty() ? "" : ",") + v.str();
    R.expect(F.eigenvalues.size() == 3 && F.eigenvalues[0] == CyclotomicValue(6) && F.eigenvalues[1].is_zero() &&
                 F.eigenvalues[2].is_zero(),
             "S3 regular values (" + vals + ")");
    R.note("S3_regular", "(" + vals + ")");
}

// ---------------------------------------------------------------- suite

struct SuiteItem {
    int id;
    std::string name;
    std::string anchor;
    std::function<void(detail::Recorder&, const SuiteOptions&, bool&)> run;
};

inline std::vector<SuiteItem> acceptance_suite() {
    auto plain = [](void (*f)(detail::Recorder&, const SuiteOptions&)) {
        return [f](detail::Recorder& r, const SuiteOptions& o, bool&) { f(r, o); };
    };
    return {
        {1, "singular-fiber-identity", "the discriminant of the fiber quartic is disc(f) f(w)^2, with (w - e_i)-exponents (2,2,2)", plain(check_singular_fibers)},
        {2, "q-action", "T_1, T_2, T_3 are involutions of P = 0 fixing w; T_i fixes the double points over e_i and swaps the components over the other roots", plain(check_q_action)},
        {3, "cotangent-model", "B = -dA/dz, the zeros of A are at the predicted points and every polar residue is sigma_0", plain(check_cotangent)},
        {4, "component-isomorphism", "the Moebius map carries the split component onto the cotangent model, preserving w and the symplectic form", plain(check_isomorphism)},
        {5, "so3-nodes", "each special SO3 fiber has one A1 node and the SL2 total space is smooth at its double points", plain(check_so3_nodes)},
        {6, "operator-algebra", "T~^2 = 1 + T and W~^2 = 1 + W on the graded module; T_p = W_p = [[1,2],[2,1]]", plain(check_operators)},
        {7, "prym-census", "the Prym of the O2* reduction has 2 components; the gluing fixed census is 2^(2g-2)", plain(check_prym)},
        {8, "arithmetic-census", "y^2 = x^3 - x over F_5 has 8 degree-1 and 12 degree-2 closed points, 8 + 2*12 = #E(F_25)", plain(check_arithmetic_census)},
        {9, "reciprocity", "non-split signs and mu-values multiply to 1 over principal divisors; <delta> is even", plain(check_reciprocity)},
        {10, "eigenvalue-identities", "(a_x, b_x) have the endoscopic shape, T_W = [[a,b],[b,a]] and a + (-1)^deg b = Tr sigma'(Fr_x)", plain(check_eigenvalues)},
        {11, "parity-criterion", "the Whittaker coset vanishes identically iff <delta + D> is odd", check_parity},
        {12, "fourier-calculus", "Fourier round trip and A_[gamma] = Tr(sigma(Fr_x) gamma, V) for Z2, Z2xZ2, Z4, S3", plain(check_fourier)},
    };
}

inline CheckRecord run_item(const SuiteItem& it, const SuiteOptions& o) {
    CheckRecord r;
    r.id = it.id;
    r.name = it.name;
    r.anchor = it.anchor;
    detail::Recorder rec{r};
    bool inconclusive = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
        it.run(rec, o, inconclusive);
    } catch (const Error& e) {
        rec.expect(false, std::string(kind_name(e.kind())) + ": " + e.what());
    } catch (const std::exception& e) {
        rec.expect(false, e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.status = !rec.ok ? Status::Fail : inconclusive ? Status::Inconclusive : Status::Pass;
    return r;
}

}  // namespace endo::verify
