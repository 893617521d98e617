#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "endo/hitchin/curve.hpp"

namespace endo::hitchin {

/// |w - e_i| <= 1e-10 (1 + max|e|), or exact equality when both are rational.
inline Real singular_tolerance(const CurveParams& C) { return 1e-10L * (1 + C.max_root()); }

inline std::optional<int> special_index(const CurveParams& C, Complex w) {
    for (int i = 0; i < 3; ++i)
        if (std::abs(w - C.e[i]) <= singular_tolerance(C)) return i;
    return std::nullopt;
}

inline std::optional<int> special_index(const CurveParams& C, const Rational& w) {
    if (C.exact_roots) {
        for (int i = 0; i < 3; ++i)
            if ((*C.exact_roots)[i] == w) return i;
        return std::nullopt;
    }
    return special_index(C, to_complex(w));
}

// ---------------------------------------------------------------- singular fibers

struct SingularFibers {
    std::array<Complex, 3> w;              // the e_i
    Rational disc_f;                       // prod (e_i - e_j)^2
    Rational constant = 1;                 // c in disc_u(g) = c disc(f) f(w)^2
    std::array<int, 3> exponents{0, 0, 0}; // exponent of (w - e_i)
    std::vector<std::pair<Rational, Rational>> samples;  // (w, disc_u(g_w)) checked exactly
    bool certified = false;
};

/// disc_u(g_w) is a polynomial of degree <= 6 in w, so agreement with c disc(f) f(w)^2
/// at 8 rational points proves the identity. f squarefree then forces exponents (2,2,2).
inline SingularFibers singular_fibers(const CurveParams& C) {
    require(C.disc() != 0, ErrorKind::InvalidCurve, "repeated root");
    SingularFibers S;
    S.w = C.e;
    Poly<Rational> f = C.f();
    S.disc_f = discriminant(f);
    bool ok = S.disc_f == C.disc();
    std::optional<Rational> c;
    for (int k = 0; k < 8; ++k) {
        Rational w(k - 3);
        if (f(w) == 0) w += Rational(1, 7);
        Rational D = discriminant(fiber_quartic<Rational>(C, w));
        S.samples.emplace_back(w, D);
        Rational ratio = D / (S.disc_f * f(w) * f(w));
        if (!c) c = ratio;
        ok = ok && ratio == *c;
    }
    S.constant = c.value_or(0);
    bool squarefree = gcd(f, f.derivative()).degree() == 0;
    ok = ok && S.constant != 0 && squarefree;
    if (ok) S.exponents = {2, 2, 2};
    S.certified = ok;
    return S;
}

// ---------------------------------------------------------------- fibers

struct DoublePoint {
    Complex u, rho;
    Complex dP_dw;  // = f(u), nonzero for a smooth total space
};

struct FiberReport {
    Complex w;
    bool split = false;
    int index = -1;  // i with w = e_i when split
    bool identity_exact = false;  // g_{e_i} = (1/4) q_i^2 in the splitting algebra
    std::vector<std::string> components;  // rho = +-(1/2) q_i(u)
    std::vector<DoublePoint> double_points;
    bool total_space_smooth = false;
    Complex quartic_disc;  // discriminant of g_w in u
};

/// q_i(u) = (u - e_i)^2 - (e_i - e_j)(e_i - e_k)
inline SplitPoly branch_poly(const CurveParams& C, int i) {
    SplitElem ei = SplitElem::root(C, i);
    SplitPoly lin{-ei, SplitElem(1)};
    SplitElem fp = SplitElem(3) * ei * ei + SplitElem(C.a);
    return lin * lin - SplitPoly::constant(fp);
}

inline bool split_identity(const CurveParams& C, int i) {
    SplitPoly g = fiber_quartic<SplitElem>(C, SplitElem::root(C, i));
    SplitPoly q = branch_poly(C, i);
    return (g - SplitElem(Rational(1, 4)) * q * q).is_zero();
}

inline FiberReport analyze_split_fiber(const CurveParams& C, int i) {
    require(i >= 0 && i < 3, ErrorKind::InvalidInput, "root index must be 0, 1 or 2");
    FiberReport R;
    R.w = C.e[i];
    R.split = true;
    R.index = i;
    R.identity_exact = split_identity(C, i);
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    std::string q = "(u - e" + std::to_string(i + 1) + ")^2 - (e" + std::to_string(i + 1) + " - e" +
                    std::to_string(j + 1) + ")(e" + std::to_string(i + 1) + " - e" + std::to_string(k + 1) + ")";
    R.components = {"rho = +1/2 [" + q + "]", "rho = -1/2 [" + q + "]"};
    Complex r = csqrt((C.e[i] - C.e[j]) * (C.e[i] - C.e[k]));
    R.total_space_smooth = true;
    for (Complex u : {C.e[i] + r, C.e[i] - r}) {
        DoublePoint d{u, 0, C.f_at(u)};
        R.total_space_smooth = R.total_space_smooth && std::abs(d.dP_dw) > 1e-9L * (1 + std::abs(u) * std::abs(u) * std::abs(u));
        R.double_points.push_back(d);
    }
    R.quartic_disc = 0;
    return R;
}

inline FiberReport analyze_fiber(const CurveParams& C, Complex w) {
    if (auto i = special_index(C, w)) return analyze_split_fiber(C, *i);
    FiberReport R;
    R.w = w;
    R.quartic_disc = discriminant(fiber_quartic<Complex>(C, w));
    return R;
}

inline FiberReport analyze_fiber(const CurveParams& C, const Rational& w) {
    if (auto i = special_index(C, w)) return analyze_split_fiber(C, *i);
    FiberReport R;
    R.w = to_complex(w);
    Rational D = discriminant(fiber_quartic<Rational>(C, w));
    require(D != 0 || !C.exact_roots, ErrorKind::InternalConsistency, "singular fiber away from the roots");
    R.quartic_disc = to_complex(D);
    return R;
}

// ---------------------------------------------------------------- Q action

/// T_i: u -> (e_i u + e_j e_k - e_i e_k - e_i e_j)/(u - e_i), rho -> -f'(e_i)/(u - e_i)^2 rho, w fixed.
struct QAction {
    int index = 0;
    Complex num0, num1;  // u-map numerator num1 u + num0, denominator u - e_i
    Complex rho_scale;   // -f'(e_i), multiplier is rho_scale/(u - e_i)^2
    bool involution = false;        // Mobius square is scalar and rho multipliers compose to 1
    bool preserves_surface = false; // g_w(Tu)(u-e_i)^4 = f'(e_i)^2 g_w(u) for all w
    std::vector<Complex> fixed_u;   // u with Tu = u: (u-e_i)^2 = f'(e_i)
    bool fixes_own_double_points = false;  // fixed points = double points of the w = e_i fiber
    std::array<int, 3> action_on_fiber{};  // per fiber w = e_j: +1 preserves branches, -1 swaps
    std::array<bool, 3> free_on_fiber{};   // no fixed point on the fiber w = e_j

    Complex map_u(Complex u, const CurveParams& C) const { return (num1 * u + num0) / (u - C.e[index]); }
    Complex map_rho(Complex u, Complex rho, const CurveParams& C) const {
        Complex d = u - C.e[index];
        return rho_scale / (d * d) * rho;
    }
};

namespace detail {

struct MobiusSplit {
    SplitElem n1, n0, ei, fp;  // (n1 u + n0)/(u - ei), f'(e_i)
};

inline MobiusSplit mobius(const CurveParams& C, int i) {
    SplitElem ei = SplitElem::root(C, i);
    SplitElem ej = SplitElem::root(C, (i + 1) % 3), ek = SplitElem::root(C, (i + 2) % 3);
    MobiusSplit m;
    m.n1 = ei;
    m.n0 = ej * ek - ei * ek - ei * ej;
    m.ei = ei;
    m.fp = (ei - ej) * (ei - ek);
    return m;
}

// D^deg p(N/D) for N = n1 u + n0, D = u - ei
inline SplitPoly homogenize(const SplitPoly& p, int deg, const MobiusSplit& m) {
    SplitPoly N{m.n0, m.n1}, D{-m.ei, SplitElem(1)};
    SplitPoly acc;
    for (int k = 0; k <= p.degree(); ++k) acc += SplitPoly::constant(p.coeff(k)) * N.pow(static_cast<unsigned>(k)) * D.pow(static_cast<unsigned>(deg - k));
    return acc;
}

}  // namespace detail

inline QAction q_action(const CurveParams& C, int i) {
    require(i >= 0 && i < 3, ErrorKind::InvalidInput, "root index must be 0, 1 or 2");
    auto m = detail::mobius(C, i);
    QAction Q;
    Q.index = i;
    Q.num1 = m.n1.eval(C);
    Q.num0 = m.n0.eval(C);
    Q.rho_scale = -m.fp.eval(C);

    // Mobius matrix [[n1, n0], [1, -ei]] squares to (n1 ei... ) scalar iff n1 = ei;
    // its square is (ei^2 + n0) I, and (T(u) - ei)(u - ei) = ei^2 + n0 = f'(e_i) makes the rho multipliers cancel
    SplitElem sq = m.ei * m.ei + m.n0;
    bool mob = (m.n1 == m.ei) && (sq == m.fp);
    Q.involution = mob && !m.fp.is_zero();

    // g_w = g0 + w g1, g1 = -f
    SplitPoly f = curve_f<SplitElem>(C), fp = f.derivative();
    SplitPoly g0 = -(SplitPoly{SplitElem(0), SplitElem(2)} * f) + SplitElem(Rational(1, 4)) * fp * fp;
    SplitPoly g1 = -f;
    SplitElem fp2 = m.fp * m.fp;
    Q.preserves_surface = (detail::homogenize(g0, 4, m) - fp2 * g0).is_zero() &&
                          (detail::homogenize(g1, 4, m) - fp2 * g1).is_zero();

    Complex r = csqrt(m.fp.eval(C));
    Q.fixed_u = {C.e[i] + r, C.e[i] - r};
    // fixed-point polynomial equals the branch polynomial of the own fiber
    SplitPoly fixpoly{-m.n0, -(m.ei + m.n1), SplitElem(1)};  // u(u - ei) - (n1 u + n0)
    Q.fixes_own_double_points = (fixpoly - branch_poly(C, i)).is_zero();

    for (int j = 0; j < 3; ++j) {
        // D^2 q_j(T u) against the multiplier -f'(e_i) q_j(u): equal means branch-preserving, opposite means swapping
        SplitPoly lhs = detail::homogenize(branch_poly(C, j), 2, m);
        SplitPoly mult = SplitElem(-1) * m.fp * branch_poly(C, j);
        if ((lhs - mult).is_zero()) Q.action_on_fiber[static_cast<size_t>(j)] = +1;
        else if ((lhs + mult).is_zero()) Q.action_on_fiber[static_cast<size_t>(j)] = -1;
        else Q.action_on_fiber[static_cast<size_t>(j)] = 0;
        // on w = e_j a fixed point needs Tu = u and rho = 0 (the multiplier is -1 there),
        // i.e. a common root of the fixed-point polynomial and q_j
        if (j == i) {
            Q.free_on_fiber[static_cast<size_t>(j)] = false;
        } else {
            Poly<Complex> a = map_coeffs<Complex>(fixpoly, [&](const SplitElem& x) { return x.eval(C); });
            Poly<Complex> b = map_coeffs<Complex>(branch_poly(C, j), [&](const SplitElem& x) { return x.eval(C); });
            // resultant of monic quadratics (q1 - q2)^2 + (p1 - p2)(p1 q2 - p2 q1)
            Complex p1 = a.coeff(1), q1 = a.coeff(0), p2 = b.coeff(1), q2 = b.coeff(0);
            Complex res = (q1 - q2) * (q1 - q2) + (p1 - p2) * (p1 * q2 - p2 * q1);
            Real scale = 1 + std::pow(C.max_root(), 4);
            Q.free_on_fiber[static_cast<size_t>(j)] = std::abs(res) > 1e-9L * scale;
        }
    }
    return Q;
}

// ---------------------------------------------------------------- improper quadrics

struct ImproperFiber {
    Complex w;
    bool singular = false;
    int index = -1;
    std::vector<std::array<Complex, 3>> singular_points;  // b_i = +-1, others 0
    std::array<Complex, 3> relation{};  // coefficients of b1^2, b2^2, b3^2 in the component relation
    std::vector<std::array<Complex, 3>> infinity_points;  // the four b4 = 0 points, b1 = 1
    bool infinity_single_orbit = false;
    Real infinity_residual = 0;
    int sampled = 0;
    Real min_jacobian_minor = 0;  // smallest over samples of the largest 2x2 minor (relative)
};

/// Q acts by pairwise sign changes; projectively the 4 sign patterns of the b4 = 0 points form one orbit.
inline bool sign_patterns_single_orbit() {
    auto norm = [](std::array<int, 3> s) {
        if (s[0] < 0)
            for (auto& x : s) x = -x;
        return s;
    };
    std::set<std::array<int, 3>> all;
    for (int a : {1, -1})
        for (int b : {1, -1}) all.insert(norm({1, a, b}));
    std::set<std::array<int, 3>> orbit{norm({1, 1, 1})};
    std::vector<std::array<int, 3>> stack{{1, 1, 1}};
    const std::array<std::array<int, 3>, 3> gens{{{-1, -1, 1}, {-1, 1, -1}, {1, -1, -1}}};
    while (!stack.empty()) {
        auto s = stack.back();
        stack.pop_back();
        for (const auto& g : gens) {
            std::array<int, 3> t{s[0] * g[0], s[1] * g[1], s[2] * g[2]};
            if (orbit.insert(norm(t)).second) stack.push_back(t);
        }
    }
    return orbit == all;
}

inline ImproperFiber improper_fiber(const CurveParams& C, Complex w, int samples = 16, unsigned seed = 7) {
    ImproperFiber R;
    R.w = w;
    const auto& e = C.e;
    if (auto i = special_index(C, w)) {
        R.singular = true;
        R.index = *i;
        std::array<Complex, 3> p{0, 0, 0};
        p[static_cast<size_t>(*i)] = 1;
        R.singular_points.push_back(p);
        p[static_cast<size_t>(*i)] = -1;
        R.singular_points.push_back(p);
        for (int j = 0; j < 3; ++j) R.relation[static_cast<size_t>(j)] = e[j] - e[*i];
    }
    // b_i^2 proportional to (e_j - e_k), cyclic
    Complex r2 = (e[2] - e[0]) / (e[1] - e[2]), r3 = (e[0] - e[1]) / (e[1] - e[2]);
    Complex s2 = csqrt(r2), s3 = csqrt(r3);
    for (int a : {1, -1})
        for (int b : {1, -1}) {
            std::array<Complex, 3> p{1, Real(a) * s2, Real(b) * s3};
            R.infinity_points.push_back(p);
            Complex q1 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
            Complex q2 = e[0] * p[0] * p[0] + e[1] * p[1] * p[1] + e[2] * p[2] * p[2];
            R.infinity_residual = std::max({R.infinity_residual, std::abs(q1), std::abs(q2)});
        }
    R.infinity_single_orbit = sign_patterns_single_orbit() && R.infinity_residual < 1e-9L * (1 + C.max_root());

    if (!R.singular) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> U(-1.5, 1.5);
        R.min_jacobian_minor = std::numeric_limits<Real>::infinity();
        for (int n = 0; n < samples; ++n) {
            Complex b1(U(rng), U(rng));
            // b2^2 + b3^2 = 1 - b1^2, e2 b2^2 + e3 b3^2 = w - e1 b1^2
            Complex rhs1 = 1.0L - b1 * b1, rhs2 = w - e[0] * b1 * b1;
            Complex B3 = (rhs2 - e[1] * rhs1) / (e[2] - e[1]);
            Complex B2 = rhs1 - B3;
            std::array<Complex, 3> b{b1, csqrt(B2), csqrt(B3)};
            Real best = 0, scale = 0;
            for (int x = 0; x < 3; ++x)
                for (int y = x + 1; y < 3; ++y)
                    best = std::max(best, std::abs(4.0L * b[x] * b[y] * (e[y] - e[x])));
            for (int x = 0; x < 3; ++x) scale = std::max(scale, std::abs(b[x]) * std::abs(b[x]));
            R.min_jacobian_minor = std::min(R.min_jacobian_minor, best / (1 + scale * (1 + C.max_root())));
            ++R.sampled;
        }
    }
    return R;
}

// ---------------------------------------------------------------- SO3 quotient

struct SO3Fiber {
    Complex w;
    std::array<Complex, 3> t_roots{};  // roots of the cubic in t
    int double_roots = 0;              // coincident pairs among the t-roots
    bool node = false;
    Complex node_t, node_z;
    std::array<std::array<Complex, 3>, 3> hessian{};  // in (z, t - t0, w - e_i)
    int hessian_rank = 0;
    bool coincidence_exact = false;    // t_k - t_l = (e_k - e_l)(e_m - w) in the splitting algebra
};

inline int complex_rank3(const std::array<std::array<Complex, 3>, 3>& H) {
    Real norm = 0;
    for (const auto& r : H)
        for (const auto& x : r) norm = std::max(norm, std::abs(x));
    if (norm == 0) return 0;
    Complex det = H[0][0] * (H[1][1] * H[2][2] - H[1][2] * H[2][1]) - H[0][1] * (H[1][0] * H[2][2] - H[1][2] * H[2][0]) +
                  H[0][2] * (H[1][0] * H[2][1] - H[1][1] * H[2][0]);
    if (std::abs(det) > 1e-9L * norm * norm * norm) return 3;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = c + 1; d < 3; ++d)
                    if (std::abs(H[a][c] * H[b][d] - H[a][d] * H[b][c]) > 1e-9L * norm * norm) return 2;
    return 1;
}

/// z^2 = -prod_{p<q} (t - w(e_p + e_q) + e_p e_q)/(e_p - e_q)^2
inline SO3Fiber so3_fiber(const CurveParams& C, Complex w) {
    SO3Fiber R;
    R.w = w;
    const auto& e = C.e;
    // factor for pair (p,q) with third index r: t + w e_r + e_p e_q, root t_r = -w e_r - e_p e_q
    for (int r = 0; r < 3; ++r) {
        int p = (r + 1) % 3, q = (r + 2) % 3;
        R.t_roots[static_cast<size_t>(r)] = -w * e[r] - e[p] * e[q];
    }
    Real tol = 1e-9L * (1 + std::abs(w)) * (1 + C.max_root()) * (1 + C.max_root());
    int pair_k = -1, pair_l = -1;
    for (int k = 0; k < 3; ++k)
        for (int l = k + 1; l < 3; ++l)
            if (std::abs(R.t_roots[k] - R.t_roots[l]) <= tol) {
                ++R.double_roots;
                pair_k = k;
                pair_l = l;
            }
    {
        // exact: at w = e_m the two roots t_k, t_l equal e_m^2 and the third equals e_m^2 - f'(e_m)
        bool ok = true;
        for (int m = 0; m < 3; ++m) {
            int k = (m + 1) % 3, l = (m + 2) % 3;
            SplitElem ek = SplitElem::root(C, k), el = SplitElem::root(C, l), em = SplitElem::root(C, m);
            SplitElem t0 = em * em;
            SplitElem tk = -(em * ek) - el * em, tl = -(em * el) - ek * em, tm = -(em * em) - ek * el;
            SplitElem fp = (em - ek) * (em - el);
            ok = ok && (tk - t0).is_zero() && (tl - t0).is_zero() && (t0 - tm - fp).is_zero();
        }
        R.coincidence_exact = ok;
    }
    if (R.double_roots == 1) {
        int m = 3 - pair_k - pair_l;  // w = e_m
        R.node = true;
        R.node_t = R.t_roots[pair_k];
        R.node_z = 0;
        // affine forms l_r(X, Y) = c_r + (X + e_r Y) around (t0, e_m), X = t - t0, Y = w - e_m
        Complex den = 1;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) den *= (e[p] - e[q]) * (e[p] - e[q]);
        std::array<Complex, 3> c{};
        std::array<std::array<Complex, 2>, 3> g{};
        for (int r = 0; r < 3; ++r) {
            int p = (r + 1) % 3, q = (r + 2) % 3;
            c[r] = R.node_t + e[m] * e[r] + e[p] * e[q];
            g[r] = {1, e[r]};
        }
        // F = z^2 + (1/den) l0 l1 l2; Hessian of the product at the node
        std::array<std::array<Complex, 2>, 2> h{};
        for (int r = 0; r < 3; ++r) {
            int p = (r + 1) % 3, q = (r + 2) % 3;
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y) h[x][y] += c[r] * (g[p][x] * g[q][y] + g[q][x] * g[p][y]);
        }
        R.hessian = {};
        R.hessian[0][0] = 2;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) R.hessian[x + 1][y + 1] = h[x][y] / den;
        R.hessian_rank = complex_rank3(R.hessian);
        (void)m;
    }
    return R;
}

}  // namespace endo::hitchin
