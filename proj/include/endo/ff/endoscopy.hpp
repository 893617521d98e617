#pragma once

#include <optional>
#include <string>
#include <vector>

#include "endo/algebra/matrix.hpp"
#include "endo/ff/divisor.hpp"

namespace endo::ff {

/// Unramified double cover of E attached to a rational 2-torsion point T = (e, 0):
/// quartic w^2 = z^4 + c z^2 + d with x = z^2 + e, y = z w (c = 3e, d = f'(e)), and its
/// Weierstrass model E': Y^2 = X^3 - 2c X^2 + (c^2 - 4d) X via X = 2(w + z^2) + c, Y = 2 z X.
/// The point at infinity with w ~ +z^2 goes to O, the other one to P0 = (0, 0).
struct CoverModel {
    FFElement e, c, d;
    WCurve Eprime;
    RationalGroup group;      // E'(F_q)
    ECPoint P0;               // image of the second point at infinity; the deck involution is +P0
};

/// mu(Fr_y) = chi'(trace of y on E') * s^deg y, with s = zeta_{s_order}^{s_exp}.
struct MuCharacter {
    std::vector<long> exps;
    long s_exp = 0, s_order = 1;
};

struct EndoscopicDatum {
    WCurve E;
    int torsion_index = 0;    // into the rational roots of the cubic sorted by code
    ECPoint T;
    CoverModel cover;
    Character chi;
    MuCharacter mu;

    std::string str() const {
        return "T=" + point_str(T) + " chi'=" + std::to_string(chi.order()) + " s=z" + std::to_string(mu.s_order) + "^" +
               std::to_string(mu.s_exp);
    }
};

inline std::vector<FFElement> rational_two_torsion(const WCurve& E) {
    std::vector<FFElement> roots;
    for (const auto& x : E.tower().base().elements())
        if (E.rhs(x, 1).is_zero()) roots.push_back(x);
    return roots;  // sorted by code
}

inline CoverModel cover_model(const WCurve& E, const FFElement& e) {
    require(E.a2().is_zero(), ErrorKind::InvalidInput, "cover model expects a short Weierstrass curve");
    const auto& F = E.tower().base();
    CoverModel M;
    M.e = e;
    M.c = F.from_int(3) * e;
    M.d = F.from_int(3) * e * e + E.a4();
    require(!M.d.is_zero() && !(M.c * M.c - F.from_int(4) * M.d).is_zero(), ErrorKind::InvalidCurve,
            "cover quartic is singular");
    M.Eprime = WCurve(E.tower(), -F.from_int(2) * M.c, M.c * M.c - F.from_int(4) * M.d, F.zero());
    M.group = rational_group(M.Eprime);
    M.P0 = ECPoint::affine(F.zero(), F.zero());
    return M;
}

inline EndoscopicDatum make_datum(const WCurve& E, int torsion_index, std::vector<long> chi_exps = {},
                                  long s_exp = 0, long s_order = 1) {
    auto roots = rational_two_torsion(E);
    require(!roots.empty(), ErrorKind::InvalidDatum, "curve has no rational 2-torsion point");
    require(torsion_index >= 0 && torsion_index < static_cast<int>(roots.size()), ErrorKind::InvalidDatum,
            "torsion index out of range (curve has " + std::to_string(roots.size()) + " rational 2-torsion points)");
    require(s_order >= 1, ErrorKind::InvalidDatum, "degree twist order must be positive");
    EndoscopicDatum D;
    D.E = E;
    D.torsion_index = torsion_index;
    const auto e = roots[static_cast<size_t>(torsion_index)];
    D.T = ECPoint::affine(e, E.tower().base().zero());
    D.cover = cover_model(E, e);
    const auto& G = D.cover.group.group;
    if (chi_exps.empty()) chi_exps.assign(G.rank(), 0);
    require(chi_exps.size() == G.rank(), ErrorKind::InvalidDatum,
            "character needs " + std::to_string(G.rank()) + " exponents for E'(F_q)");
    D.chi = Character(G, chi_exps);
    D.mu = {chi_exps, s_exp, s_order};
    return D;
}

/// Characters of E'(F_q) of the requested order (exponent tuples), least first.
inline std::vector<std::vector<long>> characters_of_order(const EndoscopicDatum& D, long order) {
    std::vector<std::vector<long>> out;
    const auto& G = D.cover.group.group;
    for (const auto& j : G.elements())
        if (G.element_order(j) == order) out.push_back(j);
    return out;
}

// ---------------------------------------------------------------- split / non-split

struct SplitInfo {
    bool split = true;
    int symbol = 1;
    std::string evaluated;  // which function was evaluated where
};

/// Quadratic symbol of x - e at the point, divisor-adjusted at T and at infinity.
inline SplitInfo split_classify(const ClosedPoint& x, const EndoscopicDatum& D) {
    SplitInfo s;
    if (x.is_infinity()) {
        // x - e = t^-2 (1 + ...) with t = x / y
        s.evaluated = "leading unit at infinity";
        return s;
    }
    const auto& T = D.E.tower();
    FFElement v = x.rep.x - T.up(D.cover.e, x.degree);
    if (v.is_zero()) {
        // x - e = y^2 / (x - e_j)(x - e_k); the complementary factor at T is f'(e)
        v = T.up(D.cover.d, x.degree);
        s.evaluated = "f'(e) at T";
    } else {
        s.evaluated = "x - e";
    }
    s.symbol = quadratic_symbol(v);
    s.split = s.symbol == 1;
    return s;
}

// ---------------------------------------------------------------- lifting to the cover

struct Lift {
    unsigned degree = 1;  // degree of the closed point on the cover
    ECPoint image;        // one geometric point on E' over F_{q^degree}
};

/// the two (split) or one (non-split) points above x, mapped to E'
inline std::vector<Lift> lifts(const ClosedPoint& x, const EndoscopicDatum& D) {
    const auto& T = D.E.tower();
    const auto& M = D.cover;
    if (x.is_infinity()) return {{1, ECPoint::infinity()}, {1, M.P0}};
    SplitInfo s = split_classify(x, D);
    const unsigned n = s.split ? x.degree : 2 * x.degree;
    FFElement x0 = x.rep.x, y0 = x.rep.y;
    if (n != x.degree) {
        const auto& emb = T.embedding(x.degree, n);
        x0 = emb(x0);
        y0 = emb(y0);
    }
    FFElement c = T.up(M.c, n), d = T.up(M.d, n), z, w;
    std::vector<std::pair<FFElement, FFElement>> zw;
    if ((x0 - T.up(M.e, n)).is_zero()) {
        require(ff_sqrt(d, w), ErrorKind::CoverModel, "no square root of f'(e) over the expected extension");
        zw = {{T.ext(n).zero(), w}, {T.ext(n).zero(), -w}};
    } else {
        require(ff_sqrt(x0 - T.up(M.e, n), z), ErrorKind::CoverModel,
                "lift of " + x.str() + " not found over F_{q^" + std::to_string(n) + "}");
        w = y0 / z;
        zw = {{z, w}, {-z, -w}};
    }
    std::vector<Lift> out;
    for (const auto& [zz, ww] : zw) {
        require((ww * ww - ((zz * zz + c) * zz * zz + d)).is_zero(), ErrorKind::CoverModel, "lift is off the quartic");
        FFElement X = FFElement(2) * (ww + zz * zz) + c;
        ECPoint P = ECPoint::affine(X, FFElement(2) * zz * X);
        require(M.Eprime.on_curve(P, n), ErrorKind::CoverModel, "image is off the Weierstrass model");
        out.push_back({n, P});
        if (!s.split) break;  // the conjugate lies in the same Frobenius orbit
    }
    return out;
}

/// group-law sum of the Frobenius orbit of a lift, in E'(F_q)
inline ECPoint lift_trace(const EndoscopicDatum& D, const Lift& L) {
    const auto& Ep = D.cover.Eprime;
    ECPoint S, P = L.image;
    for (unsigned i = 0; i < L.degree; ++i) {
        S = Ep.add(S, P, L.degree);
        P = Ep.frobenius(P);
    }
    require(P == L.image, ErrorKind::CoverModel, "lift orbit does not close");
    if (S.inf) return S;
    const auto& T = D.E.tower();
    return ECPoint::affine(T.down(S.x, L.degree), T.down(S.y, L.degree));
}

inline CyclotomicValue mu_value(const EndoscopicDatum& D, const Lift& L) {
    auto g = D.cover.group.log(lift_trace(D, L));
    return D.chi.value(g) * CyclotomicValue::root(D.mu.s_exp * static_cast<long>(L.degree), D.mu.s_order);
}

// ---------------------------------------------------------------- Frobenius classes

struct FrobeniusClass {
    bool split = true;
    CyclotomicValue r{1};       // rotation ratio (split only)
    int a = 1;
    CyclotomicValue b{2};
    CyclotomicValue alpha{1}, beta{1};  // Frobenius eigenvalues of the induced 2-dim representation (split)
    std::optional<CyclotomicValue> lambda_sq;  // mu(Fr_y) for the non-split lift y; eigenvalues +-lambda
};

/// F_{q^n} fits the enumeration budget
inline bool extension_fits(const EndoscopicDatum& D, unsigned n) {
    unsigned long long s = 1;
    for (unsigned i = 0; i < n; ++i) {
        s *= D.E.tower().q();
        if (s > FiniteField::kBudget) return false;
    }
    return true;
}

/// with_lambda: also lift non-split points (needs F_{q^{2 deg}})
inline FrobeniusClass sigma_frobenius(const ClosedPoint& x, const EndoscopicDatum& D, bool with_lambda = true) {
    FrobeniusClass F;
    F.split = split_classify(x, D).split;
    if (!F.split && !(with_lambda && extension_fits(D, 2 * x.degree))) {
        F.a = -1;
        F.b = CyclotomicValue(0);
        return F;
    }
    auto L = lifts(x, D);
    if (F.split) {
        F.alpha = mu_value(D, L[0]);
        F.beta = mu_value(D, L[1]);
        F.r = F.alpha / F.beta;
        F.a = 1;
        F.b = F.r + F.r.inv();
    } else {
        require(L.size() == 1 && L[0].degree == 2 * x.degree, ErrorKind::CoverModel, "non-split lift has wrong degree");
        F.a = -1;
        F.b = CyclotomicValue(0);
        F.lambda_sq = mu_value(D, L[0]);
    }
    return F;
}

/// square root of a root of unity inside a cyclotomic field of twice the order
inline CyclotomicValue root_of_unity_sqrt(const CyclotomicValue& v) {
    const long n = v.order();
    for (long k = 0; k < n; ++k)
        if (CyclotomicValue::root(k, n) == v) return CyclotomicValue::root(k, 2 * n);
    fail(ErrorKind::InvalidInput, "value is not a root of unity of its stored order");
}

/// 3x3 model of an O2 element g inside SO3: diag(det g) (+) g.
inline Matrix<CyclotomicValue> adjoint_model(const Matrix<CyclotomicValue>& g) {
    CyclotomicValue det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    Matrix<CyclotomicValue> M(3, 3);
    M(0, 0) = det;
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) M(i + 1, j + 1) = g(i, j);
    return M;
}

inline Matrix<CyclotomicValue> o2_matrix(const FrobeniusClass& F) {
    if (F.split) return Matrix<CyclotomicValue>{{F.r, CyclotomicValue(0)}, {CyclotomicValue(0), F.r.inv()}};
    return Matrix<CyclotomicValue>{{CyclotomicValue(0), CyclotomicValue(1)}, {CyclotomicValue(1), CyclotomicValue(0)}};
}

struct SigmaPrimeCheck {
    int nu = 1;                       // (-1)^deg x
    CyclotomicValue formula;          // a + nu b
    CyclotomicValue adjoint_trace;    // Tr(sigma'(Fr_x)) in the 3-dim model
    CyclotomicValue sigma_trace;      // Tr(sigma(Fr_x)) in the same model
    bool ok = false;
    bool shape_ok = false;            // a in {+-1}, b = 0 when a = -1, b real
};

inline SigmaPrimeCheck sigma_prime_check(const ClosedPoint& x, const FrobeniusClass& F) {
    SigmaPrimeCheck R;
    R.nu = (x.degree % 2) ? -1 : 1;
    R.formula = CyclotomicValue(F.a) + CyclotomicValue(R.nu) * F.b;
    auto g = o2_matrix(F);
    R.sigma_trace = adjoint_model(g).trace();
    R.adjoint_trace = adjoint_model(CyclotomicValue(R.nu) * g).trace();
    R.ok = R.formula == R.adjoint_trace;
    R.shape_ok = (F.a == 1 || F.a == -1) && (F.a == 1 || F.b.is_zero()) && F.b == F.b.conj() && (F.a == 1) == F.split;
    return R;
}

// ---------------------------------------------------------------- reciprocity

struct ConsistencyRecord {
    std::string function;
    DivisorFF div;
    int kappa_product = 1;
    CyclotomicValue mu_product{1};
    bool ok = false;
};

/// pi^* of a divisor, evaluated through mu: prod over x of prod over lifts mu(Fr_y)^n_x
inline CyclotomicValue mu_on_pullback(const EndoscopicDatum& D, const Census& C, const DivisorFF& div) {
    CyclotomicValue acc(1);
    for (const auto& [k, n] : div.terms())
        for (const auto& L : lifts(C.at(k), D)) acc = acc * mu_value(D, L).pow(n);
    return acc;
}

inline int kappa_product(const EndoscopicDatum& D, const Census& C, const DivisorFF& div) {
    int s = 1;
    for (const auto& [k, n] : div.terms())
        if (!split_classify(C.at(k), D).split && (n % 2)) s = -s;
    return s;
}

/// sum of multiplicities over non-split points
inline long nonsplit_weight(const EndoscopicDatum& D, const Census& C, const DivisorFF& div) {
    long w = 0;
    for (const auto& [k, n] : div.terms())
        if (!split_classify(C.at(k), D).split) w += n;
    return w;
}

inline std::vector<ConsistencyRecord> character_consistency(const EndoscopicDatum& D, const Census& C,
                                                            const std::vector<RationalFunctionFF>& samples) {
    std::vector<ConsistencyRecord> out;
    for (const auto& f : samples) {
        ConsistencyRecord r;
        r.function = f.str();
        r.div = divisor(D.E, C, f);
        require(is_principal(D.E, C, r.div), ErrorKind::InternalConsistency,
                "divisor of " + r.function + " is not principal: " + r.div.str());
        r.kappa_product = kappa_product(D, C, r.div);
        r.mu_product = mu_on_pullback(D, C, r.div);
        r.ok = r.kappa_product == 1 && r.mu_product == CyclotomicValue(1);
        out.push_back(std::move(r));
    }
    return out;
}

struct DeltaParity {
    DivisorFF delta;
    long weight = 0;
    bool even = true;
};

/// <div(g dx/y)> over non-split points; dx/y has no zeros or poles on an elliptic curve
inline DeltaParity delta_parity(const EndoscopicDatum& D, const Census& C, const RationalFunctionFF& g) {
    DeltaParity R;
    R.delta = divisor(D.E, C, g);
    R.weight = nonsplit_weight(D, C, R.delta);
    R.even = R.weight % 2 == 0;
    require(R.even, ErrorKind::InternalConsistency, "odd non-split weight for a differential: " + R.delta.str());
    return R;
}

/// every split point of the census has r in {+1, -1}: the image may lie in Z2 x Z2
inline bool image_in_klein_four(const EndoscopicDatum& D, const Census& C) {
    for (const auto& x : C.points) {
        auto F = sigma_frobenius(x, D);
        if (F.split && !(F.r == CyclotomicValue(1) || F.r == CyclotomicValue(-1))) return false;
    }
    return true;
}

}  // namespace endo::ff
