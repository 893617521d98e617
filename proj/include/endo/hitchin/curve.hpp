#pragma once

#include <array>
#include <optional>
#include <string>
#include <type_traits>

#include "endo/algebra/poly.hpp"
#include "endo/algebra/rational.hpp"
#include "endo/algebra/roots.hpp"
#include "endo/error.hpp"

namespace endo::hitchin {

/// y^2 = x^3 + a x + b with its three roots and the ramification scale sigma0.
struct CurveParams {
    Rational a, b;
    Complex sigma0{1, 0};
    std::array<Complex, 3> e{};
    std::optional<std::array<Rational, 3>> exact_roots;

    Poly<Rational> f() const { return Poly<Rational>{b, a, Rational(0), Rational(1)}; }
    Rational disc() const { return -4 * a * a * a - 27 * b * b; }
    Real max_root() const { return std::max({std::abs(e[0]), std::abs(e[1]), std::abs(e[2])}); }

    Complex f_at(Complex x) const { return x * x * x + to_real(a) * x + to_real(b); }
    Complex fprime_at(Complex x) const { return 3.0L * x * x + to_real(a); }

    static CurveParams make(const Rational& a, const Rational& b, Complex sigma0 = {1, 0});
};

namespace detail {

// continued-fraction convergents of x with denominator <= 10^6, checked exactly
inline std::optional<Rational> exact_rational_root(const Poly<Rational>& f, Real x) {
    BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Real r = x;
    for (int it = 0; it < 40; ++it) {
        Real fl = std::floor(r);
        BigInt ai = static_cast<long long>(fl);
        BigInt p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > 1000000) break;
        Rational cand(p2, q2);
        if (f(cand) == 0) return cand;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        Real frac = r - fl;
        if (std::abs(frac) < 1e-18L) break;
        r = 1 / frac;
    }
    return std::nullopt;
}

}  // namespace detail

inline CurveParams CurveParams::make(const Rational& a, const Rational& b, Complex sigma0) {
    CurveParams c;
    c.a = a;
    c.b = b;
    c.sigma0 = sigma0;
    require(c.disc() != 0, ErrorKind::InvalidCurve,
            "x^3 + (" + a.str() + ")x + (" + b.str() + ") has a repeated root");
    require(std::abs(sigma0) > 0, ErrorKind::InvalidInput, "sigma0 must be nonzero");
    auto r = poly_roots_complex(c.f());
    for (int i = 0; i < 3; ++i) c.e[i] = r[i];
    std::array<Rational, 3> ex;
    bool all = true;
    for (int i = 0; i < 3 && all; ++i) {
        if (std::abs(r[i].imag()) > 1e-12L * (1 + std::abs(r[i]))) {
            all = false;
            break;
        }
        auto q = detail::exact_rational_root(c.f(), r[i].real());
        if (!q) all = false;
        else ex[i] = *q;
    }
    if (all) {
        c.exact_roots = ex;
        for (int i = 0; i < 3; ++i) c.e[i] = to_complex(ex[i]);
    }
    return c;
}

/// Parses "3/2", "-1", "i", "2i", "1+2i", "-1/2-3/4i" into a complex number.
inline Complex parse_complex(std::string s) {
    std::string t;
    for (char ch : s)
        if (ch != ' ') t += ch;
    require(!t.empty(), ErrorKind::InvalidInput, "empty complex literal");
    if (t.back() != 'i') return to_complex(parse_rational(t));
    t.pop_back();
    // split real and imaginary parts at the last sign that is not leading
    size_t cut = std::string::npos;
    for (size_t k = t.size(); k-- > 1;)
        if (t[k] == '+' || t[k] == '-') {
            cut = k;
            break;
        }
    std::string re = cut == std::string::npos ? "" : t.substr(0, cut);
    std::string im = cut == std::string::npos ? t : t.substr(cut);
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    if (!im.empty() && im[0] == '+') im = im.substr(1);
    Real rr = re.empty() ? 0 : to_real(parse_rational(re));
    return Complex(rr, to_real(parse_rational(im)));
}

/// Q[s,t]/(f(s), t^2 + s t + s^2 + a): the universal splitting algebra of f,
/// with e1 = s, e2 = t, e3 = -s - t. Identities here hold for every ordering of roots.
class SplitElem {
public:
    SplitElem() { c_.fill(Rational(0)); }
    SplitElem(int k) : SplitElem() { c_[0] = k; }
    SplitElem(const Rational& r) : SplitElem() { c_[0] = r; }

    static SplitElem s(const CurveParams& C) { return basis(C, 1, 0); }
    static SplitElem t(const CurveParams& C) { return basis(C, 0, 1); }
    /// e_i, i in {0,1,2}
    static SplitElem root(const CurveParams& C, int i) {
        if (i == 0) return s(C);
        if (i == 1) return t(C);
        return -s(C) - t(C);
    }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    friend SplitElem operator+(const SplitElem& x, const SplitElem& y) {
        SplitElem r = x;
        r.take_ctx(y);
        for (size_t k = 0; k < 6; ++k) r.c_[k] += y.c_[k];
        return r;
    }
    SplitElem operator-() const {
        SplitElem r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend SplitElem operator-(const SplitElem& x, const SplitElem& y) { return x + (-y); }
    friend SplitElem operator*(const SplitElem& x, const SplitElem& y) {
        // dense product in s^i t^j, i < 10, j < 4, then reduce
        Rational d[10][4];
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 4; ++j) d[i][j] = 0;
        for (int i1 = 0; i1 < 3; ++i1)
            for (int j1 = 0; j1 < 2; ++j1) {
                const Rational& u = x.c_[idx(i1, j1)];
                if (u == 0) continue;
                for (int i2 = 0; i2 < 3; ++i2)
                    for (int j2 = 0; j2 < 2; ++j2) {
                        const Rational& v = y.c_[idx(i2, j2)];
                        if (v != 0) d[i1 + i2][j1 + j2] += u * v;
                    }
            }
        SplitElem r;
        r.a_ = x.a_ ? x.a_ : y.a_;
        r.b_ = x.a_ ? x.b_ : y.b_;
        const Rational A = r.a_ ? *r.a_ : Rational(0), B = r.a_ ? *r.b_ : Rational(0);
        // t^2 = -s t - s^2 - a
        for (int j = 3; j >= 2; --j)
            for (int i = 0; i < 8; ++i) {
                Rational c = d[i][j];
                if (c == 0) continue;
                d[i][j] = 0;
                d[i + 1][j - 1] -= c;
                d[i + 2][j - 2] -= c;
                d[i][j - 2] -= A * c;
            }
        // s^3 = -a s - b
        for (int i = 9; i >= 3; --i)
            for (int j = 0; j < 2; ++j) {
                Rational c = d[i][j];
                if (c == 0) continue;
                d[i][j] = 0;
                d[i - 2][j] -= A * c;
                d[i - 3][j] -= B * c;
            }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 2; ++j) r.c_[idx(i, j)] = d[i][j];
        return r;
    }

    friend bool operator==(const SplitElem& x, const SplitElem& y) { return x.c_ == y.c_; }
    friend bool operator!=(const SplitElem& x, const SplitElem& y) { return !(x == y); }

    /// numeric value with s = e1, t = e2
    Complex eval(const CurveParams& C) const {
        Complex acc = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 2; ++j)
                if (c_[idx(i, j)] != 0) acc += to_real(c_[idx(i, j)]) * std::pow(C.e[0], i) * std::pow(C.e[1], j);
        return acc;
    }

private:
    static size_t idx(int i, int j) { return static_cast<size_t>(i + 3 * j); }
    static SplitElem basis(const CurveParams& C, int i, int j) {
        SplitElem r;
        r.a_ = C.a;
        r.b_ = C.b;
        r.c_[idx(i, j)] = 1;
        return r;
    }
    void take_ctx(const SplitElem& o) {
        if (!a_ && o.a_) {
            a_ = o.a_;
            b_ = o.b_;
        }
    }

    std::array<Rational, 6> c_;
    std::optional<Rational> a_, b_;
};

using SplitPoly = Poly<SplitElem>;

template <class K>
K from_rational(const Rational& r) {
    if constexpr (std::is_same_v<K, Complex>) return to_complex(r);
    else return K(r);
}

/// f(u) with coefficients in any ring built from rationals
template <class K>
Poly<K> curve_f(const CurveParams& C) {
    return Poly<K>{from_rational<K>(C.b), from_rational<K>(C.a), K(0), K(1)};
}

/// g_w(u) = -(2u + w) f(u) + f'(u)^2 / 4, so that the surface is rho^2 = g_w(u)
template <class K>
Poly<K> fiber_quartic(const CurveParams& C, const K& w) {
    Poly<K> f = curve_f<K>(C);
    Poly<K> fp = f.derivative();
    Poly<K> lin{w, K(2)};
    return -(lin * f) + from_rational<K>(Rational(1, 4)) * fp * fp;
}

}  // namespace endo::hitchin
