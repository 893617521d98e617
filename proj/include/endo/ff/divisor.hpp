#pragma once

#include <climits>
#include <map>
#include <string>
#include <vector>

#include "endo/ff/closed_points.hpp"

namespace endo::ff {

/// A(x) + B(x) y with coefficients in F_q.
struct CurveFactor {
    FFPoly A, B;
    std::string name;
};

/// Product of factors with integer exponents, a rational function on E.
struct RationalFunctionFF {
    std::vector<std::pair<CurveFactor, int>> factors;

    static RationalFunctionFF one() { return {}; }
    static RationalFunctionFF of(CurveFactor f, int e = 1) {
        RationalFunctionFF r;
        r.factors.emplace_back(std::move(f), e);
        return r;
    }
    friend RationalFunctionFF operator*(RationalFunctionFF a, const RationalFunctionFF& b) {
        for (const auto& f : b.factors) a.factors.push_back(f);
        return a;
    }
    RationalFunctionFF inverse() const {
        RationalFunctionFF r = *this;
        for (auto& f : r.factors) f.second = -f.second;
        return r;
    }
    std::string str() const {
        if (factors.empty()) return "1";
        std::string s;
        for (const auto& [f, e] : factors) {
            if (!s.empty()) s += "*";
            s += "(" + f.name + ")";
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }
};

/// x - c
inline CurveFactor x_minus(const WCurve& E, long long c) {
    const auto& F = E.tower().base();
    return {FFPoly{-F.from_int(c), F.one()}, FFPoly{}, "x-" + std::to_string(c)};
}
/// y
inline CurveFactor y_factor(const WCurve& E) {
    const auto& F = E.tower().base();
    return {FFPoly{}, FFPoly{F.one()}, "y"};
}
/// y - l x - n
inline CurveFactor line(const WCurve& E, long long l, long long n) {
    const auto& F = E.tower().base();
    return {FFPoly{-F.from_int(n), -F.from_int(l)}, FFPoly{F.one()},
            "y-" + std::to_string(l) + "x-" + std::to_string(n)};
}
/// y (x - c)
inline CurveFactor y_times_x_minus(const WCurve& E, long long c) {
    const auto& F = E.tower().base();
    return {FFPoly{}, FFPoly{-F.from_int(c), F.one()}, "y*(x-" + std::to_string(c) + ")"};
}

class DivisorFF {
public:
    const std::map<PointKey, long>& terms() const { return t_; }
    long mult(const PointKey& k) const {
        auto it = t_.find(k);
        return it == t_.end() ? 0 : it->second;
    }
    void add(const PointKey& k, long n) {
        if (n == 0) return;
        long& v = t_[k];
        v += n;
        if (v == 0) t_.erase(k);
    }
    friend DivisorFF operator+(DivisorFF a, const DivisorFF& b) {
        for (const auto& [k, n] : b.t_) a.add(k, n);
        return a;
    }
    DivisorFF operator-() const {
        DivisorFF r;
        for (const auto& [k, n] : t_) r.add(k, -n);
        return r;
    }
    friend DivisorFF operator-(const DivisorFF& a, const DivisorFF& b) { return a + (-b); }
    DivisorFF scaled(long s) const {
        DivisorFF r;
        for (const auto& [k, n] : t_) r.add(k, s * n);
        return r;
    }
    long degree() const {
        long d = 0;
        for (const auto& [k, n] : t_) d += static_cast<long>(k.degree) * n;
        return d;
    }
    bool empty() const { return t_.empty(); }
    friend bool operator==(const DivisorFF& a, const DivisorFF& b) { return a.t_ == b.t_; }
    std::string str() const {
        if (t_.empty()) return "0";
        std::string s;
        for (const auto& [k, n] : t_) {
            if (!s.empty()) s += " + ";
            s += (n == 1 ? "" : std::to_string(n) + "*") + k.str();
        }
        return s;
    }

private:
    std::map<PointKey, long> t_;
};

namespace detail {

constexpr int kInfOrd = INT_MAX / 4;

// multiplicity of r as a root of f (f in F_{q^n}[x])
inline int root_mult(FFPoly f, const FFElement& r) {
    if (f.is_zero()) return kInfOrd;
    int k = 0;
    while (f.degree() >= 1 && f.eval(r).is_zero()) {
        f = divmod(f, FFPoly::linear_root(r)).first;
        ++k;
    }
    return k;
}

inline FFPoly strip_root(FFPoly f, const FFElement& r, int k) {
    for (int i = 0; i < k && !f.is_zero(); ++i) f = divmod(f, FFPoly::linear_root(r)).first;
    return f;
}

}  // namespace detail

/// order of vanishing of A + B y at one closed point
inline int factor_order(const WCurve& E, const CurveFactor& h, const ClosedPoint& c) {
    require(!(h.A.is_zero() && h.B.is_zero()), ErrorKind::InvalidInput, "zero function has no divisor");
    using detail::kInfOrd;
    if (c.is_infinity()) {
        // ord x = -2, ord y = -3; the two orders have different parities
        int oa = h.A.is_zero() ? kInfOrd : -2 * h.A.degree();
        int ob = h.B.is_zero() ? kInfOrd : -2 * h.B.degree() - 3;
        return std::min(oa, ob);
    }
    const unsigned n = c.degree;
    const auto& T = E.tower();
    FFPoly A = T.up(h.A, n), B = T.up(h.B, n);
    const FFElement x0 = c.rep.x, y0 = c.rep.y;
    int va = detail::root_mult(A, x0), vb = detail::root_mult(B, x0);
    if (y0.is_zero()) {
        // 2-torsion: y is a uniformizer and x - x0 has order 2
        int oa = va == kInfOrd ? kInfOrd : 2 * va;
        int ob = vb == kInfOrd ? kInfOrd : 1 + 2 * vb;
        return std::min(oa, ob);
    }
    int k = std::min(va, vb);
    A = detail::strip_root(A, x0, k);
    B = detail::strip_root(B, x0, k);
    FFElement val = A.eval(x0) + B.eval(x0) * y0;
    if (!val.is_zero()) return k;
    // all remaining vanishing sits at this point, not at its negative
    FFPoly Nrm = A * A - B * B * T.up(E.cubic(), n);
    return k + detail::root_mult(Nrm, x0);
}

/// div(f) restricted to the census; throws if the support leaves the census
inline DivisorFF divisor(const WCurve& E, const Census& C, const RationalFunctionFF& f) {
    DivisorFF D;
    for (const auto& [h, e] : f.factors) {
        DivisorFF Dh;
        for (const auto& c : C.points) {
            int o = factor_order(E, h, c);
            if (o) Dh.add(c.key, o);
        }
        require(Dh.degree() == 0, ErrorKind::Resource,
                "divisor of " + h.name + " has support beyond the degree-" + std::to_string(C.N) + " census");
        D = D + Dh.scaled(e);
    }
    return D;
}

/// sum_x n_x trace(x) in E(F_q)
inline ECPoint divisor_sum(const WCurve& E, const Census& C, const DivisorFF& D) {
    ECPoint S;
    for (const auto& [k, n] : D.terms()) S = E.add(S, E.mul(n, trace_point(E, C.at(k)), 1), 1);
    return S;
}

/// degree 0 and sum O (Abel's theorem on an elliptic curve)
inline bool is_principal(const WCurve& E, const Census& C, const DivisorFF& D) {
    return D.degree() == 0 && divisor_sum(E, C, D).inf;
}

}  // namespace endo::ff
