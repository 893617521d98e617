#pragma once

#include <algorithm>
#include <initializer_list>
#include <tuple>
#include <utility>
#include <vector>

#include "endo/error.hpp"

namespace endo {

/// Dense univariate polynomial, lowest degree first.
///
/// K needs ring operations and construction from int. Division, gcd and
/// resultants additionally need K to be a field.
template <class K>
class Poly {
public:
    using coeff_type = K;

    Poly() = default;
    Poly(std::initializer_list<K> c) : c_(c) { trim(); }
    explicit Poly(std::vector<K> c) : c_(std::move(c)) { trim(); }

    static Poly constant(const K& c) { return Poly(std::vector<K>{c}); }
    static Poly monomial(const K& c, int d) {
        std::vector<K> v(static_cast<size_t>(d) + 1, K(0));
        v[static_cast<size_t>(d)] = c;
        return Poly(std::move(v));
    }
    // x - r
    static Poly linear_root(const K& r) { return Poly(std::vector<K>{-r, K(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(int i) const {
        if (i < 0 || i > degree()) return K(0);
        return c_[static_cast<size_t>(i)];
    }
    const K& lead() const {
        require(!c_.empty(), ErrorKind::InvalidInput, "leading coefficient of zero polynomial");
        return c_.back();
    }

    template <class T>
    T eval(const T& x) const {
        if (c_.empty()) return T(0) * x;
        T acc = T(c_.back()) + T(0) * x;
        for (int i = degree() - 1; i >= 0; --i) acc = acc * x + T(c_[static_cast<size_t>(i)]);
        return acc;
    }
    K operator()(const K& x) const { return eval<K>(x); }

    Poly derivative() const {
        if (degree() < 1) return Poly();
        std::vector<K> d(c_.size() - 1, K(0));
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * K(static_cast<int>(i));
        return Poly(std::move(d));
    }

    Poly compose(const Poly& g) const {
        Poly acc;
        for (int i = degree(); i >= 0; --i) acc = acc * g + Poly::constant(c_[static_cast<size_t>(i)]);
        return acc;
    }

    Poly pow(unsigned e) const {
        Poly r = Poly::constant(K(1));
        Poly b = *this;
        while (e) {
            if (e & 1u) r = r * b;
            b = b * b;
            e >>= 1u;
        }
        return r;
    }

    Poly operator-() const {
        std::vector<K> v = c_;
        for (auto& x : v) x = -x;
        return Poly(std::move(v));
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<K> v(std::max(a.c_.size(), b.c_.size()), K(0));
        for (size_t i = 0; i < a.c_.size(); ++i) v[i] = v[i] + a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) v[i] = v[i] + b.c_[i];
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<K> v(a.c_.size() + b.c_.size() - 1, K(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
        return Poly(std::move(v));
    }
    friend Poly operator*(const K& s, const Poly& a) { return Poly::constant(s) * a; }
    friend Poly operator*(const Poly& a, const K& s) { return Poly::constant(s) * a; }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    void trim() {
        while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
    }
    std::vector<K> c_;
};

template <class T, class K, class F>
Poly<T> map_coeffs(const Poly<K>& p, F&& conv) {
    std::vector<T> v;
    v.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) v.push_back(conv(c));
    return Poly<T>(std::move(v));
}

template <class K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& a, const Poly<K>& b) {
    require(!b.is_zero(), ErrorKind::InvalidInput, "polynomial division by zero");
    std::vector<K> r = a.coeffs();
    int db = b.degree();
    if (a.degree() < db) return {Poly<K>(), a};
    std::vector<K> q(static_cast<size_t>(a.degree() - db) + 1, K(0));
    K inv_lead = K(1) / b.lead();
    for (int i = a.degree(); i >= db; --i) {
        K c = r[static_cast<size_t>(i)] * inv_lead;
        q[static_cast<size_t>(i - db)] = c;
        if (c == K(0)) continue;
        for (int j = 0; j <= db; ++j)
            r[static_cast<size_t>(i - db + j)] = r[static_cast<size_t>(i - db + j)] - c * b.coeffs()[static_cast<size_t>(j)];
    }
    r.resize(static_cast<size_t>(db));
    return {Poly<K>(std::move(q)), Poly<K>(std::move(r))};
}

template <class K>
Poly<K> operator%(const Poly<K>& a, const Poly<K>& b) { return divmod(a, b).second; }

template <class K>
Poly<K> make_monic(const Poly<K>& a) {
    if (a.is_zero()) return a;
    return (K(1) / a.lead()) * a;
}

template <class K>
Poly<K> gcd(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        Poly<K> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

/// Returns (g, s, t) with s*a + t*b = g, g monic.
template <class K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> ext_gcd(const Poly<K>& a, const Poly<K>& b) {
    Poly<K> r0 = a, r1 = b;
    Poly<K> s0 = Poly<K>::constant(K(1)), s1;
    Poly<K> t0, t1 = Poly<K>::constant(K(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<K> s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly<K> t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    K inv = K(1) / r0.lead();
    return {inv * r0, inv * s0, inv * t0};
}

template <class K>
Poly<K> powmod(Poly<K> base, unsigned long long e, const Poly<K>& mod) {
    Poly<K> r = Poly<K>::constant(K(1)) % mod;
    base = base % mod;
    while (e) {
        if (e & 1ull) r = (r * base) % mod;
        e >>= 1ull;
        if (e) base = (base * base) % mod;
    }
    return r;
}

template <class K>
K resultant(const Poly<K>& a, const Poly<K>& b) {
    if (a.is_zero() || b.is_zero()) return K(0);
    int m = a.degree(), n = b.degree();
    auto kpow = [](K x, int e) {
        K r(1);
        for (int i = 0; i < e; ++i) r = r * x;
        return r;
    };
    if (n == 0) return kpow(b.lead(), m);
    if (m == 0) return kpow(a.lead(), n);
    Poly<K> r = a % b;
    if (r.is_zero()) return K(0);
    K sign = ((m * n) % 2 == 0) ? K(1) : K(-1);
    return sign * kpow(b.lead(), m - r.degree()) * resultant(b, r);
}

template <class K>
K discriminant(const Poly<K>& f) {
    require(!f.is_zero(), ErrorKind::InvalidInput, "discriminant of the zero polynomial");
    int n = f.degree();
    require(n >= 1, ErrorKind::InvalidInput, "discriminant needs degree >= 1");
    K sign = ((n * (n - 1) / 2) % 2 == 0) ? K(1) : K(-1);
    return sign * resultant(f, f.derivative()) / f.lead();
}

}  // namespace endo
