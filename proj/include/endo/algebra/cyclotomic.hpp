#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "endo/algebra/poly.hpp"
#include "endo/algebra/rational.hpp"

namespace endo {

namespace cyclo {

inline std::vector<long long> exact_div(std::vector<long long> num, const std::vector<long long>& den) {
    const long dn = static_cast<long>(den.size()) - 1;
    std::vector<long long> q(num.size() - den.size() + 1, 0);
    for (long i = static_cast<long>(num.size()) - 1; i >= dn; --i) {
        long long c = num[static_cast<size_t>(i)];
        q[static_cast<size_t>(i - dn)] = c;
        for (long j = 0; j <= dn; ++j) num[static_cast<size_t>(i - dn + j)] -= c * den[static_cast<size_t>(j)];
    }
    return q;
}

/// n-th cyclotomic polynomial, integer coefficients, lowest first.
inline const std::vector<long long>& phi_poly(long n) {
    static std::mutex mu;
    static std::map<long, std::vector<long long>> cache;
    std::lock_guard<std::mutex> lock(mu);
    for (long d = 1; d <= n; ++d) {
        if (n % d || cache.count(d)) continue;
        std::vector<long long> num(static_cast<size_t>(d) + 1, 0);
        num[0] = -1;
        num[static_cast<size_t>(d)] = 1;
        for (long e = 1; e < d; ++e)
            if (d % e == 0) num = exact_div(num, cache.at(e));
        cache[d] = num;
    }
    return cache.at(n);
}

inline long lcm(long a, long b) { return a / std::gcd(a, b) * b; }

}  // namespace cyclo

/// Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^(phi(n)-1).
class CyclotomicValue {
public:
    CyclotomicValue() : n_(1), c_{Rational(0)} {}
    CyclotomicValue(int k) : n_(1), c_{Rational(k)} {}
    CyclotomicValue(const Rational& r) : n_(1), c_{r} {}

    /// zeta_n^k
    static CyclotomicValue root(long k, long n) {
        require(n >= 1, ErrorKind::InvalidInput, "root of unity order must be positive");
        std::vector<Rational> dense(static_cast<size_t>(n), Rational(0));
        dense[static_cast<size_t>(((k % n) + n) % n)] = 1;
        return CyclotomicValue(n, std::move(dense));
    }

    /// sum_k dense[k] zeta_n^k
    static CyclotomicValue from_dense(long n, std::vector<Rational> dense) {
        require(static_cast<long>(dense.size()) == n, ErrorKind::InvalidInput, "dense vector length must equal the order");
        return CyclotomicValue(n, std::move(dense));
    }

    /// (1/den) sum_k dense[k] zeta_n^k, reduced in machine integers first
    static CyclotomicValue from_integer_dense(long n, std::vector<long long> dense, long long den = 1) {
        require(static_cast<long>(dense.size()) == n, ErrorKind::InvalidInput, "dense vector length must equal the order");
        const auto& ph = cyclo::phi_poly(n);
        const size_t d = ph.size() - 1;
        for (size_t i = dense.size(); i-- > d;) {
            long long c = dense[i];
            if (!c) continue;
            for (size_t j = 0; j <= d; ++j)
                if (ph[j]) dense[i - d + j] -= c * ph[j];
        }
        CyclotomicValue r;
        r.n_ = n;
        r.c_.assign(d, Rational(0));
        for (size_t i = 0; i < d; ++i)
            if (dense[i]) r.c_[i] = Rational(dense[i], den);
        return r;
    }

    long order() const { return n_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    CyclotomicValue lift(long N) const {
        require(N % n_ == 0, ErrorKind::InvalidInput, "cyclotomic lift to a non-multiple order");
        if (N == n_) return *this;
        long s = N / n_;
        std::vector<Rational> dense(static_cast<size_t>(N), Rational(0));
        for (size_t i = 0; i < c_.size(); ++i) dense[(i * static_cast<size_t>(s)) % static_cast<size_t>(N)] += c_[i];
        return CyclotomicValue(N, std::move(dense));
    }

    friend CyclotomicValue operator+(const CyclotomicValue& a, const CyclotomicValue& b) {
        long N = cyclo::lcm(a.n_, b.n_);
        CyclotomicValue x = a.lift(N), y = b.lift(N);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    CyclotomicValue operator-() const {
        CyclotomicValue r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend CyclotomicValue operator-(const CyclotomicValue& a, const CyclotomicValue& b) { return a + (-b); }
    friend CyclotomicValue operator*(const CyclotomicValue& a, const CyclotomicValue& b) {
        long N = cyclo::lcm(a.n_, b.n_);
        CyclotomicValue x = a.lift(N), y = b.lift(N);
        std::vector<Rational> dense(static_cast<size_t>(N), Rational(0));
        for (size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] == 0) continue;
            for (size_t j = 0; j < y.c_.size(); ++j) {
                if (y.c_[j] == 0) continue;
                dense[(i + j) % static_cast<size_t>(N)] += x.c_[i] * y.c_[j];
            }
        }
        return CyclotomicValue(N, std::move(dense));
    }
    CyclotomicValue inv() const {
        require(!is_zero(), ErrorKind::InvalidInput, "inverse of zero cyclotomic value");
        if (n_ <= 2) return CyclotomicValue(Rational(1) / c_[0]);
        const auto& ph = cyclo::phi_poly(n_);
        std::vector<Rational> pc(ph.begin(), ph.end());
        Poly<Rational> P(pc), A(c_);
        auto [g, s, t] = ext_gcd(A, P);
        require(g.degree() == 0, ErrorKind::InvalidInput, "cyclotomic value not invertible");
        std::vector<Rational> dense(static_cast<size_t>(n_), Rational(0));
        for (int i = 0; i <= s.degree(); ++i) dense[static_cast<size_t>(i)] = s.coeff(i);
        return CyclotomicValue(n_, std::move(dense));
    }
    friend CyclotomicValue operator/(const CyclotomicValue& a, const CyclotomicValue& b) { return a * b.inv(); }
    CyclotomicValue& operator+=(const CyclotomicValue& o) { return *this = *this + o; }
    CyclotomicValue& operator-=(const CyclotomicValue& o) { return *this = *this - o; }
    CyclotomicValue& operator*=(const CyclotomicValue& o) { return *this = *this * o; }

    CyclotomicValue pow(long e) const {
        if (e < 0) return inv().pow(-e);
        CyclotomicValue r(1), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    /// zeta -> zeta^-1
    CyclotomicValue conj() const {
        std::vector<Rational> dense(static_cast<size_t>(n_), Rational(0));
        for (size_t i = 0; i < c_.size(); ++i) dense[(static_cast<size_t>(n_) - i) % static_cast<size_t>(n_)] += c_[i];
        return CyclotomicValue(n_, std::move(dense));
    }

    friend bool operator==(const CyclotomicValue& a, const CyclotomicValue& b) { return (a - b).is_zero(); }
    friend bool operator!=(const CyclotomicValue& a, const CyclotomicValue& b) { return !(a == b); }

    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    Rational rational_value() const {
        require(is_rational(), ErrorKind::InvalidInput, "cyclotomic value is not rational");
        return c_[0];
    }

    Complex to_complex() const {
        const Real pi = std::acos(-1.0L);
        Complex acc = 0;
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) acc += to_real(c_[i]) * std::polar<Real>(1, 2 * pi * static_cast<Real>(i) / n_);
        return acc;
    }

    std::string str() const {
        if (is_rational()) return rational_value().str();
        std::string s;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += "(" + c_[i].str() + ")";
            if (i > 0) s += "*z" + std::to_string(n_) + "^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

private:
    CyclotomicValue(long n, std::vector<Rational> dense) : n_(n) { reduce(std::move(dense)); }

    void reduce(std::vector<Rational> dense) {
        if (n_ == 1) {
            Rational s = 0;
            for (auto& x : dense) s += x;
            c_ = {s};
            return;
        }
        const auto& ph = cyclo::phi_poly(n_);
        const size_t d = ph.size() - 1;
        for (size_t i = dense.size(); i-- > d;) {
            if (dense[i] == 0) continue;
            Rational c = dense[i];
            for (size_t j = 0; j <= d; ++j)
                if (ph[j]) dense[i - d + j] -= c * ph[j];
        }
        dense.resize(d);
        c_ = std::move(dense);
    }

    long n_;
    std::vector<Rational> c_;
};

}  // namespace endo
