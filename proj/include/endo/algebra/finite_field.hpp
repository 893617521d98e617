#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "endo/error.hpp"

namespace endo {

namespace ffdetail {

using IPoly = std::vector<long long>;  // coefficients mod p, lowest first

inline void trim(IPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline long long inv_mod(long long a, long long p) {
    long long t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
    while (nr) {
        long long q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    return ((t % p) + p) % p;
}

inline IPoly mod(IPoly a, const IPoly& m, long long p) {
    trim(a);
    const int dm = static_cast<int>(m.size()) - 1;
    long long il = inv_mod(m.back(), p);
    for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
        long long c = a[static_cast<size_t>(i)] * il % p;
        if (!c) continue;
        for (int j = 0; j <= dm; ++j) {
            auto& x = a[static_cast<size_t>(i - dm + j)];
            x = ((x - c * m[static_cast<size_t>(j)]) % p + p) % p;
        }
    }
    trim(a);
    return a;
}

inline IPoly mulmod(const IPoly& a, const IPoly& b, const IPoly& m, long long p) {
    if (a.empty() || b.empty()) return {};
    IPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return mod(std::move(r), m, p);
}

inline IPoly powmod(IPoly b, unsigned long long e, const IPoly& m, long long p) {
    IPoly r = mod({1}, m, p);
    b = mod(std::move(b), m, p);
    while (e) {
        if (e & 1ull) r = mulmod(r, b, m, p);
        e >>= 1ull;
        if (e) b = mulmod(b, b, m, p);
    }
    return r;
}

inline IPoly sub(IPoly a, const IPoly& b, long long p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
    trim(a);
    return a;
}

inline IPoly gcd(IPoly a, IPoly b, long long p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        IPoly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline bool is_prime(unsigned long long n) {
    if (n < 2) return false;
    for (unsigned long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<unsigned long long> prime_factors(unsigned long long n) {
    std::vector<unsigned long long> f;
    for (unsigned long long d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        f.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) f.push_back(n);
    return f;
}

// Rabin's test: x^(p^m) = x mod g and gcd(x^(p^(m/r)) - x, g) = 1 for primes r | m.
inline bool irreducible(const IPoly& g, long long p) {
    const int m = static_cast<int>(g.size()) - 1;
    if (m == 1) return true;
    auto xpow = [&](int k) {
        IPoly x{0, 1};
        IPoly r = mod(x, g, p);
        for (int i = 0; i < k; ++i) r = powmod(r, static_cast<unsigned long long>(p), g, p);
        return r;
    };
    IPoly x = mod({0, 1}, g, p);
    if (sub(xpow(m), x, p).size() != 0) return false;
    for (auto r : prime_factors(static_cast<unsigned long long>(m))) {
        IPoly h = sub(xpow(m / static_cast<int>(r)), x, p);
        IPoly d = gcd(g, h, p);
        if (d.size() != 1) return false;
    }
    return true;
}

}  // namespace ffdetail

struct FieldData {
    uint32_t p = 0, m = 0, q = 0;
    std::vector<uint32_t> modulus;  // monic, degree m
    std::vector<uint32_t> pw;       // p^i
    std::vector<uint32_t> exp_;     // exp_[i] = g^i, i < q-1
    std::vector<uint32_t> log_;     // log_[a] for a != 0
    uint32_t generator = 0;

    uint32_t add(uint32_t a, uint32_t b) const {
        if (m == 1) return (a + b) % p;
        uint32_t r = 0;
        for (uint32_t i = 0; i < m; ++i) {
            uint32_t da = a % p, db = b % p;
            r += ((da + db) % p) * pw[i];
            a /= p;
            b /= p;
        }
        return r;
    }
    uint32_t neg(uint32_t a) const {
        if (m == 1) return a ? p - a : 0;
        uint32_t r = 0;
        for (uint32_t i = 0; i < m; ++i) {
            uint32_t da = a % p;
            r += ((p - da) % p) * pw[i];
            a /= p;
        }
        return r;
    }
    uint32_t mul(uint32_t a, uint32_t b) const {
        if (!a || !b) return 0;
        uint64_t s = static_cast<uint64_t>(log_[a]) + log_[b];
        return exp_[s % (q - 1)];
    }
    uint32_t inv(uint32_t a) const {
        require(a != 0, ErrorKind::InvalidInput, "inverse of zero in finite field");
        return exp_[(q - 1 - log_[a]) % (q - 1)];
    }
    uint32_t pow(uint32_t a, long long e) const {
        if (a == 0) {
            require(e >= 0, ErrorKind::InvalidInput, "negative power of zero");
            return e == 0 ? 1 : 0;
        }
        long long n = static_cast<long long>(q) - 1;
        long long k = ((static_cast<long long>(log_[a]) * (e % n)) % n + n) % n;
        return exp_[static_cast<size_t>(k)];
    }
    uint32_t from_int(long long k) const {
        long long r = ((k % static_cast<long long>(p)) + p) % p;
        return static_cast<uint32_t>(r);
    }
    std::vector<uint32_t> digits(uint32_t a) const {
        std::vector<uint32_t> d(m);
        for (uint32_t i = 0; i < m; ++i) {
            d[i] = a % p;
            a /= p;
        }
        return d;
    }
};

class FFElement;

/// Handle to a cached field F_{p^m}.
class FiniteField {
public:
    FiniteField() = default;
    static constexpr unsigned long long kBudget = 1000000ull;

    static FiniteField get(unsigned long long p, unsigned m);

    const FieldData* data() const { return d_; }
    uint32_t characteristic() const { return d_->p; }
    uint32_t degree() const { return d_->m; }
    uint32_t size() const { return d_->q; }
    const std::vector<uint32_t>& modulus() const { return d_->modulus; }
    bool valid() const { return d_ != nullptr; }

    FFElement element(uint32_t code) const;
    FFElement from_int(long long k) const;
    FFElement zero() const;
    FFElement one() const;
    FFElement gen() const;
    std::vector<FFElement> elements() const;

    friend bool operator==(const FiniteField& a, const FiniteField& b) { return a.d_ == b.d_; }
    friend bool operator!=(const FiniteField& a, const FiniteField& b) { return a.d_ != b.d_; }

private:
    explicit FiniteField(const FieldData* d) : d_(d) {}
    const FieldData* d_ = nullptr;
};

/// Element of F_{p^m}. A default or int-constructed element carries no field and
/// behaves as an integer constant until combined with a field element.
class FFElement {
public:
    FFElement() = default;
    FFElement(int k) : k_(k) {}
    FFElement(long long k) : k_(k) {}
    FFElement(const FieldData* f, uint32_t v) : f_(f), v_(v) {}

    const FieldData* field() const { return f_; }
    uint32_t code() const {
        require(f_ != nullptr, ErrorKind::InvalidInput, "field-less constant has no code");
        return v_;
    }
    bool is_zero() const { return f_ ? v_ == 0 : k_ == 0; }
    bool is_one() const { return f_ ? v_ == 1 : k_ == 1; }

    FFElement in(const FieldData* f) const {
        if (f_) {
            require(f_ == f, ErrorKind::InvalidInput, "mixing elements of different finite fields");
            return *this;
        }
        return FFElement(f, f->from_int(k_));
    }

    friend FFElement operator+(const FFElement& a, const FFElement& b) {
        const FieldData* f = common(a, b);
        if (!f) return FFElement(a.k_ + b.k_);
        return FFElement(f, f->add(a.in(f).v_, b.in(f).v_));
    }
    FFElement operator-() const {
        if (!f_) return FFElement(-k_);
        return FFElement(f_, f_->neg(v_));
    }
    friend FFElement operator-(const FFElement& a, const FFElement& b) { return a + (-b); }
    friend FFElement operator*(const FFElement& a, const FFElement& b) {
        const FieldData* f = common(a, b);
        if (!f) return FFElement(a.k_ * b.k_);
        return FFElement(f, f->mul(a.in(f).v_, b.in(f).v_));
    }
    FFElement inv() const {
        if (!f_) {
            require(k_ == 1 || k_ == -1, ErrorKind::InvalidInput, "cannot invert a field-less constant");
            return *this;
        }
        return FFElement(f_, f_->inv(v_));
    }
    friend FFElement operator/(const FFElement& a, const FFElement& b) { return a * b.inv(); }
    FFElement& operator+=(const FFElement& o) { return *this = *this + o; }
    FFElement& operator-=(const FFElement& o) { return *this = *this - o; }
    FFElement& operator*=(const FFElement& o) { return *this = *this * o; }

    FFElement pow(long long e) const {
        require(f_ != nullptr, ErrorKind::InvalidInput, "power of a field-less constant");
        return FFElement(f_, f_->pow(v_, e));
    }
    FFElement frobenius() const { return pow(static_cast<long long>(f_->p)); }

    friend bool operator==(const FFElement& a, const FFElement& b) {
        const FieldData* f = common(a, b);
        if (!f) return a.k_ == b.k_;
        return a.in(f).v_ == b.in(f).v_;
    }
    friend bool operator!=(const FFElement& a, const FFElement& b) { return !(a == b); }
    // total order by code, used for canonical representatives
    friend bool operator<(const FFElement& a, const FFElement& b) { return a.code() < b.code(); }

private:
    static const FieldData* common(const FFElement& a, const FFElement& b) {
        if (a.f_ && b.f_) {
            require(a.f_ == b.f_, ErrorKind::InvalidInput, "mixing elements of different finite fields");
            return a.f_;
        }
        return a.f_ ? a.f_ : b.f_;
    }
    const FieldData* f_ = nullptr;
    uint32_t v_ = 0;
    long long k_ = 0;
};

namespace ffdetail {

inline std::unique_ptr<FieldData> build_field(unsigned long long p, unsigned m) {
    auto d = std::make_unique<FieldData>();
    d->p = static_cast<uint32_t>(p);
    d->m = m;
    unsigned long long q = 1;
    d->pw.resize(m);
    for (unsigned i = 0; i < m; ++i) {
        d->pw[i] = static_cast<uint32_t>(q);
        q *= p;
    }
    d->q = static_cast<uint32_t>(q);
    const long long P = static_cast<long long>(p);

    // lexicographically least (c_{m-1}, ..., c_0) giving a monic irreducible
    IPoly g;
    if (m == 1) {
        g = {0, 1};
    } else {
        for (unsigned long long code = 0; code < q; ++code) {
            IPoly cand(m + 1, 0);
            unsigned long long c = code;
            for (unsigned i = 0; i < m; ++i) {
                cand[i] = static_cast<long long>(c % p);
                c /= p;
            }
            cand[m] = 1;
            if (cand[0] == 0) continue;
            if (irreducible(cand, P)) {
                g = cand;
                break;
            }
        }
    }
    d->modulus.assign(g.begin(), g.end());

    auto encode = [&](const IPoly& a) {
        uint32_t r = 0;
        for (size_t i = 0; i < a.size(); ++i) r += static_cast<uint32_t>(a[i]) * d->pw[i];
        return r;
    };
    auto decode = [&](uint32_t a) {
        IPoly r(m, 0);
        for (unsigned i = 0; i < m; ++i) {
            r[i] = a % p;
            a /= static_cast<uint32_t>(p);
        }
        trim(r);
        return r;
    };

    const unsigned long long n = q - 1;
    auto factors = prime_factors(n);
    IPoly gen;
    for (uint32_t c = 1; c < q; ++c) {
        IPoly cand = decode(c);
        bool ok = true;
        for (auto r : factors) {
            IPoly t = (m == 1) ? IPoly{1} : IPoly{};
            if (m == 1) {
                long long v = 1, b = cand.empty() ? 0 : cand[0];
                unsigned long long e = n / r;
                while (e) {
                    if (e & 1ull) v = v * b % P;
                    b = b * b % P;
                    e >>= 1ull;
                }
                if (v == 1) ok = false;
            } else {
                t = powmod(cand, n / r, g, P);
                if (t.size() == 1 && t[0] == 1) ok = false;
            }
            if (!ok) break;
        }
        if (ok) {
            gen = cand;
            d->generator = c;
            break;
        }
    }

    d->exp_.resize(n == 0 ? 1 : n);
    d->log_.assign(q, 0);
    if (m == 1) {
        long long cur = 1, gg = d->generator;
        for (unsigned long long i = 0; i < n; ++i) {
            d->exp_[i] = static_cast<uint32_t>(cur);
            d->log_[static_cast<size_t>(cur)] = static_cast<uint32_t>(i);
            cur = cur * gg % P;
        }
    } else {
        IPoly cur{1};
        for (unsigned long long i = 0; i < n; ++i) {
            uint32_t c = encode(cur);
            d->exp_[i] = c;
            d->log_[c] = static_cast<uint32_t>(i);
            cur = mulmod(cur, gen, g, P);
        }
    }
    return d;
}

}  // namespace ffdetail

inline FiniteField FiniteField::get(unsigned long long p, unsigned m) {
    require(ffdetail::is_prime(p), ErrorKind::InvalidInput, "characteristic " + std::to_string(p) + " is not prime");
    require(m >= 1, ErrorKind::InvalidInput, "extension degree must be >= 1");
    unsigned long long q = 1;
    for (unsigned i = 0; i < m; ++i) {
        q *= p;
        if (q > kBudget)
            fail(ErrorKind::Resource, "field of size " + std::to_string(p) + "^" + std::to_string(m) +
                                          " exceeds the enumeration budget 10^6");
    }
    static std::mutex mu;
    static std::map<std::pair<unsigned long long, unsigned>, std::unique_ptr<FieldData>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = registry[{p, m}];
    if (!slot) slot = ffdetail::build_field(p, m);
    return FiniteField(slot.get());
}

inline FFElement FiniteField::element(uint32_t code) const {
    require(code < d_->q, ErrorKind::InvalidInput, "element code out of range");
    return FFElement(d_, code);
}
inline FFElement FiniteField::from_int(long long k) const { return FFElement(d_, d_->from_int(k)); }
inline FFElement FiniteField::zero() const { return FFElement(d_, 0); }
inline FFElement FiniteField::one() const { return FFElement(d_, 1); }
inline FFElement FiniteField::gen() const { return FFElement(d_, d_->generator); }
inline std::vector<FFElement> FiniteField::elements() const {
    std::vector<FFElement> v;
    v.reserve(d_->q);
    for (uint32_t c = 0; c < d_->q; ++c) v.emplace_back(d_, c);
    return v;
}

inline FiniteField field_of(const FFElement& a) {
    require(a.field() != nullptr, ErrorKind::InvalidInput, "element has no field");
    return FiniteField::get(a.field()->p, a.field()->m);
}

/// +1 nonzero square, -1 non-square, 0 for zero; a^((q-1)/2) in odd characteristic.
inline int quadratic_symbol(const FFElement& a) {
    const FieldData* f = a.field();
    require(f != nullptr, ErrorKind::InvalidInput, "quadratic symbol of a field-less constant");
    if (f->p == 2) fail(ErrorKind::Unsupported, "quadratic symbol in characteristic 2");
    if (a.is_zero()) return 0;
    FFElement t = a.pow((static_cast<long long>(f->q) - 1) / 2);
    return t.is_one() ? 1 : -1;
}

/// Square root of a square (least code of the two), empty optional-like flag otherwise.
inline bool ff_sqrt(const FFElement& a, FFElement& out) {
    const FieldData* f = a.field();
    if (a.is_zero()) {
        out = a;
        return true;
    }
    uint32_t l = f->log_[a.code()];
    if (f->p != 2 && (l % 2)) return false;
    uint32_t half = (f->p == 2) ? static_cast<uint32_t>((static_cast<unsigned long long>(l) * ((f->q) / 2)) % (f->q - 1))
                                : l / 2;
    FFElement r(f, f->exp_[half]);
    FFElement s = -r;
    out = (s.code() < r.code()) ? s : r;
    return true;
}

}  // namespace endo
