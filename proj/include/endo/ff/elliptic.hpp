#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "endo/algebra/abelian_group.hpp"
#include "endo/algebra/ff_poly.hpp"

namespace endo::ff {

/// F_q = F_{p^m} together with its extensions F_{q^n} and compatible embeddings.
class Tower {
public:
    Tower() = default;
    Tower(unsigned long long p, unsigned m) : p_(p), m_(m) {
        require(p != 2, ErrorKind::Unsupported, "characteristic 2 is not supported");
        base_ = FiniteField::get(p, m);
        state_ = std::make_shared<State>();
    }

    unsigned long long p() const { return p_; }
    unsigned m() const { return m_; }
    unsigned long long q() const { return base_.size(); }
    const FiniteField& base() const { return base_; }
    FiniteField ext(unsigned n) const { return FiniteField::get(p_, m_ * n); }

    /// F_{q^d} -> F_{q^n}, d | n, compatible with the embeddings of F_q
    const FieldEmbedding& embedding(unsigned d, unsigned n) const {
        require(d >= 1 && n % d == 0, ErrorKind::InvalidInput, "no embedding between these extension degrees");
        std::lock_guard<std::mutex> lock(state_->mu);
        auto key = std::make_pair(d, n);
        auto it = state_->emb.find(key);
        if (it != state_->emb.end()) return *it->second;
        std::unique_ptr<FieldEmbedding> e;
        if (d == 1) {
            e = std::make_unique<FieldEmbedding>(FieldEmbedding::make(base_, ext(n)));
        } else {
            const FieldEmbedding& bd = embedding_unlocked(1, d);
            const FieldEmbedding& bn = embedding_unlocked(1, n);
            FFElement g = base_.gen();
            e = std::make_unique<FieldEmbedding>(FieldEmbedding::make(
                ext(d), ext(n), [&](const FieldEmbedding& c) { return c(bd(g)) == bn(g); }));
        }
        auto* raw = e.get();
        state_->emb[key] = std::move(e);
        return *raw;
    }

    /// base element into F_{q^n}
    FFElement up(const FFElement& a, unsigned n) const {
        if (n == 1) return coerce(a, base_);
        return embedding(1, n)(coerce(a, base_));
    }
    FFPoly up(const FFPoly& f, unsigned n) const {
        std::vector<FFElement> c;
        for (const auto& a : f.coeffs()) c.push_back(up(a, n));
        return FFPoly(c);
    }
    /// element of F_{q^n} lying in F_q, back to F_q
    FFElement down(const FFElement& a, unsigned n) const {
        if (n == 1) return a;
        return embedding(1, n).preimage(a);
    }
    FFElement frob(const FFElement& a) const { return a.pow(static_cast<long long>(q())); }

private:
    struct State {
        std::mutex mu;
        std::map<std::pair<unsigned, unsigned>, std::unique_ptr<FieldEmbedding>> emb;
    };
    const FieldEmbedding& embedding_unlocked(unsigned d, unsigned n) const {
        auto key = std::make_pair(d, n);
        auto it = state_->emb.find(key);
        if (it != state_->emb.end()) return *it->second;
        auto e = std::make_unique<FieldEmbedding>(FieldEmbedding::make(base_, ext(n)));
        auto* raw = e.get();
        state_->emb[key] = std::move(e);
        return *raw;
    }

    unsigned long long p_ = 0;
    unsigned m_ = 1;
    FiniteField base_;
    std::shared_ptr<State> state_;
};

struct ECPoint {
    bool inf = true;
    FFElement x, y;

    static ECPoint infinity() { return {}; }
    static ECPoint affine(FFElement x, FFElement y) { return {false, x, y}; }
    friend bool operator==(const ECPoint& a, const ECPoint& b) {
        if (a.inf || b.inf) return a.inf == b.inf;
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const ECPoint& a, const ECPoint& b) { return !(a == b); }
    friend bool operator<(const ECPoint& a, const ECPoint& b) {
        if (a.inf != b.inf) return a.inf;
        if (a.inf) return false;
        if (a.x.code() != b.x.code()) return a.x.code() < b.x.code();
        return a.y.code() < b.y.code();
    }
};

/// Integer for prime fields, "#code" otherwise.
inline std::string ff_str(const FFElement& a) {
    if (!a.field()) return "?";
    if (a.field()->m == 1) return std::to_string(a.code());
    return "#" + std::to_string(a.code());
}

inline std::string point_str(const ECPoint& P) {
    if (P.inf) return "inf";
    return "(" + ff_str(P.x) + "," + ff_str(P.y) + ")";
}

/// y^2 = x^3 + a2 x^2 + a4 x + a6 over F_q.
class WCurve {
public:
    WCurve() = default;
    WCurve(Tower T, FFElement a2, FFElement a4, FFElement a6) : T_(std::move(T)) {
        a2_ = coerce(a2, T_.base());
        a4_ = coerce(a4, T_.base());
        a6_ = coerce(a6, T_.base());
        // discriminant of the cubic
        FFPoly g = cubic();
        require(!discriminant(g).is_zero(), ErrorKind::InvalidCurve, "singular Weierstrass cubic");
    }
    /// short model y^2 = x^3 + a x + b
    static WCurve short_form(const Tower& T, long long a, long long b) {
        return WCurve(T, T.base().zero(), T.base().from_int(a), T.base().from_int(b));
    }

    const Tower& tower() const { return T_; }
    FFElement a2() const { return a2_; }
    FFElement a4() const { return a4_; }
    FFElement a6() const { return a6_; }
    FFPoly cubic() const { return FFPoly{a6_, a4_, a2_, T_.base().one()}; }

    FFElement rhs(const FFElement& x, unsigned n) const {
        return ((x + T_.up(a2_, n)) * x + T_.up(a4_, n)) * x + T_.up(a6_, n);
    }
    bool on_curve(const ECPoint& P, unsigned n) const { return P.inf || P.y * P.y == rhs(P.x, n); }

    ECPoint neg(const ECPoint& P) const { return P.inf ? P : ECPoint::affine(P.x, -P.y); }
    ECPoint add(const ECPoint& P, const ECPoint& Q, unsigned n) const {
        if (P.inf) return Q;
        if (Q.inf) return P;
        FFElement lam;
        if (P.x == Q.x) {
            if ((P.y + Q.y).is_zero()) return ECPoint::infinity();
            lam = (FFElement(3) * P.x * P.x + FFElement(2) * T_.up(a2_, n) * P.x + T_.up(a4_, n)) / (FFElement(2) * P.y);
        } else {
            lam = (Q.y - P.y) / (Q.x - P.x);
        }
        FFElement x3 = lam * lam - T_.up(a2_, n) - P.x - Q.x;
        return ECPoint::affine(x3, lam * (P.x - x3) - P.y);
    }
    ECPoint mul(long long k, ECPoint P, unsigned n) const {
        if (k < 0) return mul(-k, neg(P), n);
        ECPoint R;
        while (k) {
            if (k & 1) R = add(R, P, n);
            P = add(P, P, n);
            k >>= 1;
        }
        return R;
    }
    ECPoint frobenius(const ECPoint& P) const { return P.inf ? P : ECPoint::affine(T_.frob(P.x), T_.frob(P.y)); }

    /// all points over F_{q^n}, infinity first, then by (x, y) code
    std::vector<ECPoint> points(unsigned n) const {
        FiniteField F = T_.ext(n);
        require(F.size() <= FiniteField::kBudget, ErrorKind::Resource, "extension field exceeds the enumeration budget");
        std::vector<ECPoint> pts{ECPoint::infinity()};
        for (const auto& x : F.elements()) {
            FFElement r = rhs(x, n), s;
            if (!ff_sqrt(r, s)) continue;
            pts.push_back(ECPoint::affine(x, s));
            if (!s.is_zero()) pts.push_back(ECPoint::affine(x, -s));
        }
        std::sort(pts.begin() + 1, pts.end());
        return pts;
    }

    /// smallest e | n with Frob^e P = P
    unsigned point_degree(const ECPoint& P, unsigned n) const {
        if (P.inf) return 1;
        for (unsigned e = 1; e <= n; ++e) {
            if (n % e) continue;
            FFElement x = P.x, y = P.y;
            for (unsigned i = 0; i < e; ++i) {
                x = T_.frob(x);
                y = T_.frob(y);
            }
            if (x == P.x && y == P.y) return e;
        }
        return n;
    }

private:
    Tower T_;
    FFElement a2_, a4_, a6_;
};

/// E(F_q) as Z/n1 x Z/n2 with explicit generators and a discrete-log table.
struct RationalGroup {
    FiniteAbelianGroup group;
    std::vector<ECPoint> generators;  // one per invariant factor
    std::map<ECPoint, FiniteAbelianGroup::Element> dlog;

    FiniteAbelianGroup::Element log(const ECPoint& P) const {
        auto it = dlog.find(P);
        require(it != dlog.end(), ErrorKind::InternalConsistency, "point " + point_str(P) + " is not in the rational group");
        return it->second;
    }
};

inline RationalGroup rational_group(const WCurve& E) {
    auto pts = E.points(1);
    const long n = static_cast<long>(pts.size());
    require(n <= 100000, ErrorKind::Resource, "rational group too large");
    auto order = [&](const ECPoint& P) {
        long k = 1;
        ECPoint Q = P;
        while (!Q.inf) {
            Q = E.add(Q, P, 1);
            ++k;
        }
        return k;
    };
    // a point of maximal order generates the largest cyclic factor
    ECPoint P = pts[0];
    long n2 = 1;
    for (const auto& X : pts) {
        long o = order(X);
        if (o > n2) {
            n2 = o;
            P = X;
        }
    }
    long n1 = n / n2;
    RationalGroup G;
    auto fill = [&](const ECPoint& Q, long nq) {
        std::map<ECPoint, FiniteAbelianGroup::Element> table;
        ECPoint A;
        for (long i = 0; i < n2; ++i) {
            ECPoint B = A;
            for (long j = 0; j < nq; ++j) {
                if (nq > 1) table.emplace(B, FiniteAbelianGroup::Element{j, i});
                else table.emplace(B, FiniteAbelianGroup::Element{i});
                B = E.add(B, Q, 1);
            }
            A = E.add(A, P, 1);
        }
        return table;
    };
    if (n1 == 1) {
        G.group = FiniteAbelianGroup::from_orders({n2});
        G.dlog = fill(ECPoint::infinity(), 1);
        if (n2 > 1) G.generators = {P};
        if (n2 == 1) G.dlog = {{ECPoint::infinity(), {}}};
    } else {
        bool found = false;
        for (const auto& Q : pts) {
            if (order(Q) != n1) continue;
            auto table = fill(Q, n1);
            if (static_cast<long>(table.size()) == n) {
                G.group = FiniteAbelianGroup::from_orders({n1, n2});
                G.generators = {Q, P};
                G.dlog = std::move(table);
                found = true;
                break;
            }
        }
        require(found, ErrorKind::InternalConsistency, "could not split the rational point group");
    }
    require(static_cast<long>(G.dlog.size()) == n, ErrorKind::InternalConsistency, "discrete-log table incomplete");
    return G;
}

}  // namespace endo::ff
