#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "endo/ff/elliptic.hpp"

namespace endo::ff {

/// Canonical name of a closed point: degree and the least (x, y) code over its orbit.
struct PointKey {
    unsigned degree = 1;
    bool inf = true;
    uint32_t x = 0, y = 0;

    friend bool operator<(const PointKey& a, const PointKey& b) {
        return std::tie(a.degree, a.inf, a.x, a.y) < std::tie(b.degree, b.inf, b.x, b.y);
    }
    friend bool operator==(const PointKey& a, const PointKey& b) {
        return a.degree == b.degree && a.inf == b.inf && a.x == b.x && a.y == b.y;
    }
    std::string str() const {
        if (inf) return "inf";
        if (degree == 1) return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
        return "[" + std::to_string(degree) + ":" + std::to_string(x) + "," + std::to_string(y) + "]";
    }
};

/// Frobenius orbit of a point of E over F_{q^degree}.
struct ClosedPoint {
    unsigned degree = 1;
    ECPoint rep;                // least element of the orbit, coordinates in F_{q^degree}
    std::vector<ECPoint> orbit; // rep, Frob(rep), ...
    PointKey key;

    bool is_infinity() const { return rep.inf; }
    std::string str() const { return key.str(); }
};

inline ClosedPoint make_closed_point(const WCurve& E, const ECPoint& P, unsigned n) {
    ClosedPoint c;
    c.degree = E.point_degree(P, n);
    require(c.degree == n, ErrorKind::InvalidInput, "point is defined over a smaller field; pass its own degree");
    c.orbit.push_back(P);
    for (unsigned i = 1; i < n; ++i) c.orbit.push_back(E.frobenius(c.orbit.back()));
    c.rep = *std::min_element(c.orbit.begin(), c.orbit.end());
    std::rotate(c.orbit.begin(), std::find(c.orbit.begin(), c.orbit.end(), c.rep), c.orbit.end());
    c.key.degree = n;
    c.key.inf = c.rep.inf;
    if (!c.rep.inf) {
        c.key.x = c.rep.x.code();
        c.key.y = c.rep.y.code();
    }
    return c;
}

struct Census {
    unsigned N = 1;
    std::vector<ClosedPoint> points;          // by degree, then key
    std::vector<long> count_by_degree;        // index d-1
    std::vector<long> rational_counts;        // #E(F_{q^n}), n = 1..N
    std::map<PointKey, size_t> index;

    const ClosedPoint& at(const PointKey& k) const {
        auto it = index.find(k);
        require(it != index.end(), ErrorKind::InvalidInput, "closed point " + k.str() + " not in census");
        return points[it->second];
    }
    bool contains(const PointKey& k) const { return index.count(k) > 0; }

    /// sum_{d | n} d N_d = #E(F_{q^n}) for every n <= N
    bool zeta_identity() const {
        for (unsigned n = 1; n <= N; ++n) {
            long s = 0;
            for (unsigned d = 1; d <= n; ++d)
                if (n % d == 0) s += static_cast<long>(d) * count_by_degree[d - 1];
            if (s != rational_counts[n - 1]) return false;
        }
        return true;
    }
};

inline Census enumerate_closed_points(const WCurve& E, unsigned N) {
    require(N >= 1, ErrorKind::InvalidInput, "degree bound must be positive");
    unsigned long long qn = 1;
    for (unsigned i = 0; i < N; ++i) {
        qn *= E.tower().q();
        require(qn <= FiniteField::kBudget, ErrorKind::Resource,
                "q^N exceeds the 10^6 enumeration budget; use N <= " + std::to_string(i));
    }
    Census C;
    C.N = N;
    for (unsigned d = 1; d <= N; ++d) {
        auto pts = E.points(d);
        C.rational_counts.push_back(static_cast<long>(pts.size()));
        std::map<ECPoint, bool> seen;
        std::vector<ClosedPoint> here;
        for (const auto& P : pts) {
            if (seen.count(P) || E.point_degree(P, d) != d) continue;
            ClosedPoint c = make_closed_point(E, P, d);
            for (const auto& Q : c.orbit) seen[Q] = true;
            here.push_back(std::move(c));
        }
        std::sort(here.begin(), here.end(), [](const ClosedPoint& a, const ClosedPoint& b) { return a.key < b.key; });
        C.count_by_degree.push_back(static_cast<long>(here.size()));
        for (auto& c : here) {
            C.index[c.key] = C.points.size();
            C.points.push_back(std::move(c));
        }
    }
    return C;
}

/// closed point of a degree-1 affine point given by integer coordinates
inline PointKey rational_key(const WCurve& E, long long x, long long y) {
    const auto& F = E.tower().base();
    ECPoint P = ECPoint::affine(F.from_int(x), F.from_int(y));
    require(E.on_curve(P, 1), ErrorKind::InvalidInput, "point is not on the curve");
    return make_closed_point(E, P, 1).key;
}
inline PointKey infinity_key() { return PointKey{}; }

/// group-law sum of the orbit, an F_q-rational point
inline ECPoint trace_point(const WCurve& E, const ClosedPoint& c) {
    ECPoint S;
    for (const auto& Q : c.orbit) S = E.add(S, Q, c.degree);
    if (S.inf) return S;
    return ECPoint::affine(E.tower().down(S.x, c.degree), E.tower().down(S.y, c.degree));
}

}  // namespace endo::ff
