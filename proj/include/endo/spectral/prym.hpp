#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "endo/algebra/cyclotomic.hpp"
#include "endo/algebra/matrix.hpp"
#include "endo/error.hpp"

namespace endo::spectral {

/// Element of O2* with root-of-unity parameter zeta_N^k:
/// diag(t) = diag(t, 1/t) (identity component) or anti(s) = [[0, s], [-1/s, 0]].
struct O2Star {
    bool anti = false;
    long k = 0;   // exponent of zeta_N
    long N = 8;

    static O2Star diag(long k, long N) { return {false, ((k % N) + N) % N, N}; }
    static O2Star antidiag(long k, long N) { return {true, ((k % N) + N) % N, N}; }
    static O2Star identity(long N) { return diag(0, N); }

    // diag(t) anti(s) = anti(ts); anti(s) diag(t) = anti(s/t); anti(s) anti(s') = diag(-s/s')
    friend O2Star operator*(const O2Star& x, const O2Star& y) {
        const long N = x.N, h = N / 2;
        if (!x.anti && !y.anti) return diag(x.k + y.k, N);
        if (!x.anti && y.anti) return antidiag(x.k + y.k, N);
        if (x.anti && !y.anti) return antidiag(x.k - y.k, N);
        return diag(h + x.k - y.k, N);
    }
    O2Star inverse() const {
        if (!anti) return diag(-k, N);
        return antidiag(k + N / 2, N);  // anti(s)^-1 = anti(-s)
    }
    friend bool operator==(const O2Star& a, const O2Star& b) { return a.anti == b.anti && a.k == b.k && a.N == b.N; }
    bool is_central() const { return !anti && (k == 0 || 2 * k == N); }

    /// exact 2x2 model over Q(zeta_N)
    Matrix<CyclotomicValue> matrix() const {
        CyclotomicValue z = CyclotomicValue::root(k, N);
        if (!anti) return Matrix<CyclotomicValue>{{z, CyclotomicValue(0)}, {CyclotomicValue(0), z.inv()}};
        return Matrix<CyclotomicValue>{{CyclotomicValue(0), z}, {-z.inv(), CyclotomicValue(0)}};
    }
    std::string str() const {
        return std::string(anti ? "anti" : "diag") + "(z" + std::to_string(N) + "^" + std::to_string(k) + ")";
    }
};

inline O2Star commutator(const O2Star& a, const O2Star& b) { return a * b * a.inverse() * b.inverse(); }

/// Which generators A_1..A_g, B_1..B_g lie in the disconnected component.
struct CoverMarker {
    int genus = 1;
    std::vector<bool> a_disconnected, b_disconnected;

    static CoverMarker standard(int g) {
        CoverMarker m{g, std::vector<bool>(g, false), std::vector<bool>(g, false)};
        m.b_disconnected[g - 1] = true;
        return m;
    }
    std::string str() const {
        std::string s;
        for (int i = 0; i < genus; ++i) {
            if (a_disconnected[i]) s += (s.empty() ? "" : ",") + std::string("A") + std::to_string(i + 1);
            if (b_disconnected[i]) s += (s.empty() ? "" : ",") + std::string("B") + std::to_string(i + 1);
        }
        return "{" + s + "}";
    }
};

struct PrymCensus {
    CoverMarker marker;
    long N = 8;
    long assignments = 0;
    long solutions = 0;
    int components = 0;
    std::vector<long> component_sizes;
    std::vector<std::string> labels;  // exponents of a representative solution per component
};

/// Solutions of prod [A_i, B_i] = 1 with parameters in mu_N, grouped into connected pieces
/// under king moves (each parameter moves by at most one step). For N >= 8 two solution
/// families that differ by a sign never touch, so the count matches the continuous one.
inline PrymCensus prym_components(const CoverMarker& mk, long N = 8) {
    require(mk.genus >= 1, ErrorKind::InvalidInput, "genus must be positive");
    require(N >= 8 && N % 2 == 0, ErrorKind::InvalidInput, "root-of-unity grid must be even and at least 8");
    bool any = false;
    for (int i = 0; i < mk.genus; ++i) any = any || mk.a_disconnected[i] || mk.b_disconnected[i];
    require(any, ErrorKind::DegenerateCover,
            "no generator in the disconnected component: the commutator constraint is trivial (abelian monodromy)");
    const int P = 2 * mk.genus;
    long total = 1;
    for (int i = 0; i < P; ++i) {
        total *= N;
        require(total <= 5000000, ErrorKind::Resource, "monodromy census too large; lower the genus");
    }
    PrymCensus C;
    C.marker = mk;
    C.N = N;
    C.assignments = total;
    auto gen = [&](const std::vector<long>& ex, int p) {
        int i = p / 2;
        bool dis = (p % 2 == 0) ? mk.a_disconnected[i] : mk.b_disconnected[i];
        return dis ? O2Star::antidiag(ex[p], N) : O2Star::diag(ex[p], N);
    };
    std::vector<char> ok(static_cast<size_t>(total), 0);
    std::vector<long> ex(P, 0);
    for (long c = 0; c < total; ++c) {
        long r = c;
        for (int p = 0; p < P; ++p) {
            ex[p] = r % N;
            r /= N;
        }
        O2Star prod = O2Star::identity(N);
        for (int i = 0; i < mk.genus; ++i) prod = prod * commutator(gen(ex, 2 * i), gen(ex, 2 * i + 1));
        if (prod == O2Star::identity(N)) {
            ok[static_cast<size_t>(c)] = 1;
            ++C.solutions;
        }
    }
    // union-find over king moves
    std::vector<long> parent(static_cast<size_t>(total));
    std::iota(parent.begin(), parent.end(), 0L);
    auto find = [&](long x) {
        while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        return x;
    };
    long moves = 1;
    for (int p = 0; p < P; ++p) moves *= 3;
    for (long c = 0; c < total; ++c) {
        if (!ok[static_cast<size_t>(c)]) continue;
        long r = c;
        for (int p = 0; p < P; ++p) {
            ex[p] = r % N;
            r /= N;
        }
        for (long m = 0; m < moves; ++m) {
            long mm = m, d = 0, pw = 1;
            for (int p = 0; p < P; ++p) {
                d += (((ex[p] + (mm % 3) - 1) % N + N) % N) * pw;
                pw *= N;
                mm /= 3;
            }
            if (d > c && ok[static_cast<size_t>(d)]) {
                long x = find(c), y = find(d);
                if (x != y) parent[static_cast<size_t>(std::max(x, y))] = std::min(x, y);
            }
        }
    }
    std::map<long, long> sizes;
    std::map<long, long> rep;
    for (long c = 0; c < total; ++c)
        if (ok[static_cast<size_t>(c)]) {
            long root = find(c);
            ++sizes[root];
            if (!rep.count(root)) rep[root] = c;
        }
    C.components = static_cast<int>(sizes.size());
    for (const auto& [root, n] : sizes) {
        C.component_sizes.push_back(n);
        long r = rep[root];
        std::string lab;
        for (int p = 0; p < P; ++p) {
            long e = r % N;
            r /= N;
            int i = p / 2;
            std::string name = std::string(p % 2 == 0 ? "A" : "B") + std::to_string(i + 1);
            lab += (lab.empty() ? "" : " ") + name + "=" + std::to_string(e);
        }
        C.labels.push_back(lab);
    }
    return C;
}

/// The three unramified double covers of a genus-one curve: markers {A}, {B}, {A,B}.
inline std::vector<CoverMarker> genus_one_markers() {
    return {CoverMarker{1, {true}, {false}}, CoverMarker{1, {false}, {true}}, CoverMarker{1, {true}, {true}}};
}

// ---------------------------------------------------------------- gluing data

struct GluingCensus {
    int genus = 2;
    int pairs = 0;                 // 2g - 2, or 1 for the ramified genus-one fiber (single node)
    long configurations = 0;       // over P^1(F_5)
    long fixed = 0;
    std::array<int, 3> codimension{};  // (fiber, base, total)
};

/// (u : v) -> (u : -v) on each pair; fixed iff u v = 0.
inline std::pair<long, long> gluing_act(long u, long v, long p = 5) { return {u, ((p - v) % p + p) % p}; }

inline GluingCensus gluing_action(int g, long p = 5) {
    require(g >= 1, ErrorKind::InvalidInput, "genus must be positive");
    GluingCensus G;
    G.genus = g;
    G.pairs = g == 1 ? 1 : 2 * g - 2;
    // P^1(F_p): (1 : v) for v in F_p and (0 : 1)
    std::vector<std::pair<long, long>> line;
    for (long v = 0; v < p; ++v) line.emplace_back(1, v);
    line.emplace_back(0, 1);
    auto normalize = [&](std::pair<long, long> x) {
        if (x.first != 0) {
            // scale u to 1
            long inv = 1;
            for (long t = 1; t < p; ++t)
                if ((x.first * t) % p == 1) inv = t;
            return std::pair<long, long>{1, (x.second * inv) % p};
        }
        return std::pair<long, long>{0, 1};
    };
    long total = 1;
    for (int i = 0; i < G.pairs; ++i) total *= static_cast<long>(line.size());
    require(total <= 5000000, ErrorKind::Resource, "gluing census too large");
    G.configurations = total;
    for (long c = 0; c < total; ++c) {
        long r = c;
        bool fixed = true;
        for (int i = 0; i < G.pairs; ++i) {
            auto pt = line[static_cast<size_t>(r % static_cast<long>(line.size()))];
            r /= static_cast<long>(line.size());
            auto img = normalize(gluing_act(pt.first, pt.second, p));
            fixed = fixed && img == pt;
        }
        if (fixed) ++G.fixed;
    }
    G.codimension = {G.pairs, G.pairs, 2 * G.pairs};
    return G;
}

}  // namespace endo::spectral
