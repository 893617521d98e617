#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "endo/ff/endoscopy.hpp"

namespace endo::whittaker {

using ff::ClosedPoint;
using ff::DivisorFF;
using ff::PointKey;

/// Frobenius eigenvalues of the induced 2-dim representation at one closed point.
struct GL2Eigen {
    bool reflection = false;
    CyclotomicValue alpha{1}, beta{1};  // reflection: (lambda, -lambda)

    static GL2Eigen diag(CyclotomicValue a, CyclotomicValue b) { return {false, std::move(a), std::move(b)}; }
    static GL2Eigen refl(const CyclotomicValue& lambda) { return {true, lambda, -lambda}; }
};

/// h_d(a, b) = sum_{i=0}^d a^i b^(d-i)
inline CyclotomicValue complete_homogeneous(const CyclotomicValue& a, const CyclotomicValue& b, long d) {
    if (d < 0) return CyclotomicValue(0);
    CyclotomicValue acc(0), ai(1);
    std::vector<CyclotomicValue> bp{CyclotomicValue(1)};
    for (long i = 1; i <= d; ++i) bp.push_back(bp.back() * b);
    for (long i = 0; i <= d; ++i) {
        acc += ai * bp[static_cast<size_t>(d - i)];
        ai *= a;
    }
    return acc;
}

/// trace on Sym^(m-k) V (x) det^k
inline CyclotomicValue gl2_char(const GL2Eigen& g, long m, long k) {
    require(m >= k, ErrorKind::InvalidWeight, "V_{m,k} needs m >= k (got m=" + std::to_string(m) + ", k=" + std::to_string(k) + ")");
    return (g.alpha * g.beta).pow(k) * complete_homogeneous(g.alpha, g.beta, m - k);
}

using EigenTable = std::map<PointKey, GL2Eigen>;
using DiagonalAdele = std::map<PointKey, std::pair<long, long>>;

inline GL2Eigen eigen_at(const ClosedPoint& x, const ff::EndoscopicDatum& D) {
    auto F = ff::sigma_frobenius(x, D);
    if (F.split) return GL2Eigen::diag(F.alpha, F.beta);
    require(F.lambda_sq.has_value(), ErrorKind::Resource, "reflection scale at " + x.str() + " needs a larger field");
    return GL2Eigen::refl(ff::root_of_unity_sqrt(*F.lambda_sq));
}

inline EigenTable eigen_table(const ff::EndoscopicDatum& D, const ff::Census& C, unsigned max_degree) {
    EigenTable t;
    for (const auto& x : C.points)
        if (x.degree <= max_degree) t.emplace(x.key, eigen_at(x, D));
    return t;
}

/// prod_x Tr(gamma_x, V_{m_x + delta_x, k_x}); zero when some m_x + delta_x < k_x
inline CyclotomicValue whittaker_value(const EigenTable& eig, const DivisorFF& delta, const DiagonalAdele& support) {
    std::map<PointKey, std::pair<long, long>> w;
    for (const auto& [x, mk] : support) w[x] = mk;
    for (const auto& [x, n] : delta.terms()) w.try_emplace(x, std::make_pair(0L, 0L));
    CyclotomicValue acc(1);
    for (const auto& [x, mk] : w) {
        auto it = eig.find(x);
        require(it != eig.end(), ErrorKind::InvalidInput, "no eigen datum at " + x.str());
        long m = mk.first + delta.mult(x), k = mk.second;
        if (m < k) return CyclotomicValue(0);
        acc *= gl2_char(it->second, m, k);
        if (acc.is_zero()) return acc;
    }
    return acc;
}

// ---------------------------------------------------------------- coset vanishing

enum class Verdict { VanishesAll, Nonzero, Inconclusive };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::VanishesAll: return "VANISHES-ALL";
        case Verdict::Nonzero: return "NONZERO";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

struct Witness {
    std::string shift;
    DivisorFF target;  // D + div(F)
    DiagonalAdele support;
    CyclotomicValue value;
};

struct CosetReport {
    Verdict verdict = Verdict::Inconclusive;
    long parity_weight = 0;        // <delta + D>
    bool predicted_vanishing = false;
    bool agrees = false;
    long shifts_tried = 0;
    long supports_checked = 0;
    std::optional<Witness> witness;
    std::vector<std::string> vanishing_log;  // one line per shift: the point where every option vanishes
    bool klein_four_flag = false;
};

/// Base functions x - c, y, y (x - c) and lines y - l x - n; the pool is these, their inverses,
/// and products of two of them.
inline std::vector<ff::RationalFunctionFF> shift_pool(const ff::WCurve& E, int max_factors = 2) {
    const long q = static_cast<long>(E.tower().q());
    require(E.tower().m() == 1, ErrorKind::Unsupported, "shift pool is built over prime fields");
    std::vector<ff::CurveFactor> base;
    for (long c = 0; c < q; ++c) base.push_back(ff::x_minus(E, c));
    base.push_back(ff::y_factor(E));
    for (long c = 0; c < q; ++c) base.push_back(ff::y_times_x_minus(E, c));
    for (long l = 0; l < q; ++l)
        for (long n = 0; n < q; ++n) base.push_back(ff::line(E, l, n));
    std::vector<ff::RationalFunctionFF> pool{ff::RationalFunctionFF::one()};
    for (const auto& b : base)
        for (int e : {1, -1}) pool.push_back(ff::RationalFunctionFF::of(b, e));
    if (max_factors >= 2)
        for (size_t i = 0; i < base.size(); ++i)
            for (size_t j = i; j < base.size(); ++j)
                for (int e1 : {1, -1})
                    for (int e2 : {1, -1}) {
                        if (i == j && e1 != e2) continue;
                        pool.push_back(ff::RationalFunctionFF::of(base[i], e1) * ff::RationalFunctionFF::of(base[j], e2));
                    }
    return pool;
}

struct CosetOptions {
    long window = 3;     // |m_x|, |k_x| <= window
    int max_factors = 2;
    bool stop_at_witness = true;
};

/// Searches supports with sum (m_x + k_x)[x] = D + div(F) over the shift pool.
inline CosetReport coset_vanishing(const ff::EndoscopicDatum& Dm, const ff::Census& C, const DivisorFF& D,
                                   const ff::RationalFunctionFF& differential = ff::RationalFunctionFF::one(),
                                   const CosetOptions& opt = {}) {
    for (const auto& [x, n] : D.terms())
        require(x.degree == 1 && (n == 0 || n == 1), ErrorKind::InvalidInput,
                "D must be a sum of distinct degree-one points, got " + D.str());
    CosetReport R;
    R.klein_four_flag = ff::image_in_klein_four(Dm, C);
    DivisorFF delta = ff::divisor(Dm.E, C, differential);
    R.parity_weight = ff::nonsplit_weight(Dm, C, delta + D);
    R.predicted_vanishing = R.parity_weight % 2 != 0;

    std::map<PointKey, GL2Eigen> eig;
    auto eigen = [&](const PointKey& k) -> const GL2Eigen& {
        auto it = eig.find(k);
        if (it == eig.end()) it = eig.emplace(k, eigen_at(C.at(k), Dm)).first;
        return it->second;
    };
    std::map<std::tuple<PointKey, long, long>, CyclotomicValue> trace_cache;
    auto trace = [&](const PointKey& k, long m, long kk) {
        auto key = std::make_tuple(k, m, kk);
        auto it = trace_cache.find(key);
        if (it == trace_cache.end()) it = trace_cache.emplace(key, m < kk ? CyclotomicValue(0) : gl2_char(eigen(k), m, kk)).first;
        return it->second;
    };

    // divisors of the base factors, nullopt when the support leaves the census
    std::map<std::string, std::optional<DivisorFF>> base_div;
    auto factor_div = [&](const ff::CurveFactor& h) -> const std::optional<DivisorFF>& {
        auto it = base_div.find(h.name);
        if (it != base_div.end()) return it->second;
        std::optional<DivisorFF> d;
        try {
            d = ff::divisor(Dm.E, C, ff::RationalFunctionFF::of(h));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Resource) throw;
        }
        return base_div.emplace(h.name, std::move(d)).first->second;
    };

    for (const auto& F : shift_pool(Dm.E, opt.max_factors)) {
        DivisorFF target = D;
        bool inside = true;
        for (const auto& [h, e] : F.factors) {
            const auto& d = factor_div(h);
            if (!d) {
                inside = false;
                break;
            }
            target = target + d->scaled(e);
        }
        if (!inside) continue;
        ++R.shifts_tried;
        std::map<PointKey, long> pts;
        for (const auto& [x, n] : target.terms()) pts[x] = n;
        for (const auto& [x, n] : delta.terms()) pts.try_emplace(x, 0);
        DiagonalAdele chosen;
        CyclotomicValue value(1);
        std::string dead;
        for (const auto& [x, N] : pts) {
            bool found = false;
            // m + k = N, |m|, |k| <= window, smallest |k| first
            for (long j = 0; j <= 2 * opt.window && !found; ++j) {
                long k = (j % 2 ? -1 : 1) * ((j + 1) / 2), m = N - k;
                if (m < -opt.window || m > opt.window) continue;
                ++R.supports_checked;
                CyclotomicValue t = trace(x, m + delta.mult(x), k);
                if (!t.is_zero()) {
                    chosen[x] = {m, k};
                    value *= t;
                    found = true;
                }
            }
            if (!found) {
                dead = x.str() + " (weight " + std::to_string(N) + ")";
                break;
            }
        }
        if (!dead.empty()) {
            R.vanishing_log.push_back(F.str() + ": every option vanishes at " + dead);
            continue;
        }
        // independent re-evaluation of the chosen support
        EigenTable local;
        for (const auto& [x, mk] : chosen) local.emplace(x, eigen(x));
        for (const auto& [x, n] : delta.terms()) local.emplace(x, eigen(x));
        CyclotomicValue check = whittaker_value(local, delta, chosen);
        require(check == value, ErrorKind::InternalConsistency, "witness value mismatch");
        if (!R.witness) R.witness = Witness{F.str(), target, chosen, value};
        if (opt.stop_at_witness) break;
    }
    if (R.witness) R.verdict = Verdict::Nonzero;
    else R.verdict = R.predicted_vanishing ? Verdict::VanishesAll : Verdict::Inconclusive;
    R.agrees = (R.verdict == Verdict::VanishesAll && R.predicted_vanishing) ||
               (R.verdict == Verdict::Nonzero && !R.predicted_vanishing);
    return R;
}

}  // namespace endo::whittaker
