#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "endo/algebra/cyclotomic.hpp"
#include "endo/error.hpp"

namespace endo {

/// Z/d1 x ... x Z/dk with d1 | d2 | ... | dk, elements as exponent tuples.
class FiniteAbelianGroup {
public:
    using Element = std::vector<long>;

    FiniteAbelianGroup() = default;

    /// Any list of cyclic orders; normalised to invariant factors.
    static FiniteAbelianGroup from_orders(std::vector<long> orders) {
        for (long o : orders) require(o >= 1, ErrorKind::InvalidInput, "cyclic order must be positive");
        for (size_t i = 0; i < orders.size(); ++i)
            for (size_t j = i + 1; j < orders.size(); ++j) {
                long g = std::gcd(orders[i], orders[j]);
                long l = orders[i] / g * orders[j];
                orders[i] = g;
                orders[j] = l;
            }
        FiniteAbelianGroup G;
        for (long o : orders)
            if (o > 1) G.d_.push_back(o);
        return G;
    }

    const std::vector<long>& invariant_factors() const { return d_; }
    long order() const {
        long n = 1;
        for (long d : d_) n *= d;
        return n;
    }
    long exponent() const { return d_.empty() ? 1 : d_.back(); }
    size_t rank() const { return d_.size(); }

    Element zero() const { return Element(d_.size(), 0); }
    Element add(const Element& a, const Element& b) const {
        Element r(d_.size());
        for (size_t i = 0; i < d_.size(); ++i) r[i] = (a[i] + b[i]) % d_[i];
        return r;
    }
    Element neg(const Element& a) const {
        Element r(d_.size());
        for (size_t i = 0; i < d_.size(); ++i) r[i] = (d_[i] - a[i]) % d_[i];
        return r;
    }
    long index(const Element& a) const {
        long idx = 0;
        for (size_t i = d_.size(); i-- > 0;) idx = idx * d_[i] + a[i];
        return idx;
    }
    Element element(long idx) const {
        Element r(d_.size());
        for (size_t i = 0; i < d_.size(); ++i) {
            r[i] = idx % d_[i];
            idx /= d_[i];
        }
        return r;
    }
    std::vector<Element> elements() const {
        std::vector<Element> v;
        for (long i = 0; i < order(); ++i) v.push_back(element(i));
        return v;
    }
    long element_order(const Element& a) const {
        long o = 1;
        for (size_t i = 0; i < d_.size(); ++i) o = std::lcm(o, d_[i] / std::gcd(d_[i], a[i]));
        return o;
    }

private:
    std::vector<long> d_;
};

/// chi_j(g) = prod zeta_{d_i}^{j_i g_i}
class Character {
public:
    Character() = default;
    Character(FiniteAbelianGroup G, std::vector<long> exps) : G_(std::move(G)), j_(std::move(exps)) {
        require(j_.size() == G_.rank(), ErrorKind::InvalidInput, "character exponent tuple has wrong length");
    }

    const FiniteAbelianGroup& group() const { return G_; }
    const std::vector<long>& exponents() const { return j_; }

    /// chi(g) = zeta_E^k with E the group exponent; returns k mod E.
    long value_exponent(const FiniteAbelianGroup::Element& g) const {
        const long E = G_.exponent();
        long k = 0;
        for (size_t i = 0; i < j_.size(); ++i) {
            long d = G_.invariant_factors()[i];
            k = (k + (j_[i] * g[i] % d) * (E / d)) % E;
        }
        return k;
    }
    CyclotomicValue value(const FiniteAbelianGroup::Element& g) const {
        return CyclotomicValue::root(value_exponent(g), G_.exponent());
    }
    long order() const { return G_.element_order(j_); }
    bool is_trivial() const { return order() == 1; }

private:
    FiniteAbelianGroup G_;
    std::vector<long> j_;
};

inline std::vector<Character> group_characters(const FiniteAbelianGroup& G) {
    require(G.order() <= 100000, ErrorKind::Resource, "group too large for character enumeration");
    std::vector<Character> out;
    for (const auto& e : G.elements()) out.emplace_back(G, e);
    return out;
}

/// (1/|G|) sum chi(g) psi(g)^-1
inline CyclotomicValue character_inner(const Character& chi, const Character& psi) {
    const auto& G = chi.group();
    const long E = G.exponent();
    std::vector<long long> counts(static_cast<size_t>(E), 0);
    for (const auto& g : G.elements()) {
        long k = (chi.value_exponent(g) - psi.value_exponent(g) + E) % E;
        counts[static_cast<size_t>(k)]++;
    }
    return CyclotomicValue::from_integer_dense(E, std::move(counts), G.order());
}

}  // namespace endo
