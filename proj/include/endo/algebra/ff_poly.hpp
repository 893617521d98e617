#pragma once

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

#include "endo/algebra/finite_field.hpp"
#include "endo/algebra/poly.hpp"

namespace endo {

using FFPoly = Poly<FFElement>;

/// Moves a into F: field-less constants and prime-field elements are mapped canonically.
inline FFElement coerce(const FFElement& a, const FiniteField& F) {
    const FieldData* f = a.field();
    if (!f || f == F.data()) return a.in(F.data());
    require(f->m == 1 && f->p == F.characteristic(), ErrorKind::InvalidInput,
            "cannot coerce element between non-prime fields without an embedding");
    return F.from_int(a.code());
}

namespace ffdetail {

inline void split_roots(const FFPoly& h, const FiniteField& F, std::vector<FFElement>& out) {
    // h is monic, squarefree and splits into distinct linear factors over F
    if (h.degree() <= 0) return;
    if (h.degree() == 1) {
        out.push_back(-(h.coeff(0) / h.lead()));
        return;
    }
    const unsigned long long Q = F.size();
    if (F.characteristic() == 2) {
        // trace map splitting
        for (uint32_t c = 1; c < F.size(); ++c) {
            FFPoly x{F.zero(), F.element(c)};
            FFPoly t = x % h, acc = t;
            for (unsigned i = 1; i < F.degree(); ++i) {
                t = (t * t) % h;
                acc = acc + t;
            }
            FFPoly d = gcd(h, acc);
            if (d.degree() > 0 && d.degree() < h.degree()) {
                split_roots(d, F, out);
                split_roots(divmod(h, d).first, F, out);
                return;
            }
        }
        fail(ErrorKind::InternalConsistency, "failed to split polynomial in characteristic 2");
    }
    for (uint32_t r = 0; r < F.size(); ++r) {
        FFPoly shifted{F.element(r), F.one()};
        FFPoly t = powmod(shifted, (Q - 1) / 2, h) - FFPoly::constant(F.one());
        FFPoly d = gcd(h, t);
        if (d.degree() > 0 && d.degree() < h.degree()) {
            split_roots(d, F, out);
            split_roots(make_monic(divmod(h, d).first), F, out);
            return;
        }
    }
    fail(ErrorKind::InternalConsistency, "failed to split polynomial over finite field");
}

}  // namespace ffdetail

/// Distinct roots of g lying in F, with multiplicities, sorted by code.
inline std::vector<std::pair<FFElement, int>> roots_in(const FFPoly& g0, const FiniteField& F) {
    require(!g0.is_zero(), ErrorKind::InvalidInput, "roots of the zero polynomial");
    std::vector<FFElement> c;
    for (const auto& a : g0.coeffs()) c.push_back(coerce(a, F));
    FFPoly g = make_monic(FFPoly(c));
    if (g.degree() <= 0) return {};
    FFPoly x{F.zero(), F.one()};
    FFPoly xq = powmod(x, F.size(), g);
    FFPoly h = gcd(g, xq - x);
    std::vector<FFElement> roots;
    ffdetail::split_roots(h, F, roots);
    std::sort(roots.begin(), roots.end());
    std::vector<std::pair<FFElement, int>> out;
    for (const auto& r : roots) {
        int mult = 0;
        FFPoly cur = g;
        FFPoly lin{-r, F.one()};
        while (true) {
            auto [q, rem] = divmod(cur, lin);
            if (!rem.is_zero()) break;
            ++mult;
            cur = q;
        }
        out.emplace_back(r, mult);
    }
    return out;
}

/// Field homomorphism src -> dst given by the image of the polynomial generator.
class FieldEmbedding {
public:
    FieldEmbedding() = default;

    const FiniteField& src() const { return src_; }
    const FiniteField& dst() const { return dst_; }

    FFElement operator()(const FFElement& a) const { return dst_.element(map_[a.in(src_.data()).code()]); }
    bool in_image(const FFElement& b) const { return inv_[b.in(dst_.data()).code()] >= 0; }
    FFElement preimage(const FFElement& b) const {
        int32_t v = inv_[b.in(dst_.data()).code()];
        require(v >= 0, ErrorKind::InternalConsistency, "element is not in the embedded subfield");
        return src_.element(static_cast<uint32_t>(v));
    }

    /// All embeddings src -> dst (same characteristic, deg src | deg dst), least image first.
    /// The optional predicate filters candidates (used to keep towers compatible).
    static FieldEmbedding make(const FiniteField& src, const FiniteField& dst,
                               const std::function<bool(const FieldEmbedding&)>& accept = {}) {
        require(src.characteristic() == dst.characteristic() && dst.degree() % src.degree() == 0,
                ErrorKind::InvalidInput, "no embedding between these fields");
        const uint32_t p = src.characteristic(), m = src.degree();
        const uint32_t Q = dst.size(), q = src.size();
        std::vector<uint32_t> cands;
        if (m == 1) {
            cands.push_back(0);
        } else {
            // subfield of order q inside dst: 0 and powers of g^((Q-1)/(q-1))
            const FieldData* D = dst.data();
            uint32_t step = (Q - 1) / (q - 1);
            for (uint32_t j = 0; j < q - 1; ++j) {
                uint32_t a = D->exp_[static_cast<size_t>(j) * step];
                // evaluate the src modulus at a
                FFElement acc = dst.zero();
                for (int i = static_cast<int>(m); i >= 0; --i)
                    acc = acc * dst.element(a) + dst.from_int(src.modulus()[static_cast<size_t>(i)]);
                if (acc.is_zero()) cands.push_back(a);
            }
            std::sort(cands.begin(), cands.end());
        }
        for (uint32_t alpha : cands) {
            FieldEmbedding e;
            e.src_ = src;
            e.dst_ = dst;
            e.map_.assign(q, 0);
            e.inv_.assign(Q, -1);
            const FieldData* S = src.data();
            for (uint32_t c = 0; c < q; ++c) {
                FFElement acc = dst.zero();
                if (m == 1) {
                    acc = dst.from_int(c);
                } else {
                    auto dg = S->digits(c);
                    FFElement pw = dst.one();
                    for (uint32_t i = 0; i < m; ++i) {
                        acc = acc + dst.from_int(dg[i]) * pw;
                        pw = pw * dst.element(alpha);
                    }
                }
                e.map_[c] = acc.code();
                e.inv_[acc.code()] = static_cast<int32_t>(c);
            }
            (void)p;
            if (!accept || accept(e)) return e;
        }
        fail(ErrorKind::InternalConsistency, "no compatible field embedding found");
    }

private:
    FiniteField src_, dst_;
    std::vector<uint32_t> map_;
    std::vector<int32_t> inv_;
};

inline FFPoly map_poly(const FFPoly& f, const FieldEmbedding& e) {
    std::vector<FFElement> c;
    for (const auto& a : f.coeffs()) c.push_back(e(a.in(e.src().data())));
    return FFPoly(c);
}

}  // namespace endo
