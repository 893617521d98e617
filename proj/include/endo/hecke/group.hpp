#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "endo/algebra/cyclotomic.hpp"
#include "endo/algebra/matrix.hpp"

namespace endo::hecke {

using CMat = Matrix<CyclotomicValue>;

/// Finite group by multiplication table, with explicit irreducible matrices and the class character table.
struct FiniteGroupData {
    std::string name;
    std::vector<std::string> element_names;
    std::vector<std::vector<int>> mul;  // mul[a][b] = a b
    std::vector<int> inv;
    int identity = 0;
    std::vector<std::vector<int>> classes;  // classes[0] = {identity}
    std::vector<int> class_of;
    std::vector<std::string> irrep_names;
    std::vector<std::vector<CMat>> irrep_mats;        // [irrep][element]
    std::vector<std::vector<CyclotomicValue>> chi;    // [irrep][class]
    bool abelian = false;
    std::vector<long> cyclic_orders;  // abelian: Z_{n_1} x ...; irrep k <-> element k

    size_t order() const { return mul.size(); }
    size_t num_classes() const { return classes.size(); }
    size_t num_irreps() const { return chi.size(); }
    long dim(size_t R) const { return static_cast<long>(irrep_mats[R][0].rows()); }
    const CyclotomicValue& chi_at(size_t R, int g) const { return chi[R][static_cast<size_t>(class_of[static_cast<size_t>(g)])]; }
    long class_size(size_t c) const { return static_cast<long>(classes[c].size()); }
    std::string class_name(size_t c) const { return "[" + element_names[static_cast<size_t>(classes[c][0])] + "]"; }
};

namespace detail {

inline void finish_group(FiniteGroupData& G) {
    const size_t n = G.mul.size();
    G.inv.assign(n, -1);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            if (G.mul[a][b] == G.identity) G.inv[a] = static_cast<int>(b);
    G.class_of.assign(n, -1);
    G.classes.clear();
    for (size_t g = 0; g < n; ++g) {
        if (G.class_of[g] >= 0) continue;
        std::vector<int> cls;
        for (size_t h = 0; h < n; ++h) {
            int c = G.mul[static_cast<size_t>(G.mul[h][g])][static_cast<size_t>(G.inv[h])];
            if (std::find(cls.begin(), cls.end(), c) == cls.end()) cls.push_back(c);
        }
        std::sort(cls.begin(), cls.end());
        for (int c : cls) G.class_of[static_cast<size_t>(c)] = static_cast<int>(G.classes.size());
        G.classes.push_back(cls);
    }
    G.chi.clear();
    for (const auto& mats : G.irrep_mats) {
        std::vector<CyclotomicValue> row;
        for (const auto& cls : G.classes) row.push_back(mats[static_cast<size_t>(cls[0])].trace());
        G.chi.push_back(row);
    }
}

}  // namespace detail

struct GroupCheck {
    bool homomorphisms = true, row_orthogonal = true, column_orthogonal = true, square = true;
    bool ok() const { return homomorphisms && row_orthogonal && column_orthogonal && square; }
};

inline GroupCheck validate(const FiniteGroupData& G) {
    GroupCheck R;
    const size_t n = G.order();
    for (const auto& mats : G.irrep_mats)
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b)
                if (mats[static_cast<size_t>(G.mul[a][b])] != mats[a] * mats[b]) R.homomorphisms = false;
    R.square = G.num_classes() == G.num_irreps();
    const CyclotomicValue N(static_cast<int>(n));
    for (size_t i = 0; i < G.num_irreps(); ++i)
        for (size_t j = 0; j < G.num_irreps(); ++j) {
            CyclotomicValue s(0);
            for (size_t c = 0; c < G.num_classes(); ++c)
                s += CyclotomicValue(static_cast<int>(G.class_size(c))) * G.chi[i][c] * G.chi[j][c].conj();
            if (s != (i == j ? N : CyclotomicValue(0))) R.row_orthogonal = false;
        }
    for (size_t c = 0; c < G.num_classes(); ++c)
        for (size_t d = 0; d < G.num_classes(); ++d) {
            CyclotomicValue s(0);
            for (size_t i = 0; i < G.num_irreps(); ++i) s += G.chi[i][c] * G.chi[i][d].conj();
            CyclotomicValue want = c == d ? CyclotomicValue(Rational(static_cast<long long>(n), G.class_size(c))) : CyclotomicValue(0);
            if (s != want) R.column_orthogonal = false;
        }
    return R;
}

/// Z_{n_1} x ... x Z_{n_r}; an empty list is the trivial group
inline FiniteGroupData abelian_group(const std::vector<long>& orders) {
    for (long o : orders) require(o >= 1, ErrorKind::InvalidInput, "cyclic factor orders must be positive");
    FiniteGroupData G;
    G.abelian = true;
    G.cyclic_orders = orders;
    size_t n = 1;
    for (long o : orders) n *= static_cast<size_t>(o);
    auto digits = [&](size_t e) {
        std::vector<long> d;
        for (long o : orders) {
            d.push_back(static_cast<long>(e % static_cast<size_t>(o)));
            e /= static_cast<size_t>(o);
        }
        return d;
    };
    auto index = [&](const std::vector<long>& d) {
        size_t e = 0, s = 1;
        for (size_t i = 0; i < orders.size(); ++i) {
            e += static_cast<size_t>(d[i]) * s;
            s *= static_cast<size_t>(orders[i]);
        }
        return static_cast<int>(e);
    };
    G.name = "trivial";
    if (!orders.empty()) {
        G.name.clear();
        for (long o : orders) G.name += (G.name.empty() ? "Z" : "xZ") + std::to_string(o);
    }
    G.mul.assign(n, std::vector<int>(n));
    for (size_t a = 0; a < n; ++a) {
        auto da = digits(a);
        std::string nm;
        for (size_t i = 0; i < da.size(); ++i) nm += (i ? "," : "") + std::to_string(da[i]);
        G.element_names.push_back(orders.empty() ? "e" : "(" + nm + ")");
        for (size_t b = 0; b < n; ++b) {
            auto db = digits(b);
            for (size_t i = 0; i < orders.size(); ++i) db[i] = (da[i] + db[i]) % orders[i];
            G.mul[a][b] = index(db);
        }
    }
    for (size_t k = 0; k < n; ++k) {
        auto dk = digits(k);
        std::vector<CMat> mats;
        for (size_t e = 0; e < n; ++e) {
            auto de = digits(e);
            CyclotomicValue v(1);
            for (size_t i = 0; i < orders.size(); ++i) v *= CyclotomicValue::root(dk[i] * de[i], orders[i]);
            mats.push_back(CMat{{v}});
        }
        G.irrep_mats.push_back(mats);
        G.irrep_names.push_back("chi" + G.element_names[k]);
    }
    detail::finish_group(G);
    return G;
}

/// S_3 as permutations of {0,1,2}; irreps trivial, sign, standard (on the sum-zero plane)
inline FiniteGroupData s3_group() {
    using Perm = std::vector<int>;
    const std::vector<Perm> P{{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    const std::vector<std::string> names{"e", "(01)", "(02)", "(12)", "(012)", "(021)"};
    FiniteGroupData G;
    G.name = "S3";
    G.element_names = names;
    auto idx = [&](const Perm& p) { return static_cast<int>(std::find(P.begin(), P.end(), p) - P.begin()); };
    G.mul.assign(6, std::vector<int>(6));
    for (size_t a = 0; a < 6; ++a)
        for (size_t b = 0; b < 6; ++b) {
            Perm c(3);
            for (size_t i = 0; i < 3; ++i) c[i] = P[a][static_cast<size_t>(P[b][i])];  // (ab)(i) = a(b(i))
            G.mul[a][b] = idx(c);
        }
    auto sign = [](const Perm& p) {
        int inv = 0;
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = i + 1; j < 3; ++j) inv += p[i] > p[j];
        return inv % 2 ? -1 : 1;
    };
    std::vector<CMat> triv, sgn, std2;
    for (const auto& p : P) {
        triv.push_back(CMat{{CyclotomicValue(1)}});
        sgn.push_back(CMat{{CyclotomicValue(sign(p))}});
        // basis v1 = e0 - e1, v2 = e1 - e2; w = c1 v1 + c2 v2 has c1 = w0, c2 = w0 + w1
        CMat M(2, 2);
        for (size_t j = 0; j < 2; ++j) {
            std::vector<int> w(3, 0);
            w[static_cast<size_t>(p[j])] += 1;
            w[static_cast<size_t>(p[j + 1])] -= 1;
            M(0, j) = CyclotomicValue(w[0]);
            M(1, j) = CyclotomicValue(w[0] + w[1]);
        }
        std2.push_back(M);
    }
    G.irrep_mats = {triv, sgn, std2};
    G.irrep_names = {"trivial", "sign", "standard"};
    detail::finish_group(G);
    return G;
}

/// left-regular representation
inline std::vector<CMat> regular_rep(const FiniteGroupData& G) {
    const size_t n = G.order();
    std::vector<CMat> out;
    for (size_t g = 0; g < n; ++g) {
        CMat M(n, n);
        for (size_t h = 0; h < n; ++h) M(static_cast<size_t>(G.mul[g][h]), h) = CyclotomicValue(1);
        out.push_back(M);
    }
    return out;
}

// ---------------------------------------------------------------- exact linear algebra

/// reduced row echelon form in place; returns pivot columns
inline std::vector<size_t> rref(CMat& M) {
    std::vector<size_t> piv;
    size_t r = 0;
    for (size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
        size_t p = r;
        while (p < M.rows() && M(p, c).is_zero()) ++p;
        if (p == M.rows()) continue;
        for (size_t j = 0; j < M.cols(); ++j) std::swap(M(p, j), M(r, j));
        CyclotomicValue s = M(r, c).inv();
        for (size_t j = 0; j < M.cols(); ++j) M(r, j) = s * M(r, j);
        for (size_t i = 0; i < M.rows(); ++i) {
            if (i == r || M(i, c).is_zero()) continue;
            CyclotomicValue f = M(i, c);
            for (size_t j = 0; j < M.cols(); ++j) M(i, j) = M(i, j) - f * M(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

/// basis of the column space: columns b_j with b_j[pivot_i] = delta_ij
struct ImageBasis {
    CMat B;
    std::vector<size_t> pivots;
    size_t rank() const { return pivots.size(); }
};

inline ImageBasis image_basis(const CMat& P) {
    CMat T = P.transpose();
    auto piv = rref(T);
    ImageBasis R;
    R.pivots = piv;
    R.B = CMat(P.rows(), piv.size());
    for (size_t j = 0; j < piv.size(); ++j)
        for (size_t i = 0; i < P.rows(); ++i) R.B(i, j) = T(j, i);
    return R;
}

/// matrix of S on the span of an S-stable image basis
inline CMat restrict_to(const CMat& S, const ImageBasis& I) {
    CMat SB = S * I.B, X(I.rank(), I.rank());
    for (size_t j = 0; j < I.rank(); ++j)
        for (size_t i = 0; i < I.rank(); ++i) X(i, j) = SB(I.pivots[i], j);
    require(I.B * X == SB, ErrorKind::InternalConsistency, "subspace is not stable under the restricted operator");
    return X;
}

}  // namespace endo::hecke
