#pragma once

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "endo/hecke/group.hpp"

namespace endo::hecke {

// ---------------------------------------------------------------- isotypic decomposition

struct IsotypicBlock {
    size_t irrep = 0;
    long mult_dim = 0;     // dim V(R'), so the isotypic part has dimension mult_dim * dim R'
    CMat projector;        // onto the R'-isotypic part of V
    CMat sigma_block;      // sigma on V(R') = Hom_Gamma(R', V)
    CyclotomicValue a;     // Tr(sigma | V(R'))
};

struct IsotypicDecomposition {
    std::vector<IsotypicBlock> blocks;  // one per irrep, in table order
    std::vector<CMat> twisted_sigma;    // per class: sigma * gamma_c
    std::vector<CyclotomicValue> twisted_trace;
    bool idempotent = true, sum_identity = true, dims_ok = true, traces_ok = true;
    std::vector<CyclotomicValue> a_values() const {
        std::vector<CyclotomicValue> a;
        for (const auto& b : blocks) a.push_back(b.a);
        return a;
    }
};

/// V given by one matrix per element of Gamma, sigma = sigma(Fr_x) on V commuting with Gamma.
inline IsotypicDecomposition isotypic_decompose(const FiniteGroupData& G, const std::vector<CMat>& V, const CMat& sigma) {
    const size_t n = G.order();
    require(V.size() == n, ErrorKind::InvalidDatum, "need one matrix per group element");
    const size_t dimV = V[0].rows();
    require(sigma.rows() == dimV && sigma.cols() == dimV, ErrorKind::InvalidDatum, "sigma has the wrong size");
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            require(V[static_cast<size_t>(G.mul[a][b])] == V[a] * V[b], ErrorKind::InvalidDatum,
                    "Gamma matrices are not a representation at (" + G.element_names[a] + ", " + G.element_names[b] + ")");
    for (size_t g = 0; g < n; ++g)
        require(V[g] * sigma == sigma * V[g], ErrorKind::InvalidDatum,
                "sigma does not commute with gamma = " + G.element_names[g]);

    IsotypicDecomposition D;
    const CyclotomicValue N(static_cast<int>(n));
    CMat total(dimV, dimV);
    long dim_sum = 0;
    for (size_t R = 0; R < G.num_irreps(); ++R) {
        IsotypicBlock B;
        B.irrep = R;
        const CyclotomicValue d(static_cast<int>(G.dim(R)));
        B.projector = CMat(dimV, dimV);
        CMat E00(dimV, dimV);
        for (size_t g = 0; g < n; ++g) {
            const size_t gi = static_cast<size_t>(G.inv[g]);
            B.projector = B.projector + G.chi_at(R, static_cast<int>(gi)) * V[g];
            E00 = E00 + G.irrep_mats[R][gi](0, 0) * V[g];
        }
        B.projector = (d / N) * B.projector;
        E00 = (d / N) * E00;
        if (B.projector * B.projector != B.projector) D.idempotent = false;
        total = total + B.projector;
        auto img = image_basis(E00);
        B.mult_dim = static_cast<long>(img.rank());
        B.sigma_block = B.mult_dim ? restrict_to(sigma, img) : CMat(0, 0);
        B.a = B.sigma_block.trace();
        if (B.a * d != (sigma * B.projector).trace()) D.traces_ok = false;
        if (CyclotomicValue(static_cast<int>(B.mult_dim)) * d != B.projector.trace()) D.dims_ok = false;
        dim_sum += B.mult_dim * G.dim(R);
        D.blocks.push_back(std::move(B));
    }
    if (total != CMat::identity(dimV)) D.sum_identity = false;
    if (dim_sum != static_cast<long>(dimV)) D.dims_ok = false;
    for (size_t c = 0; c < G.num_classes(); ++c) {
        CMat t = sigma * V[static_cast<size_t>(G.classes[c][0])];
        D.twisted_trace.push_back(t.trace());
        D.twisted_sigma.push_back(std::move(t));
    }
    return D;
}

// ---------------------------------------------------------------- eigen-system

/// m^{R,R'}_{R''} = <R (x) R', R''>
inline std::vector<std::vector<std::vector<long>>> tensor_multiplicities(const FiniteGroupData& G) {
    const size_t k = G.num_irreps();
    std::vector<std::vector<std::vector<long>>> m(k, std::vector<std::vector<long>>(k, std::vector<long>(k)));
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b)
            for (size_t c = 0; c < k; ++c) {
                CyclotomicValue s(0);
                for (size_t cl = 0; cl < G.num_classes(); ++cl)
                    s += CyclotomicValue(static_cast<int>(G.class_size(cl))) * G.chi[a][cl] * G.chi[b][cl] * G.chi[c][cl].conj();
                s = s / CyclotomicValue(static_cast<int>(G.order()));
                require(s.is_rational() && denominator(s.rational_value()) == 1 && s.rational_value() >= 0,
                        ErrorKind::InternalConsistency, "tensor multiplicity is not a nonnegative integer");
                m[a][b][c] = static_cast<long>(numerator(s.rational_value()));
            }
    return m;
}

struct PointData {
    std::vector<CyclotomicValue> a;              // a_{V,R',x} per irrep
    std::vector<CyclotomicValue> twisted_trace;  // Tr(sigma(Fr_x) gamma, V) per class
};

/// formal basis {f_R}; T_{V,x} f_R = sum_{R'} a_{V,R',x} f_{R (x) R'}
struct EigenSystem {
    FiniteGroupData G;
    std::vector<std::vector<std::vector<long>>> mult;
    std::map<std::string, PointData> points;

    explicit EigenSystem(FiniteGroupData g) : G(std::move(g)), mult(tensor_multiplicities(G)) {}

    void add_point(const std::string& x, const IsotypicDecomposition& D) {
        points[x] = PointData{D.a_values(), D.twisted_trace};
    }
    const PointData& at(const std::string& x) const {
        auto it = points.find(x);
        require(it != points.end(), ErrorKind::InvalidInput, "no point " + x + " in the eigen-system");
        return it->second;
    }
};

/// column R holds T_{V,x} f_R in the f basis
inline CMat hecke_matrix(const EigenSystem& S, const std::string& x) {
    const auto& a = S.at(x).a;
    const size_t k = S.G.num_irreps();
    CMat T(k, k);
    for (size_t R = 0; R < k; ++R)
        for (size_t Rp = 0; Rp < k; ++Rp)
            for (size_t Rpp = 0; Rpp < k; ++Rpp)
                if (S.mult[R][Rp][Rpp]) T(Rpp, R) += CyclotomicValue(static_cast<int>(S.mult[R][Rp][Rpp])) * a[Rp];
    return T;
}

struct FourierResult {
    std::vector<std::string> classes;
    std::vector<std::vector<CyclotomicValue>> eigenvectors;  // per class, coordinates in the f basis
    std::vector<CyclotomicValue> eigenvalues;                // A_{x,[gamma]}
    std::vector<CyclotomicValue> twisted_traces;             // Tr(sigma(Fr_x) gamma, V)
    bool eigen_ok = true;
    bool twisted_ok = true;
};

/// fhat_[gamma] = sum_R conj(chi_R(gamma)) f_R, eigenvalue sum_R' chi_R'(gamma) a_R'
inline FourierResult fourier_diagonalize(const EigenSystem& S, const std::string& x) {
    const auto& G = S.G;
    const auto& P = S.at(x);
    CMat T = hecke_matrix(S, x);
    FourierResult F;
    for (size_t c = 0; c < G.num_classes(); ++c) {
        std::vector<CyclotomicValue> v;
        CyclotomicValue A(0);
        for (size_t R = 0; R < G.num_irreps(); ++R) {
            v.push_back(G.chi[R][c].conj());
            A += G.chi[R][c] * P.a[R];
        }
        auto Tv = T.apply(v);
        for (size_t i = 0; i < v.size(); ++i)
            if (Tv[i] != A * v[i]) F.eigen_ok = false;
        require(F.eigen_ok, ErrorKind::InternalConsistency,
                "Hecke eigen-identity fails at " + x + " for class " + G.class_name(c));
        F.classes.push_back(G.class_name(c));
        F.eigenvectors.push_back(std::move(v));
        F.eigenvalues.push_back(A);
        F.twisted_traces.push_back(P.twisted_trace[c]);
        if (A != P.twisted_trace[c]) F.twisted_ok = false;
    }
    return F;
}

struct InverseFourier {
    CMat forward;  // classes x irreps: fhat = forward f
    CMat inverse;  // irreps x classes: f_R = (1/|Gamma|) sum_c |c| chi_R(c) fhat_c
    bool round_trip = false;
};

inline InverseFourier inverse_fourier(const EigenSystem& S) {
    const auto& G = S.G;
    InverseFourier R;
    const size_t k = G.num_irreps(), c = G.num_classes();
    R.forward = CMat(c, k);
    R.inverse = CMat(k, c);
    for (size_t i = 0; i < c; ++i)
        for (size_t r = 0; r < k; ++r) {
            R.forward(i, r) = G.chi[r][i].conj();
            R.inverse(r, i) = CyclotomicValue(Rational(G.class_size(i), static_cast<long long>(G.order()))) * G.chi[r][i];
        }
    R.round_trip = R.inverse * R.forward == CMat::identity(k) && R.forward * R.inverse == CMat::identity(c);
    return R;
}

inline int group_power(const FiniteGroupData& G, int g, long k) {
    int r = G.identity;
    long e = ((k % static_cast<long>(G.order())) + static_cast<long>(G.order())) % static_cast<long>(G.order());
    for (long i = 0; i < e; ++i) r = G.mul[static_cast<size_t>(r)][static_cast<size_t>(g)];
    return r;
}

/// d-point discrete transform of a function on mu_d: vhat_k = sum_j zeta_d^(-jk) v_j
inline std::vector<CyclotomicValue> discrete_fourier(const std::vector<CyclotomicValue>& v) {
    const long d = static_cast<long>(v.size());
    std::vector<CyclotomicValue> out;
    for (long k = 0; k < d; ++k) {
        CyclotomicValue s(0);
        for (long j = 0; j < d; ++j) s += CyclotomicValue::root(-j * k, d) * v[static_cast<size_t>(j)];
        out.push_back(s);
    }
    return out;
}

inline std::vector<CyclotomicValue> inverse_discrete_fourier(const std::vector<CyclotomicValue>& vh) {
    const long d = static_cast<long>(vh.size());
    std::vector<CyclotomicValue> out;
    for (long j = 0; j < d; ++j) {
        CyclotomicValue s(0);
        for (long k = 0; k < d; ++k) s += CyclotomicValue::root(j * k, d) * vh[static_cast<size_t>(k)];
        out.push_back(s / CyclotomicValue(static_cast<int>(d)));
    }
    return out;
}

// ---------------------------------------------------------------- Z2 toy model

struct ToyObject {
    long plus = 0, minus = 0;  // exponents of zeta_n
};

struct ToyMorphism {
    long lp = 0, lm = 0;
};

struct ToyCensus {
    long n = 0;
    std::vector<ToyObject> objects;    // (eps, eps^-1)
    long iso_classes = 0;
    std::vector<ToyMorphism> witness;  // from (1,1) to objects[i]
    bool swap_bookkeeping = false;     // S* A_+ = A_-, S* A_- = A_+
    bool swap_involution = false;
    std::vector<long> square_roots;    // exponents k with zeta^(2k) = 1
    long equivariant_classes = 0;
};

inline ToyObject toy_act(const ToyObject& o, const ToyMorphism& m, long n) {
    auto md = [n](long v) { return ((v % n) + n) % n; };
    return {md(o.plus + m.lp - m.lm), md(o.minus + m.lm - m.lp)};
}

inline ToyCensus z2_toy_model(long n) {
    require(n >= 1 && n <= 64, ErrorKind::InvalidModel, "toy model order must lie in [1, 64]");
    require(n % 2 == 0, ErrorKind::InvalidModel, "odd order " + std::to_string(n) + " has no square root of the identity besides 1");
    ToyCensus C;
    C.n = n;
    for (long k = 0; k < n; ++k) C.objects.push_back({k, (n - k) % n});
    std::vector<long> parent(static_cast<size_t>(n));
    std::iota(parent.begin(), parent.end(), 0L);
    std::function<long(long)> find = [&](long v) { return parent[static_cast<size_t>(v)] == v ? v : parent[static_cast<size_t>(v)] = find(parent[static_cast<size_t>(v)]); };
    for (const auto& o : C.objects)
        for (long lp = 0; lp < n; ++lp)
            for (long lm = 0; lm < n; ++lm) {
                auto t = toy_act(o, {lp, lm}, n);
                require((t.plus + t.minus) % n == 0, ErrorKind::InternalConsistency, "morphism leaves the object set");
                parent[static_cast<size_t>(find(o.plus))] = find(t.plus);
            }
    for (long k = 0; k < n; ++k) C.iso_classes += find(k) == k;
    for (const auto& o : C.objects) {
        ToyMorphism w{-1, -1};
        for (long lp = 0; lp < n && w.lp < 0; ++lp)
            for (long lm = 0; lm < n && w.lp < 0; ++lm) {
                auto t = toy_act({0, 0}, {lp, lm}, n);
                if (t.plus == o.plus && t.minus == o.minus) w = {lp, lm};
            }
        C.witness.push_back(w);
    }
    // S* exchanges the two summands A_+ and A_-, i.e. the two scalars
    enum Label { Plus, Minus };
    auto S = [](Label l) { return l == Plus ? Minus : Plus; };
    auto Sobj = [](const ToyObject& o) { return ToyObject{o.minus, o.plus}; };
    C.swap_bookkeeping = S(Plus) == Minus && S(Minus) == Plus;
    C.swap_involution = S(S(Plus)) == Plus && S(S(Minus)) == Minus;
    for (const auto& o : C.objects) {
        auto t = Sobj(Sobj(o));
        if (t.plus != o.plus || t.minus != o.minus) C.swap_involution = false;
    }
    for (long k = 0; k < n; ++k)
        if ((2 * k) % n == 0) C.square_roots.push_back(k);
    // automorphisms are central scalars, so conjugation fixes each equivariant structure
    C.equivariant_classes = static_cast<long>(C.square_roots.size());
    return C;
}

}  // namespace endo::hecke
