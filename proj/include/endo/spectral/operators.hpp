#pragma once

#include <string>
#include <vector>

#include "endo/algebra/matrix.hpp"
#include "endo/error.hpp"

namespace endo::spectral {

using IntMatrix = Matrix<long long>;

inline constexpr const char* kLabelCaveat =
    "labels are defined only up to the swap; which component matches which irrep is a choice";

/// Free Z-module on component (or irrep) labels with a label permutation Phi.
struct ComponentModule {
    std::vector<std::string> labels;
    std::vector<int> swap;  // Phi as a permutation of basis indices

    size_t rank() const { return labels.size(); }

    static ComponentModule proper() { return {{"F1", "F2"}, {1, 0}}; }
    static ComponentModule improper() { return {{"F1*", "F2*"}, {1, 0}}; }
    static ComponentModule irreps() { return {{"B+", "B-"}, {1, 0}}; }

    void validate() const {
        require(!labels.empty(), ErrorKind::InvalidModule, "empty component basis");
        require(swap.size() == labels.size(), ErrorKind::InvalidModule, "swap map missing or of wrong size");
        std::vector<bool> hit(swap.size(), false);
        bool moves = false;
        for (size_t i = 0; i < swap.size(); ++i) {
            int j = swap[i];
            require(j >= 0 && static_cast<size_t>(j) < swap.size() && !hit[static_cast<size_t>(j)],
                    ErrorKind::InvalidModule, "swap map is not a permutation");
            hit[static_cast<size_t>(j)] = true;
            require(swap[static_cast<size_t>(j)] == static_cast<int>(i), ErrorKind::InvalidModule,
                    "swap map is not an involution");
            moves = moves || j != static_cast<int>(i);
        }
        require(moves, ErrorKind::InvalidModule, "swap map is the identity");
    }

    /// column i is the image of basis vector i
    IntMatrix phi() const {
        validate();
        IntMatrix P(rank(), rank());
        for (size_t i = 0; i < rank(); ++i) P(static_cast<size_t>(swap[i]), i) = 1;
        return P;
    }
};

enum class HooftOp { T, TTilde, TTildeInverseSide };

/// T = 1 + Phi + Phi^-1 on a single module; T~ = 1 + Phi as a map between the proper and
/// improper bases (either direction, F_i <-> F_i*).
inline IntMatrix thooft_matrix(const ComponentModule& M, HooftOp op = HooftOp::T) {
    IntMatrix I = IntMatrix::identity(M.rank()), P = M.phi();
    if (op == HooftOp::T) return I + P + P.transpose();
    return I + P;
}

/// Graded module proper (+) improper, basis F1, F2, F1*, F2*.
struct GradedOperators {
    IntMatrix T, TTilde, one_plus_T, TTilde_squared;
    bool identity_holds = false;
};

inline IntMatrix block(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c, const IntMatrix& d) {
    const size_t n = a.rows();
    IntMatrix R(2 * n, 2 * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            R(i, j) = a(i, j);
            R(i, j + n) = b(i, j);
            R(i + n, j) = c(i, j);
            R(i + n, j + n) = d(i, j);
        }
    return R;
}

inline GradedOperators graded_thooft(const ComponentModule& proper, const ComponentModule& improper) {
    require(proper.rank() == improper.rank(), ErrorKind::InvalidModule, "graded pieces of different rank");
    GradedOperators G;
    const size_t n = proper.rank();
    IntMatrix Z(n, n);
    G.T = block(thooft_matrix(proper), Z, Z, thooft_matrix(improper));
    G.TTilde = block(Z, thooft_matrix(improper, HooftOp::TTildeInverseSide), thooft_matrix(proper, HooftOp::TTilde), Z);
    G.one_plus_T = IntMatrix::identity(2 * n) + G.T;
    G.TTilde_squared = G.TTilde * G.TTilde;
    G.identity_holds = G.TTilde_squared == G.one_plus_T;
    return G;
}

/// Wilson operator for U with (dim U, dim det U): the sign-twisted summand goes across.
struct WilsonReport {
    IntMatrix W;
    IntMatrix WTilde, WTilde_squared, one_plus_W;  // graded dual module, dims halved
    bool tilde_identity = false;
    bool matches_thooft = false;           // exact equality with T on {F1, F2}
    bool matches_after_swap = false;       // also after relabeling both bases simultaneously
    std::vector<long long> eigenvector{1, 1};
    long long eigenvalue = 0;
    bool is_eigenvector = false;
    std::string caveat = kLabelCaveat;
};

inline WilsonReport wilson_matrix(const ComponentModule& M, long long dim_u = 2, long long dim_det = 1) {
    M.validate();
    require(M.rank() == 2, ErrorKind::InvalidModule, "Wilson operator is defined on a rank-2 irrep module");
    require(dim_u >= 1 && dim_det >= 1, ErrorKind::InvalidInput, "dimensions must be positive");
    WilsonReport R;
    // B+ -> dim_det B+ + dim_u B-; B- -> dim_u B+ + dim_det B-
    IntMatrix I = IntMatrix::identity(2), P = M.phi();
    R.W = dim_det * I + dim_u * P;
    // the dual graded module carries U' with dims (dim_u / 2, dim_det) on each side
    long long half = dim_u / 2;
    IntMatrix Wt = dim_det * I + half * P;
    IntMatrix Z(2, 2);
    R.WTilde = block(Z, Wt, Wt, Z);
    R.WTilde_squared = R.WTilde * R.WTilde;
    R.one_plus_W = IntMatrix::identity(4) + block(R.W, Z, Z, R.W);
    R.tilde_identity = dim_u % 2 == 0 && R.WTilde_squared == R.one_plus_W;
    IntMatrix T = thooft_matrix(ComponentModule::proper());
    R.matches_thooft = R.W == T;
    R.matches_after_swap = P * R.W * P == T;
    auto img = R.W.apply(R.eigenvector);
    R.eigenvalue = img[0];
    R.is_eigenvector = img[0] == img[1];
    return R;
}

}  // namespace endo::spectral
