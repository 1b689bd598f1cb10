#pragma once

// Walk matrix, main characteristic polynomial, and main/non-main
// classification of a single graph's spectrum.
//
// The walk matrix W has columns j, Aj, A²j, ...; its exact rank s is the
// number of distinct main eigenvalues, and A^s j = W·(c_0..c_{s-1}) defines
// the main polynomial m(x) = x^s - c_{s-1}x^{s-1} - ... - c_0 with integer
// coefficients. All stopping decisions use exact arithmetic.

#include <hjoin/error.hpp>
#include <hjoin/exact.hpp>
#include <hjoin/graph.hpp>
#include <hjoin/spectral.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace hjoin {

struct WalkData {
    std::size_t s = 0;               // number of distinct main eigenvalues
    IntMatrix W;                     // n×s, columns j, Aj, ..., A^{s-1} j
    std::vector<BigInt> walk_counts; // N_k = jᵀ A^k j, k = 0..s-1
    std::vector<BigInt> main_coeffs; // c_0..c_{s-1}
};

inline WalkData walk_data(const Graph& g) {
    const std::size_t n = g.order();
    if (n == 0) throw error("walk_data: graph must have at least one vertex");
    const IntMatrix a = adjacency(g);

    std::vector<std::vector<BigInt>> cols;
    cols.emplace_back(n, BigInt(1));
    std::vector<BigInt> next = mat_vec(a, cols.back());
    for (;;) {
        IntMatrix candidate(n, cols.size() + 1);
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < n; ++i) candidate(i, j) = cols[j][i];
        for (std::size_t i = 0; i < n; ++i) candidate(i, cols.size()) = next[i];
        if (rank_exact(candidate) <= cols.size()) break;
        cols.push_back(next);
        next = mat_vec(a, cols.back());
    }

    WalkData wd;
    wd.s = cols.size();
    wd.W = IntMatrix(n, wd.s);
    for (std::size_t j = 0; j < wd.s; ++j)
        for (std::size_t i = 0; i < n; ++i) wd.W(i, j) = cols[j][i];

    RationalVector rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = BigRat(next[i]);
    const RationalVector x = solve_exact(wd.W, rhs);
    wd.main_coeffs.reserve(wd.s);
    for (const BigRat& c : x) {
        if (c.get_den() != 1)
            throw error("walk_data: non-integer main polynomial coefficient " + c.get_str());
        wd.main_coeffs.push_back(c.get_num());
    }

    wd.walk_counts.assign(wd.s, BigInt(0));
    for (std::size_t j = 0; j < wd.s; ++j)
        for (std::size_t i = 0; i < n; ++i) wd.walk_counts[j] += wd.W(i, j);
    return wd;
}

inline IntPoly main_poly(const WalkData& wd) {
    std::vector<BigInt> c(wd.s + 1);
    for (std::size_t k = 0; k < wd.s; ++k) c[k] = -wd.main_coeffs[k];
    c[wd.s] = 1;
    return IntPoly(std::move(c));
}

// One eigenspace of A(G): grouped eigenvalue, orthonormal basis columns, and
// the norm of the projection of the all-ones vector onto the space.
struct EigenspaceGroup {
    double value = 0.0;
    std::size_t multiplicity = 0;
    Eigen::MatrixXd basis;
    double j_projection_norm = 0.0;
};

inline std::vector<EigenspaceGroup> grouped_eigenspaces(const Graph& g,
                                                        double group_tol = kDefaultTol) {
    const std::size_t n = g.order();
    if (n == 0) throw error("grouped_eigenspaces: graph must have at least one vertex");
    const SymEigen se = sym_eigen(to_dense(adjacency(g)));
    const double radius = std::max(std::abs(se.values(0)), std::abs(se.values(n - 1)));
    const double gap = group_tol * std::max(1.0, radius);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));

    std::vector<EigenspaceGroup> groups;
    std::size_t k = 0;
    while (k < n) {
        std::size_t end = k + 1;
        while (end < n && se.values(end) - se.values(end - 1) <= gap) ++end;
        EigenspaceGroup grp;
        grp.multiplicity = end - k;
        grp.value = se.values.segment(k, grp.multiplicity).mean();
        grp.basis = se.vectors.middleCols(static_cast<Eigen::Index>(k),
                                          static_cast<Eigen::Index>(grp.multiplicity));
        // basis columns are orthonormal, so the projection norm is the
        // coefficient norm
        grp.j_projection_norm = (grp.basis.transpose() * ones).norm();
        groups.push_back(std::move(grp));
        k = end;
    }
    return groups;
}

// Spectrum of a single graph with every entry flagged main or non-main.
// Two independent routes must agree: the projection of j onto each
// eigenspace, and the roots of the main polynomial. Disagreement (or a main
// count different from the exact rank s) is an error, not a guess.
inline Spectrum classify_spectrum(const Graph& g, const WalkData& wd,
                                  double tol = kMainFlagTol, double group_tol = kDefaultTol) {
    const std::size_t n = g.order();
    if (n == 0) throw error("classify_spectrum: graph must have at least one vertex");
    const IntPoly m = main_poly(wd);
    const auto groups = grouped_eigenspaces(g, group_tol);

    std::size_t main_count = 0;
    Spectrum out;
    out.ambient_order = static_cast<unsigned long>(n);
    const double flag_threshold = tol * std::sqrt(static_cast<double>(n));
    for (const auto& grp : groups) {
        const bool is_main = grp.j_projection_norm > flag_threshold;
        const bool poly_root =
            std::abs(poly_eval_at_double(m, grp.value)) <=
            tol * std::pow(1.0 + std::abs(grp.value), static_cast<double>(wd.s));
        if (is_main != poly_root)
            throw error("classify_spectrum: projection and main-polynomial routes disagree at "
                        "eigenvalue " + std::to_string(grp.value));
        if (is_main) ++main_count;
        SpectrumEntry e;
        e.value = grp.value;
        e.multiplicity = static_cast<unsigned long>(grp.multiplicity);
        e.origins.push_back(is_main ? kOriginComponentMain : kOriginComponentNonMain);
        out.entries.push_back(std::move(e));
    }
    if (main_count != wd.s)
        throw error("classify_spectrum: " + std::to_string(main_count) +
                    " main eigenvalues flagged, walk matrix rank is " + std::to_string(wd.s));
    std::reverse(out.entries.begin(), out.entries.end());
    out.validate();
    return out;
}

inline Spectrum classify_spectrum(const Graph& g, double tol = kMainFlagTol,
                                  double group_tol = kDefaultTol) {
    return classify_spectrum(g, walk_data(g), tol, group_tol);
}

// Orthonormal basis of ColSp(W) = Main(G): exact Gram-Schmidt over the
// rationals, floats only for the final normalization.
inline Eigen::MatrixXd main_basis(const WalkData& wd) {
    const std::size_t n = wd.W.rows(), s = wd.s;
    std::vector<std::vector<BigRat>> u(s, std::vector<BigRat>(n));
    for (std::size_t k = 0; k < s; ++k) {
        for (std::size_t i = 0; i < n; ++i) u[k][i] = BigRat(wd.W(i, k));
        for (std::size_t j = 0; j < k; ++j) {
            BigRat dot = 0, norm2 = 0;
            for (std::size_t i = 0; i < n; ++i) {
                dot += u[j][i] * BigRat(wd.W(i, k));
                norm2 += u[j][i] * u[j][i];
            }
            const BigRat f = dot / norm2;
            for (std::size_t i = 0; i < n; ++i) u[k][i] -= f * u[j][i];
        }
    }
    Eigen::MatrixXd b(n, s);
    for (std::size_t k = 0; k < s; ++k) {
        for (std::size_t i = 0; i < n; ++i) b(i, k) = u[k][i].get_d();
        b.col(k).normalize();
    }
    return b;
}

} // namespace hjoin
