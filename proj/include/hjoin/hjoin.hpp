#pragma once

// The H-join of a family of graphs: associated matrix assembly, spectrum,
// exact characteristic polynomial, eigenvector reconstruction, the explicit
// join for oracle checks, and the regular-case quotient matrix.
//
// Layout convention used throughout: component vertex blocks follow spec
// order, component i occupying [vertex_offsets[i], vertex_offsets[i]+n_i).
// The associated matrix uses the same order with blocks of width s_i
// starting at AssocMatrix::offsets[i]; eigenvector assembly (v_i = W_i·α_i)
// relies on the two bookkeepings agreeing.

#include <hjoin/error.hpp>
#include <hjoin/exact.hpp>
#include <hjoin/graph.hpp>
#include <hjoin/spectral.hpp>
#include <hjoin/walk.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

namespace hjoin {

struct JoinSpec {
    Graph h;
    std::vector<Graph> components;

    void validate() const {
        if (components.size() != h.order())
            throw error("join spec: " + std::to_string(components.size()) +
                        " components for a host of order " + std::to_string(h.order()));
        for (std::size_t i = 0; i < components.size(); ++i)
            if (components[i].order() == 0)
                throw error("join spec: component " + std::to_string(i) + " is empty");
    }

    std::size_t total_order() const {
        std::size_t n = 0;
        for (const auto& g : components) n += g.order();
        return n;
    }

    std::vector<std::size_t> vertex_offsets() const {
        std::vector<std::size_t> off(components.size());
        std::size_t acc = 0;
        for (std::size_t i = 0; i < components.size(); ++i) {
            off[i] = acc;
            acc += components[i].order();
        }
        return off;
    }
};

inline std::vector<WalkData> component_walk_data(const JoinSpec& spec) {
    std::vector<WalkData> wds;
    wds.reserve(spec.components.size());
    for (const auto& g : spec.components) wds.push_back(walk_data(g));
    return wds;
}

// Definition-level join: component edges plus complete bipartite edges
// between blocks i and j for every host edge ij.
inline Graph hjoin_explicit(const JoinSpec& spec) {
    spec.validate();
    const auto off = spec.vertex_offsets();
    Graph g(spec.total_order());
    for (std::size_t i = 0; i < spec.components.size(); ++i)
        for (const auto& [u, v] : spec.components[i].edges()) g.add_edge(off[i] + u, off[i] + v);
    for (const auto& [r, s] : spec.h.edges())
        for (std::size_t u = 0; u < spec.components[r].order(); ++u)
            for (std::size_t v = 0; v < spec.components[s].order(); ++v)
                g.add_edge(off[r] + u, off[s] + v);
    return g;
}

enum class BlockKind { companion, walk, zero };

struct AssocMatrix {
    IntMatrix m;                          // s×s with s = Σ s_i
    std::vector<std::size_t> offsets;     // block start per component
    std::vector<std::size_t> block_sizes; // s_i
    std::vector<char> host_edge;          // p×p δ_{i,j}(H) flags, row-major

    std::size_t size() const { return m.rows(); }

    BlockKind kind(std::size_t i, std::size_t j) const {
        if (i == j) return BlockKind::companion;
        return host_edge[i * block_sizes.size() + j] ? BlockKind::walk : BlockKind::zero;
    }
};

// Block layout: diagonal blocks are the Frobenius companion matrices of the
// main polynomials in the subdiagonal-ones / last-column-coefficients
// orientation; block (i,j) on a host edge has the walk counts of component j
// as its first row and zeros elsewhere.
inline AssocMatrix assoc_matrix_from(const JoinSpec& spec, const std::vector<WalkData>& wds) {
    const std::size_t p = spec.components.size();
    AssocMatrix assoc;
    assoc.block_sizes.resize(p);
    assoc.offsets.resize(p);
    std::size_t s = 0;
    for (std::size_t i = 0; i < p; ++i) {
        assoc.offsets[i] = s;
        assoc.block_sizes[i] = wds[i].s;
        s += wds[i].s;
    }
    assoc.m = IntMatrix(s, s);
    assoc.host_edge.assign(p * p, 0);
    for (std::size_t i = 0; i < p; ++i) {
        const std::size_t oi = assoc.offsets[i], si = wds[i].s;
        for (std::size_t r = 1; r < si; ++r) assoc.m(oi + r, oi + r - 1) = 1;
        for (std::size_t r = 0; r < si; ++r) assoc.m(oi + r, oi + si - 1) = wds[i].main_coeffs[r];
        for (std::size_t j = 0; j < p; ++j) {
            if (i == j || !spec.h.adjacent(i, j)) continue;
            assoc.host_edge[i * p + j] = 1;
            const std::size_t oj = assoc.offsets[j];
            for (std::size_t k = 0; k < wds[j].s; ++k) assoc.m(oi, oj + k) = wds[j].walk_counts[k];
        }
    }
    return assoc;
}

inline AssocMatrix assoc_matrix(const JoinSpec& spec) {
    spec.validate();
    return assoc_matrix_from(spec, component_walk_data(spec));
}

// Diagonal similarity D·W̃·D^{-1} with D the walk-column norms, chosen so
// that A·(W·D^{-1}) = (W·D^{-1})·(D·W̃·D^{-1}) continues the exact
// intertwining identity with unit-norm lift columns. Same spectrum, but the
// float eigenproblem is far better conditioned: raw walk columns span
// several orders of magnitude, and that scaling otherwise leaks into
// eigenvector accuracy. Eigenvectors transform back as α = D^{-1}·β.
struct BalancedAssoc {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd scale;
};

inline BalancedAssoc balanced_assoc(const AssocMatrix& assoc, const std::vector<WalkData>& wds) {
    const std::size_t s = assoc.size();
    BalancedAssoc bal;
    bal.scale.resize(static_cast<Eigen::Index>(s));
    for (std::size_t i = 0; i < wds.size(); ++i)
        for (std::size_t k = 0; k < wds[i].s; ++k) {
            double norm2 = 0.0;
            for (std::size_t r = 0; r < wds[i].W.rows(); ++r) {
                const double e = wds[i].W(r, k).get_d();
                norm2 += e * e;
            }
            bal.scale(static_cast<Eigen::Index>(assoc.offsets[i] + k)) = std::sqrt(norm2);
        }
    bal.matrix.resize(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s));
    for (std::size_t r = 0; r < s; ++r)
        for (std::size_t c = 0; c < s; ++c)
            bal.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                assoc.m(r, c).get_d() * bal.scale(static_cast<Eigen::Index>(r)) /
                bal.scale(static_cast<Eigen::Index>(c));
    if (s > 0 && !bal.matrix.allFinite())
        throw error("balanced_assoc: associated matrix exceeds double range");
    return bal;
}

// Join spectrum: per component every main eigenvalue with multiplicity m-1
// and every non-main one with multiplicity m, plus the spectrum of the
// associated matrix. Coinciding values merge and keep both origin tags.
inline Spectrum hjoin_spectrum_from(const JoinSpec& spec, const std::vector<WalkData>& wds,
                                    const AssocMatrix& assoc, double tol = kDefaultTol) {
    std::vector<SpectrumEntry> entries;
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        const Spectrum cls = classify_spectrum(spec.components[i], wds[i]);
        for (const auto& e : cls.entries) {
            SpectrumEntry out = e;
            if (e.has_origin(kOriginComponentMain)) {
                out.multiplicity -= 1;
                if (out.multiplicity == 0) continue;
            }
            entries.push_back(std::move(out));
        }
    }
    const GeneralEigen ge = general_eigen_real(balanced_assoc(assoc, wds).matrix, tol);
    const std::vector<double> assoc_values(ge.values.data(), ge.values.data() + ge.values.size());
    const Spectrum assoc_spec = group_multiset(assoc_values, tol, assoc_values.size());
    for (const auto& e : assoc_spec.entries) {
        SpectrumEntry out = e;
        out.origins.push_back(kOriginAssoc);
        entries.push_back(std::move(out));
    }
    return merge_entries(std::move(entries), tol,
                         BigInt(static_cast<unsigned long>(spec.total_order())));
}

inline Spectrum hjoin_spectrum(const JoinSpec& spec, double tol = kDefaultTol) {
    spec.validate();
    const auto wds = component_walk_data(spec);
    return hjoin_spectrum_from(spec, wds, assoc_matrix_from(spec, wds), tol);
}

// φ(G) = (Π φ(G_i)/m_{G_i}) · φ(W̃), all factors exact; the divisions must
// come out remainder-free or the main polynomials are wrong.
inline IntPoly hjoin_charpoly_from(const JoinSpec& spec, const std::vector<WalkData>& wds,
                                   const AssocMatrix& assoc) {
    IntPoly acc = IntPoly::one();
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        const IntPoly phi = charpoly_exact(adjacency(spec.components[i]));
        acc = poly_mul(acc, poly_divide_exact(phi, main_poly(wds[i])));
    }
    return poly_mul(acc, charpoly_exact(assoc.m));
}

inline IntPoly hjoin_charpoly(const JoinSpec& spec) {
    spec.validate();
    const auto wds = component_walk_data(spec);
    return hjoin_charpoly_from(spec, wds, assoc_matrix_from(spec, wds));
}

// Regular-case quotient: degrees on the diagonal, √(n_r·n_s) on host edges.
// Similar to the associated matrix when every component is regular.
inline Eigen::MatrixXd regular_quotient(const JoinSpec& spec) {
    spec.validate();
    const std::size_t p = spec.components.size();
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(p, p);
    for (std::size_t r = 0; r < p; ++r) {
        const auto d = regular_degree(spec.components[r]);
        if (!d)
            throw error("regular_quotient: component " + std::to_string(r) + " is not regular");
        c(r, r) = static_cast<double>(*d);
        for (std::size_t s = r + 1; s < p; ++s)
            if (spec.h.adjacent(r, s))
                c(r, s) = c(s, r) = std::sqrt(static_cast<double>(spec.components[r].order()) *
                                              static_cast<double>(spec.components[s].order()));
    }
    return c;
}

struct EmbeddedVec {
    std::size_t component = 0;
    double eigenvalue = 0.0;
    Eigen::VectorXd local; // length n_i, orthogonal to the all-ones vector
};

struct ReconstructedVec {
    double rho = 0.0;
    Eigen::VectorXd alpha; // eigenvector of the associated matrix, length s
    Eigen::VectorXd vec;   // assembled eigenvector of the join, length Σn_i
};

struct EigvecBundle {
    std::vector<EmbeddedVec> embedded;
    std::vector<ReconstructedVec> reconstructed;
    std::vector<std::size_t> vertex_offsets;
    std::size_t total_order = 0;
    double max_residual = 0.0;  // over both families, relative
    double max_cross_dot = 0.0; // embedded vs reconstructed, after normalization

    Eigen::VectorXd embedded_full(std::size_t idx) const {
        const auto& e = embedded[idx];
        Eigen::VectorXd full = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(total_order));
        full.segment(static_cast<Eigen::Index>(vertex_offsets[e.component]), e.local.size()) =
            e.local;
        return full;
    }
};

// Every eigenvector of the join, from component data alone: eigenspace
// vectors orthogonal to j embed zero-padded, and each eigenpair (ρ, α) of
// the associated matrix lifts to v with blocks v_i = W_i·α_i. The full
// collection must have Σn_i members and full numerical rank.
inline EigvecBundle reconstruct_eigvecs_from(const JoinSpec& spec,
                                             const std::vector<WalkData>& wds,
                                             const AssocMatrix& assoc, double tol = kDefaultTol) {
    const std::size_t p = spec.components.size();
    const std::size_t total = spec.total_order();
    EigvecBundle bundle;
    bundle.vertex_offsets = spec.vertex_offsets();
    bundle.total_order = total;

    for (std::size_t i = 0; i < p; ++i) {
        const std::size_t ni = spec.components[i].order();
        const double flag_threshold = kMainFlagTol * std::sqrt(static_cast<double>(ni));
        for (const auto& grp : grouped_eigenspaces(spec.components[i])) {
            const bool is_main = grp.j_projection_norm > flag_threshold;
            if (is_main && grp.multiplicity == 1) continue;
            Eigen::MatrixXd basis;
            if (!is_main) {
                basis = grp.basis;
            } else {
                // Householder reflector sending the j-coefficient vector to an
                // axis; the remaining columns span its orthogonal complement
                // inside the eigenspace.
                const Eigen::Index m = static_cast<Eigen::Index>(grp.multiplicity);
                Eigen::VectorXd t =
                    grp.basis.transpose() * Eigen::VectorXd::Ones(static_cast<Eigen::Index>(ni));
                Eigen::VectorXd h = t;
                h(0) += (t(0) >= 0 ? 1.0 : -1.0) * t.norm();
                const Eigen::MatrixXd reflector =
                    Eigen::MatrixXd::Identity(m, m) - (2.0 / h.squaredNorm()) * h * h.transpose();
                basis = grp.basis * reflector.rightCols(m - 1);
            }
            for (Eigen::Index c = 0; c < basis.cols(); ++c)
                bundle.embedded.push_back({i, grp.value, basis.col(c)});
        }
    }

    const Eigen::MatrixXd a_join = to_dense(adjacency(hjoin_explicit(spec)));
    const BalancedAssoc bal = balanced_assoc(assoc, wds);
    // walk bases with unit columns, matching the balanced coordinates
    std::vector<Eigen::MatrixXd> w_unit;
    w_unit.reserve(p);
    for (std::size_t i = 0; i < p; ++i) {
        Eigen::MatrixXd w = to_dense(wds[i].W);
        for (std::size_t k = 0; k < wds[i].s; ++k)
            w.col(static_cast<Eigen::Index>(k)) /=
                bal.scale(static_cast<Eigen::Index>(assoc.offsets[i] + k));
        w_unit.push_back(std::move(w));
    }

    const GeneralEigen ge = general_eigen_real(bal.matrix, tol);
    for (Eigen::Index k = 0; k < ge.values.size(); ++k) {
        ReconstructedVec rv;
        rv.rho = ge.values(k);
        const Eigen::VectorXd alpha_balanced = ge.right_vectors.col(k);
        rv.vec = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(total));
        for (std::size_t i = 0; i < p; ++i)
            rv.vec.segment(static_cast<Eigen::Index>(bundle.vertex_offsets[i]),
                           static_cast<Eigen::Index>(spec.components[i].order())) =
                w_unit[i] * alpha_balanced.segment(static_cast<Eigen::Index>(assoc.offsets[i]),
                                                   static_cast<Eigen::Index>(wds[i].s));
        // back to the unscaled walk coordinates, then normalize the pair
        rv.alpha = alpha_balanced.cwiseQuotient(bal.scale);
        const double norm = rv.vec.norm();
        rv.alpha /= norm;
        rv.vec /= norm;
        bundle.reconstructed.push_back(std::move(rv));
    }

    if (bundle.embedded.size() + bundle.reconstructed.size() != total)
        throw error("reconstruct_eigvecs: produced " +
                    std::to_string(bundle.embedded.size() + bundle.reconstructed.size()) +
                    " vectors for a join of order " + std::to_string(total));

    Eigen::MatrixXd all(total, total);
    Eigen::Index col = 0;
    for (std::size_t idx = 0; idx < bundle.embedded.size(); ++idx) {
        const Eigen::VectorXd v = bundle.embedded_full(idx);
        const double residual = (a_join * v - bundle.embedded[idx].eigenvalue * v).norm() /
                                ((1.0 + std::abs(bundle.embedded[idx].eigenvalue)) * v.norm());
        bundle.max_residual = std::max(bundle.max_residual, residual);
        all.col(col++) = v / v.norm();
    }
    for (const auto& rv : bundle.reconstructed) {
        const double residual =
            (a_join * rv.vec - rv.rho * rv.vec).norm() / ((1.0 + std::abs(rv.rho)) * rv.vec.norm());
        bundle.max_residual = std::max(bundle.max_residual, residual);
        all.col(col++) = rv.vec / rv.vec.norm();
    }
    if (bundle.max_residual > tol)
        throw error("reconstruct_eigvecs: max residual " + std::to_string(bundle.max_residual) +
                    " exceeds tolerance");

    const Eigen::Index emb = static_cast<Eigen::Index>(bundle.embedded.size());
    if (emb > 0 && col > emb) {
        bundle.max_cross_dot =
            (all.leftCols(emb).transpose() * all.rightCols(col - emb)).cwiseAbs().maxCoeff();
    }

    if (total > 0) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(all);
        if (static_cast<std::size_t>(qr.rank()) != total)
            throw error("reconstruct_eigvecs: eigenvector collection is rank-deficient (" +
                        std::to_string(qr.rank()) + " of " + std::to_string(total) + ")");
    }
    return bundle;
}

inline EigvecBundle reconstruct_eigvecs(const JoinSpec& spec, double tol = kDefaultTol) {
    spec.validate();
    const auto wds = component_walk_data(spec);
    return reconstruct_eigvecs_from(spec, wds, assoc_matrix_from(spec, wds), tol);
}

inline std::size_t oracle_guard() {
    if (const char* env = std::getenv("HJOIN_ORACLE_MAX")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 512;
}

// Eigenvalues with multiplicity as a flat ascending list (for comparisons
// against raw eigensolver output). Desk-scale multiplicities only.
inline std::vector<double> expand_spectrum(const Spectrum& sp) {
    std::vector<double> flat;
    for (const auto& e : sp.entries) {
        if (!e.multiplicity.fits_ulong_p())
            throw error("expand_spectrum: multiplicity too large to expand");
        for (unsigned long k = 0; k < e.multiplicity.get_ui(); ++k) flat.push_back(e.value);
    }
    std::sort(flat.begin(), flat.end());
    return flat;
}

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    double spectral_distance = 0.0;
    double max_residual = 0.0;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Differential check of the formula path against the definition-level
// oracle: exact charpoly equality, spectra matched with multiplicity, and
// eigenvector reconstruction. Failures become report entries, not throws.
// The assoc_hook (test instrumentation) can corrupt the associated matrix to
// prove the checks have teeth.
inline VerifyReport verify_against_oracle(
    const JoinSpec& spec, double tol = kDefaultTol,
    const std::function<void(AssocMatrix&)>& assoc_hook = {}) {
    spec.validate();
    const std::size_t total = spec.total_order();
    if (total > oracle_guard())
        throw error("verify_against_oracle: join order " + std::to_string(total) +
                    " exceeds the oracle guard of " + std::to_string(oracle_guard()));

    const auto wds = component_walk_data(spec);
    AssocMatrix assoc = assoc_matrix_from(spec, wds);
    if (assoc_hook) assoc_hook(assoc);

    const Graph joined = hjoin_explicit(spec);
    const IntMatrix a_exact = adjacency(joined);

    VerifyReport rep;
    try {
        const IntPoly formula = hjoin_charpoly_from(spec, wds, assoc);
        const IntPoly oracle = charpoly_exact(a_exact);
        const bool ok = formula == oracle;
        rep.checks.push_back({"charpoly", ok,
                              ok ? "integer-exact equality"
                                 : "formula " + poly_to_string(formula) + " != oracle " +
                                       poly_to_string(oracle)});
    } catch (const error& e) {
        rep.checks.push_back({"charpoly", false, e.what()});
    }

    try {
        const Spectrum sp = hjoin_spectrum_from(spec, wds, assoc, tol);
        const std::vector<double> formula_vals = expand_spectrum(sp);
        const SymEigen se = sym_eigen(to_dense(a_exact));
        double dist = 0.0;
        for (std::size_t k = 0; k < formula_vals.size(); ++k)
            dist = std::max(dist, std::abs(formula_vals[k] - se.values(k)));
        rep.spectral_distance = dist;
        const bool ok = dist <= tol;
        rep.checks.push_back(
            {"spectrum", ok, "max matched distance " + std::to_string(dist)});
    } catch (const error& e) {
        rep.checks.push_back({"spectrum", false, e.what()});
    }

    try {
        const EigvecBundle bundle = reconstruct_eigvecs_from(spec, wds, assoc, tol);
        rep.max_residual = bundle.max_residual;
        rep.checks.push_back({"eigenvectors", true,
                              "max residual " + std::to_string(bundle.max_residual) +
                                  ", max embedded/reconstructed dot " +
                                  std::to_string(bundle.max_cross_dot)});
    } catch (const error& e) {
        rep.checks.push_back({"eigenvectors", false, e.what()});
    }
    return rep;
}

} // namespace hjoin
