#pragma once

// Floating-point eigensolvers and multiset grouping of eigenvalues.
// Exact rank/solve decisions live in exact.hpp; floats are confined to
// eigenvalue extraction and residual checks.

#include <hjoin/error.hpp>
#include <hjoin/exact.hpp>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace hjoin {

// Grouping / verification tolerance (CLI-overridable).
inline constexpr double kDefaultTol = 1e-7;
// Projection-norm threshold scale for the main-eigenvalue flag.
inline constexpr double kMainFlagTol = 1e-6;

inline constexpr const char* kOriginComponentMain = "component-main";
inline constexpr const char* kOriginComponentNonMain = "component-nonmain";
inline constexpr const char* kOriginAssoc = "assoc";

struct SpectrumEntry {
    double value = 0.0;
    BigInt multiplicity;
    std::vector<std::string> origins;

    bool has_origin(const std::string& tag) const {
        return std::find(origins.begin(), origins.end(), tag) != origins.end();
    }
};

// Multiset of eigenvalues, value-descending, with arbitrary-precision
// multiplicities summing to the declared ambient order.
struct Spectrum {
    std::vector<SpectrumEntry> entries;
    BigInt ambient_order = 0;

    BigInt total_multiplicity() const {
        BigInt t = 0;
        for (const auto& e : entries) t += e.multiplicity;
        return t;
    }

    void validate() const {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (entries[i].multiplicity < 1) throw error("spectrum: multiplicity < 1");
            if (i > 0 && entries[i - 1].value <= entries[i].value)
                throw error("spectrum: values not strictly descending");
        }
        if (total_multiplicity() != ambient_order)
            throw error("spectrum: multiplicities sum to " + total_multiplicity().get_str() +
                        ", ambient order is " + ambient_order.get_str());
    }
};

inline Eigen::MatrixXd to_dense(const IntMatrix& m) {
    Eigen::MatrixXd d(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = m(i, j).get_d();
    return d;
}

struct SymEigen {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // orthonormal columns, matching order
};

inline SymEigen sym_eigen(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw error("sym_eigen: matrix must be square");
    if (m.size() > 0 && (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw error("sym_eigen: matrix is not symmetric");
    if (m.rows() == 0) return {Eigen::VectorXd(0), Eigen::MatrixXd(0, 0)};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) throw error("sym_eigen: eigensolver did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

struct GeneralEigen {
    Eigen::VectorXd values;        // ascending
    Eigen::MatrixXd right_vectors; // unit columns, matching order
};

// Real spectrum of a general real matrix (Hessenberg reduction + shifted QR
// under the hood). An imaginary part beyond tol·(1+‖m‖_F) is an error: the
// matrices fed here are provably real-spectrum, so it signals breakdown or a
// bad associated matrix. Right eigenvectors come from an SVD kernel
// extraction per distinct eigenvalue, which stays well-behaved for repeated
// eigenvalues of diagonalizable matrices.
inline GeneralEigen general_eigen_real(const Eigen::MatrixXd& m, double tol = kDefaultTol) {
    if (m.rows() != m.cols()) throw error("general_eigen_real: matrix must be square");
    const std::size_t n = static_cast<std::size_t>(m.rows());
    if (n == 0) return {Eigen::VectorXd(0), Eigen::MatrixXd(0, 0)};
    const double scale = 1.0 + m.norm();

    Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw error("general_eigen_real: QR iteration failed");
    const auto vals = es.eigenvalues();
    double max_imag = 0.0;
    for (std::size_t k = 0; k < n; ++k) max_imag = std::max(max_imag, std::abs(vals(k).imag()));
    if (max_imag > tol * scale)
        throw error("general_eigen_real: spectrum is not real (max imaginary part " +
                    std::to_string(max_imag) + ")");

    std::vector<double> sorted(n);
    for (std::size_t k = 0; k < n; ++k) sorted[k] = vals(k).real();
    std::sort(sorted.begin(), sorted.end());

    GeneralEigen out;
    out.values = Eigen::Map<Eigen::VectorXd>(sorted.data(), static_cast<Eigen::Index>(n));
    out.right_vectors.resize(n, n);

    // group on the scale of the spectral radius; the Frobenius norm of a
    // non-normal matrix can be orders of magnitude larger
    const double radius = std::max(std::abs(sorted.front()), std::abs(sorted.back()));
    const double group_gap = 1e-9 * std::max(1.0, radius);
    std::size_t k = 0;
    while (k < n) {
        std::size_t end = k + 1;
        while (end < n && sorted[end] - sorted[end - 1] <= group_gap) ++end;
        const std::size_t mult = end - k;
        double rho = 0.0;
        for (std::size_t i = k; i < end; ++i) rho += sorted[i];
        rho /= static_cast<double>(mult);

        Eigen::MatrixXd shifted = m;
        shifted.diagonal().array() -= rho;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(shifted, Eigen::ComputeFullV);
        // singular values are descending, so the kernel sits in the last columns
        for (std::size_t i = 0; i < mult; ++i) {
            const Eigen::VectorXd v = svd.matrixV().col(static_cast<Eigen::Index>(n - 1 - i));
            const double residual = (m * v - rho * v).norm();
            if (residual > 1e-8 * scale)
                throw error("general_eigen_real: eigenvector residual " +
                            std::to_string(residual) + " too large");
            out.right_vectors.col(static_cast<Eigen::Index>(k + i)) = v;
        }
        k = end;
    }
    return out;
}

// Single-linkage grouping of raw eigenvalues into a Spectrum. Values whose
// consecutive sorted gaps stay within tol (scaled by the spectral radius)
// merge; the representative is the group mean.
inline Spectrum group_multiset(const std::vector<double>& values, double tol,
                               std::size_t ambient_order) {
    if (values.size() != ambient_order)
        throw error("group_multiset: ambient order does not match value count");
    for (double v : values)
        if (!std::isfinite(v)) throw error("group_multiset: non-finite eigenvalue");
    Spectrum out;
    out.ambient_order = static_cast<unsigned long>(ambient_order);
    if (values.empty()) return out;

    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    const double radius = std::max(std::abs(sorted.front()), std::abs(sorted.back()));
    const double gap = tol * std::max(1.0, radius);

    std::size_t k = 0;
    while (k < sorted.size()) {
        std::size_t end = k + 1;
        while (end < sorted.size() && sorted[end] - sorted[end - 1] <= gap) ++end;
        double mean = 0.0;
        for (std::size_t i = k; i < end; ++i) mean += sorted[i];
        mean /= static_cast<double>(end - k);
        SpectrumEntry e;
        e.value = mean;
        e.multiplicity = static_cast<unsigned long>(end - k);
        out.entries.push_back(std::move(e));
        k = end;
    }
    std::reverse(out.entries.begin(), out.entries.end());
    out.validate();
    return out;
}

// Merge already-grouped entries from several origins into one Spectrum.
// Collisions within the scaled tolerance combine multiplicities (weighted
// mean representative) and keep the origin tags of both sides.
inline Spectrum merge_entries(std::vector<SpectrumEntry> entries, double tol,
                              const BigInt& ambient_order) {
    Spectrum out;
    out.ambient_order = ambient_order;
    if (entries.empty()) {
        out.validate();
        return out;
    }
    std::sort(entries.begin(), entries.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value < b.value; });
    double radius = 0.0;
    for (const auto& e : entries) radius = std::max(radius, std::abs(e.value));
    const double gap = tol * std::max(1.0, radius);

    std::size_t k = 0;
    while (k < entries.size()) {
        std::size_t end = k + 1;
        while (end < entries.size() && entries[end].value - entries[end - 1].value <= gap) ++end;
        SpectrumEntry merged;
        double weighted = 0.0;
        double weight = 0.0;
        for (std::size_t i = k; i < end; ++i) {
            const double w = entries[i].multiplicity.get_d();
            weighted += w * entries[i].value;
            weight += w;
            merged.multiplicity += entries[i].multiplicity;
            for (const auto& tag : entries[i].origins)
                if (!merged.has_origin(tag)) merged.origins.push_back(tag);
        }
        merged.value = weighted / weight;
        out.entries.push_back(std::move(merged));
        k = end;
    }
    std::reverse(out.entries.begin(), out.entries.end());
    out.validate();
    return out;
}

} // namespace hjoin
