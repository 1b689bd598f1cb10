#pragma once

// Lexicographic products H[G], their characteristic polynomial, mixed
// extensions, and big-multiplicity spectra of lexicographic powers of
// regular connected graphs computed by a closed multiset recursion — the
// power graph itself is never materialized.

#include <hjoin/error.hpp>
#include <hjoin/exact.hpp>
#include <hjoin/graph.hpp>
#include <hjoin/hjoin.hpp>
#include <hjoin/spectral.hpp>
#include <hjoin/walk.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hjoin {

inline JoinSpec lex_spec(const Graph& h, const Graph& g) {
    if (h.order() == 0) throw error("lex_spec: host graph must have at least one vertex");
    JoinSpec spec;
    spec.h = h;
    spec.components.assign(h.order(), g);
    return spec;
}

// φ(H[G]) = (φ(G)/m_G)^p · φ(W̃) with the block-uniform associated matrix:
// every diagonal block is C(m_G), every host-edge block is the same
// walk-count matrix M. Walk data is computed once and reused for all blocks.
inline IntPoly lex_charpoly(const Graph& h, const Graph& g) {
    const std::size_t p = h.order();
    if (p == 0) return IntPoly::one();
    if (g.order() == 0) throw error("lex_charpoly: inner graph must have at least one vertex");
    const WalkData wd = walk_data(g);
    const IntPoly m = main_poly(wd);
    const IntPoly quotient = poly_divide_exact(charpoly_exact(adjacency(g)), m);

    const std::size_t s = wd.s;
    IntMatrix assoc(p * s, p * s);
    for (std::size_t i = 0; i < p; ++i) {
        const std::size_t oi = i * s;
        for (std::size_t r = 1; r < s; ++r) assoc(oi + r, oi + r - 1) = 1;
        for (std::size_t r = 0; r < s; ++r) assoc(oi + r, oi + s - 1) = wd.main_coeffs[r];
        for (std::size_t j = 0; j < p; ++j)
            if (i != j && h.adjacent(i, j))
                for (std::size_t k = 0; k < s; ++k) assoc(oi, j * s + k) = wd.walk_counts[k];
    }
    return poly_mul(poly_pow(quotient, p), charpoly_exact(assoc));
}

// Mixed extension: +m places K_m at a host vertex, -m places its complement.
inline JoinSpec mixed_extension(const Graph& h, const std::vector<long>& sizes) {
    if (sizes.size() != h.order())
        throw error("mixed_extension: need one size per host vertex");
    JoinSpec spec;
    spec.h = h;
    spec.components.reserve(sizes.size());
    for (const long m : sizes) {
        if (m == 0) throw error("mixed_extension: zero size entry");
        const std::string name = (m > 0 ? "K" : "E") + std::to_string(m > 0 ? m : -m);
        spec.components.push_back(generator(name));
    }
    return spec;
}

struct PowerEntry {
    double value = 0.0;
    std::optional<BigInt> value_exact; // present when the base spectrum is integral
    BigInt multiplicity;
    std::size_t introduced_level = 1; // power level at which the value first appeared
};

struct PowerSpectrum {
    Graph base;
    std::size_t k = 1;
    std::vector<PowerEntry> entries; // value-descending

    BigInt total_multiplicity() const {
        BigInt t = 0;
        for (const auto& e : entries) t += e.multiplicity;
        return t;
    }
};

namespace detail {

// All integer roots of p with multiplicities, plus the unfactored cofactor.
// Candidate range is the eigenvalue bound |λ| ≤ degree bound.
inline std::pair<std::map<BigInt, std::size_t>, IntPoly> extract_integer_roots(IntPoly p,
                                                                               long bound) {
    std::map<BigInt, std::size_t> roots;
    for (long r = -bound; r <= bound; ++r) {
        const BigInt root(r);
        std::vector<BigInt> linear{-root, 1};
        const IntPoly factor(std::move(linear));
        while (!p.is_zero() && p.degree() > 0 && poly_eval_at_int(p, root) == 0) {
            p = poly_divide_exact(p, factor);
            ++roots[root];
        }
    }
    return {std::move(roots), std::move(p)};
}

} // namespace detail

// Spectrum of the k-th lexicographic power of a connected regular graph.
//
// σ(H^t) follows from the regular quotient with p equal components: all
// eigenvalues of H^{t-1} except the (simple) degree carry over p times, and
// the quotient contributes n_{t-1}·λ + d_{t-1} for every λ ∈ σ(H). When
// σ(H) is integral the whole recursion runs over exact integers; otherwise
// values are doubles (error growth O(k·ulp)) and the representable range
// caps k.
inline PowerSpectrum lex_power_regular(const Graph& h, std::size_t k) {
    const std::size_t p = h.order();
    if (p == 0 || k == 0) throw error("lex_power_regular: need h.n >= 1 and k >= 1");
    const auto deg = regular_degree(h);
    if (!deg) throw error("lex_power_regular: base graph is not regular");
    if (!is_connected(h)) throw error("lex_power_regular: base graph is not connected");

    PowerSpectrum out;
    out.base = h;
    out.k = k;

    // base spectrum: exact integer route if charpoly factors completely over Z
    auto [int_roots, cofactor] =
        detail::extract_integer_roots(charpoly_exact(adjacency(h)), static_cast<long>(p));
    const bool integral = cofactor.degree() == 0;

    const BigInt d(static_cast<unsigned long>(*deg));
    if (integral) {
        // value -> (multiplicity, introduced level); the simple top degree is
        // tracked separately so removing it never needs a value match
        std::map<BigInt, std::pair<BigInt, std::size_t>> rest;
        for (const auto& [value, mult] : int_roots)
            if (value != d) rest[value] = {BigInt(static_cast<unsigned long>(mult)), 1};
        BigInt top = d;
        std::size_t top_level = 1;

        BigInt n_prev = 1;
        BigInt d_prev = 0;
        for (std::size_t t = 2; t <= k; ++t) {
            n_prev = 1;
            mpz_ui_pow_ui(n_prev.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>(t - 1));
            d_prev = top;
            std::map<BigInt, std::pair<BigInt, std::size_t>> next;
            for (auto& [value, entry] : rest)
                next[value] = {entry.first * static_cast<unsigned long>(p), entry.second};
            for (const auto& [lambda, mult] : int_roots) {
                if (lambda == d) continue;
                const BigInt v = n_prev * lambda + d_prev;
                auto it = next.find(v);
                if (it == next.end())
                    next[v] = {BigInt(static_cast<unsigned long>(mult)), t};
                else
                    it->second.first += static_cast<unsigned long>(mult);
            }
            rest = std::move(next);
            top = n_prev * d + d_prev;
            top_level = t;
        }
        // the top degree is strictly above every carried value, but merge
        // defensively anyway
        auto top_it = rest.find(top);
        if (top_it == rest.end())
            rest[top] = {BigInt(1), top_level};
        else
            top_it->second.first += 1;
        for (auto it = rest.rbegin(); it != rest.rend(); ++it) {
            PowerEntry e;
            e.value_exact = it->first;
            e.value = it->first.get_d();
            e.multiplicity = it->second.first;
            e.introduced_level = it->second.second;
            out.entries.push_back(std::move(e));
        }
    } else {
        const Spectrum base =
            group_multiset([&] {
                const SymEigen se = sym_eigen(to_dense(adjacency(h)));
                return std::vector<double>(se.values.data(), se.values.data() + se.values.size());
            }(), kDefaultTol, p);

        struct FloatEntry {
            double value;
            BigInt mult;
            std::size_t level;
        };
        std::vector<FloatEntry> rest; // ascending, top degree excluded
        for (auto it = base.entries.rbegin(); it != base.entries.rend(); ++it)
            if (std::abs(it->value - d.get_d()) > 1e-6)
                rest.push_back({it->value, it->multiplicity, 1});
        double top = d.get_d();
        std::size_t top_level = 1;

        for (std::size_t t = 2; t <= k; ++t) {
            BigInt n_prev_z = 1;
            mpz_ui_pow_ui(n_prev_z.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>(t - 1));
            const double n_prev = n_prev_z.get_d();
            const double d_prev = top;
            if (!std::isfinite(n_prev * static_cast<double>(p)))
                throw error("lex_power_regular: non-integral base spectrum exceeds double "
                            "range at level " + std::to_string(t));
            std::vector<FloatEntry> next;
            for (auto& e : rest) next.push_back({e.value, e.mult * static_cast<unsigned long>(p), e.level});
            for (auto it = base.entries.rbegin(); it != base.entries.rend(); ++it) {
                if (std::abs(it->value - d.get_d()) <= 1e-6) continue;
                next.push_back({n_prev * it->value + d_prev, it->multiplicity, t});
            }
            std::sort(next.begin(), next.end(),
                      [](const FloatEntry& a, const FloatEntry& b) { return a.value < b.value; });
            // merge collisions on the scale of the current spectral radius
            const double gap = 1e-9 * std::max(1.0, std::abs(next.back().value));
            std::vector<FloatEntry> merged;
            for (auto& e : next) {
                if (!merged.empty() && e.value - merged.back().value <= gap) {
                    merged.back().mult += e.mult;
                    merged.back().level = std::min(merged.back().level, e.level);
                } else {
                    merged.push_back(std::move(e));
                }
            }
            rest = std::move(merged);
            top = n_prev * d.get_d() + d_prev;
            top_level = t;
        }
        rest.push_back({top, BigInt(1), top_level});
        std::sort(rest.begin(), rest.end(),
                  [](const FloatEntry& a, const FloatEntry& b) { return a.value > b.value; });
        for (auto& e : rest) {
            PowerEntry pe;
            pe.value = e.value;
            pe.multiplicity = e.mult;
            pe.introduced_level = e.level;
            out.entries.push_back(std::move(pe));
        }
    }

    BigInt expected = 1;
    mpz_ui_pow_ui(expected.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(k));
    if (out.total_multiplicity() != expected)
        throw error("lex_power_regular: multiplicities sum to " +
                    out.total_multiplicity().get_str() + ", expected " + expected.get_str());
    return out;
}

} // namespace hjoin
