#pragma once

// Seeded random instances for the verification and benchmark drivers.
// Everything draws from a caller-owned mt19937_64 so runs replay exactly.

#include <hjoin/graph.hpp>
#include <hjoin/hjoin.hpp>
#include <hjoin/lexpow.hpp>

#include <cstddef>
#include <random>
#include <vector>

namespace hjoin {

inline Graph random_graph(std::mt19937_64& rng, std::size_t n, double density) {
    Graph g(n);
    std::bernoulli_distribution edge(density);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (edge(rng)) g.add_edge(u, v);
    return g;
}

// Random connected circulant: offset 1 is always present, every further
// offset joins with probability 1/2. Circulants are regular by construction.
inline Graph random_circulant(std::mt19937_64& rng, std::size_t n) {
    Graph g(n);
    if (n < 2) return g;
    std::bernoulli_distribution pick(0.5);
    std::vector<std::size_t> offsets{1};
    for (std::size_t o = 2; o <= n / 2; ++o)
        if (pick(rng)) offsets.push_back(o);
    for (std::size_t v = 0; v < n; ++v)
        for (const std::size_t o : offsets)
            g.add_edge(v, (v + o) % n);
    return g;
}

inline JoinSpec random_join_spec(std::mt19937_64& rng, std::size_t p_min = 1,
                                 std::size_t p_max = 5, std::size_t n_min = 1,
                                 std::size_t n_max = 8) {
    std::uniform_int_distribution<std::size_t> p_dist(p_min, p_max);
    std::uniform_int_distribution<std::size_t> n_dist(n_min, n_max);
    std::uniform_real_distribution<double> density(0.0, 1.0);
    JoinSpec spec;
    const std::size_t p = p_dist(rng);
    spec.h = random_graph(rng, p, density(rng));
    spec.components.reserve(p);
    for (std::size_t i = 0; i < p; ++i)
        spec.components.push_back(random_graph(rng, n_dist(rng), density(rng)));
    return spec;
}

// Random regular graph drawn from {C_n, K_n, E_n, circulants}.
inline Graph random_regular_graph(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 3);
    switch (kind(rng)) {
        case 0: {
            std::uniform_int_distribution<std::size_t> n(3, 9);
            return generator("C" + std::to_string(n(rng)));
        }
        case 1: {
            std::uniform_int_distribution<std::size_t> n(1, 8);
            return generator("K" + std::to_string(n(rng)));
        }
        case 2: {
            std::uniform_int_distribution<std::size_t> n(1, 8);
            return generator("E" + std::to_string(n(rng)));
        }
        default: {
            std::uniform_int_distribution<std::size_t> n(4, 10);
            return random_circulant(rng, n(rng));
        }
    }
}

inline JoinSpec random_regular_join_spec(std::mt19937_64& rng, std::size_t p_min = 1,
                                         std::size_t p_max = 5) {
    std::uniform_int_distribution<std::size_t> p_dist(p_min, p_max);
    std::uniform_real_distribution<double> density(0.0, 1.0);
    JoinSpec spec;
    const std::size_t p = p_dist(rng);
    spec.h = random_graph(rng, p, density(rng));
    spec.components.reserve(p);
    for (std::size_t i = 0; i < p; ++i) spec.components.push_back(random_regular_graph(rng));
    return spec;
}

inline JoinSpec random_mixed_extension(std::mt19937_64& rng, std::size_t p_max = 6,
                                       std::size_t m_max = 5) {
    std::uniform_int_distribution<std::size_t> p_dist(1, p_max);
    std::uniform_int_distribution<long> m_dist(1, static_cast<long>(m_max));
    std::uniform_real_distribution<double> density(0.0, 1.0);
    std::bernoulli_distribution complete(0.5);
    const std::size_t p = p_dist(rng);
    const Graph h = random_graph(rng, p, density(rng));
    std::vector<long> sizes;
    sizes.reserve(p);
    for (std::size_t i = 0; i < p; ++i) sizes.push_back(complete(rng) ? m_dist(rng) : -m_dist(rng));
    return mixed_extension(h, sizes);
}

} // namespace hjoin
