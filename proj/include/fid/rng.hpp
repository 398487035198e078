// Seed derivation and simplex sampling for the completion engine.
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace fid {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream per (seed, sample_id): samples can be drawn in any
// order, or in parallel, and still reproduce bit-identically.
inline std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t sample_id) {
    const std::uint64_t mixed = splitmix64(splitmix64(seed) ^ splitmix64(sample_id + 1));
    return std::mt19937_64(mixed);
}

// One draw from the symmetric Dirichlet(alpha) over k outcomes.
inline std::vector<double> dirichlet_symmetric(std::mt19937_64& rng, double alpha, std::size_t k) {
    if (!(alpha > 0.0)) throw std::invalid_argument("Dirichlet alpha must be positive");
    std::vector<double> draw(k);
    std::gamma_distribution<double> gamma(alpha, 1.0);
    double sum = 0.0;
    for (auto& x : draw) {
        x = gamma(rng);
        sum += x;
    }
    if (!(sum > 0.0) || !std::isfinite(sum)) {
        // all gammas underflowed (tiny alpha); the limit is a random vertex
        std::uniform_int_distribution<std::size_t> pick(0, k - 1);
        std::fill(draw.begin(), draw.end(), 0.0);
        draw[pick(rng)] = 1.0;
        return draw;
    }
    for (auto& x : draw) x /= sum;
    return draw;
}

} // namespace fid
