// Shared test fixtures: random spec generation and small hand-built specs.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "fid/model.hpp"

namespace fid::testing {

// Random complete spec: 2..max_inputs inputs with arities 2..max_arity,
// output arity 2..max_arity. Each row is a point mass with probability
// p_deterministic, otherwise a Dirichlet(1) draw over the output alphabet.
inline FunctionSpec random_spec(std::mt19937_64& rng, int max_inputs = 4, int max_arity = 4,
                                double p_deterministic = 0.5) {
    std::uniform_int_distribution<int> n_inputs(2, max_inputs);
    std::uniform_int_distribution<int> pick_arity(2, max_arity);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    FunctionSpec spec;
    const int n = n_inputs(rng);
    for (int i = 0; i < n; ++i) {
        Variable v;
        v.name = "X" + std::to_string(i + 1);
        const int arity = pick_arity(rng);
        for (int s = 0; s < arity; ++s) v.states.push_back(std::to_string(s));
        spec.inputs.push_back(std::move(v));
    }
    spec.output.name = "Y";
    const int ny = pick_arity(rng);
    for (int s = 0; s < ny; ++s) spec.output.states.push_back(std::to_string(s));

    const std::uint64_t rows = domain_size(spec.inputs);
    spec.rows.resize(rows);
    std::exponential_distribution<double> expo(1.0);
    for (std::uint64_t r = 0; r < rows; ++r) {
        OutputDistribution p(ny, 0.0);
        if (unit(rng) < p_deterministic) {
            p[static_cast<std::size_t>(unit(rng) * ny) % ny] = 1.0;
        } else {
            double sum = 0.0;
            for (auto& x : p) {
                x = expo(rng);
                sum += x;
            }
            for (auto& x : p) x /= sum;
        }
        spec.rows[r] = std::move(p);
    }
    return spec;
}

// The incomplete OR/XOR function: f(0,0)=0, f(0,1)=1, f(1,0)=1, f(1,1) unknown.
inline PartialFunctionSpec or_xor_partial() {
    PartialFunctionSpec p;
    p.inputs = {{"X1", {"0", "1"}}, {"X2", {"0", "1"}}};
    p.output = {"Y", {"0", "1"}};
    p.rows = {OutputDistribution{1.0, 0.0}, OutputDistribution{0.0, 1.0},
              OutputDistribution{0.0, 1.0}, std::nullopt};
    return p;
}

// XOR with X1's state "0" duplicated as a third state "0b".
inline FunctionSpec dup_xor() {
    FunctionSpec spec;
    spec.inputs = {{"X1", {"0", "1", "0b"}}, {"X2", {"0", "1"}}};
    spec.output = {"Y", {"0", "1"}};
    spec.rows = {
        {1.0, 0.0}, {0.0, 1.0}, // X1=0
        {0.0, 1.0}, {1.0, 0.0}, // X1=1
        {1.0, 0.0}, {0.0, 1.0}, // X1=0b, same as X1=0
    };
    return spec;
}

} // namespace fid::testing
