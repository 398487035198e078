// Completions of partial functions: exhaustive deterministic enumeration,
// Dirichlet sampling, the max-entropy completion, and bound aggregation.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fid/decompose.hpp"
#include "fid/model.hpp"
#include "fid/rng.hpp"

namespace fid {

struct CompletionConfig {
    bool enumerate_deterministic = true;
    std::uint64_t samples_per_alpha = 0;
    std::vector<double> alphas = {0.1, 0.5, 1.0, 10.0};
    std::uint64_t seed = 1;
    std::uint64_t deterministic_cap = 65536;
    bool grid_refine = false;
};

enum class SampleKind { deterministic, probabilistic, max_entropy };

inline const char* to_string(SampleKind k) {
    switch (k) {
        case SampleKind::deterministic: return "deterministic";
        case SampleKind::probabilistic: return "probabilistic";
        case SampleKind::max_entropy: return "max_entropy";
    }
    return "?";
}

struct CompletionSample {
    std::uint64_t sample_id = 0;
    SampleKind kind = SampleKind::deterministic;
    std::optional<double> alpha; // present iff probabilistic
    FIDReport report;
};

struct Bounds {
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();

    void absorb(double v) {
        if (v < min) min = v;
        if (v > max) max = v;
    }
    void absorb(const Bounds& other) {
        if (other.min < min) min = other.min;
        if (other.max > max) max = other.max;
    }
};

struct BoundsSet {
    Bounds total_information, synergy, output_entropy, residual_entropy;
    std::vector<Bounds> independent, solo_synergy, loss; // per input variable

    void absorb(const FIDReport& r) {
        if (independent.empty()) {
            independent.resize(r.variables.size());
            solo_synergy.resize(r.variables.size());
            loss.resize(r.variables.size());
        }
        total_information.absorb(r.total_information);
        synergy.absorb(r.synergy);
        output_entropy.absorb(r.output_entropy);
        residual_entropy.absorb(r.residual_entropy);
        for (std::size_t i = 0; i < r.variables.size(); ++i) {
            independent[i].absorb(r.variables[i].independent);
            solo_synergy[i].absorb(r.variables[i].solo_synergy);
            loss[i].absorb(r.variables[i].loss);
        }
    }
};

struct CompletionCloud {
    std::vector<CompletionSample> samples;
    BoundsSet bounds;                 // exact extrema of the sample set
    std::optional<BoundsSet> refined; // bounds merged with the 1-D grid scan
    bool sampled = false;             // probabilistic samples included
    std::uint64_t enumerated_count = 0;
};

// ---- constructing partial specs ----------------------------------------------

// Erases the given rows of a complete spec, turning it into a partial one.
inline PartialFunctionSpec make_partial(const FunctionSpec& spec,
                                        const std::vector<std::uint64_t>& unknown_rows) {
    PartialFunctionSpec p;
    p.inputs = spec.inputs;
    p.output = spec.output;
    p.rows.assign(spec.rows.begin(), spec.rows.end());
    for (std::uint64_t r : unknown_rows) {
        if (r >= p.rows.size()) throw std::out_of_range("unknown row index out of range");
        p.rows[r] = std::nullopt;
    }
    return p;
}

namespace detail {

inline std::vector<std::uint64_t> unknown_row_indices(const PartialFunctionSpec& partial) {
    std::vector<std::uint64_t> idx;
    for (std::uint64_t r = 0; r < partial.rows.size(); ++r) {
        if (!partial.rows[r].has_value()) idx.push_back(r);
    }
    return idx;
}

inline FunctionSpec known_skeleton(const PartialFunctionSpec& partial) {
    FunctionSpec spec;
    spec.inputs = partial.inputs;
    spec.output = partial.output;
    spec.rows.resize(partial.rows.size());
    for (std::uint64_t r = 0; r < partial.rows.size(); ++r) {
        if (partial.rows[r].has_value()) spec.rows[r] = *partial.rows[r];
    }
    return spec;
}

// |Y|^unknowns as a string, plus the value when it fits in 64 bits.
inline std::optional<std::uint64_t> completion_count(std::uint64_t base, std::uint64_t exponent) {
    std::uint64_t count = 1;
    for (std::uint64_t e = 0; e < exponent; ++e) {
        if (base != 0 && count > std::numeric_limits<std::uint64_t>::max() / base) {
            return std::nullopt;
        }
        count *= base;
    }
    return count;
}

} // namespace detail

// All |Y|^u deterministic completions, in mixed-radix order over the unknown
// rows (first unknown row most significant). Known rows are untouched.
inline std::vector<FunctionSpec> enumerate_deterministic_completions(
    const PartialFunctionSpec& partial, std::uint64_t cap) {
    require_valid(partial);
    if (cap < 1) throw std::invalid_argument("deterministic cap must be at least 1");

    const auto unknown = detail::unknown_row_indices(partial);
    const std::uint64_t ny = partial.output.arity();
    const auto count = detail::completion_count(ny, unknown.size());
    const std::string count_text = std::to_string(ny) + "^" + std::to_string(unknown.size()) +
                                   (count ? " = " + std::to_string(*count) : "");
    if (!count || *count > cap) {
        throw std::length_error("deterministic completion count " + count_text +
                                " exceeds cap " + std::to_string(cap));
    }

    const FunctionSpec skeleton = detail::known_skeleton(partial);
    std::vector<FunctionSpec> out;
    out.reserve(*count);
    for (std::uint64_t k = 0; k < *count; ++k) {
        FunctionSpec spec = skeleton;
        std::uint64_t digits = k;
        for (std::size_t j = unknown.size(); j-- > 0;) {
            OutputDistribution p(ny, 0.0);
            p[digits % ny] = 1.0;
            digits /= ny;
            spec.rows[unknown[j]] = std::move(p);
        }
        out.push_back(std::move(spec));
    }
    return out;
}

// One probabilistic completion: each unknown row gets an independent
// symmetric Dirichlet(alpha) draw over the output alphabet.
inline FunctionSpec sample_probabilistic_completion(const PartialFunctionSpec& partial,
                                                    double alpha, std::mt19937_64& rng) {
    if (!(alpha > 0.0)) throw std::invalid_argument("Dirichlet alpha must be positive");
    FunctionSpec spec = detail::known_skeleton(partial);
    const std::uint64_t ny = partial.output.arity();
    for (std::uint64_t r : detail::unknown_row_indices(partial)) {
        spec.rows[r] = dirichlet_symmetric(rng, alpha, ny);
    }
    return spec;
}

// The neutral completion: every unknown row becomes uniform over the outputs.
inline FunctionSpec max_entropy_completion(const PartialFunctionSpec& partial) {
    FunctionSpec spec = detail::known_skeleton(partial);
    const std::uint64_t ny = partial.output.arity();
    const OutputDistribution uniform(ny, 1.0 / static_cast<double>(ny));
    for (std::uint64_t r : detail::unknown_row_indices(partial)) {
        spec.rows[r] = uniform;
    }
    return spec;
}

namespace detail {

// 1-D certification scan for a single unknown binary-output row: decompose
// the completion at 1,001 grid points of its free probability.
inline void grid_refine_bounds(const PartialFunctionSpec& partial, BoundsSet& bounds) {
    const auto unknown = unknown_row_indices(partial);
    FunctionSpec spec = known_skeleton(partial);
    for (int k = 0; k <= 1000; ++k) {
        const double p = static_cast<double>(k) / 1000.0;
        spec.rows[unknown.front()] = OutputDistribution{1.0 - p, p};
        bounds.absorb(decompose(spec));
    }
}

} // namespace detail

inline bool grid_refine_applicable(const PartialFunctionSpec& partial) {
    return partial.unknown_count() == 1 && partial.output.arity() == 2;
}

// Runs the full completion study: enumerated deterministic completions,
// samples_per_alpha Dirichlet draws per alpha, and the max-entropy
// completion, each decomposed. Bounds are the exact extrema of the samples;
// reruns with an equal config reproduce the cloud bit-identically.
inline CompletionCloud sweep(const PartialFunctionSpec& partial, const CompletionConfig& config) {
    require_valid(partial);
    for (double a : config.alphas) {
        if (!(a > 0.0)) throw std::invalid_argument("invalid alpha " + std::to_string(a));
    }
    const bool wants_samples = config.samples_per_alpha > 0 && !config.alphas.empty();
    if (!config.enumerate_deterministic && !wants_samples) {
        throw std::invalid_argument("no completions requested");
    }

    CompletionCloud cloud;
    std::uint64_t id = 0;
    auto add = [&](SampleKind kind, std::optional<double> alpha, const FunctionSpec& spec) {
        CompletionSample s;
        s.sample_id = id++;
        s.kind = kind;
        s.alpha = alpha;
        s.report = decompose(spec);
        cloud.bounds.absorb(s.report);
        cloud.samples.push_back(std::move(s));
    };

    if (config.enumerate_deterministic) {
        const auto completions =
            enumerate_deterministic_completions(partial, config.deterministic_cap);
        cloud.enumerated_count = completions.size();
        for (const auto& c : completions) add(SampleKind::deterministic, std::nullopt, c);
    }
    for (double alpha : config.alphas) {
        for (std::uint64_t s = 0; s < config.samples_per_alpha; ++s) {
            auto rng = sample_rng(config.seed, id);
            add(SampleKind::probabilistic, alpha,
                sample_probabilistic_completion(partial, alpha, rng));
            cloud.sampled = true;
        }
    }
    add(SampleKind::max_entropy, std::nullopt, max_entropy_completion(partial));

    if (config.grid_refine && grid_refine_applicable(partial)) {
        BoundsSet refined = cloud.bounds;
        detail::grid_refine_bounds(partial, refined);
        cloud.refined = std::move(refined);
    }
    return cloud;
}

} // namespace fid
