// Functional information decomposition of a complete spec: total, per-input
// independent and solo-synergy terms, synergy, and the no-redundancy check.
#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fid/info.hpp"
#include "fid/model.hpp"

namespace fid {

// Synergy below this is an internal error; within [-1e-9, 0) it clamps to 0.
inline constexpr double kSynergyTolerance = 1e-9;

struct VariableTerms {
    std::string name;
    Bits independent = 0.0;  // I(Y; X_i)
    Bits solo_synergy = 0.0; // I(Y; X) - I(Y; X\X_i) - I(Y; X_i)
    Bits loss = 0.0;         // independent + solo_synergy
};

struct FIDReport {
    std::vector<VariableTerms> variables; // aligned with spec.inputs
    Bits total_information = 0.0;
    Bits synergy = 0.0;
    Bits output_entropy = 0.0;
    Bits residual_entropy = 0.0; // output_entropy - total_information
};

namespace detail {

inline double clamp_dust(double v) { return v < 0.0 && v > -kMiClamp ? 0.0 : v; }

inline std::vector<std::size_t> all_input_coords(std::size_t n) {
    std::vector<std::size_t> c(n);
    std::iota(c.begin(), c.end(), std::size_t{0});
    return c;
}

inline std::vector<std::size_t> coords_without(std::size_t n, std::size_t i) {
    std::vector<std::size_t> c;
    c.reserve(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        if (k != i) c.push_back(k);
    }
    return c;
}

inline void check_index(const FunctionSpec& spec, std::size_t i) {
    if (i >= spec.inputs.size()) throw std::out_of_range("input index out of range");
}

inline Bits synergy_from(Bits total, Bits sum_independent) {
    const double raw = total - sum_independent;
    if (raw < -kSynergyTolerance) {
        throw std::logic_error("synergy " + std::to_string(raw) +
                               " below -1e-9; joint construction is broken");
    }
    return raw < 0.0 ? 0.0 : raw;
}

} // namespace detail

inline Bits total_information(const FunctionSpec& spec) {
    const auto joint = build_joint(spec);
    const auto xs = detail::all_input_coords(spec.inputs.size());
    return mutual_information(joint, xs, {joint.output_coord()});
}

inline Bits independent_information(const FunctionSpec& spec, std::size_t i) {
    detail::check_index(spec, i);
    const auto joint = build_joint(spec);
    return mutual_information(joint, {i}, {joint.output_coord()});
}

inline Bits synergy(const FunctionSpec& spec) {
    const auto joint = build_joint(spec);
    const std::size_t y = joint.output_coord();
    const Bits total = mutual_information(joint, detail::all_input_coords(spec.inputs.size()), {y});
    Bits sum_ind = 0.0;
    for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
        sum_ind += mutual_information(joint, {i}, {y});
    }
    return detail::synergy_from(total, sum_ind);
}

inline Bits solo_synergy(const FunctionSpec& spec, std::size_t i) {
    detail::check_index(spec, i);
    const std::size_t n = spec.inputs.size();
    if (n < 2) throw std::invalid_argument("solo-synergy needs at least 2 inputs");
    if (n == 2) return synergy(spec); // both inputs carry all synergy
    const auto joint = build_joint(spec);
    const std::size_t y = joint.output_coord();
    const Bits total = mutual_information(joint, detail::all_input_coords(n), {y});
    const Bits rest = mutual_information(joint, detail::coords_without(n, i), {y});
    const Bits ind = mutual_information(joint, {i}, {y});
    return detail::clamp_dust(total - rest - ind);
}

inline Bits information_loss(const FunctionSpec& spec, std::size_t i) {
    detail::check_index(spec, i);
    if (spec.inputs.size() < 2) throw std::invalid_argument("information loss needs at least 2 inputs");
    return independent_information(spec, i) + solo_synergy(spec, i);
}

inline FIDReport decompose(const FunctionSpec& spec) {
    const std::size_t n = spec.inputs.size();
    if (n < 2) {
        throw std::invalid_argument("decomposition needs at least 2 inputs "
                                    "(solo-synergy is undefined for n=1)");
    }
    const auto joint = build_joint(spec);
    const std::size_t y = joint.output_coord();

    FIDReport report;
    report.output_entropy = entropy(marginal(joint, {y}));
    report.total_information = mutual_information(joint, detail::all_input_coords(n), {y});
    report.residual_entropy = detail::clamp_dust(report.output_entropy - report.total_information);

    Bits sum_ind = 0.0;
    report.variables.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        report.variables[i].name = spec.inputs[i].name;
        report.variables[i].independent = mutual_information(joint, {i}, {y});
        sum_ind += report.variables[i].independent;
    }
    report.synergy = detail::synergy_from(report.total_information, sum_ind);

    for (std::size_t i = 0; i < n; ++i) {
        auto& v = report.variables[i];
        if (n == 2) {
            v.solo_synergy = report.synergy;
        } else {
            const Bits rest = mutual_information(joint, detail::coords_without(n, i), {y});
            v.solo_synergy = detail::clamp_dust(report.total_information - rest - v.independent);
        }
        v.loss = v.independent + v.solo_synergy;
    }
    return report;
}

// ---- composite inputs --------------------------------------------------------

// Replaces the given inputs by one composite variable whose alphabet is the
// Cartesian product of the member alphabets (members in ascending index
// order, last member fastest). The composite sits at the smallest member
// index; row distributions are preserved under re-indexing.
inline FunctionSpec join_inputs(const FunctionSpec& spec, std::vector<std::size_t> subset) {
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    if (subset.size() < 2) throw std::invalid_argument("join_inputs: need at least 2 inputs to join");
    if (subset.size() >= spec.inputs.size()) {
        throw std::invalid_argument("join_inputs: subset must leave at least one input outside");
    }
    for (std::size_t i : subset) detail::check_index(spec, i);

    Variable composite;
    {
        std::string name;
        for (std::size_t i : subset) {
            if (!name.empty()) name += "·";
            name += spec.inputs[i].name;
        }
        composite.name = std::move(name);
        std::vector<std::string> labels = {""};
        for (std::size_t i : subset) {
            std::vector<std::string> next;
            next.reserve(labels.size() * spec.inputs[i].states.size());
            for (const auto& prefix : labels) {
                for (const auto& s : spec.inputs[i].states) {
                    next.push_back(prefix.empty() ? s : prefix + "·" + s);
                }
            }
            labels = std::move(next);
        }
        composite.states = std::move(labels);
    }

    FunctionSpec out;
    out.output = spec.output;
    const std::size_t anchor = subset.front();
    std::vector<std::size_t> new_to_old; // composite marked by sentinel
    constexpr std::size_t kComposite = static_cast<std::size_t>(-1);
    for (std::size_t k = 0; k < spec.inputs.size(); ++k) {
        if (k == anchor) {
            out.inputs.push_back(composite);
            new_to_old.push_back(kComposite);
        } else if (std::find(subset.begin(), subset.end(), k) == subset.end()) {
            out.inputs.push_back(spec.inputs[k]);
            new_to_old.push_back(k);
        }
    }

    const std::uint64_t dom = domain_size(out.inputs);
    out.rows.resize(dom);
    for (std::uint64_t r = 0; r < dom; ++r) {
        const auto digits = unrank_assignment(out.inputs, r);
        std::vector<std::uint32_t> old_digits(spec.inputs.size(), 0);
        for (std::size_t k = 0; k < digits.size(); ++k) {
            if (new_to_old[k] != kComposite) {
                old_digits[new_to_old[k]] = digits[k];
                continue;
            }
            // unpack the composite digit onto the member inputs
            std::uint64_t packed = digits[k];
            for (std::size_t m = subset.size(); m-- > 0;) {
                const std::uint32_t a = spec.inputs[subset[m]].arity();
                old_digits[subset[m]] = static_cast<std::uint32_t>(packed % a);
                packed /= a;
            }
        }
        out.rows[r] = spec.rows[rank_assignment(spec.inputs, old_digits)];
    }
    return out;
}

// ---- Appendix-level no-redundancy check --------------------------------------

// A nonconstant coarse-graining of the output determined by both inputs of a
// pair; none exists for complete specs.
struct RedundancyWitness {
    std::size_t input_a = 0;
    std::size_t input_b = 0;
    std::vector<std::uint32_t> block_of_output; // block id per output state
};

inline constexpr std::uint32_t kMaxRedundancyAlphabet = 6;

namespace detail {

// All set partitions of {0..n-1} as restricted growth strings.
inline std::vector<std::vector<std::uint32_t>> set_partitions(std::uint32_t n) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> rgs(n, 0);
    while (true) {
        out.push_back(rgs);
        // next restricted growth string
        std::size_t k = n;
        while (k-- > 1) {
            std::uint32_t max_prefix = 0;
            for (std::size_t j = 0; j < k; ++j) max_prefix = std::max(max_prefix, rgs[j]);
            if (rgs[k] <= max_prefix) {
                ++rgs[k];
                for (std::size_t j = k + 1; j < n; ++j) rgs[j] = 0;
                break;
            }
        }
        if (k == 0) break;
    }
    return out;
}

// H(phi(Y) | X_i) for the coarse-graining given by block ids.
inline Bits coarse_conditional_entropy(const SparseDist& input_output,
                                       const std::vector<std::uint32_t>& block_of_output) {
    // input_output is the (X_i, Y) marginal: radices {|X_i|, |Y|}
    const std::uint32_t ny = input_output.radices[1];
    std::uint32_t blocks = 0;
    for (std::uint32_t b : block_of_output) blocks = std::max(blocks, b + 1);

    std::unordered_map<std::uint64_t, double> joint_xu;
    std::unordered_map<std::uint64_t, double> px;
    for (const auto& [key, p] : input_output.mass) {
        const std::uint64_t x = key / ny;
        const std::uint32_t u = block_of_output[key % ny];
        joint_xu[x * blocks + u] += p;
        px[x] += p;
    }
    EntropyAccumulator hxu, hx;
    for (const auto& [k, p] : joint_xu) hxu.add(p);
    for (const auto& [k, p] : px) hx.add(p);
    return hxu.finish() - hx.finish();
}

} // namespace detail

// Searches every coarse-graining U = phi(Y) that is nonconstant on the
// support of Y, up to relabeling, for one with H(U|X_i) = 0 and H(U|X_j) = 0
// simultaneously. Returns nullopt for every complete spec (no overlapping
// single-input information).
inline std::optional<RedundancyWitness> verify_no_redundancy(const FunctionSpec& spec,
                                                             std::size_t i, std::size_t j) {
    detail::check_index(spec, i);
    detail::check_index(spec, j);
    if (i == j) throw std::invalid_argument("verify_no_redundancy: need two distinct inputs");
    const std::uint32_t ny = spec.output.arity();
    if (ny > kMaxRedundancyAlphabet) {
        throw std::invalid_argument("output alphabet of " + std::to_string(ny) +
                                    " exceeds the coarse-graining enumeration cap of " +
                                    std::to_string(kMaxRedundancyAlphabet));
    }

    const auto joint = build_joint(spec);
    const std::size_t y = joint.output_coord();
    const SparseDist di = marginal(joint, {i, y});
    const SparseDist dj = marginal(joint, {j, y});

    // A coarse-graining only counts as nonconstant if it splits the outputs
    // that actually occur; dead output states cannot carry information.
    std::vector<bool> supported(ny, false);
    for (const auto& [key, p] : marginal(joint, {y}).mass) {
        supported[key] = p > 0.0;
    }

    for (const auto& partition : detail::set_partitions(ny)) {
        std::vector<bool> live_block(ny, false);
        std::uint32_t live_blocks = 0;
        for (std::uint32_t s = 0; s < ny; ++s) {
            if (supported[s] && !live_block[partition[s]]) {
                live_block[partition[s]] = true;
                ++live_blocks;
            }
        }
        if (live_blocks < 2) continue; // constant on the support of Y
        if (detail::coarse_conditional_entropy(di, partition) <= kMiClamp &&
            detail::coarse_conditional_entropy(dj, partition) <= kMiClamp) {
            return RedundancyWitness{i, j, partition};
        }
    }
    return std::nullopt;
}

} // namespace fid
