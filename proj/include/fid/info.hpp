// Shannon measures over discrete distributions, in bits.
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "fid/model.hpp"

namespace fid {

// All quantities are in bits (log base 2).
using Bits = double;

// Mutual-information values within this distance below zero are clamped to 0.
inline constexpr double kMiClamp = 1e-10;

namespace detail {

inline void check_distribution(double sum) {
    if (std::abs(sum - 1.0) > kProbTolerance) {
        throw std::invalid_argument("distribution sums to " + std::to_string(sum) + ", not 1");
    }
}

// Kahan-compensated sum of -p*log2(p) terms.
struct EntropyAccumulator {
    double sum = 0.0;
    double carry = 0.0;
    double total_mass = 0.0;

    void add(double p) {
        if (p < 0.0) throw std::invalid_argument("negative probability in distribution");
        total_mass += p;
        if (p <= 0.0) return; // 0 log 0 := 0
        const double term = -p * std::log2(p);
        const double t = term - carry;
        const double s = sum + t;
        carry = (s - sum) - t;
        sum = s;
    }

    Bits finish() const {
        check_distribution(total_mass);
        return sum < 0.0 && sum > -kMiClamp ? 0.0 : sum;
    }
};

} // namespace detail

inline Bits entropy(std::span<const double> probs) {
    detail::EntropyAccumulator acc;
    for (double p : probs) acc.add(p);
    return acc.finish();
}

inline Bits entropy(const SparseDist& dist) {
    detail::EntropyAccumulator acc;
    for (const auto& [k, p] : dist.mass) acc.add(p);
    return acc.finish();
}

namespace detail {

inline void check_coordinate_sets(const JointDistribution& joint, const std::vector<std::size_t>& a,
                                  const std::vector<std::size_t>& b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("mutual information: empty coordinate set");
    }
    for (std::size_t ca : a) {
        if (ca >= joint.radices.size()) throw std::invalid_argument("coordinate out of range");
        for (std::size_t cb : b) {
            if (cb >= joint.radices.size()) throw std::invalid_argument("coordinate out of range");
            if (ca == cb) {
                throw std::invalid_argument("mutual information: coordinate sets overlap");
            }
        }
    }
}

inline Bits clamp_mi(double value) {
    if (value < 0.0) {
        if (value < -kMiClamp) {
            throw std::logic_error("mutual information " + std::to_string(value) +
                                   " below -1e-10; joint construction is broken");
        }
        return 0.0;
    }
    return value;
}

} // namespace detail

// Production route: I(A;B) = H(A) + H(B) - H(A,B).
inline Bits mutual_information(const JointDistribution& joint, const std::vector<std::size_t>& a,
                               const std::vector<std::size_t>& b) {
    detail::check_coordinate_sets(joint, a, b);
    std::vector<std::size_t> ab(a.begin(), a.end());
    ab.insert(ab.end(), b.begin(), b.end());
    const Bits ha = entropy(marginal(joint, a));
    const Bits hb = entropy(marginal(joint, b));
    const Bits hab = entropy(marginal(joint, ab));
    return detail::clamp_mi(ha + hb - hab);
}

// Oracle route: direct sum of p(a,b) log2[p(a,b) / (p(a) p(b))].
inline Bits mutual_information_direct(const JointDistribution& joint, const std::vector<std::size_t>& a,
                                      const std::vector<std::size_t>& b) {
    detail::check_coordinate_sets(joint, a, b);
    std::vector<std::size_t> ab(a.begin(), a.end());
    ab.insert(ab.end(), b.begin(), b.end());
    std::sort(ab.begin(), ab.end());

    const SparseDist dab = marginal(joint, ab);
    // positions of the a-coordinates within the sorted union
    std::vector<std::size_t> pos_a, pos_b;
    for (std::size_t k = 0; k < ab.size(); ++k) {
        const bool in_a = std::find(a.begin(), a.end(), ab[k]) != a.end();
        (in_a ? pos_a : pos_b).push_back(k);
    }
    const SparseDist da = detail::project(dab.radices, dab.mass, pos_a);
    const SparseDist db = detail::project(dab.radices, dab.mass, pos_b);

    std::unordered_map<std::uint64_t, double> pa(da.mass.begin(), da.mass.end());
    std::unordered_map<std::uint64_t, double> pb(db.mass.begin(), db.mass.end());

    const auto div = detail::coordinate_divisors(dab.radices);
    double sum = 0.0;
    for (const auto& [key, p] : dab.mass) {
        std::uint64_t ka = 0, kb = 0;
        for (std::size_t k : pos_a) ka = ka * dab.radices[k] + (key / div[k]) % dab.radices[k];
        for (std::size_t k : pos_b) kb = kb * dab.radices[k] + (key / div[k]) % dab.radices[k];
        sum += p * std::log2(p / (pa.at(ka) * pb.at(kb)));
    }
    return detail::clamp_mi(sum);
}

} // namespace fid
