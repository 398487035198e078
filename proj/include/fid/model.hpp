// Discrete function model: complete and partial input->output specs and the
// joint distribution they induce under the uniform input measure.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fid {

// Row sums are accepted within this tolerance of 1.
inline constexpr double kProbTolerance = 1e-9;

// Hard cap on the joint input domain (number of rows).
inline constexpr std::uint64_t kMaxDomainRows = std::uint64_t{1} << 24;

struct Variable {
    std::string name;
    std::vector<std::string> states; // declaration order fixes probability alignment

    std::uint32_t arity() const { return static_cast<std::uint32_t>(states.size()); }

    int index_of(const std::string& state) const {
        for (std::size_t k = 0; k < states.size(); ++k) {
            if (states[k] == state) return static_cast<int>(k);
        }
        return -1;
    }

    bool operator==(const Variable&) const = default;
};

// Probabilities aligned with the output variable's state order.
using OutputDistribution = std::vector<double>;

// Complete function: one distribution per joint input assignment.
// Row index is the mixed-radix rank of the assignment (declared input order,
// last input varies fastest).
struct FunctionSpec {
    std::vector<Variable> inputs;
    Variable output;
    std::vector<OutputDistribution> rows;

    bool operator==(const FunctionSpec&) const = default;
};

// Same, but some rows unknown. At least one unknown row is required.
struct PartialFunctionSpec {
    std::vector<Variable> inputs;
    Variable output;
    std::vector<std::optional<OutputDistribution>> rows;

    std::uint64_t unknown_count() const {
        std::uint64_t c = 0;
        for (const auto& r : rows) {
            if (!r.has_value()) ++c;
        }
        return c;
    }

    bool operator==(const PartialFunctionSpec&) const = default;
};

// ---- mixed-radix domain enumeration ----------------------------------------

// Product of input arities, or nullopt when it exceeds kMaxDomainRows.
inline std::optional<std::uint64_t> try_domain_size(const std::vector<Variable>& inputs) {
    std::uint64_t size = 1;
    for (const auto& v : inputs) {
        const std::uint64_t a = v.arity();
        if (a == 0 || size > kMaxDomainRows / a) return std::nullopt;
        size *= a;
    }
    if (size > kMaxDomainRows) return std::nullopt;
    return size;
}

inline std::uint64_t domain_size(const std::vector<Variable>& inputs) {
    auto s = try_domain_size(inputs);
    if (!s) throw std::length_error("input domain exceeds 2^24 rows");
    return *s;
}

inline std::vector<std::uint32_t> unrank_assignment(const std::vector<Variable>& inputs,
                                                    std::uint64_t rank) {
    std::vector<std::uint32_t> digits(inputs.size());
    for (std::size_t i = inputs.size(); i-- > 0;) {
        const std::uint64_t a = inputs[i].arity();
        digits[i] = static_cast<std::uint32_t>(rank % a);
        rank /= a;
    }
    return digits;
}

inline std::uint64_t rank_assignment(const std::vector<Variable>& inputs,
                                     std::span<const std::uint32_t> digits) {
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        rank = rank * inputs[i].arity() + digits[i];
    }
    return rank;
}

// Renders an assignment as "(a,b,c)" using state labels.
inline std::string format_assignment(const std::vector<Variable>& inputs,
                                     std::span<const std::uint32_t> digits) {
    std::string s = "(";
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) s += ",";
        s += inputs[i].states[digits[i]];
    }
    s += ")";
    return s;
}

// ---- validation -------------------------------------------------------------

struct Violation {
    std::string locus;   // variable name, "row <k> (a,b)", ...
    std::string message;
};

namespace detail {

inline void validate_variables(const std::vector<Variable>& inputs, const Variable& output,
                               std::vector<Violation>& out) {
    std::vector<const Variable*> all;
    for (const auto& v : inputs) all.push_back(&v);
    all.push_back(&output);
    for (const Variable* v : all) {
        if (v->states.size() < 2) {
            out.push_back({v->name, "variable has fewer than 2 states"});
        }
        for (std::size_t a = 0; a < v->states.size(); ++a) {
            for (std::size_t b = a + 1; b < v->states.size(); ++b) {
                if (v->states[a] == v->states[b]) {
                    out.push_back({v->name, "duplicate state label '" + v->states[a] + "'"});
                }
            }
        }
    }
    for (std::size_t a = 0; a < all.size(); ++a) {
        for (std::size_t b = a + 1; b < all.size(); ++b) {
            if (all[a]->name == all[b]->name) {
                out.push_back({all[a]->name, "duplicate variable name"});
            }
        }
    }
    if (inputs.empty()) {
        out.push_back({"inputs", "spec has no input variables"});
    }
}

inline void validate_row(const OutputDistribution& p, std::uint64_t row,
                         const std::vector<Variable>& inputs, std::uint32_t output_arity,
                         std::vector<Violation>& out) {
    const std::string locus = "row " + std::to_string(row) + " " +
                              format_assignment(inputs, unrank_assignment(inputs, row));
    if (p.size() != output_arity) {
        out.push_back({locus, "distribution has " + std::to_string(p.size()) +
                                  " entries, output alphabet has " + std::to_string(output_arity)});
        return;
    }
    double sum = 0.0;
    for (double x : p) {
        if (x < 0.0) {
            out.push_back({locus, "negative probability " + std::to_string(x)});
            return;
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > kProbTolerance) {
        out.push_back({locus, "row sum " + std::to_string(sum) + " != 1"});
    }
}

template <typename RowRange, typename HasValue, typename GetValue>
std::vector<Violation> validate_common(const std::vector<Variable>& inputs, const Variable& output,
                                       const RowRange& rows, HasValue has_value, GetValue get_value) {
    std::vector<Violation> out;
    validate_variables(inputs, output, out);
    auto dom = try_domain_size(inputs);
    if (!dom) {
        out.push_back({"inputs", "input domain exceeds 2^24 rows"});
        return out;
    }
    if (rows.size() > *dom) {
        out.push_back({"rows", "spec has " + std::to_string(rows.size()) + " rows, domain has " +
                                   std::to_string(*dom)});
    }
    for (std::uint64_t r = rows.size(); r < *dom; ++r) {
        out.push_back({"rows", "missing assignment " +
                                   format_assignment(inputs, unrank_assignment(inputs, r))});
    }
    const std::uint64_t upto = std::min<std::uint64_t>(rows.size(), *dom);
    for (std::uint64_t r = 0; r < upto; ++r) {
        if (has_value(rows[r])) {
            validate_row(get_value(rows[r]), r, inputs, output.arity(), out);
        }
    }
    return out;
}

} // namespace detail

inline std::vector<Violation> validate(const FunctionSpec& spec) {
    return detail::validate_common(
        spec.inputs, spec.output, spec.rows, [](const OutputDistribution&) { return true; },
        [](const OutputDistribution& r) -> const OutputDistribution& { return r; });
}

inline std::vector<Violation> validate(const PartialFunctionSpec& spec) {
    auto out = detail::validate_common(
        spec.inputs, spec.output, spec.rows,
        [](const std::optional<OutputDistribution>& r) { return r.has_value(); },
        [](const std::optional<OutputDistribution>& r) -> const OutputDistribution& { return *r; });
    if (spec.unknown_count() == 0) {
        out.push_back({"rows", "partial spec has no unknown rows"});
    }
    return out;
}

template <typename Spec>
void require_valid(const Spec& spec) {
    auto v = validate(spec);
    if (!v.empty()) {
        throw std::invalid_argument("invalid spec: " + v.front().locus + ": " + v.front().message);
    }
}

// ---- joint and marginal distributions ---------------------------------------

// Sparse distribution over a tuple of coordinates. Keys are mixed-radix ranks
// over `radices` (last coordinate fastest); zero-probability outcomes omitted;
// entries sorted by key.
struct SparseDist {
    std::vector<std::uint32_t> radices;
    std::vector<std::pair<std::uint64_t, double>> mass;

    double total() const {
        double s = 0.0;
        for (const auto& [k, p] : mass) s += p;
        return s;
    }
};

// Joint over (X_0..X_{n-1}, Y) under the uniform input measure.
struct JointDistribution {
    std::vector<std::uint32_t> radices; // input arities, then output arity
    std::vector<std::pair<std::uint64_t, double>> mass;

    std::size_t num_inputs() const { return radices.size() - 1; }
    std::size_t output_coord() const { return radices.size() - 1; }
};

inline JointDistribution build_joint(const FunctionSpec& spec) {
    require_valid(spec);
    JointDistribution j;
    j.radices.reserve(spec.inputs.size() + 1);
    for (const auto& v : spec.inputs) j.radices.push_back(v.arity());
    j.radices.push_back(spec.output.arity());

    const double row_mass = 1.0 / static_cast<double>(spec.rows.size());
    const std::uint32_t ny = spec.output.arity();
    for (std::uint64_t r = 0; r < spec.rows.size(); ++r) {
        const auto& p = spec.rows[r];
        double sum = 0.0;
        for (double x : p) sum += x;
        // rows are accepted within 1e-9 of 1; normalizing keeps the input
        // marginal exactly uniform
        const double scale = row_mass / sum;
        for (std::uint32_t y = 0; y < ny; ++y) {
            if (p[y] > 0.0) {
                j.mass.emplace_back(r * ny + y, p[y] * scale);
            }
        }
    }
    return j;
}

namespace detail {

// Divisor of coordinate k in the flat mixed-radix key: product of radices
// after k.
inline std::vector<std::uint64_t> coordinate_divisors(const std::vector<std::uint32_t>& radices) {
    std::vector<std::uint64_t> div(radices.size());
    std::uint64_t d = 1;
    for (std::size_t k = radices.size(); k-- > 0;) {
        div[k] = d;
        d *= radices[k];
    }
    return div;
}

inline SparseDist project(const std::vector<std::uint32_t>& radices,
                          const std::vector<std::pair<std::uint64_t, double>>& mass,
                          const std::vector<std::size_t>& coords) {
    std::vector<std::size_t> sel(coords.begin(), coords.end());
    std::sort(sel.begin(), sel.end());
    sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
    if (sel.empty()) throw std::invalid_argument("marginal: empty coordinate set");
    if (sel.back() >= radices.size()) throw std::invalid_argument("marginal: coordinate out of range");

    const auto div = coordinate_divisors(radices);
    SparseDist out;
    out.radices.reserve(sel.size());
    for (std::size_t c : sel) out.radices.push_back(radices[c]);

    std::unordered_map<std::uint64_t, double> acc;
    acc.reserve(mass.size());
    for (const auto& [key, p] : mass) {
        std::uint64_t proj = 0;
        for (std::size_t c : sel) {
            const auto digit = (key / div[c]) % radices[c];
            proj = proj * radices[c] + digit;
        }
        acc[proj] += p;
    }
    out.mass.assign(acc.begin(), acc.end());
    std::sort(out.mass.begin(), out.mass.end());
    return out;
}

} // namespace detail

// Marginal over a subset of coordinates (inputs are 0..n-1, the output is
// coordinate n). Coordinates are set-valued: order and duplicates ignored.
inline SparseDist marginal(const JointDistribution& joint, const std::vector<std::size_t>& coords) {
    return detail::project(joint.radices, joint.mass, coords);
}

} // namespace fid
