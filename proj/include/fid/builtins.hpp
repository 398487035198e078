// Built-in example functions: logic gates, the LED square, the Game of Life
// neighborhood rule, majority votes, and the reference probabilistic table.
#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fid/model.hpp"

namespace fid {

namespace detail {

inline Variable binary_input(std::string name) { return {std::move(name), {"0", "1"}}; }

inline FunctionSpec make_gate(const std::string& kind) {
    FunctionSpec spec;
    spec.inputs = {binary_input("X1"), binary_input("X2")};
    spec.output = {"Y", {"0", "1"}};
    spec.rows.resize(4);
    for (std::uint32_t a = 0; a < 2; ++a) {
        for (std::uint32_t b = 0; b < 2; ++b) {
            std::uint32_t y = 0;
            if (kind == "and") y = a & b;
            else if (kind == "or") y = a | b;
            else y = a ^ b;
            spec.rows[a * 2 + b] = y ? OutputDistribution{0.0, 1.0} : OutputDistribution{1.0, 0.0};
        }
    }
    return spec;
}

inline FunctionSpec make_led_square() {
    FunctionSpec spec;
    spec.inputs = {{"s1", {"U", "D"}}, {"s2", {"U", "D"}}};
    spec.output = {"led", {"A", "B", "C", "D"}};
    spec.rows.resize(4);
    for (std::uint32_t r = 0; r < 4; ++r) {
        OutputDistribution p(4, 0.0);
        p[r] = 1.0; // (U,U)->A, (U,D)->B, (D,U)->C, (D,D)->D
        spec.rows[r] = std::move(p);
    }
    return spec;
}

// 3x3 neighborhood, row-major: nw n ne w c e sw s se; "c" is the focal cell.
inline FunctionSpec make_gol_neighborhood() {
    FunctionSpec spec;
    const char* names[9] = {"nw", "n", "ne", "w", "c", "e", "sw", "s", "se"};
    for (const char* n : names) spec.inputs.push_back({n, {"dead", "alive"}});
    spec.output = {"next", {"dead", "alive"}};
    spec.rows.resize(512);
    for (std::uint32_t r = 0; r < 512; ++r) {
        int live_neighbors = 0;
        bool focal_alive = false;
        for (int bit = 0; bit < 9; ++bit) {
            const bool alive = (r >> (8 - bit)) & 1; // bit 0 of rank is the last input
            if (bit == 4) focal_alive = alive;
            else live_neighbors += alive;
        }
        const bool next = focal_alive ? (live_neighbors == 2 || live_neighbors == 3)
                                      : (live_neighbors == 3);
        spec.rows[r] = next ? OutputDistribution{0.0, 1.0} : OutputDistribution{1.0, 0.0};
    }
    return spec;
}

inline FunctionSpec make_majority(unsigned k) {
    if (k < 2) throw std::invalid_argument("majority needs at least 2 inputs");
    if (k > 24) throw std::invalid_argument("majority arity too large");
    FunctionSpec spec;
    for (unsigned i = 1; i <= k; ++i) spec.inputs.push_back(binary_input("X" + std::to_string(i)));
    spec.output = {"Y", {"0", "1"}};
    const std::uint64_t rows = std::uint64_t{1} << k;
    spec.rows.resize(rows);
    for (std::uint64_t r = 0; r < rows; ++r) {
        const unsigned ones = static_cast<unsigned>(__builtin_popcountll(r));
        const bool maj = 2 * ones > k; // strict majority; even-k ties are 0
        spec.rows[r] = maj ? OutputDistribution{0.0, 1.0} : OutputDistribution{1.0, 0.0};
    }
    return spec;
}

inline FunctionSpec make_table1() {
    FunctionSpec spec;
    spec.inputs = {binary_input("X0"), binary_input("X1"), binary_input("X2")};
    spec.output = {"Y", {"0", "1", "2", "3"}};
    spec.rows = {
        {0.250, 0.250, 0.250, 0.250}, // (0,0,0)
        {0.050, 0.450, 0.000, 0.500}, // (0,0,1)
        {0.300, 0.200, 0.000, 0.500}, // (0,1,0)
        {0.000, 0.000, 1.000, 0.000}, // (0,1,1)
        {1.000, 0.000, 0.000, 0.000}, // (1,0,0)
        {0.000, 1.000, 0.000, 0.000}, // (1,0,1)
        {1.000, 0.000, 0.000, 0.000}, // (1,1,0)
        {0.000, 0.000, 0.000, 1.000}, // (1,1,1)
    };
    return spec;
}

inline std::optional<unsigned> parse_majority_arity(std::string_view name) {
    if (!name.starts_with("majority")) return std::nullopt;
    std::string_view rest = name.substr(8);
    if (rest.starts_with("(") && rest.ends_with(")")) rest = rest.substr(1, rest.size() - 2);
    unsigned k = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
    if (ec != std::errc{} || ptr != rest.data() + rest.size()) return std::nullopt;
    return k;
}

} // namespace detail

inline std::vector<std::string> builtin_names() {
    return {"and", "or", "xor", "led_square", "gol_neighborhood", "majority<k>", "table1"};
}

// Accepts the canonical names plus the short aliases "gol", "led",
// "majority3" / "majority(3)".
inline FunctionSpec gen_builtin(std::string_view name) {
    if (name == "and" || name == "or" || name == "xor") return detail::make_gate(std::string(name));
    if (name == "led_square" || name == "led") return detail::make_led_square();
    if (name == "gol_neighborhood" || name == "gol") return detail::make_gol_neighborhood();
    if (name == "table1") return detail::make_table1();
    if (auto k = detail::parse_majority_arity(name)) return detail::make_majority(*k);
    std::string known;
    for (const auto& n : builtin_names()) {
        if (!known.empty()) known += ", ";
        known += n;
    }
    throw std::invalid_argument("unknown builtin '" + std::string(name) + "' (known: " + known + ")");
}

inline FunctionSpec gen_majority(unsigned k) { return detail::make_majority(k); }

} // namespace fid
