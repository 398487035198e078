#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fid/builtins.hpp"
#include "fid/info.hpp"
#include "fid/model.hpp"
#include "helpers.hpp"

using namespace fid;

namespace {

double mass_of(const JointDistribution& j, std::uint64_t key) {
    for (const auto& [k, p] : j.mass) {
        if (k == key) return p;
    }
    return 0.0;
}

bool any_violation_contains(const std::vector<Violation>& vs, const std::string& needle) {
    for (const auto& v : vs) {
        if (v.message.find(needle) != std::string::npos ||
            v.locus.find(needle) != std::string::npos) {
            return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("mixed-radix ranking round-trips, last input fastest", "[model]") {
    std::vector<Variable> inputs = {{"A", {"0", "1", "2"}}, {"B", {"0", "1"}}};
    REQUIRE(domain_size(inputs) == 6);
    // rank 0 -> (0,0), rank 1 -> (0,1), rank 2 -> (1,0), ...
    REQUIRE(unrank_assignment(inputs, 1) == std::vector<std::uint32_t>{0, 1});
    REQUIRE(unrank_assignment(inputs, 2) == std::vector<std::uint32_t>{1, 0});
    for (std::uint64_t r = 0; r < 6; ++r) {
        auto digits = unrank_assignment(inputs, r);
        REQUIRE(rank_assignment(inputs, digits) == r);
    }
    REQUIRE(format_assignment(inputs, unrank_assignment(inputs, 5)) == "(2,1)");
}

TEST_CASE("validate accepts well-formed specs", "[model]") {
    REQUIRE(validate(gen_builtin("xor")).empty());
    REQUIRE(validate(gen_builtin("table1")).empty());
    REQUIRE(validate(gen_builtin("gol_neighborhood")).empty());
    REQUIRE(validate(fid::testing::or_xor_partial()).empty());
}

TEST_CASE("validate reports bad row sums with a locus", "[model]") {
    auto spec = gen_builtin("xor");
    spec.rows[2] = {0.5, 0.6};
    auto vs = validate(spec);
    REQUIRE(vs.size() == 1);
    REQUIRE(vs[0].message.find("row sum 1.1") != std::string::npos);
    REQUIRE(vs[0].locus.find("(1,0)") != std::string::npos);
}

TEST_CASE("validate reports missing assignments", "[model]") {
    auto spec = gen_builtin("xor");
    spec.rows.pop_back();
    auto vs = validate(spec);
    REQUIRE(vs.size() == 1);
    REQUIRE(vs[0].message == "missing assignment (1,1)");
}

TEST_CASE("validate covers variable-level invariants", "[model]") {
    auto spec = gen_builtin("xor");

    SECTION("fewer than 2 states") {
        spec.output.states = {"only"};
        spec.rows = {{1.0}, {1.0}, {1.0}, {1.0}};
        REQUIRE(any_violation_contains(validate(spec), "fewer than 2 states"));
    }
    SECTION("duplicate state labels") {
        spec.inputs[0].states = {"0", "0"};
        REQUIRE(any_violation_contains(validate(spec), "duplicate state label"));
    }
    SECTION("duplicate variable names") {
        spec.inputs[1].name = "X1";
        REQUIRE(any_violation_contains(validate(spec), "duplicate variable name"));
    }
    SECTION("negative probability") {
        spec.rows[0] = {1.5, -0.5};
        REQUIRE(any_violation_contains(validate(spec), "negative probability"));
    }
    SECTION("wrong distribution length") {
        spec.rows[0] = {1.0, 0.0, 0.0};
        REQUIRE(any_violation_contains(validate(spec), "entries"));
    }
    SECTION("no inputs") {
        spec.inputs.clear();
        spec.rows = {{1.0, 0.0}};
        REQUIRE(any_violation_contains(validate(spec), "no input variables"));
    }
}

TEST_CASE("partial specs need at least one unknown row", "[model]") {
    auto p = fid::testing::or_xor_partial();
    p.rows[3] = OutputDistribution{0.0, 1.0};
    REQUIRE(any_violation_contains(validate(p), "no unknown rows"));
}

TEST_CASE("domain cap is enforced", "[model]") {
    std::vector<Variable> inputs;
    for (int i = 0; i < 25; ++i) inputs.push_back({"X" + std::to_string(i), {"0", "1"}});
    REQUIRE(!try_domain_size(inputs).has_value());
    REQUIRE_THROWS_AS(domain_size(inputs), std::length_error);
    FunctionSpec spec;
    spec.inputs = inputs;
    spec.output = {"Y", {"0", "1"}};
    REQUIRE(any_violation_contains(validate(spec), "2^24"));
}

TEST_CASE("build_joint places point masses under the uniform measure", "[model]") {
    const auto joint = build_joint(gen_builtin("and"));
    // key = row * |Y| + y
    REQUIRE(mass_of(joint, 3 * 2 + 1) == Catch::Approx(0.25)); // (1,1) -> 1
    REQUIRE(mass_of(joint, 0 * 2 + 1) == 0.0);                 // (0,0) -> 1 unreachable
    REQUIRE(mass_of(joint, 0 * 2 + 0) == Catch::Approx(0.25));
}

TEST_CASE("build_joint divides probabilistic rows by the domain size", "[model]") {
    const auto joint = build_joint(gen_builtin("table1"));
    // row (0,0,1) has rank 1; paper row is (0.050, 0.450, 0.000, 0.500)
    REQUIRE(mass_of(joint, 1 * 4 + 0) == Catch::Approx(0.050 / 8).epsilon(1e-12));
    REQUIRE(mass_of(joint, 1 * 4 + 1) == Catch::Approx(0.450 / 8).epsilon(1e-12));
    REQUIRE(mass_of(joint, 1 * 4 + 2) == 0.0);
    REQUIRE(mass_of(joint, 1 * 4 + 3) == Catch::Approx(0.500 / 8).epsilon(1e-12));
}

TEST_CASE("build_joint on a uniform-output single-input spec", "[model]") {
    FunctionSpec spec;
    spec.inputs = {{"X", {"0", "1"}}};
    spec.output = {"Y", {"0", "1"}};
    spec.rows = {{0.5, 0.5}, {0.5, 0.5}};
    const auto joint = build_joint(spec);
    REQUIRE(joint.mass.size() == 4);
    for (const auto& [k, p] : joint.mass) REQUIRE(p == Catch::Approx(0.25));
}

TEST_CASE("build_joint rejects invalid specs", "[model]") {
    auto spec = gen_builtin("xor");
    spec.rows.pop_back();
    REQUIRE_THROWS_AS(build_joint(spec), std::invalid_argument);
}

TEST_CASE("marginal over the output recovers output probabilities", "[model]") {
    const auto joint = build_joint(gen_builtin("and"));
    const auto py = marginal(joint, {joint.output_coord()});
    REQUIRE(py.mass.size() == 2);
    REQUIRE(py.mass[1].second == Catch::Approx(0.25)); // P(Y=1)
}

TEST_CASE("Game of Life output marginal matches the brute-force rule count", "[model]") {
    // independent oracle: count next-alive neighborhoods by bit twiddling
    int alive = 0;
    for (int pattern = 0; pattern < 512; ++pattern) {
        const bool focal = (pattern >> 4) & 1; // bit 4 = focal cell in row-major order
        int live = 0;
        for (int b = 0; b < 9; ++b) {
            if (b != 4 && ((pattern >> b) & 1)) ++live;
        }
        if (focal ? (live == 2 || live == 3) : (live == 3)) ++alive;
    }
    REQUIRE(alive == 140);

    const auto joint = build_joint(gen_builtin("gol_neighborhood"));
    const auto py = marginal(joint, {joint.output_coord()});
    REQUIRE(py.mass[1].second == Catch::Approx(140.0 / 512.0).epsilon(1e-12));
}

TEST_CASE("marginal rejects empty and out-of-range subsets", "[model]") {
    const auto joint = build_joint(gen_builtin("xor"));
    REQUIRE_THROWS_AS(marginal(joint, std::vector<std::size_t>{}), std::invalid_argument);
    REQUIRE_THROWS_AS(marginal(joint, {17}), std::invalid_argument);
}

TEST_CASE("marginal over everything keeps total mass 1", "[model]") {
    const auto joint = build_joint(gen_builtin("table1"));
    const auto all = marginal(joint, {0, 1, 2, 3});
    REQUIRE(all.total() == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("input marginals are uniform and inputs are pairwise independent", "[model]") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const auto spec = fid::testing::random_spec(rng);
        const auto joint = build_joint(spec);
        for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
            const auto m = marginal(joint, {i});
            REQUIRE(m.mass.size() == spec.inputs[i].arity());
            for (const auto& [k, p] : m.mass) {
                REQUIRE(p == Catch::Approx(1.0 / spec.inputs[i].arity()).margin(1e-12));
            }
            for (std::size_t j = i + 1; j < spec.inputs.size(); ++j) {
                REQUIRE(mutual_information(joint, {i}, {j}) <= 1e-10);
            }
        }
    }
}
