// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <sstream>

#include "goodturing/errors.hpp"
#include "goodturing/io.hpp"

using namespace goodturing;

TEST_SUITE("io") {

TEST_CASE("format_double renders 12 significant locale-free digits") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0 / 3.0) == "0.333333333333");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1e-9) == "1e-09");
}

TEST_CASE("counts CSV round-trips") {
    FrequencyTable table;
    table.n = 4;
    table.phi = {{1, 2}, {2, 1}};
    std::ostringstream out;
    write_counts_csv(out, table);
    CHECK(out.str() == "# n=4\nk,phi_k\n1,2\n2,1\n");

    std::istringstream in(out.str());
    const FrequencyTable parsed = read_counts_csv(in);
    CHECK(parsed.n == 4);
    CHECK(parsed.phi == table.phi);
}

TEST_CASE("counts CSV rejects inconsistent and malformed tables") {
    const auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_counts_csv(in);
    };
    CHECK_THROWS_AS(parse("k,phi_k\n1,2\n"), CountTableError);  // no metadata
    CHECK_THROWS_AS(parse("# n=4\n1,2\n"), CountTableError);    // no header
    CHECK_THROWS_AS(parse("# n=5\nk,phi_k\n1,2\n2,1\n"), CountTableError);
    CHECK_THROWS_AS(parse("# n=4\nk,phi_k\n1,2\n1,1\n"), CountTableError);
    CHECK_THROWS_AS(parse("# n=4\nk,phi_k\n0,4\n"), CountTableError);
    CHECK_THROWS_AS(parse("# n=4\nk,phi_k\n1,0\n2,2\n"), CountTableError);
    CHECK_THROWS_AS(parse("# n=4\nk,phi_k\nx,2\n"), CountTableError);
}

TEST_CASE("counts sniffing recognizes headers, metadata, and tokens") {
    CHECK(looks_like_counts_csv("k,phi_k\n1,2\n"));
    CHECK(looks_like_counts_csv("# n=4\nk,phi_k\n"));
    CHECK(looks_like_counts_csv("\n\n  k,phi_k\n"));
    CHECK(!looks_like_counts_csv("the quick brown fox"));
    CHECK(!looks_like_counts_csv("# a comment-looking token stream"));
    CHECK(!looks_like_counts_csv(""));
}

TEST_CASE("zeta CSV emits nonzero entries with 12-digit values") {
    FrequencyTable table;
    table.n = 4;
    table.phi = {{1, 2}, {2, 1}};
    std::ostringstream out;
    write_zeta_csv(out, good_turing_totals(table));
    CHECK(out.str() == "k,zeta_k\n0,0.5\n1,0.5\n");
}

TEST_CASE("per-symbol CSV covers occupied classes below n") {
    FrequencyTable table;
    table.n = 4;
    table.phi = {{1, 2}, {2, 1}};
    std::ostringstream out;
    write_per_symbol_csv(out, table);
    CHECK(out.str() == "k,per_symbol_prob\n1,0.25\n2,0\n");
}

TEST_CASE("lambda CSV carries the trailing tail row") {
    PoissonMixtureVector lambda;
    lambda.lambda = {0.5, 0.25};
    lambda.tail_mass = 0.25;
    std::ostringstream out;
    write_lambda_csv(out, lambda);
    CHECK(out.str() == "k,lambda_k\n0,0.5\n1,0.25\ntail,0.25\n");
}

TEST_CASE("mixing JSON parses atoms and densities") {
    std::istringstream in(
        R"({"atoms": [[1.0, 0.5]], "density": {"grid": [0, 2], "values": [0.25, 0.25]}})");
    const MixingDistribution q = load_mixing_json(in);
    REQUIRE(q.atoms().size() == 1);
    CHECK(q.atoms()[0].weight == 0.5);
    CHECK(q.density_integral() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("mixing JSON rejects schema violations") {
    const auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return load_mixing_json(in);
    };
    CHECK_THROWS_AS(parse(R"({})"), SchemaError);
    CHECK_THROWS_AS(parse(R"({"atoms": [[1.0, 1.0]], "bogus": 1})"), SchemaError);
    CHECK_THROWS_AS(parse(R"({"atoms": [[1.0]]})"), SchemaError);
    CHECK_THROWS_AS(parse(R"({"atoms": [[1.0, 0.5]]})"), SchemaError);  // mass 0.5
    CHECK_THROWS_AS(parse(R"(not json)"), SchemaError);
}

TEST_CASE("family JSON parses all three kinds") {
    {
        std::istringstream in(R"({"kind": "uniform"})");
        CHECK(load_family_json(in).kind() == FamilyKind::kUniform);
    }
    {
        std::istringstream in(
            R"({"kind": "quantized_density",
                "density": {"grid": [0, 1], "values": [0, 2]}})");
        const Family f = load_family_json(in);
        CHECK(f.kind() == FamilyKind::kQuantizedDensity);
        CHECK(f.limit_Q().has_density());
    }
    {
        std::istringstream in(
            R"({"kind": "explicit_sequence", "atoms": [[0.25, 2], [0.5, 1]],
                "continuous_mass": 0})");
        const Family f = load_family_json(in);
        CHECK(f.kind() == FamilyKind::kExplicitSequence);
        CHECK(f.spec().atoms().size() == 2);
    }
}

TEST_CASE("family JSON rejects unknown kinds and stray fields") {
    const auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return load_family_json(in);
    };
    CHECK_THROWS_AS(parse(R"({"kind": "zipf"})"), SchemaError);
    CHECK_THROWS_AS(parse(R"({"kind": "uniform", "atoms": []})"), SchemaError);
    CHECK_THROWS_AS(parse(R"({"kind": "quantized_density"})"), SchemaError);
    CHECK_THROWS_AS(
        parse(R"({"kind": "explicit_sequence", "atoms": [[2.0, 1]]})"),
        SchemaError);  // invalid spec surfaces as a schema error
}

TEST_CASE("config JSON applies defaults and validates") {
    std::istringstream in(
        R"({"family": {"kind": "uniform"}, "n_grid": [100, 1000], "trials": 3})");
    const ExperimentConfig config = load_config_json(in);
    CHECK(config.trials == 3);
    CHECK(config.kmax == 50);
    CHECK(config.seed == 0);
    CHECK(config.epsilon_grid.empty());
    CHECK(config.n_grid == std::vector<std::uint64_t>{100, 1000});
}

TEST_CASE("config JSON rejects bad configs with the field named") {
    const auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return load_config_json(in);
    };
    CHECK_THROWS_WITH_AS(
        parse(R"({"family": {"kind": "uniform"}, "n_grid": [10], "trials": 0})"),
        doctest::Contains("trials"), SchemaError);
    CHECK_THROWS_WITH_AS(
        parse(R"({"family": {"kind": "uniform"}, "n_grid": [10, 5], "trials": 1})"),
        doctest::Contains("n_grid"), SchemaError);
    CHECK_THROWS_WITH_AS(
        parse(R"({"n_grid": [10], "trials": 1})"), doctest::Contains("family"),
        SchemaError);
    CHECK_THROWS_WITH_AS(
        parse(R"({"family": {"kind": "uniform"}, "n_grid": [10], "trials": 1,
                  "bogus": true})"),
        doctest::Contains("bogus"), SchemaError);
    CHECK_THROWS_WITH_AS(
        parse(R"({"family": {"kind": "uniform"}, "n_grid": [10], "trials": 1,
                  "epsilon_grid": [-0.5]})"),
        doctest::Contains("epsilon"), SchemaError);
}

TEST_CASE("seed survives the 64-bit round trip through config JSON") {
    std::istringstream in(
        R"({"family": {"kind": "uniform"}, "n_grid": [10], "trials": 1,
            "seed": 18446744073709551615})");
    CHECK(load_config_json(in).seed == 18446744073709551615ull);
}

}  // TEST_SUITE
