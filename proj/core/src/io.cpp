// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#include "goodturing/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "goodturing/errors.hpp"

namespace goodturing {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                          s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                          s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::uint64_t parse_u64(std::string_view s, const char* what) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        std::ostringstream msg;
        msg << "malformed " << what << ": '" << std::string(s) << "'";
        throw CountTableError(msg.str());
    }
    return value;
}

void expect_keys(const nlohmann::json& obj,
                 std::initializer_list<const char*> allowed,
                 const char* where) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
                return key == a;
            }) == allowed.end()) {
            std::ostringstream msg;
            msg << where << ": unknown field '" << key << "'";
            throw SchemaError(msg.str());
        }
    }
}

nlohmann::json parse_json(std::istream& in, const char* where) {
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        std::ostringstream msg;
        msg << where << ": " << e.what();
        throw SchemaError(msg.str());
    }
}

double require_number(const nlohmann::json& j, const char* field) {
    if (!j.is_number()) {
        std::ostringstream msg;
        msg << field << ": expected a number";
        throw SchemaError(msg.str());
    }
    return j.get<double>();
}

std::vector<double> require_number_array(const nlohmann::json& j,
                                         const char* field) {
    if (!j.is_array()) {
        std::ostringstream msg;
        msg << field << ": expected an array of numbers";
        throw SchemaError(msg.str());
    }
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(require_number(v, field));
    return out;
}

PiecewiseLinearDensity density_from_json(const nlohmann::json& j,
                                         const char* field) {
    if (!j.is_object()) {
        std::ostringstream msg;
        msg << field << ": expected an object with 'grid' and 'values'";
        throw SchemaError(msg.str());
    }
    expect_keys(j, {"grid", "values"}, field);
    if (!j.contains("grid") || !j.contains("values")) {
        std::ostringstream msg;
        msg << field << ": needs both 'grid' and 'values'";
        throw SchemaError(msg.str());
    }
    PiecewiseLinearDensity density;
    density.grid = require_number_array(j.at("grid"), "density.grid");
    density.values = require_number_array(j.at("values"), "density.values");
    return density;
}

std::vector<Atom> atoms_from_json(const nlohmann::json& j, const char* field) {
    if (!j.is_array()) {
        std::ostringstream msg;
        msg << field << ": expected an array of [prob, multiplicity] pairs";
        throw SchemaError(msg.str());
    }
    std::vector<Atom> atoms;
    atoms.reserve(j.size());
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
            !pair[1].is_number_integer()) {
            std::ostringstream msg;
            msg << field << ": each atom must be [prob, multiplicity]";
            throw SchemaError(msg.str());
        }
        atoms.push_back({pair[0].get<double>(), pair[1].get<std::uint64_t>()});
    }
    return atoms;
}

Family family_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw SchemaError("family: expected an object");
    expect_keys(j, {"kind", "density", "atoms", "continuous_mass"}, "family");
    if (!j.contains("kind") || !j.at("kind").is_string()) {
        throw SchemaError("family.kind: expected a string");
    }
    const std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "uniform") {
            expect_keys(j, {"kind"}, "family(uniform)");
            return Family::uniform();
        }
        if (kind == "quantized_density") {
            expect_keys(j, {"kind", "density"}, "family(quantized_density)");
            if (!j.contains("density")) {
                throw SchemaError("family.density: required for "
                                  "quantized_density");
            }
            return Family::quantized_density(
                density_from_json(j.at("density"), "family.density"));
        }
        if (kind == "explicit_sequence") {
            expect_keys(j, {"kind", "atoms", "continuous_mass"},
                        "family(explicit_sequence)");
            std::vector<Atom> atoms;
            if (j.contains("atoms")) {
                atoms = atoms_from_json(j.at("atoms"), "family.atoms");
            }
            double continuous = 0.0;
            if (j.contains("continuous_mass")) {
                continuous =
                    require_number(j.at("continuous_mass"), "family.continuous_mass");
            }
            return Family::explicit_sequence(
                make_distribution(std::move(atoms), continuous));
        }
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        std::ostringstream msg;
        msg << "family: " << e.what();
        throw SchemaError(msg.str());
    }
    std::ostringstream msg;
    msg << "family.kind: unknown kind '" << kind << "'";
    throw SchemaError(msg.str());
}

ordered_json family_to_json(const Family& family) {
    ordered_json j;
    switch (family.kind()) {
        case FamilyKind::kUniform:
            j["kind"] = "uniform";
            break;
        case FamilyKind::kQuantizedDensity: {
            j["kind"] = "quantized_density";
            j["density"] = {{"grid", family.density().grid},
                            {"values", family.density().values}};
            break;
        }
        case FamilyKind::kExplicitSequence: {
            j["kind"] = "explicit_sequence";
            ordered_json atoms = ordered_json::array();
            for (const Atom& a : family.spec().atoms()) {
                atoms.push_back({a.prob, a.multiplicity});
            }
            j["atoms"] = std::move(atoms);
            j["continuous_mass"] = family.spec().continuous_mass();
            break;
        }
    }
    return j;
}

}  // namespace

std::string format_double(double v) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v,
                                         std::chars_format::general, 12);
    return std::string(buffer, ptr);
}

void write_counts_csv(std::ostream& out, const FrequencyTable& freq) {
    out << "# n=" << freq.n << "\n";
    out << "k,phi_k\n";
    for (const auto& [k, phi] : freq.phi) {
        if (phi > 0) out << k << "," << phi << "\n";
    }
}

FrequencyTable read_counts_csv(std::istream& in) {
    FrequencyTable table;
    bool have_n = false;
    bool have_header = false;
    std::string line;
    while (std::getline(in, line)) {
        const std::string_view sv = trim(line);
        if (sv.empty()) continue;
        if (sv.front() == '#') {
            const auto pos = sv.find("n=");
            if (pos != std::string_view::npos) {
                table.n = parse_u64(trim(sv.substr(pos + 2)), "n metadata");
                have_n = true;
            }
            continue;
        }
        if (!have_header) {
            if (sv != "k,phi_k") {
                throw CountTableError("expected header 'k,phi_k'");
            }
            have_header = true;
            continue;
        }
        const auto comma = sv.find(',');
        if (comma == std::string_view::npos) {
            throw CountTableError("row is not 'k,phi_k' shaped: '" +
                                  std::string(sv) + "'");
        }
        const std::uint64_t k = parse_u64(trim(sv.substr(0, comma)), "k");
        const std::uint64_t phi = parse_u64(trim(sv.substr(comma + 1)), "phi_k");
        if (k == 0) throw CountTableError("k must be >= 1 in a counts table");
        if (phi == 0) {
            throw CountTableError("phi_k = 0 rows must be omitted");
        }
        if (!table.phi.emplace(k, phi).second) {
            throw CountTableError("duplicate row for k");
        }
    }
    if (!have_header) throw CountTableError("missing 'k,phi_k' header");
    if (!have_n) throw CountTableError("missing '# n=<n>' metadata");
    if (table.sum_k_phi() != table.n) {
        std::ostringstream msg;
        msg << "table implies n = " << table.sum_k_phi()
            << " but metadata says n = " << table.n;
        throw CountTableError(msg.str());
    }
    return table;
}

bool looks_like_counts_csv(std::string_view head) {
    while (!head.empty()) {
        const auto eol = head.find('\n');
        const std::string_view line =
            trim(eol == std::string_view::npos ? head : head.substr(0, eol));
        if (!line.empty()) {
            if (line == "k,phi_k") return true;
            if (line.size() > 1 && line.front() == '#' &&
                trim(line.substr(1)).substr(0, 2) == "n=") {
                return true;
            }
            return false;
        }
        if (eol == std::string_view::npos) break;
        head.remove_prefix(eol + 1);
    }
    return false;
}

void write_zeta_csv(std::ostream& out, const GoodTuringVector& zeta) {
    out << "k,zeta_k\n";
    for (const auto& [k, numer] : zeta.numerators()) {
        if (numer == 0) continue;
        out << k << ","
            << format_double(static_cast<double>(numer) /
                             static_cast<double>(zeta.n()))
            << "\n";
    }
}

void write_per_symbol_csv(std::ostream& out, const FrequencyTable& freq) {
    out << "k,per_symbol_prob\n";
    for (const auto& [k, phi] : freq.phi) {
        if (phi == 0 || k >= freq.n) continue;
        out << k << "," << format_double(good_turing_per_symbol(freq, k))
            << "\n";
    }
}

void write_lambda_csv(std::ostream& out, const PoissonMixtureVector& lambda) {
    out << "k,lambda_k\n";
    for (std::size_t k = 0; k < lambda.lambda.size(); ++k) {
        out << k << "," << format_double(lambda.lambda[k]) << "\n";
    }
    out << "tail," << format_double(lambda.tail_mass) << "\n";
}

MixingDistribution load_mixing_json(std::istream& in) {
    const nlohmann::json j = parse_json(in, "mixing distribution");
    if (!j.is_object()) {
        throw SchemaError("mixing distribution: expected an object");
    }
    expect_keys(j, {"atoms", "density"}, "mixing distribution");
    if (!j.contains("atoms") && !j.contains("density")) {
        throw SchemaError("mixing distribution: needs 'atoms' or 'density'");
    }
    std::vector<MixingAtom> atoms;
    if (j.contains("atoms")) {
        if (!j.at("atoms").is_array()) {
            throw SchemaError("atoms: expected an array of [y, weight] pairs");
        }
        for (const auto& pair : j.at("atoms")) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
                !pair[1].is_number()) {
                throw SchemaError("atoms: each entry must be [y, weight]");
            }
            atoms.push_back({pair[0].get<double>(), pair[1].get<double>()});
        }
    }
    PiecewiseLinearDensity density;
    if (j.contains("density")) {
        density = density_from_json(j.at("density"), "density");
    }
    try {
        return MixingDistribution(std::move(atoms), std::move(density.grid),
                                  std::move(density.values));
    } catch (const Error& e) {
        std::ostringstream msg;
        msg << "mixing distribution: " << e.what();
        throw SchemaError(msg.str());
    }
}

Family load_family_json(std::istream& in) {
    return family_from_json(parse_json(in, "family"));
}

ExperimentConfig load_config_json(std::istream& in) {
    const nlohmann::json j = parse_json(in, "config");
    if (!j.is_object()) throw SchemaError("config: expected an object");
    expect_keys(j, {"family", "n_grid", "trials", "kmax", "seed",
                    "epsilon_grid"},
                "config");
    if (!j.contains("family")) throw SchemaError("family: required");
    if (!j.contains("n_grid")) throw SchemaError("n_grid: required");
    if (!j.contains("trials")) throw SchemaError("trials: required");

    if (!j.at("n_grid").is_array()) {
        throw SchemaError("n_grid: expected an array of integers");
    }
    std::vector<std::uint64_t> n_grid;
    for (const auto& v : j.at("n_grid")) {
        if (!v.is_number_integer() || (v.is_number_integer() && v.get<std::int64_t>() < 0)) {
            throw SchemaError("n_grid: entries must be nonnegative integers");
        }
        n_grid.push_back(v.get<std::uint64_t>());
    }
    if (!j.at("trials").is_number_integer() ||
        j.at("trials").get<std::int64_t>() < 0) {
        throw SchemaError("trials: expected a nonnegative integer");
    }
    const auto trials = j.at("trials").get<std::uint64_t>();
    if (trials > std::numeric_limits<std::uint32_t>::max()) {
        throw SchemaError("trials: too large");
    }

    ExperimentConfig config{family_from_json(j.at("family")),
                            std::move(n_grid),
                            static_cast<std::uint32_t>(trials),
                            /*kmax=*/50,
                            /*seed=*/0,
                            /*epsilon_grid=*/{}};
    if (j.contains("kmax")) {
        if (!j.at("kmax").is_number_integer() ||
            j.at("kmax").get<std::int64_t>() < 0) {
            throw SchemaError("kmax: expected a nonnegative integer");
        }
        config.kmax = j.at("kmax").get<std::uint64_t>();
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_integer()) {
            throw SchemaError("seed: expected an integer");
        }
        config.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("epsilon_grid")) {
        config.epsilon_grid =
            require_number_array(j.at("epsilon_grid"), "epsilon_grid");
    }
    validate(config);
    return config;
}

void write_report_json(std::ostream& out, const ExperimentReport& report) {
    ordered_json j;
    j["metadata"]["rng"] = report.rng_id;
    j["metadata"]["config"] = {
        {"family", family_to_json(report.config.family)},
        {"n_grid", report.config.n_grid},
        {"trials", report.config.trials},
        {"kmax", report.config.kmax},
        {"seed", report.config.seed},
        {"epsilon_grid", report.config.epsilon_grid},
    };
    j["lambda"] = {{"kmax", report.lambda.kmax()},
                   {"values", report.lambda.lambda},
                   {"tail_mass", report.lambda.tail_mass}};

    ordered_json per_n = ordered_json::array();
    for (const PerNSummary& row : report.per_n) {
        auto stats = [](const SummaryStats& s) {
            return ordered_json{
                {"mean", s.mean}, {"median", s.median}, {"max", s.max}};
        };
        per_n.push_back({{"n", row.n},
                         {"trials", row.trials},
                         {"l1_xi_lambda", stats(row.l1_xi_lambda)},
                         {"l1_zeta_lambda", stats(row.l1_zeta_lambda)},
                         {"l1_zeta_xi", stats(row.l1_zeta_xi)}});
    }
    j["per_n"] = std::move(per_n);

    ordered_json deviations = ordered_json::array();
    for (const DeviationCell& cell : report.deviations) {
        deviations.push_back({{"n", cell.n},
                              {"k", cell.k},
                              {"epsilon", cell.epsilon},
                              {"frac_xi", cell.frac_xi},
                              {"frac_zeta", cell.frac_zeta},
                              {"bound_xi", cell.bound_xi},
                              {"bound_zeta", cell.bound_zeta},
                              {"noise_xi", cell.noise_xi},
                              {"noise_zeta", cell.noise_zeta}});
    }
    j["deviations"] = std::move(deviations);

    out << j.dump(2) << "\n";
}

void write_report_csv(std::ostream& out, const ExperimentReport& report) {
    out << "n,trials"
           ",l1_xi_lambda_mean,l1_xi_lambda_median,l1_xi_lambda_max"
           ",l1_zeta_lambda_mean,l1_zeta_lambda_median,l1_zeta_lambda_max"
           ",l1_zeta_xi_mean,l1_zeta_xi_median,l1_zeta_xi_max\n";
    for (const PerNSummary& row : report.per_n) {
        out << row.n << "," << row.trials;
        for (const SummaryStats* s :
             {&row.l1_xi_lambda, &row.l1_zeta_lambda, &row.l1_zeta_xi}) {
            out << "," << format_double(s->mean) << ","
                << format_double(s->median) << "," << format_double(s->max);
        }
        out << "\n";
    }
}

}  // namespace goodturing
