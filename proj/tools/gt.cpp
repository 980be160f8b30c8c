// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0
//
// gt — Good-Turing estimation command line.
//
// Subcommands:
//   count     tokens -> count-of-counts CSV
//   estimate  tokens or counts CSV -> Good-Turing totals CSV
//   simulate  experiment config JSON -> report JSON + CSV
//   limit     mixing distribution JSON -> Poisson mixture CSV
//
// Exit codes: 0 ok, 1 usage, 2 unreadable input/output, 3 malformed UTF-8,
// 4 inconsistent count table, 5 schema violation, 6 quadrature failure.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "goodturing/errors.hpp"
#include "goodturing/estimator.hpp"
#include "goodturing/harness.hpp"
#include "goodturing/io.hpp"
#include "goodturing/mixture.hpp"
#include "goodturing/sampling.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitUnreadable = 2;
constexpr int kExitUtf8 = 3;
constexpr int kExitCountTable = 4;
constexpr int kExitSchema = 5;
constexpr int kExitQuadrature = 6;

struct InputStream {
    std::istream* stream = nullptr;
    std::ifstream file;
};

// "-" means stdin.
bool open_input(const std::string& path, InputStream& in) {
    if (path.empty() || path == "-") {
        in.stream = &std::cin;
        return true;
    }
    in.file.open(path, std::ios::binary);
    if (!in.file) return false;
    in.stream = &in.file;
    return true;
}

int with_output(const std::string& path, const std::function<void(std::ostream&)>& writer) {
    if (path.empty() || path == "-") {
        writer(std::cout);
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "gt: cannot open output file '" << path << "'\n";
        return kExitUnreadable;
    }
    writer(out);
    out.flush();
    if (!out) {
        std::cerr << "gt: failed writing '" << path << "'\n";
        return kExitUnreadable;
    }
    return 0;
}

std::optional<char> parse_delimiter(const std::string& flag, int& rc) {
    rc = 0;
    if (flag.empty()) return std::nullopt;
    if (flag.size() != 1 || static_cast<unsigned char>(flag[0]) >= 0x80) {
        std::cerr << "gt: --delimiter must be a single ASCII character\n";
        rc = kExitUsage;
        return std::nullopt;
    }
    return flag[0];
}

int cmd_count(const std::string& input, const std::string& output,
              const std::string& delimiter_flag) {
    int rc = 0;
    const std::optional<char> delimiter = parse_delimiter(delimiter_flag, rc);
    if (rc != 0) return rc;

    InputStream in;
    if (!open_input(input, in)) {
        std::cerr << "gt: cannot read input '" << input << "'\n";
        return kExitUnreadable;
    }
    goodturing::FrequencyTable table;
    try {
        table = goodturing::ingest_token_counts(*in.stream, delimiter);
    } catch (const goodturing::Utf8Error& e) {
        std::cerr << "gt: " << e.what() << "\n";
        return kExitUtf8;
    }
    if (table.n == 0) {
        std::cerr << "gt: warning: input contained no tokens\n";
    }
    return with_output(output, [&](std::ostream& out) {
        goodturing::write_counts_csv(out, table);
    });
}

int cmd_estimate(const std::string& input, const std::string& output,
                 const std::string& delimiter_flag, bool per_symbol) {
    int rc = 0;
    const std::optional<char> delimiter = parse_delimiter(delimiter_flag, rc);
    if (rc != 0) return rc;

    InputStream in;
    if (!open_input(input, in)) {
        std::cerr << "gt: cannot read input '" << input << "'\n";
        return kExitUnreadable;
    }

    // Sniff the first chunk: counts CSV or raw tokens.
    char buffer[1 << 16];
    in.stream->read(buffer, sizeof(buffer));
    auto first_size = static_cast<std::size_t>(in.stream->gcount());
    const std::string_view head(buffer, first_size);

    goodturing::FrequencyTable table;
    try {
        if (goodturing::looks_like_counts_csv(head)) {
            std::string text(head);
            while (*in.stream) {
                in.stream->read(buffer, sizeof(buffer));
                text.append(buffer, static_cast<std::size_t>(in.stream->gcount()));
            }
            std::istringstream csv(text);
            table = goodturing::read_counts_csv(csv);
        } else {
            goodturing::TokenCounter counter(delimiter);
            counter.feed(buffer, first_size);
            while (*in.stream) {
                in.stream->read(buffer, sizeof(buffer));
                counter.feed(buffer, static_cast<std::size_t>(in.stream->gcount()));
            }
            counter.finish();
            table = counter.to_frequency_table();
        }
    } catch (const goodturing::Utf8Error& e) {
        std::cerr << "gt: " << e.what() << "\n";
        return kExitUtf8;
    } catch (const goodturing::CountTableError& e) {
        std::cerr << "gt: " << e.what() << "\n";
        return kExitCountTable;
    }

    if (table.n == 0) {
        std::cerr << "gt: warning: empty input, nothing to estimate\n";
        return with_output(output, [&](std::ostream& out) {
            out << "k,zeta_k\n";
        });
    }
    const goodturing::GoodTuringVector zeta = goodturing::good_turing_totals(table);
    return with_output(output, [&](std::ostream& out) {
        goodturing::write_zeta_csv(out, zeta);
        if (per_symbol) {
            out << "\n";
            goodturing::write_per_symbol_csv(out, table);
        }
    });
}

int cmd_simulate(const std::string& config_path, const std::string& out_prefix,
                 unsigned threads) {
    std::ifstream file(config_path, std::ios::binary);
    if (!file) {
        std::cerr << "gt: cannot read config '" << config_path << "'\n";
        return kExitUnreadable;
    }
    try {
        goodturing::ExperimentConfig config = goodturing::load_config_json(file);
        if (const char* env = std::getenv("GT_SEED")) {
            std::string_view sv(env);
            std::uint64_t seed = 0;
            bool negative = !sv.empty() && sv.front() == '-';
            if (negative) sv.remove_prefix(1);
            const auto [ptr, ec] =
                std::from_chars(sv.data(), sv.data() + sv.size(), seed);
            if (ec != std::errc() || ptr != sv.data() + sv.size() || sv.empty()) {
                std::cerr << "gt: GT_SEED must be an integer, got '" << env << "'\n";
                return kExitSchema;
            }
            config.seed = negative ? ~seed + 1 : seed;
        }

        const goodturing::ExperimentReport report =
            goodturing::run_experiment(config, threads);

        const int rc_json = with_output(out_prefix + ".json", [&](std::ostream& out) {
            goodturing::write_report_json(out, report);
        });
        if (rc_json != 0) return rc_json;
        const int rc_csv = with_output(out_prefix + ".csv", [&](std::ostream& out) {
            goodturing::write_report_csv(out, report);
        });
        if (rc_csv != 0) return rc_csv;

        for (const goodturing::PerNSummary& row : report.per_n) {
            std::cout << "n=" << row.n << " trials=" << row.trials
                      << " median_l1_xi_lambda="
                      << goodturing::format_double(row.l1_xi_lambda.median)
                      << " median_l1_zeta_lambda="
                      << goodturing::format_double(row.l1_zeta_lambda.median)
                      << " median_l1_zeta_xi="
                      << goodturing::format_double(row.l1_zeta_xi.median) << "\n";
        }
        return 0;
    } catch (const goodturing::SchemaError& e) {
        std::cerr << "gt: " << e.what() << "\n";
        return kExitSchema;
    } catch (const goodturing::QuadratureError& e) {
        std::cerr << "gt: " << e.what() << "\n";
        return kExitQuadrature;
    }
}

int cmd_limit(const std::string& qspec_path, const std::string& output,
              std::uint64_t kmax) {
    std::ifstream file(qspec_path, std::ios::binary);
    if (!file) {
        std::cerr << "gt: cannot read mixing distribution '" << qspec_path << "'\n";
        return kExitUnreadable;
    }
    try {
        const goodturing::MixingDistribution q = goodturing::load_mixing_json(file);
        const goodturing::PoissonMixtureVector lambda =
            goodturing::poisson_mixture(q, kmax);
        return with_output(output, [&](std::ostream& out) {
            goodturing::write_lambda_csv(out, lambda);
        });
    } catch (const goodturing::SchemaError& e) {
        std::cerr << "gt: " << e.what() << "\n";
        return kExitSchema;
    } catch (const goodturing::QuadratureError& e) {
        std::cerr << "gt: " << e.what() << "\n";
        return kExitQuadrature;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Good-Turing total-probability estimation toolkit"};
    app.require_subcommand(1);

    std::string input = "-";
    std::string output = "-";
    std::string delimiter;
    bool per_symbol = false;
    std::string config_path;
    std::string out_prefix = "report";
    unsigned threads = 0;
    std::string qspec_path;
    std::uint64_t kmax = 50;

    CLI::App* count = app.add_subcommand(
        "count", "Count tokens into a count-of-counts CSV");
    count->add_option("input", input, "Input file ('-' for stdin)");
    count->add_option("--delimiter", delimiter,
                      "Single literal delimiter character (default: any "
                      "whitespace run)");
    count->add_option("-o,--output", output, "Output file ('-' for stdout)");

    CLI::App* estimate = app.add_subcommand(
        "estimate", "Good-Turing totals from tokens or a counts CSV");
    estimate->add_option("input", input, "Input file ('-' for stdin)");
    estimate->add_option("--delimiter", delimiter,
                         "Single literal delimiter character");
    estimate->add_flag("--per-symbol", per_symbol,
                       "Also emit per-symbol probabilities");
    estimate->add_option("-o,--output", output, "Output file ('-' for stdout)");

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Run a Monte Carlo experiment from a JSON config");
    simulate->add_option("config", config_path, "Experiment config JSON")
        ->required();
    simulate->add_option("--out-prefix", out_prefix,
                         "Prefix for <prefix>.json and <prefix>.csv");
    simulate->add_option("--threads", threads,
                         "Worker threads (0 = all cores); the report is "
                         "identical for any value");

    CLI::App* limit = app.add_subcommand(
        "limit", "Poisson mixture of a mixing distribution JSON");
    limit->add_option("qspec", qspec_path, "Mixing distribution JSON")
        ->required();
    limit->add_option("--kmax", kmax, "Largest k to evaluate");
    limit->add_option("-o,--output", output, "Output file ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (count->parsed()) return cmd_count(input, output, delimiter);
        if (estimate->parsed()) {
            return cmd_estimate(input, output, delimiter, per_symbol);
        }
        if (simulate->parsed()) {
            return cmd_simulate(config_path, out_prefix, threads);
        }
        if (limit->parsed()) return cmd_limit(qspec_path, output, kmax);
    } catch (const goodturing::Error& e) {
        std::cerr << "gt: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
