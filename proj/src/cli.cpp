// Copyright 2026 The qshell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qshell/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "qshell/dynamics.hpp"
#include "qshell/error.hpp"
#include "qshell/experiments.hpp"
#include "qshell/measurement.hpp"
#include "qshell/phase_space.hpp"

namespace qshell::cli {

namespace {

using nlohmann::ordered_json;

constexpr std::string_view kToolName = "qshell";
constexpr std::string_view kVersion = QSHELL_VERSION;

std::string num(double x) {
    return fmt::format("{:.17g}", x);
}

EighOptions eigh_options(const Scenario &s) {
    EighOptions options;
    options.cluster_tol = s.tolerances.cluster;
    return options;
}

ordered_json meta_json(Command command, const Scenario &s) {
    return ordered_json{
        {"tool", kToolName},
        {"version", kVersion},
        {"command", command_name(command)},
        {"seed", s.seed},
        {"rng", CounterRng::kAlgorithm},
        {"hbar", s.hbar},
        {"dimension", s.dimension},
        {"trials", s.trials},
    };
}

std::string meta_csv(Command command, const Scenario &s) {
    return fmt::format("# tool={} version={} command={} seed={} rng={} hbar={} dimension={} trials={}\n", kToolName,
                       kVersion, command_name(command), s.seed, CounterRng::kAlgorithm, num(s.hbar), s.dimension,
                       s.trials);
}

// Rows of already formatted cells; rendered as CSV or as an array of objects.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string render_table(Command command, const Scenario &s, const Table &table, Format format) {
    if (format == Format::Csv) {
        std::string out = meta_csv(command, s);
        auto join = [](const std::vector<std::string> &cells) {
            std::string line;
            for (std::size_t k = 0; k < cells.size(); ++k) {
                line += (k ? "," : "") + cells[k];
            }
            return line + "\n";
        };
        out += join(table.header);
        for (const auto &row : table.rows) {
            out += join(row);
        }
        return out;
    }
    ordered_json doc;
    doc["meta"] = meta_json(command, s);
    ordered_json rows = ordered_json::array();
    for (const auto &row : table.rows) {
        ordered_json obj;
        for (std::size_t k = 0; k < row.size(); ++k) {
            // Cells are numeric except for the few textual ones (name, pass).
            const std::string &cell = row[k];
            if (cell == "true" || cell == "false") {
                obj[table.header[k]] = cell == "true";
            } else {
                try {
                    std::size_t used = 0;
                    double v = std::stod(cell, &used);
                    if (used == cell.size()) {
                        obj[table.header[k]] = ordered_json::parse(cell);
                        (void)v;
                        continue;
                    }
                } catch (const std::exception &) {
                }
                obj[table.header[k]] = cell;
            }
        }
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

Table spectrum_table(const Scenario &s) {
    const EigenSystem spec = spectrum(scenario_observable(s), eigh_options(s));
    Table t;
    t.header = {"index", "eigenvalue", "cluster", "cluster_value", "multiplicity"};
    for (std::size_t n = 1; n <= s.dimension; ++n) {
        t.header.push_back(fmt::format("v{}_re", n));
        t.header.push_back(fmt::format("v{}_im", n));
    }
    for (std::size_t k = 0; k < spec.dimension(); ++k) {
        const std::size_t c = spec.cluster_of(k);
        std::vector<std::string> row = {std::to_string(k + 1), num(spec.values[static_cast<Eigen::Index>(k)]),
                                        std::to_string(c + 1), num(spec.cluster_value(c)),
                                        std::to_string(spec.clusters[c].size())};
        const CVector v = spec.vector(k);
        for (Eigen::Index n = 0; n < v.size(); ++n) {
            row.push_back(num(v[n].real()));
            row.push_back(num(v[n].imag()));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table probs_table(const Scenario &s) {
    const Measurement m(scenario_observable(s), eigh_options(s));
    const ProbabilityDistribution dist = m.distribution(scenario_state(s));
    Table t;
    t.header = {"cluster", "value", "multiplicity", "probability"};
    for (std::size_t c = 0; c < dist.outcomes.size(); ++c) {
        const Outcome &o = dist.outcomes[c];
        t.rows.push_back({std::to_string(c + 1), num(o.value), std::to_string(o.multiplicity), num(o.probability)});
    }
    return t;
}

Table mean_table(const Scenario &s) {
    const HermitianObservable a = scenario_observable(s);
    const StateVector psi = scenario_state(s);
    const double born = mean_value(spectrum(a, eigh_options(s)), psi);
    const double direct = evaluate_observable(a, psi) / psi.hbar();
    Table t;
    t.header = {"born_mean", "observable_over_hbar", "difference"};
    t.rows.push_back({num(born), num(direct), num(born - direct)});
    return t;
}

std::vector<double> evolve_times(const Scenario &s) {
    std::vector<double> times;
    if (s.evolve_samples == 1) {
        times.push_back(0.0);
        return times;
    }
    for (std::int64_t k = 0; k < s.evolve_samples; ++k) {
        times.push_back(s.evolve_time * static_cast<double>(k) / static_cast<double>(s.evolve_samples - 1));
    }
    return times;
}

Table evolve_table(const Scenario &s) {
    const HermitianObservable a = scenario_observable(s);
    const StateVector psi0 = scenario_state(s);
    const OscillatorParams params = scenario_params(s);
    Table t;
    t.header = {"t"};
    for (std::size_t n = 1; n <= s.dimension; ++n) {
        t.header.push_back(fmt::format("psi{}_re", n));
        t.header.push_back(fmt::format("psi{}_im", n));
    }
    for (std::size_t n = 1; n <= s.dimension; ++n) {
        t.header.push_back(fmt::format("q{}", n));
        t.header.push_back(fmt::format("p{}", n));
    }
    t.header.push_back("shell_residual");
    t.header.push_back("observable");
    for (double time : evolve_times(s)) {
        const StateVector psi = flow(a, psi0, time);
        const PhaseSpacePoint pt = to_real(psi.components(), params);
        std::vector<std::string> row = {num(time)};
        for (std::size_t n = 0; n < s.dimension; ++n) {
            row.push_back(num(psi[n].real()));
            row.push_back(num(psi[n].imag()));
        }
        for (Eigen::Index n = 0; n < pt.q.size(); ++n) {
            row.push_back(num(pt.q[n]));
            row.push_back(num(pt.p[n]));
        }
        row.push_back(num(shell_residual(pt, params)));
        row.push_back(num(evaluate_observable(a, psi)));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table sample_table(const Scenario &s, unsigned threads) {
    const Measurement m(scenario_observable(s), eigh_options(s));
    const FrequencyTable table = run_trials(m, scenario_state(s), s.trials, s.seed, threads);
    Table t;
    t.header = {"cluster", "value", "count", "frequency", "probability"};
    for (std::size_t c = 0; c < table.counts.size(); ++c) {
        t.rows.push_back({std::to_string(c + 1), num(table.reference.outcomes[c].value),
                          std::to_string(table.counts[c]), num(table.frequencies[c]),
                          num(table.reference.outcomes[c].probability)});
    }
    return t;
}

std::vector<VerificationReport> verify_reports(const Scenario &s, unsigned threads) {
    const HermitianObservable a = scenario_observable(s);
    const StateVector psi = scenario_state(s);
    const Measurement m(a, eigh_options(s));
    std::vector<VerificationReport> reports;

    reports.push_back(verify_qm2(m, psi, std::max<std::int64_t>(s.trials, 100), s.seed, threads));

    const FrequencyTable table = run_trials(m, psi, s.trials, s.seed, threads);
    try {
        reports.push_back(chi_square(table));
    } catch (const Error &e) {
        if (e.code() != ErrorCode::InsufficientTrials) {
            throw;
        }
        // A single supported outcome leaves nothing to test.
        VerificationReport skipped;
        skipped.name = "chi_square_single_category";
        skipped.pass = true;
        skipped.dimension = s.dimension;
        skipped.seed = s.seed;
        skipped.trials = s.trials;
        reports.push_back(skipped);
    }

    reports.push_back(courant_fischer_check(a, s.hbar, s.seed));
    VerificationReport norm = norm_conservation_check(a, psi, evolve_times(s));
    norm.seed = s.seed;
    reports.push_back(norm);
    return reports;
}

Emission render_verify(const Scenario &s, Format format, unsigned threads) {
    const std::vector<VerificationReport> reports = verify_reports(s, threads);
    bool all_pass = true;
    for (const auto &r : reports) {
        all_pass = all_pass && r.pass;
    }
    Emission e;
    e.failed = !all_pass;
    if (format == Format::Csv) {
        Table t;
        t.header = {"name", "statistic", "threshold", "pass", "dimension", "seed", "trials"};
        for (const auto &r : reports) {
            t.rows.push_back({r.name, num(r.statistic), num(r.threshold), r.pass ? "true" : "false",
                              std::to_string(r.dimension), std::to_string(r.seed), std::to_string(r.trials)});
        }
        e.content = render_table(Command::Verify, s, t, format);
        e.filename = "verify.csv";
        return e;
    }
    ordered_json doc;
    doc["meta"] = meta_json(Command::Verify, s);
    ordered_json list = ordered_json::array();
    for (const auto &r : reports) {
        list.push_back(ordered_json{{"name", r.name},
                                    {"statistic", r.statistic},
                                    {"threshold", r.threshold},
                                    {"pass", r.pass},
                                    {"dimension", r.dimension},
                                    {"seed", r.seed},
                                    {"trials", r.trials}});
    }
    doc["reports"] = std::move(list);
    doc["pass"] = all_pass;
    e.content = doc.dump(2) + "\n";
    e.filename = "verify.json";
    return e;
}

void write_diagnostic(std::ostream &err, std::string_view code, std::string_view message) {
    ordered_json diag{{"error", code}, {"message", message}};
    err << diag.dump() << "\n";
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
    if (name == "spectrum") return Command::Spectrum;
    if (name == "probs") return Command::Probs;
    if (name == "mean") return Command::Mean;
    if (name == "evolve") return Command::Evolve;
    if (name == "sample") return Command::Sample;
    if (name == "verify") return Command::Verify;
    return std::nullopt;
}

std::string_view command_name(Command command) {
    switch (command) {
        case Command::Spectrum:
            return "spectrum";
        case Command::Probs:
            return "probs";
        case Command::Mean:
            return "mean";
        case Command::Evolve:
            return "evolve";
        case Command::Sample:
            return "sample";
        case Command::Verify:
            return "verify";
    }
    return "unknown";
}

Format default_format(Command command) {
    return command == Command::Verify ? Format::Structured : Format::Csv;
}

Emission render(Command command, const Scenario &s, Format format, unsigned threads) {
    if (command == Command::Verify) {
        return render_verify(s, format, threads);
    }
    Table table;
    switch (command) {
        case Command::Spectrum:
            table = spectrum_table(s);
            break;
        case Command::Probs:
            table = probs_table(s);
            break;
        case Command::Mean:
            table = mean_table(s);
            break;
        case Command::Evolve:
            table = evolve_table(s);
            break;
        case Command::Sample:
            table = sample_table(s, threads);
            break;
        case Command::Verify:
            break;
    }
    Emission e;
    e.content = render_table(command, s, table, format);
    e.filename = std::string(command_name(command)) + (format == Format::Csv ? ".csv" : ".json");
    return e;
}

int dispatch(Command command, Scenario scenario, const Options &options, std::ostream &out, std::ostream &err) {
    try {
        if (options.seed) {
            scenario.seed = *options.seed;
        }
        if (options.trials) {
            scenario.trials = *options.trials;
        }
        for (const auto &assignment : options.tol_overrides) {
            apply_tolerance_override(scenario.tolerances, assignment);
        }
        validate_scenario(scenario);

        const Format format = options.format.value_or(default_format(command));
        const Emission emission = render(command, scenario, format, options.threads);
        if (options.out_dir) {
            const std::filesystem::path dir(*options.out_dir);
            std::filesystem::create_directories(dir);
            std::ofstream file(dir / emission.filename, std::ios::binary);
            if (!file) {
                write_diagnostic(err, "IOError", "cannot write " + (dir / emission.filename).string());
                return kExitInputError;
            }
            file << emission.content;
        } else {
            out << emission.content;
        }
        return emission.failed ? kExitVerificationFailed : kExitOk;
    } catch (const Error &e) {
        write_diagnostic(err, error_code_name(e.code()), e.what());
        return kExitInputError;
    } catch (const std::filesystem::filesystem_error &e) {
        write_diagnostic(err, "IOError", e.what());
        return kExitInputError;
    }
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Phase-space oscillator model: spectra, Born probabilities, flows and measurement statistics",
                 std::string(kToolName)};
    app.require_subcommand(1);

    Options options;
    std::string format_text;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> trials;
    std::optional<std::string> out_dir;

    const std::vector<std::pair<Command, std::string>> commands = {
        {Command::Spectrum, "Eigenvalues, eigenvectors and degeneracy clusters of the observable"},
        {Command::Probs, "Born probabilities of each outcome in the scenario state"},
        {Command::Mean, "Mean of the measured quantity against <psi|A|psi> / hbar"},
        {Command::Evolve, "Flow of the state generated by the observable"},
        {Command::Sample, "Monte Carlo outcome frequencies"},
        {Command::Verify, "Full verification suite; exit 1 if any check fails"},
    };
    for (const auto &[command, description] : commands) {
        CLI::App *sub = app.add_subcommand(std::string(command_name(command)), description);
        sub->add_option("--scenario", options.scenario_path, "Scenario file (JSON)")->required();
        sub->add_option("--seed", seed, "Override the scenario seed");
        sub->add_option("--trials", trials, "Override the scenario trial count");
        sub->add_option("--out", out_dir, "Write the output file into this directory");
        sub->add_option("--format", format_text, "Output format")->check(CLI::IsMember({"csv", "structured"}));
        sub->add_option("--tol", options.tol_overrides, "Tolerance override NAME=VALUE (repeatable)");
        sub->add_option("--threads", options.threads, "Monte Carlo worker threads (0 = all cores)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        std::ostringstream cli_out;
        std::ostringstream cli_err;
        int status = app.exit(e, cli_out, cli_err);
        out << cli_out.str();
        if (status != 0) {
            write_diagnostic(err, "UsageError", e.what());
            return kExitInputError;
        }
        return kExitOk;
    }

    options.seed = seed;
    options.trials = trials;
    options.out_dir = out_dir;
    if (!format_text.empty()) {
        options.format = format_text == "csv" ? Format::Csv : Format::Structured;
    }

    Command command = Command::Spectrum;
    for (const auto &[candidate, description] : commands) {
        if (app.got_subcommand(std::string(command_name(candidate)))) {
            command = candidate;
        }
    }

    std::ifstream file(options.scenario_path, std::ios::binary);
    if (!file) {
        write_diagnostic(err, "IOError", "cannot open scenario file " + options.scenario_path);
        return kExitInputError;
    }
    std::stringstream buffer;
    buffer << file.rdbuf();
    Scenario scenario;
    try {
        scenario = parse_scenario(buffer.str());
    } catch (const Error &e) {
        write_diagnostic(err, error_code_name(e.code()), e.what());
        return kExitInputError;
    }
    return dispatch(command, std::move(scenario), options, out, err);
}

}  // namespace qshell::cli
