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

#include "qshell/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "json.hpp"
#include "qshell/error.hpp"

namespace qshell {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string &field, const std::string &message) {
    fail(ErrorCode::ParseError, "field '" + field + "': " + message);
}

[[noreturn]] void invalid(const std::string &message) {
    fail(ErrorCode::ValidationError, message);
}

void check_keys(const json &object, const std::string &where, const std::set<std::string> &allowed) {
    for (const auto &item : object.items()) {
        if (!allowed.count(item.key())) {
            parse_fail(where.empty() ? item.key() : where + "." + item.key(), "unknown field");
        }
    }
}

double read_double(const json &node, const std::string &field) {
    if (!node.is_number()) {
        parse_fail(field, "expected a number, got " + std::string(node.type_name()));
    }
    double value = node.get<double>();
    if (!std::isfinite(value)) {
        parse_fail(field, "number is not finite");
    }
    return value;
}

std::int64_t read_int(const json &node, const std::string &field) {
    if (!node.is_number_integer()) {
        parse_fail(field, "expected an integer, got " + std::string(node.type_name()));
    }
    return node.get<std::int64_t>();
}

std::vector<double> read_vector(const json &node, const std::string &field) {
    if (!node.is_array()) {
        parse_fail(field, "expected an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t k = 0; k < node.size(); ++k) {
        out.push_back(read_double(node[k], field + "[" + std::to_string(k) + "]"));
    }
    return out;
}

std::vector<std::vector<double>> read_matrix(const json &node, const std::string &field) {
    if (!node.is_array()) {
        parse_fail(field, "expected an array of rows");
    }
    std::vector<std::vector<double>> out;
    for (std::size_t r = 0; r < node.size(); ++r) {
        out.push_back(read_vector(node[r], field + "[" + std::to_string(r) + "]"));
    }
    return out;
}

std::string line_context(std::string_view text, std::size_t byte) {
    std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + std::min(byte, text.size()), '\n'));
    return "line " + std::to_string(line);
}

void require_positive(double value, const char *name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        invalid(std::string(name) + " must be finite and > 0");
    }
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        fail(ErrorCode::ParseError, line_context(text, e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) {
        parse_fail("<root>", "expected an object");
    }
    check_keys(doc, "",
               {"dimension", "hbar", "mass", "frequency", "observable", "state", "normalize", "seed", "trials",
                "tolerances", "evolve"});

    Scenario s;
    if (!doc.contains("dimension")) {
        parse_fail("dimension", "missing required field");
    }
    std::int64_t d = read_int(doc["dimension"], "dimension");
    if (d < 1) {
        invalid("dimension must be >= 1");
    }
    s.dimension = static_cast<std::size_t>(d);
    if (doc.contains("hbar")) {
        s.hbar = read_double(doc["hbar"], "hbar");
    }
    if (doc.contains("mass")) {
        s.mass = read_double(doc["mass"], "mass");
    }
    if (doc.contains("frequency")) {
        s.frequency = read_double(doc["frequency"], "frequency");
    }

    if (!doc.contains("observable") || !doc["observable"].is_object()) {
        parse_fail("observable", "missing or not an object with 're'/'im' matrices");
    }
    const json &obs = doc["observable"];
    check_keys(obs, "observable", {"re", "im"});
    if (!obs.contains("re")) {
        parse_fail("observable.re", "missing required field");
    }
    s.observable_re = read_matrix(obs["re"], "observable.re");
    if (obs.contains("im")) {
        s.observable_im = read_matrix(obs["im"], "observable.im");
    } else {
        s.observable_im.assign(s.observable_re.size(), std::vector<double>(s.dimension, 0.0));
    }

    if (!doc.contains("state") || !doc["state"].is_object()) {
        parse_fail("state", "missing or not an object with 're'/'im' vectors");
    }
    const json &st = doc["state"];
    check_keys(st, "state", {"re", "im"});
    if (!st.contains("re")) {
        parse_fail("state.re", "missing required field");
    }
    s.state_re = read_vector(st["re"], "state.re");
    if (st.contains("im")) {
        s.state_im = read_vector(st["im"], "state.im");
    } else {
        s.state_im.assign(s.state_re.size(), 0.0);
    }

    if (doc.contains("normalize")) {
        if (!doc["normalize"].is_boolean()) {
            parse_fail("normalize", "expected true or false");
        }
        s.normalize = doc["normalize"].get<bool>();
    }
    if (doc.contains("seed")) {
        const json &seed = doc["seed"];
        if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
            parse_fail("seed", "expected a non-negative integer");
        }
        s.seed = seed.get<std::uint64_t>();
    }
    if (doc.contains("trials")) {
        s.trials = read_int(doc["trials"], "trials");
    }
    if (doc.contains("tolerances")) {
        const json &t = doc["tolerances"];
        if (!t.is_object()) {
            parse_fail("tolerances", "expected an object");
        }
        check_keys(t, "tolerances", {"shell", "herm", "zero", "cluster"});
        if (t.contains("shell")) s.tolerances.shell = read_double(t["shell"], "tolerances.shell");
        if (t.contains("herm")) s.tolerances.herm = read_double(t["herm"], "tolerances.herm");
        if (t.contains("zero")) s.tolerances.zero = read_double(t["zero"], "tolerances.zero");
        if (t.contains("cluster")) s.tolerances.cluster = read_double(t["cluster"], "tolerances.cluster");
    }
    if (doc.contains("evolve")) {
        const json &e = doc["evolve"];
        if (!e.is_object()) {
            parse_fail("evolve", "expected an object");
        }
        check_keys(e, "evolve", {"time", "samples"});
        if (e.contains("time")) s.evolve_time = read_double(e["time"], "evolve.time");
        if (e.contains("samples")) s.evolve_samples = read_int(e["samples"], "evolve.samples");
    }

    validate_scenario(s);
    return s;
}

void validate_scenario(const Scenario &s) {
    if (s.dimension < 1) {
        invalid("dimension must be >= 1");
    }
    require_positive(s.hbar, "hbar");
    require_positive(s.mass, "mass");
    require_positive(s.frequency, "frequency");
    if (s.trials < 1) {
        invalid("trials must be >= 1");
    }
    if (s.evolve_samples < 1) {
        invalid("evolve.samples must be >= 1");
    }
    if (!std::isfinite(s.evolve_time)) {
        invalid("evolve.time must be finite");
    }
    require_positive(s.tolerances.shell, "tolerances.shell");
    require_positive(s.tolerances.herm, "tolerances.herm");
    require_positive(s.tolerances.zero, "tolerances.zero");
    require_positive(s.tolerances.cluster, "tolerances.cluster");

    auto check_matrix = [&](const std::vector<std::vector<double>> &m, const char *name) {
        if (m.size() != s.dimension) {
            invalid(std::string(name) + " must have " + std::to_string(s.dimension) + " rows");
        }
        for (const auto &row : m) {
            if (row.size() != s.dimension) {
                invalid(std::string(name) + " must have " + std::to_string(s.dimension) + " columns in every row");
            }
        }
    };
    check_matrix(s.observable_re, "observable.re");
    check_matrix(s.observable_im, "observable.im");
    if (s.state_re.size() != s.dimension || s.state_im.size() != s.dimension) {
        invalid("state.re and state.im must have " + std::to_string(s.dimension) + " entries");
    }

    try {
        scenario_observable(s);
    } catch (const Error &e) {
        if (e.code() == ErrorCode::NotHermitian) {
            invalid("observable is not Hermitian (re must be symmetric, im antisymmetric): " + std::string(e.what()));
        }
        throw;
    }
    try {
        scenario_state(s);
    } catch (const Error &e) {
        if (e.code() == ErrorCode::OffShell || e.code() == ErrorCode::ZeroVector) {
            invalid(std::string("state is not usable: ") + e.what() +
                    (s.normalize ? "" : " (set \"normalize\": true to project it onto the shell)"));
        }
        throw;
    }
}

std::string serialize_scenario(const Scenario &s) {
    json doc;
    doc["dimension"] = s.dimension;
    doc["hbar"] = s.hbar;
    doc["mass"] = s.mass;
    doc["frequency"] = s.frequency;
    doc["observable"] = {{"re", s.observable_re}, {"im", s.observable_im}};
    doc["state"] = {{"re", s.state_re}, {"im", s.state_im}};
    doc["normalize"] = s.normalize;
    doc["seed"] = s.seed;
    doc["trials"] = s.trials;
    doc["tolerances"] = {{"shell", s.tolerances.shell},
                         {"herm", s.tolerances.herm},
                         {"zero", s.tolerances.zero},
                         {"cluster", s.tolerances.cluster}};
    doc["evolve"] = {{"time", s.evolve_time}, {"samples", s.evolve_samples}};
    return doc.dump(2) + "\n";
}

HermitianObservable scenario_observable(const Scenario &s) {
    const auto d = static_cast<Eigen::Index>(s.dimension);
    CMatrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            m(r, c) = Complex(s.observable_re[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                              s.observable_im[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
        }
    }
    return HermitianObservable(std::move(m), s.tolerances.herm);
}

StateVector scenario_state(const Scenario &s) {
    const auto d = static_cast<Eigen::Index>(s.dimension);
    CVector v(d);
    for (Eigen::Index n = 0; n < d; ++n) {
        v[n] = Complex(s.state_re[static_cast<std::size_t>(n)], s.state_im[static_cast<std::size_t>(n)]);
    }
    if (s.normalize) {
        return project_to_shell(v, s.hbar, s.tolerances.zero);
    }
    return make_state(std::move(v), s.hbar, s.tolerances.shell);
}

OscillatorParams scenario_params(const Scenario &s) {
    return OscillatorParams::make(s.dimension, s.mass, s.frequency, s.hbar);
}

void apply_tolerance_override(Tolerances &tolerances, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        fail(ErrorCode::InvalidArgument, "--tol expects NAME=VALUE, got '" + std::string(assignment) + "'");
    }
    std::string name(assignment.substr(0, eq));
    if (name.rfind("tol_", 0) == 0) {
        name = name.substr(4);
    }
    const std::string value_text(assignment.substr(eq + 1));
    double value;
    try {
        std::size_t used = 0;
        value = std::stod(value_text, &used);
        if (used != value_text.size()) {
            throw std::invalid_argument("trailing characters");
        }
    } catch (const std::exception &) {
        fail(ErrorCode::InvalidArgument, "--tol " + name + ": '" + value_text + "' is not a number");
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
        fail(ErrorCode::InvalidArgument, "--tol " + name + " must be finite and > 0");
    }
    if (name == "shell") {
        tolerances.shell = value;
    } else if (name == "herm") {
        tolerances.herm = value;
    } else if (name == "zero") {
        tolerances.zero = value;
    } else if (name == "cluster") {
        tolerances.cluster = value;
    } else {
        fail(ErrorCode::InvalidArgument, "--tol: unknown tolerance '" + name + "'");
    }
}

}  // namespace qshell
