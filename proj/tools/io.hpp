// Copyright 2026 The qetu-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * JSON views of library objects, U(1) model files, CSV output and run manifests.
 */
#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "third_party/json.hpp"

#include <qetu/cheb/gaussian.hpp>
#include <qetu/cheb/step.hpp>
#include <qetu/models/u1.hpp>
#include <qetu/qsp/phases.hpp>
#include <qetu/sim/circuit.hpp>

namespace qetu::io {

using json = nlohmann::ordered_json;

inline constexpr const char *toolkit_version = "1.0.0";

inline json to_json(const cheb::ChebyshevPoly &p) {
    return {{"parity", to_string(p.parity)},
            {"degree", p.degree()},
            {"n_ch", p.n_ch()},
            {"coeffs", p.coeffs}};
}

inline cheb::ChebyshevPoly poly_from_json(const json &j) {
    try {
        cheb::ChebyshevPoly p{parity_from_string(j.at("parity").get<std::string>()),
                              j.at("coeffs").get<std::vector<real>>()};
        if (j.contains("degree")) {
            require(j["degree"].get<std::size_t>() == p.degree(),
                    "polynomial JSON: degree does not match coefficient count");
        }
        return p;
    } catch (const json::exception &e) {
        throw ValidationError(std::string("polynomial JSON: ") + e.what());
    }
}

inline json to_json(const cheb::ApproxReport &r) {
    json j = {{"epsilon", r.epsilon}, {"samples_used", r.samples_used}};
    for (const auto &[k, v] : r.regions) {
        j["regions"][k] = v;
    }
    return j;
}

inline json to_json(const cheb::SigmaWindow &w) {
    return {{"eta", w.eta},           {"eta_proj", w.eta_proj},   {"mu", w.mu},
            {"delta", w.delta},       {"tau", w.tau},             {"c", w.c},
            {"sigma_min", w.sigma_min}, {"sigma_minus", w.sigma_minus},
            {"sigma_plus", w.sigma_plus}, {"sigma_max", w.sigma_max}};
}

inline json to_json(const qsp::PhaseSequence &ph) {
    return {{"reduced", ph.reduced},
            {"w_convention", ph.w_convention},
            {"functional_residual", ph.functional_residual},
            {"max_residual", ph.max_residual},
            {"iterations", ph.iterations}};
}

inline json to_json(const cheb::GaussianFit &f) {
    return {{"parity", to_string(f.parity)},
            {"eta", f.eta},
            {"tau", f.tau},
            {"even", to_json(f.even)},
            {"odd", to_json(f.odd)},
            {"report", to_json(f.report)},
            {"grid_residual", f.grid_residual}};
}

inline json to_json(const sim::GateTally &g) {
    return {{"cnot", g.cnot}, {"rz", g.rz}, {"rx", g.rx}, {"other", g.other}};
}

inline json to_json(const sim::Circuit &c) {
    json ops = json::array();
    for (const auto &op : c.ops) {
        ops.push_back({{"kind", op.kind}, {"qubits", op.qubits}, {"params", op.params}, {"pauli", op.pauli}});
    }
    return {{"n_qubits", c.n_qubits}, {"ops", ops}, {"gates", to_json(sim::count_gates(c))}};
}

inline json matrix_to_json(const Eigen::MatrixXd &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::vector<real> r(static_cast<std::size_t>(m.cols()));
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            r[static_cast<std::size_t>(k)] = m(i, k);
        }
        rows.push_back(r);
    }
    return rows;
}

inline Eigen::MatrixXd matrix_from_json(const json &j) {
    require(j.is_array() && !j.empty(), "matrix JSON: expected a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    const auto m = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXd out(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto &row = j[static_cast<std::size_t>(i)];
        require(row.is_array() && static_cast<Eigen::Index>(row.size()) == m,
                "matrix JSON: ragged rows");
        for (Eigen::Index k = 0; k < m; ++k) {
            out(i, k) = row[static_cast<std::size_t>(k)].get<real>();
        }
    }
    return out;
}

inline json to_json(const models::U1Model &m) {
    std::vector<real> bmax(m.b_max.data(), m.b_max.data() + m.b_max.size());
    return {{"n_p", m.n_p},
            {"n_q", m.n_q},
            {"g", m.g},
            {"basis", models::to_string(m.basis)},
            {"W", matrix_to_json(m.w)},
            {"b_max", bmax}};
}

/// {"n_p", "n_q", "g", "basis", optional "W", optional "b_max"}; validated by u1_model.
inline models::U1Model u1_from_json(const json &j) {
    try {
        std::optional<Eigen::MatrixXd> w;
        if (j.contains("W")) {
            w = matrix_from_json(j["W"]);
        }
        std::optional<Eigen::VectorXd> bmax;
        if (j.contains("b_max")) {
            const auto v = j["b_max"].get<std::vector<real>>();
            bmax = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
        }
        const auto basis = w ? models::Basis::custom
                             : models::basis_from_string(j.value("basis", std::string("original")));
        return models::u1_model(j.at("n_p").get<std::size_t>(), j.at("n_q").get<std::size_t>(),
                                j.at("g").get<real>(), basis, w, bmax);
    } catch (const json::exception &e) {
        throw ValidationError(std::string("model JSON: ") + e.what());
    }
}

inline json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw ValidationError("'" + path + "': " + e.what());
    }
}

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a_hex(const std::string &s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Everything that determines the output. Wall time and output paths stay
/// out of the hash so identical runs hash identically.
struct RunManifest {
    std::string subcommand;
    json parameters = json::object();
    std::uint64_t seed = 0;
    std::string version = toolkit_version;
    std::vector<std::string> outputs;
    double wall_seconds = 0.0;
    json summary = json::object();

    [[nodiscard]] std::string hash() const {
        const json key = {{"subcommand", subcommand}, {"parameters", parameters}, {"seed", seed},
                          {"version", version}};
        return fnv1a_hex(key.dump());
    }
    [[nodiscard]] json to_json() const {
        return {{"subcommand", subcommand}, {"parameters", parameters}, {"seed", seed},
                {"version", version},       {"hash", hash()},            {"outputs", outputs},
                {"wall_seconds", wall_seconds}, {"summary", summary}};
    }
};

inline std::string format_real(real v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// RFC 4180 quoting when needed.
inline std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + "\"";
}

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::string> units;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row) {
        require(row.size() == columns.size(), "CsvTable: row width does not match header");
        rows.push_back(std::move(row));
    }

    /// Two comment lines (manifest hash, units) then the header and rows.
    void write(std::ostream &os, const std::string &manifest_hash) const {
        os << "# qetu-toolkit " << toolkit_version << " manifest " << manifest_hash << "\n";
        os << "# units:";
        for (std::size_t k = 0; k < columns.size(); ++k) {
            os << (k == 0 ? " " : ", ") << columns[k] << "="
               << (k < units.size() && !units[k].empty() ? units[k] : "1");
        }
        os << "\n";
        for (std::size_t k = 0; k < columns.size(); ++k) {
            os << (k ? "," : "") << csv_field(columns[k]);
        }
        os << "\n";
        for (const auto &r : rows) {
            for (std::size_t k = 0; k < r.size(); ++k) {
                os << (k ? "," : "") << csv_field(r[k]);
            }
            os << "\n";
        }
    }
};

/// "-" writes to stdout.
template <class Fn>
void write_output(const std::string &path, Fn &&fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot write '" + path + "'");
    }
    fn(out);
}

} // namespace qetu::io
