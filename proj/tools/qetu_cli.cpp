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
 * qetu: one subcommand per study. CSV/JSON to --out (stdout by default) and a
 * manifest next to file outputs. Exit codes: 2 invalid parameters, 3 solver
 * failure.
 */
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "third_party/CLI11.hpp"

#include "io.hpp"

#include <qetu/cheb/gaussian.hpp>
#include <qetu/cheb/step.hpp>
#include <qetu/cheb/window.hpp>
#include <qetu/gsprep/adiabatic.hpp>
#include <qetu/gsprep/budget.hpp>
#include <qetu/gsprep/prepare.hpp>
#include <qetu/gsprep/scan.hpp>
#include <qetu/models/bounds.hpp>
#include <qetu/models/rescale.hpp>
#include <qetu/models/sho.hpp>
#include <qetu/models/spectrum.hpp>
#include <qetu/models/u1.hpp>
#include <qetu/qsp/phases.hpp>
#include <qetu/wavepacket/prepare.hpp>

namespace {

using namespace qetu;
using io::json;

/// Nested objects map to subcommand sections: {"gsprep": {"tau": 1.5}}.
class ConfigJson : public CLI::Config {
  public:
    std::string to_config(const CLI::App *app, bool default_also, bool, std::string) const override {
        json j = json::object();
        for (const CLI::Option *opt : app->get_options({})) {
            if (opt->get_lnames().empty() || !opt->get_configurable()) {
                continue;
            }
            const auto name = opt->get_lnames()[0];
            if (opt->count() > 0) {
                j[name] = opt->as<std::string>();
            } else if (default_also && !opt->get_default_str().empty()) {
                j[name] = opt->get_default_str();
            }
        }
        return j.dump(2);
    }

    std::vector<CLI::ConfigItem> from_config(std::istream &input) const override {
        json j;
        try {
            j = json::parse(input);
        } catch (const json::exception &e) {
            throw CLI::ConversionError(std::string("config: ") + e.what());
        }
        std::vector<CLI::ConfigItem> items;
        walk(j, {}, items);
        return items;
    }

  private:
    static std::string scalar(const json &v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
    }
    static void walk(const json &j, const std::vector<std::string> &parents,
                     std::vector<CLI::ConfigItem> &items) {
        for (const auto &[key, val] : j.items()) {
            if (val.is_object()) {
                // CLI11 needs explicit section open/close markers.
                items.push_back({parents, key, {}});
                auto p = parents;
                p.push_back(key);
                walk(val, p, items);
                items.push_back({p, "--", {}});
                continue;
            }
            CLI::ConfigItem it{parents, key, {}};
            if (val.is_array()) {
                for (const auto &v : val) {
                    it.inputs.push_back(scalar(v));
                }
            } else {
                it.inputs.push_back(scalar(val));
            }
            items.push_back(std::move(it));
        }
    }
};

/// "lo:hi:step", "a,b,c" or a single value.
std::vector<real> parse_reals(const std::string &s, const std::string &what) {
    std::vector<real> out;
    try {
        if (s.find(':') != std::string::npos) {
            std::vector<real> p;
            std::stringstream ss(s);
            std::string tok;
            while (std::getline(ss, tok, ':')) {
                p.push_back(std::stod(tok));
            }
            require(p.size() == 3, what + ": range must be lo:hi:step");
            require(p[2] > 0.0, what + ": step must be positive");
            out = p[1] >= p[0] ? arange_inclusive(p[0], p[1], p[2]) : std::vector<real>{};
        } else {
            std::stringstream ss(s);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (!tok.empty()) {
                    out.push_back(std::stod(tok));
                }
            }
        }
    } catch (const std::invalid_argument &) {
        throw ValidationError(what + ": cannot parse '" + s + "'");
    } catch (const std::out_of_range &) {
        throw ValidationError(what + ": value out of range in '" + s + "'");
    }
    require(!out.empty(), what + ": empty range");
    return out;
}

std::vector<std::size_t> parse_counts(const std::string &s, const std::string &what) {
    std::vector<std::size_t> out;
    for (real v : parse_reals(s, what)) {
        require(v >= 0.0 && std::abs(v - std::round(v)) < 1e-9, what + ": expected non-negative integers");
        out.push_back(static_cast<std::size_t>(std::llround(v)));
    }
    return out;
}

struct Common {
    std::string out = "-";
    std::string manifest;
    std::size_t jobs = 1;
    std::uint64_t seed = 12345;
};

void add_common(CLI::App *sub, Common &c) {
    sub->add_option("-o,--out", c.out, "output path ('-' for stdout)")->capture_default_str();
    sub->add_option("--manifest", c.manifest, "manifest path (default <out>.manifest.json)");
    sub->add_option("-j,--jobs", c.jobs, "parallel tasks")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--seed", c.seed, "seed recorded in the manifest")->capture_default_str();
}

json collect_parameters(const CLI::App *sub) {
    json p = json::object();
    for (const CLI::Option *opt : sub->get_options({})) {
        if (opt->get_lnames().empty()) {
            continue;
        }
        const auto name = opt->get_lnames()[0];
        if (name == "help" || name == "out" || name == "manifest" || name == "jobs") {
            continue;
        }
        if (opt->count() > 0) {
            const auto r = opt->results();
            if (r.size() == 1) {
                p[name] = r[0];
            } else {
                p[name] = r;
            }
        } else {
            p[name] = opt->get_default_str();
        }
    }
    return p;
}

io::RunManifest manifest_for(const std::string &name, const CLI::App *sub) {
    io::RunManifest m;
    m.subcommand = name;
    m.parameters = collect_parameters(sub);
    return m;
}

/// Fills the manifest, writes it next to file outputs.
void finish(io::RunManifest &m, const Common &c, std::chrono::steady_clock::time_point t0) {
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m.seed = c.seed;
    std::string path = c.manifest;
    if (path.empty() && c.out != "-" && !c.out.empty()) {
        path = c.out + ".manifest.json";
    }
    if (c.out != "-" && !c.out.empty()) {
        m.outputs.push_back(c.out);
    }
    if (!path.empty()) {
        io::write_output(path, [&](std::ostream &os) { os << m.to_json().dump(2) << "\n"; });
    }
}

template <class Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn &&fn) {
    jobs = std::max<std::size_t>(1, std::min(jobs, n));
    if (jobs == 1) {
        for (std::size_t k = 0; k < n; ++k) {
            fn(k);
        }
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < jobs; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t k = w; k < n; k += jobs) {
                fn(k);
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
}

std::string str(real v) { return io::format_real(v); }
std::string str(std::size_t v) { return std::to_string(v); }

// ---------------------------------------------------------------------------

struct StepOpts {
    real eta = 0.3;
    real eta_proj = 0.3;
    real mu = 1.3;
    real delta = 0.6;
    real tau = 1.0;
    real c = 0.999;
    std::size_t degree = 22;
    std::size_t samples = 0;
    bool phases = false;
};

void run_solve_step(const StepOpts &o, const Common &c, const CLI::App *sub) {
    const auto t0 = std::chrono::steady_clock::now();
    auto m = manifest_for("solve-step", sub);
    const auto w = cheb::sigma_window(o.eta, o.eta_proj, o.mu, o.delta, o.tau, o.c);
    const auto [poly, rep] = cheb::solve_step_poly(w, o.degree, o.samples);
    json j = {{"window", io::to_json(w)},
              {"tau_max", cheb::tau_max(o.eta, o.mu, o.delta)},
              {"polynomial", io::to_json(poly)},
              {"approx", io::to_json(rep)}};
    if (o.phases) {
        j["phases"] = io::to_json(qsp::solve_phases(poly));
    }
    finish(m, c, t0);
    j["manifest_hash"] = m.hash();
    io::write_output(c.out, [&](std::ostream &os) { os << j.dump(2) << "\n"; });
}

// ---------------------------------------------------------------------------

struct GaussOpts {
    std::size_t nq = 4;
    real sigma_ratio = 0.4;
    real x_max = 1.0;
    real x0 = 0.0;
    real c = 0.999;
    std::string parity = "even";
    std::size_t degree = 8;
    real eta = 0.0;
    real tau = 2.0;
    std::string sample_mode = "eigenvalues_only";
    std::string optimize = "none";
    bool phases = false;
};

void run_solve_gaussian(const GaussOpts &o, const Common &c, const CLI::App *sub) {
    const auto t0 = std::chrono::steady_clock::now();
    auto m = manifest_for("solve-gaussian", sub);
    wavepacket::WavepacketSpec spec;
    spec.n_q = o.nq;
    spec.x_max = o.x_max;
    spec.sigma_x = o.sigma_ratio * o.x_max;
    spec.x0 = o.x0;
    spec.c = o.c;
    const auto parity = parity_from_string(o.parity);
    const auto mode = cheb::sample_mode_from_string(o.sample_mode);
    cheb::EtaTauSearch search;
    search.jobs = c.jobs;
    cheb::GaussianFit fit;
    bool boundary = false;
    if (o.optimize == "none") {
        fit = cheb::solve_gaussian_poly(spec, parity, o.degree, o.eta, o.tau, mode);
    } else if (o.optimize == "eta" || o.optimize == "eta-tau") {
        auto r = cheb::optimize_eta_tau(spec, parity, o.degree,
                                        o.optimize == "eta" ? std::optional<real>(o.tau) : std::nullopt,
                                        mode, search);
        fit = std::move(r.fit);
        boundary = r.on_boundary;
        if (boundary) {
            std::cerr << "warning: best (eta, tau) lies on the search-grid boundary\n";
        }
    } else {
        throw ValidationError("--optimize must be none, eta or eta-tau");
    }
    json j = {{"fit", io::to_json(fit)}, {"search_on_boundary", boundary}};
    if (o.phases) {
        if (parity == Parity::none) {
            throw ValidationError("--phases needs a definite-parity fit");
        }
        j["phases"] = io::to_json(qsp::solve_phases(parity == Parity::even ? fit.even : fit.odd));
    }
    finish(m, c, t0);
    j["manifest_hash"] = m.hash();
    io::write_output(c.out, [&](std::ostream &os) { os << j.dump(2) << "\n"; });
}

// ---------------------------------------------------------------------------

struct ModelOpts {
    std::string model = "sho";
    std::size_t nq = 3;
    std::size_t np = 3;
    real g = 1.0;
    std::string basis = "original";
    std::string w_file;
    std::string model_file;
    std::optional<real> x_max;
};

void add_model_options(CLI::App *sub, ModelOpts &o) {
    sub->add_option("--model", o.model, "sho or u1")->capture_default_str()->check(CLI::IsMember({"sho", "u1"}));
    sub->add_option("--nq", o.nq, "qubits per site")->capture_default_str();
    sub->add_option("--np", o.np, "plaquettes (u1)")->capture_default_str();
    sub->add_option("--g", o.g, "coupling")->capture_default_str();
    sub->add_option("--basis", o.basis, "original or weaved (u1)")->capture_default_str();
    sub->add_option("--w-file", o.w_file, "JSON N_p x N_p orthogonal matrix (u1)");
    sub->add_option("--model-file", o.model_file, "JSON U(1) model {n_p, n_q, g, basis, W?, b_max?}");
    sub->add_option("--x-max", o.x_max, "SHO grid extent (default balances x and p)");
}

models::U1Model u1_from(const ModelOpts &o, std::optional<real> g_override = std::nullopt) {
    if (!o.model_file.empty()) {
        auto j = io::read_json_file(o.model_file);
        if (g_override) {
            j["g"] = *g_override;
        }
        return io::u1_from_json(j);
    }
    std::optional<Eigen::MatrixXd> w;
    if (!o.w_file.empty()) {
        w = io::matrix_from_json(io::read_json_file(o.w_file));
    }
    const auto basis = w ? models::Basis::custom : models::basis_from_string(o.basis);
    return models::u1_model(o.np, o.nq, g_override.value_or(o.g), basis, w);
}

sim::SplitHamiltonian raw_hamiltonian(const ModelOpts &o) {
    if (o.model == "sho") {
        return models::sho_model(o.nq, o.g, o.x_max.value_or(models::default_sho_xmax(o.nq, o.g)));
    }
    return models::u1_split(u1_from(o));
}

struct FilterOpts {
    real eta = 0.05;
    real eta_proj = 0.0;
    std::optional<real> mu;
    std::optional<real> delta;
    std::string gap_preset = "full";
    real c = 0.999;
    std::string mode = "controlled";
    std::string evolver = "exact";
    std::string init = "uniform";
    real g1 = 10.0;
    real total_time = 1.0;
    std::size_t adiabatic_steps = 2;
};

void add_filter_options(CLI::App *sub, FilterOpts &o) {
    sub->add_option("--eta", o.eta, "spectral margin")->capture_default_str();
    sub->add_option("--eta-proj", o.eta_proj, "projection margin")->capture_default_str();
    sub->add_option("--mu", o.mu, "window centre (default midpoint of rescaled E0, E1)");
    sub->add_option("--delta", o.delta, "window width (default from --gap-preset)");
    sub->add_option("--gap-preset", o.gap_preset, "full or 1.5 (gap divided by 1.5)")
        ->capture_default_str()
        ->check(CLI::IsMember({"full", "1.5"}));
    sub->add_option("--c", o.c, "filter ceiling")->capture_default_str();
    sub->add_option("--mode", o.mode, "controlled or control-free")->capture_default_str();
    sub->add_option("--evolver", o.evolver, "exact or trotter")->capture_default_str();
    sub->add_option("--init", o.init, "uniform or adiabatic (u1)")->capture_default_str();
    sub->add_option("--g1", o.g1, "adiabatic start coupling")->capture_default_str();
    sub->add_option("--T", o.total_time, "adiabatic total time")->capture_default_str();
    sub->add_option("--M", o.adiabatic_steps, "adiabatic steps")->capture_default_str();
}

struct Prepared {
    gsprep::GroundStateProblem prob;
    sim::StateVector init;
    real mu = 0.0;
    real delta = 0.0;
};

Prepared prepare_problem(const ModelOpts &mo, const FilterOpts &fo) {
    Prepared p;
    const auto raw = raw_hamiltonian(mo);
    p.prob = gsprep::make_problem(raw, fo.eta,
                                  fo.gap_preset == "1.5" ? models::GapPreset::reduced_1p5
                                                         : models::GapPreset::full);
    p.mu = fo.mu.value_or(p.prob.rescaled.mu);
    p.delta = fo.delta.value_or(p.prob.rescaled.delta);
    if (fo.init == "uniform") {
        p.init = sim::StateVector::uniform(raw.n_qubits());
    } else if (fo.init == "adiabatic") {
        require(mo.model == "u1", "--init adiabatic needs --model u1");
        gsprep::AdiabaticSchedule sched;
        sched.g1 = fo.g1;
        sched.g2 = mo.g;
        sched.total_time = fo.total_time;
        sched.steps = fo.adiabatic_steps;
        const auto target = u1_from(mo);
        const auto [h1, h2] = gsprep::u1_adiabatic_pair(target, fo.g1);
        p.init = gsprep::adiabatic_init(h1, h2, sched);
    } else {
        throw ValidationError("--init must be uniform or adiabatic");
    }
    return p;
}

gsprep::PrepareConfig base_config(const FilterOpts &fo, const Prepared &p) {
    gsprep::PrepareConfig cfg;
    cfg.eta = fo.eta;
    cfg.eta_proj = fo.eta_proj;
    cfg.mu = p.mu;
    cfg.delta = p.delta;
    cfg.c = fo.c;
    cfg.mode = sim::mode_from_string(fo.mode);
    cfg.evolver = gsprep::evolver_from_string(fo.evolver);
    return cfg;
}

json problem_summary(const Prepared &p) {
    const auto &r = p.prob.rescaled;
    return {{"c1", r.c1},   {"c2", r.c2},         {"e0", r.e0},      {"e1", r.e1},
            {"emax", r.emax}, {"mu", p.mu},        {"delta", p.delta},
            {"tau_max", cheb::tau_max(r.eta, p.mu, p.delta)},
            {"gamma", sim::overlap(p.init, p.prob.psi0)}};
}

io::CsvTable scan_table() {
    io::CsvTable t;
    t.columns = {"d", "tau", "dtau", "n_steps", "mode", "error", "success_prob", "epsilon", "cnot", "rot", "status"};
    t.units = {"calls", "1/E", "1/E", "count", "", "1", "1", "1", "gates", "gates", ""};
    return t;
}

void add_scan_row(io::CsvTable &t, const gsprep::ScanRow &r) {
    t.add({str(r.degree), str(r.tau), str(r.dtau), str(r.n_steps), sim::to_string(r.mode),
           r.ok ? str(r.error) : "", r.ok ? str(r.success_prob) : "", r.ok ? str(r.epsilon) : "",
           str(r.gates.cnot), str(r.gates.rotations()), r.ok ? "ok" : r.message});
}

struct GsprepOpts {
    real tau = 1.0;
    std::string tau_scan;
    std::optional<real> dtau;
    std::string steps = "1";
    std::string degree_range;
};

void run_gsprep(const ModelOpts &mo, const FilterOpts &fo, const GsprepOpts &o, const Common &c,
                const CLI::App *sub) {
    const auto t0 = std::chrono::steady_clock::now();
    auto m = manifest_for("gsprep", sub);
    const auto degrees = parse_counts(o.degree_range, "--degree-range");
    for (auto d : degrees) {
        require(d % 2 == 0 && d >= 2, "--degree-range: degrees must be even and at least 2");
    }
    const auto taus = o.tau_scan.empty() ? std::vector<real>{o.tau} : parse_reals(o.tau_scan, "--tau-scan");
    const auto step_list = parse_counts(o.steps, "--steps");
    const auto p = prepare_problem(mo, fo);
    const auto base = base_config(fo, p);

    std::vector<gsprep::PrepareConfig> cfgs;
    for (real tau : taus) {
        std::vector<std::size_t> steps = step_list;
        if (o.dtau) {
            require(*o.dtau > 0.0, "--dtau must be positive");
            const real per_call = base.mode == sim::Mode::controlled ? tau : tau / 2.0;
            steps = {std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(per_call / *o.dtau - 1e-9)))};
        }
        for (std::size_t ns : steps) {
            require(ns >= 1, "--steps must be at least 1");
            for (std::size_t d : degrees) {
                auto cfg = base;
                cfg.tau = tau;
                cfg.n_steps = ns;
                cfg.degree = d;
                cfgs.push_back(cfg);
            }
        }
    }
    const auto rows = gsprep::run_scan(p.prob, p.init, cfgs, c.jobs);
    auto table = scan_table();
    for (const auto &r : rows) {
        add_scan_row(table, r);
    }
    m.summary = problem_summary(p);
    finish(m, c, t0);
    io::write_output(c.out, [&](std::ostream &os) { table.write(os, m.hash()); });
}

// ---------------------------------------------------------------------------

struct ScanDtauOpts {
    std::size_t degree = 20;
    std::string dtau_range = "0.1:1.5:0.1";
    std::size_t n_steps = 1;
    real eps = 1e-3;
    std::size_t degree_max = 200;
};

void run_scan_dtau(const ModelOpts &mo, const FilterOpts &fo, const ScanDtauOpts &o, const Common &c,
                   const CLI::App *sub) {
    const auto t0 = std::chrono::steady_clock::now();
    auto m = manifest_for("scan-dtau", sub);
    const auto dtaus = parse_reals(o.dtau_range, "--dtau-range");
    require(o.degree % 2 == 0 && o.degree >= 2, "--degree must be even and at least 2");
    require(o.n_steps >= 1, "--steps must be at least 1");
    auto fo2 = fo;
    fo2.evolver = "trotter";
    const auto p = prepare_problem(mo, fo2);
    const auto base = base_config(fo2, p);
    const real per_call = base.mode == sim::Mode::controlled ? 1.0 : 0.5;

    struct Row {
        std::string kind;
        real dtau;
        real tau;
        std::size_t d;
        std::size_t n_tot;
        real error;
        std::string status;
    };
    std::vector<Row> fixed_d(dtaus.size());
    std::vector<Row> fixed_eps(dtaus.size());
    parallel_for(dtaus.size(), c.jobs, [&](std::size_t k) {
        auto cfg = base;
        cfg.n_steps = o.n_steps;
        cfg.tau = dtaus[k] * static_cast<real>(o.n_steps) / per_call;
        cfg.degree = o.degree;
        const auto r = gsprep::run_scan(p.prob, p.init, {cfg}, 1)[0];
        fixed_d[k] = {"fixed_d", dtaus[k], cfg.tau, o.degree, o.degree * o.n_steps, r.error,
                      r.ok ? "ok" : r.message};
        Row best{"fixed_eps", dtaus[k], cfg.tau, 0, 0, 0.0, "not reached"};
        for (std::size_t d = 2; d <= o.degree_max; d += 2) {
            cfg.degree = d;
            const auto rr = gsprep::run_scan(p.prob, p.init, {cfg}, 1)[0];
            if (rr.ok && rr.error <= o.eps) {
                best = {"fixed_eps", dtaus[k], cfg.tau, d, d * o.n_steps, rr.error, "ok"};
                break;
            }
        }
        fixed_eps[k] = best;
    });
    io::CsvTable t;
    t.columns = {"kind", "dtau", "tau", "d", "n_tot", "error", "status"};
    t.units = {"", "1/E", "1/E", "calls", "calls", "1", ""};
    for (const auto *rows : {&fixed_d, &fixed_eps}) {
        for (const auto &r : *rows) {
            t.add({r.kind, str(r.dtau), str(r.tau), str(r.d), str(r.n_tot), str(r.error), r.status});
        }
    }
    m.summary = problem_summary(p);
    finish(m, c, t0);
    io::write_output(c.out, [&](std::ostream &os) { t.write(os, m.hash()); });
}

// ---------------------------------------------------------------------------

struct GridOpts {
    std::string np = "3";
    std::string nq = "1,2,3";
    std::string g = "0.2,0.6,1.0,1.4,2.0,5.0,10.0";
    std::string basis = "weaved";
    real eta = 0.05;
};

void run_bounds(const GridOpts &o, const Common &c, const CLI::App *sub) {
    const auto t0 = std::chrono::steady_clock::now();
    auto m = manifest_for("bounds", sub);
    const auto nps = parse_counts(o.np, "--np");
    const auto nqs = parse_counts(o.nq, "--nq");
    const auto gs = parse_reals(o.g, "--g");
    struct Task {
        std::size_t np, nq;
        real g;
    };
    std::vector<Task> tasks;
    for (auto np : nps) {
        for (auto nq : nqs) {
            for (real g : gs) {
                tasks.push_back({np, nq, g});
            }
        }
    }
    std::vector<std::vector<std::string>> rows(tasks.size());
    const auto basis = models::basis_from_string(o.basis);
    parallel_for(tasks.size(), c.jobs, [&](std::size_t k) {
        const auto &t = tasks[k];
        const auto model = models::u1_model(t.np, t.nq, t.g, t.np == 3 ? basis : models::Basis::original);
        const auto low = models::low_spectrum(models::u1_split(model));
        const auto sb = models::emax_upper_bound(model);
        const real d_exact = (low.e1 - low.e0) * (pi - 2.0 * o.eta) / (low.emax - low.e0);
        const real d_low = models::delta_lower_bound(low.e0, low.e1, sb.emax_upper, o.eta);
        rows[k] = {str(t.np), str(t.nq), str(t.g), models::to_string(model.basis), str(low.e0), str(low.e1),
                   str(low.emax), str(sb.emax_upper), str(d_exact), str(d_low), str(d_low / d_exact)};
    });
    io::CsvTable tab;
    tab.columns = {"np", "nq", "g", "basis", "e0", "e1", "emax", "emax_upper", "delta_exact", "delta_lower", "ratio"};
    tab.units = {"", "", "", "", "E", "E", "E", "E", "rad", "rad", "1"};
    for (auto &r : rows) {
        tab.add(std::move(r));
    }
    finish(m, c, t0);
    io::write_output(c.out, [&](std::ostream &os) { tab.write(os, m.hash()); });
}

// ---------------------------------------------------------------------------

struct AdiabaticOpts {
    std::string np = "3,5,7";
    std::string nq = "2";
    std::string g2 = "0.2,0.7,1.2";
    std::string basis = "original";
    real g1 = 10.0;
    real total_time = 1.0;
    std::size_t steps = 2;
};

void run_adiabatic(const AdiabaticOpts &o, const Common &c, const CLI::App *sub) {
    const auto t0 = std::chrono::steady_clock::now();
    auto m = manifest_for("adiabatic", sub);
    const auto nps = parse_counts(o.np, "--np");
    const auto nqs = parse_counts(o.nq, "--nq");
    const auto g2s = parse_reals(o.g2, "--g2");
    const auto basis = models::basis_from_string(o.basis);
    struct Task {
        std::size_t np, nq;
        real g2;
    };
    std::vector<Task> tasks;
    for (auto np : nps) {
        for (auto nq : nqs) {
            for (real g2 : g2s) {
                tasks.push_back({np, nq, g2});
            }
        }
    }
    std::vector<real> gam(tasks.size());
    parallel_for(tasks.size(), c.jobs, [&](std::size_t k) {
        const auto &t = tasks[k];
        const auto target = models::u1_model(t.np, t.nq, t.g2, t.np == 3 ? basis : models::Basis::original);
        const auto [h1, h2] = gsprep::u1_adiabatic_pair(target, o.g1);
        gsprep::AdiabaticSchedule sched;
        sched.g1 = o.g1;
        sched.g2 = t.g2;
        sched.total_time = o.total_time;
        sched.steps = o.steps;
        const auto psi = gsprep::adiabatic_init(h1, h2, sched);
        gam[k] = gsprep::gamma(psi, models::low_spectrum(h2).ground);
    });
    io::CsvTable tab;
    tab.columns = {"np", "nq", "g1", "g2", "T", "M", "gamma", "gamma_np"};
    tab.units = {"", "", "", "", "1/E", "", "1", "1"};
    for (std::size_t k = 0; k < tasks.size(); ++k) {
        tab.add({str(tasks[k].np), str(tasks[k].nq), str(o.g1), str(tasks[k].g2), str(o.total_time),
                 str(o.steps), str(gam[k]), str(gam[k] * static_cast<real>(tasks[k].np))});
    }
    finish(m, c, t0);
    io::write_output(c.out, [&](std::ostream &os) { tab.write(os, m.hash()); });
}

// ---------------------------------------------------------------------------

struct WaveOpts {
    std::string method = "V";
    std::string nq = "4";
    std::string sigma_ratio = "0.4";
    std::string nch_range = "3:8:1";
    real x_max = 1.0;
    real x0 = 0.0;
    real p0 = 0.0;
    real c = 0.999;
};

void run_wavepacket(const WaveOpts &o, const Common &c, const CLI::App *sub) {
    const auto t0 = std::chrono::steady_clock::now();
    auto m = manifest_for("wavepacket", sub);
    std::vector<wavepacket::Method> methods;
    {
        std::stringstream ss(o.method);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            methods.push_back(wavepacket::method_from_string(tok));
        }
    }
    require(!methods.empty(), "--method: empty list");
    const auto nqs = parse_counts(o.nq, "--nq");
    const auto sigmas = parse_reals(o.sigma_ratio, "--sigma-ratio");
    const auto nchs = parse_counts(o.nch_range, "--nch-range");
    struct Task {
        wavepacket::Method method;
        std::size_t nq;
        real sigma;
        std::size_t nch;
    };
    std::vector<Task> tasks;
    for (auto meth : methods) {
        for (auto nq : nqs) {
            for (real s : sigmas) {
                for (auto nch : nchs) {
                    require(nch >= 1, "--nch-range: n_ch must be at least 1");
                    tasks.push_back({meth, nq, s, nch});
                }
            }
        }
    }
    std::vector<std::vector<std::string>> rows(tasks.size());
    parallel_for(tasks.size(), c.jobs, [&](std::size_t k) {
        const auto &t = tasks[k];
        wavepacket::WavepacketSpec spec;
        spec.n_q = t.nq;
        spec.x_max = o.x_max;
        spec.sigma_x = t.sigma * o.x_max;
        spec.x0 = o.x0;
        spec.p0 = o.p0;
        spec.c = o.c;
        const std::size_t d = wavepacket::degree_for_nch(t.method, t.nch);
        std::vector<std::string> row = {wavepacket::to_string(t.method), str(t.nq), str(t.sigma), str(t.nch), str(d)};
        try {
            const auto r = wavepacket::prepare_gaussian(spec, t.method, d);
            const auto g = r.gates.value_or(wavepacket::GateCount{});
            row.insert(row.end(), {str(r.error), str(1.0 / r.gamma), r.gates ? str(g.cnot) : "",
                                   r.gates ? str(g.rotations()) : "", str(r.fit.eta), str(r.fit.tau),
                                   str(r.fit.report.epsilon), r.search_on_boundary ? "boundary" : "ok"});
        } catch (const std::exception &e) {
            row.insert(row.end(), {"", "", "", "", "", "", "", e.what()});
        }
        rows[k] = std::move(row);
    });
    io::CsvTable tab;
    tab.columns = {"method", "n_q", "sigma_ratio", "n_ch", "d", "error", "gamma_inv", "cnot", "rot", "eta", "tau", "epsilon", "status"};
    tab.units = {"", "", "1", "", "calls", "1", "1", "gates", "gates", "rad", "1", "1", ""};
    for (auto &r : rows) {
        tab.add(std::move(r));
    }
    finish(m, c, t0);
    io::write_output(c.out, [&](std::ostream &os) { tab.write(os, m.hash()); });
}

// ---------------------------------------------------------------------------

struct GateOpts {
    std::string nq_range = "1:10:1";
    std::size_t degree = 4;
    bool with_shifts = false;
};

void run_gatecount(const GateOpts &o, const Common &c, const CLI::App *sub) {
    const auto t0 = std::chrono::steady_clock::now();
    auto m = manifest_for("gatecount", sub);
    const auto nqs = parse_counts(o.nq_range, "--nq-range");
    io::CsvTable tab;
    tab.columns = {"n_q", "qetu_cnot", "qetu_rot", "exact_cnot", "exact_rot"};
    tab.units = {"", "gates", "gates", "gates", "gates"};
    for (auto n : nqs) {
        require(n >= 1, "--nq-range: n_q must be at least 1");
        const auto q = wavepacket::gate_count_qetu(n, o.degree, o.with_shifts);
        const auto e = wavepacket::gate_count_exact_prep(n);
        tab.add({str(n), str(q.cnot), str(q.rotations()), str(e.cnot), str(e.rotations())});
    }
    m.summary = {{"cnot_crossover", wavepacket::gate_crossover(o.degree, wavepacket::CountKind::cnot, o.with_shifts)},
                 {"rotation_crossover",
                  wavepacket::gate_crossover(o.degree, wavepacket::CountKind::rotations, o.with_shifts)}};
    std::cerr << "cnot crossover n_q = " << m.summary["cnot_crossover"].get<std::size_t>()
              << ", rotation crossover n_q = " << m.summary["rotation_crossover"].get<std::size_t>() << "\n";
    finish(m, c, t0);
    io::write_output(c.out, [&](std::ostream &os) { tab.write(os, m.hash()); });
}

// ---------------------------------------------------------------------------

struct DtauOpts {
    real eps = 1e-3;
    real a = 1.0;
    real b = 1.0;
    real c = 0.1;
    real p = 1.0;
    real delta = 1.0;
    std::optional<real> tau_max;
};

void run_optimal_dtau(const DtauOpts &o, const Common &c, const CLI::App *sub) {
    const auto t0 = std::chrono::steady_clock::now();
    auto m = manifest_for("optimal-dtau", sub);
    const gsprep::ErrorModel em{o.a, o.b, o.c, o.p};
    const auto r = gsprep::optimal_dtau(em, o.eps, o.delta);
    json j = {{"dtau_star_numeric", r.dtau_numeric},
              {"dtau_star_approx", r.dtau_approx},
              {"relative_gap", r.relative_gap},
              {"relative_gap_percent", 100.0 * r.relative_gap},
              {"root_residual", r.residual},
              {"second_derivative", r.second_derivative},
              {"n_tot", r.n_tot},
              {"n_tot_real", r.n_tot_real},
              {"boundary", r.boundary},
              {"note", r.note}};
    if (o.tau_max && !r.boundary) {
        const auto ts = gsprep::choose_tau_steps(r.dtau_numeric, *o.tau_max);
        j["tau"] = ts.tau;
        j["n_steps"] = ts.n_steps;
    }
    finish(m, c, t0);
    j["manifest_hash"] = m.hash();
    io::write_output(c.out, [&](std::ostream &os) { os << j.dump(2) << "\n"; });
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"QETU state-preparation toolkit"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<ConfigJson>());
    app.set_config("--config", "", "JSON config file; flags win on conflict");
    app.set_version_flag("--version", io::toolkit_version);

    Common common;

    StepOpts step;
    auto *s_step = app.add_subcommand("solve-step", "step-function minimax fit (+ phases)");
    s_step->add_option("--eta", step.eta)->capture_default_str();
    s_step->add_option("--eta-proj", step.eta_proj)->capture_default_str();
    s_step->add_option("--mu", step.mu)->capture_default_str();
    s_step->add_option("--delta", step.delta)->capture_default_str();
    s_step->add_option("--tau", step.tau)->capture_default_str();
    s_step->add_option("--c", step.c)->capture_default_str();
    s_step->add_option("-d,--degree", step.degree)->capture_default_str();
    s_step->add_option("--samples", step.samples, "grid size M (0: max(2001, 40 d))")->capture_default_str();
    s_step->add_flag("--phases", step.phases, "solve QSP phases");
    add_common(s_step, common);

    GaussOpts gauss;
    auto *s_gauss = app.add_subcommand("solve-gaussian", "Gaussian filter fit (+ phases)");
    s_gauss->add_option("--nq", gauss.nq)->capture_default_str();
    s_gauss->add_option("--sigma-ratio", gauss.sigma_ratio, "sigma_x / x_max")->capture_default_str();
    s_gauss->add_option("--x-max", gauss.x_max)->capture_default_str();
    s_gauss->add_option("--x0", gauss.x0)->capture_default_str();
    s_gauss->add_option("--c", gauss.c)->capture_default_str();
    s_gauss->add_option("--parity", gauss.parity, "even, odd or none")->capture_default_str();
    s_gauss->add_option("-d,--degree", gauss.degree)->capture_default_str();
    s_gauss->add_option("--eta", gauss.eta)->capture_default_str();
    s_gauss->add_option("--tau", gauss.tau)->capture_default_str();
    s_gauss->add_option("--sample-mode", gauss.sample_mode, "all_x or eigenvalues_only")->capture_default_str();
    s_gauss->add_option("--optimize", gauss.optimize, "none, eta or eta-tau")->capture_default_str();
    s_gauss->add_flag("--phases", gauss.phases, "solve QSP phases");
    add_common(s_gauss, common);

    ModelOpts gmodel;
    FilterOpts gfilter;
    GsprepOpts gs;
    auto *s_gs = app.add_subcommand("gsprep", "ground-state preparation scans");
    add_model_options(s_gs, gmodel);
    add_filter_options(s_gs, gfilter);
    s_gs->add_option("--tau", gs.tau)->capture_default_str();
    s_gs->add_option("--tau-scan", gs.tau_scan, "lo:hi:step");
    s_gs->add_option("--dtau", gs.dtau, "Trotter step; sets N_steps per call");
    s_gs->add_option("--steps", gs.steps, "N_steps list")->capture_default_str();
    s_gs->add_option("--degree-range", gs.degree_range, "lo:hi:step or list")->required();
    add_common(s_gs, common);

    ModelOpts smodel;
    FilterOpts sfilter;
    ScanDtauOpts sd;
    auto *s_sd = app.add_subcommand("scan-dtau", "error vs dtau at fixed d; N_tot vs dtau at fixed eps");
    add_model_options(s_sd, smodel);
    add_filter_options(s_sd, sfilter);
    s_sd->add_option("-d,--degree", sd.degree)->capture_default_str();
    s_sd->add_option("--dtau-range", sd.dtau_range)->capture_default_str();
    s_sd->add_option("--steps", sd.n_steps)->capture_default_str();
    s_sd->add_option("--eps", sd.eps)->capture_default_str();
    s_sd->add_option("--degree-max", sd.degree_max)->capture_default_str();
    add_common(s_sd, common);

    GridOpts grid;
    auto *s_b = app.add_subcommand("bounds", "E_max upper bound and gap lower bound");
    s_b->add_option("--np", grid.np)->capture_default_str();
    s_b->add_option("--nq", grid.nq)->capture_default_str();
    s_b->add_option("--g", grid.g)->capture_default_str();
    s_b->add_option("--basis", grid.basis, "basis for N_p = 3")->capture_default_str();
    s_b->add_option("--eta", grid.eta)->capture_default_str();
    add_common(s_b, common);

    AdiabaticOpts ad;
    auto *s_ad = app.add_subcommand("adiabatic", "adiabatic initial-state overlap");
    s_ad->add_option("--np", ad.np)->capture_default_str();
    s_ad->add_option("--nq", ad.nq)->capture_default_str();
    s_ad->add_option("--g2", ad.g2)->capture_default_str();
    s_ad->add_option("--basis", ad.basis, "basis for N_p = 3")->capture_default_str();
    s_ad->add_option("--g1", ad.g1)->capture_default_str();
    s_ad->add_option("--T", ad.total_time)->capture_default_str();
    s_ad->add_option("--M", ad.steps)->capture_default_str();
    add_common(s_ad, common);

    WaveOpts wave;
    auto *s_w = app.add_subcommand("wavepacket", "Gaussian wavepacket preparation");
    s_w->add_option("--method", wave.method, "comma list of I..V")->capture_default_str();
    s_w->add_option("--nq", wave.nq)->capture_default_str();
    s_w->add_option("--sigma-ratio", wave.sigma_ratio)->capture_default_str();
    s_w->add_option("--nch-range", wave.nch_range)->capture_default_str();
    s_w->add_option("--x-max", wave.x_max)->capture_default_str();
    s_w->add_option("--x0", wave.x0)->capture_default_str();
    s_w->add_option("--p0", wave.p0)->capture_default_str();
    s_w->add_option("--c", wave.c)->capture_default_str();
    add_common(s_w, common);

    GateOpts gate;
    auto *s_gc = app.add_subcommand("gatecount", "QETU vs multiplexed amplitude encoding");
    s_gc->add_option("--nq-range", gate.nq_range)->capture_default_str();
    s_gc->add_option("-d,--degree", gate.degree)->capture_default_str();
    s_gc->add_flag("--with-shifts", gate.with_shifts);
    add_common(s_gc, common);

    DtauOpts dt;
    auto *s_dt = app.add_subcommand("optimal-dtau", "optimal Trotter step of the error budget");
    s_dt->add_option("--eps", dt.eps)->capture_default_str();
    s_dt->add_option("--a", dt.a)->capture_default_str();
    s_dt->add_option("--b", dt.b)->capture_default_str();
    s_dt->add_option("--c", dt.c)->capture_default_str();
    s_dt->add_option("--p", dt.p)->capture_default_str();
    s_dt->add_option("--delta", dt.delta)->capture_default_str();
    s_dt->add_option("--tau-max", dt.tau_max);
    add_common(s_dt, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (s_step->parsed()) {
            run_solve_step(step, common, s_step);
        } else if (s_gauss->parsed()) {
            run_solve_gaussian(gauss, common, s_gauss);
        } else if (s_gs->parsed()) {
            run_gsprep(gmodel, gfilter, gs, common, s_gs);
        } else if (s_sd->parsed()) {
            run_scan_dtau(smodel, sfilter, sd, common, s_sd);
        } else if (s_b->parsed()) {
            run_bounds(grid, common, s_b);
        } else if (s_ad->parsed()) {
            run_adiabatic(ad, common, s_ad);
        } else if (s_w->parsed()) {
            run_wavepacket(wave, common, s_w);
        } else if (s_gc->parsed()) {
            run_gatecount(gate, common, s_gc);
        } else if (s_dt->parsed()) {
            run_optimal_dtau(dt, common, s_dt);
        }
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceError &e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
