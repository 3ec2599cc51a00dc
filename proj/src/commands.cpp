// Copyright 2026 The uqsd Authors
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

#include "uqsd/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "uqsd/cavity.hpp"
#include "uqsd/errors.hpp"
#include "uqsd/montecarlo.hpp"
#include "uqsd/optimizer.hpp"
#include "uqsd/povm.hpp"
#include "uqsd/report.hpp"

namespace uqsd::cli {

namespace {

using report::json;

constexpr const char *kDefaultMList = "0,1,2,3,4,5,10,20,50";

// ---------------------------------------------------------------------------
// Parameter selection shared by verify, kraus and simulate.

struct ParamFlags {
    unsigned m = 0;
    double kappa = 1.0;
    double theta = 0.0;
    std::string alpha = "1";
    std::string beta;
    double perturb_theta = 0.0;
    bool always_discrimination = false;  // simulate has no general mode

    CLI::Option *m_opt = nullptr;
    CLI::Option *theta_opt = nullptr;
    CLI::Option *alpha_opt = nullptr;
    CLI::Option *beta_opt = nullptr;
    CLI::Option *perturb_opt = nullptr;
};

void add_param_flags(CLI::App *sub, ParamFlags &f, bool with_general = true) {
    f.m_opt = sub->add_option("--m", f.m, "Timing index; selects the discrimination parameters");
    sub->add_option("--kappa", f.kappa, "Coupling ratio g2/g1")->capture_default_str();
    if (with_general) {
        f.theta_opt = sub->add_option("--theta", f.theta, "Interaction phase g1*t");
        f.alpha_opt =
            sub->add_option("--alpha", f.alpha, "Ramsey amplitude alpha, e.g. 0.6 or 0.6+0.8i");
        f.beta_opt =
            sub->add_option("--beta", f.beta, "Ramsey amplitude beta (default sqrt(1-|alpha|^2))");
        f.theta_opt->excludes(f.m_opt);
        f.alpha_opt->excludes(f.m_opt);
        f.beta_opt->excludes(f.m_opt);
    }
    f.perturb_opt = sub->add_option("--perturb-theta", f.perturb_theta,
                                    "Shift theta after the parameters are built");
}

bool discrimination_mode(const ParamFlags &f) {
    return f.always_discrimination || f.m_opt->count() > 0;
}

SystemParams resolve_params(const ParamFlags &f) {
    SystemParams p;
    if (discrimination_mode(f)) {
        p = discrimination_params(f.m, f.kappa);
    } else {
        p.kappa = f.kappa;
        p.theta = f.theta;
        p.alpha = report::parse_complex(f.alpha);
        if (f.beta_opt != nullptr && f.beta_opt->count() > 0) {
            p.beta = report::parse_complex(f.beta);
        } else {
            p.beta = std::sqrt(std::max(0.0, 1.0 - std::norm(p.alpha)));
        }
    }
    if (f.perturb_opt->count() > 0 && f.perturb_theta != 0.0) {
        p.theta += f.perturb_theta;
        if (p.m) {
            // Keep conditions (alpha, beta) = (cos, i sin) of the shifted phase;
            // only the quantization is broken.
            p.alpha = std::cos(p.theta);
            p.beta = Complex(0.0, std::sin(p.theta));
            p.m.reset();
        }
    }
    p.validate();
    return p;
}

json param_echo(const ParamFlags &f) {
    json j;
    if (discrimination_mode(f)) {
        j["m"] = f.m;
    } else {
        j["theta"] = f.theta;
        j["alpha"] = f.alpha;
        if (f.beta_opt != nullptr && f.beta_opt->count() > 0) j["beta"] = f.beta;
    }
    j["kappa"] = f.kappa;
    if (f.perturb_opt->count() > 0) j["perturb_theta"] = f.perturb_theta;
    return j;
}

// ---------------------------------------------------------------------------
// Output

void write_file(const std::string &path, const std::string &content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw report::ParseError("cannot open output file: " + path);
    os << content;
    if (!os) throw report::ParseError("failed writing output file: " + path);
}

/// CSV goes to stdout or to `output` plus a manifest sidecar.
void emit_csv(const std::string &output, const std::string &csv,
              const report::RunManifest &manifest, std::ostream &out) {
    if (output.empty()) {
        out << csv;
        return;
    }
    write_file(output, csv);
    write_file(report::manifest_path(output), report::to_json(manifest).dump(2) + "\n");
}

/// JSON reports embed their manifest.
void emit_json(const std::string &output, const json &doc, std::ostream &out) {
    const std::string text = doc.dump(2) + "\n";
    if (output.empty()) {
        out << text;
    } else {
        write_file(output, text);
    }
}

// ---------------------------------------------------------------------------
// verify

struct Check {
    std::string name;
    bool pass = true;
    double value = 0.0;
    double tolerance = 0.0;

    void fold(double v, bool ok) {
        value = std::max(value, v);
        pass = pass && ok;
    }
};

struct CheckSet {
    Check unitarity{"unitarity", true, 0.0, tol::kUnitarity};
    Check completeness{"completeness", true, 0.0, tol::kCompleteness};
    Check hermiticity{"hermiticity", true, 0.0, tol::kHermiticity};
    Check psd{"psd", true, 0.0, tol::kPsd};  // value: largest negative-eigenvalue magnitude
    Check analytic{"analytic_vs_exponential", true, 0.0, tol::kAnalyticColumns};
    Check unambiguity{"unambiguity", true, 0.0, tol::kUnambiguity};

    std::vector<const Check *> all() const {
        return {&unitarity, &completeness, &hermiticity, &psd, &analytic, &unambiguity};
    }
};

void run_checks(const SystemParams &p, CheckSet &checks) {
    const OperatorMatrix u = protocol_unitary(p);
    const double unitarity = max_norm_diff(u.adjoint() * u, OperatorMatrix::identity(kJointDim));
    checks.unitarity.fold(unitarity, unitarity <= tol::kUnitarity);

    const KrausSet kraus = kraus_blocks(u);
    const PovmSet povm = povm_from_kraus(kraus);
    const double completeness =
        std::max(kraus.completeness_residual(), povm.completeness_residual());
    checks.completeness.fold(completeness, completeness <= tol::kCompleteness);

    for (AtomLevel nu : kAtomLevels) {
        const auto &e = povm[nu];
        const double herm = max_norm_diff(e, e.adjoint());
        checks.hermiticity.fold(herm, herm <= tol::kHermiticity);
        if (herm <= tol::kHermiticity) {
            const double neg = std::max(0.0, -min_eigenvalue(e));
            checks.psd.fold(neg, neg <= tol::kPsd);
        } else {
            checks.psd.fold(0.0, false);
        }
    }

    const auto cols = analytic_columns(p);
    double analytic = 0.0;
    for (std::size_t n = 0; n < kFockDim; ++n) {
        analytic = std::max(
            analytic, max_norm_diff(cols[n], u.column(joint_index(AtomLevel::a, FockIndex(n)))));
    }
    checks.analytic.fold(analytic, analytic <= tol::kAnalyticColumns);

    const Ensemble ens = Ensemble::standard();
    const double wrong_c = expectation(povm.e_c, ens.psi1).real();
    const double wrong_b = expectation(povm.e_b, ens.psi2).real();
    const double unambiguity = std::max(std::abs(wrong_c), std::abs(wrong_b));
    checks.unambiguity.fold(unambiguity, unambiguity <= tol::kUnambiguity);
}

struct VerifyFlags {
    ParamFlags params;
    bool all_grid = false;
    bool as_json = false;
    std::string output;
};

int cmd_verify(const VerifyFlags &f, std::ostream &out) {
    CheckSet checks;
    json echo;
    std::size_t points = 0;
    if (f.all_grid) {
        const auto kappas = kappa_grid({0.5, 20.0, 0.5});
        for (unsigned m = 0; m <= 5; ++m) {
            for (double kappa : kappas) {
                run_checks(discrimination_params(m, kappa), checks);
                ++points;
            }
        }
        echo = {{"all_grid", true}, {"m", "0..5"}, {"kappa", "0.5:20:0.5"}};
    } else {
        run_checks(resolve_params(f.params), checks);
        points = 1;
        echo = param_echo(f.params);
    }

    bool all_pass = true;
    json list = json::array();
    for (const Check *c : checks.all()) {
        all_pass = all_pass && c->pass;
        list.push_back({{"name", c->name},
                        {"pass", c->pass},
                        {"value", c->value},
                        {"tolerance", c->tolerance}});
    }

    json doc = {{"manifest", report::to_json(report::make_manifest("verify", echo))},
                {"points", points},
                {"checks", list},
                {"pass", all_pass}};
    if (f.as_json) {
        emit_json(f.output, doc, out);
    } else {
        char line[160];
        for (const Check *c : checks.all()) {
            std::snprintf(line, sizeof line, "%s %-24s max=%.3e tol=%.0e\n",
                          c->pass ? "PASS" : "FAIL", c->name.c_str(), c->value, c->tolerance);
            out << line;
        }
        out << (all_pass ? "verify: all checks passed" : "verify: FAILED") << " (" << points
            << (points == 1 ? " point)\n" : " points)\n");
        if (!f.output.empty()) emit_json(f.output, doc, out);
    }
    return all_pass ? kSuccess : kCheckFailure;
}

// ---------------------------------------------------------------------------
// kraus

struct KrausFlags {
    ParamFlags params;
    int precision = 6;
    bool as_json = false;
    std::string output;
};

int cmd_kraus(const KrausFlags &f, std::ostream &out) {
    const SystemParams p = resolve_params(f.params);
    const KrausSet kraus = extract_kraus(protocol_unitary(p));
    const PovmSet povm = povm_from_kraus(kraus);
    const bool effective = p.m.has_value();

    std::optional<EffectivePovm> eff;
    if (effective) eff = effective_povm(*p.m, p.kappa);

    if (f.as_json) {
        json doc = {
            {"manifest", report::to_json(report::make_manifest("kraus", param_echo(f.params)))},
            {"params", report::to_json(p)},
            {"kraus",
             {{"M_a", report::to_json(kraus.m_a)},
              {"M_b", report::to_json(kraus.m_b)},
              {"M_c", report::to_json(kraus.m_c)}}},
            {"povm",
             {{"E_a", report::to_json(povm.e_a)},
              {"E_b", report::to_json(povm.e_b)},
              {"E_c", report::to_json(povm.e_c)}}}};
        if (eff) {
            doc["effective"] = {{"E_a", report::to_json(eff->povm.e_a)},
                                {"E_b", report::to_json(eff->povm.e_b)},
                                {"E_c", report::to_json(eff->povm.e_c)},
                                {"dropped_weight", eff->dropped_weight}};
        }
        emit_json(f.output, doc, out);
        return kSuccess;
    }

    std::ostringstream os;
    os << "theta = " << report::fixed(p.theta, f.precision)
       << ", kappa = " << report::fixed(p.kappa, f.precision);
    if (p.m) os << ", m = " << *p.m;
    os << "\n\n";
    const char *names[] = {"a", "b", "c"};
    for (AtomLevel nu : kAtomLevels) {
        os << "M_" << names[static_cast<std::size_t>(nu)] << " =\n"
           << report::pretty(kraus[nu], f.precision);
    }
    os << '\n';
    for (AtomLevel nu : kAtomLevels) {
        os << "E_" << names[static_cast<std::size_t>(nu)] << " =\n"
           << report::pretty(povm[nu], f.precision);
    }
    if (eff) {
        os << "\neffective POVM on span{|0>,|1>} (terms with |2> dropped)\n";
        for (AtomLevel nu : kAtomLevels) {
            const auto k = static_cast<std::size_t>(nu);
            os << "E_" << names[k] << " =\n"
               << report::pretty(eff->povm[nu].block(0, 0, 2, 2), f.precision)
               << "  dropped weight " << report::fixed(eff->dropped_weight[k], f.precision) << '\n';
        }
    }
    if (f.output.empty()) {
        out << os.str();
    } else {
        write_file(f.output, os.str());
    }
    return kSuccess;
}

// ---------------------------------------------------------------------------
// table, sweep, baseline

struct TableFlags {
    double q1 = 0.5;
    std::string m_list = kDefaultMList;
    std::string format = "csv";
    std::string output;
};

int cmd_table(const TableFlags &f, std::ostream &out) {
    const auto ms = report::parse_m_list(f.m_list);
    const auto rows = table(f.q1, ms);
    const json echo = {{"q1", f.q1}, {"m_list", f.m_list}, {"format", f.format}};
    const auto manifest = report::make_manifest("table", echo);

    if (f.format == "json") {
        double defect = 0.0;
        json list = json::array();
        for (const auto &r : rows) {
            list.push_back(report::to_json(r));
            defect = std::max(defect, std::abs(r.p_in + r.p_s - 1.0));
        }
        json doc = {{"manifest", report::to_json(manifest)},
                    {"q1", f.q1},
                    {"rows", list},
                    {"max_abs_p_in_plus_p_s_minus_1", defect}};
        emit_json(f.output, doc, out);
    } else {
        std::ostringstream os;
        report::write_table_csv(os, rows);
        emit_csv(f.output, os.str(), manifest, out);
    }
    return kSuccess;
}

struct SweepFlags {
    double q1 = 0.5;
    unsigned m = 0;
    std::string range = "0.1:5:0.01";
    std::string output;
};

int cmd_sweep(const SweepFlags &f, std::ostream &out) {
    const auto curve = sweep(f.m, f.q1, report::parse_kappa_range(f.range));
    const json echo = {{"q1", f.q1},
                       {"m", f.m},
                       {"kappa_range", f.range},
                       {"isa", kernels::to_string(kernels::active_isa())}};
    std::ostringstream os;
    report::write_sweep_csv(os, curve);
    emit_csv(f.output, os.str(), report::make_manifest("sweep", echo), out);
    return kSuccess;
}

struct BaselineFlags {
    double q1 = 0.5;
    std::string m_list = "1,2,3,4,5";
    bool as_json = false;
};

int cmd_baseline(const BaselineFlags &f, std::ostream &out) {
    const double baseline = projective_baseline(f.q1);
    const auto ms = report::parse_m_list(f.m_list);
    const auto rows = table(f.q1, ms);
    const bool bounded = f.q1 == 0.5;

    json list = json::array();
    for (const auto &r : rows) {
        json item = {{"m", r.m},
                     {"kappa", r.kappa_star},
                     {"p_s", r.p_s},
                     {"beats_baseline", r.p_s > baseline}};
        item["bound_gap"] = bounded ? json(bound_gap(f.q1, r)) : json(nullptr);
        list.push_back(std::move(item));
    }
    if (f.as_json) {
        const json echo = {{"q1", f.q1}, {"m_list", f.m_list}};
        json doc = {{"manifest", report::to_json(report::make_manifest("baseline", echo))},
                    {"projective_baseline", baseline},
                    {"reference_bound", bounded ? json(kReferenceBound) : json(nullptr)},
                    {"rows", list}};
        emit_json("", doc, out);
        return kSuccess;
    }
    out << "projective baseline p_s = " << report::fixed(baseline) << '\n';
    if (bounded) out << "reference bound       = " << report::fixed(kReferenceBound, 3) << '\n';
    out << "m,kappa,p_s,beats_baseline,bound_gap\n";
    for (const auto &r : rows) {
        out << r.m << ',' << report::fixed(r.kappa_star) << ',' << report::fixed(r.p_s) << ','
            << (r.p_s > baseline ? "yes" : "no") << ','
            << (bounded ? report::fixed(bound_gap(f.q1, r)) : std::string("n/a")) << '\n';
    }
    return kSuccess;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateFlags {
    ParamFlags params;
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 1;
    double q1 = 0.5;
    std::string output;
};

int cmd_simulate(const SimulateFlags &f, std::ostream &out) {
    TrialConfig cfg;
    cfg.n_trials = f.trials;
    cfg.seed = f.seed;
    cfg.params = resolve_params(f.params);
    cfg.ensemble = Ensemble::standard(f.q1);

    const TrialStats stats = run_trials(cfg);
    const AuditVerdict audit = never_wrong_audit(stats);
    const auto analytic = probabilities(pipeline_povm(cfg.params), cfg.ensemble, cfg.params);

    json echo = param_echo(f.params);
    echo["trials"] = f.trials;
    echo["seed"] = f.seed;
    echo["q1"] = f.q1;
    json doc = {{"manifest", report::to_json(report::make_manifest("simulate", echo))},
                {"params", report::to_json(cfg.params)},
                {"stats", report::to_json(stats)},
                {"analytic", report::to_json(analytic)},
                {"audit", report::to_json(audit)}};
    emit_json(f.output, doc, out);
    return audit.pass ? kSuccess : kCheckFailure;
}

// ---------------------------------------------------------------------------
// Config handling

bool truthy(std::string v) {
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    return v == "1" || v == "true" || v == "yes" || v == "on";
}

/// Removes `--config FILE` / `--config=FILE` from args and splices the file's
/// entries in right after the subcommand token, so explicit flags (which come
/// later and use TakeLast) override them.
std::vector<std::string> splice_config(const std::vector<std::string> &args, CLI::App &app) {
    std::vector<std::string> rest;
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw report::ParseError("--config requires a file");
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (path.empty()) return rest;

    std::ifstream is(path);
    if (!is) throw report::ParseError("cannot read config file: " + path);
    const auto entries = report::parse_config(is);

    auto pos = std::find_if(rest.begin(), rest.end(), [&](const std::string &a) {
        return app.get_subcommand_no_throw(a) != nullptr;
    });
    if (pos == rest.end()) throw report::ParseError("config file given without a subcommand");
    CLI::App *sub = app.get_subcommand(*pos);

    std::vector<std::string> injected;
    for (const auto &[key, value] : entries) {
        const CLI::Option *opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr) throw report::ParseError("unknown config key for " + *pos + ": " + key);
        if (opt->get_expected_min() == 0) {
            if (truthy(value)) injected.push_back("--" + key);
        } else {
            injected.push_back("--" + key);
            injected.push_back(value);
        }
    }
    rest.insert(pos + 1, injected.begin(), injected.end());
    return rest;
}

CLI::App *make_subcommand(CLI::App &app, const char *name, const char *description) {
    CLI::App *sub = app.add_subcommand(name, description);
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    return sub;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"uqsd: unambiguous discrimination of two cavity field states with a ladder atom"};
    app.set_version_flag("--version", UQSD_VERSION);
    std::string config_placeholder;
    app.add_option("--config", config_placeholder,
                   "Flat 'key = value' file mirroring subcommand flags");
    app.require_subcommand(1);

    VerifyFlags verify;
    CLI::App *verify_cmd = make_subcommand(app, "verify", "Run operator and unambiguity checks");
    add_param_flags(verify_cmd, verify.params);
    auto *grid_opt =
        verify_cmd->add_flag("--all-grid", verify.all_grid, "Check m in 0..5 over a kappa grid");
    grid_opt->excludes(verify.params.m_opt)->excludes(verify.params.theta_opt);
    verify_cmd->add_flag("--json", verify.as_json, "Print the JSON report");
    verify_cmd->add_option("--output", verify.output, "Also write the JSON report here");

    KrausFlags kraus;
    CLI::App *kraus_cmd = make_subcommand(app, "kraus", "Print Kraus operators and POVM elements");
    add_param_flags(kraus_cmd, kraus.params);
    kraus_cmd->add_option("--precision", kraus.precision, "Decimals")
        ->check(CLI::Range(0, 17))
        ->capture_default_str();
    kraus_cmd->add_flag("--json", kraus.as_json, "Emit JSON at full precision");
    kraus_cmd->add_option("--output", kraus.output, "Output file");

    TableFlags tbl;
    CLI::App *table_cmd = make_subcommand(app, "table", "Optimized kappa and probabilities per m");
    table_cmd->add_option("--q1", tbl.q1, "Prior of psi1")->capture_default_str();
    table_cmd->add_option("--m-list", tbl.m_list, "Comma-separated timing indices")
        ->capture_default_str();
    table_cmd->add_option("--format", tbl.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    table_cmd->add_option("--output", tbl.output,
                          "Output file (CSV gets a .manifest.json sidecar)");

    SweepFlags swp;
    CLI::App *sweep_cmd = make_subcommand(app, "sweep", "p_s versus kappa for one m");
    sweep_cmd->add_option("--q1", swp.q1, "Prior of psi1")->capture_default_str();
    sweep_cmd->add_option("--m", swp.m, "Timing index")->capture_default_str();
    sweep_cmd->add_option("--kappa-range", swp.range, "lo:hi:step")->capture_default_str();
    sweep_cmd->add_option("--output", swp.output, "Output file (gets a .manifest.json sidecar)");

    SimulateFlags sim;
    CLI::App *sim_cmd = make_subcommand(app, "simulate", "Monte Carlo discrimination experiment");
    sim.params.m = 1;
    sim.params.kappa = 4.5;
    sim.params.always_discrimination = true;
    sim_cmd->add_option("--trials", sim.trials, "Number of trials")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
    sim_cmd->add_option("--q1", sim.q1, "Prior of psi1")->capture_default_str();
    add_param_flags(sim_cmd, sim.params, false);
    sim_cmd->add_option("--output", sim.output, "Output file");

    BaselineFlags base;
    CLI::App *base_cmd =
        make_subcommand(app, "baseline", "Projective baseline and reference bound gap");
    base_cmd->add_option("--q1", base.q1, "Prior of psi1")->capture_default_str();
    base_cmd->add_option("--m-list", base.m_list, "Comma-separated timing indices")
        ->capture_default_str();
    base_cmd->add_flag("--json", base.as_json, "Emit JSON");

    try {
        auto argv = splice_config(args, app);
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    } catch (const report::ParseError &e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (*verify_cmd) return cmd_verify(verify, out);
        if (*kraus_cmd) return cmd_kraus(kraus, out);
        if (*table_cmd) return cmd_table(tbl, out);
        if (*sweep_cmd) return cmd_sweep(swp, out);
        if (*sim_cmd) return cmd_simulate(sim, out);
        if (*base_cmd) return cmd_baseline(base, out);
    } catch (const CompletenessViolation &e) {
        err << "check failed: " << e.kind() << ": " << e.what() << '\n';
        return kCheckFailure;
    } catch (const Error &e) {
        err << "error: " << e.kind() << ": " << e.what() << '\n';
        return kUsageError;
    } catch (const report::ParseError &e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace uqsd::cli
