// Copyright 2026 The ctxdim Authors
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

// Command-line front end. Every command prints one JSON object
// {"command", "inputs", "result", "provenance"}; --csv prints tables instead.
// Exit codes: 0 success, 2 unsupported combination, 1 any other error.

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ctxdim/certify.h"
#include "ctxdim/classical.h"
#include "ctxdim/errors.h"
#include "ctxdim/io.h"
#include "ctxdim/noise.h"
#include "ctxdim/optimizer.h"
#include "ctxdim/scenarios.h"

using namespace ctxdim;

namespace {

struct Globals {
    bool csv = false;
    int threads = 1;
    std::uint64_t seed = 0;
};

struct Output {
    Json inputs = Json::object();
    Json result;
    Json provenance = Json::object();
    /// Set when the command produced a table and --csv was requested.
    std::optional<std::string> csv;
};

struct ScenarioArgs {
    std::string name;
    int n = 0;
    std::string file;

    void add(CLI::App *cmd) {
        cmd->add_option("--scenario", name, "Built-in scenario name");
        cmd->add_option("--n", n, "N for chi_n, eta_n and zeta_n");
        cmd->add_option("--scenario-file", file, "Scenario JSON with explicit contexts");
    }
    Scenario build() const {
        if (!file.empty()) {
            return decode_scenario(read_json_file(file));
        }
        if (name.empty()) {
            throw Error(ErrorCode::BadParameter, "--scenario or --scenario-file is required");
        }
        return build_scenario(name, n);
    }
    void echo(Json &inputs) const {
        if (!file.empty()) {
            inputs["scenario_file"] = file;
        } else {
            inputs["scenario"] = name;
        }
        if (n > 0) {
            inputs["n"] = n;
        }
    }
};

Json base_provenance(const char *method) {
    return Json{{"method", method}, {"version", kVersion}};
}

void no_csv(const Globals &g, const char *command) {
    if (g.csv) {
        throw Error(ErrorCode::BadParameter, std::string("--csv is not available for ") + command);
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"ctxdim: dimension witnesses from contextuality inequalities"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--csv", g.csv, "Print tabular results as CSV");
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1, 256));
    app.add_option("--seed", g.seed, "Master seed");

    std::string command;
    std::function<Output()> run;

    // evaluate
    ScenarioArgs ev_sc;
    std::string ev_obs;
    std::string ev_state;
    auto *ev = app.add_subcommand("evaluate", "Evaluate a scenario on given observables and state");
    ev_sc.add(ev);
    ev->add_option("--observables", ev_obs, "JSON map of label to operator")->required();
    ev->add_option("--state", ev_state, "JSON density operator or state vector (default: maximally mixed)");
    ev->callback([&] {
        command = "evaluate";
        run = [&] {
            no_csv(g, "evaluate");
            Output out;
            ev_sc.echo(out.inputs);
            out.inputs["observables"] = ev_obs;
            out.inputs["state"] = ev_state.empty() ? Json(nullptr) : Json(ev_state);
            Scenario sc = ev_sc.build();
            ObservableAssignment obs = decode_assignment(read_json_file(ev_obs));
            for (const auto &l : sc.labels) {
                if (!obs.count(l)) {
                    throw Error(ErrorCode::MissingLabel, "no observable for label '" + l + "'");
                }
            }
            int d = obs.at(sc.labels[0]).dim();
            QuantumState state =
                ev_state.empty() ? QuantumState::maximally_mixed(d) : decode_state(read_json_file(ev_state));
            double value = evaluate(sc, obs, state);
            Mat t = sc.direction_sign() * scenario_operator(sc, obs);
            Eigen::SelfAdjointEigenSolver<Mat> es(t);
            Json kinds = Json::object();
            for (const auto &[label, o] : obs) {
                kinds[label] = kind_name(o.kind);
            }
            out.result = Json{{"value", value},
                              {"best_state_value", sc.direction_sign() * es.eigenvalues()[d - 1]},
                              {"kinds", kinds},
                              {"validation", encode(validate_contexts(sc, obs))}};
            out.provenance = base_provenance("lueders");
            return out;
        };
    });

    // bound
    ScenarioArgs bd_sc;
    std::string bd_kind;
    int bd_dim = 0;
    int bd_restarts = 64;
    auto *bd = app.add_subcommand("bound", "Look up a catalog bound");
    bd_sc.add(bd);
    bd->add_option("--kind", bd_kind, "nchv, dim2, dim3, dim4 or bloch")
        ->check(CLI::IsMember({"nchv", "dim2", "dim3", "dim4", "bloch"}));
    bd->add_option("--dim", bd_dim, "Dimension for commuting projective bounds");
    bd->add_option("--restarts", bd_restarts, "Restarts for the bloch kind")->check(CLI::PositiveNumber);
    bd->callback([&] {
        command = "bound";
        run = [&] {
            Output out;
            bd_sc.echo(out.inputs);
            std::string kind = bd_kind;
            int dim = bd_dim;
            if (kind.rfind("dim", 0) == 0) {
                int k = kind[3] - '0';
                if (dim != 0 && dim != k) {
                    throw Error(ErrorCode::BadParameter, "--dim contradicts --kind " + kind);
                }
                dim = k;
                kind = "dim";
            } else if (kind.empty()) {
                if (dim == 0) {
                    throw Error(ErrorCode::BadParameter, "--kind or --dim is required");
                }
                kind = "dim";
            }
            out.inputs["kind"] = kind;
            if (kind == "dim") {
                out.inputs["dim"] = dim;
            }
            if (kind == "bloch") {
                out.inputs["restarts"] = bd_restarts;
            }
            BoundRecord r = lookup_bound(bd_sc.build(), kind, dim, bd_restarts, g.seed, g.threads);
            out.result = encode(r);
            out.provenance = base_provenance(provenance_name(r.provenance));
            out.provenance["seed"] = g.seed;
            if (g.csv) {
                out.csv = bound_table_csv({r});
            }
            return out;
        };
    });

    // enumerate
    ScenarioArgs en_sc;
    int en_dim = 0;
    bool en_stats = false;
    bool en_distinct = false;
    auto *en = app.add_subcommand("enumerate", "Exhaustive commuting replacement search");
    en_sc.add(en);
    en->add_option("--dim", en_dim, "Dimension (2 or 3)")->required()->check(CLI::IsMember({2, 3}));
    en->add_flag("--stats", en_stats, "Report case counts and reduced-form classes");
    en->add_flag("--distinct-non-identity", en_distinct, "chi_n only: pairs distinct up to sign, no identities");
    en->callback([&] {
        command = "enumerate";
        run = [&] {
            Output out;
            en_sc.echo(out.inputs);
            out.inputs["dim"] = en_dim;
            out.inputs["stats"] = en_stats;
            out.inputs["distinct_non_identity"] = en_distinct;
            EnumerationResult r = enumerate_replacements(en_sc.build(), en_dim, g.threads, en_distinct);
            out.result = encode(r, en_stats);
            out.provenance = base_provenance("enumeration");
            if (g.csv) {
                out.csv = bound_table_csv({r.bound});
            }
            return out;
        };
    });

    // optimize
    ScenarioArgs op_sc;
    SearchConfig op_cfg;
    auto *op = app.add_subcommand("optimize", "Search for the quantum extremum over d-dimensional observables");
    op_sc.add(op);
    op->add_option("--dim", op_cfg.dim, "Hilbert space dimension")->required()->check(CLI::Range(kMinDim, kMaxDim));
    op->add_flag("--commuting", op_cfg.require_commuting_contexts, "Require commuting contexts");
    op->add_flag("--distinct", op_cfg.forbid_repeated_neighbors, "Require X != +-Y within contexts");
    op->add_flag("--non-identity", op_cfg.forbid_identity_observables, "Forbid observables proportional to 1");
    op->add_option("--restarts", op_cfg.restarts, "Restarts")->check(CLI::PositiveNumber);
    op->add_option("--max-iters", op_cfg.max_iters, "Iterations per penalty stage")->check(CLI::PositiveNumber);
    op->add_option("--penalty", op_cfg.penalty_weight, "Commutator penalty weight")->check(CLI::NonNegativeNumber);
    op->add_option("--tol", op_cfg.feasibility_tol, "Feasibility tolerance")->check(CLI::PositiveNumber);
    op->callback([&] {
        command = "optimize";
        run = [&] {
            no_csv(g, "optimize");
            Output out;
            op_sc.echo(out.inputs);
            out.inputs["dim"] = op_cfg.dim;
            out.inputs["commuting"] = op_cfg.require_commuting_contexts;
            out.inputs["distinct"] = op_cfg.forbid_repeated_neighbors;
            out.inputs["non_identity"] = op_cfg.forbid_identity_observables;
            out.inputs["restarts"] = op_cfg.restarts;
            out.inputs["max_iters"] = op_cfg.max_iters;
            out.inputs["penalty"] = op_cfg.penalty_weight;
            out.inputs["tol"] = op_cfg.feasibility_tol;
            SearchConfig cfg = op_cfg;
            cfg.seed = g.seed;
            cfg.threads = g.threads;
            out.result = encode(maximize_violation(op_sc.build(), cfg));
            out.provenance = base_provenance("optimizer");
            out.provenance["seed"] = g.seed;
            return out;
        };
    });

    // noise-bound
    std::string nb_scenario;
    std::string nb_model;
    int nb_restarts = 8;
    auto *nb = app.add_subcommand("noise-bound", "Maximize over noise corner cases on a qubit");
    nb->add_option("--scenario", nb_scenario, "pm, pm_tilde or pm_bad_order")
        ->required()
        ->check(CLI::IsMember({"pm", "pm_tilde", "pm_bad_order"}));
    nb->add_option("--model", nb_model, "prop12 or prop13")->required()->check(CLI::IsMember({"prop12", "prop13"}));
    nb->add_option("--restarts", nb_restarts, "Restarts per corner form")->check(CLI::PositiveNumber);
    nb->callback([&] {
        command = "noise-bound";
        run = [&] {
            no_csv(g, "noise-bound");
            Output out;
            out.inputs = Json{{"scenario", nb_scenario}, {"model", nb_model}, {"restarts", nb_restarts}};
            CornerBoundResult r = corner_bound(
                build_scenario(nb_scenario), parse_noise_class(nb_model), nb_restarts, g.seed, g.threads);
            out.result = encode(r);
            out.provenance = base_provenance("noise corners");
            out.provenance["seed"] = g.seed;
            return out;
        };
    });

    // certify
    ScenarioArgs ce_sc;
    double ce_value = 0;
    double ce_sigma = 0;
    double ce_k = 1;
    std::string ce_assume = "none";
    auto *ce = app.add_subcommand("certify", "Certify a dimension lower bound from a measured value");
    ce_sc.add(ce);
    ce->add_option("--value", ce_value, "Measured value")->required();
    ce->add_option("--sigma", ce_sigma, "Uncertainty")->required()->check(CLI::NonNegativeNumber);
    ce->add_option("--k", ce_k, "Required excess in units of sigma")->check(CLI::NonNegativeNumber);
    ce->add_option("--assume", ce_assume,
                   "Comma flags: commuting, projective, distinct, non-identity, prop12, prop13, ordering=<name>");
    ce->callback([&] {
        command = "certify";
        run = [&] {
            Output out;
            ce_sc.echo(out.inputs);
            out.inputs["value"] = ce_value;
            out.inputs["sigma"] = ce_sigma;
            out.inputs["k"] = ce_k;
            out.inputs["assume"] = ce_assume;
            CertificationResult r = certify(ce_sc.build(), AssumptionSet::parse(ce_assume), ce_value, ce_sigma, ce_k);
            out.result = encode(r);
            out.provenance = base_provenance("threshold table");
            if (g.csv) {
                out.csv = tiers_csv(r.tiers);
            }
            return out;
        };
    });

    // hierarchy
    std::vector<int> hi_ns{6};
    std::vector<int> hi_dims{2, 3, 4};
    SearchConfig hi_cfg;
    auto *hi = app.add_subcommand("hierarchy", "Closed-form and attained chi_n values per dimension");
    hi->add_option("--n", hi_ns, "Values of N")->delimiter(',')->check(CLI::Range(3, 20));
    hi->add_option("--dims", hi_dims, "Dimensions")->delimiter(',')->check(CLI::Range(kMinDim, kMaxDim));
    hi->add_option("--restarts", hi_cfg.restarts, "Restarts per row")->check(CLI::PositiveNumber);
    hi->callback([&] {
        command = "hierarchy";
        run = [&] {
            Output out;
            out.inputs = Json{{"n", hi_ns}, {"dims", hi_dims}, {"restarts", hi_cfg.restarts}};
            SearchConfig cfg = hi_cfg;
            cfg.seed = g.seed;
            cfg.threads = g.threads;
            std::vector<HierarchyRow> rows = hierarchy_table(hi_ns, hi_dims, cfg);
            out.result = encode(rows);
            out.provenance = base_provenance("closed form and optimizer");
            out.provenance["seed"] = g.seed;
            if (g.csv) {
                out.csv = hierarchy_csv(rows);
            }
            return out;
        };
    });

    // gap-probe
    SearchConfig gp_cfg;
    auto *gp = app.add_subcommand("gap-probe", "Best unconstrained pm value in dimension 3");
    gp->add_option("--restarts", gp_cfg.restarts, "Restarts")->check(CLI::PositiveNumber);
    gp->callback([&] {
        command = "gap-probe";
        run = [&] {
            no_csv(g, "gap-probe");
            Output out;
            out.inputs = Json{{"restarts", gp_cfg.restarts}};
            SearchConfig cfg = gp_cfg;
            cfg.dim = 3;
            cfg.seed = g.seed;
            cfg.threads = g.threads;
            GapProbeResult r = pm_gap_probe(cfg);
            out.result = Json{{"value", r.value},
                              {"floor", 6 - kPmGapFloor},
                              {"below_floor", r.below_floor},
                              {"search", encode(r.search)}};
            out.provenance = base_provenance("optimizer");
            out.provenance["seed"] = g.seed;
            return out;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        Output out = run();
        if (out.csv) {
            std::cout << *out.csv;
        } else {
            Json doc{{"command", command},
                     {"inputs", out.inputs},
                     {"result", out.result},
                     {"provenance", out.provenance}};
            std::cout << doc.dump(2) << "\n";
        }
        return 0;
    } catch (const Error &e) {
        Json doc{{"command", command},
                 {"error", Json{{"code", error_code_name(e.code())}, {"message", e.what()}}}};
        std::cout << doc.dump(2) << "\n";
        std::cerr << e.what() << "\n";
        return e.code() == ErrorCode::UnsupportedCombination ? 2 : 1;
    } catch (const std::exception &e) {
        Json doc{{"command", command}, {"error", Json{{"code", "Internal"}, {"message", e.what()}}}};
        std::cout << doc.dump(2) << "\n";
        std::cerr << e.what() << "\n";
        return 1;
    }
}
