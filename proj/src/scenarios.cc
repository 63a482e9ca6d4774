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

#include "ctxdim/scenarios.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace ctxdim {

const char *direction_name(Direction d) {
    return d == Direction::Maximize ? "maximize" : "minimize";
}

Direction parse_direction(const std::string &s) {
    if (s == "maximize") {
        return Direction::Maximize;
    }
    if (s == "minimize") {
        return Direction::Minimize;
    }
    throw Error(ErrorCode::BadInput, "direction must be 'maximize' or 'minimize', got '" + s + "'");
}

int Scenario::label_index(const std::string &label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
        throw Error(ErrorCode::MissingLabel, "label '" + label + "' not in scenario " + name);
    }
    return (int)(it - labels.begin());
}

Scenario make_scenario(
    const std::string &name, std::vector<Context> contexts, Direction direction, std::optional<int> n) {
    Scenario sc;
    sc.name = name;
    sc.direction = direction;
    sc.n = n;
    if (contexts.empty()) {
        throw Error(ErrorCode::BadParameter, "scenario has no contexts");
    }
    for (const auto &ctx : contexts) {
        if (ctx.labels.empty() || ctx.labels.size() > 3) {
            throw Error(ErrorCode::BadParameter, "contexts hold one to three labels");
        }
        if (ctx.coef != 1 && ctx.coef != -1) {
            throw Error(ErrorCode::BadParameter, "context coefficients are +1 or -1");
        }
        std::set<std::string> seen(ctx.labels.begin(), ctx.labels.end());
        if (seen.size() != ctx.labels.size()) {
            throw Error(ErrorCode::BadParameter, "labels repeat within a context");
        }
        for (const auto &l : ctx.labels) {
            if (std::find(sc.labels.begin(), sc.labels.end(), l) == sc.labels.end()) {
                sc.labels.push_back(l);
            }
        }
    }
    sc.contexts = std::move(contexts);
    return sc;
}

static std::vector<std::string> indexed_labels(int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; i++) {
        out.push_back("A" + std::to_string(i));
    }
    return out;
}

static std::vector<Context> cycle_contexts(const std::vector<std::string> &l, int last_coef) {
    std::vector<Context> cs;
    int n = (int)l.size();
    for (int i = 0; i + 1 < n; i++) {
        cs.push_back({{l[i], l[i + 1]}, 1});
    }
    cs.push_back({{l[n - 1], l[0]}, last_coef});
    return cs;
}

Scenario build_scenario(const std::string &name, int n) {
    auto need_n = [&]() {
        if (n < 3) {
            throw Error(ErrorCode::BadParameter, name + " needs N >= 3");
        }
    };
    if (name == "kcbs") {
        Scenario sc = make_scenario(name, cycle_contexts({"A", "B", "C", "D", "E"}, 1), Direction::Minimize, 5);
        sc.s = 1;
        return sc;
    }
    if (name == "chi_n") {
        need_n();
        int s = n % 2 ? 1 : -1;
        Scenario sc = make_scenario(name, cycle_contexts(indexed_labels(n), s), Direction::Minimize, n);
        sc.s = s;
        return sc;
    }
    if (name == "zeta_n") {
        need_n();
        Scenario sc = make_scenario(name, cycle_contexts(indexed_labels(n), -1), Direction::Maximize, n);
        sc.s = -1;
        return sc;
    }
    if (name == "eta_n") {
        need_n();
        auto l = indexed_labels(n);
        std::vector<Context> cs{{{l[0]}, 1}};
        for (int i = 0; i + 1 < n; i++) {
            cs.push_back({{l[i], l[i + 1]}, 1});
        }
        cs.push_back({{l[n - 1]}, -1});
        return make_scenario(name, cs, Direction::Maximize, n);
    }
    if (name == "pm") {
        return make_scenario(
            name,
            {{{"A", "B", "C"}, 1},
             {{"b", "c", "a"}, 1},
             {{"gamma", "alpha", "beta"}, 1},
             {{"A", "alpha", "a"}, 1},
             {{"b", "B", "beta"}, 1},
             {{"gamma", "c", "C"}, -1}},
            Direction::Maximize);
    }
    if (name == "pm_tilde") {
        return make_scenario(
            name,
            {{{"A", "B", "C"}, 1},
             {{"b", "c", "a"}, 1},
             {{"beta", "gamma", "alpha"}, 1},
             {{"A", "alpha", "a"}, 1},
             {{"beta", "b", "B"}, 1},
             {{"gamma", "c", "C"}, -1}},
            Direction::Maximize);
    }
    if (name == "pm_bad_order") {
        // gamma is second in its row and last in its column.
        return make_scenario(
            name,
            {{{"A", "B", "C"}, 1},
             {{"b", "c", "a"}, 1},
             {{"alpha", "gamma", "beta"}, 1},
             {{"A", "alpha", "a"}, 1},
             {{"b", "B", "beta"}, 1},
             {{"C", "c", "gamma"}, -1}},
            Direction::Maximize);
    }
    throw Error(ErrorCode::UnknownScenario, "unknown scenario '" + name + "'");
}

static std::vector<Observable> context_sequence(const Context &ctx, const ObservableAssignment &obs, int d) {
    std::vector<Observable> seq;
    for (const auto &l : ctx.labels) {
        auto it = obs.find(l);
        if (it == obs.end()) {
            throw Error(ErrorCode::MissingLabel, "no observable for label '" + l + "'");
        }
        if (it->second.dim() != d) {
            throw Error(ErrorCode::DimensionMismatch, "observable '" + l + "' has the wrong dimension");
        }
        seq.push_back(it->second);
    }
    return seq;
}

double evaluate(const Scenario &scenario, const ObservableAssignment &obs, const QuantumState &state) {
    double total = 0;
    for (const auto &ctx : scenario.contexts) {
        total += ctx.coef * sequential_mean(state, context_sequence(ctx, obs, state.dim()));
    }
    return total;
}

Mat scenario_operator(const Scenario &scenario, const ObservableAssignment &obs) {
    if (obs.empty()) {
        throw Error(ErrorCode::MissingLabel, "empty observable assignment");
    }
    int d = obs.begin()->second.dim();
    Mat t = Mat::Zero(d, d);
    for (const auto &ctx : scenario.contexts) {
        t += double(ctx.coef) * sequential_correlation_operator(context_sequence(ctx, obs, d));
    }
    return t;
}

ValidationReport validate_contexts(const Scenario &scenario, const ObservableAssignment &obs, double tol) {
    ValidationReport report;
    for (const auto &ctx : scenario.contexts) {
        ContextReport cr;
        cr.labels = ctx.labels;
        for (size_t i = 0; i < ctx.labels.size(); i++) {
            for (size_t j = i + 1; j < ctx.labels.size(); j++) {
                auto a = obs.find(ctx.labels[i]);
                auto b = obs.find(ctx.labels[j]);
                if (a == obs.end() || b == obs.end()) {
                    throw Error(ErrorCode::MissingLabel, "assignment does not cover the context");
                }
                cr.max_commutator = std::max(cr.max_commutator, commutator_norm(a->second.op, b->second.op));
            }
        }
        cr.pass = cr.max_commutator <= tol;
        report.pass = report.pass && cr.pass;
        report.max_commutator = std::max(report.max_commutator, cr.max_commutator);
        report.contexts.push_back(cr);
    }
    return report;
}

ObservableAssignment pm_square() {
    using namespace pauli;
    Mat i2 = identity(2);
    ObservableAssignment m;
    m["A"] = projective_observable(kron(z(), i2));
    m["B"] = projective_observable(kron(i2, z()));
    m["C"] = projective_observable(kron(z(), z()));
    m["a"] = projective_observable(kron(i2, x()));
    m["b"] = projective_observable(kron(x(), i2));
    m["c"] = projective_observable(kron(x(), x()));
    m["alpha"] = projective_observable(kron(z(), x()));
    m["beta"] = projective_observable(kron(x(), z()));
    m["gamma"] = projective_observable(kron(y(), y()));
    return m;
}

ObservableAssignment kcbs_pentagram() {
    const double pi = std::numbers::pi;
    double c = std::cos(pi / 5);
    double cos_phi = std::sqrt(c / (1 + c));
    double sin_phi = std::sqrt(1 - cos_phi * cos_phi);
    const char *names[5] = {"A", "B", "C", "D", "E"};
    ObservableAssignment m;
    for (int i = 0; i < 5; i++) {
        double theta = 4 * pi * i / 5;
        CVec v(3);
        v << std::cos(theta) * sin_phi, std::sin(theta) * sin_phi, cos_phi;
        m[names[i]] = projective_observable(Mat::Identity(3, 3) - 2.0 * v * v.adjoint());
    }
    return m;
}

}  // namespace ctxdim
