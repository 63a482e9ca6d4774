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

#ifndef CTXDIM_SCENARIOS_H
#define CTXDIM_SCENARIOS_H

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctxdim/qcore.h"

namespace ctxdim {

struct Context {
    std::vector<std::string> labels;
    int coef = 1;
};

enum class Direction { Minimize, Maximize };

const char *direction_name(Direction d);
Direction parse_direction(const std::string &s);

struct Scenario {
    std::string name;
    std::vector<Context> contexts;
    /// Labels in order of first appearance.
    std::vector<std::string> labels;
    Direction direction = Direction::Maximize;
    std::optional<int> n;
    /// Sign of the closing term for chi_n; +1 for odd N, -1 for even N.
    int s = 1;

    int label_index(const std::string &label) const;
    /// +1 for maximize, -1 for minimize.
    int direction_sign() const {
        return direction == Direction::Maximize ? 1 : -1;
    }
};

using ObservableAssignment = std::map<std::string, Observable>;

/// Builds kcbs, chi_n, pm, pm_tilde, pm_bad_order, eta_n or zeta_n.
Scenario build_scenario(const std::string &name, int n = 0);

/// Validates context invariants and fills the label list.
Scenario make_scenario(
    const std::string &name, std::vector<Context> contexts, Direction direction, std::optional<int> n = {});

double evaluate(const Scenario &scenario, const ObservableAssignment &obs, const QuantumState &state);

/// Sum of coefficient times the sequential correlation operator of each context.
Mat scenario_operator(const Scenario &scenario, const ObservableAssignment &obs);

struct ContextReport {
    std::vector<std::string> labels;
    double max_commutator = 0;
    bool pass = true;
};

struct ValidationReport {
    bool pass = true;
    std::vector<ContextReport> contexts;
    double max_commutator = 0;
};

ValidationReport validate_contexts(
    const Scenario &scenario, const ObservableAssignment &obs, double tol = kCommutationTol);

/// The two-qubit square realizing the pm labels with value 6 on every state.
ObservableAssignment pm_square();

/// Qutrit pentagram observables A_i = 1 - 2|v_i><v_i| with v_i orthogonal to v_{i+1}.
ObservableAssignment kcbs_pentagram();

}  // namespace ctxdim

#endif
