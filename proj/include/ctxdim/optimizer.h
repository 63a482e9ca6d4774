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

#ifndef CTXDIM_OPTIMIZER_H
#define CTXDIM_OPTIMIZER_H

#include <cstdint>
#include <optional>
#include <vector>

#include "ctxdim/classical.h"
#include "ctxdim/scenarios.h"

namespace ctxdim {

struct SearchConfig {
    int dim = 3;
    int restarts = 64;
    /// Iterations per penalty stage.
    int max_iters = 300;
    std::uint64_t seed = 0;
    bool require_commuting_contexts = false;
    bool forbid_identity_observables = false;
    /// Intra-context pairs X, Y must satisfy X != Y and X != -Y.
    bool forbid_repeated_neighbors = false;
    /// Reference commutator penalty; stages run from 0 up to 1000 times this value.
    double penalty_weight = 100;
    double feasibility_tol = 1e-6;
    int threads = 1;
};

struct FeasibilityReport {
    double max_commutator = 0;
    /// Smallest min(||X - Y||_F, ||X + Y||_F) / 2 over intra-context pairs; 1 or more means distinct.
    double min_separation = 0;
    bool feasible = false;
};

struct SearchResult {
    double value = 0;
    ObservableAssignment observables;
    QuantumState state;
    FeasibilityReport feasibility;
    int iterations = 0;
    int restart = 0;
    int feasible_restarts = 0;
};

/// Extremizes the scenario in its direction over d-dimensional projective
/// observables and states, honoring the constraint flags.
SearchResult maximize_violation(const Scenario &scenario, const SearchConfig &cfg);

FeasibilityReport check_feasibility(const Scenario &scenario, const ObservableAssignment &obs, const SearchConfig &cfg);

struct HierarchyRow {
    int n = 0;
    int dim = 0;
    BoundRecord bound;
    std::optional<double> attained;
};

/// For each N and dimension, the closed-form commuting bound of chi_n and the
/// value reached by the optimizer under the commutation constraint alone.
std::vector<HierarchyRow> hierarchy_table(
    const std::vector<int> &ns, const std::vector<int> &dims, const SearchConfig &base);

/// Closed-form minimum of chi_n over commuting projective observables in dimension d.
double chi_commuting_bound(int n, int dim);

constexpr double kPmGapFloor = 1e-3;

struct GapProbeResult {
    double value = 0;
    bool below_floor = false;
    SearchResult search;
};

/// Best unconstrained pm value in dimension 3.
GapProbeResult pm_gap_probe(const SearchConfig &cfg);

}  // namespace ctxdim

#endif
