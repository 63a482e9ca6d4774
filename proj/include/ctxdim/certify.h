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

#ifndef CTXDIM_CERTIFY_H
#define CTXDIM_CERTIFY_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctxdim/classical.h"
#include "ctxdim/noise.h"
#include "ctxdim/scenarios.h"

namespace ctxdim {

struct AssumptionSet {
    bool commuting = false;
    bool projective = false;
    /// Intra-context pairs differ up to sign.
    bool distinct = false;
    bool non_identity = false;
    std::optional<NoiseClass> noise;
    /// "pm" or "pm_tilde"; defaults to the scenario's own ordering.
    std::optional<std::string> ordering;

    /// Comma-separated tokens: commuting, projective, distinct, non-identity,
    /// prop12, prop13, ordering=<pm|pm_tilde>, or none.
    static AssumptionSet parse(const std::string &flags);
    /// Canonical comma-separated form; "none" when empty.
    std::string to_string() const;
    /// A noise model excludes the projective assumption.
    void validate() const;
};

/// A value beyond `bound` in the scenario direction needs dimension dim + 1.
struct Tier {
    int dim = 0;
    double bound = 0;
    BoundRecord record;
};

/// Tiers in increasing dimension.
std::vector<Tier> threshold_table(const Scenario &scenario, const AssumptionSet &assumptions);

struct CertificationResult {
    std::string scenario;
    AssumptionSet assumptions;
    double value = 0;
    double sigma = 0;
    double k = 1;
    int certified_dim = 1;
    /// Highest cleared tier, or the lowest tier when none is cleared.
    Tier threshold;
    /// Signed excess beyond the threshold in units of sigma; empty when sigma is 0.
    std::optional<double> margin;
    std::vector<Tier> tiers;
};

/// Catalog bound of a scenario. kind is "nchv" (deterministic assignments),
/// "dim" (commuting projective observables in dimension dim, 2 <= dim <= 8) or
/// "bloch" (qubit projective non-identity observables without commutation, found numerically).
BoundRecord lookup_bound(
    const Scenario &scenario, const std::string &kind, int dim = 0, int restarts = 64, std::uint64_t seed = 0,
    int threads = 1);

/// Certifies the highest tier cleared by more than k * sigma.
CertificationResult certify(
    const Scenario &scenario, const AssumptionSet &assumptions, double value, double sigma, double k = 1);

}  // namespace ctxdim

#endif
