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

#ifndef CTXDIM_CLASSICAL_H
#define CTXDIM_CLASSICAL_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ctxdim/scenarios.h"

namespace ctxdim {

enum class Provenance { Enumeration, ClosedForm, Optimizer };

const char *provenance_name(Provenance p);

struct AssumptionFlags {
    bool commuting = false;
    bool projective = false;
    /// Intra-context pairs differ up to sign.
    bool distinct = false;
    bool non_identity = false;

    /// Set flags joined by '+', e.g. "commuting+projective", or "none".
    std::string to_string() const;
};

struct BoundRecord {
    std::string scenario;
    /// 0 means no dimension assumption.
    int dim = 0;
    AssumptionFlags flags;
    double value = 0;
    Provenance provenance = Provenance::ClosedForm;
    std::string note;
};

/// One row per record: scenario,dim,flags,bound,provenance.
std::string bound_table_csv(const std::vector<BoundRecord> &rows);

/// Extremum in the scenario direction over all deterministic +-1 assignments.
BoundRecord nchv_bound(const Scenario &scenario);

constexpr int kMaxNchvLabels = 20;

enum class CaseTag { ObsToIdentity, PairToIdentity, TripleToIdentity };

const char *case_tag_name(CaseTag tag);

struct CaseMatch {
    CaseTag tag;
    /// Positions within the input list.
    std::vector<int> members;
    int sign;
};

std::vector<CaseMatch> classify_commuting_set(const std::vector<Observable> &obs, double tol = kSpectrumTol);

struct EnumerationStats {
    std::uint64_t raw_cases = 0;
    std::uint64_t consistent_cases = 0;
    /// Reduced-form class label to number of consistent cases.
    std::map<std::string, std::uint64_t> classes;
};

struct EnumerationResult {
    BoundRecord bound;
    EnumerationStats stats;
    /// Human-readable replacement rules of the extremal case, one per context.
    std::vector<std::string> witness_rules;
};

/// Exhaustive commuting-observable replacement search. Supports kcbs and chi_n in
/// dimension 2, chi_n in dimension 3, and pm / pm_tilde in dimension 3. With
/// distinct_non_identity (chi_n, dimension 3) every pair is distinct up to sign
/// and neither member is proportional to the identity.
EnumerationResult enumerate_replacements(const Scenario &scenario, int dim, int threads = 1,
                                         bool distinct_non_identity = false);

/// Extremal quantum value of the N-cycle expression.
double omega(int n);

BoundRecord lemma9_bounds(const std::string &form, int n, int dim);

/// Upper bound of the frustrated N-cycle of commuting pairs in dimension 2 or 3.
double zeta_bound(int n, int dim);

}  // namespace ctxdim

#endif
