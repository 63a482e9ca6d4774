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

#ifndef CTXDIM_NOISE_H
#define CTXDIM_NOISE_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctxdim/bloch.h"

namespace ctxdim {

/// Qubit effects E+ = alpha|0><0| + beta|1><1| and E- = gamma|0><0| + delta|1><1|
/// in the eigenbasis stored in `basis` (column 0 is |0>).
struct EffectPair {
    Mat e_plus;
    Mat e_minus;
    double alpha = 1;
    double beta = 0;
    double gamma = 0;
    double delta = 1;
    Mat basis = Mat::Identity(2, 2);
    /// True when canonicalization exchanged the outcome labels.
    bool swapped = false;

    /// Diagonal pair in the computational basis, taken as given.
    static EffectPair diagonal(double alpha, double beta);
    /// Canonical pair from an arbitrary qubit effect E+.
    static EffectPair from_effect(const Mat &e_plus);
    bool is_canonical(double tol = 1e-12) const;
};

struct EffectDecomposition {
    double p_random = 0;
    double p_fixed_minus = 0;
    double p_projective = 0;
};

EffectDecomposition decompose_effect_pair(const EffectPair &eff);

struct LabelNoise {
    double p_proj = 1;
    double p_fixed = 0;
    int fixed_sign = 1;
    double p_random = 0;
    /// Random post-states are (1 +- x.sigma) / 2.
    Vec3 x_bloch = Vec3::Zero();
};

struct NoiseModel {
    std::map<std::string, LabelNoise> labels;

    /// Entry for a label; labels without an entry are projective.
    LabelNoise at(const std::string &label) const;
    void validate() const;
};

using CornerCase = std::map<std::string, Behavior>;

/// Noisy sequential mean on a qubit. Without a corner the full mixture is
/// simulated on density matrices; with a corner each label acts purely as the
/// chosen behavior and the closed qubit rules are applied.
double noisy_sequential_mean(
    const QuantumState &state, const std::vector<std::string> &seq, const ObservableAssignment &obs,
    const NoiseModel &model, const std::optional<CornerCase> &corner = std::nullopt);

enum class NoiseClass { Prop12, Prop13 };

const char *noise_class_name(NoiseClass c);
NoiseClass parse_noise_class(const std::string &s);

struct CornerBoundResult {
    double value = 0;
    CornerCase worst_corner;
    std::map<std::string, Vec3> vectors;
    Vec3 state = Vec3::Zero();
    std::uint64_t corners = 0;
    std::uint64_t distinct_forms = 0;
    std::uint64_t optimized_forms = 0;
};

/// Maximum over all corner behaviors (projective/random, plus fixed assignments
/// for prop13) and all free Bloch vectors, X vectors and states.
CornerBoundResult corner_bound(
    const Scenario &scenario, NoiseClass model, int restarts = 8, std::uint64_t seed = 0, int threads = 1);

}  // namespace ctxdim

#endif
