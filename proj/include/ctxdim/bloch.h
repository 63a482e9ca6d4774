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

#ifndef CTXDIM_BLOCH_H
#define CTXDIM_BLOCH_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctxdim/scenarios.h"

namespace ctxdim {

using Vec3 = Eigen::Vector3d;

struct BlochVector {
    Vec3 v = Vec3::Zero();
    /// Set for signed identities; v is then zero.
    bool identity = false;
    int identity_sign = 0;

    double norm() const {
        return v.norm();
    }
};

BlochVector bloch_of(const Observable &obs);

/// Bloch vector r of a qubit state, rho = (1 + r.sigma) / 2.
Vec3 bloch_of_state(const QuantumState &state);

/// (1 + v.sigma) / 2.
Mat bloch_projector(const Vec3 &v);

/// Cyclic sum of signs[i] * <v_i, v_{i+1}>.
double chain_value(const std::vector<Vec3> &vectors, const std::vector<int> &signs);

/// Edge signs of the N-cycle: +1 everywhere except the closing edge, which is -1 for even N.
std::vector<int> cycle_signs(int n);

/// Sum of coefficient * product of dot products between 3-vector blocks.
struct Monomial {
    double coef = 0;
    std::vector<std::pair<int, int>> dots;
};

struct MultilinearForm {
    int blocks = 0;
    std::vector<Monomial> terms;

    double evaluate(const std::vector<Vec3> &x) const;
    /// The form is affine in each block, so this gradient is exact.
    Vec3 gradient(int block, const std::vector<Vec3> &x) const;
    double trivial_bound() const;
    /// Deterministic textual key, identical for structurally equal forms.
    std::string key() const;
};

struct BallMaxResult {
    double value = 0;
    std::vector<Vec3> x;
    int restart = 0;
};

/// Maximizes the form over ||x_i|| <= radii[i] by multi-restart block ascent with
/// a closed-form step per block.
BallMaxResult maximize_form(
    const MultilinearForm &form, const std::vector<double> &radii, int restarts, std::uint64_t seed, int threads = 1);

struct ChainResult {
    double value = 0;
    std::vector<Vec3> vectors;
    /// Largest distance of a returned vector from the best-fit plane.
    double out_of_plane = 0;
    bool planar = false;
};

ChainResult minimize_chain(
    int n, const std::vector<int> &signs, const std::vector<double> &norms, int restarts = 64,
    std::uint64_t seed = 0, int threads = 1);

/// Per-label qubit measurement behavior.
enum class Behavior { Projective, FixedPlus, FixedMinus, Random };

const char *behavior_name(Behavior b);

/// Symbolic qubit value of one context. Block i is the vector of label i (Bloch
/// vector, post-assignment eigenvector, or X vector for random behavior); block
/// `state_block` is the state. Returns nothing when the term vanishes identically.
std::optional<Monomial> qubit_context_monomial(
    const std::vector<int> &ctx, const std::vector<Behavior> &behavior, int state_block, double coef);

MultilinearForm qubit_scenario_form(const Scenario &scenario, const std::vector<Behavior> &behavior);

struct PmBlochResult {
    double value = 0;
    std::map<std::string, Vec3> vectors;
    Vec3 state = Vec3::Zero();
};

/// Maximal qubit value of pm or pm_tilde with projective measurements whose Bloch
/// vectors have norm at most norms[label] (default 1).
PmBlochResult pm_bloch_max(
    const Scenario &scenario, const std::map<std::string, double> &norms = {}, int restarts = 64,
    std::uint64_t seed = 0, int threads = 1);

}  // namespace ctxdim

#endif
