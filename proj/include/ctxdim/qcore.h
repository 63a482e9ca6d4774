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

#ifndef CTXDIM_QCORE_H
#define CTXDIM_QCORE_H

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ctxdim/errors.h"

namespace ctxdim {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

constexpr double kHermiticityTol = 1e-10;
constexpr double kCommutationTol = 1e-9;
constexpr double kSpectrumTol = 1e-8;
constexpr int kMinDim = 2;
constexpr int kMaxDim = 8;

/// Largest absolute entry.
double max_abs(const Mat &m);

/// Throws DimensionMismatch unless 2 <= d <= 8.
void check_dim(int d);

enum class ObservableKind { Projective, SignedIdentity, General };

const char *kind_name(ObservableKind kind);

/// A dichotomic observable. For Projective kinds the operator is rebuilt as
/// P+ - P- so later arithmetic sees an exact +-1 spectrum.
struct Observable {
    ObservableKind kind = ObservableKind::General;
    Mat op;
    int sign = 0;
    Mat p_plus;
    Mat p_minus;

    int dim() const {
        return (int)op.rows();
    }
    /// Projector onto the given outcome. SignedIdentity maps its own sign to 1.
    Mat projector(int outcome) const;
};

struct QuantumState {
    Mat rho;

    int dim() const {
        return (int)rho.rows();
    }
    /// Validates trace, hermiticity and positivity; throws NotState.
    static QuantumState from_matrix(const Mat &rho);
    static QuantumState pure(const CVec &psi);
    static QuantumState maximally_mixed(int d);
};

Observable classify_dichotomic(const Mat &m, double tol = kSpectrumTol);

/// Same as classify_dichotomic but rejects General results.
Observable projective_observable(const Mat &m, double tol = kSpectrumTol);

bool commutes(const Observable &a, const Observable &b, double tol = kCommutationTol);

double commutator_norm(const Mat &a, const Mat &b);

struct LuedersResult {
    double probability = 0;
    std::optional<QuantumState> post_state;
};

LuedersResult lueders_update(const QuantumState &state, const Observable &obs, int outcome);

double sequential_mean(const QuantumState &state, const std::vector<Observable> &seq);

/// Hermitian T with tr(rho T) equal to the sequential mean for every rho.
Mat sequential_correlation_operator(const std::vector<Observable> &seq);

/// (AB + BA) / 2.
Mat jordan(const Mat &a, const Mat &b);

namespace pauli {
Mat identity(int d);
Mat x();
Mat y();
Mat z();
Mat kron(const Mat &a, const Mat &b);
}  // namespace pauli

}  // namespace ctxdim

#endif
