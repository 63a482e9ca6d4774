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

#include "ctxdim/qcore.h"

#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>

namespace ctxdim {

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian:
            return "NotHermitian";
        case ErrorCode::NotDichotomic:
            return "NotDichotomic";
        case ErrorCode::NotState:
            return "NotState";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::UnsupportedKind:
            return "UnsupportedKind";
        case ErrorCode::UnknownScenario:
            return "UnknownScenario";
        case ErrorCode::BadParameter:
            return "BadParameter";
        case ErrorCode::MissingLabel:
            return "MissingLabel";
        case ErrorCode::TooManyLabels:
            return "TooManyLabels";
        case ErrorCode::NotCommuting:
            return "NotCommuting";
        case ErrorCode::WrongDimension:
            return "WrongDimension";
        case ErrorCode::UnsupportedScenario:
            return "UnsupportedScenario";
        case ErrorCode::LengthMismatch:
            return "LengthMismatch";
        case ErrorCode::Infeasible:
            return "Infeasible";
        case ErrorCode::NotCanonical:
            return "NotCanonical";
        case ErrorCode::UnsupportedLength:
            return "UnsupportedLength";
        case ErrorCode::UnsupportedCombination:
            return "UnsupportedCombination";
        case ErrorCode::BadInput:
            return "BadInput";
    }
    return "Unknown";
}

const char *kind_name(ObservableKind kind) {
    switch (kind) {
        case ObservableKind::Projective:
            return "Projective";
        case ObservableKind::SignedIdentity:
            return "SignedIdentity";
        case ObservableKind::General:
            return "General";
    }
    return "General";
}

double max_abs(const Mat &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void check_dim(int d) {
    if (d < kMinDim || d > kMaxDim) {
        throw Error(ErrorCode::DimensionMismatch, "dimension " + std::to_string(d) + " outside [2, 8]");
    }
}

Mat Observable::projector(int outcome) const {
    if (outcome != 1 && outcome != -1) {
        throw Error(ErrorCode::BadParameter, "outcome must be +1 or -1");
    }
    switch (kind) {
        case ObservableKind::Projective:
            return outcome == 1 ? p_plus : p_minus;
        case ObservableKind::SignedIdentity:
            return outcome == sign ? Mat(Mat::Identity(dim(), dim())) : Mat(Mat::Zero(dim(), dim()));
        case ObservableKind::General:
            break;
    }
    throw Error(ErrorCode::UnsupportedKind, "general observables have no projectors");
}

QuantumState QuantumState::from_matrix(const Mat &rho) {
    if (rho.rows() != rho.cols()) {
        throw Error(ErrorCode::NotState, "density matrix is not square");
    }
    check_dim((int)rho.rows());
    if (max_abs(rho - rho.adjoint()) > kHermiticityTol) {
        throw Error(ErrorCode::NotState, "density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - Complex(1, 0)) > 1e-12) {
        throw Error(ErrorCode::NotState, "trace differs from one");
    }
    Mat h = (rho + rho.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw Error(ErrorCode::NotState, "density matrix is not positive semidefinite");
    }
    return QuantumState{h};
}

QuantumState QuantumState::pure(const CVec &psi) {
    CVec v = psi / psi.norm();
    return QuantumState{v * v.adjoint()};
}

QuantumState QuantumState::maximally_mixed(int d) {
    check_dim(d);
    return QuantumState{Mat::Identity(d, d) / double(d)};
}

Observable classify_dichotomic(const Mat &m, double tol) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "operator is not square");
    }
    check_dim((int)m.rows());
    if (max_abs(m - m.adjoint()) > tol) {
        throw Error(ErrorCode::NotHermitian, "operator is not Hermitian within tolerance");
    }
    int d = (int)m.rows();
    Mat h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    const auto &w = es.eigenvalues();
    const Mat &v = es.eigenvectors();
    bool all_pm = true;
    for (int k = 0; k < d; k++) {
        if (w[k] < -1 - tol || w[k] > 1 + tol) {
            throw Error(ErrorCode::NotDichotomic, "eigenvalue " + std::to_string(w[k]) + " outside [-1, 1]");
        }
        if (std::abs(w[k] - 1) > tol && std::abs(w[k] + 1) > tol) {
            all_pm = false;
        }
    }
    Observable obs;
    if (!all_pm) {
        obs.kind = ObservableKind::General;
        obs.op = h;
        return obs;
    }
    Mat pp = Mat::Zero(d, d);
    Mat pm = Mat::Zero(d, d);
    int plus = 0;
    for (int k = 0; k < d; k++) {
        Mat outer = v.col(k) * v.col(k).adjoint();
        if (w[k] > 0) {
            pp += outer;
            plus++;
        } else {
            pm += outer;
        }
    }
    if (plus == 0 || plus == d) {
        obs.kind = ObservableKind::SignedIdentity;
        obs.sign = plus == d ? 1 : -1;
        obs.op = double(obs.sign) * Mat::Identity(d, d);
        return obs;
    }
    obs.kind = ObservableKind::Projective;
    obs.p_plus = pp;
    obs.p_minus = pm;
    obs.op = pp - pm;
    return obs;
}

Observable projective_observable(const Mat &m, double tol) {
    Observable obs = classify_dichotomic(m, tol);
    if (obs.kind == ObservableKind::General) {
        throw Error(ErrorCode::UnsupportedKind, "observable spectrum is not within {+1, -1}");
    }
    return obs;
}

double commutator_norm(const Mat &a, const Mat &b) {
    return max_abs(a * b - b * a);
}

bool commutes(const Observable &a, const Observable &b, double tol) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "observables act on different dimensions");
    }
    return commutator_norm(a.op, b.op) <= tol;
}

static void require_sharp(const Observable &obs, int d) {
    if (obs.dim() != d) {
        throw Error(ErrorCode::DimensionMismatch, "observable dimension differs from state dimension");
    }
    if (obs.kind == ObservableKind::General) {
        throw Error(ErrorCode::UnsupportedKind, "general observables require a noise model");
    }
}

LuedersResult lueders_update(const QuantumState &state, const Observable &obs, int outcome) {
    require_sharp(obs, state.dim());
    Mat p = obs.projector(outcome);
    Mat post = p * state.rho * p;
    double prob = post.trace().real();
    LuedersResult r;
    if (prob <= 0) {
        r.probability = 0;
        return r;
    }
    r.probability = prob;
    Mat normalized = post / prob;
    r.post_state = QuantumState{(normalized + normalized.adjoint()) / 2.0};
    return r;
}

// Branches below this weight carry no measurable contribution and are skipped.
constexpr double kBranchFloor = 1e-15;

double sequential_mean(const QuantumState &state, const std::vector<Observable> &seq) {
    for (const auto &obs : seq) {
        require_sharp(obs, state.dim());
    }
    std::function<double(const Mat &, size_t)> rec = [&](const Mat &rho, size_t k) -> double {
        if (k == seq.size()) {
            return rho.trace().real();
        }
        const Observable &obs = seq[k];
        if (obs.kind == ObservableKind::SignedIdentity) {
            return obs.sign * rec(rho, k + 1);
        }
        double total = 0;
        for (int outcome : {1, -1}) {
            const Mat &p = outcome == 1 ? obs.p_plus : obs.p_minus;
            Mat next = p * rho * p;
            if (next.trace().real() <= kBranchFloor) {
                continue;
            }
            total += outcome * rec(next, k + 1);
        }
        return total;
    };
    return rec(state.rho, 0);
}

Mat jordan(const Mat &a, const Mat &b) {
    return (a * b + b * a) / 2.0;
}

Mat sequential_correlation_operator(const std::vector<Observable> &seq) {
    if (seq.empty()) {
        throw Error(ErrorCode::BadParameter, "empty sequence");
    }
    int d = seq.front().dim();
    for (const auto &obs : seq) {
        require_sharp(obs, d);
    }
    // sum_s s P_s X P_s equals the Jordan product of the observable with X.
    Mat t = Mat::Identity(d, d);
    for (size_t k = seq.size(); k-- > 0;) {
        t = jordan(seq[k].op, t);
    }
    return (t + t.adjoint()) / 2.0;
}

namespace pauli {
Mat identity(int d) {
    return Mat::Identity(d, d);
}
Mat x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
Mat y() {
    Mat m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}
Mat z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); i++) {
        for (int j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}
}  // namespace pauli

}  // namespace ctxdim
