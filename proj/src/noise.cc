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

#include "ctxdim/noise.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <unordered_map>

#include <Eigen/Eigenvalues>

#include "ctxdim/parallel.h"

namespace ctxdim {

EffectPair EffectPair::diagonal(double alpha, double beta) {
    EffectPair e;
    e.alpha = alpha;
    e.beta = beta;
    e.gamma = 1 - alpha;
    e.delta = 1 - beta;
    e.e_plus = Mat::Zero(2, 2);
    e.e_plus(0, 0) = alpha;
    e.e_plus(1, 1) = beta;
    e.e_minus = Mat::Identity(2, 2) - e.e_plus;
    return e;
}

EffectPair EffectPair::from_effect(const Mat &e_plus) {
    if (e_plus.rows() != 2 || e_plus.cols() != 2) {
        throw Error(ErrorCode::DimensionMismatch, "effect pairs are qubit operators");
    }
    if (max_abs(e_plus - e_plus.adjoint()) > kHermiticityTol) {
        throw Error(ErrorCode::NotHermitian, "effect is not Hermitian");
    }
    Mat h = (e_plus + e_plus.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    double lo = es.eigenvalues()[0];
    double hi = es.eigenvalues()[1];
    if (lo < -1e-12 || hi > 1 + 1e-12) {
        throw Error(ErrorCode::BadInput, "effect eigenvalues must lie in [0, 1]");
    }
    EffectPair e;
    Mat v = es.eigenvectors();
    if (hi + lo <= 1) {
        e.alpha = hi;
        e.beta = lo;
        e.basis.col(0) = v.col(1);
        e.basis.col(1) = v.col(0);
        e.e_plus = h;
    } else {
        // Exchanging outcomes turns E- into the new E+, restoring beta <= gamma.
        e.swapped = true;
        e.alpha = 1 - lo;
        e.beta = 1 - hi;
        e.basis.col(0) = v.col(0);
        e.basis.col(1) = v.col(1);
        e.e_plus = Mat::Identity(2, 2) - h;
    }
    e.gamma = 1 - e.alpha;
    e.delta = 1 - e.beta;
    e.e_minus = Mat::Identity(2, 2) - e.e_plus;
    return e;
}

bool EffectPair::is_canonical(double tol) const {
    for (double p : {alpha, beta, gamma, delta}) {
        if (p < -tol || p > 1 + tol) {
            return false;
        }
    }
    return alpha >= beta - tol && beta <= gamma + tol && std::abs(alpha + gamma - 1) <= tol &&
           std::abs(beta + delta - 1) <= tol;
}

EffectDecomposition decompose_effect_pair(const EffectPair &eff) {
    if (!eff.is_canonical()) {
        throw Error(ErrorCode::NotCanonical, "effect pair needs alpha >= beta and beta <= gamma");
    }
    return {2 * eff.beta, eff.gamma - eff.beta, eff.alpha - eff.beta};
}

LabelNoise NoiseModel::at(const std::string &label) const {
    auto it = labels.find(label);
    return it == labels.end() ? LabelNoise{} : it->second;
}

void NoiseModel::validate() const {
    for (const auto &[label, n] : labels) {
        if (n.p_proj < 0 || n.p_fixed < 0 || n.p_random < 0 ||
            std::abs(n.p_proj + n.p_fixed + n.p_random - 1) > 1e-12) {
            throw Error(ErrorCode::BadParameter, "noise probabilities of '" + label + "' must be a distribution");
        }
        if (n.fixed_sign != 1 && n.fixed_sign != -1) {
            throw Error(ErrorCode::BadParameter, "fixed_sign of '" + label + "' must be +1 or -1");
        }
        if (n.x_bloch.norm() > 1 + 1e-12) {
            throw Error(ErrorCode::BadParameter, "x_bloch of '" + label + "' exceeds the unit ball");
        }
    }
}

static Mat eigenstate(const Observable &obs, int outcome) {
    Mat p = obs.projector(outcome);
    double t = p.trace().real();
    if (t <= 0.5) {
        throw Error(ErrorCode::BadParameter, "fixed assignment has no matching eigenstate");
    }
    return p / t;
}

double noisy_sequential_mean(
    const QuantumState &state, const std::vector<std::string> &seq, const ObservableAssignment &obs,
    const NoiseModel &model, const std::optional<CornerCase> &corner) {
    if (seq.empty() || seq.size() > 3) {
        throw Error(ErrorCode::UnsupportedLength, "noisy sequences hold one to three measurements");
    }
    if (state.dim() != 2) {
        throw Error(ErrorCode::DimensionMismatch, "noise models act on qubits");
    }
    model.validate();
    std::vector<Observable> ops;
    std::vector<LabelNoise> noise;
    for (const auto &l : seq) {
        auto it = obs.find(l);
        if (it == obs.end()) {
            throw Error(ErrorCode::MissingLabel, "no observable for label '" + l + "'");
        }
        if (it->second.dim() != 2) {
            throw Error(ErrorCode::DimensionMismatch, "noise models act on qubits");
        }
        if (it->second.kind == ObservableKind::General) {
            throw Error(ErrorCode::UnsupportedKind, "noisy observables are built from projective ones");
        }
        ops.push_back(it->second);
        noise.push_back(model.at(l));
    }

    if (corner) {
        // Suffix value c + <d, r> of the incoming Bloch vector r.
        double c = 1;
        Vec3 d = Vec3::Zero();
        for (size_t k = seq.size(); k-- > 0;) {
            auto it = corner->find(seq[k]);
            if (it == corner->end()) {
                throw Error(ErrorCode::MissingLabel, "corner lacks label '" + seq[k] + "'");
            }
            BlochVector b = bloch_of(ops[k]);
            switch (it->second) {
                case Behavior::Projective:
                    if (b.identity) {
                        c *= b.identity_sign;
                        d *= b.identity_sign;
                    } else {
                        double nc = d.dot(b.v);
                        d = c * b.v;
                        c = nc;
                    }
                    break;
                case Behavior::FixedPlus:
                case Behavior::FixedMinus: {
                    int s = it->second == Behavior::FixedPlus ? 1 : -1;
                    if (b.identity && b.identity_sign != s) {
                        throw Error(ErrorCode::BadParameter, "fixed assignment has no matching eigenstate");
                    }
                    c = s * c + d.dot(b.v);
                    d.setZero();
                    break;
                }
                case Behavior::Random:
                    c = d.dot(noise[k].x_bloch);
                    d.setZero();
                    break;
            }
        }
        return c + d.dot(bloch_of_state(state));
    }

    std::function<double(const Mat &, size_t)> rec = [&](const Mat &rho, size_t k) -> double {
        if (k == seq.size()) {
            return rho.trace().real();
        }
        const LabelNoise &n = noise[k];
        double tr = rho.trace().real();
        double total = 0;
        for (int o : {1, -1}) {
            Mat p = ops[k].projector(o);
            Mat next = n.p_proj * (p * rho * p);
            if (n.p_fixed > 0 && o == n.fixed_sign) {
                next += n.p_fixed * tr * eigenstate(ops[k], o);
            }
            if (n.p_random > 0) {
                next += n.p_random * 0.5 * tr * bloch_projector(double(o) * n.x_bloch);
            }
            if (next.trace().real() <= 1e-15) {
                continue;
            }
            total += o * rec(next, k + 1);
        }
        return total;
    };
    return rec(state.rho, 0);
}

const char *noise_class_name(NoiseClass c) {
    return c == NoiseClass::Prop12 ? "prop12" : "prop13";
}

NoiseClass parse_noise_class(const std::string &s) {
    if (s == "prop12") {
        return NoiseClass::Prop12;
    }
    if (s == "prop13") {
        return NoiseClass::Prop13;
    }
    throw Error(ErrorCode::BadParameter, "noise model must be prop12 or prop13, got '" + s + "'");
}

CornerBoundResult corner_bound(
    const Scenario &scenario, NoiseClass model, int restarts, std::uint64_t seed, int threads) {
    int n = (int)scenario.labels.size();
    if (n > 10) {
        throw Error(ErrorCode::TooManyLabels, "corner enumeration supports at most 10 labels");
    }
    for (const auto &ctx : scenario.contexts) {
        if (ctx.labels.size() > 3) {
            throw Error(ErrorCode::UnsupportedLength, "noisy sequences hold at most three measurements");
        }
    }
    std::vector<Behavior> options{Behavior::Projective, Behavior::Random};
    if (model == NoiseClass::Prop13) {
        options = {Behavior::Projective, Behavior::FixedPlus, Behavior::FixedMinus, Behavior::Random};
    }
    std::uint64_t k = options.size();
    std::uint64_t corners = 1;
    for (int i = 0; i < n; i++) {
        corners *= k;
    }

    // Many corners share one symbolic form; keep the first corner of each.
    struct Entry {
        MultilinearForm form;
        std::uint64_t corner;
        double trivial;
    };
    std::vector<Entry> forms;
    std::unordered_map<std::string, size_t> seen;
    std::vector<Behavior> beh(n);
    for (std::uint64_t c = 0; c < corners; c++) {
        std::uint64_t t = c;
        for (int i = n; i-- > 0;) {
            beh[i] = options[t % k];
            t /= k;
        }
        MultilinearForm f = qubit_scenario_form(scenario, beh);
        auto [it, fresh] = seen.emplace(f.key(), forms.size());
        if (fresh) {
            forms.push_back({f, c, f.trivial_bound()});
        }
    }
    std::stable_sort(forms.begin(), forms.end(), [](const Entry &a, const Entry &b) { return a.trivial > b.trivial; });

    CornerBoundResult out;
    out.corners = corners;
    out.distinct_forms = forms.size();
    double best = -std::numeric_limits<double>::infinity();
    BallMaxResult best_run;
    std::uint64_t best_corner = 0;
    std::vector<double> radii(n + 1, 1.0);
    const size_t batch = 32;
    for (size_t start = 0; start < forms.size(); start += batch) {
        size_t stop = std::min(forms.size(), start + batch);
        if (forms[start].trivial <= best + 1e-9) {
            break;
        }
        std::vector<std::optional<BallMaxResult>> runs(stop - start);
        double cutoff = best;
        parallel_for((std::int64_t)(stop - start), threads, [&](std::int64_t j) {
            const Entry &e = forms[start + j];
            if (e.trivial <= cutoff + 1e-9) {
                return;
            }
            runs[j] = maximize_form(e.form, radii, restarts, derive_seed(seed, e.corner));
        });
        for (size_t j = 0; j < runs.size(); j++) {
            if (!runs[j]) {
                continue;
            }
            out.optimized_forms++;
            if (runs[j]->value > best) {
                best = runs[j]->value;
                best_run = *runs[j];
                best_corner = forms[start + j].corner;
            }
        }
    }
    out.value = best;
    std::uint64_t t = best_corner;
    for (int i = n; i-- > 0;) {
        out.worst_corner[scenario.labels[i]] = options[t % k];
        t /= k;
    }
    for (int i = 0; i < n; i++) {
        out.vectors[scenario.labels[i]] = best_run.x[i];
    }
    out.state = best_run.x[n];
    return out;
}

}  // namespace ctxdim
