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

#include "ctxdim/bloch.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ctxdim/parallel.h"

namespace ctxdim {

BlochVector bloch_of(const Observable &obs) {
    if (obs.dim() != 2) {
        throw Error(ErrorCode::DimensionMismatch, "Bloch vectors need a qubit observable");
    }
    BlochVector b;
    if (obs.kind == ObservableKind::General) {
        throw Error(ErrorCode::UnsupportedKind, "general observables have no Bloch vector");
    }
    if (obs.kind == ObservableKind::SignedIdentity) {
        b.identity = true;
        b.identity_sign = obs.sign;
        return b;
    }
    // P+ = (1 + v.sigma)/2, so v_k = tr(A sigma_k) / 2 for A = P+ - P-.
    b.v = Vec3(
        (obs.op * pauli::x()).trace().real() / 2, (obs.op * pauli::y()).trace().real() / 2,
        (obs.op * pauli::z()).trace().real() / 2);
    return b;
}

Vec3 bloch_of_state(const QuantumState &state) {
    if (state.dim() != 2) {
        throw Error(ErrorCode::DimensionMismatch, "Bloch vectors need a qubit state");
    }
    return Vec3(
        (state.rho * pauli::x()).trace().real(), (state.rho * pauli::y()).trace().real(),
        (state.rho * pauli::z()).trace().real());
}

Mat bloch_projector(const Vec3 &v) {
    return (pauli::identity(2) + v.x() * pauli::x() + v.y() * pauli::y() + v.z() * pauli::z()) / 2.0;
}

double chain_value(const std::vector<Vec3> &vectors, const std::vector<int> &signs) {
    if (vectors.size() != signs.size() || vectors.size() < 2) {
        throw Error(ErrorCode::LengthMismatch, "need one sign per vector");
    }
    double total = 0;
    size_t n = vectors.size();
    for (size_t i = 0; i < n; i++) {
        total += signs[i] * vectors[i].dot(vectors[(i + 1) % n]);
    }
    return total;
}

std::vector<int> cycle_signs(int n) {
    if (n < 3) {
        throw Error(ErrorCode::BadParameter, "N must be at least 3");
    }
    std::vector<int> s(n, 1);
    s[n - 1] = n % 2 ? 1 : -1;
    return s;
}

double MultilinearForm::evaluate(const std::vector<Vec3> &x) const {
    double total = 0;
    for (const auto &t : terms) {
        double v = t.coef;
        for (const auto &[a, b] : t.dots) {
            v *= x[a].dot(x[b]);
        }
        total += v;
    }
    return total;
}

Vec3 MultilinearForm::gradient(int block, const std::vector<Vec3> &x) const {
    Vec3 g = Vec3::Zero();
    for (const auto &t : terms) {
        double v = t.coef;
        int partner = -1;
        for (const auto &[a, b] : t.dots) {
            if (a == block) {
                partner = b;
            } else if (b == block) {
                partner = a;
            } else {
                v *= x[a].dot(x[b]);
            }
        }
        if (partner >= 0) {
            g += v * x[partner];
        }
    }
    return g;
}

double MultilinearForm::trivial_bound() const {
    double total = 0;
    for (const auto &t : terms) {
        total += std::abs(t.coef);
    }
    return total;
}

std::string MultilinearForm::key() const {
    std::vector<std::string> parts;
    for (const auto &t : terms) {
        auto dots = t.dots;
        for (auto &[a, b] : dots) {
            if (a > b) {
                std::swap(a, b);
            }
        }
        std::sort(dots.begin(), dots.end());
        std::ostringstream s;
        s << t.coef << ":";
        for (const auto &[a, b] : dots) {
            s << a << "." << b << ";";
        }
        parts.push_back(s.str());
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto &p : parts) {
        out += p + "|";
    }
    return out;
}

static Vec3 random_direction(std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    while (true) {
        Vec3 v(normal(rng), normal(rng), normal(rng));
        double n = v.norm();
        if (n > 1e-8) {
            return v / n;
        }
    }
}

static BallMaxResult ascend(const MultilinearForm &form, const std::vector<double> &radii, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int nb = form.blocks;
    std::vector<Vec3> x(nb);
    for (int i = 0; i < nb; i++) {
        x[i] = random_direction(rng) * radii[i];
    }
    double value = form.evaluate(x);
    int quiet = 0;
    for (int sweep = 0; sweep < 20000 && quiet < 3; sweep++) {
        for (int i = 0; i < nb; i++) {
            if (radii[i] <= 0) {
                continue;
            }
            Vec3 g = form.gradient(i, x);
            double n = g.norm();
            if (n > 1e-14) {
                x[i] = g * (radii[i] / n);
            }
        }
        double next = form.evaluate(x);
        quiet = next - value <= 1e-15 * std::max(1.0, std::abs(next)) ? quiet + 1 : 0;
        value = next;
    }
    return {value, x, 0};
}

BallMaxResult maximize_form(
    const MultilinearForm &form, const std::vector<double> &radii, int restarts, std::uint64_t seed, int threads) {
    if ((int)radii.size() != form.blocks) {
        throw Error(ErrorCode::LengthMismatch, "one radius per block");
    }
    if (restarts < 1) {
        throw Error(ErrorCode::BadParameter, "restarts must be positive");
    }
    std::vector<BallMaxResult> results(restarts);
    parallel_for(restarts, threads, [&](std::int64_t r) {
        results[r] = ascend(form, radii, derive_seed(seed, (std::uint64_t)r));
        results[r].restart = (int)r;
    });
    size_t best = 0;
    for (size_t r = 1; r < results.size(); r++) {
        if (results[r].value > results[best].value) {
            best = r;
        }
    }
    return results[best];
}

ChainResult minimize_chain(
    int n, const std::vector<int> &signs, const std::vector<double> &norms, int restarts, std::uint64_t seed,
    int threads) {
    if (n < 3) {
        throw Error(ErrorCode::BadParameter, "N must be at least 3");
    }
    if ((int)signs.size() != n || (int)norms.size() != n) {
        throw Error(ErrorCode::LengthMismatch, "need N signs and N norms");
    }
    MultilinearForm form;
    form.blocks = n;
    for (int i = 0; i < n; i++) {
        if (signs[i] != 1 && signs[i] != -1) {
            throw Error(ErrorCode::BadParameter, "signs must be +1 or -1");
        }
        if (norms[i] < 0 || norms[i] > 1) {
            throw Error(ErrorCode::BadParameter, "norms must lie in [0, 1]");
        }
        form.terms.push_back({-double(signs[i]), {{i, (i + 1) % n}}});
    }
    BallMaxResult best = maximize_form(form, norms, restarts, seed, threads);
    ChainResult out;
    out.value = chain_value(best.x, signs);
    out.vectors = best.x;
    Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
    for (const auto &v : best.x) {
        scatter += v * v.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(scatter);
    Vec3 normal = es.eigenvectors().col(0);
    for (const auto &v : best.x) {
        out.out_of_plane = std::max(out.out_of_plane, std::abs(v.dot(normal)));
    }
    out.planar = out.out_of_plane < 1e-6;
    return out;
}

const char *behavior_name(Behavior b) {
    switch (b) {
        case Behavior::Projective:
            return "P";
        case Behavior::FixedPlus:
            return "F+";
        case Behavior::FixedMinus:
            return "F-";
        case Behavior::Random:
            return "R";
    }
    return "P";
}

std::optional<Monomial> qubit_context_monomial(
    const std::vector<int> &ctx, const std::vector<Behavior> &behavior, int state_block, double coef) {
    // The value of the remaining suffix is affine in the incoming Bloch vector:
    // either a scalar (vec < 0) or a scalar times <vec, incoming>.
    Monomial m{coef, {}};
    int vec = -1;
    for (size_t k = ctx.size(); k-- > 0;) {
        int l = ctx[k];
        Behavior b = behavior[l];
        if (vec >= 0) {
            m.dots.push_back({vec, l});
            vec = -1;
            continue;
        }
        switch (b) {
            case Behavior::Projective:
                vec = l;
                break;
            case Behavior::FixedPlus:
                break;
            case Behavior::FixedMinus:
                m.coef = -m.coef;
                break;
            case Behavior::Random:
                return std::nullopt;
        }
    }
    if (vec >= 0) {
        m.dots.push_back({vec, state_block});
    }
    return m;
}

MultilinearForm qubit_scenario_form(const Scenario &scenario, const std::vector<Behavior> &behavior) {
    if (behavior.size() != scenario.labels.size()) {
        throw Error(ErrorCode::LengthMismatch, "one behavior per label");
    }
    MultilinearForm form;
    int n = (int)scenario.labels.size();
    form.blocks = n + 1;
    for (const auto &ctx : scenario.contexts) {
        std::vector<int> idx;
        for (const auto &l : ctx.labels) {
            idx.push_back(scenario.label_index(l));
        }
        if (auto m = qubit_context_monomial(idx, behavior, n, ctx.coef)) {
            form.terms.push_back(*m);
        }
    }
    return form;
}

PmBlochResult pm_bloch_max(
    const Scenario &scenario, const std::map<std::string, double> &norms, int restarts, std::uint64_t seed,
    int threads) {
    int n = (int)scenario.labels.size();
    MultilinearForm form = qubit_scenario_form(scenario, std::vector<Behavior>(n, Behavior::Projective));
    std::vector<double> radii(n + 1, 1.0);
    for (const auto &[label, r] : norms) {
        if (r < 0 || r > 1) {
            throw Error(ErrorCode::BadParameter, "norms must lie in [0, 1]");
        }
        radii[scenario.label_index(label)] = r;
    }
    BallMaxResult best = maximize_form(form, radii, restarts, seed, threads);
    PmBlochResult out;
    out.value = best.value;
    for (int i = 0; i < n; i++) {
        out.vectors[scenario.labels[i]] = best.x[i];
    }
    out.state = best.x[n];
    return out;
}

}  // namespace ctxdim
