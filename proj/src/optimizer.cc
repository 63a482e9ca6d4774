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

#include "ctxdim/optimizer.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

#include "ctxdim/parallel.h"

namespace ctxdim {

namespace {

constexpr int kPhaseOneIters = 100;
constexpr int kMaxSignEnumerationLabels = 14;
// Stage weights relative to SearchConfig::penalty_weight.
constexpr double kStageScale[] = {0, 1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1, 1, 10, 100, 1000};
// Penalty-first restarts start at this stage weight.
constexpr double kPenaltyFirstScale = 1e-2;

struct Problem {
    int d = 0;
    int labels = 0;
    int sign = 1;
    std::vector<std::vector<int>> contexts;
    std::vector<double> coefs;
    std::vector<std::uint32_t> masks;
    std::vector<std::pair<int, int>> pairs;
    bool commuting = false;
    bool distinct = false;
    bool no_identity = false;
};

Problem make_problem(const Scenario &sc, const SearchConfig &cfg) {
    Problem p;
    p.d = cfg.dim;
    p.labels = (int)sc.labels.size();
    p.sign = sc.direction_sign();
    p.commuting = cfg.require_commuting_contexts;
    p.distinct = cfg.forbid_repeated_neighbors;
    p.no_identity = cfg.forbid_identity_observables;
    for (const auto &ctx : sc.contexts) {
        std::vector<int> idx;
        std::uint32_t mask = 0;
        for (const auto &l : ctx.labels) {
            idx.push_back(sc.label_index(l));
            mask |= 1u << idx.back();
        }
        for (size_t i = 0; i < idx.size(); i++) {
            for (size_t j = i + 1; j < idx.size(); j++) {
                auto pr = std::minmax(idx[i], idx[j]);
                if (std::find(p.pairs.begin(), p.pairs.end(), std::pair<int, int>(pr)) == p.pairs.end()) {
                    p.pairs.push_back(pr);
                }
            }
        }
        p.contexts.push_back(idx);
        p.coefs.push_back(ctx.coef);
        p.masks.push_back(mask);
    }
    return p;
}

Mat context_operator(const std::vector<Mat> &x, const std::vector<int> &ctx, int d) {
    Mat t = Mat::Identity(d, d);
    for (size_t k = ctx.size(); k-- > 0;) {
        t = jordan(x[ctx[k]], t);
    }
    return t;
}

Mat total_operator(const Problem &p, const std::vector<Mat> &x) {
    Mat t = Mat::Zero(p.d, p.d);
    for (size_t c = 0; c < p.contexts.size(); c++) {
        t += p.coefs[c] * context_operator(x, p.contexts[c], p.d);
    }
    return t;
}

Mat top_state(const Mat &h) {
    Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) / 2.0);
    CVec psi = es.eigenvectors().col(h.rows() - 1);
    return psi * psi.adjoint();
}

double top_eigenvalue(const Mat &h) {
    Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    return es.eigenvalues()[h.rows() - 1];
}

double separation(const Mat &a, const Mat &b) {
    return std::min((a - b).norm(), (a + b).norm()) / 2;
}

double penalty(const Problem &p, const std::vector<Mat> &x) {
    double total = 0;
    for (const auto &[a, b] : p.pairs) {
        if (p.commuting) {
            total += (x[a] * x[b] - x[b] * x[a]).squaredNorm();
        }
        if (p.distinct) {
            double h = std::max(0.0, 1 - separation(x[a], x[b]));
            total += h * h;
        }
    }
    return total;
}

double objective(const Problem &p, const std::vector<Mat> &x, const Mat &rho, double mu) {
    double v = p.sign * (rho * total_operator(p, x)).trace().real();
    return mu > 0 ? v - mu * penalty(p, x) : v;
}

// Euclidean gradient of sign * tr(rho T) - mu * penalty with respect to x[l].
Mat gradient(const Problem &p, const std::vector<Mat> &x, const Mat &rho, double mu, int l) {
    int d = p.d;
    Mat g = Mat::Zero(d, d);
    for (size_t c = 0; c < p.contexts.size(); c++) {
        const auto &ctx = p.contexts[c];
        auto pos = std::find(ctx.begin(), ctx.end(), l);
        if (pos == ctx.end()) {
            continue;
        }
        size_t j = pos - ctx.begin();
        Mat w = rho;
        for (size_t k = 0; k < j; k++) {
            w = jordan(x[ctx[k]], w);
        }
        Mat q = Mat::Identity(d, d);
        for (size_t k = ctx.size(); k-- > j + 1;) {
            q = jordan(x[ctx[k]], q);
        }
        g += (p.sign * p.coefs[c]) * jordan(q, w);
    }
    if (mu > 0) {
        for (const auto &[a, b] : p.pairs) {
            if (a != l && b != l) {
                continue;
            }
            const Mat &y = a == l ? x[b] : x[a];
            if (p.commuting) {
                g -= mu * (4.0 * x[l] - 4.0 * y * x[l] * y);
            }
            if (p.distinct) {
                // Gradient of the hinge on the nearer of Y and -Y.
                double s = (x[l] - y).norm() <= (x[l] + y).norm() ? 1.0 : -1.0;
                Mat diff = x[l] - s * y;
                double n = diff.norm();
                double h = 1 - n / 2;
                if (h > 0 && n > 1e-12) {
                    g += mu * h / n * diff;
                }
            }
        }
    }
    return g;
}

// Nearest +-1 operator to a Hermitian matrix; optionally never a multiple of the identity.
Mat sign_of(const Mat &g, bool no_identity) {
    Eigen::SelfAdjointEigenSolver<Mat> es((g + g.adjoint()) / 2.0);
    Eigen::VectorXd w = es.eigenvalues();
    int d = (int)w.size();
    Eigen::VectorXd s(d);
    int plus = 0;
    for (int k = 0; k < d; k++) {
        s[k] = w[k] >= 0 ? 1 : -1;
        plus += s[k] > 0;
    }
    if (no_identity && (plus == 0 || plus == d)) {
        int weakest = 0;
        for (int k = 1; k < d; k++) {
            if (std::abs(w[k]) < std::abs(w[weakest])) {
                weakest = k;
            }
        }
        s[weakest] = -s[weakest];
    }
    const Mat &v = es.eigenvectors();
    return v * s.cast<Complex>().asDiagonal() * v.adjoint();
}

Mat haar_unitary(int d, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Mat z(d, d);
    for (int i = 0; i < d; i++) {
        for (int j = 0; j < d; j++) {
            z(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    Eigen::HouseholderQR<Mat> qr(z);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR();
    for (int i = 0; i < d; i++) {
        Complex ph = r(i, i) / std::abs(r(i, i));
        q.col(i) *= ph;
    }
    return q;
}

Mat random_observable(int d, int minus, std::mt19937_64 &rng) {
    Mat u = haar_unitary(d, rng);
    Eigen::VectorXcd diag = Eigen::VectorXcd::Ones(d);
    for (int k = 0; k < minus; k++) {
        diag[k] = -1;
    }
    return u * diag.asDiagonal() * u.adjoint();
}

// Flipping signs keeps every commutator and separation; pick the pattern with
// the best top eigenvalue.
void best_signs(const Problem &p, std::vector<Mat> &x) {
    if (p.labels > kMaxSignEnumerationLabels) {
        return;
    }
    std::vector<Mat> ops;
    for (const auto &ctx : p.contexts) {
        ops.push_back(context_operator(x, ctx, p.d));
    }
    double best = -std::numeric_limits<double>::infinity();
    std::uint32_t best_pattern = 0;
    for (std::uint32_t pattern = 0; pattern < (1u << p.labels); pattern++) {
        Mat t = Mat::Zero(p.d, p.d);
        for (size_t c = 0; c < ops.size(); c++) {
            double parity = (std::popcount(pattern & p.masks[c]) & 1) ? -1.0 : 1.0;
            t += (parity * p.coefs[c] * p.sign) * ops[c];
        }
        double v = top_eigenvalue(t);
        if (v > best + 1e-12) {
            best = v;
            best_pattern = pattern;
        }
    }
    for (int l = 0; l < p.labels; l++) {
        if (best_pattern & (1u << l)) {
            x[l] = -x[l];
        }
    }
}

// Random local observable on a 2 x d/2 factorization. Mode 0 acts on the
// qubit factor, mode 1 on the other factor, mode 2 on both.
Mat random_product_observable(int d, int mode, bool no_identity, std::mt19937_64 &rng) {
    int h = d / 2;
    for (;;) {
        Mat left = mode == 1 ? Mat::Identity(2, 2) : random_observable(2, 1, rng);
        Mat right = mode == 0 ? Mat::Identity(h, h) : random_observable(h, h / 2, rng);
        Mat x = pauli::kron(left, right);
        if (no_identity && max_abs(x - Mat::Identity(d, d)) < 1e-12) {
            continue;
        }
        return x;
    }
}

// Breadth-first 2-colouring of the context graph from random roots, so
// context partners sit on different factors whenever the graph allows it.
std::vector<int> coloured_modes(const Problem &p, std::mt19937_64 &rng) {
    std::vector<std::vector<int>> adj(p.labels);
    for (const auto &[a, b] : p.pairs) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> order(p.labels);
    for (int l = 0; l < p.labels; l++) {
        order[l] = l;
    }
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<int> mode(p.labels, -1);
    for (int root : order) {
        if (mode[root] >= 0) {
            continue;
        }
        mode[root] = coin(rng);
        std::vector<int> queue{root};
        for (size_t q = 0; q < queue.size(); q++) {
            int l = queue[q];
            for (int n : adj[l]) {
                if (mode[n] < 0) {
                    mode[n] = 1 - mode[l];
                    queue.push_back(n);
                }
            }
        }
    }
    return mode;
}

struct RestartOutcome {
    std::vector<Mat> x;
    int iterations = 0;
};

RestartOutcome run_restart(const Problem &p, const SearchConfig &cfg, int r) {
    std::mt19937_64 rng(derive_seed(cfg.seed, (std::uint64_t)r));
    int d = p.d;
    std::vector<int> classes;
    for (int k = 1; k <= d / 2; k++) {
        classes.push_back(k);
    }
    std::vector<int> mixed = classes;
    if (!p.no_identity) {
        mixed.push_back(0);
    }
    // Restart families cycle: uniform signature, mixed signature, tensor product
    // (even d >= 4), penalty-first.
    bool product = d % 2 == 0 && d >= 4;
    int families = product ? 4 : 3;
    int family = r % families;
    if (!product && family == 2) {
        family = 3;
    }
    std::vector<Mat> x(p.labels);
    std::vector<int> modes(p.labels);
    if (family == 2) {
        if ((r / families) % 2 == 0) {
            modes = coloured_modes(p, rng);
        } else {
            std::uniform_int_distribution<int> pick(0, 2);
            for (int &m : modes) {
                m = pick(rng);
            }
        }
    }
    int uniform_k = classes[(r / families) % classes.size()];
    for (int l = 0; l < p.labels; l++) {
        if (family == 2) {
            x[l] = random_product_observable(d, modes[l], p.no_identity, rng);
        } else {
            int k = family == 0 ? uniform_k : mixed[std::uniform_int_distribution<size_t>(0, mixed.size() - 1)(rng)];
            x[l] = random_observable(d, k, rng);
        }
    }
    RestartOutcome out;
    if (family == 1) {
        // Unconstrained sign steps pick the spectrum signatures.
        for (int it = 0; it < kPhaseOneIters; it++) {
            Mat rho = top_state(p.sign * total_operator(p, x));
            for (int l = 0; l < p.labels; l++) {
                x[l] = sign_of(gradient(p, x, rho, 0, l), p.no_identity);
            }
            out.iterations++;
        }
    }

    std::vector<double> stages;
    if (p.commuting || p.distinct) {
        for (double s : kStageScale) {
            // Penalty-first restarts skip the weakly constrained stages.
            if (family == 3 && s < kPenaltyFirstScale) {
                continue;
            }
            stages.push_back(s * cfg.penalty_weight);
        }
    } else {
        stages.push_back(0);
    }
    int inner = p.commuting || p.distinct ? cfg.max_iters : 3 * cfg.max_iters;
    double eta = 0.1;
    std::vector<Mat> trial(p.labels);
    std::vector<Mat> gen(p.labels);
    std::vector<Eigen::SelfAdjointEigenSolver<Mat>> eig(p.labels);
    for (double mu : stages) {
        best_signs(p, x);
        for (int it = 0; it < inner; it++) {
            out.iterations++;
            Mat rho = top_state(p.sign * total_operator(p, x));
            double f = objective(p, x, rho, mu);
            double gn = 0;
            for (int l = 0; l < p.labels; l++) {
                Mat g = gradient(p, x, rho, mu, l);
                gen[l] = Complex(0, 1) * (x[l] * g - g * x[l]);
                gen[l] = (gen[l] + gen[l].adjoint()) / 2.0;
                gn += gen[l].squaredNorm();
                eig[l].compute(gen[l]);
            }
            if (gn < 1e-26) {
                break;
            }
            bool accepted = false;
            while (eta > 1e-16) {
                for (int l = 0; l < p.labels; l++) {
                    const auto &es = eig[l];
                    Eigen::VectorXcd phase(d);
                    for (int k = 0; k < d; k++) {
                        phase[k] = std::exp(Complex(0, eta * es.eigenvalues()[k]));
                    }
                    Mat u = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
                    trial[l] = u * x[l] * u.adjoint();
                    trial[l] = (trial[l] + trial[l].adjoint()) / 2.0;
                }
                if (objective(p, trial, rho, mu) >= f + 1e-4 * eta * gn) {
                    accepted = true;
                    break;
                }
                eta *= 0.5;
            }
            if (!accepted) {
                eta = 0.1;
                break;
            }
            std::swap(x, trial);
            eta *= 1.5;
        }
    }
    out.x = x;
    return out;
}

}  // namespace

FeasibilityReport check_feasibility(
    const Scenario &scenario, const ObservableAssignment &obs, const SearchConfig &cfg) {
    FeasibilityReport rep;
    rep.max_commutator = validate_contexts(scenario, obs, cfg.feasibility_tol).max_commutator;
    rep.min_separation = std::numeric_limits<double>::infinity();
    for (const auto &ctx : scenario.contexts) {
        for (size_t i = 0; i < ctx.labels.size(); i++) {
            for (size_t j = i + 1; j < ctx.labels.size(); j++) {
                rep.min_separation =
                    std::min(rep.min_separation, separation(obs.at(ctx.labels[i]).op, obs.at(ctx.labels[j]).op));
            }
        }
    }
    rep.feasible = true;
    if (cfg.require_commuting_contexts && rep.max_commutator > cfg.feasibility_tol) {
        rep.feasible = false;
    }
    // The hinge penalty leaves a residual of order sqrt(tolerance).
    if (cfg.forbid_repeated_neighbors && rep.min_separation < 1 - std::sqrt(cfg.feasibility_tol)) {
        rep.feasible = false;
    }
    if (cfg.forbid_identity_observables) {
        for (const auto &[label, o] : obs) {
            if (o.kind == ObservableKind::SignedIdentity) {
                rep.feasible = false;
            }
        }
    }
    return rep;
}

SearchResult maximize_violation(const Scenario &scenario, const SearchConfig &cfg) {
    check_dim(cfg.dim);
    if (cfg.restarts < 1) {
        throw Error(ErrorCode::BadParameter, "restarts must be positive");
    }
    if (cfg.penalty_weight < 0) {
        throw Error(ErrorCode::BadParameter, "penalty weight must be nonnegative");
    }
    if (cfg.max_iters < 1) {
        throw Error(ErrorCode::BadParameter, "max_iters must be positive");
    }
    if (scenario.labels.size() > 30) {
        throw Error(ErrorCode::TooManyLabels, "too many labels for the optimizer");
    }
    Problem p = make_problem(scenario, cfg);
    std::vector<std::optional<SearchResult>> results(cfg.restarts);
    parallel_for(cfg.restarts, cfg.threads, [&](std::int64_t r) {
        RestartOutcome o = run_restart(p, cfg, (int)r);
        SearchResult res;
        for (int l = 0; l < p.labels; l++) {
            res.observables[scenario.labels[l]] = projective_observable(o.x[l], 1e-6);
        }
        Mat t = scenario_operator(scenario, res.observables);
        res.state = QuantumState::from_matrix(top_state(p.sign * t));
        res.value = evaluate(scenario, res.observables, res.state);
        res.feasibility = check_feasibility(scenario, res.observables, cfg);
        res.iterations = o.iterations;
        res.restart = (int)r;
        results[r] = std::move(res);
    });
    int best = -1;
    int feasible = 0;
    for (int r = 0; r < cfg.restarts; r++) {
        const SearchResult &res = *results[r];
        if (!res.feasibility.feasible) {
            continue;
        }
        feasible++;
        if (best < 0 || p.sign * res.value > p.sign * results[best]->value) {
            best = r;
        }
    }
    if (best < 0) {
        throw Error(ErrorCode::Infeasible, "no restart met the feasibility tolerance");
    }
    SearchResult out = *results[best];
    out.feasible_restarts = feasible;
    return out;
}

double chi_commuting_bound(int n, int dim) {
    if (n < 3) {
        throw Error(ErrorCode::BadParameter, "N must be at least 3");
    }
    check_dim(dim);
    if (dim == 2) {
        return -(n - 2);
    }
    if (n % 2 == 0 && dim == 3) {
        return -1 + omega(n - 1);
    }
    return omega(n);
}

std::vector<HierarchyRow> hierarchy_table(
    const std::vector<int> &ns, const std::vector<int> &dims, const SearchConfig &base) {
    std::vector<HierarchyRow> rows;
    for (int n : ns) {
        for (int d : dims) {
            HierarchyRow row;
            row.n = n;
            row.dim = d;
            row.bound.scenario = "chi_n";
            row.bound.dim = d;
            row.bound.flags.commuting = true;
            row.bound.flags.projective = true;
            row.bound.value = chi_commuting_bound(n, d);
            row.bound.provenance = Provenance::ClosedForm;
            row.bound.note = "N=" + std::to_string(n);
            SearchConfig cfg = base;
            cfg.dim = d;
            cfg.require_commuting_contexts = true;
            cfg.forbid_repeated_neighbors = false;
            cfg.forbid_identity_observables = false;
            try {
                row.attained = maximize_violation(build_scenario("chi_n", n), cfg).value;
            } catch (const Error &e) {
                if (e.code() != ErrorCode::Infeasible) {
                    throw;
                }
            }
            rows.push_back(row);
        }
    }
    return rows;
}

GapProbeResult pm_gap_probe(const SearchConfig &cfg) {
    if (cfg.dim != 3) {
        throw Error(ErrorCode::BadParameter, "the gap probe runs in dimension 3");
    }
    if (cfg.require_commuting_contexts) {
        throw Error(ErrorCode::BadParameter, "the gap probe is unconstrained");
    }
    GapProbeResult out;
    out.search = maximize_violation(build_scenario("pm"), cfg);
    out.value = out.search.value;
    out.below_floor = out.value <= 6 - kPmGapFloor;
    return out;
}

}  // namespace ctxdim
