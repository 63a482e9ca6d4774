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

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"

#include "ctxdim/scenarios.h"
#include "test_util.h"

using namespace ctxdim;
using testutil::error_code;

TEST_CASE("build_scenario kcbs") {
    Scenario sc = build_scenario("kcbs");
    REQUIRE(sc.contexts.size() == 5);
    const char *expect[5][2] = {{"A", "B"}, {"B", "C"}, {"C", "D"}, {"D", "E"}, {"E", "A"}};
    for (int i = 0; i < 5; i++) {
        CHECK(sc.contexts[i].labels == std::vector<std::string>{expect[i][0], expect[i][1]});
        CHECK(sc.contexts[i].coef == 1);
    }
    CHECK(sc.direction == Direction::Minimize);
    CHECK(sc.labels == std::vector<std::string>{"A", "B", "C", "D", "E"});
}

TEST_CASE("build_scenario chi_n signs") {
    Scenario six = build_scenario("chi_n", 6);
    REQUIRE(six.contexts.size() == 6);
    for (int i = 0; i < 5; i++) {
        CHECK(six.contexts[i].coef == 1);
    }
    CHECK(six.contexts[5].coef == -1);
    CHECK(six.contexts[5].labels == std::vector<std::string>{"A6", "A1"});
    CHECK(six.s == -1);
    Scenario five = build_scenario("chi_n", 5);
    CHECK(five.contexts[4].coef == 1);
    CHECK(five.s == 1);
    CHECK(error_code([] { build_scenario("chi_n", 2); }) == ErrorCode::BadParameter);
    CHECK(error_code([] { build_scenario("nope"); }) == ErrorCode::UnknownScenario);
}

TEST_CASE("build_scenario pm orderings") {
    Scenario pm = build_scenario("pm");
    REQUIRE(pm.contexts.size() == 6);
    int negative = 0;
    for (const auto &c : pm.contexts) {
        CHECK(c.labels.size() == 3);
        if (c.coef < 0) {
            negative++;
            CHECK(c.labels == std::vector<std::string>{"gamma", "c", "C"});
        }
    }
    CHECK(negative == 1);
    CHECK(pm.direction == Direction::Maximize);
    CHECK(pm.labels.size() == 9);

    // In pm every label keeps one position across its two contexts.
    std::map<std::string, std::set<int>> positions;
    for (const auto &c : pm.contexts) {
        for (int k = 0; k < 3; k++) {
            positions[c.labels[k]].insert(k);
        }
    }
    for (const auto &[label, p] : positions) {
        CHECK_MESSAGE(p.size() == 1, label);
    }

    Scenario tilde = build_scenario("pm_tilde");
    CHECK(tilde.contexts[2].labels == std::vector<std::string>{"beta", "gamma", "alpha"});
    CHECK(tilde.contexts[4].labels == std::vector<std::string>{"beta", "b", "B"});
    Scenario bad = build_scenario("pm_bad_order");
    CHECK(bad.labels.size() == 9);
}

TEST_CASE("build_scenario eta and zeta forms") {
    Scenario eta = build_scenario("eta_n", 4);
    REQUIRE(eta.contexts.size() == 5);
    CHECK(eta.contexts.front().labels == std::vector<std::string>{"A1"});
    CHECK(eta.contexts.front().coef == 1);
    CHECK(eta.contexts.back().labels == std::vector<std::string>{"A4"});
    CHECK(eta.contexts.back().coef == -1);
    Scenario zeta = build_scenario("zeta_n", 5);
    REQUIRE(zeta.contexts.size() == 5);
    CHECK(zeta.contexts.back().coef == -1);
    CHECK(zeta.direction == Direction::Maximize);
}

TEST_CASE("make_scenario rejects malformed contexts") {
    CHECK(error_code([] { make_scenario("x", {{{"A", "A"}, 1}}, Direction::Maximize); }) == ErrorCode::BadParameter);
    CHECK(error_code([] { make_scenario("x", {{{"A", "B"}, 2}}, Direction::Maximize); }) == ErrorCode::BadParameter);
    CHECK(error_code([] { make_scenario("x", {{{"A", "B", "C", "D"}, 1}}, Direction::Maximize); }) ==
          ErrorCode::BadParameter);
    CHECK(error_code([] { make_scenario("x", {}, Direction::Maximize); }) == ErrorCode::BadParameter);
}

TEST_CASE("pm square is state independent") {
    Scenario pm = build_scenario("pm");
    ObservableAssignment sq = pm_square();
    std::mt19937_64 rng(23);
    double sum = 0;
    double sum2 = 0;
    for (int t = 0; t < 50; t++) {
        QuantumState rho = QuantumState::pure(testutil::random_vector(4, rng));
        double v = evaluate(pm, sq, rho);
        CHECK(std::abs(v - 6) < 1e-10);
        sum += v;
        sum2 += v * v;
    }
    double mean = sum / 50;
    CHECK(sum2 / 50 - mean * mean < 1e-20);
    ValidationReport rep = validate_contexts(pm, sq);
    CHECK(rep.pass);
    CHECK(rep.max_commutator <= 1e-12);
    CHECK(rep.contexts.size() == 6);
}

TEST_CASE("kcbs pentagram reaches 5 - 4 sqrt 5") {
    const double pi = std::numbers::pi;
    double c = std::cos(pi / 5);
    double cphi = std::sqrt(c / (1 + c));
    double sphi = std::sqrt(1 - cphi * cphi);
    std::vector<Eigen::Vector3d> v;
    for (int i = 0; i < 5; i++) {
        double th = 4 * pi * i / 5;
        v.emplace_back(std::cos(th) * sphi, std::sin(th) * sphi, cphi);
    }
    for (int i = 0; i < 5; i++) {
        CHECK(std::abs(v[i].dot(v[(i + 1) % 5])) < 1e-12);
    }
    Mat rho = Mat::Zero(3, 3);
    rho(2, 2) = 1;
    double oracle = 0;
    std::vector<Mat> ops;
    for (int i = 0; i < 5; i++) {
        Mat p = v[i].cast<Complex>() * v[i].cast<Complex>().adjoint();
        ops.push_back(Mat::Identity(3, 3) - 2.0 * p);
    }
    for (int i = 0; i < 5; i++) {
        oracle += (rho * ops[i] * ops[(i + 1) % 5]).trace().real();
    }
    CHECK(std::abs(oracle - (5 - 4 * std::sqrt(5.0))) < 1e-12);

    ObservableAssignment pent = kcbs_pentagram();
    const char *names[5] = {"A", "B", "C", "D", "E"};
    for (int i = 0; i < 5; i++) {
        CHECK(max_abs(pent.at(names[i]).op - ops[i]) < 1e-12);
    }
    Scenario kcbs = build_scenario("kcbs");
    CHECK(validate_contexts(kcbs, pent).pass);
    CHECK(std::abs(evaluate(kcbs, pent, QuantumState::from_matrix(rho)) - (5 - 4 * std::sqrt(5.0))) < 1e-10);
}

TEST_CASE("kcbs with minus identities evaluates to 5") {
    Scenario kcbs = build_scenario("kcbs");
    ObservableAssignment obs;
    for (const auto &l : kcbs.labels) {
        obs[l] = classify_dichotomic(-Mat::Identity(3, 3));
    }
    CHECK(std::abs(evaluate(kcbs, obs, QuantumState::maximally_mixed(3)) - 5) < 1e-12);
}

TEST_CASE("validate_contexts flags noncommuting pairs") {
    Scenario kcbs = build_scenario("kcbs");
    ObservableAssignment obs;
    obs["A"] = classify_dichotomic(pauli::z());
    obs["B"] = classify_dichotomic(pauli::x());
    for (const char *l : {"C", "D", "E"}) {
        obs[l] = classify_dichotomic(Mat::Identity(2, 2));
    }
    ValidationReport rep = validate_contexts(kcbs, obs);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.contexts[0].pass);
    CHECK(std::abs(rep.contexts[0].max_commutator - 2) < 1e-12);
    CHECK(rep.contexts[2].pass);
}

TEST_CASE("validation failures shrink as the tolerance grows") {
    Scenario pm = build_scenario("pm");
    ObservableAssignment sq = pm_square();
    std::mt19937_64 rng(29);
    // Perturb three labels by rotations of different sizes.
    double sizes[3] = {1e-8, 1e-4, 1e-1};
    const char *labels[3] = {"A", "b", "gamma"};
    for (int k = 0; k < 3; k++) {
        Mat h = testutil::random_density(4, rng);
        h = (h + h.adjoint()) / 2.0;
        Eigen::SelfAdjointEigenSolver<Mat> es(h);
        Eigen::VectorXcd ph(4);
        for (int i = 0; i < 4; i++) {
            ph[i] = std::exp(Complex(0, sizes[k] * es.eigenvalues()[i]));
        }
        Mat u = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
        sq[labels[k]] = projective_observable(u * sq[labels[k]].op * u.adjoint());
    }
    int prev = 1 << 30;
    for (double tol : {1e-12, 1e-6, 1e-2}) {
        ValidationReport rep = validate_contexts(pm, sq, tol);
        int fails = 0;
        for (const auto &c : rep.contexts) {
            fails += c.pass ? 0 : 1;
        }
        CHECK(fails <= prev);
        prev = fails;
    }
    CHECK(prev < 6);
}

TEST_CASE("commuting contexts are invariant under reversal") {
    Scenario pm = build_scenario("pm");
    std::vector<Context> rev = pm.contexts;
    for (auto &c : rev) {
        std::reverse(c.labels.begin(), c.labels.end());
    }
    Scenario pm_rev = make_scenario("pm_rev", rev, Direction::Maximize);
    ObservableAssignment sq = pm_square();
    std::mt19937_64 rng(31);
    for (int t = 0; t < 20; t++) {
        QuantumState rho = QuantumState::from_matrix(testutil::random_density(4, rng));
        CHECK(std::abs(evaluate(pm, sq, rho) - evaluate(pm_rev, sq, rho)) < 1e-10);
    }
}

TEST_CASE("odd chi_n reaches -(N-2) at a deterministic assignment") {
    for (int n : {5, 7}) {
        Scenario sc = build_scenario("chi_n", n);
        double best = 1e9;
        for (int mask = 0; mask < (1 << n); mask++) {
            ObservableAssignment obs;
            for (int i = 0; i < n; i++) {
                double s = (mask >> i) & 1 ? -1.0 : 1.0;
                obs[sc.labels[i]] = classify_dichotomic(s * Mat::Identity(2, 2));
            }
            best = std::min(best, evaluate(sc, obs, QuantumState::maximally_mixed(2)));
        }
        CHECK(best == doctest::Approx(-(n - 2)).epsilon(1e-12));
    }
}

TEST_CASE("evaluate errors") {
    Scenario kcbs = build_scenario("kcbs");
    ObservableAssignment obs;
    obs["A"] = classify_dichotomic(pauli::z());
    CHECK(error_code([&] { evaluate(kcbs, obs, QuantumState::maximally_mixed(2)); }) == ErrorCode::MissingLabel);
    for (const auto &l : kcbs.labels) {
        obs[l] = classify_dichotomic(pauli::z());
    }
    CHECK(error_code([&] { evaluate(kcbs, obs, QuantumState::maximally_mixed(3)); }) == ErrorCode::DimensionMismatch);
}
