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

#include <random>

#include "doctest.h"

#include "ctxdim/qcore.h"
#include "test_util.h"

using namespace ctxdim;
using testutil::error_code;

namespace {

Mat diag2(double a, double b) {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace

TEST_CASE("classify_dichotomic kinds") {
    Observable z = classify_dichotomic(pauli::z());
    CHECK(z.kind == ObservableKind::Projective);
    CHECK(max_abs(z.p_plus - diag2(1, 0)) < 1e-12);
    CHECK(max_abs(z.p_minus - diag2(0, 1)) < 1e-12);

    Observable m = classify_dichotomic(-Mat::Identity(3, 3));
    CHECK(m.kind == ObservableKind::SignedIdentity);
    CHECK(m.sign == -1);

    CHECK(classify_dichotomic(diag2(1, 0.5)).kind == ObservableKind::General);
}

TEST_CASE("classify_dichotomic errors") {
    Mat nh = Mat::Zero(2, 2);
    nh(0, 1) = 1;
    CHECK(error_code([&] { classify_dichotomic(nh); }) == ErrorCode::NotHermitian);
    CHECK(error_code([&] { classify_dichotomic(diag2(2, 1)); }) == ErrorCode::NotDichotomic);
    CHECK(error_code([&] { projective_observable(diag2(1, 0.5)); }).has_value());
}

TEST_CASE("degenerate projective observables in dimension 3") {
    std::mt19937_64 rng(11);
    Mat a = testutil::random_dichotomic(3, 1, rng);
    Observable o = classify_dichotomic(a);
    CHECK(o.kind == ObservableKind::Projective);
    CHECK(std::abs(o.p_plus.trace().real() - 2) < 1e-10);
    CHECK(max_abs(o.p_plus + o.p_minus - Mat::Identity(3, 3)) < 1e-10);
    CHECK(max_abs(o.p_plus * o.p_plus - o.p_plus) < 1e-10);
    CHECK(max_abs(o.op - a) < 1e-10);
}

TEST_CASE("commutes") {
    Observable x = classify_dichotomic(pauli::x());
    Observable z = classify_dichotomic(pauli::z());
    CHECK_FALSE(commutes(z, x));
    Observable zi = classify_dichotomic(pauli::kron(pauli::z(), pauli::identity(2)));
    Observable iz = classify_dichotomic(pauli::kron(pauli::identity(2), pauli::z()));
    CHECK(commutes(zi, iz));
    CHECK(commutes(z, classify_dichotomic(Mat::Identity(2, 2))));
    CHECK(error_code([&] { commutes(z, zi); }) == ErrorCode::DimensionMismatch);
    CHECK(std::abs(commutator_norm(pauli::z(), pauli::x()) - 2) < 1e-12);
}

TEST_CASE("quantum state validation") {
    CHECK(error_code([] { QuantumState::from_matrix(Mat::Identity(2, 2)); }) == ErrorCode::NotState);
    CHECK(error_code([] { QuantumState::from_matrix(diag2(1.5, -0.5)); }) == ErrorCode::NotState);
    Mat nh = diag2(0.5, 0.5);
    nh(0, 1) = 0.1;
    CHECK(error_code([&] { QuantumState::from_matrix(nh); }) == ErrorCode::NotState);
    CHECK(std::abs(QuantumState::maximally_mixed(3).rho.trace().real() - 1) < 1e-15);
    CHECK(error_code([] { check_dim(9); }) == ErrorCode::DimensionMismatch);
    CHECK(error_code([] { check_dim(1); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("lueders_update examples") {
    QuantumState zero = QuantumState::from_matrix(diag2(1, 0));
    Observable z = classify_dichotomic(pauli::z());
    LuedersResult r = lueders_update(zero, z, 1);
    CHECK(std::abs(r.probability - 1) < 1e-12);
    REQUIRE(r.post_state);
    CHECK(max_abs(r.post_state->rho - diag2(1, 0)) < 1e-12);

    r = lueders_update(QuantumState::maximally_mixed(2), z, 1);
    CHECK(std::abs(r.probability - 0.5) < 1e-12);
    REQUIRE(r.post_state);
    CHECK(max_abs(r.post_state->rho - diag2(1, 0)) < 1e-12);

    std::mt19937_64 rng(3);
    QuantumState rho = QuantumState::from_matrix(testutil::random_density(3, rng));
    Observable mi = classify_dichotomic(-Mat::Identity(3, 3));
    r = lueders_update(rho, mi, -1);
    CHECK(std::abs(r.probability - 1) < 1e-12);
    REQUIRE(r.post_state);
    CHECK(max_abs(r.post_state->rho - rho.rho) < 1e-12);
    r = lueders_update(rho, mi, 1);
    CHECK(r.probability == 0);
    CHECK_FALSE(r.post_state);

    r = lueders_update(zero, z, -1);
    CHECK(std::abs(r.probability) < 1e-15);
    CHECK_FALSE(r.post_state);
}

TEST_CASE("lueders branch probabilities sum to one") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; trial++) {
        int d = 2 + trial % 3;
        QuantumState rho = QuantumState::from_matrix(testutil::random_density(d, rng));
        Observable a = classify_dichotomic(testutil::random_dichotomic(d, 1 + trial % (d - 1), rng));
        LuedersResult p = lueders_update(rho, a, 1);
        LuedersResult m = lueders_update(rho, a, -1);
        CHECK(std::abs(p.probability + m.probability - 1) < 1e-12);
        REQUIRE(p.post_state);
        REQUIRE(m.post_state);
        double expect = (testutil::spectral_projector(a.op, 1) * rho.rho).trace().real();
        CHECK(std::abs(p.probability - expect) < 1e-10);
    }
}

TEST_CASE("sequential_mean examples") {
    std::mt19937_64 rng(7);
    QuantumState rho4 = QuantumState::from_matrix(testutil::random_density(4, rng));
    Mat i2 = pauli::identity(2);
    std::vector<Observable> row{classify_dichotomic(pauli::kron(pauli::z(), i2)),
                                classify_dichotomic(pauli::kron(i2, pauli::z())),
                                classify_dichotomic(pauli::kron(pauli::z(), pauli::z()))};
    CHECK(std::abs(sequential_mean(rho4, row) - 1) < 1e-12);

    for (int t = 0; t < 20; t++) {
        QuantumState q = QuantumState::from_matrix(testutil::random_density(2, rng));
        double v = sequential_mean(q, {classify_dichotomic(pauli::z()), classify_dichotomic(pauli::x())});
        CHECK(std::abs(v) < 1e-12);
    }

    Observable a = classify_dichotomic(testutil::random_dichotomic(3, 1, rng));
    QuantumState rho3 = QuantumState::from_matrix(testutil::random_density(3, rng));
    double expect = (rho3.rho * a.op).trace().real();
    CHECK(std::abs(sequential_mean(rho3, {a, a, a}) - expect) < 1e-12);
}

TEST_CASE("sequential_mean errors") {
    QuantumState q = QuantumState::maximally_mixed(2);
    Observable g = classify_dichotomic(diag2(1, 0.5));
    CHECK(error_code([&] { sequential_mean(q, {g}); }) == ErrorCode::UnsupportedKind);
    Observable z3 = classify_dichotomic(-Mat::Identity(3, 3));
    CHECK(error_code([&] { sequential_mean(q, {z3}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("sequential_mean matches outcome-string enumeration") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 150; trial++) {
        int d = 2 + trial % 3;
        int len = 1 + (trial / 3) % 3;
        QuantumState rho = QuantumState::from_matrix(testutil::random_density(d, rng));
        std::vector<Observable> seq;
        std::vector<Mat> ops;
        for (int k = 0; k < len; k++) {
            Mat a = testutil::random_dichotomic(d, 1 + (trial + k) % (d - 1), rng);
            seq.push_back(classify_dichotomic(a));
            ops.push_back(a);
        }
        double oracle = testutil::brute_sequential_mean(rho.rho, ops);
        CHECK(std::abs(sequential_mean(rho, seq) - oracle) < 1e-10);
        Mat t = sequential_correlation_operator(seq);
        CHECK(max_abs(t - t.adjoint()) < 1e-12);
        CHECK(std::abs((rho.rho * t).trace().real() - oracle) < 1e-10);
    }
}

TEST_CASE("commuting pairs are order independent") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; trial++) {
        int d = 3 + trial % 2;
        Mat u = testutil::random_unitary(d, rng);
        Eigen::VectorXcd da = Eigen::VectorXcd::Ones(d);
        Eigen::VectorXcd db = Eigen::VectorXcd::Ones(d);
        da[0] = -1;
        db[d - 1] = -1;
        db[0] = -1;
        Mat a = u * da.asDiagonal() * u.adjoint();
        Mat b = u * db.asDiagonal() * u.adjoint();
        Observable oa = classify_dichotomic(a);
        Observable ob = classify_dichotomic(b);
        QuantumState rho = QuantumState::from_matrix(testutil::random_density(d, rng));
        double ab = sequential_mean(rho, {oa, ob});
        double ba = sequential_mean(rho, {ob, oa});
        double direct = (rho.rho * a * b).trace().real();
        CHECK(std::abs(ab - ba) < 1e-10);
        CHECK(std::abs(ab - direct) < 1e-10);
        CHECK(max_abs(sequential_correlation_operator({oa, ob}) - a * b) < 1e-10);
    }
}

TEST_CASE("qubit pairs are state independent") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 10; trial++) {
        Eigen::Vector3d va = testutil::random_unit3(rng);
        Eigen::Vector3d vb = testutil::random_unit3(rng);
        Observable a = classify_dichotomic(testutil::bloch_op(va));
        Observable b = classify_dichotomic(testutil::bloch_op(vb));
        Mat t = sequential_correlation_operator({a, b});
        CHECK(max_abs(t - va.dot(vb) * Mat::Identity(2, 2)) < 1e-10);
        for (int s = 0; s < 100; s++) {
            QuantumState rho = QuantumState::from_matrix(testutil::random_density(2, rng));
            CHECK(std::abs(sequential_mean(rho, {a, b}) - va.dot(vb)) < 1e-10);
        }
    }
    Observable a = classify_dichotomic(pauli::y());
    CHECK(max_abs(sequential_correlation_operator({a}) - pauli::y()) < 1e-12);
}

TEST_CASE("jordan product") {
    Mat j = jordan(pauli::x(), pauli::z());
    CHECK(max_abs(j) < 1e-15);
    CHECK(max_abs(jordan(pauli::x(), pauli::x()) - Mat::Identity(2, 2)) < 1e-15);
}
