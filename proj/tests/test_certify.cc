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

#include <cmath>

#include "doctest.h"

#include "ctxdim/certify.h"
#include "ctxdim/noise.h"
#include "ctxdim/optimizer.h"
#include "test_util.h"

using namespace ctxdim;
using testutil::error_code;

namespace {

AssumptionSet assume(const std::string &flags) {
    return AssumptionSet::parse(flags);
}

}  // namespace

TEST_CASE("assumption parsing") {
    AssumptionSet a = assume("commuting,projective");
    CHECK(a.commuting);
    CHECK(a.projective);
    CHECK_FALSE(a.noise.has_value());
    CHECK(a.to_string() == "commuting,projective");
    AssumptionSet b = assume("prop12,ordering=pm_tilde");
    CHECK(b.noise == NoiseClass::Prop12);
    CHECK(b.ordering == std::string("pm_tilde"));
    CHECK(assume("none").to_string() == "none");
    CHECK(assume("distinct,non_identity").non_identity);
    CHECK(error_code([] { assume("bogus"); }) == ErrorCode::BadParameter);
    CHECK(error_code([] { assume("projective,prop12").validate(); }) == ErrorCode::BadParameter);
}

TEST_CASE("pm threshold tables") {
    auto cp = threshold_table(build_scenario("pm"), assume("commuting,projective"));
    REQUIRE(cp.size() == 2);
    CHECK(cp[0].dim == 2);
    CHECK(cp[0].bound == 4);
    CHECK(cp[1].dim == 3);
    CHECK(std::abs(cp[1].bound - 4 * (std::sqrt(5.0) - 1)) < 1e-12);
    auto p12 = threshold_table(build_scenario("pm"), assume("prop12"));
    REQUIRE(p12.size() == 1);
    CHECK(std::abs(p12[0].bound - 3 * std::sqrt(3.0)) < 1e-12);
    auto tilde = threshold_table(build_scenario("pm_tilde"), assume("prop12,ordering=pm_tilde"));
    REQUIRE(tilde.size() == 1);
    CHECK(std::abs(tilde[0].bound - (1 + std::sqrt(9 + 6 * std::sqrt(3.0)))) < 1e-12);
    CHECK(error_code([] { threshold_table(build_scenario("pm"), assume("prop12,ordering=pm_tilde")); }) ==
          ErrorCode::BadParameter);
    CHECK(error_code([] { threshold_table(build_scenario("pm"), assume("prop13")); }) ==
          ErrorCode::UnsupportedCombination);
    CHECK(error_code([] { threshold_table(build_scenario("pm_bad_order"), assume("prop12")); }) ==
          ErrorCode::UnsupportedCombination);
}

TEST_CASE("cycle threshold tables") {
    auto k = threshold_table(build_scenario("kcbs"), assume("commuting,projective"));
    REQUIRE(k.size() == 1);
    CHECK(k[0].bound == -3);
    auto six = threshold_table(build_scenario("chi_n", 6), assume("commuting,projective"));
    REQUIRE(six.size() == 2);
    CHECK(std::abs(six[1].bound - (-1 + omega(5))) < 1e-12);
    auto strict = threshold_table(build_scenario("chi_n", 6), assume("commuting,projective,distinct,non-identity"));
    REQUIRE(strict.size() == 2);
    CHECK(strict[1].bound == -4);
    CHECK(strict[1].record.flags.distinct);
    CHECK(error_code([] { threshold_table(build_scenario("kcbs"), assume("none")); }) ==
          ErrorCode::UnsupportedCombination);
    CHECK(error_code([] { threshold_table(build_scenario("kcbs"), assume("projective")); }) ==
          ErrorCode::UnsupportedCombination);
    CHECK(error_code([] { threshold_table(build_scenario("eta_n", 4), assume("commuting,projective")); }) ==
          ErrorCode::UnsupportedCombination);
}

TEST_CASE("certification of 5.36 +- 0.05 on pm") {
    CertificationResult cp = certify(build_scenario("pm"), assume("commuting,projective"), 5.36, 0.05);
    CHECK(cp.certified_dim == 4);
    REQUIRE(cp.margin.has_value());
    CHECK(std::abs(*cp.margin - (5.36 - 4 * (std::sqrt(5.0) - 1)) / 0.05) < 1e-9);
    CHECK(std::abs(*cp.margin - 8.31) < 0.01);
    CertificationResult p12 = certify(build_scenario("pm"), assume("prop12"), 5.36, 0.05);
    CHECK(p12.certified_dim == 3);
    CertificationResult strict = certify(build_scenario("pm"), assume("commuting,projective"), 5.36, 0.05, 10);
    CHECK(strict.certified_dim == 3);
}

TEST_CASE("kcbs without a violation certifies nothing") {
    CertificationResult r = certify(build_scenario("kcbs"), assume("commuting,projective"), -2.9, 0);
    CHECK(r.certified_dim == 1);
    CHECK_FALSE(r.margin.has_value());
    CHECK(r.threshold.bound == -3);
    CertificationResult v = certify(build_scenario("kcbs"), assume("commuting,projective"), -3.5, 0.1);
    CHECK(v.certified_dim == 3);
    CHECK(std::abs(*v.margin - 5) < 1e-9);
}

TEST_CASE("certified dimension grows with the violation") {
    Scenario pm = build_scenario("pm");
    for (const char *flags : {"commuting,projective", "prop12", "projective", "projective,non-identity"}) {
        int prev = 0;
        for (double v = 3.0; v <= 6.0; v += 0.01) {
            int d = certify(pm, assume(flags), v, 0.02).certified_dim;
            CHECK(d >= prev);
            prev = d;
        }
    }
    Scenario chi = build_scenario("chi_n", 8);
    int prev = 0;
    for (double v = -5.0; v >= -8.0; v -= 0.01) {
        int d = certify(chi, assume("commuting,projective"), v, 0.02).certified_dim;
        CHECK(d >= prev);
        prev = d;
    }
}

TEST_CASE("weaker assumptions never certify more") {
    Scenario pm = build_scenario("pm");
    for (double v = 3.0; v <= 6.0; v += 0.05) {
        int strong = certify(pm, assume("commuting,projective"), v, 0.05).certified_dim;
        int proj = certify(pm, assume("projective,non-identity"), v, 0.05).certified_dim;
        int weak = certify(pm, assume("projective"), v, 0.05).certified_dim;
        CHECK(proj <= strong);
        CHECK(weak <= proj);
    }
    Scenario chi = build_scenario("chi_n", 6);
    for (double v = -4.0; v >= -5.2; v -= 0.02) {
        int plain = certify(chi, assume("commuting,projective"), v, 0.01).certified_dim;
        int strict = certify(chi, assume("commuting,projective,distinct,non-identity"), v, 0.01).certified_dim;
        CHECK(plain <= strict);
    }
}

TEST_CASE("certify parameter errors") {
    Scenario pm = build_scenario("pm");
    CHECK(error_code([&] { certify(pm, assume("commuting,projective"), 5, -1); }) == ErrorCode::BadParameter);
    CHECK(error_code([&] { certify(pm, assume("commuting,projective"), NAN, 0.1); }) == ErrorCode::BadParameter);
    CHECK(error_code([&] { certify(pm, assume("commuting,projective"), 5, 0.1, -1); }) == ErrorCode::BadParameter);
}

TEST_CASE("every tier is regenerated by the computing modules") {
    EnumerationResult pm3 = enumerate_replacements(build_scenario("pm"), 3);
    auto cp = threshold_table(build_scenario("pm"), assume("commuting,projective"));
    CHECK(std::abs(cp[0].bound - nchv_bound(build_scenario("pm")).value) < 1e-6);
    CHECK(std::abs(cp[1].bound - pm3.bound.value) < 1e-6);

    CornerBoundResult c12 = corner_bound(build_scenario("pm"), NoiseClass::Prop12);
    CHECK(std::abs(threshold_table(build_scenario("pm"), assume("prop12"))[0].bound - c12.value) < 1e-6);
    CornerBoundResult t12 = corner_bound(build_scenario("pm_tilde"), NoiseClass::Prop12);
    CHECK(std::abs(threshold_table(build_scenario("pm_tilde"), assume("prop12"))[0].bound - t12.value) < 1e-6);

    CHECK(std::abs(threshold_table(build_scenario("pm"), assume("projective,non-identity"))[0].bound -
                   pm_bloch_max(build_scenario("pm")).value) < 1e-6);
    SearchConfig qubit;
    qubit.dim = 2;
    qubit.restarts = 16;
    CHECK(std::abs(threshold_table(build_scenario("pm"), assume("projective"))[0].bound -
                   maximize_violation(build_scenario("pm"), qubit).value) < 1e-6);

    auto k = threshold_table(build_scenario("kcbs"), assume("commuting,projective"));
    CHECK(std::abs(k[0].bound - enumerate_replacements(build_scenario("kcbs"), 2).bound.value) < 1e-6);
    for (int n : {4, 6, 8}) {
        Scenario sc = build_scenario("chi_n", n);
        auto t = threshold_table(sc, assume("commuting,projective"));
        CHECK(std::abs(t[0].bound - enumerate_replacements(sc, 2).bound.value) < 1e-6);
        CHECK(std::abs(t[1].bound - enumerate_replacements(sc, 3).bound.value) < 1e-6);
        auto s = threshold_table(sc, assume("commuting,projective,distinct,non-identity"));
        CHECK(std::abs(s[1].bound - enumerate_replacements(sc, 3, 1, true).bound.value) < 1e-6);
    }
}

TEST_CASE("lookup_bound") {
    CHECK(lookup_bound(build_scenario("kcbs"), "nchv").value == -3);
    CHECK(std::abs(lookup_bound(build_scenario("kcbs"), "bloch", 0, 16).value + 5 * (1 + std::sqrt(5.0)) / 4) <
          1e-6);
    CHECK(std::abs(lookup_bound(build_scenario("pm"), "dim", 3).value - 4 * (std::sqrt(5.0) - 1)) < 1e-12);
    CHECK(lookup_bound(build_scenario("pm"), "dim", 4).value == 6);
    CHECK(std::abs(lookup_bound(build_scenario("chi_n", 6), "dim", 4).value + 3 * std::sqrt(3.0)) < 1e-12);
    CHECK(lookup_bound(build_scenario("zeta_n", 5), "dim", 2).value == 3);
    CHECK(error_code([] { lookup_bound(build_scenario("pm"), "quantum"); }) == ErrorCode::BadParameter);
    CHECK(error_code([] { lookup_bound(build_scenario("eta_n", 4), "bloch"); }) ==
          ErrorCode::UnsupportedCombination);
}
