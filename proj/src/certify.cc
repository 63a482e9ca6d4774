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

#include "ctxdim/certify.h"

#include <cmath>
#include <sstream>

#include "ctxdim/bloch.h"
#include "ctxdim/errors.h"
#include "ctxdim/optimizer.h"

namespace ctxdim {

namespace {

std::string trim(const std::string &s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) {
        return "";
    }
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

Tier make_tier(const Scenario &sc, int dim, double bound, AssumptionFlags flags, Provenance prov, std::string note) {
    Tier t;
    t.dim = dim;
    t.bound = bound;
    t.record.scenario = sc.name;
    t.record.dim = dim;
    t.record.flags = flags;
    t.record.value = bound;
    t.record.provenance = prov;
    t.record.note = std::move(note);
    return t;
}

[[noreturn]] void unsupported(const Scenario &sc, const AssumptionSet &a, const std::string &why) {
    throw Error(ErrorCode::UnsupportedCombination, sc.name + " with " + a.to_string() + ": " + why);
}

}  // namespace

AssumptionSet AssumptionSet::parse(const std::string &flags) {
    AssumptionSet a;
    std::stringstream ss(flags);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty() || tok == "none") {
            continue;
        }
        if (tok == "commuting") {
            a.commuting = true;
        } else if (tok == "projective") {
            a.projective = true;
        } else if (tok == "distinct") {
            a.distinct = true;
        } else if (tok == "non-identity" || tok == "non_identity") {
            a.non_identity = true;
        } else if (tok == "prop12" || tok == "prop13") {
            NoiseClass c = parse_noise_class(tok);
            if (a.noise && *a.noise != c) {
                throw Error(ErrorCode::BadParameter, "at most one noise model may be assumed");
            }
            a.noise = c;
        } else if (tok.rfind("ordering=", 0) == 0) {
            std::string o = tok.substr(9);
            if (o != "pm" && o != "pm_tilde") {
                throw Error(ErrorCode::BadParameter, "ordering must be pm or pm_tilde, got '" + o + "'");
            }
            a.ordering = o;
        } else {
            throw Error(ErrorCode::BadParameter, "unknown assumption '" + tok + "'");
        }
    }
    a.validate();
    return a;
}

std::string AssumptionSet::to_string() const {
    std::vector<std::string> parts;
    if (commuting) {
        parts.push_back("commuting");
    }
    if (projective) {
        parts.push_back("projective");
    }
    if (distinct) {
        parts.push_back("distinct");
    }
    if (non_identity) {
        parts.push_back("non-identity");
    }
    if (noise) {
        parts.push_back(noise_class_name(*noise));
    }
    if (ordering) {
        parts.push_back("ordering=" + *ordering);
    }
    if (parts.empty()) {
        return "none";
    }
    std::string out = parts[0];
    for (size_t i = 1; i < parts.size(); i++) {
        out += "," + parts[i];
    }
    return out;
}

void AssumptionSet::validate() const {
    if (noise && projective) {
        throw Error(ErrorCode::BadParameter, "a noise model and the projective assumption exclude each other");
    }
}

std::vector<Tier> threshold_table(const Scenario &sc, const AssumptionSet &a) {
    a.validate();
    AssumptionFlags cp;
    cp.commuting = true;
    cp.projective = true;
    bool pm_family = sc.name == "pm" || sc.name == "pm_tilde";
    if (a.ordering && !(pm_family && *a.ordering == sc.name)) {
        throw Error(ErrorCode::BadParameter, "ordering " + *a.ordering + " does not match scenario " + sc.name);
    }
    std::vector<Tier> tiers;
    if (sc.name == "kcbs" || sc.name == "chi_n") {
        if (a.noise || !(a.commuting && a.projective)) {
            unsupported(sc, a, "without commuting projective measurements a qubit already reaches the "
                               "commuting quantum extremum");
        }
        int n = sc.name == "kcbs" ? 5 : *sc.n;
        tiers.push_back(make_tier(sc, 2, -(n - 2), cp, Provenance::Enumeration, "replacement search, dimension 2"));
        if (sc.name == "chi_n" && n % 2 == 0) {
            if (a.distinct && a.non_identity) {
                AssumptionFlags f = cp;
                f.distinct = true;
                f.non_identity = true;
                tiers.push_back(make_tier(sc, 3, -(n - 2), f, Provenance::Enumeration,
                                          "replacement search, dimension 3, distinct non-identity pairs"));
            } else {
                tiers.push_back(make_tier(sc, 3, -1 + omega(n - 1), cp, Provenance::Enumeration,
                                          "replacement search, dimension 3"));
            }
        }
        return tiers;
    }
    if (pm_family) {
        bool tilde = sc.name == "pm_tilde";
        double qubit = tilde ? 1 + std::sqrt(9 + 6 * std::sqrt(3.0)) : 3 * std::sqrt(3.0);
        AssumptionFlags none;
        if (a.noise == NoiseClass::Prop13) {
            unsupported(sc, a, "fixed-assignment corners reach the algebraic maximum 6 on a qubit");
        }
        if (a.noise == NoiseClass::Prop12) {
            tiers.push_back(make_tier(sc, 2, qubit, none, Provenance::Optimizer, "noise corners, prop12"));
            return tiers;
        }
        if (a.commuting && a.projective) {
            tiers.push_back(make_tier(sc, 2, 4, cp, Provenance::Enumeration, "deterministic assignments"));
            tiers.push_back(make_tier(sc, 3, 4 * (std::sqrt(5.0) - 1), cp, Provenance::Enumeration,
                                      "replacement search, dimension 3"));
            return tiers;
        }
        if (a.projective) {
            AssumptionFlags p;
            p.projective = true;
            p.non_identity = a.non_identity;
            if (a.non_identity || tilde) {
                tiers.push_back(make_tier(sc, 2, qubit, p, Provenance::Optimizer, "Bloch geometry"));
            } else {
                // An identity observable in a middle slot lifts pm to the pm_tilde value.
                tiers.push_back(make_tier(sc, 2, 1 + std::sqrt(9 + 6 * std::sqrt(3.0)), p, Provenance::Optimizer,
                                          "Bloch geometry with identity observables"));
            }
            return tiers;
        }
        unsupported(sc, a, "no bound without projective measurements or a noise model");
    }
    unsupported(sc, a, "no certified thresholds for this scenario");
}

BoundRecord lookup_bound(
    const Scenario &sc, const std::string &kind, int dim, int restarts, std::uint64_t seed, int threads) {
    bool pm_family = sc.name == "pm" || sc.name == "pm_tilde" || sc.name == "pm_bad_order";
    bool cycle = sc.name == "kcbs" || sc.name == "chi_n";
    int n = sc.name == "kcbs" ? 5 : sc.n.value_or(0);
    if (kind == "nchv") {
        return nchv_bound(sc);
    }
    BoundRecord r;
    r.scenario = sc.name;
    r.note = sc.n ? "N=" + std::to_string(*sc.n) : "";
    if (kind == "bloch") {
        r.dim = 2;
        r.flags.projective = true;
        r.flags.non_identity = true;
        r.provenance = Provenance::Optimizer;
        if (cycle) {
            std::vector<int> signs = cycle_signs(n);
            r.value = minimize_chain(n, signs, std::vector<double>(n, 1.0), restarts, seed, threads).value;
            return r;
        }
        if (pm_family) {
            r.value = pm_bloch_max(sc, {}, restarts, seed, threads).value;
            return r;
        }
        throw Error(ErrorCode::UnsupportedCombination, "no qubit geometry bound for " + sc.name);
    }
    if (kind != "dim") {
        throw Error(ErrorCode::BadParameter, "bound kind must be nchv, dim or bloch");
    }
    check_dim(dim);
    r.dim = dim;
    r.flags.commuting = true;
    r.flags.projective = true;
    r.provenance = Provenance::ClosedForm;
    if (cycle) {
        r.value = chi_commuting_bound(n, dim);
        return r;
    }
    if (pm_family) {
        r.value = dim == 2 ? 4.0 : dim == 3 ? 4 * (std::sqrt(5.0) - 1) : 6.0;
        return r;
    }
    if ((sc.name == "eta_n" || sc.name == "zeta_n") && dim <= 3) {
        return lemma9_bounds(sc.name == "eta_n" ? "eta" : "zeta", n, dim);
    }
    throw Error(ErrorCode::UnsupportedCombination, "no dimension bound for " + sc.name + " in dimension " +
                                                       std::to_string(dim));
}

CertificationResult certify(const Scenario &sc, const AssumptionSet &a, double value, double sigma, double k) {
    if (!std::isfinite(value) || !std::isfinite(sigma) || sigma < 0) {
        throw Error(ErrorCode::BadParameter, "value must be finite and sigma finite and nonnegative");
    }
    if (!std::isfinite(k) || k < 0) {
        throw Error(ErrorCode::BadParameter, "k must be finite and nonnegative");
    }
    CertificationResult res;
    res.scenario = sc.name;
    res.assumptions = a;
    res.value = value;
    res.sigma = sigma;
    res.k = k;
    res.tiers = threshold_table(sc, a);
    int dir = sc.direction_sign();
    res.threshold = res.tiers.front();
    for (const Tier &t : res.tiers) {
        double excess = dir * (value - t.bound);
        if (excess > k * sigma) {
            res.certified_dim = t.dim + 1;
            res.threshold = t;
        }
    }
    if (sigma > 0) {
        res.margin = dir * (value - res.threshold.bound) / sigma;
    }
    return res;
}

}  // namespace ctxdim
