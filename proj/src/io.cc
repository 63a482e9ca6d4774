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

#include "ctxdim/io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ctxdim/errors.h"

namespace ctxdim {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json number(double v) {
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

const Json &field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw Error(ErrorCode::BadInput, std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

double real_of(const Json &j, const char *what) {
    if (!j.is_number()) {
        throw Error(ErrorCode::BadInput, std::string(what) + " must be a number");
    }
    return j.get<double>();
}

int int_of(const Json &j, const char *what) {
    if (!j.is_number_integer()) {
        throw Error(ErrorCode::BadInput, std::string(what) + " must be an integer");
    }
    return j.get<int>();
}

std::string string_of(const Json &j, const char *what) {
    if (!j.is_string()) {
        throw Error(ErrorCode::BadInput, std::string(what) + " must be a string");
    }
    return j.get<std::string>();
}

Json flags_json(const AssumptionFlags &f) {
    return f.to_string();
}

Json corner_json(const CornerCase &c) {
    Json out = Json::object();
    for (const auto &[label, b] : c) {
        out[label] = behavior_name(b);
    }
    return out;
}

Json vectors_json(const std::map<std::string, Vec3> &m) {
    Json out = Json::object();
    for (const auto &[label, v] : m) {
        out[label] = encode(v);
    }
    return out;
}

}  // namespace

Json encode(const Mat &m) {
    Json re = Json::array();
    Json im = Json::array();
    for (int i = 0; i < m.rows(); i++) {
        Json rr = Json::array();
        Json ir = Json::array();
        for (int k = 0; k < m.cols(); k++) {
            rr.push_back(number(m(i, k).real()));
            ir.push_back(number(m(i, k).imag()));
        }
        re.push_back(rr);
        im.push_back(ir);
    }
    return Json{{"dim", m.rows()}, {"re", re}, {"im", im}};
}

Json encode(const Vec3 &v) {
    return Json::array({number(v[0]), number(v[1]), number(v[2])});
}

Json encode(const QuantumState &s) {
    return encode(s.rho);
}

Json encode(const ObservableAssignment &obs) {
    Json out = Json::object();
    for (const auto &[label, o] : obs) {
        out[label] = encode(o.op);
    }
    return out;
}

Json encode(const Scenario &s) {
    Json ctx = Json::array();
    for (const auto &c : s.contexts) {
        ctx.push_back(Json{{"labels", c.labels}, {"coef", c.coef}});
    }
    Json out{{"name", s.name}, {"contexts", ctx}, {"direction", direction_name(s.direction)}};
    if (s.n) {
        out["n"] = *s.n;
    }
    return out;
}

Json encode(const NoiseModel &m) {
    Json out = Json::object();
    for (const auto &[label, ln] : m.labels) {
        out[label] = Json{{"p_proj", ln.p_proj},
                          {"p_fixed", ln.p_fixed},
                          {"fixed_sign", ln.fixed_sign},
                          {"p_random", ln.p_random},
                          {"x_bloch", encode(ln.x_bloch)}};
    }
    return out;
}

Json encode(const BoundRecord &r) {
    Json out{{"scenario", r.scenario},
             {"flags", flags_json(r.flags)},
             {"value", number(r.value)},
             {"provenance", provenance_name(r.provenance)},
             {"note", r.note}};
    out["dim"] = r.dim > 0 ? Json(r.dim) : Json(nullptr);
    return out;
}

Json encode(const EnumerationResult &r, bool stats) {
    Json out{{"bound", encode(r.bound)}, {"raw_cases", r.stats.raw_cases}, {"witness_rules", r.witness_rules}};
    if (stats) {
        Json classes = Json::object();
        for (const auto &[k, v] : r.stats.classes) {
            classes[k] = v;
        }
        out["consistent_cases"] = r.stats.consistent_cases;
        out["classes"] = classes;
    }
    return out;
}

Json encode(const ChainResult &r) {
    Json vs = Json::array();
    for (const auto &v : r.vectors) {
        vs.push_back(encode(v));
    }
    return Json{
        {"value", number(r.value)}, {"vectors", vs}, {"out_of_plane", number(r.out_of_plane)}, {"planar", r.planar}};
}

Json encode(const PmBlochResult &r) {
    return Json{{"value", number(r.value)}, {"vectors", vectors_json(r.vectors)}, {"state", encode(r.state)}};
}

Json encode(const SearchResult &r) {
    return Json{{"value", number(r.value)},
                {"observables", encode(r.observables)},
                {"state", encode(r.state)},
                {"feasibility",
                 Json{{"max_commutator", number(r.feasibility.max_commutator)},
                      {"min_separation", number(r.feasibility.min_separation)},
                      {"feasible", r.feasibility.feasible}}},
                {"iterations", r.iterations},
                {"restart", r.restart},
                {"feasible_restarts", r.feasible_restarts}};
}

Json encode(const std::vector<HierarchyRow> &rows) {
    Json out = Json::array();
    for (const auto &row : rows) {
        out.push_back(Json{{"n", row.n},
                           {"dim", row.dim},
                           {"bound", encode(row.bound)},
                           {"attained", row.attained ? number(*row.attained) : Json(nullptr)}});
    }
    return out;
}

Json encode(const CornerBoundResult &r) {
    return Json{{"value", number(r.value)},
                {"worst_corner", corner_json(r.worst_corner)},
                {"vectors", vectors_json(r.vectors)},
                {"state", encode(r.state)},
                {"corners", r.corners},
                {"distinct_forms", r.distinct_forms},
                {"optimized_forms", r.optimized_forms}};
}

Json encode(const Tier &t) {
    return Json{{"dim", t.dim}, {"bound", number(t.bound)}, {"certifies", t.dim + 1}, {"record", encode(t.record)}};
}

Json encode(const CertificationResult &r) {
    Json tiers = Json::array();
    for (const auto &t : r.tiers) {
        tiers.push_back(encode(t));
    }
    return Json{{"scenario", r.scenario},
                {"assumptions", r.assumptions.to_string()},
                {"value", number(r.value)},
                {"sigma", number(r.sigma)},
                {"k", number(r.k)},
                {"certified_dim", r.certified_dim},
                {"threshold", number(r.threshold.bound)},
                {"threshold_record", encode(r.threshold.record)},
                {"margin", r.margin ? number(*r.margin) : Json(nullptr)},
                {"tiers", tiers}};
}

Json encode(const ValidationReport &r) {
    Json ctx = Json::array();
    for (const auto &c : r.contexts) {
        ctx.push_back(Json{{"labels", c.labels}, {"max_commutator", number(c.max_commutator)}, {"pass", c.pass}});
    }
    return Json{{"pass", r.pass}, {"max_commutator", number(r.max_commutator)}, {"contexts", ctx}};
}

Mat decode_operator(const Json &j) {
    int d = int_of(field(j, "dim"), "dim");
    if (d < 1) {
        throw Error(ErrorCode::BadInput, "dim must be positive");
    }
    const Json &re = field(j, "re");
    const Json &im = field(j, "im");
    if (!re.is_array() || !im.is_array() || (int)re.size() != d || (int)im.size() != d) {
        throw Error(ErrorCode::BadInput, "re and im must have dim rows");
    }
    Mat m(d, d);
    for (int i = 0; i < d; i++) {
        if (!re[i].is_array() || !im[i].is_array() || (int)re[i].size() != d || (int)im[i].size() != d) {
            throw Error(ErrorCode::BadInput, "re and im rows must have dim entries");
        }
        for (int k = 0; k < d; k++) {
            m(i, k) = Complex(real_of(re[i][k], "re entry"), real_of(im[i][k], "im entry"));
        }
    }
    return m;
}

QuantumState decode_state(const Json &j) {
    const Json &re = field(j, "re");
    if (re.is_array() && !re.empty() && re[0].is_number()) {
        int d = int_of(field(j, "dim"), "dim");
        const Json &im = field(j, "im");
        if ((int)re.size() != d || !im.is_array() || (int)im.size() != d) {
            throw Error(ErrorCode::BadInput, "state vector must have dim entries");
        }
        CVec psi(d);
        for (int i = 0; i < d; i++) {
            psi[i] = Complex(real_of(re[i], "re entry"), real_of(im[i], "im entry"));
        }
        if (psi.norm() < 1e-12) {
            throw Error(ErrorCode::NotState, "state vector is zero");
        }
        return QuantumState::pure(psi / psi.norm());
    }
    return QuantumState::from_matrix(decode_operator(j));
}

ObservableAssignment decode_assignment(const Json &j, double tol) {
    if (!j.is_object()) {
        throw Error(ErrorCode::BadInput, "observables must be an object mapping labels to operators");
    }
    ObservableAssignment out;
    for (const auto &[label, op] : j.items()) {
        out[label] = classify_dichotomic(decode_operator(op), tol);
    }
    return out;
}

Scenario decode_scenario(const Json &j) {
    std::string name = string_of(field(j, "name"), "name");
    std::optional<int> n;
    if (j.contains("n") && !j.at("n").is_null()) {
        n = int_of(j.at("n"), "n");
    }
    if (!j.contains("contexts")) {
        return build_scenario(name, n.value_or(0));
    }
    const Json &cj = j.at("contexts");
    if (!cj.is_array()) {
        throw Error(ErrorCode::BadInput, "contexts must be an array");
    }
    std::vector<Context> contexts;
    for (const auto &c : cj) {
        Context ctx;
        const Json &labels = field(c, "labels");
        if (!labels.is_array()) {
            throw Error(ErrorCode::BadInput, "context labels must be an array");
        }
        for (const auto &l : labels) {
            ctx.labels.push_back(string_of(l, "label"));
        }
        ctx.coef = c.contains("coef") ? int_of(c.at("coef"), "coef") : 1;
        contexts.push_back(ctx);
    }
    Direction dir = parse_direction(string_of(field(j, "direction"), "direction"));
    return make_scenario(name, contexts, dir, n);
}

NoiseModel decode_noise_model(const Json &j) {
    if (!j.is_object()) {
        throw Error(ErrorCode::BadInput, "noise model must be an object mapping labels to entries");
    }
    NoiseModel m;
    for (const auto &[label, e] : j.items()) {
        LabelNoise ln;
        if (!e.is_object()) {
            throw Error(ErrorCode::BadInput, "noise entry for '" + label + "' must be an object");
        }
        ln.p_proj = e.contains("p_proj") ? real_of(e.at("p_proj"), "p_proj") : 1.0;
        ln.p_fixed = e.contains("p_fixed") ? real_of(e.at("p_fixed"), "p_fixed") : 0.0;
        ln.fixed_sign = e.contains("fixed_sign") ? int_of(e.at("fixed_sign"), "fixed_sign") : 1;
        ln.p_random = e.contains("p_random") ? real_of(e.at("p_random"), "p_random") : 0.0;
        if (e.contains("x_bloch")) {
            const Json &x = e.at("x_bloch");
            if (!x.is_array() || x.size() != 3) {
                throw Error(ErrorCode::BadInput, "x_bloch must have three entries");
            }
            ln.x_bloch = Vec3(real_of(x[0], "x_bloch"), real_of(x[1], "x_bloch"), real_of(x[2], "x_bloch"));
        }
        m.labels[label] = ln;
    }
    m.validate();
    return m;
}

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::BadInput, "cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::exception &e) {
        throw Error(ErrorCode::BadInput, "invalid JSON in '" + path + "': " + e.what());
    }
}

std::string hierarchy_csv(const std::vector<HierarchyRow> &rows) {
    std::ostringstream out;
    out << "n,dim,flags,bound,attained\n";
    for (const auto &r : rows) {
        out << r.n << "," << r.dim << "," << r.bound.flags.to_string() << "," << fmt(r.bound.value) << ","
            << (r.attained ? fmt(*r.attained) : "") << "\n";
    }
    return out.str();
}

std::string tiers_csv(const std::vector<Tier> &tiers) {
    std::ostringstream out;
    out << "dim,bound,certifies,provenance,note\n";
    for (const auto &t : tiers) {
        out << t.dim << "," << fmt(t.bound) << "," << t.dim + 1 << "," << provenance_name(t.record.provenance) << ",\""
            << t.record.note << "\"\n";
    }
    return out.str();
}

}  // namespace ctxdim
