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

#include "ctxdim/classical.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "ctxdim/parallel.h"

namespace ctxdim {

const char *provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Enumeration:
            return "enumeration";
        case Provenance::ClosedForm:
            return "closed-form";
        case Provenance::Optimizer:
            return "optimizer";
    }
    return "closed-form";
}

std::string AssumptionFlags::to_string() const {
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
    if (parts.empty()) {
        return "none";
    }
    std::string out = parts[0];
    for (size_t i = 1; i < parts.size(); i++) {
        out += "+" + parts[i];
    }
    return out;
}

std::string bound_table_csv(const std::vector<BoundRecord> &rows) {
    std::ostringstream out;
    out << "scenario,dim,flags,bound,provenance\n";
    char buf[64];
    for (const auto &r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g", r.value);
        out << r.scenario << "," << (r.dim == 0 ? std::string("any") : std::to_string(r.dim)) << ","
            << r.flags.to_string() << "," << buf << "," << provenance_name(r.provenance) << "\n";
    }
    return out.str();
}

BoundRecord nchv_bound(const Scenario &scenario) {
    int n = (int)scenario.labels.size();
    if (n > kMaxNchvLabels) {
        throw Error(ErrorCode::TooManyLabels, std::to_string(n) + " labels exceed the enumeration cap of 20");
    }
    // Each context is a coefficient times the parity of a bit mask.
    std::vector<std::pair<std::uint32_t, int>> terms;
    for (const auto &ctx : scenario.contexts) {
        std::uint32_t mask = 0;
        for (const auto &l : ctx.labels) {
            mask ^= 1u << scenario.label_index(l);
        }
        terms.push_back({mask, ctx.coef});
    }
    int dir = scenario.direction_sign();
    int best = std::numeric_limits<int>::min();
    for (std::uint32_t a = 0; a < (1u << n); a++) {
        int v = 0;
        for (const auto &[mask, coef] : terms) {
            v += (std::popcount(a & mask) & 1) ? -coef : coef;
        }
        best = std::max(best, dir * v);
    }
    BoundRecord r;
    r.scenario = scenario.name;
    r.value = double(dir * best);
    r.provenance = Provenance::Enumeration;
    return r;
}

const char *case_tag_name(CaseTag tag) {
    switch (tag) {
        case CaseTag::ObsToIdentity:
            return "ObsToIdentity";
        case CaseTag::PairToIdentity:
            return "PairToIdentity";
        case CaseTag::TripleToIdentity:
            return "TripleToIdentity";
    }
    return "ObsToIdentity";
}

static int identity_sign(const Mat &m, double tol) {
    int d = (int)m.rows();
    for (int s : {1, -1}) {
        if (max_abs(m - double(s) * Mat::Identity(d, d)) <= tol) {
            return s;
        }
    }
    return 0;
}

std::vector<CaseMatch> classify_commuting_set(const std::vector<Observable> &obs, double tol) {
    if (obs.size() != 2 && obs.size() != 3) {
        throw Error(ErrorCode::BadParameter, "expected two or three observables");
    }
    int want = (int)obs.size();
    for (const auto &o : obs) {
        if (o.dim() != want) {
            throw Error(ErrorCode::WrongDimension, "pairs need dimension 2 and triples dimension 3");
        }
        if (o.kind == ObservableKind::General) {
            throw Error(ErrorCode::UnsupportedKind, "general observables are not dichotomic projective");
        }
    }
    for (size_t i = 0; i < obs.size(); i++) {
        for (size_t j = i + 1; j < obs.size(); j++) {
            if (commutator_norm(obs[i].op, obs[j].op) > std::max(tol, kCommutationTol)) {
                throw Error(ErrorCode::NotCommuting, "observables do not commute");
            }
        }
    }
    std::vector<CaseMatch> out;
    for (int i = 0; i < want; i++) {
        if (int s = identity_sign(obs[i].op, tol)) {
            out.push_back({CaseTag::ObsToIdentity, {i}, s});
        }
    }
    for (int i = 0; i < want; i++) {
        for (int j = i + 1; j < want; j++) {
            if (int s = identity_sign(obs[i].op * obs[j].op, tol)) {
                out.push_back({CaseTag::PairToIdentity, {i, j}, s});
            }
        }
    }
    if (want == 3) {
        if (int s = identity_sign(obs[0].op * obs[1].op * obs[2].op, tol)) {
            out.push_back({CaseTag::TripleToIdentity, {0, 1, 2}, s});
        }
    }
    return out;
}

double omega(int n) {
    if (n < 3) {
        throw Error(ErrorCode::BadParameter, "N must be at least 3");
    }
    double c = std::cos(std::numbers::pi / n);
    if (n % 2) {
        return -(3 * n * c - n) / (1 + c);
    }
    return -n * c;
}

double zeta_bound(int n, int dim) {
    if (n < 3) {
        throw Error(ErrorCode::BadParameter, "N must be at least 3");
    }
    if (dim == 2) {
        return n - 2;
    }
    if (dim == 3) {
        return n % 2 ? -omega(n) : 1 - omega(n - 1);
    }
    throw Error(ErrorCode::BadParameter, "dimension must be 2 or 3");
}

BoundRecord lemma9_bounds(const std::string &form, int n, int dim) {
    if (n < 3) {
        throw Error(ErrorCode::BadParameter, "N must be at least 3");
    }
    if (dim != 2 && dim != 3) {
        throw Error(ErrorCode::BadParameter, "dimension must be 2 or 3");
    }
    BoundRecord r;
    r.dim = dim;
    r.flags.commuting = true;
    r.flags.projective = true;
    r.provenance = Provenance::ClosedForm;
    if (form == "eta") {
        r.scenario = "eta_n";
        r.value = n - 1;
        r.dim = 0;
    } else if (form == "zeta") {
        r.scenario = "zeta_n";
        r.value = zeta_bound(n, dim);
    } else {
        throw Error(ErrorCode::BadParameter, "form must be eta or zeta");
    }
    r.note = "N=" + std::to_string(n);
    return r;
}

namespace {

enum class RuleKind { ToIdentity, Equal, Generic };

struct Rule {
    RuleKind kind;
    int a;
    int b;
    int sign;
};

std::vector<Rule> rules_for(const std::vector<int> &ctx, bool with_generic, bool generic_only) {
    std::vector<Rule> out;
    if (generic_only) {
        out.push_back({RuleKind::Generic, ctx[0], ctx[1], 0});
        return out;
    }
    for (int x : ctx) {
        for (int s : {1, -1}) {
            out.push_back({RuleKind::ToIdentity, x, -1, s});
        }
    }
    for (size_t i = 0; i < ctx.size(); i++) {
        for (size_t j = i + 1; j < ctx.size(); j++) {
            for (int s : {1, -1}) {
                out.push_back({RuleKind::Equal, ctx[i], ctx[j], s});
            }
        }
    }
    if (with_generic) {
        out.push_back({RuleKind::Generic, ctx[0], ctx[1], 0});
    }
    return out;
}

std::string describe(const Rule &r, const std::vector<std::string> &labels) {
    std::string sign = r.sign > 0 ? "+" : "-";
    switch (r.kind) {
        case RuleKind::ToIdentity:
            return labels[r.a] + " -> " + sign + "1";
        case RuleKind::Equal:
            return labels[r.b] + " -> " + sign + labels[r.a];
        case RuleKind::Generic:
            return labels[r.a] + "," + labels[r.b] + " generic";
    }
    return "";
}

constexpr int kMaxNodes = 24;

// Signed union-find: value(x) = parity(x) * value(parent(x)); node `one` is +1.
struct SignedUnionFind {
    int parent[kMaxNodes];
    int parity[kMaxNodes];
    int one;

    void reset(int n) {
        one = n;
        for (int i = 0; i <= n; i++) {
            parent[i] = i;
            parity[i] = 1;
        }
    }
    std::pair<int, int> find(int x) {
        int p = 1;
        int r = x;
        while (parent[r] != r) {
            p *= parity[r];
            r = parent[r];
        }
        // Compress.
        int q = p;
        while (parent[x] != x) {
            int nx = parent[x];
            int px = parity[x];
            parent[x] = r;
            parity[x] = q;
            q *= px;
            x = nx;
        }
        return {r, p};
    }
    // Imposes value(x) = s * value(y); false on contradiction.
    bool unite(int x, int y, int s) {
        auto [rx, px] = find(x);
        auto [ry, py] = find(y);
        if (rx == ry) {
            return px == s * py;
        }
        if (rx == one) {
            std::swap(rx, ry);
        }
        parent[rx] = ry;
        parity[rx] = px * s * py;
        return true;
    }
};

struct ReducedForm {
    int n = 0;
    double constant = 0;
    std::vector<double> single;
    std::vector<double> edge;
    std::vector<char> generic;
    std::vector<char> alive;

    void reset(int nodes) {
        n = nodes;
        constant = 0;
        single.assign(n, 0);
        edge.assign(n * n, 0);
        generic.assign(n * n, 0);
        alive.assign(n, 0);
    }
    double &e(int a, int b) {
        return edge[a * n + b];
    }
};

struct FormBound {
    double value;
    std::string cls;
};

// Bounds const + sum s_r <R> + sum e_rr' <R R'> for dichotomic commuting pairs.
FormBound bound_form(ReducedForm &f, int dim, bool generic_rule) {
    int n = f.n;
    std::vector<int> deg(n, 0);
    for (int a = 0; a < n; a++) {
        f.alive[a] = f.single[a] != 0;
        for (int b = 0; b < n; b++) {
            if (a != b && f.e(a, b) != 0) {
                deg[a]++;
                f.alive[a] = 1;
            }
        }
    }
    double c = f.constant;
    bool peeled_any = false;
    // A leaf L with neighbor P obeys e P L + s L <= |e P + s| = a + b P.
    bool progress = true;
    while (progress) {
        progress = false;
        for (int x = 0; x < n; x++) {
            if (!f.alive[x] || deg[x] > 1) {
                continue;
            }
            double s = f.single[x];
            if (deg[x] == 0) {
                c += std::abs(s);
            } else {
                int p = 0;
                while (p == x || f.e(x, p) == 0) {
                    p++;
                }
                double e = f.e(x, p);
                double hi = std::abs(e + s);
                double lo = std::abs(s - e);
                c += (hi + lo) / 2;
                f.single[p] += (hi - lo) / 2;
                f.e(x, p) = f.e(p, x) = 0;
                deg[p]--;
                if (deg[p] == 0 && f.single[p] == 0) {
                    f.alive[p] = 0;
                }
            }
            f.single[x] = 0;
            f.alive[x] = 0;
            deg[x] = 0;
            peeled_any = true;
            progress = true;
        }
    }
    std::vector<int> core;
    for (int x = 0; x < n; x++) {
        if (f.alive[x]) {
            core.push_back(x);
        }
    }
    if (core.empty()) {
        return {c, peeled_any ? "tree" : "constant"};
    }
    bool all_deg2 = std::all_of(core.begin(), core.end(), [&](int x) { return deg[x] == 2; });
    if (all_deg2) {
        // Walk the cycle through core[0].
        int start = core[0];
        int prev = -1;
        int cur = start;
        int len = 0;
        int sign = 1;
        double extra = 0;
        bool all_generic = true;
        do {
            int next = -1;
            for (int y = 0; y < n; y++) {
                if (y != cur && y != prev && f.e(cur, y) != 0) {
                    next = y;
                    break;
                }
            }
            if (next < 0) {
                next = prev;
            }
            double e = f.e(cur, next);
            sign *= e > 0 ? 1 : -1;
            extra += std::abs(e) - 1 + std::abs(f.single[cur]);
            all_generic = all_generic && f.generic[cur * n + next];
            prev = cur;
            cur = next;
            len++;
        } while (cur != start && len <= n);
        if (len == (int)core.size() && len >= 3) {
            if (sign > 0) {
                return {c + extra + len, "cycle_unfrustrated_" + std::to_string(len)};
            }
            if (generic_rule && all_generic && len % 2 == 0) {
                return {c + extra + len - 2, "generic_cycle_" + std::to_string(len)};
            }
            return {c + extra + zeta_bound(len, dim), "zeta_" + std::to_string(len)};
        }
    }
    double triv = c;
    for (int x : core) {
        triv += std::abs(f.single[x]);
        for (int y = x + 1; y < n; y++) {
            triv += std::abs(f.e(x, y));
        }
    }
    return {triv, "unrecognized"};
}

struct ChunkResult {
    double best = -std::numeric_limits<double>::infinity();
    std::uint64_t best_index = 0;
    std::uint64_t consistent = 0;
    std::map<std::string, std::uint64_t> classes;
};

}  // namespace

EnumerationResult enumerate_replacements(const Scenario &scenario, int dim, int threads, bool distinct_non_identity) {
    bool pair_family = scenario.name == "kcbs" || scenario.name == "chi_n";
    bool pm_family = scenario.name == "pm" || scenario.name == "pm_tilde";
    if (!((pair_family && (dim == 2 || (dim == 3 && scenario.name == "chi_n"))) || (pm_family && dim == 3))) {
        throw Error(
            ErrorCode::UnsupportedScenario,
            "replacement search supports kcbs/chi_n in dimension 2, chi_n in dimension 3 and pm in dimension 3");
    }
    if (distinct_non_identity && !(scenario.name == "chi_n" && dim == 3)) {
        throw Error(ErrorCode::UnsupportedScenario, "the distinct non-identity search applies to chi_n in dimension 3");
    }
    int n = (int)scenario.labels.size();
    if (n + 1 > kMaxNodes) {
        throw Error(ErrorCode::TooManyLabels, "too many labels for the replacement search");
    }
    bool with_generic = pair_family && dim == 3;
    int dir = scenario.direction_sign();
    std::vector<std::vector<int>> ctx_idx;
    std::vector<int> coefs;
    std::vector<std::vector<Rule>> rules;
    std::uint64_t raw = 1;
    for (const auto &ctx : scenario.contexts) {
        std::vector<int> idx;
        for (const auto &l : ctx.labels) {
            idx.push_back(scenario.label_index(l));
        }
        ctx_idx.push_back(idx);
        coefs.push_back(dir * ctx.coef);
        rules.push_back(rules_for(idx, with_generic, distinct_non_identity));
        raw *= rules.back().size();
    }
    size_t m = rules.size();

    const std::uint64_t chunk = 1 << 14;
    std::uint64_t chunks = (raw + chunk - 1) / chunk;
    std::vector<ChunkResult> partial(chunks);
    parallel_for((std::int64_t)chunks, threads, [&](std::int64_t ci) {
        ChunkResult &out = partial[ci];
        SignedUnionFind uf;
        ReducedForm form;
        std::vector<int> choice(m);
        std::uint64_t lo = ci * chunk;
        std::uint64_t hi = std::min(raw, lo + chunk);
        for (std::uint64_t idx = lo; idx < hi; idx++) {
            std::uint64_t t = idx;
            for (size_t k = m; k-- > 0;) {
                choice[k] = (int)(t % rules[k].size());
                t /= rules[k].size();
            }
            uf.reset(n);
            bool ok = true;
            for (size_t k = 0; k < m && ok; k++) {
                const Rule &r = rules[k][choice[k]];
                if (r.kind == RuleKind::ToIdentity) {
                    ok = uf.unite(r.a, uf.one, r.sign);
                } else if (r.kind == RuleKind::Equal) {
                    ok = uf.unite(r.b, r.a, r.sign);
                }
            }
            // A generic pair has neither member proportional to the identity
            // and no product proportional to the identity.
            for (size_t k = 0; k < m && ok; k++) {
                const Rule &r = rules[k][choice[k]];
                if (r.kind == RuleKind::Generic) {
                    int ra = uf.find(r.a).first;
                    int rb = uf.find(r.b).first;
                    ok = ra != uf.one && rb != uf.one && ra != rb;
                }
            }
            if (!ok) {
                continue;
            }
            out.consistent++;
            form.reset(n);
            for (size_t k = 0; k < m; k++) {
                int sign = coefs[k];
                int roots[3];
                int nr = 0;
                for (int x : ctx_idx[k]) {
                    auto [r, p] = uf.find(x);
                    sign *= p;
                    if (r == uf.one) {
                        continue;
                    }
                    int found = -1;
                    for (int q = 0; q < nr; q++) {
                        if (roots[q] == r) {
                            found = q;
                        }
                    }
                    if (found >= 0) {
                        roots[found] = roots[--nr];
                    } else {
                        roots[nr++] = r;
                    }
                }
                if (nr == 0) {
                    form.constant += sign;
                } else if (nr == 1) {
                    form.single[roots[0]] += sign;
                } else if (nr == 2) {
                    form.e(roots[0], roots[1]) += sign;
                    form.e(roots[1], roots[0]) += sign;
                    if (rules[k][choice[k]].kind == RuleKind::Generic) {
                        form.generic[roots[0] * n + roots[1]] = 1;
                        form.generic[roots[1] * n + roots[0]] = 1;
                    }
                } else {
                    throw Error(ErrorCode::UnsupportedScenario, "a context kept three free observables");
                }
            }
            FormBound fb = bound_form(form, dim, with_generic);
            out.classes[fb.cls]++;
            if (fb.value > out.best + 1e-12) {
                out.best = fb.value;
                out.best_index = idx;
            }
        }
    });

    EnumerationResult res;
    res.stats.raw_cases = raw;
    double best = -std::numeric_limits<double>::infinity();
    std::uint64_t best_index = 0;
    for (const auto &p : partial) {
        res.stats.consistent_cases += p.consistent;
        for (const auto &[k, v] : p.classes) {
            res.stats.classes[k] += v;
        }
        if (p.consistent && p.best > best + 1e-12) {
            best = p.best;
            best_index = p.best_index;
        }
    }
    std::uint64_t t = best_index;
    std::vector<std::string> witness(m);
    for (size_t k = m; k-- > 0;) {
        witness[k] = describe(rules[k][t % rules[k].size()], scenario.labels);
        t /= rules[k].size();
    }
    res.witness_rules = witness;
    res.bound.scenario = scenario.name;
    res.bound.dim = dim;
    res.bound.flags.commuting = true;
    res.bound.flags.projective = true;
    res.bound.flags.distinct = distinct_non_identity;
    res.bound.flags.non_identity = distinct_non_identity;
    res.bound.value = dir * best;
    res.bound.provenance = Provenance::Enumeration;
    return res;
}

}  // namespace ctxdim
