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

#ifndef CTXDIM_IO_H
#define CTXDIM_IO_H

#include <string>
#include <vector>

#include "json.hpp"

#include "ctxdim/bloch.h"
#include "ctxdim/certify.h"
#include "ctxdim/classical.h"
#include "ctxdim/noise.h"
#include "ctxdim/optimizer.h"
#include "ctxdim/scenarios.h"

namespace ctxdim {

using Json = nlohmann::json;

constexpr const char *kVersion = "0.1.0";

/// Operator encoding {"dim": d, "re": [[...]], "im": [[...]]}, row-major.
Json encode(const Mat &m);
Json encode(const Vec3 &v);
Json encode(const QuantumState &s);
/// Label to operator encoding.
Json encode(const ObservableAssignment &obs);
Json encode(const Scenario &s);
Json encode(const NoiseModel &m);
Json encode(const BoundRecord &r);
Json encode(const EnumerationResult &r, bool stats);
Json encode(const ChainResult &r);
Json encode(const PmBlochResult &r);
Json encode(const SearchResult &r);
Json encode(const std::vector<HierarchyRow> &rows);
Json encode(const CornerBoundResult &r);
Json encode(const Tier &t);
Json encode(const CertificationResult &r);
Json encode(const ValidationReport &r);

/// Throws BadInput on malformed input.
Mat decode_operator(const Json &j);
/// Operator encoding, or a state vector {"dim": d, "re": [...], "im": [...]}.
QuantumState decode_state(const Json &j);
/// Each operator is classified with classify_dichotomic.
ObservableAssignment decode_assignment(const Json &j, double tol = kSpectrumTol);
/// Either {"name", "n"} of a built-in scenario or a full context list.
Scenario decode_scenario(const Json &j);
NoiseModel decode_noise_model(const Json &j);

Json read_json_file(const std::string &path);

/// n,dim,flags,bound,attained
std::string hierarchy_csv(const std::vector<HierarchyRow> &rows);
/// dim,bound,certifies,provenance,note
std::string tiers_csv(const std::vector<Tier> &tiers);

}  // namespace ctxdim

#endif
