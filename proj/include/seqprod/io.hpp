// Copyright 2026 The seqprod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON documents exchanged by the command-line tool.
//
// A matrix document is
//
//   {"dim": n, "entries": [[re, im], ...]}
//
// with n*n row-major [re, im] pairs. Doubles are written in shortest
// round-trip form, so a document read and written back is bit-identical.
// A decomposition file is a JSON array of matrix documents.

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "seqprod/axioms.hpp"
#include "seqprod/channels.hpp"
#include "seqprod/effects.hpp"
#include "seqprod/errors.hpp"
#include "seqprod/linalg.hpp"

namespace seqprod::io {

using nlohmann::json;

/// Malformed or invariant-violating input document.
class InputError : public DomainError {
   public:
    using DomainError::DomainError;
};

inline json to_document(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw DomainError("to_document: matrix documents are square");
    }
    json entries = json::array();
    for (const Complex &z : m.entries()) {
        entries.push_back(json::array({z.real(), z.imag()}));
    }
    return json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

inline ComplexMatrix parse_matrix(const json &doc) {
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries")) {
        throw InputError("matrix document: expected an object with \"dim\" and \"entries\"");
    }
    const json &dim_field = doc.at("dim");
    if (!dim_field.is_number_integer() || dim_field.get<long long>() < 1) {
        throw InputError("matrix document: \"dim\" must be a positive integer");
    }
    const auto n = static_cast<std::size_t>(dim_field.get<long long>());
    const json &entries = doc.at("entries");
    if (!entries.is_array() || entries.size() != n * n) {
        throw InputError("matrix document: \"entries\" must hold dim*dim = " + std::to_string(n * n) + " pairs");
    }
    std::vector<Complex> values;
    values.reserve(n * n);
    for (const json &pair : entries) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            throw InputError("matrix document: each entry must be a [re, im] pair of numbers");
        }
        const Complex z(pair[0].get<double>(), pair[1].get<double>());
        if (!is_finite(z)) {
            throw InputError("matrix document: entries must be finite");
        }
        values.push_back(z);
    }
    return ComplexMatrix(n, n, std::move(values));
}

inline HermitianMatrix parse_hermitian(const json &doc) {
    try {
        return HermitianMatrix::strict(parse_matrix(doc));
    } catch (const InputError &) {
        throw;
    } catch (const DomainError &e) {
        throw InputError(e.what());
    }
}

inline Effect parse_effect(const json &doc) {
    try {
        return Effect(parse_hermitian(doc));
    } catch (const InputError &) {
        throw;
    } catch (const DomainError &e) {
        throw InputError(e.what());
    }
}

inline DensityOperator parse_density(const json &doc) {
    try {
        return DensityOperator(parse_hermitian(doc));
    } catch (const InputError &) {
        throw;
    } catch (const DomainError &e) {
        throw InputError(e.what());
    }
}

/// Parses the effects; the sum-to-identity check is left to EffectDecomposition.
inline std::vector<Effect> parse_effect_list(const json &doc) {
    if (!doc.is_array() || doc.empty()) {
        throw InputError("decomposition document: expected a non-empty array of matrix documents");
    }
    std::vector<Effect> effects;
    for (const json &item : doc) {
        effects.push_back(parse_effect(item));
    }
    return effects;
}

inline json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw InputError(path + ": " + e.what());
    }
}

inline void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write " + path);
    }
    out << text;
}

inline json to_json(const Witness &w) {
    json inputs = json::object();
    for (const auto &[name, m] : w.inputs) {
        inputs[name] = to_document(m);
    }
    return json{{"dim", w.dim}, {"trial", w.trial}, {"inputs", std::move(inputs)}};
}

inline json to_json(const CheckReport &r) {
    json out{{"axiom", r.axiom},
             {"product", r.product},
             {"trials", r.trials},
             {"failures", r.failures},
             {"worst_violation", r.worst_violation},
             {"seed", r.seed},
             {"skipped", r.skipped},
             {"failures_by_part", r.failures_by_part}};
    out["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
    return out;
}

}  // namespace seqprod::io
