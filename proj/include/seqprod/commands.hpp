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

// The four subcommands of the `seqprod` tool as plain functions returning an
// exit code and a JSON payload. The executable in tools/ only parses flags.
//
// Exit codes:
//   0  success
//   1  internal numerical failure
//   2  invalid input (message names the violated invariant)
//   3  at least one axiom check failed
//   4  no non-uniqueness witness above the gap threshold

#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include "seqprod/axioms.hpp"
#include "seqprod/channels.hpp"
#include "seqprod/effects.hpp"
#include "seqprod/io.hpp"

namespace seqprod::cli {

using nlohmann::json;

enum ExitCode : int {
    kOk = 0,
    kNumericalFailure = 1,
    kBadInput = 2,
    kAxiomFailure = 3,
    kNoWitness = 4,
};

struct CommandResult {
    int exit_code = kOk;
    json output;
    /// Human-readable diagnostic for stderr; empty on success.
    std::string message;
};

struct RunConfig {
    std::vector<std::size_t> dims{2, 3, 4, 6};
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::vector<double> t_values{1.0};
    std::map<std::string, double> tolerance_overrides;

    /// Throws io::InputError on any violated invariant.
    void validate() const {
        if (trials < 1) {
            throw io::InputError("run config: trials must be >= 1");
        }
        if (dims.empty()) {
            throw io::InputError("run config: dims must be non-empty");
        }
        for (std::size_t d : dims) {
            if (d < 1 || d > 64) {
                throw io::InputError("run config: every dim must lie in [1, 64]");
            }
        }
        for (double t : t_values) {
            if (!std::isfinite(t)) {
                throw io::InputError("run config: t values must be finite");
            }
        }
        for (const auto &[name, value] : tolerance_overrides) {
            if (!known_tolerance(name)) {
                throw io::InputError("run config: unknown tolerance '" + name +
                                     "' (known: defect_ceiling, zero_product, comm_floor, converse_gap, witness_gap)");
            }
            if (!(value > 0.0) || !std::isfinite(value)) {
                throw io::InputError("run config: tolerance '" + name + "' must be positive");
            }
        }
    }

    static bool known_tolerance(const std::string &name) {
        return name == "defect_ceiling" || name == "zero_product" || name == "comm_floor" ||
               name == "converse_gap" || name == "witness_gap";
    }

    double tolerance(const std::string &name, double fallback) const {
        const auto it = tolerance_overrides.find(name);
        return it == tolerance_overrides.end() ? fallback : it->second;
    }

    CheckConfig check_config() const {
        CheckConfig cfg;
        cfg.trials = trials;
        cfg.dims = dims;
        cfg.seed = seed;
        cfg.defect_ceiling = tolerance("defect_ceiling", cfg.defect_ceiling);
        cfg.zero_product = tolerance("zero_product", cfg.zero_product);
        cfg.comm_floor = tolerance("comm_floor", cfg.comm_floor);
        cfg.converse_gap = tolerance("converse_gap", cfg.converse_gap);
        return cfg;
    }

    json to_json() const {
        return json{{"dims", dims},
                    {"trials", trials},
                    {"seed", seed},
                    {"t_values", t_values},
                    {"tolerance_overrides", tolerance_overrides}};
    }
};

inline constexpr double kDefaultWitnessGap = 0.01;

enum class ProductForm { luders, phased, naive };

inline ProductForm parse_form(const std::string &name) {
    if (name == "luders") {
        return ProductForm::luders;
    }
    if (name == "phased") {
        return ProductForm::phased;
    }
    if (name == "naive") {
        return ProductForm::naive;
    }
    throw io::InputError("unknown product form '" + name + "' (expected luders, phased or naive)");
}

namespace detail {

// Runs `body`, mapping library exceptions onto the exit-code contract.
template <typename Body>
CommandResult guarded(Body &&body) {
    try {
        return body();
    } catch (const io::InputError &e) {
        return {kBadInput, json(nullptr), e.what()};
    } catch (const DecompositionError &e) {
        return {kBadInput, json(nullptr), e.what()};
    } catch (const DomainError &e) {
        return {kBadInput, json(nullptr), e.what()};
    } catch (const NonConvergence &e) {
        return {kNumericalFailure, json(nullptr), e.what()};
    } catch (const Error &e) {
        return {kNumericalFailure, json(nullptr), e.what()};
    } catch (const json::exception &e) {
        return {kBadInput, json(nullptr), e.what()};
    } catch (const std::exception &e) {
        return {kNumericalFailure, json(nullptr), e.what()};
    }
}

}  // namespace detail

/// A o B for two effects given as matrix documents.
inline CommandResult cmd_product(const json &a_doc, const json &b_doc, double t, ProductForm form) {
    return detail::guarded([&]() -> CommandResult {
        const Effect a = io::parse_effect(a_doc);
        const Effect b = io::parse_effect(b_doc);
        if (a.dim() != b.dim()) {
            throw io::InputError("product: effects have different dimensions (" + std::to_string(a.dim()) + " vs " +
                                 std::to_string(b.dim()) + ")");
        }
        if (!std::isfinite(t)) {
            throw io::InputError("product: t must be finite");
        }
        switch (form) {
            case ProductForm::luders:
                return {kOk, io::to_document(luders_product(a, b).matrix()), ""};
            case ProductForm::phased:
                return {kOk, io::to_document(phased_product(a, b, PhaseParameter(t)).matrix()), ""};
            case ProductForm::naive:
                throw io::InputError("product: the naive form is only available to the axiom suite");
        }
        return {kNumericalFailure, json(nullptr), "unreachable"};
    });
}

inline CommandResult cmd_product_files(const std::string &a_path, const std::string &b_path, double t,
                                       ProductForm form) {
    return detail::guarded(
        [&] { return cmd_product(io::read_json_file(a_path), io::read_json_file(b_path), t, form); });
}

/// S1-S5 plus the commutativity theorem, once per t value for the phased form.
inline CommandResult cmd_axioms(const RunConfig &config, ProductForm form) {
    return detail::guarded([&]() -> CommandResult {
        config.validate();
        const CheckConfig cfg = config.check_config();

        std::vector<ProductUnderTest> products;
        switch (form) {
            case ProductForm::luders:
                products.push_back(luders_under_test());
                break;
            case ProductForm::phased:
                for (double t : config.t_values) {
                    products.push_back(phased_under_test(t));
                }
                break;
            case ProductForm::naive:
                products.push_back(naive_under_test());
                break;
        }

        json reports = json::array();
        bool all_passed = true;
        std::size_t total_failures = 0;
        for (const ProductUnderTest &p : products) {
            using Check = CheckReport (*)(const ProductUnderTest &, const CheckConfig &);
            static constexpr std::pair<const char *, Check> checks[] = {
                {"S1", &check_s1}, {"S2", &check_s2}, {"S3", &check_s3},
                {"S4", &check_s4}, {"S5", &check_s5}, {"commutativity", &check_commutativity_theorem}};
            for (const auto &[name, check] : checks) {
                try {
                    const CheckReport r = check(p, cfg);
                    all_passed = all_passed && r.passed();
                    total_failures += r.failures;
                    reports.push_back(io::to_json(r));
                } catch (const InsufficientSamples &e) {
                    all_passed = false;
                    reports.push_back(json{{"axiom", name}, {"product", p.label}, {"seed", cfg.seed},
                                           {"error", e.what()}});
                }
            }
        }
        json out{{"command", "axioms"},
                 {"config", config.to_json()},
                 {"reports", std::move(reports)},
                 {"total_failures", total_failures},
                 {"passed", all_passed}};
        return {all_passed ? kOk : kAxiomFailure, std::move(out), all_passed ? "" : "axiom checks failed"};
    });
}

/// Searches for a pair on which the phased and Lüders products differ.
inline CommandResult cmd_nonuniqueness(const RunConfig &config, bool commuting_only = false) {
    return detail::guarded([&]() -> CommandResult {
        config.validate();
        const CheckConfig cfg = config.check_config();
        const double threshold = config.tolerance("witness_gap", kDefaultWitnessGap);
        const NonuniquenessWitness w = search_nonuniqueness(cfg, config.t_values, commuting_only);

        json out{{"command", "nonuniqueness"},
                 {"config", config.to_json()},
                 {"commuting_only", commuting_only},
                 {"trials_searched", w.trials},
                 {"gap", w.gap},
                 {"gap_threshold", threshold},
                 {"found", w.gap > threshold}};
        if (w.pair) {
            const PhaseParameter phase(w.t);
            const Effect &a = w.pair->a;
            const Effect &b = w.pair->b;
            out["witness"] = json{{"dim", w.dim},
                                  {"trial", w.trial},
                                  {"t", w.t},
                                  {"A", io::to_document(a.matrix())},
                                  {"B", io::to_document(b.matrix())},
                                  {"phased", io::to_document(phased_product(a, b, phase).matrix())},
                                  {"luders", io::to_document(luders_product(a, b).matrix())}};
            if (w.dim == 2) {
                // Phase of the closed 2x2 form in the eigenbasis of A = diag(a^2, b^2).
                const SpectralDecomposition s = a.spectrum();
                const ComplexMatrix b_eig = s.eigenvectors.adjoint() * b.matrix().matrix() * s.eigenvectors;
                const double a2 = s.eigenvalues[0];
                const double b2 = s.eigenvalues[1];
                json two_by_two{{"a_squared", a2}, {"b_squared", b2}, {"y", json::array({b_eig(0, 1).real(), b_eig(0, 1).imag()})}};
                const double eps = effect_support_cutoff();
                if (a2 > eps && b2 > eps) {
                    const double theta = std::log(a2) - std::log(b2);
                    two_by_two["theta"] = theta;
                    two_by_two["phase"] = theta * w.t;
                    two_by_two["predicted_gap"] =
                        std::sqrt(a2 * b2) * std::abs(std::polar(1.0, theta * w.t) - 1.0) * std::abs(b_eig(0, 1));
                } else {
                    two_by_two["theta"] = nullptr;
                }
                out["witness"]["closed_form"] = std::move(two_by_two);
            }
        }
        const bool found = w.gap > threshold;
        return {found ? kOk : kNoWitness, std::move(out),
                found ? "" : "no pair with gap above " + std::to_string(threshold)};
    });
}

/// Applies the phased channel of a decomposition to rho and certifies it.
inline CommandResult cmd_channel(const json &decomposition_doc, double t, const json &rho_doc) {
    return detail::guarded([&]() -> CommandResult {
        if (!std::isfinite(t)) {
            throw io::InputError("channel: t must be finite");
        }
        const EffectDecomposition d(io::parse_effect_list(decomposition_doc));
        const DensityOperator rho = io::parse_density(rho_doc);
        if (rho.dim() != d.dim()) {
            throw io::InputError("channel: rho and decomposition have different dimensions");
        }
        const QuantumChannel c = phased_channel(d, t);
        const HermitianMatrix out = apply_channel(c, rho);
        return {kOk,
                json{{"command", "channel"},
                     {"t", t},
                     {"output", io::to_document(out)},
                     {"trace", out.trace()},
                     {"min_choi_eigenvalue", min_choi_eigenvalue(c)}},
                ""};
    });
}

inline CommandResult cmd_channel_files(const std::string &decomposition_path, double t,
                                       const std::string &rho_path) {
    return detail::guarded([&] {
        return cmd_channel(io::read_json_file(decomposition_path), t, io::read_json_file(rho_path));
    });
}

}  // namespace seqprod::cli
