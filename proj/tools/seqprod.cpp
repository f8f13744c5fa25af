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

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seqprod/commands.hpp"

using namespace seqprod;

namespace {

std::map<std::string, double> parse_tolerances(const std::vector<std::string> &items) {
    std::map<std::string, double> out;
    for (const std::string &item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw io::InputError("--tol expects name=value, got '" + item + "'");
        }
        try {
            std::size_t used = 0;
            const double value = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) {
                throw std::invalid_argument(item);
            }
            out[item.substr(0, eq)] = value;
        } catch (const std::logic_error &) {
            throw io::InputError("--tol: cannot parse value in '" + item + "'");
        }
    }
    return out;
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
    const char *env = std::getenv("SEQPROD_SEED");
    if (env == nullptr) {
        return fallback;
    }
    const std::string text(env);
    try {
        std::size_t used = 0;
        const unsigned long long value = std::stoull(text, &used, 10);
        if (used != text.size() || text.front() == '-') {
            throw std::invalid_argument(text);
        }
        return value;
    } catch (const std::logic_error &) {
        throw io::InputError("SEQPROD_SEED must be an unsigned 64-bit integer, got '" + text + "'");
    }
}

int emit(const cli::CommandResult &result, const std::string &json_out) {
    if (!result.message.empty()) {
        std::cerr << "seqprod: " << result.message << "\n";
    }
    if (!result.output.is_null()) {
        const std::string text = result.output.dump(2) + "\n";
        std::cout << text;
        if (!json_out.empty()) {
            io::write_text_file(json_out, text);
        }
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Sequential products on quantum effects: products, axiom checks, channels"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::vector<std::size_t> dims;
    std::vector<double> t_values;
    std::string json_out;
    std::vector<std::string> tol_items;
    app.add_option("--seed", seed, "RNG seed (SEQPROD_SEED overrides)");
    app.add_option("--trials", trials, "Trials per dimension")->check(CLI::PositiveNumber);
    app.add_option("--dims", dims, "Comma-separated dimensions")->delimiter(',');
    app.add_option("--t", t_values, "Comma-separated phase parameters")->delimiter(',');
    app.add_option("--json-out", json_out, "Also write the JSON result to this path");
    app.add_option("--tol", tol_items, "Tolerance override name=value (repeatable)");

    auto *product = app.add_subcommand("product", "Compute A o B for two effect files");
    std::string a_file;
    std::string b_file;
    std::string form = "phased";
    product->add_option("--a", a_file, "Matrix document for A")->required();
    product->add_option("--b", b_file, "Matrix document for B")->required();
    product->add_option("--form", form, "luders or phased");

    auto *axioms = app.add_subcommand("axioms", "Run the S1-S5 and commutativity checks");
    std::string axioms_form = "phased";
    axioms->add_option("--product", axioms_form, "luders, phased or naive (a deliberately broken A*B)");

    auto *nonuniq = app.add_subcommand("nonuniqueness", "Search for a pair where phased and Lüders products differ");
    bool commuting_only = false;
    nonuniq->add_flag("--commuting-only", commuting_only, "Restrict the search to commuting pairs");

    auto *channel = app.add_subcommand("channel", "Apply the phased channel of an effect decomposition");
    std::string decomposition_file;
    std::string rho_file;
    channel->add_option("--decomposition", decomposition_file, "JSON array of matrix documents")->required();
    channel->add_option("--rho", rho_file, "Matrix document for the density operator")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return cli::kBadInput;
    }

    try {
        cli::RunConfig config;
        config.seed = seed_from_env(seed);
        config.tolerance_overrides = parse_tolerances(tol_items);
        if (trials > 0) {
            config.trials = trials;
        }
        if (!dims.empty()) {
            config.dims = dims;
        }
        if (!t_values.empty()) {
            config.t_values = t_values;
        }
        const double t = t_values.empty() ? 1.0 : t_values.front();

        if (product->parsed()) {
            if (t_values.size() > 1) {
                throw io::InputError("product: --t takes a single value");
            }
            return emit(cli::cmd_product_files(a_file, b_file, t, cli::parse_form(form)), json_out);
        }
        if (axioms->parsed()) {
            return emit(cli::cmd_axioms(config, cli::parse_form(axioms_form)), json_out);
        }
        if (nonuniq->parsed()) {
            if (dims.empty()) {
                config.dims = {2};
            }
            if (trials == 0) {
                config.trials = 100;
            }
            return emit(cli::cmd_nonuniqueness(config, commuting_only), json_out);
        }
        if (channel->parsed()) {
            if (t_values.size() > 1) {
                throw io::InputError("channel: --t takes a single value");
            }
            return emit(cli::cmd_channel_files(decomposition_file, t, rho_file), json_out);
        }
    } catch (const io::InputError &e) {
        std::cerr << "seqprod: " << e.what() << "\n";
        return cli::kBadInput;
    }
    return cli::kBadInput;
}
