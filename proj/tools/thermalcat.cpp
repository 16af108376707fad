// Copyright 2026 The thermalcat Authors
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

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "thermalcat/thermalcat.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

const std::map<std::string, std::string> kUsage = {
    {"wigner-grid", "Wigner function on a grid. Keys: state (superposition|thermal|qubit), V, d, phi, sign, a, b, "
                    "points, x_min, x_max, p_min, p_max, frame (auto|origin|centred)"},
    {"marginal", "Quadrature distribution. Keys: state, V, d, phi, sign, a, b, angle, convention (real|canonical), "
                 "center, half_width, points"},
    {"negativity", "Minimum of the Wigner function. Keys: state (hybrid|superposition|two-mode), V, d, phi, sign, "
                   "alpha_radius, beta_radius, resolution"},
    {"visibility", "Fringe visibility and spacing. Keys: state, V, d, phi, sign, a, b, angle, convention"},
    {"kerr-movie", "Field Wigner functions along the Kerr evolution. Keys: V, d, sign, theta (list), points, "
                   "x_min, x_max, p_min, p_max"},
    {"chsh-optimize", "Maximal CHSH value. Keys: family (tm|bs), V, d, theta, restarts, box_radius, seed"},
    {"chsh-sweep", "CHSH value over parameter ranges. Keys: family, V, d, theta (lists or lo..hi), points, log, "
                   "restarts, box_radius, window, window_resolution, seed"},
    {"bell-measure", "Thermal Bell measurement. Keys: view (probabilities|homodyne), V, d, points, outcome, "
                     "detector (C|D), half_width"},
    {"distinguish", "Bell-state distinguishability. Keys: V, d, points, log, threshold (d|likelihood|number), trials, seed"},
    {"teleport", "Teleportation of a thermal qubit. Keys: a, b, V, d, points, mode (formal|physical), channel"},
    {"oracle-check", "Cross-check against the Fock-space oracle. Keys: max_V, max_d, grid_points, grid_radius, "
                     "dense_cutoff"},
};

bool takes_seed(const std::string &command) {
    return command == "chsh-optimize" || command == "chsh-sweep" || command == "distinguish";
}

int exit_code(tcat_status status) {
    switch (status) {
        case TCAT_NUMERICAL_FAILURE:
        case TCAT_CUTOFF_INSUFFICIENT:
        case TCAT_HERMITICITY_VIOLATION:
        case TCAT_INTERNAL:
            return kExitNumerical;
        default:
            return kExitInvalid;
    }
}

int report_error(const std::string &status, const std::string &message, int code) {
    Json err = {{"error", status}, {"message", message}, {"exit_code", code}};
    std::cerr << err.dump() << "\n";
    return code;
}

// "--key value", "--key=value" or a bare "--flag".
Json parse_pairs(const std::vector<std::string> &tokens, Json config) {
    for (size_t i = 0; i < tokens.size(); ++i) {
        const std::string &t = tokens[i];
        if (t.rfind("--", 0) != 0 || t.size() < 3) {
            throw std::invalid_argument("unexpected argument '" + t + "'");
        }
        std::string key = t.substr(2), value;
        if (const auto eq = key.find('='); eq != std::string::npos) {
            value = key.substr(eq + 1);
            key = key.substr(0, eq);
        } else if (i + 1 < tokens.size() && tokens[i + 1].rfind("--", 0) != 0) {
            value = tokens[++i];
        } else {
            value = "true";
        }
        std::replace(key.begin(), key.end(), '-', '_');
        config[key] = value;
    }
    return config;
}

std::string csv_field(const Json &v) {
    if (v.is_null()) {
        return "";
    }
    if (!v.is_string()) {
        return v.dump();
    }
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return q + "\"";
}

std::string to_csv(const Json &doc) {
    std::ostringstream out;
    out << "# thermalcat " << doc["version"].get<std::string>() << " " << doc["command"].get<std::string>();
    for (const auto &[key, value] : doc["parameters"].items()) {
        out << " " << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump());
    }
    out << "\n# summary " << doc["summary"].dump() << "\n";
    const auto line = [&](const Json &row) {
        for (size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << csv_field(row[i]);
        }
        out << "\n";
    };
    line(doc["columns"]);
    for (const Json &row : doc["rows"]) {
        line(row);
    }
    return out.str();
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Phase-space simulation of thermal-state superpositions and entanglement"};
    app.set_version_flag("--version", std::string("thermalcat ") + tcat_version());
    app.require_subcommand(1);

    struct Options {
        std::string format = "csv";
        std::string output;
        std::string seed;
        std::string config;
    };
    std::map<std::string, Options> options;
    std::vector<std::pair<std::string, CLI::App *>> subs;
    for (const char *const *name = tcat_report_commands(); *name != nullptr; ++name) {
        const std::string command = *name;
        const auto usage = kUsage.find(command);
        CLI::App *sub = app.add_subcommand(command, usage != kUsage.end() ? usage->second : command);
        sub->allow_extras();
        Options &o = options[command];
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("-o,--output", o.output, "Write to this file instead of stdout");
        sub->add_option("--config", o.config, "JSON file with parameters (flags override it)");
        if (takes_seed(command)) {
            sub->add_option("--seed", o.seed, "Random seed (falls back to THERMALCAT_SEED)");
        }
        subs.emplace_back(command, sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return report_error("invalid_argument", e.what(), kExitInvalid);
    }

    for (const auto &[command, sub] : subs) {
        if (!sub->parsed()) {
            continue;
        }
        const Options &o = options[command];
        Json config = Json::object();
        try {
            if (!o.config.empty()) {
                std::ifstream in(o.config);
                if (!in) {
                    return report_error("io", "cannot read " + o.config, kExitInvalid);
                }
                config = Json::parse(in);
                if (!config.is_object()) {
                    return report_error("invalid_argument", "config file must hold a JSON object", kExitInvalid);
                }
            }
            config = parse_pairs(sub->remaining(), std::move(config));
        } catch (const std::exception &e) {
            return report_error("invalid_argument", e.what(), kExitInvalid);
        }
        std::string seed = o.seed;
        if (seed.empty() && takes_seed(command)) {
            if (const char *env = std::getenv("THERMALCAT_SEED"); env != nullptr && *env != '\0') {
                seed = env;
            }
        }
        if (!seed.empty()) {
            config["seed"] = seed;
        }

        char *raw = nullptr;
        const tcat_status status = tcat_run_report(command.c_str(), config.dump().c_str(), &raw);
        if (status != TCAT_OK) {
            return report_error(tcat_status_name(status), tcat_last_error(), exit_code(status));
        }
        const std::unique_ptr<char, void (*)(char *)> text(raw, tcat_string_free);
        const Json doc = Json::parse(text.get());
        const std::string rendered = o.format == "json" ? doc.dump(2) + "\n" : to_csv(doc);

        if (o.output.empty()) {
            std::cout << rendered;
        } else {
            std::ofstream out(o.output, std::ios::binary);
            out << rendered;
            if (!out) {
                return report_error("io", "cannot write " + o.output, kExitInvalid);
            }
        }
        const Json &summary = doc["summary"];
        if (summary.contains("status") && summary["status"] == "FAIL") {
            std::cerr << Json({{"error", "check_failed"}, {"summary", summary}}).dump() << "\n";
            return kExitNumerical;
        }
        return 0;
    }
    return kExitInvalid;
}
