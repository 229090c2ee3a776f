// Copyright 2026 The entdetect Authors
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

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "entdetect/report.h"

using namespace entdetect;

namespace {

std::string flag_name(const std::string &key) {
    std::string flag = "--";
    for (char c : key) {
        flag += c == '_' ? '-' : c;
    }
    return flag;
}

struct Subcommand {
    CLI::App *app;
    std::optional<std::string> config_path;
    std::map<std::string, std::optional<std::string>> flags;
    std::function<CommandOutput(const RunConfig &)> run;
};

void add_flags(Subcommand &sub) {
    sub.app->add_option("--config,-c", sub.config_path, "config file of key = value lines");
    for (const auto &key : config_keys()) {
        std::string names = flag_name(key);
        if (key == "output") {
            names += ",-o";
        }
        sub.app->add_option(names, sub.flags[key], "overrides config key '" + key + "'");
    }
}

int write_output(const RunConfig &cfg, const CommandOutput &out) {
    for (const auto &line : out.diagnostics) {
        std::cerr << line << "\n";
    }
    if (cfg.output.empty()) {
        std::cout << out.body;
        std::cout.flush();
        return out.exit_code;
    }
    std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
    if (!file) {
        std::cerr << "output: cannot write '" << cfg.output << "'\n";
        return kExitConfig;
    }
    file << out.body;
    return out.exit_code;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Photon-assisted detection of nonlocal atomic entanglement"};
    app.require_subcommand(1);

    std::vector<Subcommand> subs;
    subs.reserve(4);
    subs.push_back({app.add_subcommand("detect", "run the detection protocol and report P1, P2, P and C"), {}, {},
                    cmd_detect});
    subs.push_back({app.add_subcommand("sweep-theta", "tabulate error and success probabilities against theta"), {},
                    {}, cmd_sweep_theta});
    subs.push_back({app.add_subcommand("estimate", "Monte Carlo concurrence estimate with a Wilson interval"), {},
                    {}, cmd_estimate});
    subs.push_back({app.add_subcommand("oracle", "Wootters concurrence of a state or density-matrix file"), {}, {},
                    cmd_oracle});
    for (auto &sub : subs) {
        add_flags(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    for (auto &sub : subs) {
        if (!sub.app->parsed()) {
            continue;
        }
        RunConfig cfg;
        try {
            if (sub.config_path) {
                load_config_file(cfg, *sub.config_path);
            }
            for (const auto &key : config_keys()) {
                const auto &value = sub.flags[key];
                if (value) {
                    apply_setting(cfg, key, *value, flag_name(key));
                }
            }
            return write_output(cfg, sub.run(cfg));
        } catch (const ConfigError &e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitConfig;
        } catch (const std::invalid_argument &e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitConfig;
        }
    }
    return kExitConfig;
}
