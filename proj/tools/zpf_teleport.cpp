// Copyright 2026 The zpf-teleport Authors
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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "zpf/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Rome teleportation verification sweeps with zeropoint-field amplitudes"};
    app.set_config("--config", "", "flat key=value file; command-line flags override it");

    std::string scenario = "rome-linear", engine = "analytic", sweep = "0:180:7.5", output;
    std::vector<double> prep;
    double v_re = 1.0, v_im = 0.0;
    zpf::RunConfig cfg;

    app.add_option("--scenario", scenario, "rome-linear | rome-elliptical | rome-generic")
        ->check(CLI::IsMember({"rome-linear", "rome-elliptical", "rome-generic"}))
        ->capture_default_str();
    app.add_option("--theta", cfg.theta_deg, "linear preparer angle, degrees")->capture_default_str();
    app.add_option("--gamma", cfg.gamma_deg, "quarter-wave preparer angle, degrees")->capture_default_str();
    app.add_option("--prep", prep, "generic preparer: Re/Im of A, B, C, D (8 numbers)")->expected(8);
    app.add_option("--theta-b", sweep, "Bob rotator sweep start:stop:step, degrees")->capture_default_str();
    app.add_option("--engine", engine, "analytic | p12 | intensity | monte-carlo")
        ->check(CLI::IsMember({"analytic", "p12", "intensity", "monte-carlo"}))
        ->capture_default_str();
    app.add_option("--samples", cfg.samples, "Monte-Carlo samples per sweep point")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Monte-Carlo seed")->capture_default_str();
    app.add_option("--threads", cfg.threads, "Monte-Carlo worker threads, 0 = all cores")->capture_default_str();
    app.add_option("--g", cfg.g, "crystal coupling")->capture_default_str();
    app.add_option("--v-re", v_re, "laser amplitude, real part")->capture_default_str();
    app.add_option("--v-im", v_im, "laser amplitude, imaginary part")->capture_default_str();
    app.add_flag("--ledger", cfg.ledger, "print the zeropoint ledger");
    app.add_option("--output", output, "CSV path; stdout when omitted");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.scenario = zpf::parse_scenario(scenario);
        cfg.engine = zpf::parse_engine(engine);
        cfg.theta_b = zpf::parse_sweep(sweep);
        cfg.pump = zpf::complex{v_re, v_im};
        if (!prep.empty()) {
            cfg.prep = {{prep[0], prep[1]}, {prep[2], prep[3]}, {prep[4], prep[5]}, {prep[6], prep[7]}};
        } else if (cfg.scenario == zpf::ScenarioKind::rome_generic) {
            throw std::invalid_argument("rome-generic needs --prep");
        }

        if (output.empty()) {
            zpf::run(cfg, std::cout, std::cerr);
        } else {
            std::ofstream file(output, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open " + output);
            zpf::run(cfg, file, std::cout);
            file.close();
            if (!file) throw std::runtime_error("failed writing " + output);
        }
    } catch (const std::exception& e) {
        std::cerr << "zpf_teleport: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
