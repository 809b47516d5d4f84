// Command-line interface: closed-form monotones, convex-roof estimation,
// coherence-to-entanglement conversion, multislit distinguishability, the
// theorem-verification suites, and seeded state generation.
//
// Exit codes: 0 success / all suites passed, 1 suite failure, 2 input error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcoh/conversion.hpp"
#include "qcoh/io.hpp"
#include "qcoh/monotones.hpp"
#include "qcoh/multislit.hpp"
#include "qcoh/roof.hpp"
#include "qcoh/suites.hpp"

namespace {

using nlohmann::json;
using namespace qcoh;

json complex_list_json(const Vector& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) {
        out.push_back({v(i).real(), v(i).imag()});
    }
    return out;
}

json decomposition_json(const Decomposition& dec) {
    json states = json::array();
    for (const auto& s : dec.states) states.push_back(complex_list_json(s.amp));
    return {{"weights", dec.weights}, {"states", states}};
}

json estimate_json(const MonotoneEstimate& est) {
    return {{"schema", 1},
            {"value", est.value},
            {"measure", est.objective.name()},
            {"converged", est.converged},
            {"iterations", est.iterations},
            {"restart_values", est.restart_values},
            {"certificate", decomposition_json(est.certificate)}};
}

json suite_json(const SuiteReport& report) {
    json violations = json::array();
    for (const auto& v : report.violations) {
        violations.push_back({{"fingerprint", v.fingerprint}, {"defect", v.defect}});
    }
    return {{"schema", 1},
            {"suite", report.suite},
            {"samples", report.samples},
            {"violations", violations},
            {"max_defect", report.max_defect},
            {"passed", report.passed}};
}

void emit_keyvalue(const json& j, const std::string& output, bool quiet) {
    if (quiet) return;
    if (output == "csv") {
        std::cout << "key,value\n";
        for (const auto& [key, value] : j.items()) {
            if (value.is_structured()) continue;
            std::cout << key << "," << value.dump() << "\n";
        }
    } else {
        std::cout << j.dump() << "\n";
    }
}

int require_k(const std::optional<int>& k) {
    if (!k) throw std::invalid_argument("this measure needs --k");
    return *k;
}

struct CommonRoofFlags {
    int restarts = 16;
    int ensemble = 0;
    std::uint64_t seed = 0;
    double tol = 1e-6;

    RoofOptions to_options() const {
        RoofOptions o;
        o.restarts = restarts;
        o.ensemble_size = ensemble;
        o.seed = seed;
        o.tol = tol;
        return o;
    }
    void attach(CLI::App* cmd) {
        cmd->add_option("--restarts", restarts, "random restarts");
        cmd->add_option("--ensemble", ensemble, "ensemble size (0: rank^2)");
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--tol", tol, "convergence threshold");
    }
};

int run(int argc, char** argv) {
    CLI::App app{"coherence concurrence toolkit"};
    app.require_subcommand(1);
    std::string output = "json";
    bool quiet = false;
    app.add_option("--output", output, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--quiet", quiet, "suppress normal output");

    // monotone
    auto* mono = app.add_subcommand("monotone", "closed-form pure monotones and C_l1");
    std::string mono_state, mono_measure;
    std::optional<int> mono_k;
    mono->add_option("--state", mono_state, "state JSON file")->required();
    mono->add_option("--measure", mono_measure, "measure name")->required();
    mono->add_option("--k", mono_k, "concurrence order");

    // roof
    auto* roof = app.add_subcommand("roof", "convex-roof estimate with certificate");
    std::string roof_state, roof_measure;
    std::optional<int> roof_k;
    CommonRoofFlags roof_flags;
    roof->add_option("--state", roof_state, "state JSON file")->required();
    roof->add_option("--measure", roof_measure, "measure name")->required();
    roof->add_option("--k", roof_k, "concurrence order");
    roof_flags.attach(roof);

    // convert
    auto* convert = app.add_subcommand("convert", "coherence-to-entanglement conversion check");
    std::string convert_state;
    int convert_k = 2;
    CommonRoofFlags convert_flags;
    convert->add_option("--state", convert_state, "state JSON file")->required();
    convert->add_option("--k", convert_k, "concurrence order")->required();
    convert_flags.attach(convert);

    // multislit
    auto* slit = app.add_subcommand("multislit", "quanton-detector distinguishability");
    std::string slit_config, sweep_spec;
    CommonRoofFlags slit_flags;
    slit->add_option("--config", slit_config, "multislit config JSON")->required();
    slit->add_option("--sweep", sweep_spec, "PARAM:LO:HI:STEPS (PARAM: phi_all | overlap)");
    slit_flags.attach(slit);

    // verify
    auto* verify = app.add_subcommand("verify", "run theorem-verification suites");
    std::string suite_name;
    SuiteOptions suite_opts;
    verify->add_option("--suite", suite_name, "run a single suite");
    verify->add_option("--seed", suite_opts.seed, "master seed");
    verify->add_option("--samples", suite_opts.samples, "sample-count override");

    // random
    auto* random = app.add_subcommand("random", "seeded random state to file");
    int random_dim = 0, random_rank = 0;
    std::uint64_t random_seed = 0;
    std::string random_out;
    random->add_option("--dim", random_dim, "dimension")->required();
    random->add_option("--rank", random_rank, "rank (0: pure state)");
    random->add_option("--seed", random_seed, "seed")->required();
    random->add_option("--out", random_out, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (mono->parsed()) {
        const auto id = parse_monotone(mono_measure, mono_k);
        if (!id) throw std::invalid_argument("unknown measure or missing --k: " + mono_measure);
        const StateFile state = read_state_file(mono_state);
        double value = 0.0;
        if (std::holds_alternative<PureState>(state)) {
            const auto& psi = std::get<PureState>(state);
            switch (id->family) {
            case MonotoneFamily::coherence_k_concurrence:
                value = coherence_k_concurrence_pure(psi, require_k(id->k));
                break;
            case MonotoneFamily::qi_coherence_concurrence:
                value = qi_coherence_concurrence_pure(psi);
                break;
            case MonotoneFamily::l1_coherence:
                value = l1_coherence(DensityMatrix::from_pure(psi));
                break;
            case MonotoneFamily::entanglement_k_concurrence: {
                const int local = static_cast<int>(std::lround(std::sqrt(psi.dim())));
                if (local * local != psi.dim()) {
                    throw std::invalid_argument("entanglement measures need a d x d state");
                }
                value = ent_k_concurrence_schmidt(
                    BipartitePureState::from_flat(psi.amp, local, local), require_k(id->k));
                break;
            }
            }
        } else {
            const auto& rho = std::get<DensityMatrix>(state);
            if (id->family != MonotoneFamily::l1_coherence) {
                throw std::invalid_argument(
                    "only l1_coherence has a closed mixed-state form; use `roof`");
            }
            value = l1_coherence(rho);
        }
        emit_keyvalue({{"schema", 1}, {"value", value}, {"measure", id->name()}}, output, quiet);
        return 0;
    }

    if (roof->parsed()) {
        const auto id = parse_monotone(roof_measure, roof_k);
        if (!id) throw std::invalid_argument("unknown measure or missing --k: " + roof_measure);
        const StateFile state = read_state_file(roof_state);
        const DensityMatrix rho = std::holds_alternative<PureState>(state)
                                      ? DensityMatrix::from_pure(std::get<PureState>(state))
                                      : std::get<DensityMatrix>(state);
        const auto est = minimize_roof({rho, *id, roof_flags.to_options()});
        emit_keyvalue(estimate_json(est), output, quiet);
        return 0;
    }

    if (convert->parsed()) {
        const StateFile state = read_state_file(convert_state);
        json j;
        if (std::holds_alternative<PureState>(state)) {
            const auto res = verify_conversion(std::get<PureState>(state), convert_k);
            j = {{"schema", 1},
                 {"k", convert_k},
                 {"coherence_side", res.coherence_side},
                 {"entanglement_side", res.entanglement_side},
                 {"delta", res.delta},
                 {"pure", true}};
        } else {
            const auto res = verify_conversion(std::get<DensityMatrix>(state), convert_k,
                                               convert_flags.to_options());
            j = {{"schema", 1},
                 {"k", convert_k},
                 {"coherence_side", res.coherence_side},
                 {"entanglement_side", res.entanglement_side},
                 {"delta", res.delta},
                 {"pure", false}};
        }
        emit_keyvalue(j, output, quiet);
        return 0;
    }

    if (slit->parsed()) {
        const MultiSlitConfig config = read_multislit_config(slit_config);
        if (sweep_spec.empty()) {
            const auto rep = distinguishability(config.quanton, config.detector,
                                                slit_flags.to_options());
            json j = {{"schema", 1},
                      {"d_q", rep.d_q},
                      {"l1_bound", rep.l1_bound},
                      {"q_lower_bounds", rep.q_lower_bounds},
                      {"slit_count", rep.slit_count},
                      {"coherence_number",
                       {{"r_hat", rep.coherence_number.r_hat},
                        {"ks", rep.coherence_number.ks},
                        {"values", rep.coherence_number.values},
                        {"threshold", rep.coherence_number.threshold},
                        {"evidence_only", rep.coherence_number.evidence_only}}},
                      {"rho_s", json::array()}};
            for (int r = 0; r < rep.rho_s.dim(); ++r) {
                for (int c = 0; c < rep.rho_s.dim(); ++c) {
                    j["rho_s"].push_back({rep.rho_s.rho(r, c).real(), rep.rho_s.rho(r, c).imag()});
                }
            }
            emit_keyvalue(j, output, quiet);
            return 0;
        }

        // --sweep PARAM:LO:HI:STEPS emits one CSV row per parameter value.
        std::string param;
        double lo = 0.0, hi = 0.0;
        int steps = 0;
        {
            auto rest = sweep_spec;
            const auto take = [&rest](const char* what) {
                const auto pos = rest.find(':');
                if (pos == std::string::npos) {
                    throw std::invalid_argument(std::string("--sweep missing field: ") + what);
                }
                auto tok = rest.substr(0, pos);
                rest = rest.substr(pos + 1);
                return tok;
            };
            param = take("param");
            lo = std::stod(take("lo"));
            hi = std::stod(take("hi"));
            steps = std::stoi(rest);
        }
        if (param != "phi_all" && param != "overlap") {
            throw std::invalid_argument("--sweep param must be phi_all or overlap");
        }
        if (steps < 1) throw std::invalid_argument("--sweep needs at least one step");

        if (!quiet) std::cout << "param,dq,l1_bound,bound1,bound2,slits\n";
        for (int t = 0; t < steps; ++t) {
            const double v = steps == 1 ? lo : lo + (hi - lo) * t / (steps - 1);
            const double phi = param == "overlap" ? std::sqrt(std::max(0.0, 1.0 - v)) : v;
            auto det = DetectorModel::build(
                std::vector<Complex>(config.detector.d, Complex(phi, 0.0)),
                config.detector.p, config.detector.q);
            const auto rep = distinguishability(config.quanton, det, slit_flags.to_options());
            if (!quiet) {
                std::printf("%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", v, rep.d_q, rep.l1_bound,
                            rep.q_lower_bounds[0], rep.q_lower_bounds[1], rep.slit_count);
            }
        }
        return 0;
    }

    if (verify->parsed()) {
        std::vector<SuiteReport> reports;
        if (suite_name.empty()) {
            reports = theorem_suites(suite_opts);
        } else {
            reports.push_back(run_suite_by_name(suite_name, suite_opts));
        }
        bool all_passed = true;
        for (const auto& r : reports) {
            all_passed = all_passed && r.passed;
            if (quiet) continue;
            if (output == "csv") {
                std::cout << r.suite << "," << r.samples << "," << r.violations.size() << ","
                          << json(r.max_defect).dump() << "," << (r.passed ? "pass" : "fail")
                          << "\n";
            } else {
                std::cout << suite_json(r).dump() << "\n";
            }
        }
        return all_passed ? 0 : 1;
    }

    if (random->parsed()) {
        if (random_rank == 0) {
            write_state_file(random_out, random_pure(random_dim, random_seed));
        } else {
            write_state_file(random_out, random_mixed(random_dim, random_rank, random_seed));
        }
        return 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
