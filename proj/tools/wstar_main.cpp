//
// wstar : finite W*-algebra commutator toolkit
// tool: batch CLI -- parse algebra/element files, run the analyses, emit
// machine-readable verification reports
//
// Exit codes: 0 = verified, 1 = a mathematical check failed, 2 = input or
// usage error. JSON is the canonical report format; text renders the same
// report for humans. Identical input bits and seed produce byte-identical
// JSON. Block and coordinate indices in reports are 1-based.
//

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <wstar/wstar.hpp>

namespace {

constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    std::string command;
    std::string input_path;
    double tol = wstar::default_tol;
    double epsilon = 0.1;
    std::uint64_t seed = 42;
    int samples = 1000;
    std::string output_path;
    std::string format = "json";
    std::string c0_override;
    std::string lambdas;
    std::string shape;
    std::string ideal_i;
    std::string ideal_j;
    bool exhaustive = false;
};

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.find_first_not_of(" \t") == std::string::npos) continue;
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (tok.find_first_not_of(" \t", pos) != std::string::npos)
            throw wstar::ParseError("cannot parse number: '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (double v : parse_double_list(s)) {
        int i = static_cast<int>(v);
        if (static_cast<double>(i) != v) throw wstar::ParseError("expected an integer list");
        out.push_back(i);
    }
    return out;
}

wstar::Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw wstar::ParseError("cannot open input file: " + path);
    try {
        return wstar::Json::parse(in);
    } catch (const std::exception& e) {
        throw wstar::ParseError(std::string("invalid JSON: ") + e.what());
    }
}

wstar::Json config_json(const RunConfig& cfg) {
    wstar::Json j{{"command", cfg.command}, {"tol", cfg.tol},         {"epsilon", cfg.epsilon},
                  {"seed", cfg.seed},       {"samples", cfg.samples}, {"format", cfg.format}};
    if (!cfg.input_path.empty()) j["input"] = cfg.input_path;
    if (!cfg.c0_override.empty()) j["c0_override"] = cfg.c0_override;
    if (!cfg.lambdas.empty()) j["lambdas"] = cfg.lambdas;
    if (!cfg.shape.empty()) j["shape"] = cfg.shape;
    if (!cfg.ideal_i.empty()) j["ideal_i"] = cfg.ideal_i;
    if (!cfg.ideal_j.empty()) j["ideal_j"] = cfg.ideal_j;
    if (cfg.command == "ideals") j["exhaustive"] = cfg.exhaustive;
    return j;
}

void render_text(const wstar::Json& j, std::ostream& os, int indent = 0) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            os << pad << key << ":\n";
            render_text(value, os, indent + 2);
        } else {
            os << pad << key << ": " << value.dump() << "\n";
        }
    }
}

void emit_report(const RunConfig& cfg, const wstar::Json& report) {
    std::string body;
    if (cfg.format == "text") {
        std::ostringstream os;
        render_text(report, os);
        body = os.str();
    } else {
        body = report.dump(2) + "\n";
    }
    if (cfg.output_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(cfg.output_path, std::ios::binary);
        if (!out) throw wstar::Error("cannot write output file: " + cfg.output_path);
        out << body;
    }
}

wstar::Json one_based(const std::vector<int>& v) {
    wstar::Json out = wstar::Json::array();
    for (int i : v) out.push_back(i + 1);
    return out;
}

// ---------------------------------------------------------------------------

int cmd_analyze(const RunConfig& cfg) {
    wstar::BlockElement a = wstar::parse_element(read_json_file(cfg.input_path), cfg.tol);

    std::optional<wstar::CentralElement> override_c;
    if (!cfg.c0_override.empty())
        override_c = wstar::make_central(a.shape, parse_double_list(cfg.c0_override));

    wstar::CentralElement c0 = wstar::c0_compute(a, cfg.tol);
    std::vector<wstar::BlockInterval> interval = wstar::median_interval(a, cfg.tol);
    wstar::BalanceCertificate cert = wstar::balance_certificate(a, cfg.tol);
    wstar::CommutatorReport rep = wstar::build_equality_unitary(a, override_c, cfg.tol);
    wstar::EpsilonBoundReport eps = wstar::epsilon_bound_check(a, cfg.epsilon, cfg.tol);

    wstar::Json intervals = wstar::Json::array();
    for (const auto& iv : interval) intervals.push_back(wstar::Json::array({iv.lo, iv.hi}));

    wstar::Json results{
        {"c0", wstar::real_scalars(c0)},
        {"center_used", wstar::real_scalars(rep.c0)},
        {"median_interval", std::move(intervals)},
        {"certificate", {{"q_rank", cert.q_rank}, {"r_rank", cert.r_rank}}},
        {"unitary", wstar::to_json(rep.unitary)["blocks"]},
        {"lhs_abs_commutator", wstar::to_json(rep.lhs)["blocks"]},
        {"epsilon", cfg.epsilon},
    };
    wstar::Json residuals{
        {"equality_residual", rep.equality_residual},
        {"involution_residual", rep.involution_residual},
        {"unitarity_residual", rep.unitarity_residual},
        {"hermitian_residual", wstar::hermitian_residual(a)},
        {"epsilon_bound_margin", eps.margin},
    };
    bool passed = rep.equality_residual <= cfg.tol && rep.involution_residual <= cfg.tol &&
                  rep.unitarity_residual <= cfg.tol && eps.passed;

    emit_report(cfg, wstar::Json{{"command", "analyze"},
                                 {"config", config_json(cfg)},
                                 {"results", std::move(results)},
                                 {"residuals", std::move(residuals)},
                                 {"passed", passed},
                                 {"version", kVersion}});
    return passed ? 0 : 1;
}

int cmd_pairing(const RunConfig& cfg) {
    std::vector<double> lambdas = parse_double_list(cfg.lambdas);
    wstar::PairingOutcome out = wstar::build_pairing_unitary(lambdas, cfg.epsilon);

    wstar::Json pairs = wstar::Json::array();
    for (const auto& [n, m] : out.pairs) pairs.push_back(wstar::Json::array({n + 1, m + 1}));

    wstar::Json results{
        {"lambdas", lambdas},
        {"pairs", std::move(pairs)},
        {"unpaired", one_based(out.unpaired)},
        {"feasible", out.feasible},
        {"epsilon", cfg.epsilon},
        {"unitary", wstar::to_json(out.unitary)["blocks"]},
    };
    wstar::Json residuals{
        {"paired_margin", out.paired_margin},
        {"involution_residual", out.report.involution_residual},
    };
    bool passed = out.feasible && out.paired_margin >= -cfg.tol;

    emit_report(cfg, wstar::Json{{"command", "pairing"},
                                 {"config", config_json(cfg)},
                                 {"results", std::move(results)},
                                 {"residuals", std::move(residuals)},
                                 {"passed", passed},
                                 {"version", kVersion}});
    return passed ? 0 : 1;
}

int cmd_ideals(const RunConfig& cfg) {
    std::vector<int> dims = parse_int_list(cfg.shape);
    wstar::AlgebraShape shape = wstar::make_shape(dims);
    if (cfg.exhaustive && shape.num_blocks() > 10)
        throw wstar::ParseError("exhaustive mode is limited to 10 blocks");

    auto to_zero_based = [&](const std::string& s) {
        std::vector<int> idx = parse_int_list(s);
        for (int& i : idx) --i;  // CLI indices are 1-based
        return wstar::make_ideal(shape, idx);
    };

    bool all_passed = true;
    wstar::Json cases = wstar::Json::array();
    int pairs_checked = 0, calkin_checked = 0;

    auto run_pair = [&](const wstar::BlockIdealSpec& i, const wstar::BlockIdealSpec& j) {
        wstar::HoffmanResult h = wstar::hoffman_check(i, j);
        all_passed = all_passed && h.passed;
        ++pairs_checked;
        if (!cfg.exhaustive || !h.passed) {
            cases.push_back(wstar::Json{{"ideal_i", one_based(i.member_indices())},
                                        {"ideal_j", one_based(j.member_indices())},
                                        {"hoffman_passed", h.passed},
                                        {"dim_both_sides", h.derivation_side.dimension()}});
        }
    };
    auto run_calkin = [&](const wstar::BlockIdealSpec& i) {
        wstar::CalkinResult c = wstar::calkin_check(i);
        all_passed = all_passed && c.passed;
        ++calkin_checked;
        if (!cfg.exhaustive || !c.passed) {
            cases.push_back(wstar::Json{{"ideal", one_based(i.member_indices())},
                                        {"calkin_passed", c.passed},
                                        {"preimage_dim", c.preimage_dim},
                                        {"center_plus_ideal_dim", c.center_plus_ideal_dim}});
        }
    };

    if (cfg.exhaustive) {
        int nb = shape.num_blocks();
        std::vector<wstar::BlockIdealSpec> subsets;
        for (unsigned long mask = 0; mask < (1ul << nb); ++mask) {
            std::vector<int> idx;
            for (int k = 0; k < nb; ++k)
                if (mask & (1ul << k)) idx.push_back(k);
            subsets.push_back(wstar::make_ideal(shape, idx));
        }
        for (const auto& i : subsets)
            for (const auto& j : subsets) run_pair(i, j);
        for (const auto& i : subsets) run_calkin(i);
    } else {
        wstar::BlockIdealSpec i = to_zero_based(cfg.ideal_i);
        wstar::BlockIdealSpec j = to_zero_based(cfg.ideal_j);
        run_pair(i, j);
        run_calkin(i);
        run_calkin(j);
    }

    wstar::Json results{{"shape", dims},
                        {"pairs_checked", pairs_checked},
                        {"calkin_checked", calkin_checked},
                        {"cases", std::move(cases)},
                        {"all_passed", all_passed}};

    emit_report(cfg, wstar::Json{{"command", "ideals"},
                                 {"config", config_json(cfg)},
                                 {"results", std::move(results)},
                                 {"residuals", wstar::Json::object()},
                                 {"passed", all_passed},
                                 {"version", kVersion}});
    return all_passed ? 0 : 1;
}

int cmd_oracle(const RunConfig& cfg) {
    wstar::BlockElement a = wstar::parse_element(read_json_file(cfg.input_path), cfg.tol);

    wstar::CentralElement c = cfg.c0_override.empty()
                                  ? wstar::c0_compute(a, cfg.tol)
                                  : wstar::make_central(a.shape, parse_double_list(cfg.c0_override));
    wstar::PermutationOracleResult oracle = wstar::oracle_best_permutation(a, c, cfg.tol);
    wstar::SakaiResult sakai = wstar::sakai_check(a, cfg.samples, cfg.seed, cfg.tol);

    wstar::Json perms = wstar::Json::array();
    for (std::size_t k = 0; k < oracle.achieving_perm.size(); ++k) {
        wstar::Json entry{{"reversal_achieves", static_cast<bool>(oracle.reversal_achieves[k])}};
        entry["achieving_permutation"] =
            oracle.achieving_perm[k] ? one_based(*oracle.achieving_perm[k]) : wstar::Json();
        perms.push_back(std::move(entry));
    }

    wstar::Json results{
        {"center", wstar::real_scalars(c)},
        {"blocks", std::move(perms)},
        {"achieved", oracle.achieved},
        {"sakai",
         {{"delta_norm_lower", sakai.delta_norm_lower},
          {"dist", sakai.dist},
          {"passed", sakai.passed},
          {"upper_bound_ok", sakai.upper_bound_ok}}},
    };
    bool passed = oracle.achieved && sakai.passed && sakai.upper_bound_ok;

    emit_report(cfg, wstar::Json{{"command", "oracle"},
                                 {"config", config_json(cfg)},
                                 {"results", std::move(results)},
                                 {"residuals", wstar::Json::object()},
                                 {"passed", passed},
                                 {"version", kVersion}});
    return passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    if (const char* env_tol = std::getenv("WSTAR_TOL")) {
        try {
            cfg.tol = std::stod(env_tol);
        } catch (const std::exception&) {
            std::cerr << "error: WSTAR_TOL is not a number\n";
            return 2;
        }
    }

    CLI::App app{"finite W*-algebra commutator toolkit"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--tol", cfg.tol, "absolute tolerance")->capture_default_str();
        sub->add_option("--format", cfg.format, "report format")
            ->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
        sub->add_option("--output", cfg.output_path, "write the report to a file");
        sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    };

    CLI::App* analyze = app.add_subcommand("analyze", "c0, median interval, equality unitary");
    analyze->add_option("--input", cfg.input_path, "element JSON file")->required();
    analyze->add_option("--c0-override", cfg.c0_override, "comma-separated center, one per block");
    analyze->add_option("--epsilon", cfg.epsilon, "epsilon for the lower-bound check")
        ->capture_default_str();
    add_common(analyze);

    CLI::App* pairing = app.add_subcommand("pairing", "greedy ε-pairing of a diagonal sequence");
    pairing->add_option("--lambdas", cfg.lambdas, "comma-separated positive nonincreasing values")
        ->required();
    pairing->add_option("--epsilon", cfg.epsilon, "pairing threshold in (0,1)")->required();
    add_common(pairing);

    CLI::App* ideals = app.add_subcommand("ideals", "Calkin and Hoffman ideal identities");
    ideals->add_option("--shape", cfg.shape, "comma-separated block dimensions")->required();
    ideals->add_option("--ideal-i", cfg.ideal_i, "1-based block indices of I");
    ideals->add_option("--ideal-j", cfg.ideal_j, "1-based block indices of J");
    ideals->add_flag("--exhaustive", cfg.exhaustive, "check every ordered ideal pair");
    add_common(ideals);

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force permutation search + norm sandwich");
    oracle->add_option("--input", cfg.input_path, "element JSON file")->required();
    oracle->add_option("--samples", cfg.samples, "unitary samples")->capture_default_str();
    oracle->add_option("--c0-override", cfg.c0_override, "comma-separated center, one per block");
    add_common(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (!(cfg.tol > 0.0)) {
        std::cerr << "error: tol must be positive\n";
        return 2;
    }
    if (cfg.samples < 1) {
        std::cerr << "error: samples must be >= 1\n";
        return 2;
    }

    try {
        if (analyze->parsed()) {
            cfg.command = "analyze";
            if (!(cfg.epsilon >= 0.0 && cfg.epsilon < 1.0)) {
                std::cerr << "error: epsilon must lie in [0,1)\n";
                return 2;
            }
            return cmd_analyze(cfg);
        }
        if (pairing->parsed()) {
            cfg.command = "pairing";
            return cmd_pairing(cfg);
        }
        if (ideals->parsed()) {
            cfg.command = "ideals";
            return cmd_ideals(cfg);
        }
        if (oracle->parsed()) {
            cfg.command = "oracle";
            return cmd_oracle(cfg);
        }
    } catch (const wstar::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
