#include "tdesign/distinction.hpp"
#include "tdesign/json_io.hpp"
#include "tdesign/parallel.hpp"
#include "tdesign/povm_sim.hpp"
#include "tdesign/version.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using tdesign::Json;

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << j.dump(2) << "\n";
    }
}

tdesign::DesignEnsemble build_from_flags(const std::string& variant, std::uint64_t n, unsigned t,
                                         double epsilon, const std::string& spec_path) {
    if (!spec_path.empty()) {
        std::ifstream in(spec_path);
        if (!in) throw std::invalid_argument("cannot open " + spec_path);
        Json spec;
        in >> spec;
        return tdesign::ensemble_from_spec(spec);
    }
    if (variant == "main") return tdesign::DesignEnsemble::main(n, t);
    if (variant == "improved") return tdesign::DesignEnsemble::improved(n, t, epsilon);
    if (variant == "mub") return tdesign::DesignEnsemble::mub(n);
    throw std::invalid_argument("unknown variant " + variant);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum state t-design construction, verification and distinction"};
    app.require_subcommand(1);

    std::string out_path;
    unsigned threads = 0;
    app.add_option("--out", out_path, "write the JSON artifact to this path instead of stdout");
    app.add_option("--threads", threads, "cap worker threads (default: TDESIGN_THREADS or hardware)");

    std::string variant = "main";
    std::uint64_t n = 0;
    unsigned t = 1;
    double epsilon = 0.1;
    std::string spec_path, monomial_text, rho1_path, rho2_path, state_path;
    std::uint64_t seed = 0, count = 0;
    std::uint64_t budget_monomials = 2'000'000'000ull;
    std::uint64_t budget_frame = 4096;
    unsigned baseline_trials = 0;
    bool per_monomial = false;
    bool with_epsilon_hat = false;

    auto* c_quad = app.add_subcommand("quadrature", "dump the moment-matching rule, optionally rounded to 1/N");
    c_quad->add_option("--t", t, "design order")->required();
    c_quad->add_option("--n", n, "round weights to multiples of 1/N when given");

    auto* c_haar = app.add_subcommand("haar-moment", "exact Haar expectation of an amplitude monomial");
    c_haar->add_option("--n", n, "dimension")->required();
    c_haar->add_option("--monomial", monomial_text,
                       "terms \"index:c,d;...\" or balanced shorthand \"index:e,index:e\"")
        ->required();

    auto* c_build = app.add_subcommand("build", "emit the parametric ensemble spec");
    c_build->add_option("--variant", variant, "main|improved|mub");
    c_build->add_option("--n", n, "dimension")->required();
    c_build->add_option("--t", t, "design order");
    c_build->add_option("--epsilon", epsilon, "target epsilon (improved variant)");

    auto* c_verify = app.add_subcommand("verify", "measure design closeness (frame operator + monomial conditions)");
    c_verify->add_option("--variant", variant, "main|improved|mub");
    c_verify->add_option("--n", n, "dimension");
    c_verify->add_option("--t", t, "design order");
    c_verify->add_option("--epsilon", epsilon, "target epsilon (improved variant)");
    c_verify->add_option("--spec", spec_path, "rebuild the ensemble from a spec file");
    c_verify->add_option("--budget-monomials", budget_monomials, "full-enumeration cost cap");
    c_verify->add_option("--budget-frame", budget_frame, "symmetric-dimension cap");
    c_verify->add_flag("--per-monomial", per_monomial, "include the per-monomial table");

    auto* c_dist = app.add_subcommand("distinguish", "POVM distinction report for two density matrices");
    c_dist->add_option("--variant", variant, "main|improved|mub");
    c_dist->add_option("--n", n, "dimension");
    c_dist->add_option("--t", t, "design order");
    c_dist->add_option("--epsilon", epsilon, "target epsilon (improved variant)");
    c_dist->add_option("--spec", spec_path, "rebuild the ensemble from a spec file");
    c_dist->add_option("--rho1", rho1_path, "first density matrix (json or csv)")->required();
    c_dist->add_option("--rho2", rho2_path, "second density matrix (json or csv)")->required();
    c_dist->add_option("--baseline-trials", baseline_trials, "Haar-basis Monte-Carlo baseline trials");
    c_dist->add_option("--seed", seed, "seed for the baseline sampler");
    c_dist->add_option("--budget-frame", budget_frame, "symmetric-dimension cap for epsilon-hat");
    c_dist->add_flag("--epsilon-hat", with_epsilon_hat, "measure the design epsilon and report the corrected floor");

    auto* c_mub = app.add_subcommand("mub-check", "MUB (2,2)-design exactness and the distinction counterexample");
    c_mub->add_option("--n", n, "prime dimension")->required();

    auto* c_povm = app.add_subcommand("sample-povm", "two-stage POVM sampling histogram");
    c_povm->add_option("--n", n, "dimension")->required();
    c_povm->add_option("--t", t, "design order")->required();
    c_povm->add_option("--state-file", state_path, "input state (json: {\"amplitudes\": [[re,im],...]})")->required();
    c_povm->add_option("--count", count, "sample count")->required();
    c_povm->add_option("--seed", seed, "sampler seed")->required();

    CLI11_PARSE(app, argc, argv);
    if (threads) tdesign::thread_override().store(threads);

    Json config{{"version", tdesign::kVersion}};

    try {
        if (*c_quad) {
            config["command"] = "quadrature";
            config["t"] = t;
            tdesign::QuadratureRule rule = tdesign::gauss_rule(tdesign::limit_moments(t));
            Json result = tdesign::rule_to_json(rule);
            if (n > 0) {
                config["n"] = n;
                result["rounded_rule"] = tdesign::rule_to_json(tdesign::round_rule(rule, n));
            }
            result["config"] = config;
            emit(result, out_path);
        } else if (*c_haar) {
            config["command"] = "haar-moment";
            config["n"] = n;
            config["monomial"] = monomial_text;
            const tdesign::Monomial mono = tdesign::parse_monomial(monomial_text);
            const tdesign::Rational value = tdesign::haar_expectation(n, mono);
            const auto num = boost::multiprecision::numerator(value);
            const auto den = boost::multiprecision::denominator(value);
            Json result{{"monomial", tdesign::monomial_to_string(mono)},
                        {"value", tdesign::to_double(value)},
                        {"config", config}};
            if (num >= 0 && num <= std::numeric_limits<std::int64_t>::max() &&
                den <= std::numeric_limits<std::int64_t>::max()) {
                result["num"] = num.convert_to<std::int64_t>();
                result["den"] = den.convert_to<std::int64_t>();
            } else {
                result["num"] = num.str();
                result["den"] = den.str();
            }
            emit(result, out_path);
        } else if (*c_build) {
            config["command"] = "build";
            config["variant"] = variant;
            config["n"] = n;
            config["t"] = t;
            const tdesign::DesignEnsemble ens = build_from_flags(variant, n, t, epsilon, "");
            Json result = tdesign::ensemble_spec_to_json(ens);
            result["config"] = config;
            emit(result, out_path);
        } else if (*c_verify) {
            config["command"] = "verify";
            config["variant"] = variant;
            config["n"] = n;
            config["t"] = t;
            config["budget_monomials"] = budget_monomials;
            config["budget_frame"] = budget_frame;
            const tdesign::DesignEnsemble ens = build_from_flags(variant, n, t, epsilon, spec_path);
            const tdesign::VerificationReport rep = tdesign::check_conditions(
                ens, ens.order(), budget_monomials, budget_frame, per_monomial);
            Json result = tdesign::report_to_json(rep);
            result["config"] = config;
            emit(result, out_path);
        } else if (*c_dist) {
            config["command"] = "distinguish";
            config["variant"] = variant;
            config["n"] = n;
            config["t"] = t;
            config["seed"] = seed;
            const tdesign::DesignEnsemble ens = build_from_flags(variant, n, t, epsilon, spec_path);
            const tdesign::DensityMatrix rho1 = tdesign::density_from_file(rho1_path);
            const tdesign::DensityMatrix rho2 = tdesign::density_from_file(rho2_path);
            std::optional<double> eps_hat;
            if (with_epsilon_hat)
                eps_hat = tdesign::approx_epsilon(ens, ens.order(), budget_frame);
            tdesign::DistinctionReport rep = tdesign::distinguish(ens, rho1, rho2, eps_hat);
            if (baseline_trials > 0) {
                const tdesign::BaselineResult base =
                    tdesign::haar_baseline(rho1, rho2, baseline_trials, seed);
                rep.haar_baseline_mean = base.mean;
                rep.haar_baseline_stderr = base.std_error;
            }
            Json result = tdesign::report_to_json(rep);
            result["config"] = config;
            emit(result, out_path);
        } else if (*c_mub) {
            config["command"] = "mub-check";
            config["n"] = n;
            const tdesign::DesignEnsemble ens = tdesign::DesignEnsemble::mub(n);
            const double eps = tdesign::approx_epsilon(ens, 2, budget_frame);
            const double l1 = tdesign::mub_counterexample(n);
            Json result{{"epsilon", eps},
                        {"counterexample_l1", l1},
                        {"counterexample_expected", 2.0 / double(n + 1)},
                        {"size", ens.size()},
                        {"config", config}};
            emit(result, out_path);
        } else if (*c_povm) {
            config["command"] = "sample-povm";
            config["n"] = n;
            config["t"] = t;
            config["count"] = count;
            config["seed"] = seed;
            const tdesign::PureState psi = tdesign::state_from_file(state_path);
            const std::vector<std::uint64_t> hist = tdesign::sample_povm(psi, n, t, count, seed);
            Json result{{"histogram", hist}, {"outcomes", hist.size()}, {"config", config}};
            emit(result, out_path);
        }
    } catch (const std::exception& ex) {
        Json err{{"error", {{"message", ex.what()}, {"config", config}}}};
        emit(err, out_path);
        return 1;
    }
    return 0;
}
