// bench: campaign runner and self-check for the multiobjective solvers.

#include "bbpg/campaign.hpp"
#include "bbpg/export.hpp"
#include "bbpg/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <thread>

namespace {

struct RunOptions {
    std::string problem;
    std::vector<std::string> algos{"bbpgmo", "pgmo_ls", "pgmo_mu", "pgmo_L", "abbpgmo"};
    int trials = 200;
    std::uint64_t seed = 0;
    std::string out = "bench_out";
    int jobs = 1;
    double d_tol = 1e-6;
    int max_iters = 500;
    std::optional<double> ell;
    double tau = 2.0;
    double alpha_min = 1e-3;
    double alpha_max = 1e3;
    double fw_tol = 1e-10;
    std::string sampling = "auto";
    std::string returns;
};

bbpg::StartSampling parse_sampling(const std::string& s) {
    if (s == "auto") return bbpg::StartSampling::Auto;
    if (s == "box") return bbpg::StartSampling::UniformBox;
    if (s == "simplex") return bbpg::StartSampling::UniformSimplex;
    throw bbpg::InputError("unknown sampling '" + s + "' (expected auto, box or simplex)");
}

int run(const RunOptions& o) {
    bbpg::ExperimentSpec spec;
    spec.problem = bbpg::parse_problem_source(o.problem);
    if (!o.returns.empty()) {
        if (spec.problem.key != "Markowitz") throw bbpg::InputError("--returns only applies to --problem Markowitz");
        spec.problem.markowitz_data = bbpg::load_returns_table(o.returns);
    }
    spec.trials = o.trials;
    spec.seed = o.seed;
    spec.jobs = o.jobs;
    spec.sampling = parse_sampling(o.sampling);
    for (const auto& name : o.algos) {
        auto a = bbpg::algorithm_spec(name, o.d_tol, o.max_iters);
        a.config.ell = o.ell;
        a.config.tau = o.tau;
        a.config.bb.alpha_min = o.alpha_min;
        a.config.bb.alpha_max = o.alpha_max;
        a.config.fw.gap_tol = o.fw_tol;
        spec.algorithms.push_back(std::move(a));
    }

    const bbpg::ExperimentSummary summary = bbpg::run_campaign(spec);
    const bbpg::ExportResult files = bbpg::export_results(summary, o.out);

    std::cout << bbpg::summary_csv(summary);
    for (const auto& n : files.notices) std::cout << "note: " << n << '\n';
    for (const auto& f : files.files) std::cout << "wrote " << f << '\n';
    for (const auto& r : summary.rows) {
        if (r.status == bbpg::SolveStatus::LineSearchFailure || r.status == bbpg::SolveStatus::DualFailure ||
            r.status == bbpg::SolveStatus::Error) {
            std::cerr << "trial " << r.trial << ' ' << r.algo << ": " << bbpg::status_name(r.status) << ": "
                      << r.message << '\n';
        }
    }
    return summary.any_hard_failure() ? 1 : 0;
}

int verify(int jobs) {
    bool ok = true;
    for (const auto& c : bbpg::run_invariant_suite(jobs)) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) std::cout << " (" << c.detail << ')';
        std::cout << '\n';
        ok = ok && c.passed;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiobjective proximal gradient benchmark runner"};
    app.require_subcommand(1);

    RunOptions o;
    app.set_config("--config", "", "key=value file mirroring the run flags (under a [run] section)");
    auto* run_cmd = app.add_subcommand("run", "Run a campaign and export CSV/SVG results");
    run_cmd->fallthrough();
    run_cmd->add_option("--problem", o.problem, "Registered key or quadratic:n=..,xl=..,xu=..")->required();
    run_cmd->add_option("--algos", o.algos, "Comma-separated algorithm list")->delimiter(',')->capture_default_str();
    run_cmd->add_option("--trials", o.trials, "Number of start points")->check(CLI::NonNegativeNumber)->capture_default_str();
    run_cmd->add_option("--seed", o.seed, "Campaign seed")->capture_default_str();
    run_cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
    run_cmd->add_option("--jobs", o.jobs, "Concurrent solves")->check(CLI::PositiveNumber)->capture_default_str();
    run_cmd->add_option("--d-tol", o.d_tol, "Stop when ||d|| <= d-tol")->check(CLI::PositiveNumber)->capture_default_str();
    run_cmd->add_option("--max-iters", o.max_iters, "Iteration limit")->check(CLI::NonNegativeNumber)->capture_default_str();
    run_cmd->add_option("--ell", o.ell, "Constant scalar for pgmo_ls / pgmo_fixed");
    run_cmd->add_option("--tau", o.tau, "Inflation factor for abbpgmo")->capture_default_str();
    run_cmd->add_option("--alpha-min", o.alpha_min, "Lower clamp of the BB scalars")->capture_default_str();
    run_cmd->add_option("--alpha-max", o.alpha_max, "Upper clamp of the BB scalars")->capture_default_str();
    run_cmd->add_option("--fw-tol", o.fw_tol, "Frank-Wolfe gap tolerance")->capture_default_str();
    run_cmd->add_option("--sampling", o.sampling, "Start sampling: auto, box or simplex")->capture_default_str();
    run_cmd->add_option("--returns", o.returns, "Gross-returns table replacing the embedded Markowitz data");

    int verify_jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    auto* verify_cmd = app.add_subcommand("verify", "Run the invariant self-check suite");
    verify_cmd->add_option("--jobs", verify_jobs, "Concurrent solves")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);
    try {
        if (*run_cmd) return run(o);
        return verify(verify_jobs);
    } catch (const bbpg::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
