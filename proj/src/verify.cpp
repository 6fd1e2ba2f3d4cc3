#include "bbpg/verify.hpp"

#include "bbpg/campaign.hpp"
#include "bbpg/dual_subproblem.hpp"
#include "bbpg/test_problems.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace bbpg {

int descent_violations(const SolveReport& rep, double tol) {
    int bad = 0;
    for (const auto& r : rep.trace) {
        const double dd = r.d_norm * r.d_norm;
        for (Eigen::Index i = 0; i < r.model_decrease.size(); ++i) {
            if (r.model_decrease[i] > -r.alphas[i] * dd + tol) {
                ++bad;
                break;
            }
        }
    }
    return bad;
}

int equal_descent_violations(const SolveReport& rep, double lambda_floor) {
    int bad = 0;
    for (const auto& r : rep.trace) {
        const double tol = std::max(1e-6, 10.0 * r.fw_gap);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        int active = 0;
        for (Eigen::Index i = 0; i < r.lambda.size(); ++i) {
            if (r.lambda[i] < lambda_floor) continue;
            const double ratio = r.model_decrease[i] / r.alphas[i];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            ++active;
        }
        if (active >= 2 && hi - lo > tol) ++bad;
    }
    return bad;
}

int stepsize_floor_violations(const SolveReport& rep, const Problem& problem, const LineSearchConfig& ls) {
    const auto L = problem.lipschitz();
    if (!L) return 0;
    int bad = 0;
    for (const auto& r : rep.trace) {
        if (r.armijo_rhs.size() == 0) continue;
        double floor = 1.0;
        for (Eigen::Index i = 0; i < L->size(); ++i) {
            if ((*L)[i] > 0.0) floor = std::min(floor, 2.0 * ls.gamma * (1.0 - ls.sigma) * r.alphas[i] / (*L)[i]);
        }
        floor = std::min(floor, r.t_cap);
        if (r.t < floor - 1e-12) ++bad;
    }
    return bad;
}

int adaptive_bound_violations(const SolveReport& rep, const Problem& problem, double tau, double alpha_min) {
    const auto L = problem.lipschitz();
    if (!L) return 0;
    int bad = 0;
    for (const auto& r : rep.trace) {
        bool ok = true;
        for (Eigen::Index i = 0; i < L->size(); ++i) {
            const double Li = (*L)[i];
            if (Li < alpha_min) continue;
            const int limit = static_cast<int>(std::ceil(std::log(Li / alpha_min) / std::log(tau))) + 1;
            if (r.alphas[i] >= tau * Li) ok = false;
            if (!r.inflations.empty() && r.inflations[static_cast<std::size_t>(i)] > limit) ok = false;
        }
        if (!ok) ++bad;
    }
    return bad;
}

namespace {

CheckResult check(std::string name, bool passed, std::string detail = {}) {
    return CheckResult{std::move(name), passed, std::move(detail)};
}

std::string count_detail(const std::string& what, long long bad, long long total) {
    std::ostringstream os;
    os << bad << " " << what << " in " << total;
    return os.str();
}

CheckResult gradients_check() {
    std::mt19937_64 rng(7);
    double worst = 0.0;
    std::string worst_key;
    for (const auto& info : registered_problems()) {
        const Problem p = make_named(info.key);
        for (int k = 0; k < 5; ++k) {
            const Vector x = sample_start(p, StartSampling::Auto, 7, k);
            const double e = jacobian_fd_error(p, x);
            if (e > worst) {
                worst = e;
                worst_key = info.key;
            }
        }
    }
    return check("gradients match finite differences", worst <= 1e-5,
                 "worst relative error " + std::to_string(worst) + (worst_key.empty() ? "" : " (" + worst_key + ")"));
}

CheckResult simplex_projection_check() {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd(0.0, 3.0);
    int bad = 0;
    for (int k = 0; k < 200; ++k) {
        Vector v(1 + k % 9);
        for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = nd(rng);
        const Vector p = project_simplex(v);
        if (std::abs(p.sum() - 1.0) > 1e-12 || (p.array() < 0.0).any()) ++bad;
    }
    return check("simplex projection lands on the simplex", bad == 0, count_detail("violations", bad, 200));
}

CheckResult dual_gradient_check() {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int inst = 0; inst < 10; ++inst) {
        QuadraticSpec qs;
        qs.n = 3;
        qs.seed = 100 + static_cast<std::uint64_t>(inst);
        qs.bounds = Bounds{Vector::Constant(3, -2.0), Vector::Constant(3, 2.0)};
        const Problem p = make_quadratic(qs);
        Evaluator ev(p);
        const Vector x = sample_start(p, StartSampling::UniformBox, 13, inst);
        SubproblemInput inp{x, ev.evaluate_jacobian(x), ev.nonsmooth_values(x), Vector::Constant(2, 1.0 + 10 * unit(rng)),
                            p.nonsmooth().kind()};
        for (int k = 0; k < 10; ++k) {
            const double l1 = 0.05 + 0.9 * unit(rng);
            Vector lam(2);
            lam << l1, 1.0 - l1;
            const Vector g = omega_gradient(inp, lam);
            const double h = 1e-6;
            for (Eigen::Index i = 0; i < 2; ++i) {
                Vector lp = lam, lm = lam;
                lp[i] += h;
                lm[i] -= h;
                const double fd = (omega_value(inp, lp) - omega_value(inp, lm)) / (2 * h);
                worst = std::max(worst, std::abs(fd - g[i]) / std::max({1.0, std::abs(fd), std::abs(g[i])}));
            }
        }
    }
    return check("dual gradient matches finite differences", worst <= 1e-5,
                 "worst relative error " + std::to_string(worst));
}

CheckResult markowitz_check() {
    const double ev = simplex_tangent_min_eigenvalue(markowitz_data().sigma);
    return check("Markowitz covariance is PSD along the simplex", ev >= -1e-10,
                 "smallest tangent eigenvalue " + std::to_string(ev));
}

std::vector<CheckResult> trace_checks(int jobs) {
    std::vector<CheckResult> out;
    struct Case {
        std::string source;
        int trials;
    };
    const std::vector<Case> cases = {{"quadratic:n=2,xl=-2,xu=2", 40}, {"quadratic:n=10,xl=-2,xu=2", 20},
                                     {"BK1", 20}, {"JOS1a", 10}, {"Markowitz", 20}};
    const std::vector<std::string> algos = {"bbpgmo", "pgmo_ls", "pgmo_L", "abbpgmo"};
    long long iters = 0, descent = 0, equal = 0, floor = 0, adaptive = 0, hard = 0, runs = 0;
    for (const auto& c : cases) {
        ExperimentSpec spec;
        spec.problem = parse_problem_source(c.source);
        spec.trials = c.trials;
        spec.seed = 2024;
        spec.jobs = jobs;
        spec.keep_reports = true;
        for (const auto& a : algos) spec.algorithms.push_back(algorithm_spec(a));
        const ExperimentSummary s = run_campaign(spec);
        for (std::size_t k = 0; k < s.rows.size(); ++k) {
            const SolveReport& rep = s.reports[k];
            const Problem p = trial_problem(spec.problem, spec.seed, s.rows[k].trial);
            const SolverConfig& cfg = spec.algorithms[s.rows[k].algo_index].config;
            ++runs;
            iters += static_cast<long long>(rep.trace.size());
            if (rep.hard_failure()) ++hard;
            descent += descent_violations(rep);
            equal += equal_descent_violations(rep);
            floor += stepsize_floor_violations(rep, p, cfg.ls);
            if (cfg.algorithm == Algorithm::AdaptiveBbpgmo) {
                adaptive += adaptive_bound_violations(rep, p, cfg.tau, cfg.bb.alpha_min);
            }
        }
    }
    out.push_back(check("no hard solver failures", hard == 0, count_detail("failed runs", hard, runs)));
    out.push_back(check("descent certificate", descent == 0, count_detail("violations", descent, iters)));
    out.push_back(check("scaled equal descent", equal == 0, count_detail("violations", equal, iters)));
    out.push_back(check("Armijo stepsize floor", floor == 0, count_detail("violations", floor, iters)));
    out.push_back(check("adaptive scalar bound", adaptive == 0, count_detail("violations", adaptive, iters)));
    return out;
}

CheckResult determinism_check() {
    ExperimentSpec spec;
    spec.problem = parse_problem_source("quadratic:n=4,xl=-2,xu=2");
    spec.trials = 5;
    spec.seed = 99;
    spec.algorithms = {algorithm_spec("bbpgmo"), algorithm_spec("bbpgmo")};
    const ExperimentSummary a = run_campaign(spec);
    spec.jobs = 4;
    const ExperimentSummary b = run_campaign(spec);
    bool same = a.rows.size() == b.rows.size();
    for (std::size_t k = 0; same && k < a.rows.size(); ++k) {
        same = a.rows[k].iters == b.rows[k].iters && a.rows[k].final_x == b.rows[k].final_x &&
               a.rows[k].x0_hash == b.rows[k].x0_hash;
    }
    for (std::size_t k = 0; same && k + 1 < a.rows.size(); k += 2) {
        same = a.rows[k].final_x == a.rows[k + 1].final_x;
    }
    return check("campaigns are deterministic", same);
}

CheckResult front_check() {
    ExperimentSpec spec;
    spec.problem = parse_problem_source("Markowitz");
    spec.trials = 30;
    spec.seed = 5;
    spec.algorithms = {algorithm_spec("bbpgmo")};
    const ExperimentSummary s = run_campaign(spec);
    std::vector<Vector> pts;
    for (const auto& r : s.rows) {
        if (r.status == SolveStatus::CriticalPoint) pts.push_back(r.final_F);
    }
    const auto pairs = dominated_pairs(pts);
    return check("converged Markowitz points are mutually nondominated", pairs.empty(),
                 count_detail("dominated pairs", static_cast<long long>(pairs.size()),
                              static_cast<long long>(pts.size())));
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(int jobs) {
    std::vector<CheckResult> out;
    out.push_back(gradients_check());
    out.push_back(simplex_projection_check());
    out.push_back(dual_gradient_check());
    out.push_back(markowitz_check());
    for (auto& c : trace_checks(jobs)) out.push_back(std::move(c));
    out.push_back(determinism_check());
    out.push_back(front_check());
    return out;
}

}  // namespace bbpg
