#include "bbpg/campaign.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace bbpg {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, int trial, std::uint64_t stream) {
    return splitmix64(splitmix64(seed ^ (stream * 0xd1b54a32d192ed03ULL)) + static_cast<std::uint64_t>(trial));
}

constexpr std::uint64_t instance_stream = 1;
constexpr std::uint64_t start_stream = 2;

double parse_number(const std::string& field, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != value.size() || value.empty()) throw InputError("quadratic: bad value '" + value + "' for " + field);
    return v;
}

}  // namespace

std::string ProblemSource::label() const {
    if (!quadratic) return key;
    std::ostringstream os;
    os << "quadratic:n=" << quadratic->n;
    if (quadratic->bounds) os << ",xl=" << quadratic->bounds->lower[0] << ",xu=" << quadratic->bounds->upper[0];
    return os.str();
}

ProblemSource parse_problem_source(const std::string& text) {
    ProblemSource src;
    const std::string prefix = "quadratic";
    if (text.rfind(prefix, 0) != 0) {
        make_named(text);  // validates the key
        src.key = text;
        return src;
    }
    QuadraticSpec spec;
    double xl = -2.0;
    double xu = 2.0;
    bool unbounded = false;
    std::string rest = text.substr(prefix.size());
    if (!rest.empty()) {
        if (rest.front() != ':') throw InputError("quadratic: expected 'quadratic:key=value,...'");
        std::istringstream fields(rest.substr(1));
        std::string field;
        while (std::getline(fields, field, ',')) {
            if (field.empty()) continue;
            const auto eq = field.find('=');
            if (eq == std::string::npos) throw InputError("quadratic: field '" + field + "' lacks '='");
            const std::string k = field.substr(0, eq);
            if (k == "seed") {
                const std::string value = field.substr(eq + 1);
                std::size_t used = 0;
                try {
                    src.instance_seed = std::stoull(value, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used == 0 || used != value.size()) throw InputError("quadratic: bad seed '" + value + "'");
                continue;
            }
            const double v = parse_number(k, field.substr(eq + 1));
            if (k == "n") {
                require(v >= 1 && v == std::floor(v), "quadratic: n must be a positive integer");
                spec.n = static_cast<Eigen::Index>(v);
            } else if (k == "xl") {
                xl = v;
            } else if (k == "xu") {
                xu = v;
            } else if (k == "l1") {
                spec.l1 = v != 0.0;
            } else if (k == "unbounded") {
                unbounded = v != 0.0;
            } else if (k == "redraw") {
                src.redraw_per_trial = v != 0.0;
            } else {
                throw InputError("quadratic: unknown field '" + k + "' (expected n, xl, xu, seed, redraw, l1, unbounded)");
            }
        }
    }
    require(xl < xu, "quadratic: need xl < xu");
    if (unbounded) {
        spec.bounds.reset();
    } else {
        spec.bounds = Bounds{Vector::Constant(spec.n, xl), Vector::Constant(spec.n, xu)};
    }
    src.key = "quadratic";
    src.quadratic = spec;
    return src;
}

AlgorithmSpec algorithm_spec(const std::string& name, double d_tol, int max_iters) {
    AlgorithmSpec a;
    a.config.algorithm = parse_algorithm(name);
    a.config.d_tol = d_tol;
    a.config.max_iters = max_iters;
    a.label = name;
    return a;
}

bool ExperimentSummary::any_hard_failure() const {
    return std::any_of(rows.begin(), rows.end(), [](const TrialRow& r) {
        return r.status == SolveStatus::LineSearchFailure || r.status == SolveStatus::DualFailure ||
               r.status == SolveStatus::Error;
    });
}

std::uint64_t hash_vector(const Vector& v) {
    std::uint64_t h = 14695981039346656037ULL;
    const auto* p = reinterpret_cast<const unsigned char*>(v.data());
    const std::size_t len = static_cast<std::size_t>(v.size()) * sizeof(double);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

Vector sample_start(const Problem& problem, StartSampling sampling, std::uint64_t seed, int trial,
                    double free_start_radius) {
    std::mt19937_64 rng(stream_seed(seed, trial, start_stream));
    const Eigen::Index n = problem.n();
    if (sampling == StartSampling::Auto) {
        sampling = std::holds_alternative<SimplexIndicator>(problem.nonsmooth().kind()) ? StartSampling::UniformSimplex
                                                                                         : StartSampling::UniformBox;
    }
    Vector x(n);
    if (sampling == StartSampling::UniformSimplex) {
        std::exponential_distribution<double> expo(1.0);
        for (Eigen::Index j = 0; j < n; ++j) x[j] = expo(rng);
        return x / x.sum();
    }
    Vector lo = Vector::Constant(n, -free_start_radius);
    Vector hi = Vector::Constant(n, free_start_radius);
    if (problem.bounds()) {
        lo = problem.bounds()->lower;
        hi = problem.bounds()->upper;
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (Eigen::Index j = 0; j < n; ++j) x[j] = lo[j] + unit(rng) * (hi[j] - lo[j]);
    return x;
}

std::uint64_t quadratic_instance_seed(const ProblemSource& source, std::uint64_t seed, int trial) {
    const int draw = source.redraw_per_trial ? trial : 0;
    if (source.instance_seed) return source.redraw_per_trial ? stream_seed(*source.instance_seed, draw, instance_stream)
                                                              : *source.instance_seed;
    return stream_seed(seed, draw, instance_stream);
}

Problem trial_problem(const ProblemSource& source, std::uint64_t seed, int trial) {
    if (source.markowitz_data && source.key == "Markowitz") return make_markowitz(*source.markowitz_data);
    if (!source.quadratic) return make_named(source.key);
    QuadraticSpec spec = *source.quadratic;
    spec.seed = quadratic_instance_seed(source, seed, trial);
    return make_quadratic(spec);
}

std::vector<AlgorithmSummary> summarize(const std::vector<TrialRow>& rows, const std::vector<std::string>& algos) {
    std::vector<AlgorithmSummary> out;
    for (std::size_t a = 0; a < algos.size(); ++a) {
        AlgorithmSummary s;
        s.algo = algos[a];
        int counted = 0;
        int step_runs = 0;
        for (const auto& r : rows) {
            if (r.algo_index != a) continue;
            ++s.runs;
            const bool hard = r.status == SolveStatus::LineSearchFailure || r.status == SolveStatus::DualFailure ||
                              r.status == SolveStatus::Error;
            if (hard) {
                ++s.hard_failures;
                continue;
            }
            if (r.status == SolveStatus::MaxIters) ++s.max_iter_runs;
            ++counted;
            s.iter_mean += r.iters;
            s.feval_mean += static_cast<double>(r.feval);
            s.time_ms_mean += r.time_ms;
            if (r.stepsize) {
                s.stepsize_mean += *r.stepsize;
                ++step_runs;
            }
        }
        s.failures = s.hard_failures + s.max_iter_runs;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        if (counted > 0) {
            s.iter_mean /= counted;
            s.feval_mean /= counted;
            s.time_ms_mean /= counted;
        } else {
            s.iter_mean = s.feval_mean = s.time_ms_mean = nan;
        }
        s.stepsize_mean = step_runs > 0 ? s.stepsize_mean / step_runs : nan;
        out.push_back(s);
    }
    return out;
}

ExperimentSummary run_campaign(const ExperimentSpec& spec) {
    require(spec.trials >= 0, "campaign: trials must be nonnegative");
    ExperimentSummary summary;
    summary.problem = spec.problem.label();

    const auto trials = static_cast<std::size_t>(spec.trials);
    const std::size_t n_algos = spec.algorithms.size();
    std::vector<Problem> problems;
    std::vector<Vector> starts;
    std::vector<std::uint64_t> instance_hashes;
    problems.reserve(trials);
    for (int t = 0; t < spec.trials; ++t) {
        if (spec.problem.quadratic) {
            QuadraticSpec qs = *spec.problem.quadratic;
            qs.seed = quadratic_instance_seed(spec.problem, spec.seed, t);
            instance_hashes.push_back(generate_quadratic(qs).fingerprint());
        } else {
            instance_hashes.push_back(0);
        }
        problems.push_back(trial_problem(spec.problem, spec.seed, t));
        starts.push_back(sample_start(problems.back(), spec.sampling, spec.seed, t, spec.free_start_radius));
    }
    if (!problems.empty()) {
        summary.n = problems.front().n();
        summary.m = problems.front().m();
    } else {
        const Problem probe = trial_problem(spec.problem, spec.seed, 0);
        summary.n = probe.n();
        summary.m = probe.m();
    }
    for (const auto& a : spec.algorithms) {
        for (const auto& p : problems) validate_config(p, a.config);
    }

    const std::size_t tasks = trials * n_algos;
    summary.rows.resize(tasks);
    if (spec.keep_reports) summary.reports.resize(tasks);
    detail::parallel_for(tasks, spec.jobs, [&](std::size_t k) {
        const std::size_t t = k / n_algos;
        const std::size_t a = k % n_algos;
        SolveReport rep;
        try {
            rep = solve(problems[t], starts[t], spec.algorithms[a].config);
        } catch (const Error& e) {
            rep.status = SolveStatus::Error;
            rep.x0 = starts[t];
            rep.message = e.what();
        }
        TrialRow row;
        row.trial = static_cast<int>(t);
        row.algo_index = a;
        row.algo = spec.algorithms[a].label;
        row.status = rep.status;
        row.iters = rep.iters;
        row.feval = rep.feval();
        row.time_ms = rep.total_ms;
        row.stepsize = rep.mean_stepsize();
        row.x0 = starts[t];
        row.x0_hash = hash_vector(starts[t]);
        row.instance_hash = instance_hashes[t];
        row.final_x = rep.final_x;
        row.final_F = rep.final_F;
        row.message = rep.message;
        summary.rows[k] = std::move(row);
        if (spec.keep_reports) summary.reports[k] = std::move(rep);
    });

    std::vector<std::string> labels;
    for (const auto& a : spec.algorithms) labels.push_back(a.label);
    summary.algorithms = summarize(summary.rows, labels);
    return summary;
}

std::vector<std::pair<std::size_t, std::size_t>> dominated_pairs(const std::vector<Vector>& points, double tol) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t p = 0; p < points.size(); ++p) {
        for (std::size_t q = 0; q < points.size(); ++q) {
            if (p == q) continue;
            const auto& a = points[p].array();
            const auto& b = points[q].array();
            if ((a <= b + tol).all() && (a < b - tol).any()) out.emplace_back(p, q);
        }
    }
    return out;
}

}  // namespace bbpg
