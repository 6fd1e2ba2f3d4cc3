#include "bbpg/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace bbpg {

namespace {

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string hex(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

std::string summary_csv(const ExperimentSummary& summary) {
    std::ostringstream os;
    os << "algo,iter_mean,feval_mean,time_ms_mean,stepsize_mean,failures\n";
    for (const auto& a : summary.algorithms) {
        os << a.algo << ',' << num(a.iter_mean) << ',' << num(a.feval_mean) << ',' << num(a.time_ms_mean) << ','
           << num(a.stepsize_mean) << ',' << a.failures << '\n';
    }
    return os.str();
}

std::string raw_csv(const ExperimentSummary& summary) {
    std::ostringstream os;
    os << "trial,algo,status,iter,feval,time_ms,stepsize,x0_hash,instance_hash\n";
    for (const auto& r : summary.rows) {
        os << r.trial << ',' << r.algo << ',' << status_name(r.status) << ',' << r.iters << ',' << r.feval << ','
           << num(r.time_ms) << ',' << (r.stepsize ? num(*r.stepsize) : "") << ',' << hex(r.x0_hash) << ','
           << hex(r.instance_hash) << '\n';
    }
    return os.str();
}

std::string pareto_csv(const ExperimentSummary& summary) {
    std::ostringstream os;
    os << "trial,algo,status";
    for (Eigen::Index i = 0; i < summary.m; ++i) os << ",F" << i + 1;
    os << '\n';
    for (const auto& r : summary.rows) {
        os << r.trial << ',' << r.algo << ',' << status_name(r.status);
        for (Eigen::Index i = 0; i < summary.m; ++i) {
            os << ',' << (i < r.final_F.size() ? num(r.final_F[i]) : "");
        }
        os << '\n';
    }
    return os.str();
}

std::string scatter_svg(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                        const std::vector<ScatterSeries>& series) {
    constexpr double W = 640, H = 480, left = 70, right = 160, top = 40, bottom = 60;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!(xmin <= xmax)) xmin = 0, xmax = 1;
    if (!(ymin <= ymax)) ymin = 0, ymax = 1;
    if (xmax - xmin < 1e-12) xmin -= 0.5, xmax += 0.5;
    if (ymax - ymin < 1e-12) ymin -= 0.5, ymax += 0.5;
    const double pw = W - left - right, ph = H - top - bottom;
    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
       << ' ' << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape_xml(title)
       << "</text>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\" font-size=\"13\">"
       << escape_xml(xlabel) << "</text>\n";
    os << "<text x=\"18\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
       << top + ph / 2 << ")\">" << escape_xml(ylabel) << "</text>\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = xmin + k * (xmax - xmin) / 4, fy = ymin + k * (ymax - ymin) / 4;
        os << "<text x=\"" << sx(fx) << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\" font-size=\"10\">"
           << num(fx) << "</text>\n";
        os << "<text x=\"" << left - 4 << "\" y=\"" << sy(fy) + 3 << "\" text-anchor=\"end\" font-size=\"10\">"
           << num(fy) << "</text>\n";
    }
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* colour = palette[s % std::size(palette)];
        for (auto [x, y] : series[s].points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            os << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y)) << "\" r=\"2.5\" fill=\"" << colour
               << "\" fill-opacity=\"0.7\"/>\n";
        }
        const double ly = top + 14 + 18 * static_cast<double>(s);
        os << "<circle cx=\"" << W - right + 16 << "\" cy=\"" << ly - 4 << "\" r=\"4\" fill=\"" << colour << "\"/>\n";
        os << "<text x=\"" << W - right + 26 << "\" y=\"" << ly << "\" font-size=\"12\">"
           << escape_xml(series[s].label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

ExportResult export_results(const ExperimentSummary& summary, const std::string& out_dir) {
    namespace fs = std::filesystem;
    ExportResult res;
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory '" + out_dir + "': " + ec.message());

    auto emit = [&](const std::string& name, const std::string& content) {
        const fs::path p = dir / name;
        write_file(p, content);
        res.files.push_back(p.string());
    };
    emit("summary.csv", summary_csv(summary));
    emit("raw.csv", raw_csv(summary));
    emit("pareto.csv", pareto_csv(summary));

    auto series_of = [&](auto&& coords) {
        std::vector<ScatterSeries> out;
        for (const auto& a : summary.algorithms) out.push_back({a.algo, {}});
        for (const auto& r : summary.rows) {
            if (r.algo_index < out.size() && r.final_F.size() > 0) out[r.algo_index].points.push_back(coords(r));
        }
        return out;
    };
    if (summary.m == 2) {
        emit("front.svg", scatter_svg(summary.problem + ": final objective values", "F1", "F2",
                                      series_of([](const TrialRow& r) { return std::pair{r.final_F[0], r.final_F[1]}; })));
    } else {
        res.notices.push_back("m = " + std::to_string(summary.m) + ": value-space scatter needs m = 2; CSV only");
    }
    if (summary.n == 2) {
        emit("variables.svg",
             scatter_svg(summary.problem + ": final points", "x1", "x2",
                         series_of([](const TrialRow& r) { return std::pair{r.final_x[0], r.final_x[1]}; })));
    }
    return res;
}

}  // namespace bbpg
