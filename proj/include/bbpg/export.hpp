#pragma once

#include "bbpg/campaign.hpp"

#include <string>
#include <vector>

namespace bbpg {

struct ExportResult {
    std::vector<std::string> files;
    std::vector<std::string> notices;
};

/// Writes summary.csv, raw.csv and pareto.csv into out_dir (created if
/// missing), plus front.svg when m = 2 and variables.svg when n = 2.
/// Throws Error with the offending path on I/O failure.
ExportResult export_results(const ExperimentSummary& summary, const std::string& out_dir);

std::string summary_csv(const ExperimentSummary& summary);
std::string raw_csv(const ExperimentSummary& summary);
std::string pareto_csv(const ExperimentSummary& summary);

/// Minimal scatter plot (axes, points, legend), one colour per series.
struct ScatterSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};
std::string scatter_svg(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                        const std::vector<ScatterSeries>& series);

}  // namespace bbpg
