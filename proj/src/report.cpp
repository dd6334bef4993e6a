#include "ucs/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ucs {

namespace {

double quantize_ms(double seconds) { return std::round(seconds * 1000.0) / 1000.0; }

nlohmann::json matrix_json(const CommitmentMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.units; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int t = 0; t < m.periods; ++t) row.push_back(static_cast<int>(m.at(i, t)));
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json matrix_json(const DispatchMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.units; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int t = 0; t < m.periods; ++t) row.push_back(m.at(i, t));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

nlohmann::json report_to_json(const SearchReport& report) {
    nlohmann::json doc;
    doc["schema_version"] = 1;
    doc["approach"] = report.approach;
    doc["seed"] = report.seed;
    doc["config"] = report.config;
    doc["instance"] = {{"path", report.instance_path},
                       {"units", report.instance.unit_count()},
                       {"periods", report.instance.period_count()},
                       {"period_hours", report.instance.period_hours},
                       {"demand", report.instance.demand}};
    if (report.best) {
        const BestSolution& best = *report.best;
        nlohmann::json jb;
        jb["source"] = best.source ? nlohmann::json(*best.source) : nlohmann::json();
        jb["score"] = best.evaluation.total_cost;
        jb["operating_cost"] = best.evaluation.operating_cost;
        jb["demand_penalty"] = best.evaluation.demand_penalty;
        jb["min_time_penalty"] = best.evaluation.min_time_penalty;
        jb["feasible"] = best.evaluation.feasible;
        jb["commitment"] = matrix_json(best.commitment);
        jb["dispatch"] = matrix_json(best.dispatch);
        doc["best"] = std::move(jb);
    } else {
        doc["best"] = nullptr;
    }
    // non-finite entries (no survivor yet) serialize as null
    doc["trajectory"] = report.trajectory;
    doc["timing"] = {{"samples", report.timing.samples},
                     {"accepted", report.timing.accepted},
                     {"mean_sampling_s", quantize_ms(report.timing.mean_sampling_s)},
                     {"mean_evaluation_s", quantize_ms(report.timing.mean_evaluation_s)}};
    return doc;
}

std::string report_to_text(const SearchReport& report) { return report_to_json(report).dump(2) + "\n"; }

void write_report(const SearchReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InstanceError("cannot write report file: " + path.string());
    out << report_to_text(report);
}

nlohmann::json load_report_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InstanceError("cannot open report file: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw InstanceError(std::string("report is not valid JSON: ") + e.what());
    }
    return doc;
}

std::string heatmap_text(const nlohmann::json& report) {
    if (!report.contains("best") || report["best"].is_null()) {
        throw InstanceError("report carries no solution to plot");
    }
    const auto& best = report["best"];
    if (!best.contains("commitment") || !best["commitment"].is_array() ||
        best["commitment"].empty() || !best.contains("dispatch")) {
        throw InstanceError("report solution is missing commitment/dispatch grids");
    }
    const auto& commitment = best["commitment"];
    const auto& dispatch = best["dispatch"];
    const auto& demand = report.at("instance").at("demand");
    const std::size_t periods = commitment.front().size();
    if (demand.size() != periods) throw InstanceError("report demand length mismatch");

    std::ostringstream out;
    out << "# commitment (rows = units, columns = periods)\n";
    for (const auto& row : commitment) {
        if (row.size() != periods) throw InstanceError("ragged commitment grid");
        for (std::size_t t = 0; t < row.size(); ++t) {
            if (t) out << ",";
            out << row[t].get<int>();
        }
        out << "\n";
    }
    out << "# demand\n";
    for (std::size_t t = 0; t < periods; ++t) {
        if (t) out << ",";
        out << demand[t].get<double>();
    }
    out << "\n# total_generation\n";
    std::vector<double> totals(periods, 0.0);
    for (const auto& row : dispatch) {
        if (row.size() != periods) throw InstanceError("ragged dispatch grid");
        for (std::size_t t = 0; t < periods; ++t) totals[t] += row[t].get<double>();
    }
    for (std::size_t t = 0; t < periods; ++t) {
        if (t) out << ",";
        out << totals[t];
    }
    out << "\n";
    return out.str();
}

}  // namespace ucs
