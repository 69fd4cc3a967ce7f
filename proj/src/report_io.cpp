#include "levycond/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

namespace levycond {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

}  // namespace

std::string to_csv(std::span<const ExperimentReport> reports) {
    std::string out = "experiment,alpha,rho,x,t,dt,n,estimate,std_error,verdict\n";
    for (const auto& report : reports) {
        for (const auto& cell : report.cells) {
            out += cell.experiment;
            out += ',';
            out += fmt_double(cell.alpha);
            out += ',';
            out += fmt_double(cell.rho);
            out += ',';
            out += fmt_double(cell.x);
            out += ',';
            out += fmt_double(cell.t);
            out += ',';
            out += fmt_double(cell.dt);
            out += ',';
            out += std::to_string(cell.n);
            out += ',';
            out += fmt_double(cell.estimate);
            out += ',';
            out += fmt_double(cell.std_error);
            out += ',';
            out += cell.verdict;
            out += '\n';
        }
    }
    return out;
}

std::string to_summary_json(std::span<const ExperimentReport> reports) {
    nlohmann::ordered_json summary;
    bool all_pass = true;
    summary["experiments"] = nlohmann::ordered_json::array();
    for (const auto& report : reports) {
        std::size_t cells_pass = 0, cells_fail = 0;
        for (const auto& cell : report.cells) {
            if (cell.verdict == "pass") ++cells_pass;
            if (cell.verdict == "fail") ++cells_fail;
        }
        nlohmann::ordered_json entry;
        entry["id"] = report.id;
        entry["master_seed"] = report.master_seed;
        entry["chunks"] = report.chunks;
        entry["pass"] = report.pass;
        entry["cells_pass"] = cells_pass;
        entry["cells_fail"] = cells_fail;
        entry["wall_seconds"] = report.wall_seconds;
        summary["experiments"].push_back(entry);
        all_pass = all_pass && report.pass;
    }
    summary["pass"] = all_pass;
    return summary.dump(2) + "\n";
}

std::string to_log_text(std::span<const ExperimentReport> reports) {
    std::string out;
    for (const auto& report : reports) {
        out += "== " + report.id + " ==\n";
        out += "seed " + std::to_string(report.master_seed) + ", chunks " +
               std::to_string(report.chunks) + ", wall " + fmt_double(report.wall_seconds) +
               " s\n";
        for (const auto& cell : report.cells) {
            out += "  " + cell.experiment + " alpha=" + fmt_double(cell.alpha) +
                   " x=" + fmt_double(cell.x) + " t=" + fmt_double(cell.t) +
                   " dt=" + fmt_double(cell.dt) + " est=" + fmt_double(cell.estimate) + " +- " +
                   fmt_double(cell.std_error);
            if (!cell.verdict.empty()) out += " [" + cell.verdict + "]";
            out += '\n';
        }
        for (const auto& line : report.notes) out += "  # " + line + '\n';
        out += report.pass ? "RESULT: pass\n" : "RESULT: FAIL\n";
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream stream(p, std::ios::binary);
    if (!stream) throw std::runtime_error("cannot open for writing: " + path);
    stream << content;
    if (!stream) throw std::runtime_error("write failed: " + path);
}

}  // namespace levycond
