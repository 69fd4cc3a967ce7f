// Acceptance suite: one pass/fail line per criterion, full desk-scale budgets.
// Every tolerance is pinned here; verdicts are recomputed from the recorded
// report numbers wherever an experiment report is consumed.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "levycond/experiments.hpp"
#include "levycond/report_io.hpp"
#include "levycond/resolvent.hpp"
#include "levycond/stats.hpp"

using namespace levycond;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return std::string(buf);
}

ExperimentOptions full_opts() {
    ExperimentOptions opts;
    opts.master_seed = 20260808;
    opts.chunks = 8;
    opts.quick = false;
    return opts;
}

// Martingale gate: |estimate - 1| <= 3 SE per cell, either at the finest dt
// rung or on the dt -> 0 extrapolation of each refinement ladder.
Outcome martingale_criterion(const ExperimentReport& report, bool use_extrapolated,
                             double finest_dt, double max_wall_seconds,
                             bool require_monotone_ladder) {
    const std::string gate_id = use_extrapolated ? report.id + ".extrapolated" : report.id;
    std::size_t cells = 0, ok_cells = 0;
    double worst = 0.0;
    for (const auto& cell : report.cells) {
        if (cell.experiment != gate_id) continue;
        if (!use_extrapolated && cell.dt != finest_dt) continue;
        ++cells;
        const double dev = std::abs(cell.estimate - 1.0);
        worst = std::max(worst, cell.std_error > 0.0 ? dev / cell.std_error : 0.0);
        if (dev <= 3.0 * cell.std_error) ++ok_cells;
    }

    std::size_t ladders_ok = 0, ladders = 0;
    if (require_monotone_ladder) {
        std::map<std::string, std::vector<const CellResult*>> by_cell;
        for (const auto& cell : report.cells) {
            if (cell.experiment != report.id) continue;  // dt-ladder rows only
            by_cell[fmt("%g|%g|%g|%g", cell.alpha, cell.rho, cell.x, cell.t)].push_back(&cell);
        }
        for (const auto& [key, rows] : by_cell) {
            ++ladders;
            bool monotone = true;
            for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
                const double gap_i = std::abs(rows[i]->estimate - 1.0);
                const double gap_j = std::abs(rows[i + 1]->estimate - 1.0);
                const double slack =
                    2.0 * std::hypot(rows[i]->std_error, rows[i + 1]->std_error);
                if (gap_j > gap_i + slack) monotone = false;
            }
            if (monotone) ++ladders_ok;
        }
    }

    Outcome out;
    out.pass = (cells > 0) && (ok_cells == cells) && (report.wall_seconds <= max_wall_seconds) &&
               (!require_monotone_ladder || ladders_ok == ladders);
    out.detail = fmt("%zu/%zu cells within 3 SE %s, worst %.2f SE, wall %.0fs", ok_cells, cells,
                     use_extrapolated ? "after dt->0 extrapolation" : fmt("at dt=%g", finest_dt).c_str(),
                     worst, report.wall_seconds);
    if (require_monotone_ladder)
        out.detail += fmt("; %zu/%zu refinement ladders monotone-in-gap", ladders_ok, ladders);
    return out;
}

Outcome gated_cells_criterion(const std::vector<const ExperimentReport*>& reports,
                              const char* what) {
    std::size_t gated = 0, ok = 0;
    double wall = 0.0;
    for (const auto* report : reports) {
        wall += report->wall_seconds;
        for (const auto& cell : report->cells) {
            if (cell.verdict == "info") continue;
            ++gated;
            if (cell.verdict == "pass") ++ok;
        }
    }
    Outcome out;
    out.pass = gated > 0 && ok == gated;
    out.detail = fmt("%zu/%zu %s gates pass, wall %.0fs", ok, gated, what, wall);
    return out;
}

const CellResult* find_cell(const ExperimentReport& report, const std::string& name) {
    for (const auto& cell : report.cells)
        if (cell.experiment == name) return &cell;
    return nullptr;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;
    const ExperimentOptions opts = full_opts();

    criteria.emplace_back("C1 martingale identity (stay positive)", [&] {
        const ExperimentReport report = exp_martingale(Conditioning::StayPositive, opts);
        return martingale_criterion(report, false, 4e-4, 600.0, false);
    });

    criteria.emplace_back("C2 martingale identity (avoid origin)", [&] {
        const ExperimentReport report = exp_martingale(Conditioning::AvoidOrigin, opts);
        return martingale_criterion(report, true, 4e-4, 600.0, true);
    });

    criteria.emplace_back("C3 resolvent closed form", [&] {
        const auto start = std::chrono::steady_clock::now();
        std::size_t cells = 0, ok = 0;
        double worst = 0.0;
        for (double alpha : {1.2, 1.5, 1.8, 2.0}) {
            for (double q : {0.1, 1.0, 10.0}) {
                ++cells;
                const double rel =
                    std::abs(u_q(0.0, q, alpha) - u_q0_closed(q, alpha)) / u_q0_closed(q, alpha);
                worst = std::max(worst, rel);
                if (rel < 1e-6) ++ok;
            }
        }
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                                .count();
        Outcome out;
        out.pass = ok == cells && wall <= 60.0;
        out.detail = fmt("%zu/%zu (q,alpha) cells under 1e-6 rel err, worst %.2e, wall %.1fs", ok,
                         cells, worst, wall);
        return out;
    });

    criteria.emplace_back("C4 h_times power law and C_times", [&] {
        std::size_t cells = 0, ok = 0;
        double worst_slope = 0.0, worst_spread = 0.0;
        for (double alpha : {1.2, 1.5, 1.8, 2.0}) {
            ++cells;
            const CTimesResult r = extract_c_times(alpha);
            worst_slope = std::max(worst_slope, std::abs(r.slope - (alpha - 1.0)));
            worst_spread = std::max(worst_spread, r.rel_spread);
            if (std::abs(r.slope - (alpha - 1.0)) <= 1e-3 && r.rel_spread < 1e-3) ++ok;
        }
        Outcome out;
        out.pass = ok == cells;
        out.detail = fmt("%zu/%zu alphas: worst slope err %.2e, worst C spread %.2e", ok, cells,
                         worst_slope, worst_spread);
        return out;
    });

    criteria.emplace_back("C5 brownian reductions", [&] {
        const ExperimentReport report = exp_brownian_checks(opts);
        const CellResult* rayleigh = find_cell(report, "brownian-checks.meander-rayleigh-ks");
        const CellResult* bessel = find_cell(report, "brownian-checks.entrance-bessel3-ks");
        const CellResult* split = find_cell(report, "brownian-checks.symmetrized-sign-split");
        Outcome out;
        if (!rayleigh || !bessel || !split) {
            out.detail = "missing cells";
            return out;
        }
        const bool rayleigh_ok = rayleigh->estimate >= 0.01;  // KS p-value
        const bool bessel_ok = bessel->estimate >= 0.01;
        const bool split_ok = std::abs(split->estimate - 0.5) <= 3.0 * split->std_error;
        out.pass = rayleigh_ok && bessel_ok && split_ok && report.pass;
        out.detail = fmt("rayleigh p=%.3f, bessel3 p=%.3f, sign split %.4f+-%.4f, wall %.0fs",
                         rayleigh->estimate, bessel->estimate, split->estimate,
                         split->std_error, report.wall_seconds);
        return out;
    });

    criteria.emplace_back("C6 conditioning limits (shift and floor)", [&] {
        const ExperimentReport up = exp_conditioning_limit(Conditioning::StayPositive, opts);
        const ExperimentReport times = exp_conditioning_limit(Conditioning::AvoidOrigin, opts);
        std::size_t floor_rows = 0;
        for (const auto& cell : up.cells)
            if (cell.experiment.find(".floor.") != std::string::npos) ++floor_rows;
        Outcome out = gated_cells_criterion({&up, &times}, "epsilon-ladder");
        out.pass = out.pass && floor_rows > 0;
        out.detail += fmt("; %zu floor-variant rows", floor_rows);
        return out;
    });

    criteria.emplace_back("C7 meander-to-transform limits", [&] {
        const ExperimentReport up = exp_meander_to_htransform(Conditioning::StayPositive, opts);
        const ExperimentReport times = exp_meander_to_htransform(Conditioning::AvoidOrigin, opts);
        return gated_cells_criterion({&up, &times}, "t-ladder");
    });

    criteria.emplace_back("C8 entrance stabilization", [&] {
        const ExperimentReport up = exp_feller_entrance(Conditioning::StayPositive, opts);
        const ExperimentReport times = exp_feller_entrance(Conditioning::AvoidOrigin, opts);
        return gated_cells_criterion({&up, &times}, "x-ladder");
    });

    criteria.emplace_back("C9 long-time dichotomy", [&] {
        const ExperimentReport report = exp_long_time(opts);
        const CellResult* split = find_cell(report, "long-time.sign-split");
        Outcome out;
        out.pass = report.pass && split != nullptr;
        std::string growth;
        for (const auto& note : report.notes)
            if (note.rfind("both-sides", 0) == 0) growth = note;
        out.detail = fmt("%s; sign split %.4f+-%.4f; wall %.0fs", growth.c_str(),
                         split ? split->estimate : -1.0, split ? split->std_error : 0.0,
                         report.wall_seconds);
        return out;
    });

    criteria.emplace_back("C10 determinism", [&] {
        ExperimentOptions q = opts;
        q.quick = true;
        q.master_seed = 777;
        q.chunks = 4;
        const ExperimentReport a = exp_martingale(Conditioning::StayPositive, q);
        const ExperimentReport b = exp_martingale(Conditioning::StayPositive, q);
        const std::vector<ExperimentReport> va{a}, vb{b};
        const std::string csv_a = to_csv(va), csv_b = to_csv(vb);
        q.master_seed = 778;
        const ExperimentReport c = exp_martingale(Conditioning::StayPositive, q);
        const std::vector<ExperimentReport> vc{c};
        Outcome out;
        out.pass = (csv_a == csv_b) && (csv_a != to_csv(vc));
        out.detail = fmt("rerun identical: %s; new seed differs: %s",
                         csv_a == csv_b ? "yes" : "NO", csv_a != to_csv(vc) ? "yes" : "NO");
        return out;
    });

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %s — %s\n", outcome.pass ? "PASS" : "FAIL",
                    criteria[i].first.c_str(), outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    if (failures == 0) {
        std::printf("ACCEPTANCE: all %zu criteria pass\n", criteria.size());
    } else {
        std::printf("ACCEPTANCE: %d of %zu criteria FAILED\n", failures, criteria.size());
    }
    return failures == 0 ? 0 : 1;
}
