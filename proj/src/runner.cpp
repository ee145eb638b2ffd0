#include "sampop/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "sampop/analysis.hpp"
#include "sampop/errors.hpp"
#include "sampop/kernels.hpp"
#include "sampop/report.hpp"

namespace sampop {

namespace {

namespace fs = std::filesystem;

// fn(i) for i in [0, n) on up to `jobs` workers. Each slot keeps its own
// exception; the lowest-index one is rethrown, so failure order does not
// depend on scheduling.
void parallel_for(int jobs, int n, const std::function<void(int)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errs(n);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < std::min(jobs, n); ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (const auto& e : errs)
        if (e) std::rethrow_exception(e);
}

LadderParams ladder_params(const ExperimentConfig& cfg) {
    LadderParams prm;
    prm.sigma_ladder = cfg.ladder;
    prm.r = cfg.r;
    prm.s = cfg.s;
    prm.p = cfg.p;
    prm.ratio_bound = cfg.ratio_bound;
    prm.alpha_window = cfg.alpha_window;
    prm.noise_floor = cfg.noise_floor;
    prm.seed = cfg.seed;
    prm.quad = cfg.quad;
    return prm;
}

Kernel build_kernel(const ExperimentConfig& cfg) {
    const auto& fam = cfg.kernel.family;
    if (fam == "sinc") return make_sinc_kernel();
    if (fam == "bspline") return make_bspline_kernel(cfg.kernel.order);
    if (fam == "gaussian") return make_gaussian_kernel();
    if (fam == "riesz") return riesz_build(cfg.kernel.riesz_s, cfg.kernel.riesz_delta, cfg.quad);
    throw config_error("kernel.family: '" + fam + "' does not name a pointwise kernel");
}

SuiteFamily suite_family(const std::string& fam) {
    if (fam == "sinc") return SuiteFamily::sinc;
    if (fam == "riesz") return SuiteFamily::riesz;
    if (fam == "bspline") return SuiteFamily::bspline;
    if (fam == "gaussian") return SuiteFamily::gaussian;
    return SuiteFamily::irregular;
}

std::vector<ZooFunction> selected_members(const ExperimentConfig& cfg) {
    auto zs = zoo(cfg.seed);
    if (cfg.members.empty()) return zs;
    std::vector<ZooFunction> out;
    for (const auto& name : cfg.members)
        for (const auto& z : zs)
            if (z.f.label == name) out.push_back(z);
    return out;
}

void provenance(CsvTable& table, const ExperimentConfig& cfg) {
    table.footers.push_back("config_hash=" + hash_hex(fnv1a64(canonical_text(cfg))));
    table.footers.push_back("tool_version=" + std::string(kToolVersion));
}

double safe_alpha(const std::vector<double>& ladder, const std::vector<double>& values) {
    try {
        return rate_fit(ladder, values).fitted_alpha;
    } catch (const std::exception&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

std::string ratio_cell(double lhs, double rhs) {
    if (!(rhs > 0.0) || !std::isfinite(lhs / rhs)) return "";
    return format_sig(lhs / rhs);
}

void emit_rate_svg(RunOutcome& out, const fs::path& dir, const std::string& stem,
                   const std::string& title, const std::vector<double>& ladder,
                   const std::vector<double>& values) {
    RateTable table;
    table.sigma_ladder = ladder;
    table.values = values;
    table.fitted_alpha = safe_alpha(ladder, values);
    table.fit_residual = std::numeric_limits<double>::quiet_NaN();
    const fs::path path = dir / (stem + ".svg");
    write_rate_svg(path, title, table);
    out.artifacts.push_back(path.string());
}

std::string pad(const std::string& text, size_t width) {
    std::string out = text;
    if (out.size() < width) out.resize(width, ' ');
    return out;
}

std::string num3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

void finish(RunOutcome& out, std::ostringstream& text) {
    char line[64];
    std::snprintf(line, sizeof line, "verdict: %s (%d/%d checks)",
                  out.all_pass ? "PASS" : "FAIL", out.checks - out.failed, out.checks);
    text << line << '\n';
    out.summary = text.str();
}

void record(RunOutcome& out, bool pass) {
    ++out.checks;
    if (!pass) {
        ++out.failed;
        out.all_pass = false;
    }
}

RunOutcome run_corollary(const ExperimentConfig& cfg) {
    const SuiteFamily family = suite_family(cfg.kernel.family);
    const auto members = selected_members(cfg);
    const auto prm = ladder_params(cfg);

    std::vector<std::vector<EquivalenceReport>> per(members.size());
    parallel_for(cfg.jobs, static_cast<int>(members.size()), [&](int i) {
        LadderParams mine = prm;
        mine.members = {members[i].f.label};
        per[i] = equivalence_suite(family, cfg.p, mine);
    });

    RunOutcome out;
    const fs::path dir(cfg.out_dir);
    CsvTable csv;
    csv.header = {"member", "sigma", "err", "semidiscrete_k", "sobolev_scaled", "ratio"};
    std::ostringstream text;
    text << "suite=corollary family=" << cfg.kernel.family << " p=" << format_sig(cfg.p)
         << " r=" << cfg.r << " s=" << cfg.s << " seed=" << cfg.seed << '\n';
    text << pad("member", 10) << pad("comparison", 34) << pad("alpha_lhs", 11)
         << pad("alpha_rhs", 11) << pad("ratio_max", 11) << "verdict\n";

    for (size_t i = 0; i < members.size(); ++i) {
        const auto& reports = per[i];
        const EquivalenceReport& main = reports.at(0);
        const EquivalenceReport* pair = reports.size() > 1 ? &reports[1] : nullptr;
        for (size_t j = 0; j < main.sigma_ladder.size(); ++j) {
            csv.rows.push_back({main.member, format_sig(main.sigma_ladder[j]),
                                format_sig(main.lhs_values[j]), format_sig(main.rhs_values[j]),
                                pair ? format_sig(pair->lhs_values[j]) : "",
                                ratio_cell(main.lhs_values[j], main.rhs_values[j])});
        }
        for (const auto& rep : reports) {
            csv.footers.push_back(
                "alpha member=" + rep.member + " " + rep.lhs_name + "=" +
                format_sig(rep.alpha_lhs) + " " + rep.rhs_name + "=" + format_sig(rep.alpha_rhs) +
                " verdict=" + (rep.verdict ? "pass" : "fail"));
            if (!rep.note.empty())
                csv.footers.push_back("note member=" + rep.member + " " + rep.note);
            record(out, rep.verdict);
            text << pad(rep.member, 10) << pad(rep.lhs_name + " vs " + rep.rhs_name, 34)
                 << pad(num3(rep.alpha_lhs), 11) << pad(num3(rep.alpha_rhs), 11)
                 << pad(num3(rep.ratio_max), 11) << (rep.verdict ? "pass" : "fail") << '\n';
        }
        emit_rate_svg(out, dir, "corollary_" + main.member + "_err",
                      cfg.kernel.family + " error: " + main.member, main.sigma_ladder,
                      main.lhs_values);
        emit_rate_svg(out, dir, "corollary_" + main.member + "_smoothness",
                      main.rhs_name + ": " + main.member, main.sigma_ladder, main.rhs_values);
        if (pair)
            emit_rate_svg(out, dir, "corollary_" + main.member + "_seminorm",
                          "scaled seminorm: " + main.member, pair->sigma_ladder,
                          pair->lhs_values);
    }

    provenance(csv, cfg);
    const fs::path csv_path = dir / "corollary.csv";
    write_csv(csv_path, csv);
    out.artifacts.insert(out.artifacts.begin(), csv_path.string());
    finish(out, text);
    return out;
}

RunOutcome run_pairwise(const ExperimentConfig& cfg) {
    const auto members = selected_members(cfg);
    const auto prm = ladder_params(cfg);
    const Kernel ker = build_kernel(cfg);

    std::vector<EquivalenceReport> reps(members.size());
    parallel_for(cfg.jobs, static_cast<int>(members.size()), [&](int i) {
        switch (cfg.suite) {
            case SuiteKind::direct: reps[i] = direct_estimate_check(members[i].f, ker, prm); break;
            case SuiteKind::inverse:
                reps[i] = inverse_estimate_check(members[i].f, ker, prm);
                break;
            default: reps[i] = smoothness_of_operator_check(members[i].f, ker, prm); break;
        }
    });

    const char* lhs_col = cfg.suite == SuiteKind::direct ? "err" : "semidiscrete_k";
    const char* rhs_col = cfg.suite == SuiteKind::direct      ? "semidiscrete_k"
                          : cfg.suite == SuiteKind::inverse   ? "error_sum"
                                                              : "seminorm_sum";

    RunOutcome out;
    const fs::path dir(cfg.out_dir);
    CsvTable csv;
    csv.header = {"member", "sigma", lhs_col, rhs_col, "ratio"};
    std::ostringstream text;
    text << "suite=" << suite_name(cfg.suite) << " family=" << cfg.kernel.family
         << " p=" << format_sig(cfg.p) << " r=" << cfg.r << " s=" << cfg.s << " seed=" << cfg.seed
         << '\n';
    text << pad("member", 10) << pad("ratio_min", 11) << pad("ratio_max", 11)
         << pad("alpha_lhs", 11) << pad("alpha_rhs", 11) << "verdict\n";

    for (const auto& rep : reps) {
        for (size_t j = 0; j < rep.sigma_ladder.size(); ++j)
            csv.rows.push_back({rep.member, format_sig(rep.sigma_ladder[j]),
                                format_sig(rep.lhs_values[j]), format_sig(rep.rhs_values[j]),
                                ratio_cell(rep.lhs_values[j], rep.rhs_values[j])});
        csv.footers.push_back("alpha member=" + rep.member + " " + std::string(lhs_col) + "=" +
                              format_sig(rep.alpha_lhs) + " " + std::string(rhs_col) + "=" +
                              format_sig(rep.alpha_rhs) +
                              " verdict=" + (rep.verdict ? "pass" : "fail"));
        if (!rep.note.empty()) csv.footers.push_back("note member=" + rep.member + " " + rep.note);
        record(out, rep.verdict);
        text << pad(rep.member, 10) << pad(num3(rep.ratio_min), 11) << pad(num3(rep.ratio_max), 11)
             << pad(num3(rep.alpha_lhs), 11) << pad(num3(rep.alpha_rhs), 11)
             << (rep.verdict ? "pass" : "fail") << '\n';
        emit_rate_svg(out, dir, suite_name(cfg.suite) + "_" + rep.member + "_lhs",
                      std::string(lhs_col) + ": " + rep.member, rep.sigma_ladder, rep.lhs_values);
        emit_rate_svg(out, dir, suite_name(cfg.suite) + "_" + rep.member + "_rhs",
                      std::string(rhs_col) + ": " + rep.member, rep.sigma_ladder, rep.rhs_values);
    }

    provenance(csv, cfg);
    const fs::path csv_path = dir / (suite_name(cfg.suite) + ".csv");
    write_csv(csv_path, csv);
    out.artifacts.insert(out.artifacts.begin(), csv_path.string());
    finish(out, text);
    return out;
}

RunOutcome run_properties(const ExperimentConfig& cfg) {
    const auto members = selected_members(cfg);
    const auto all = zoo(cfg.seed);
    const RealFunction* gauss = nullptr;
    const RealFunction* hat = nullptr;
    for (const auto& z : all) {
        if (z.f.label == "gauss") gauss = &z.f;
        if (z.f.label == "hat") hat = &z.f;
    }

    std::vector<std::vector<PropertyRow>> per(members.size());
    parallel_for(cfg.jobs, static_cast<int>(members.size()), [&](int i) {
        const RealFunction& f = members[i].f;
        const RealFunction& partner = f.label == "gauss" ? *hat : *gauss;
        per[i] = property_battery(f, partner, 3, cfg.p, cfg.delta, cfg.quad);
    });

    RunOutcome out;
    CsvTable csv;
    csv.header = {"member", "property", "r", "p", "delta", "lhs", "bound", "pass"};
    std::ostringstream text;
    text << "suite=properties p=" << format_sig(cfg.p) << " delta=" << format_sig(cfg.delta)
         << " seed=" << cfg.seed << '\n';
    text << pad("member", 10) << pad("checks", 8) << "failed\n";

    for (size_t i = 0; i < members.size(); ++i) {
        int failed = 0;
        for (const auto& row : per[i]) {
            csv.rows.push_back({row.member, row.property, std::to_string(row.r),
                                format_sig(row.p), format_sig(row.delta), format_sig(row.lhs),
                                format_sig(row.bound), row.pass ? "1" : "0"});
            record(out, row.pass);
            if (!row.pass) ++failed;
        }
        text << pad(members[i].f.label, 10) << pad(std::to_string(per[i].size()), 8) << failed
             << '\n';
    }

    provenance(csv, cfg);
    const fs::path csv_path = fs::path(cfg.out_dir) / "properties.csv";
    write_csv(csv_path, csv);
    out.artifacts.insert(out.artifacts.begin(), csv_path.string());
    finish(out, text);
    return out;
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    switch (cfg.suite) {
        case SuiteKind::corollary: return run_corollary(cfg);
        case SuiteKind::properties: return run_properties(cfg);
        default: return run_pairwise(cfg);
    }
}

}  // namespace sampop
