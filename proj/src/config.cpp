#include "sampop/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sampop/analysis.hpp"
#include "sampop/errors.hpp"
#include "sampop/report.hpp"

namespace sampop {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw config_error(field + ": " + what);
}

const std::set<std::string>& kernel_families() {
    static const std::set<std::string> fams{"sinc", "riesz", "bspline", "gaussian", "irregular"};
    return fams;
}

double num_field(const json& j, const std::string& field, double fallback) {
    if (!j.contains(field)) return fallback;
    if (!j[field].is_number()) fail(field, "expected a number");
    return j[field].get<double>();
}

int int_field(const json& j, const std::string& field, int fallback) {
    if (!j.contains(field)) return fallback;
    if (!j[field].is_number_integer()) fail(field, "expected an integer");
    return j[field].get<int>();
}

std::string str_field(const json& j, const std::string& field, const std::string& fallback) {
    if (!j.contains(field)) return fallback;
    if (!j[field].is_string()) fail(field, "expected a string");
    return j[field].get<std::string>();
}

void check_known_keys(const json& j, const std::string& scope,
                      std::initializer_list<const char*> known) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok) fail(scope.empty() ? it.key() : scope + "." + it.key(), "unrecognized field");
    }
}

std::vector<std::string> zoo_labels() {
    std::vector<std::string> out;
    for (const auto& z : zoo()) out.push_back(z.f.label);
    return out;
}

std::string joined(const std::vector<std::string>& items) {
    std::string out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += items[i];
    }
    return out;
}

}  // namespace

std::string suite_name(SuiteKind suite) {
    switch (suite) {
        case SuiteKind::corollary: return "corollary";
        case SuiteKind::direct: return "direct";
        case SuiteKind::inverse: return "inverse";
        case SuiteKind::smoothness_of_operator: return "smoothness_of_operator";
        case SuiteKind::properties: return "properties";
    }
    return "?";
}

std::string list_suites_text() {
    std::ostringstream out;
    out << "suites:\n"
        << "  corollary                rate-equivalence sweep for one reconstruction family\n"
        << "                           (kernel.family picks sinc | riesz | bspline | gaussian |\n"
        << "                           irregular; riesz and irregular need p = 2); fits the\n"
        << "                           error and smoothness exponents per zoo member\n"
        << "  direct                   per-rung ratio error / semidiscrete smoothness term\n"
        << "  inverse                  per-rung ratio smoothness term / dyadic error sum\n"
        << "  smoothness_of_operator   smoothness term vs dyadic operator-seminorm sum\n"
        << "                           (sinc family only: interpolatory on nested lattices)\n"
        << "  properties               modulus and averaged-modulus property battery\n"
        << "defaults: p = 2, r = 1, s = 2, ladder = 8:256, seed = 2026, jobs = 1,\n"
        << "          members = whole zoo (" << joined(zoo_labels()) << "),\n"
        << "          ratio_bound = 50, alpha_window = 0.1, delta = 0.25, out = out\n";
    return out.str();
}

void validate_config(const ExperimentConfig& cfg) {
    const auto& fam = cfg.kernel.family;
    if (!kernel_families().count(fam))
        fail("kernel.family",
             "unknown family '" + fam + "'; available: sinc, riesz, bspline, gaussian, irregular");
    if (fam == "bspline" && (cfg.kernel.order < 2 || cfg.kernel.order > 12))
        fail("kernel.order", "b-spline order must lie in [2, 12] (got " +
                                 std::to_string(cfg.kernel.order) + ")");
    if (fam == "riesz") {
        if (!(cfg.kernel.riesz_s > 0)) fail("kernel.riesz_s", "must be > 0");
        if (!(cfg.kernel.riesz_delta >= 1)) fail("kernel.riesz_delta", "must be >= 1");
    }

    if (!(cfg.p >= 1)) fail("p", "must be >= 1 (got " + format_sig(cfg.p) + ")");
    if (cfg.r < 1 || cfg.r > 16)
        fail("r", "averaging order must lie in [1, 16] (got " + std::to_string(cfg.r) + ")");
    if (cfg.s < 1) fail("s", "smoothness order must be >= 1 (got " + std::to_string(cfg.s) + ")");
    if (cfg.s > 2 * cfg.r)
        fail("s", "s = " + std::to_string(cfg.s) + " with r = " + std::to_string(cfg.r) +
                      " violates the s <= 2r constraint on the semi-discrete smoothness term");

    if (cfg.ladder.size() < 4) fail("ladder", "needs at least 4 rungs for a rate fit");
    for (size_t i = 0; i < cfg.ladder.size(); ++i) {
        if (!(cfg.ladder[i] > 0)) fail("ladder", "rungs must be positive");
        if (i && !(cfg.ladder[i] > cfg.ladder[i - 1]))
            fail("ladder", "rungs must be strictly increasing");
    }

    if (!cfg.members.empty()) {
        auto labels = zoo_labels();
        for (const auto& m : cfg.members) {
            bool ok = false;
            for (const auto& l : labels)
                if (l == m) ok = true;
            if (!ok) fail("members", "unknown zoo member '" + m + "'; available: " + joined(labels));
        }
    }

    if (cfg.quad.panels < 8) fail("quadrature.panels", "must be >= 8");
    if (cfg.quad.nodes_per_panel < 2 || cfg.quad.nodes_per_panel > 32)
        fail("quadrature.nodes_per_panel", "must lie in [2, 32]");
    if (!(cfg.quad.tail_tolerance > 0)) fail("quadrature.tail_tolerance", "must be > 0");

    if (cfg.jobs < 1) fail("jobs", "must be >= 1");
    if (!(cfg.ratio_bound > 1)) fail("ratio_bound", "must be > 1");
    if (!(cfg.alpha_window > 0)) fail("alpha_window", "must be > 0");
    if (!(cfg.noise_floor >= 0)) fail("noise_floor", "must be >= 0");
    if (!(cfg.delta > 0) || cfg.delta > 1) fail("delta", "must lie in (0, 1]");
    if (cfg.out_dir.empty()) fail("out", "must not be empty");

    // suite preconditions, checked before any computation
    const bool needs_p2 = fam == "riesz" || fam == "irregular";
    if (cfg.suite == SuiteKind::corollary && needs_p2 && cfg.p != 2.0)
        fail("p", "the " + fam + " family runs on the spectral route; p must be 2");
    if ((cfg.suite == SuiteKind::direct || cfg.suite == SuiteKind::inverse) && fam == "irregular")
        fail("kernel.family",
             "the irregular family is reconstruction-by-interpolation; only the corollary "
             "suite drives it");
    if (cfg.suite == SuiteKind::smoothness_of_operator && fam != "sinc")
        fail("kernel.family",
             "smoothness_of_operator needs the interpolatory family on nested lattices (sinc)");
}

ExperimentConfig parse_config_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw config_error(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw config_error("config: top level must be a JSON object");
    check_known_keys(j, "",
                     {"suite", "kernel", "p", "r", "s", "ladder", "members", "quadrature", "out",
                      "seed", "jobs", "ratio_bound", "alpha_window", "noise_floor", "delta"});

    ExperimentConfig cfg;

    const std::string suite = str_field(j, "suite", "corollary");
    if (suite == "corollary")
        cfg.suite = SuiteKind::corollary;
    else if (suite == "direct")
        cfg.suite = SuiteKind::direct;
    else if (suite == "inverse")
        cfg.suite = SuiteKind::inverse;
    else if (suite == "smoothness_of_operator")
        cfg.suite = SuiteKind::smoothness_of_operator;
    else if (suite == "properties")
        cfg.suite = SuiteKind::properties;
    else
        fail("suite", "unknown suite '" + suite +
                          "'; available: corollary, direct, inverse, smoothness_of_operator, "
                          "properties\n" +
                          list_suites_text());

    if (j.contains("kernel")) {
        const json& k = j["kernel"];
        if (!k.is_object()) fail("kernel", "expected an object");
        check_known_keys(k, "kernel", {"family", "order", "riesz_s", "riesz_delta"});
        cfg.kernel.family = str_field(k, "family", cfg.kernel.family);
        cfg.kernel.order = int_field(k, "order", cfg.kernel.order);
        cfg.kernel.riesz_s = num_field(k, "riesz_s", cfg.kernel.riesz_s);
        cfg.kernel.riesz_delta = num_field(k, "riesz_delta", cfg.kernel.riesz_delta);
    }

    cfg.p = num_field(j, "p", cfg.p);
    cfg.r = int_field(j, "r", cfg.r);
    cfg.s = int_field(j, "s", cfg.s);

    if (j.contains("ladder")) {
        const json& l = j["ladder"];
        if (l.is_string()) {
            cfg.ladder = parse_ladder_arg(l.get<std::string>());
        } else if (l.is_array()) {
            cfg.ladder.clear();
            for (const auto& v : l) {
                if (!v.is_number()) fail("ladder", "expected numbers");
                cfg.ladder.push_back(v.get<double>());
            }
        } else {
            fail("ladder", "expected an array of rungs or a \"lo:hi\" string");
        }
    }

    if (j.contains("members")) {
        if (!j["members"].is_array()) fail("members", "expected an array of zoo member names");
        for (const auto& v : j["members"]) {
            if (!v.is_string()) fail("members", "expected strings");
            cfg.members.push_back(v.get<std::string>());
        }
    }

    if (j.contains("quadrature")) {
        const json& q = j["quadrature"];
        if (!q.is_object()) fail("quadrature", "expected an object");
        check_known_keys(q, "quadrature",
                         {"panels", "nodes_per_panel", "tail_tolerance", "refine_levels"});
        cfg.quad.panels = int_field(q, "panels", cfg.quad.panels);
        cfg.quad.nodes_per_panel = int_field(q, "nodes_per_panel", cfg.quad.nodes_per_panel);
        cfg.quad.tail_tolerance = num_field(q, "tail_tolerance", cfg.quad.tail_tolerance);
        cfg.quad.refine_levels = int_field(q, "refine_levels", cfg.quad.refine_levels);
    }

    cfg.out_dir = str_field(j, "out", cfg.out_dir);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            fail("seed", "expected a nonnegative integer");
        auto s64 = j["seed"].get<std::int64_t>();
        if (s64 < 0) fail("seed", "expected a nonnegative integer");
        cfg.seed = static_cast<std::uint64_t>(s64);
    }
    cfg.jobs = int_field(j, "jobs", cfg.jobs);
    cfg.ratio_bound = num_field(j, "ratio_bound", cfg.ratio_bound);
    cfg.alpha_window = num_field(j, "alpha_window", cfg.alpha_window);
    cfg.noise_floor = num_field(j, "noise_floor", cfg.noise_floor);
    cfg.delta = num_field(j, "delta", cfg.delta);

    validate_config(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("config: cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string canonical_text(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "suite=" << suite_name(cfg.suite) << '\n'
        << "kernel.family=" << cfg.kernel.family << '\n'
        << "kernel.order=" << cfg.kernel.order << '\n'
        << "kernel.riesz_s=" << format_sig(cfg.kernel.riesz_s) << '\n'
        << "kernel.riesz_delta=" << format_sig(cfg.kernel.riesz_delta) << '\n'
        << "p=" << format_sig(cfg.p) << '\n'
        << "r=" << cfg.r << '\n'
        << "s=" << cfg.s << '\n';
    out << "ladder=";
    for (size_t i = 0; i < cfg.ladder.size(); ++i)
        out << (i ? "," : "") << format_sig(cfg.ladder[i]);
    out << '\n' << "members=";
    for (size_t i = 0; i < cfg.members.size(); ++i) out << (i ? "," : "") << cfg.members[i];
    out << '\n'
        << "quadrature=" << cfg.quad.panels << '/' << cfg.quad.nodes_per_panel << '/'
        << format_sig(cfg.quad.tail_tolerance) << '/' << cfg.quad.refine_levels << '\n'
        << "seed=" << cfg.seed << '\n'
        << "ratio_bound=" << format_sig(cfg.ratio_bound) << '\n'
        << "alpha_window=" << format_sig(cfg.alpha_window) << '\n'
        << "noise_floor=" << format_sig(cfg.noise_floor) << '\n'
        << "delta=" << format_sig(cfg.delta) << '\n';
    return out.str();
}

std::vector<double> parse_ladder_arg(const std::string& arg) {
    std::vector<double> rungs;
    auto parse_num = [&](const std::string& tok) {
        size_t used = 0;
        double v = 0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            fail("ladder", "cannot parse '" + tok + "'");
        }
        if (used != tok.size()) fail("ladder", "cannot parse '" + tok + "'");
        return v;
    };
    const auto colon = arg.find(':');
    if (colon != std::string::npos) {
        const double lo = parse_num(arg.substr(0, colon));
        const double hi = parse_num(arg.substr(colon + 1));
        if (!(lo > 0) || !(hi > lo)) fail("ladder", "range needs 0 < lo < hi");
        for (double s = lo; s <= hi * (1 + 1e-9); s *= 2) rungs.push_back(s);
    } else {
        std::string tok;
        std::istringstream in(arg);
        while (std::getline(in, tok, ',')) rungs.push_back(parse_num(tok));
    }
    if (rungs.size() < 4) fail("ladder", "needs at least 4 rungs for a rate fit");
    return rungs;
}

}  // namespace sampop
