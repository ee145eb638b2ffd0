#include "sampop/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "sampop/errors.hpp"

namespace sampop {

namespace {

std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string format_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open output file: " + path.string());
    auto emit_row = [&](const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << csv_escape(cells[i]);
        }
        out << '\n';
    };
    emit_row(table.header);
    for (const auto& row : table.rows) emit_row(row);
    for (const auto& line : table.footers) out << "# " << line << '\n';
}

void write_loglog_svg(const std::filesystem::path& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<SvgSeries>& series) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open output file: " + path.string());

    constexpr double W = 640, H = 440;
    constexpr double L = 70, R = 20, T = 44, B = 52;
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};

    double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
    bool any = false;
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!(s.x[i] > 0) || !(s.y[i] > 0) || !std::isfinite(s.y[i])) continue;
            double lx = std::log10(s.x[i]), ly = std::log10(s.y[i]);
            if (!any) {
                lo_x = hi_x = lx;
                lo_y = hi_y = ly;
                any = true;
            } else {
                lo_x = std::min(lo_x, lx);
                hi_x = std::max(hi_x, lx);
                lo_y = std::min(lo_y, ly);
                hi_y = std::max(hi_y, ly);
            }
        }
    if (hi_x - lo_x < 1e-9) hi_x = lo_x + 1.0;
    if (hi_y - lo_y < 1e-9) hi_y = lo_y + 1.0;
    const double pad_y = 0.06 * (hi_y - lo_y);
    lo_y -= pad_y;
    hi_y += pad_y;

    auto px = [&](double lx) { return L + (lx - lo_x) / (hi_x - lo_x) * (W - L - R); };
    auto py = [&](double ly) { return H - B - (ly - lo_y) / (hi_y - lo_y) * (H - T - B); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
        << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
        << "<text x=\"" << W / 2 << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" "
           "text-anchor=\"middle\">"
        << title << "</text>\n";

    // decade gridlines on y, data-point ticks on x
    for (int d = static_cast<int>(std::ceil(lo_y)); d <= static_cast<int>(std::floor(hi_y)); ++d) {
        double y = py(d);
        out << "<line x1=\"" << fixed2(L) << "\" y1=\"" << fixed2(y) << "\" x2=\"" << fixed2(W - R)
            << "\" y2=\"" << fixed2(y) << "\" stroke=\"#dddddd\"/>\n"
            << "<text x=\"" << fixed2(L - 6) << "\" y=\"" << fixed2(y + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">1e" << d
            << "</text>\n";
    }
    if (!series.empty()) {
        for (size_t i = 0; i < series[0].x.size(); ++i) {
            if (!(series[0].x[i] > 0)) continue;
            double x = px(std::log10(series[0].x[i]));
            out << "<line x1=\"" << fixed2(x) << "\" y1=\"" << fixed2(H - B) << "\" x2=\""
                << fixed2(x) << "\" y2=\"" << fixed2(H - B + 5) << "\" stroke=\"#444444\"/>\n"
                << "<text x=\"" << fixed2(x) << "\" y=\"" << fixed2(H - B + 18)
                << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
                << format_sig(series[0].x[i]) << "</text>\n";
        }
    }
    out << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\""
        << H - T - B << "\" fill=\"none\" stroke=\"#444444\"/>\n"
        << "<text x=\"" << W / 2 << "\" y=\"" << H - 14
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << xlabel
        << "</text>\n"
        << "<text x=\"16\" y=\"" << H / 2
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 16 "
        << H / 2 << ")\">" << ylabel << "</text>\n";

    for (size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = palette[k % 5];
        std::string pts;
        for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!(s.x[i] > 0) || !(s.y[i] > 0) || !std::isfinite(s.y[i])) continue;
            double x = px(std::log10(s.x[i])), y = py(std::log10(s.y[i]));
            pts += fixed2(x) + "," + fixed2(y) + " ";
            out << "<circle cx=\"" << fixed2(x) << "\" cy=\"" << fixed2(y)
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        if (!pts.empty())
            out << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\"/>\n";
        out << "<text x=\"" << fixed2(W - R - 8) << "\" y=\"" << fixed2(T + 16 + 15.0 * k)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\" fill=\""
            << color << "\">" << s.label << "</text>\n";
    }
    out << "</svg>\n";
}

void write_rate_svg(const std::filesystem::path& path, const std::string& title,
                    const RateTable& table) {
    std::vector<SvgSeries> series;
    series.push_back({"measured", table.sigma_ladder, table.values});

    // anchor the fitted power law at the log-mean of the positive points
    double mx = 0, my = 0;
    int n = 0;
    for (size_t i = 0; i < table.values.size(); ++i)
        if (table.values[i] > 0 && table.sigma_ladder[i] > 0) {
            mx += std::log10(table.sigma_ladder[i]);
            my += std::log10(table.values[i]);
            ++n;
        }
    std::string subtitle = title;
    if (n >= 2) {
        mx /= n;
        my /= n;
        SvgSeries fit;
        fit.label = "fit";
        for (double s : {table.sigma_ladder.front(), table.sigma_ladder.back()}) {
            fit.x.push_back(s);
            fit.y.push_back(std::pow(10.0, my - table.fitted_alpha * (std::log10(s) - mx)));
        }
        series.push_back(fit);
        subtitle += "  (alpha = " + format_sig(table.fitted_alpha) + ")";
    }
    write_loglog_svg(path, subtitle, "sigma", "value", series);
}

}  // namespace sampop
