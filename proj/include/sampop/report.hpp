#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sampop/analysis.hpp"

namespace sampop {

inline constexpr const char* kToolVersion = "0.1.0";

// 12 significant digits, locale-free. Artifact byte-identity across runs
// rests on this formatter.
std::string format_sig(double v);

std::uint64_t fnv1a64(std::string_view text);
std::string hash_hex(std::uint64_t h);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> footers;  // emitted as trailing "# ..." lines
};

// Header, rows, then footers. Cells containing a comma, quote, or newline
// are quoted. Parent directories are created on demand.
void write_csv(const std::filesystem::path& path, const CsvTable& table);

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Self-contained log-log plot: inline axes, decade gridlines, one polyline
// per series. Points with a nonpositive coordinate are dropped from the
// path. Needs no external renderer.
void write_loglog_svg(const std::filesystem::path& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<SvgSeries>& series);

// One plot per rate table: measured points plus the fitted power law,
// alpha quoted in the subtitle.
void write_rate_svg(const std::filesystem::path& path, const std::string& title,
                    const RateTable& table);

}  // namespace sampop
