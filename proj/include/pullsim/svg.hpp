#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pullsim/io.hpp"

namespace pullsim {

enum class PlotKind { density, moments, cdf_compare };

PlotKind plot_kind_from_string(std::string_view s);
std::string_view to_string(PlotKind k) noexcept;

/// Standalone SVG line plot of a CSV produced by the density, moments, or
/// `verify theorem1 --curve` commands. Output depends only on the table.
std::string render_plot(PlotKind kind, const CsvTable& table);

void plot(PlotKind kind, const std::filesystem::path& input, const std::filesystem::path& output);

}  // namespace pullsim
