#pragma once

// CSV and SVG emission for scenario sweeps.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dfsqec/experiments.hpp"

namespace dfsqec {

inline constexpr const char* kCsvHeader =
    "scenario,kind,case,kappa0,ratio,ancilla_purity,Cx,Cy,Cz,Fe,Fe_analytic,Px,Py,Pz,P";

/// Header plus one row per sweep point, numbers with 12 significant digits.
void emit_csv(const ScenarioResult& result, std::ostream& os);
void write_csv(const ScenarioResult& result, const std::filesystem::path& path);

/// Parses CSV produced by emit_csv; consecutive rows sharing the leading
/// configuration columns form one result. Throws std::runtime_error on
/// malformed input.
std::vector<ScenarioResult> read_csv(std::istream& is);
std::vector<ScenarioResult> read_csv(const std::filesystem::path& path);

struct ChartOptions {
  bool polarization = false;  // add a second panel with P
  int width = 760;
  int panel_height = 420;
};

/// Self-contained SVG: simulated points as <circle class="marker">, closed-form
/// curves as <polyline class="analytic">, one legend entry per result.
void emit_chart(std::span<const ScenarioResult> results, std::ostream& os,
                const ChartOptions& options = {});
void write_chart(std::span<const ScenarioResult> results, const std::filesystem::path& path,
                 const ChartOptions& options = {});

/// Legend label: the scenario name, qualified when several results share it.
std::vector<std::string> series_labels(std::span<const ScenarioResult> results);

}  // namespace dfsqec
