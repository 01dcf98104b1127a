#pragma once

// Output formats. Column order and JSON keys are fixed:
//
//   hom-table CSV   kind,first,second,p
//   hom-table JSON  {"K", "theta", "entries": [{"kind", "first", "second", "p"}]}
//   series CSV      t, select_a_arm1..K, [select_b_arm1..K], cdr, reward_a,
//                   reward_b, reward_total, [conflict_rate]
//   sweep CSV       p1..pK, greedy, equilibrium, quantum
//
// Arms and rounds are 1-based in every file.

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "oambandit/experiments.hpp"
#include "oambandit/oam_core.hpp"

namespace oambandit {

std::string_view to_string(OutcomeKind kind) noexcept;

nlohmann::json to_json(const TwoPhotonDistribution& dist);
void write_csv(std::ostream& os, const TwoPhotonDistribution& dist);

void write_series_csv(std::ostream& os, const MetricsSeries& m);
/// Config echo, last-`window` levels and the pooled pair matrix.
nlohmann::json summary_json(const ExperimentConfig& cfg, const MetricsSeries& m, std::size_t window = 100);
/// Per-round series as JSON arrays keyed like the CSV columns.
nlohmann::json series_json(const MetricsSeries& m);

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);

/// "{policy}_{K}arm_{seed}" without extension.
std::string output_stem(const ExperimentConfig& cfg);

}  // namespace oambandit
