#pragma once

#include <optional>
#include <string>

#include "plred/charts.hpp"

namespace plred {

// State files carry the masses and either p/q triples (full state, sun first)
// or y/x triples (reduced state).
struct StateFile {
  MassParams mp;
  std::optional<FullState> full;
  std::optional<HelioState> helio;

  HelioState as_helio() const;
};

StateFile parse_state_file(const std::string& text);
std::string write_state_file(const HelioState& hs, const MassParams& mp);
std::string write_state_file(const FullState& s, const MassParams& mp);

// Chart coordinate files: the chart tag, the masses, and the coordinate
// values in the chart's canonical order (named redundantly for readability).
struct CoordsFile {
  std::string chart;
  MassParams mp;
  std::vector<double> values;  // dim + params
};

CoordsFile parse_coords_file(const std::string& text);
std::string write_coords_file(const ChartSpec& chart, std::span<const double> values);

// Masses alone, for commands that sample their own states.
MassParams parse_masses(const std::string& text);

}  // namespace plred
