#pragma once

// Network spec files and transition-graph exports.

#include <string>

#include "ban/core.hpp"
#include "ban/dynamics.hpp"
#include "json.hpp"

namespace ban {

using Json = nlohmann::ordered_json;

/// Parses { "n": int, "locals": ["x0 or not x1", ...] }. Errors carry the
/// line and column in `text`.
BooleanNetwork parse_network_spec(const std::string& text);
BooleanNetwork load_network_spec(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// GraphViz digraph; arcs with the same ends are merged and list their
/// labels. Fixed points are filled lightgray, members of longer attractors
/// darkgray.
std::string to_dot(const TransitionGraph& tg, const AttractorReport& report);

/// Attractors as { length, period?, states: [...] }.
Json attractors_json(const AttractorReport& report);

/// { mode, n, arcs: [[src, dst, label]], attractors, convergence_time }.
/// Every labelled arc is listed, self-loops included.
Json graph_json(const TransitionGraph& tg, const AttractorReport& report);

}  // namespace ban
