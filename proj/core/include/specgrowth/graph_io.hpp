// graph_io.hpp — JSON graph files.
//
// Format: {"n": int, "measure": [float; n], "edges": [[u, v, w], ...]} with
// optional "boundary": [int, ...] and optional "exterior": [float; n] (the
// Dirichlet weights a truncation carries for its cut edges). Edge entries may
// omit the weight (defaults to 1). Unknown keys are rejected; every parse
// error names the offending entry.
#pragma once

#include <optional>
#include <string>

#include "specgrowth/graph.hpp"

namespace specgrowth {

WeightedGraph parse_graph_json(const std::string& text, bool allow_disconnected = false,
                               std::optional<ResourceCaps> caps = {});

WeightedGraph load_graph(const std::string& path, bool allow_disconnected = false,
                         std::optional<ResourceCaps> caps = {});

std::string graph_to_json(const WeightedGraph& g);

void save_graph(const WeightedGraph& g, const std::string& path);

}  // namespace specgrowth
