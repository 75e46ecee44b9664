#pragma once

#include "acsais/graph.hpp"
#include "acsais/mconnect.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace acsais::io {

// Multilayer JSON:
//   { "n": int, "layers": { "S": [[src, dst, weight], ...], "A": [...] } }
// Edge lists (TSV): one `src<TAB>dst<TAB>weight` per line, 0-indexed; blank
// lines and lines starting with '#' are skipped.
//
// All readers throw InputError with a field or line diagnostic.

MultilayerNetwork parse_multilayer_json(const std::string& text);
MultilayerNetwork read_multilayer_json(const std::filesystem::path& path);
std::string to_json_string(const MultilayerNetwork& net);
void write_multilayer_json(const std::filesystem::path& path, const MultilayerNetwork& net);

/// `n` defaults to one past the largest index seen. With `symmetrize`, every
/// line also adds the reverse edge (undirected input).
WeightedDigraph parse_edge_list(std::istream& in, std::optional<int> n = std::nullopt,
                                bool symmetrize = false);
WeightedDigraph read_edge_list(const std::filesystem::path& path,
                               std::optional<int> n = std::nullopt, bool symmetrize = false);
void write_edge_list(std::ostream& out, const WeightedDigraph& g);

/// Paired TSV layers. Without an explicit n both layers are sized to the
/// larger inferred node count.
MultilayerNetwork read_edge_list_pair(const std::filesystem::path& layer_s,
                                      const std::filesystem::path& layer_a,
                                      std::optional<int> n = std::nullopt,
                                      bool symmetrize = false);

/// JSON list with one entry per aggregation step:
///   [ { "k": 0, "partition": [[0], [1], ...], "links": [[0, 1], ...] }, ... ]
std::string trace_to_json_string(const AggregationTrace& trace);

}  // namespace acsais::io
