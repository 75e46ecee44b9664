#include "acsais/graph_io.hpp"

#include "acsais/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace acsais::io {

using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

WeightedDigraph layer_from_json(const json& edges, int n, const std::string& name) {
  const std::string field = "layers." + name;
  if (!edges.is_array()) throw InputError(field + ": expected an array of [src, dst, weight]");
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const json& e = edges[k];
    const std::string where = field + "[" + std::to_string(k) + "]";
    if (!e.is_array() || e.size() != 3)
      throw InputError(where + ": expected [src, dst, weight]");
    if (!e[0].is_number_integer() || !e[1].is_number_integer())
      throw InputError(where + ": src and dst must be integers");
    if (!e[2].is_number()) throw InputError(where + ": weight must be a number");
    list.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
  }
  try {
    return WeightedDigraph(n, std::move(list));
  } catch (const InputError& err) {
    throw InputError(field + ": " + err.what());
  }
}

json layer_to_json(const WeightedDigraph& g) {
  json arr = json::array();
  for (const Edge& e : g.edges()) arr.push_back({e.source, e.target, e.weight});
  return arr;
}

}  // namespace

MultilayerNetwork parse_multilayer_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw InputError(std::string("JSON syntax error: ") + err.what());
  }
  if (!doc.is_object()) throw InputError("top level must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw InputError("n: missing or not an integer");
  const int n = doc["n"].get<int>();
  if (n < 1) throw InputError("n: must be at least 1");
  if (!doc.contains("layers") || !doc["layers"].is_object())
    throw InputError("layers: missing or not an object");
  const json& layers = doc["layers"];
  for (const char* name : {"S", "A"})
    if (!layers.contains(name)) throw InputError(std::string("layers.") + name + ": missing");
  return MultilayerNetwork(layer_from_json(layers["S"], n, "S"),
                           layer_from_json(layers["A"], n, "A"));
}

MultilayerNetwork read_multilayer_json(const std::filesystem::path& path) {
  try {
    return parse_multilayer_json(slurp(path));
  } catch (const InputError& err) {
    throw InputError(path.string() + ": " + err.what());
  }
}

std::string to_json_string(const MultilayerNetwork& net) {
  json doc;
  doc["n"] = net.size();
  doc["layers"]["S"] = layer_to_json(net.layer_s());
  doc["layers"]["A"] = layer_to_json(net.layer_a());
  return doc.dump(1);
}

void write_multilayer_json(const std::filesystem::path& path, const MultilayerNetwork& net) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << to_json_string(net) << '\n';
}

WeightedDigraph parse_edge_list(std::istream& in, std::optional<int> n, bool symmetrize) {
  std::vector<Edge> edges;
  std::string line;
  int line_no = 0;
  int max_index = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    long long src, dst;
    double w;
    std::string extra;
    if (!(fields >> src >> dst >> w))
      throw InputError("line " + std::to_string(line_no) + ": expected src<TAB>dst<TAB>weight");
    if (fields >> extra)
      throw InputError("line " + std::to_string(line_no) + ": unexpected trailing field '" +
                       extra + "'");
    if (src < 0 || dst < 0 || src > 100000000 || dst > 100000000)
      throw InputError("line " + std::to_string(line_no) + ": node index out of range");
    if (src == dst) throw InputError("line " + std::to_string(line_no) + ": self-loop");
    if (!(w > 0.0) || !std::isfinite(w))
      throw InputError("line " + std::to_string(line_no) + ": weight must be positive");
    edges.push_back({static_cast<int>(src), static_cast<int>(dst), w});
    if (symmetrize) edges.push_back({static_cast<int>(dst), static_cast<int>(src), w});
    max_index = std::max<int>(max_index, static_cast<int>(std::max(src, dst)));
  }
  if (symmetrize) {
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return a.source != b.source ? a.source < b.source : a.target < b.target;
    });
    // An undirected list may legitimately contain both orientations.
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const Edge& a, const Edge& b) {
                              return a.source == b.source && a.target == b.target &&
                                     a.weight == b.weight;
                            }),
                edges.end());
  }
  const int size = n.value_or(max_index + 1);
  return WeightedDigraph(size, std::move(edges));
}

WeightedDigraph read_edge_list(const std::filesystem::path& path, std::optional<int> n,
                               bool symmetrize) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return parse_edge_list(in, n, symmetrize);
  } catch (const InputError& err) {
    throw InputError(path.string() + ": " + err.what());
  }
}

void write_edge_list(std::ostream& out, const WeightedDigraph& g) {
  out.precision(17);
  for (const Edge& e : g.edges()) out << e.source << '\t' << e.target << '\t' << e.weight << '\n';
}

MultilayerNetwork read_edge_list_pair(const std::filesystem::path& layer_s,
                                      const std::filesystem::path& layer_a,
                                      std::optional<int> n, bool symmetrize) {
  WeightedDigraph s = read_edge_list(layer_s, n, symmetrize);
  WeightedDigraph a = read_edge_list(layer_a, n, symmetrize);
  if (!n && s.size() != a.size()) {
    const int size = std::max(s.size(), a.size());
    s = WeightedDigraph(size, s.edges());
    a = WeightedDigraph(size, a.edges());
  }
  return MultilayerNetwork(std::move(s), std::move(a));
}

std::string trace_to_json_string(const AggregationTrace& trace) {
  json steps = json::array();
  for (std::size_t k = 0; k < trace.graphs.size(); ++k) {
    json links = json::array();
    for (const auto& [from, to] : trace.graphs[k].links) links.push_back({from, to});
    steps.push_back({{"k", k}, {"partition", trace.graphs[k].partition}, {"links", links}});
  }
  return steps.dump(1);
}

}  // namespace acsais::io
