#include "specgrowth/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace specgrowth {

using nlohmann::json;

WeightedGraph parse_graph_json(const std::string& text, bool allow_disconnected,
                               std::optional<ResourceCaps> caps) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw validation_error(std::string("graph file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw validation_error("graph file must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "n" && key != "measure" && key != "edges" && key != "boundary" &&
        key != "exterior")
      throw validation_error("graph file has unknown key '" + key + "'");
  }
  if (!doc.contains("n") || !doc["n"].is_number_unsigned())
    throw validation_error("graph file needs a nonnegative integer 'n'");
  std::uint64_t n = doc["n"].get<std::uint64_t>();

  if (!doc.contains("measure") || !doc["measure"].is_array())
    throw validation_error("graph file needs a 'measure' array");
  std::vector<double> measure;
  measure.reserve(doc["measure"].size());
  for (std::size_t i = 0; i < doc["measure"].size(); ++i) {
    const json& v = doc["measure"][i];
    if (!v.is_number()) {
      std::ostringstream os;
      os << "measure[" << i << "] is not a number";
      throw validation_error(os.str());
    }
    measure.push_back(v.get<double>());
  }

  if (!doc.contains("edges") || !doc["edges"].is_array())
    throw validation_error("graph file needs an 'edges' array");
  std::vector<Edge> edges;
  edges.reserve(doc["edges"].size());
  for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
    const json& e = doc["edges"][i];
    if (!e.is_array() || e.size() < 2 || e.size() > 3) {
      std::ostringstream os;
      os << "edges[" << i << "] must be [u, v] or [u, v, w]";
      throw validation_error(os.str());
    }
    if (!e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
      std::ostringstream os;
      os << "edges[" << i << "]: endpoints must be nonnegative integers";
      throw validation_error(os.str());
    }
    std::uint64_t u = e[0].get<std::uint64_t>();
    std::uint64_t v = e[1].get<std::uint64_t>();
    if (u > UINT32_MAX || v > UINT32_MAX) {
      std::ostringstream os;
      os << "edges[" << i << "]: endpoint exceeds the supported vertex range";
      throw validation_error(os.str());
    }
    double w = 1.0;
    if (e.size() == 3) {
      if (!e[2].is_number()) {
        std::ostringstream os;
        os << "edges[" << i << "]: weight must be a number";
        throw validation_error(os.str());
      }
      w = e[2].get<double>();
    }
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), w});
  }

  BuildOptions opts;
  opts.allow_disconnected = allow_disconnected;
  if (caps) opts.caps = *caps;
  if (doc.contains("boundary")) {
    if (!doc["boundary"].is_array())
      throw validation_error("graph file key 'boundary' must be an array");
    for (std::size_t i = 0; i < doc["boundary"].size(); ++i) {
      const json& v = doc["boundary"][i];
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() > UINT32_MAX) {
        std::ostringstream os;
        os << "boundary[" << i << "] is not a vertex index";
        throw validation_error(os.str());
      }
      opts.boundary.push_back(static_cast<Vertex>(v.get<std::uint64_t>()));
    }
  }
  if (doc.contains("exterior")) {
    if (!doc["exterior"].is_array())
      throw validation_error("graph file key 'exterior' must be an array");
    for (std::size_t i = 0; i < doc["exterior"].size(); ++i) {
      const json& v = doc["exterior"][i];
      if (!v.is_number()) {
        std::ostringstream os;
        os << "exterior[" << i << "] is not a number";
        throw validation_error(os.str());
      }
      opts.exterior.push_back(v.get<double>());
    }
  }
  return build_from_parts(static_cast<std::size_t>(n), std::move(edges), std::move(measure),
                          std::move(opts));
}

WeightedGraph load_graph(const std::string& path, bool allow_disconnected,
                         std::optional<ResourceCaps> caps) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open graph file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph_json(buf.str(), allow_disconnected, caps);
}

std::string graph_to_json(const WeightedGraph& g) {
  json doc;
  doc["n"] = g.n();
  doc["measure"] = g.measures();
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back(json::array({e.u, e.v, e.w}));
  doc["edges"] = std::move(edges);
  if (!g.boundary().empty()) doc["boundary"] = g.boundary();
  if (g.has_exterior()) doc["exterior"] = g.exterior();
  return doc.dump();
}

void save_graph(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot write graph file '" + path + "'");
  out << graph_to_json(g) << "\n";
}

}  // namespace specgrowth
