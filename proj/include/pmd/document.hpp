#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include <json.hpp>

#include "pmd/block_function.hpp"
#include "pmd/decomposition.hpp"
#include "pmd/error.hpp"
#include "pmd/filtration.hpp"

namespace pmd {

/// Everything cmd_compute produces, in a form that survives a JSON round trip.
struct DiagramDocument {
  int schema_version = 1;
  Barcode domain_barcode;
  Barcode codomain_barcode;
  MatchingDiagram diagram;  // block cells plus (inf, b) deficiency points
  std::map<double, std::size_t> deficiency;
  IntervalBarcode kernel;
  Barcode image;
  Barcode cokernel;
  bool mapping_injective = false;

  /// Finite part of the diagram and the full deficiency as a block function.
  BlockFunction block_function() const {
    BlockFunction bf;
    for (const auto& [key, m] : diagram.points)
      if (!std::isinf(key.first)) bf.cells[key] = m;
    bf.deficiency = deficiency;
    return bf;
  }

  friend bool operator==(const DiagramDocument&, const DiagramDocument&) = default;
};

inline DiagramDocument make_document(const Filtration& fx, const Filtration& fz,
                                     const SetMapping& m, const BlockFunction& bf) {
  DiagramDocument doc;
  doc.domain_barcode = fx.barcode();
  doc.codomain_barcode = fz.barcode();
  doc.diagram = matching_diagram(bf);
  doc.deficiency = bf.deficiency;
  doc.kernel = kernel_barcode(bf);
  doc.image = image_barcode(bf);
  doc.cokernel = cokernel_barcode(bf);
  doc.mapping_injective = m.injective();
  return doc;
}

namespace detail {

using json = nlohmann::ordered_json;

inline json encode_value(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  return v;
}

inline double decode_value(const json& j, const char* what) {
  if (j.is_string() && j.get<std::string>() == "inf") return kInfinity;
  if (!j.is_number()) throw Error(ErrorKind::Parse, std::string(what) + " is not a number");
  return j.get<double>();
}

inline std::size_t decode_count(const json& j, const char* what) {
  if (!j.is_number_unsigned()) {
    throw Error(ErrorKind::Parse, std::string(what) + " is not a non-negative integer");
  }
  return j.get<std::size_t>();
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::Parse, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

inline const json& array_field(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) throw Error(ErrorKind::Parse, std::string("field '") + key + "' is not a list");
  return a;
}

inline json encode(const Barcode& bc) {
  json bars = json::array();
  for (const auto& bar : bc.deaths) bars.push_back({{"death", bar.death}, {"mult", bar.mult}});
  return {{"bars", bars}, {"infinite", bc.infinite_bars}};
}

inline Barcode decode_barcode(const json& j) {
  Barcode bc;
  for (const auto& bar : array_field(j, "bars"))
    bc.deaths.push_back({decode_value(field(bar, "death"), "death"),
                         decode_count(field(bar, "mult"), "mult")});
  bc.infinite_bars = decode_count(field(j, "infinite"), "infinite");
  return bc;
}

inline json encode(const IntervalBarcode& bc) {
  json ivs = json::array();
  for (const auto& iv : bc.intervals)
    ivs.push_back({{"birth", iv.birth}, {"death", iv.death}, {"mult", iv.mult}});
  return {{"intervals", ivs}};
}

inline IntervalBarcode decode_interval_barcode(const json& j) {
  IntervalBarcode bc;
  for (const auto& iv : array_field(j, "intervals"))
    bc.intervals.push_back({decode_value(field(iv, "birth"), "birth"),
                            decode_value(field(iv, "death"), "death"),
                            decode_count(field(iv, "mult"), "mult")});
  return bc;
}

}  // namespace detail

/// Serializes with the cells sorted by (a, b) and the inf column last.
inline std::string to_json(const DiagramDocument& doc) {
  using detail::json;
  json cells = json::array();
  for (const auto& [key, m] : doc.diagram.points)
    cells.push_back({{"a", detail::encode_value(key.first)}, {"b", key.second}, {"mult", m}});
  json deficiency = json::array();
  for (const auto& [b, n] : doc.deficiency) deficiency.push_back({{"b", b}, {"mult", n}});

  json j;
  j["schema_version"] = doc.schema_version;
  j["domain_barcode"] = detail::encode(doc.domain_barcode);
  j["codomain_barcode"] = detail::encode(doc.codomain_barcode);
  j["block_cells"] = cells;
  j["deficiency"] = deficiency;
  j["kernel"] = detail::encode(doc.kernel);
  j["image"] = detail::encode(doc.image);
  j["cokernel"] = detail::encode(doc.cokernel);
  j["mapping_injective"] = doc.mapping_injective;
  return j.dump(2) + "\n";
}

inline DiagramDocument from_json(const std::string& text) {
  using detail::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
  try {
    DiagramDocument doc;
    const json& version = detail::field(j, "schema_version");
    if (!version.is_number_integer() || version.get<int>() != 1) {
      throw Error(ErrorKind::Parse, "unsupported schema_version");
    }
    doc.domain_barcode = detail::decode_barcode(detail::field(j, "domain_barcode"));
    doc.codomain_barcode = detail::decode_barcode(detail::field(j, "codomain_barcode"));
    for (const auto& c : detail::array_field(j, "block_cells"))
      doc.diagram.points[{detail::decode_value(detail::field(c, "a"), "a"),
                          detail::decode_value(detail::field(c, "b"), "b")}] +=
          detail::decode_count(detail::field(c, "mult"), "mult");
    for (const auto& d : detail::array_field(j, "deficiency"))
      doc.deficiency[detail::decode_value(detail::field(d, "b"), "b")] +=
          detail::decode_count(detail::field(d, "mult"), "mult");
    doc.kernel = detail::decode_interval_barcode(detail::field(j, "kernel"));
    doc.image = detail::decode_barcode(detail::field(j, "image"));
    doc.cokernel = detail::decode_barcode(detail::field(j, "cokernel"));
    const json& inj = detail::field(j, "mapping_injective");
    if (!inj.is_boolean()) throw Error(ErrorKind::Parse, "mapping_injective is not a flag");
    doc.mapping_injective = inj.get<bool>();
    return doc;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed document: ") + e.what());
  }
}

}  // namespace pmd
