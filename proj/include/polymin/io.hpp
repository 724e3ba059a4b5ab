#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polymin/geometry.hpp"

namespace polymin {

enum class Format { Csv, Wkt, GeoJson };

struct PolylineRecord {
  std::string id;
  Polyline polyline;

  friend bool operator==(const PolylineRecord&, const PolylineRecord&) = default;
};

/// Ordered collection of polylines with identifiers. Records parsed without
/// an explicit id are numbered from 0.
struct PolylineDocument {
  std::vector<PolylineRecord> items;

  void add(Polyline poly, std::string id = {});

  friend bool operator==(const PolylineDocument&, const PolylineDocument&) = default;
};

/// csv: one "x,y" per line, blank lines separate polylines, an optional
///      "closed" line ends a closed polyline, "# id: <id>" names the next one.
/// wkt: LINESTRING and POLYGON geometries (each polygon ring is a closed
///      polyline with its repeated last vertex collapsed).
/// geojson: LineString / Polygon / Multi* geometries, bare or in features.
/// Throws ParseError carrying line and column.
PolylineDocument parse(std::string_view text, Format format);

/// Coordinates are written in shortest round-trip form.
std::string serialize(const PolylineDocument& doc, Format format);

std::optional<Format> format_from_name(std::string_view name);
/// Guesses from the file extension (.csv, .wkt, .json/.geojson).
std::optional<Format> format_from_path(std::string_view path);

}  // namespace polymin
