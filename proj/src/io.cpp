#include "polymin/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <system_error>

#include "json.hpp"
#include "polymin/errors.hpp"

namespace polymin {

namespace {

using nlohmann::json;

std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Line/column of a byte offset, both 1-based.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void fail_at(std::string_view text, std::size_t offset, const std::string& what) {
  const auto [line, col] = locate(text, offset);
  throw ParseError(what, line, col);
}

// Makes a polyline, converting geometry errors into parse errors.
Polyline make_polyline(std::vector<Point> pts, bool closed, std::string_view text,
                       std::size_t offset) {
  if (closed && pts.size() >= 2 && pts.front() == pts.back()) pts.pop_back();
  try {
    return Polyline(std::move(pts), closed);
  } catch (const Error& e) {
    fail_at(text, offset, e.what());
  }
}

// ---- CSV -------------------------------------------------------------------

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

PolylineDocument parse_csv(std::string_view text) {
  PolylineDocument doc;
  std::vector<Point> pts;
  bool closed = false;
  std::string pending_id;
  std::size_t block_start = 0;

  const auto flush = [&](std::size_t offset) {
    if (pts.empty()) {
      if (closed) fail_at(text, offset, "'closed' marker without vertices");
      return;
    }
    doc.add(make_polyline(std::move(pts), closed, text, block_start), pending_id);
    pts.clear();
    closed = false;
    pending_id.clear();
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view raw = text.substr(pos, eol - pos);
    const std::string_view line = trim(raw);
    if (line.empty()) {
      flush(pos);
    } else if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      if (body.rfind("id:", 0) == 0) {
        flush(pos);
        pending_id = std::string(trim(body.substr(3)));
      }
    } else if (line == "closed") {
      if (pts.empty()) fail_at(text, pos, "'closed' marker without vertices");
      closed = true;
    } else {
      if (closed) fail_at(text, pos, "vertex after 'closed' marker");
      const std::size_t comma = line.find(',');
      double x = 0.0, y = 0.0;
      const std::size_t col0 = static_cast<std::size_t>(line.data() - text.data());
      if (comma == std::string_view::npos) fail_at(text, col0, "expected 'x,y'");
      if (!parse_double(line.substr(0, comma), x)) fail_at(text, col0, "invalid x coordinate");
      if (!parse_double(line.substr(comma + 1), y))
        fail_at(text, col0 + comma + 1, "invalid y coordinate");
      if (pts.empty()) block_start = col0;
      pts.push_back({x, y});
    }
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  flush(text.size());
  return doc;
}

std::string serialize_csv(const PolylineDocument& doc) {
  std::string out;
  for (std::size_t i = 0; i < doc.items.size(); ++i) {
    const auto& rec = doc.items[i];
    if (i > 0) out += '\n';
    if (rec.id != std::to_string(i)) out += "# id: " + rec.id + '\n';
    for (const Point& p : rec.polyline.vertices())
      out += format_number(p.x) + ',' + format_number(p.y) + '\n';
    if (rec.polyline.closed()) out += "closed\n";
  }
  return out;
}

// ---- WKT -------------------------------------------------------------------

class WktReader {
 public:
  explicit WktReader(std::string_view text) : text_(text) {}

  PolylineDocument read() {
    PolylineDocument doc;
    skip_space();
    while (pos_ < text_.size()) {
      const std::size_t at = pos_;
      const std::string kw = keyword();
      if (kw == "LINESTRING") {
        auto pts = coordinates();
        doc.add(make_polyline(std::move(pts), false, text_, at));
      } else if (kw == "POLYGON") {
        for (auto& ring : rings()) doc.add(make_polyline(std::move(ring), true, text_, at));
      } else if (kw == "MULTILINESTRING") {
        for (auto& part : rings()) doc.add(make_polyline(std::move(part), false, text_, at));
      } else {
        fail_at(text_, at, "unsupported WKT geometry '" + kw + "'");
      }
      skip_space();
      if (pos_ < text_.size() && (text_[pos_] == ';' || text_[pos_] == ',')) {
        ++pos_;
        skip_space();
      }
    }
    return doc;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail_at(text_, pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string keyword() {
    skip_space();
    std::string kw;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
      kw += static_cast<char>(std::toupper(static_cast<unsigned char>(text_[pos_++])));
    if (kw.empty()) fail_at(text_, pos_, "expected a geometry keyword");
    return kw;
  }

  double number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            std::string_view("+-.eE").find(text_[pos_]) != std::string_view::npos))
      ++pos_;
    double v = 0.0;
    if (!parse_double(text_.substr(start, pos_ - start), v))
      fail_at(text_, start, "invalid number");
    return v;
  }

  std::vector<Point> coordinates() {
    expect('(');
    std::vector<Point> pts;
    do {
      const double x = number();
      const double y = number();
      pts.push_back({x, y});
    } while (accept(','));
    expect(')');
    return pts;
  }

  std::vector<std::vector<Point>> rings() {
    expect('(');
    std::vector<std::vector<Point>> out;
    do {
      out.push_back(coordinates());
    } while (accept(','));
    expect(')');
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string serialize_wkt(const PolylineDocument& doc) {
  std::string out;
  for (const auto& rec : doc.items) {
    const auto path = rec.polyline.path();
    std::string coords;
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i > 0) coords += ", ";
      coords += format_number(path[i].x) + ' ' + format_number(path[i].y);
    }
    if (rec.polyline.closed())
      out += "POLYGON ((" + coords + "))\n";
    else
      out += "LINESTRING (" + coords + ")\n";
  }
  return out;
}

// ---- GeoJSON ---------------------------------------------------------------

std::vector<Point> json_points(const json& coords) {
  std::vector<Point> pts;
  for (const json& c : coords) {
    if (!c.is_array() || c.size() < 2 || !c[0].is_number() || !c[1].is_number())
      throw std::invalid_argument("coordinate must be [x, y]");
    pts.push_back({c[0].get<double>(), c[1].get<double>()});
  }
  return pts;
}

void add_geometry(PolylineDocument& doc, const json& geom, const std::string& id,
                  std::string_view text) {
  const std::string type = geom.at("type").get<std::string>();
  const auto add = [&](std::vector<Point> pts, bool closed, std::string rid) {
    if (closed && pts.size() >= 2 && pts.front() == pts.back()) pts.pop_back();
    try {
      doc.add(Polyline(std::move(pts), closed), std::move(rid));
    } catch (const Error& e) {
      fail_at(text, text.size(), e.what());
    }
  };
  if (type == "LineString") {
    add(json_points(geom.at("coordinates")), false, id);
  } else if (type == "Polygon") {
    const json& rings = geom.at("coordinates");
    for (std::size_t i = 0; i < rings.size(); ++i)
      add(json_points(rings[i]), true, i == 0 ? id : std::string{});
  } else if (type == "MultiLineString") {
    for (const json& part : geom.at("coordinates")) add(json_points(part), false, {});
  } else if (type == "MultiPolygon") {
    for (const json& poly : geom.at("coordinates"))
      for (const json& ring : poly) add(json_points(ring), true, {});
  } else if (type == "GeometryCollection") {
    for (const json& g : geom.at("geometries")) add_geometry(doc, g, {}, text);
  } else {
    throw std::invalid_argument("unsupported geometry type '" + type + "'");
  }
}

std::string json_id(const json& feature) {
  if (!feature.contains("id")) return {};
  const json& id = feature["id"];
  return id.is_string() ? id.get<std::string>() : id.dump();
}

PolylineDocument parse_geojson(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail_at(text, e.byte == 0 ? 0 : e.byte - 1, "invalid JSON");
  }
  PolylineDocument doc;
  try {
    const std::string type = root.at("type").get<std::string>();
    if (type == "FeatureCollection") {
      for (const json& f : root.at("features"))
        if (!f.at("geometry").is_null()) add_geometry(doc, f.at("geometry"), json_id(f), text);
    } else if (type == "Feature") {
      add_geometry(doc, root.at("geometry"), json_id(root), text);
    } else {
      add_geometry(doc, root, {}, text);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    fail_at(text, text.size(), std::string("invalid GeoJSON: ") + e.what());
  }
  // Records without an id get their position.
  for (std::size_t i = 0; i < doc.items.size(); ++i)
    if (doc.items[i].id.empty()) doc.items[i].id = std::to_string(i);
  return doc;
}

std::string serialize_geojson(const PolylineDocument& doc) {
  json features = json::array();
  for (const auto& rec : doc.items) {
    json coords = json::array();
    for (const Point& p : rec.polyline.path()) coords.push_back({p.x, p.y});
    json geom;
    if (rec.polyline.closed()) {
      geom = {{"type", "Polygon"}, {"coordinates", json::array({coords})}};
    } else {
      geom = {{"type", "LineString"}, {"coordinates", coords}};
    }
    features.push_back({{"type", "Feature"}, {"id", rec.id}, {"properties", json::object()},
                        {"geometry", geom}});
  }
  const json root = {{"type", "FeatureCollection"}, {"features", features}};
  return root.dump(1) + "\n";
}

}  // namespace

void PolylineDocument::add(Polyline poly, std::string id) {
  if (id.empty()) id = std::to_string(items.size());
  items.push_back({std::move(id), std::move(poly)});
}

PolylineDocument parse(std::string_view text, Format format) {
  switch (format) {
    case Format::Csv:
      return parse_csv(text);
    case Format::Wkt:
      return WktReader(text).read();
    case Format::GeoJson:
      return parse_geojson(text);
  }
  throw InvalidParameter("unknown format");
}

std::string serialize(const PolylineDocument& doc, Format format) {
  switch (format) {
    case Format::Csv:
      return serialize_csv(doc);
    case Format::Wkt:
      return serialize_wkt(doc);
    case Format::GeoJson:
      return serialize_geojson(doc);
  }
  throw InvalidParameter("unknown format");
}

std::optional<Format> format_from_name(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "csv") return Format::Csv;
  if (lower == "wkt") return Format::Wkt;
  if (lower == "geojson" || lower == "json") return Format::GeoJson;
  return std::nullopt;
}

std::optional<Format> format_from_path(std::string_view path) {
  const std::size_t dot = path.rfind('.');
  if (dot == std::string_view::npos) return std::nullopt;
  return format_from_name(path.substr(dot + 1));
}

}  // namespace polymin
