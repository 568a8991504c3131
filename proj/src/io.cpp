#include "geocover/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "geocover/error.hpp"

namespace geocover {

namespace {

void write_string(std::string& out, const std::string& s) {
  // nlohmann's escaping, applied to a single string value.
  out += Json(s).dump();
}

void dump_rec(const Json& j, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close_pad(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write_string(out, it.key());
        out += ": ";
        dump_rec(it.value(), out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line (matrices, points).
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) {
        return !e.is_object() && !(e.is_array() && !e.empty() && (e[0].is_array() || e[0].is_object()));
      });
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_rec(j[i], out, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump_rec(j[i], out, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

bool all_integers(const Json& j) {
  for (const auto& row : j)
    for (const auto& v : row)
      if (!v.is_number_integer()) return false;
  return true;
}

std::string csv_double(double v) { return format_double(v); }

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep a float marker so a JSON reader does not turn 2.0 into an integer.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string dump_json(const Json& j) {
  std::string out;
  dump_rec(j, out, 0);
  out += "\n";
  return out;
}

Json isometry_to_json(const Isometry& g) {
  if (g.is_exact()) {
    const auto e = g.integer_entries();
    return Json::array({Json::array({e[0], e[1]}), Json::array({e[2], e[3]})});
  }
  return Json::array({Json::array({g.a(), g.b()}), Json::array({g.c(), g.d()})});
}

Isometry isometry_from_json(const Json& j, bool exact_hint) {
  if (!j.is_array() || j.size() != 2 || j[0].size() != 2 || j[1].size() != 2)
    throw PreconditionError("isometry must be [[a,b],[c,d]]");
  if (exact_hint && all_integers(j))
    return Isometry::exact(j[0][0].get<std::int64_t>(), j[0][1].get<std::int64_t>(),
                           j[1][0].get<std::int64_t>(), j[1][1].get<std::int64_t>());
  return Isometry(j[0][0].get<double>(), j[0][1].get<double>(), j[1][0].get<double>(),
                  j[1][1].get<double>());
}

Json cover_to_json(const GeodesicCover& cover) {
  Json j;
  j["surface"] = cover.surface->label();
  j["method"] = to_string(cover.method);
  if (cover.bound_used) {
    Json b;
    b["normsq_cap"] = cover.bound_used->normsq_cap;
    b["u0"] = cover.bound_used->u0 ? Json(*cover.bound_used->u0) : Json(nullptr);
    j["bound_used"] = b;
  } else {
    j["bound_used"] = nullptr;
  }
  j["size"] = cover.gamma0.size();
  Json g0 = Json::array();
  for (const auto& g : cover.gamma0) g0.push_back(isometry_to_json(g));
  j["gamma0"] = g0;
  if (cover.radical) {
    Json r = Json::array();
    for (const auto& g : *cover.radical) r.push_back(isometry_to_json(g));
    j["radical"] = r;
  } else {
    j["radical"] = nullptr;
  }
  return j;
}

GeodesicCover cover_from_json(const Json& j) {
  try {
    GeodesicCover cover;
    cover.surface = build_group(j.at("surface").get<std::string>());
    cover.method = cover_method_from_string(j.at("method").get<std::string>());
    if (j.contains("bound_used") && !j["bound_used"].is_null()) {
      CoverSearchBounds b;
      b.normsq_cap = j["bound_used"].at("normsq_cap").get<double>();
      if (j["bound_used"].contains("u0") && !j["bound_used"]["u0"].is_null())
        b.u0 = j["bound_used"]["u0"].get<double>();
      cover.bound_used = b;
    }
    for (const auto& m : j.at("gamma0")) cover.gamma0.push_back(isometry_from_json(m, true));
    if (j.contains("radical") && !j["radical"].is_null()) {
      std::vector<Isometry> r;
      for (const auto& m : j["radical"]) r.push_back(isometry_from_json(m, true));
      cover.radical = r;
    }
    validate_cover(cover);
    return cover;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed cover file: ") + e.what());
  }
}

Json point_set_to_json(const PointSet& P) {
  Json j;
  j["surface"] = P.surface.label();
  j["label"] = P.label;
  Json pts = Json::array();
  for (const auto& p : P.points) {
    Json q;
    q["x"] = p.x();
    q["y"] = p.y();
    pts.push_back(q);
  }
  j["points"] = pts;
  return j;
}

PointSet point_set_from_json(const Json& j) {
  try {
    PointSet P;
    P.surface = Surface::parse(j.at("surface").get<std::string>());
    if (j.contains("label")) P.label = j["label"].get<std::string>();
    for (const auto& q : j.at("points"))
      P.points.emplace_back(q.at("x").get<double>(), q.at("y").get<double>());
    return P;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed point set file: ") + e.what());
  }
}

Json verify_report_to_json(const VerifyReport& r, const GeodesicCover& cover, std::uint64_t seed,
                           double tolerance) {
  Json j;
  j["surface"] = cover.surface->label();
  j["method"] = to_string(cover.method);
  j["cover_size"] = cover.gamma0.size();
  j["samples"] = r.samples;
  j["seed"] = seed;
  j["tolerance"] = tolerance;
  j["max_abs_gap"] = r.max_abs_gap;
  j["verified"] = r.max_abs_gap <= tolerance;
  if (r.worst_pair) {
    Json w;
    w["p"] = Json::array({r.worst_pair->p.x(), r.worst_pair->p.y()});
    w["q"] = Json::array({r.worst_pair->q.x(), r.worst_pair->q.y()});
    w["cover_distance"] = r.worst_cover_distance;
    w["oracle_distance"] = r.worst_oracle_distance;
    j["worst_pair"] = w;
  } else {
    j["worst_pair"] = nullptr;
  }
  Json used = Json::array();
  for (const auto& g : r.used_elements) used.push_back(isometry_to_json(g));
  j["used_elements"] = used;
  return j;
}

std::string to_csv(const CsvTable& t) {
  std::string out;
  for (const auto& c : t.comments) out += "# " + c + "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ",";
      out += cells[i];
    }
    out += "\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out;
}

CsvTable lattice_csv(const std::vector<LatticeRow>& rows) {
  CsvTable t;
  t.header = {"R", "N", "ratio"};
  for (const auto& r : rows)
    t.rows.push_back({csv_double(r.R), std::to_string(r.count), csv_double(r.ratio)});
  return t;
}

CsvTable stats_csv(const DistanceStats& s) {
  CsvTable t;
  t.comments.push_back("bounds are shape-only (absolute constants set to 1)");
  t.header = {"N", "m", "Q", "sum_n", "cs_lower_bound", "thm_bound", "eps_eq"};
  t.rows.push_back({std::to_string(s.n_points), std::to_string(s.m), std::to_string(s.quadruples),
                    std::to_string(s.sum_n), csv_double(s.cs_lower_bound),
                    s.thm_bound ? csv_double(*s.thm_bound) : std::string(""),
                    csv_double(s.eps_eq)});
  return t;
}

CsvTable qp_csv(const std::vector<QpRow>& rows) {
  CsvTable t;
  t.comments.push_back("ratio = Q / (N^3 ln N); trend only");
  t.header = {"N", "Q", "ratio", "m", "cs_lower_bound", "m_half_eps", "stable"};
  for (const auto& r : rows)
    t.rows.push_back({std::to_string(r.n), std::to_string(r.quadruples), csv_double(r.ratio),
                      std::to_string(r.m), csv_double(r.cs_lower_bound), std::to_string(r.m_half),
                      r.stable ? "1" : "0"});
  return t;
}

CsvTable equilateral_csv(const EquilateralReport& r) {
  CsvTable t;
  t.header = {"g", "r", "found", "on_circle", "alpha_min", "circle_cap"};
  t.rows.push_back({std::to_string(r.g), csv_double(r.r), std::to_string(r.found),
                    std::to_string(r.on_circle), csv_double(r.alpha_min),
                    std::to_string(r.circle_cap)});
  return t;
}

Json stats_to_json(const DistanceStats& s) {
  Json j;
  j["N"] = s.n_points;
  j["m"] = s.m;
  j["Q"] = s.quadruples;
  j["sum_n"] = s.sum_n;
  j["cs_lower_bound"] = s.cs_lower_bound;
  j["thm_bound"] = s.thm_bound ? Json(*s.thm_bound) : Json(nullptr);
  j["bounds_note"] = "shape-only";
  j["eps_eq"] = s.eps_eq;
  j["values"] = s.values;
  j["multiplicities"] = s.multiplicities;
  return j;
}

Json equilateral_to_json(const EquilateralReport& r) {
  Json j;
  j["g"] = r.g;
  j["r"] = r.r;
  j["found"] = r.found;
  j["on_circle"] = r.on_circle;
  j["alpha_min"] = r.alpha_min;
  j["circle_cap"] = r.circle_cap;
  Json pts = Json::array();
  for (const auto& p : r.points) pts.push_back(Json::array({p.x(), p.y()}));
  j["points"] = pts;
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out) throw Error("write failed for " + path);
}

UhpPoint parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw PreconditionError("point must be written x,y");
  try {
    std::size_t ux = 0, uy = 0;
    const std::string xs = s.substr(0, comma), ys = s.substr(comma + 1);
    const double x = std::stod(xs, &ux);
    const double y = std::stod(ys, &uy);
    if (ux != xs.size() || uy != ys.size()) throw PreconditionError("bad point '" + s + "'");
    return {x, y};
  } catch (const std::logic_error&) {
    throw PreconditionError("bad point '" + s + "'");
  }
}

}  // namespace geocover
