#include "geocover/cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "geocover/analytics.hpp"
#include "geocover/cover.hpp"
#include "geocover/error.hpp"
#include "geocover/io.hpp"
#include "geocover/parallel.hpp"

namespace geocover {

namespace {

constexpr double kVerifyTolerance = 1e-9;

struct Common {
  std::uint64_t seed = 1;
  std::optional<unsigned> threads;
  std::string out_path;
  std::string format = "csv";
  std::optional<double> eps;

  unsigned thread_count() const { return threads ? std::max(1u, *threads) : threads_from_env(); }
  double eps_eq() const { return eps ? *eps : kDefaultEpsEq; }
};

void add_common(CLI::App* cmd, Common& c, bool with_format) {
  cmd->add_option("--seed", c.seed, "random seed");
  cmd->add_option("--threads", c.threads, "worker threads (GEOCOVER_THREADS fallback)");
  cmd->add_option("--out", c.out_path, "output file (stdout when absent)");
  if (with_format)
    cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
}

std::vector<std::string> override_lines(const std::vector<std::pair<std::string, std::optional<double>>>& o) {
  std::vector<std::string> lines;
  for (const auto& [k, v] : o)
    if (v) lines.push_back(k + "=" + format_double(*v));
  return lines;
}

Json override_json(const std::vector<std::pair<std::string, std::optional<double>>>& o) {
  Json j = Json::object();
  for (const auto& [k, v] : o)
    if (v) j[k] = *v;
  return j;
}

/// The cover used for distances on a surface: from a file when given,
/// otherwise the default cover for that surface.
GeodesicCover resolve_cover(const FuchsianGroup& grp, const std::string& cover_path) {
  if (!cover_path.empty()) {
    GeodesicCover c = cover_from_json(Json::parse(read_file(cover_path)));
    if (c.surface->label() != grp.label())
      throw PreconditionError("cover is for " + c.surface->label() + ", not " + grp.label());
    return c;
  }
  if (grp.is_modular()) return modular_cover_paper();
  return build_cover_genus(grp.genus());
}

std::string point_text(const UhpPoint& p) {
  return format_double(p.x()) + "," + format_double(p.y());
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  void emit(const Common& c, const std::string& text) {
    if (c.out_path.empty())
      out_ << text;
    else
      write_file(c.out_path, text);
  }

  std::ostream& summary(const Common& c) { return c.out_path.empty() ? err_ : out_; }

  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distances, geodesic covers and distinct-distance statistics on hyperbolic surfaces",
               "geocover"};
  app.require_subcommand(1);
  Runner run(out, err);

  // cover build / cover verify
  auto* cover_cmd = app.add_subcommand("cover", "construct or verify a geodesic cover");
  cover_cmd->require_subcommand(1);

  Common build_c;
  std::string build_surface;
  auto* build_cmd = cover_cmd->add_subcommand("build", "build the cover of a surface");
  build_cmd->add_option("--surface", build_surface, "modular or genus:<g>")->required();
  add_common(build_cmd, build_c, false);

  Common verify_c;
  std::string verify_file;
  std::size_t verify_samples = 5000;
  std::optional<double> verify_inflate, verify_boundary, verify_tol;
  auto* verify_cmd = cover_cmd->add_subcommand("verify", "compare a cover against the oracle");
  verify_cmd->add_option("cover", verify_file, "cover JSON file")->required();
  verify_cmd->add_option("--samples", verify_samples, "number of sample pairs");
  verify_cmd->add_option("--inflate", verify_inflate, "oracle ball inflation (genus)");
  verify_cmd->add_option("--boundary-fraction", verify_boundary, "share of boundary-biased samples");
  verify_cmd->add_option("--tol", verify_tol, "accepted max gap");
  add_common(verify_cmd, verify_c, false);

  // dist
  Common dist_c;
  std::string dist_surface, dist_cover, dist_p, dist_q;
  auto* dist_cmd = app.add_subcommand("dist", "surface distance between two points");
  dist_cmd->add_option("--surface", dist_surface, "modular or genus:<g>")->required();
  dist_cmd->add_option("--cover", dist_cover, "cover JSON file");
  dist_cmd->add_option("p", dist_p, "first point x,y")->required();
  dist_cmd->add_option("q", dist_q, "second point x,y")->required();
  add_common(dist_cmd, dist_c, false);

  // analyze
  Common an_c;
  std::string an_points, an_cover;
  auto* an_cmd = app.add_subcommand("analyze", "distinct-distance statistics of a point set");
  an_cmd->add_option("points", an_points, "point set JSON file")->required();
  an_cmd->add_option("--cover", an_cover, "cover JSON file");
  an_cmd->add_option("--eps", an_c.eps, "distance clustering tolerance");
  add_common(an_cmd, an_c, true);

  // latcount
  Common lat_c;
  std::string lat_surface;
  double lat_rmax = 10.0;
  std::size_t lat_steps = 10;
  auto* lat_cmd = app.add_subcommand("latcount", "group element counts in norm balls");
  lat_cmd->add_option("--surface", lat_surface, "modular or genus:<g>")->required();
  lat_cmd->add_option("--rmax", lat_rmax, "largest norm bound");
  lat_cmd->add_option("--steps", lat_steps, "grid intervals between sqrt(2) and rmax");
  add_common(lat_cmd, lat_c, true);

  // equilateral
  Common eq_c;
  int eq_genus = 2;
  std::optional<double> eq_r;
  std::size_t eq_attempts = 8;
  auto* eq_cmd = app.add_subcommand("equilateral", "greedy >= r packing on a genus-g surface");
  eq_cmd->add_option("--genus", eq_genus, "genus")->required();
  eq_cmd->add_option("--r", eq_r, "packing distance (default: edge radius)");
  eq_cmd->add_option("--attempts", eq_attempts, "greedy restarts");
  add_common(eq_cmd, eq_c, true);

  // points
  Common pts_c;
  std::string pts_surface, pts_kind = "area";
  std::size_t pts_count = 100;
  std::optional<double> pts_spacing;
  auto* pts_cmd = app.add_subcommand("points", "generate a point set");
  pts_cmd->add_option("--surface", pts_surface, "plane, modular or genus:<g>")->required();
  pts_cmd->add_option("--kind", pts_kind, "area, progression or orbit")
      ->check(CLI::IsMember({"area", "progression", "orbit"}));
  pts_cmd->add_option("--count", pts_count, "number of points");
  pts_cmd->add_option("--spacing", pts_spacing, "progression step");
  add_common(pts_cmd, pts_c, false);

  // qp
  Common qp_c;
  std::string qp_surface = "modular", qp_cover;
  std::vector<std::size_t> qp_ns{100, 200, 400, 800};
  auto* qp_cmd = app.add_subcommand("qp", "quadruple-count scaling over several N");
  qp_cmd->add_option("--surface", qp_surface, "modular or genus:<g>");
  qp_cmd->add_option("--cover", qp_cover, "cover JSON file");
  qp_cmd->add_option("--n", qp_ns, "point counts")->delimiter(',');
  qp_cmd->add_option("--eps", qp_c.eps, "distance clustering tolerance");
  add_common(qp_cmd, qp_c, true);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build_cmd) {
      GroupPtr grp = build_group(build_surface);
      GeodesicCover cover =
          grp->is_modular() ? modular_cover_paper() : build_cover_genus(grp->genus());
      run.emit(build_c, dump_json(cover_to_json(cover)));
      auto& s = run.summary(build_c);
      s << "size " << cover.gamma0.size() << "\n";
      if (cover.bound_used)
        s << "normsq_cap " << format_double(cover.bound_used->normsq_cap) << "\n";
      else
        s << "bound_used none\n";
      return 0;
    }

    if (*verify_cmd) {
      GeodesicCover cover = cover_from_json(Json::parse(read_file(verify_file)));
      VerifyOptions opts;
      if (verify_inflate) opts.inflate = *verify_inflate;
      if (verify_boundary) opts.boundary_fraction = *verify_boundary;
      opts.threads = verify_c.thread_count();
      const double tol = verify_tol ? *verify_tol : kVerifyTolerance;
      if (verify_samples == 0) err << "warning: no samples requested, report is empty\n";
      VerifyReport rep = verify_cover(cover, verify_samples, verify_c.seed, opts);
      Json j = verify_report_to_json(rep, cover, verify_c.seed, tol);
      Json ov = override_json({{"inflate", verify_inflate},
                               {"boundary_fraction", verify_boundary},
                               {"tol", verify_tol}});
      if (!ov.empty()) j["overrides"] = ov;
      const bool ok = rep.max_abs_gap <= tol;
      if (!verify_c.out_path.empty()) write_file(verify_c.out_path, dump_json(j));
      out << "samples " << rep.samples << "\n";
      out << "max_abs_gap " << format_double(rep.max_abs_gap) << "\n";
      out << (ok ? "verified" : "FAILED") << "\n";
      if (!ok && rep.worst_pair) {
        out << "worst_pair p=" << point_text(rep.worst_pair->p) << " q=" << point_text(rep.worst_pair->q)
            << "\n";
        out << "cover_distance " << format_double(rep.worst_cover_distance) << "\n";
        out << "oracle_distance " << format_double(rep.worst_oracle_distance) << "\n";
      }
      return ok ? 0 : 1;
    }

    if (*dist_cmd) {
      GroupPtr grp = build_group(dist_surface);
      GeodesicCover cover = resolve_cover(*grp, dist_cover);
      const UhpPoint p = reduce_to_fundamental(parse_point(dist_p), *grp).point;
      const UhpPoint q = reduce_to_fundamental(parse_point(dist_q), *grp).point;
      CoverDistance cd = surface_distance_detail(p, q, cover);
      std::ostringstream s;
      s << "p " << point_text(p) << "\n" << "q " << point_text(q) << "\n";
      s << "distance " << format_double(cd.distance) << "\n";
      const Isometry& g = cover.gamma0.at(cd.argmins.front());
      s << "argmin " << isometry_to_json(g).dump() << "\n";
      run.emit(dist_c, s.str());
      return 0;
    }

    if (*an_cmd) {
      PointSet P = point_set_from_json(Json::parse(read_file(an_points)));
      std::optional<GeodesicCover> cover;
      if (P.surface.kind != SurfaceKind::Plane) cover = resolve_cover(*P.surface.group, an_cover);
      DistanceStats st =
          distance_stats(P, cover ? &*cover : nullptr, an_c.eps_eq(), an_c.thread_count());
      const auto ov = override_lines({{"eps_eq", an_c.eps}});
      if (an_c.format == "json") {
        Json j = stats_to_json(st);
        if (an_c.eps) j["overrides"] = override_json({{"eps_eq", an_c.eps}});
        run.emit(an_c, dump_json(j));
      } else {
        CsvTable t = stats_csv(st);
        t.comments.insert(t.comments.end(), ov.begin(), ov.end());
        run.emit(an_c, to_csv(t));
      }
      return 0;
    }

    if (*lat_cmd) {
      GroupPtr grp = build_group(lat_surface);
      const double r0 = std::sqrt(2.0);
      if (!(lat_rmax >= r0)) throw PreconditionError("--rmax must be at least sqrt(2)");
      std::vector<double> Rs;
      for (std::size_t k = 0; k <= lat_steps; ++k)
        Rs.push_back(lat_steps == 0 ? lat_rmax
                                    : r0 + static_cast<double>(k) * (lat_rmax - r0) /
                                               static_cast<double>(lat_steps));
      auto rows = lattice_count_table(*grp, Rs);
      if (lat_c.format == "json") {
        Json j;
        j["surface"] = grp->label();
        Json arr = Json::array();
        for (const auto& r : rows) {
          Json e;
          e["R"] = r.R;
          e["N"] = r.count;
          e["ratio"] = r.ratio;
          arr.push_back(e);
        }
        j["rows"] = arr;
        run.emit(lat_c, dump_json(j));
      } else {
        run.emit(lat_c, to_csv(lattice_csv(rows)));
      }
      return 0;
    }

    if (*eq_cmd) {
      GroupPtr grp = build_regular_genus(eq_genus);
      const double r = eq_r ? *eq_r : grp->polygon_data().edge_radius;
      EquilateralReport rep = equilateral_greedy(eq_genus, r, eq_attempts, eq_c.seed);
      if (eq_c.format == "json")
        run.emit(eq_c, dump_json(equilateral_to_json(rep)));
      else
        run.emit(eq_c, to_csv(equilateral_csv(rep)));
      return 0;
    }

    if (*pts_cmd) {
      Surface surf = Surface::parse(pts_surface);
      PointKind kind = pts_kind == "area"          ? PointKind::AreaUniform
                       : pts_kind == "progression" ? PointKind::GeodesicProgression
                                                   : PointKind::OrbitSample;
      GenerateOptions opts;
      if (pts_spacing) opts.spacing = *pts_spacing;
      PointSet P = generate_points(kind, surf, pts_count, pts_c.seed, opts);
      run.emit(pts_c, dump_json(point_set_to_json(P)));
      return 0;
    }

    if (*qp_cmd) {
      GroupPtr grp = build_group(qp_surface);
      GeodesicCover cover = resolve_cover(*grp, qp_cover);
      auto rows = qp_scaling_experiment(cover, qp_ns, qp_c.seed, qp_c.eps_eq(), qp_c.thread_count());
      if (qp_c.format == "json") {
        Json j;
        j["surface"] = grp->label();
        j["seed"] = qp_c.seed;
        if (qp_c.eps) j["overrides"] = override_json({{"eps_eq", qp_c.eps}});
        Json arr = Json::array();
        for (const auto& r : rows) {
          Json e;
          e["N"] = r.n;
          e["Q"] = r.quadruples;
          e["ratio"] = r.ratio;
          e["m"] = r.m;
          e["cs_lower_bound"] = r.cs_lower_bound;
          e["m_half_eps"] = r.m_half;
          e["stable"] = r.stable;
          arr.push_back(e);
        }
        j["rows"] = arr;
        run.emit(qp_c, dump_json(j));
      } else {
        CsvTable t = qp_csv(rows);
        const auto ov = override_lines({{"eps_eq", qp_c.eps}});
        t.comments.insert(t.comments.end(), ov.begin(), ov.end());
        run.emit(qp_c, to_csv(t));
      }
      return 0;
    }
  } catch (const nlohmann::json::exception& e) {
    err << "error: invalid JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace geocover
