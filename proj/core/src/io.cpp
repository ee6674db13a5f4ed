#include "specgap/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace specgap::io {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

ordered_json spectrum_to_json(const spectral::SpectrumReport& r) {
  ordered_json j;
  j["domain"] = r.domain_name;
  j["kappa"] = r.kappa;
  j["genuine_count"] = r.genuine_count;
  j["all_unresolved"] = r.all_unresolved;
  ordered_json evs = ordered_json::array();
  for (const auto& e : r.eigenvalues) {
    ordered_json je;
    je["lambda"] = e.lambda;
    je["tag"] = spectral::to_string(e.tag);
    je["residual"] = e.residual;
    je["boundary_mass"] = e.boundary_mass;
    je["matched_prev"] = e.matched;
    if (e.matched) je["prev_lambda"] = e.prev_lambda;
    if (e.swap_matched && std::isfinite(e.swap_delta)) je["swap_delta"] = e.swap_delta;
    evs.push_back(je);
  }
  j["eigenvalues"] = evs;
  ordered_json sched = ordered_json::array();
  for (const auto& s : r.schedule) sched.push_back({{"h", s.h}, {"eps", s.eps}, {"Y", s.Y}});
  j["schedule"] = sched;
  j["mesh_vertices"] = r.mesh_vertices;
  ordered_json steps = ordered_json::array();
  for (const auto& sv : r.step_values) steps.push_back(sv);
  j["step_values"] = steps;
  return j;
}

}  // namespace

void write_circles_csv(std::ostream& os, const std::vector<geom::InversiveCircle>& circles) {
  os << "curv,cocurv,cx,cy\n";
  os << std::setprecision(17);
  for (const auto& c : circles)
    os << c.curv << ',' << c.cocurv << ',' << c.cx << ',' << c.cy << '\n';
}

void write_circles_csv(std::ostream& os,
                       const std::vector<geom::InversiveCircleT<std::int64_t>>& circles) {
  os << "curv,cocurv,cx,cy\n";
  for (const auto& c : circles)
    os << c.curv << ',' << c.cocurv << ',' << c.cx << ',' << c.cy << '\n';
}

void write_packing_svg(std::ostream& os, const packing::CirclesQuadrupleT<double>& root,
                       const std::vector<geom::InversiveCircle>& circles, int size_px) {
  // view box around the bounding circle of the root
  double bx = 0.0, by = 0.0, br = 1.0;
  for (const auto& c : root) {
    if (c.curv < 0.0) {
      const auto ctr = geom::center_of(c);
      bx = ctr.x;
      by = ctr.y;
      br = geom::radius_of(c);
    }
  }
  const double margin = 1.04 * br;
  const double scale = size_px / (2.0 * margin);
  auto X = [&](double x) { return (x - bx + margin) * scale; };
  auto Y = [&](double y) { return (margin - (y - by)) * scale; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_px << "\" height=\"" << size_px
     << "\">\n";
  os << std::setprecision(10);
  os << "<circle cx=\"" << X(bx) << "\" cy=\"" << Y(by) << "\" r=\"" << br * scale
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (const auto& c : circles) {
    if (!(c.curv > 0.0)) continue;
    const auto ctr = geom::center_of(c);
    os << "<circle cx=\"" << X(ctr.x) << "\" cy=\"" << Y(ctr.y) << "\" r=\""
       << geom::radius_of(c) * scale << "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
  }
  os << "</svg>\n";
}

void write_count_profile_csv(std::ostream& os, const packing::CountProfile& profile) {
  os << "T,N\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < profile.thresholds.size(); ++i)
    os << profile.thresholds[i] << ',' << profile.counts[i] << '\n';
}

void write_points_csv(std::ostream& os, const dimension::LimitSetSample& sample) {
  os << (sample.ambient_dim == 2 ? "x,y\n" : "x\n");
  os << std::setprecision(17);
  for (const auto& p : sample.points) {
    if (sample.ambient_dim == 2)
      os << p.x << ',' << p.y << '\n';
    else
      os << p.x << '\n';
  }
}

std::string spectrum_report_json(const spectral::SpectrumReport& report, bool with_timestamp) {
  ordered_json j = spectrum_to_json(report);
  if (with_timestamp) j["generated_at"] = timestamp_now();
  return j.dump(2);
}

std::string gap_report_json(const gap::GapReport& report, bool with_timestamp) {
  ordered_json j;
  j["case"] = report.case_id;
  ordered_json deltas = ordered_json::array();
  for (const auto& d : report.delta_estimates)
    deltas.push_back({{"method", d.method}, {"value", d.value}, {"stderr", d.stderr}});
  j["delta_estimates"] = deltas;
  if (std::isfinite(report.lambda0_fem)) j["lambda0"] = report.lambda0_fem;
  if (std::isfinite(report.identity_residual)) j["identity_residual"] = report.identity_residual;
  if (!report.genuine_counts.empty()) {
    ordered_json counts;
    for (const auto& [name, cnt] : report.genuine_counts) counts[name] = cnt;
    j["genuine_counts"] = counts;
  }
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json jc;
    jc["name"] = c.name;
    jc["pass"] = c.pass;
    jc["value"] = c.value;
    if (!c.detail.empty()) jc["detail"] = c.detail;
    checks.push_back(jc);
  }
  j["checks"] = checks;
  j["all_pass"] = report.all_pass;
  j["any_unresolved"] = report.any_unresolved;
  j["notes"] = report.notes;
  if (report.spec_whole) j["spectrum_whole"] = spectrum_to_json(*report.spec_whole);
  if (report.spec_piece1) j["spectrum_piece1"] = spectrum_to_json(*report.spec_piece1);
  if (report.spec_piece2) j["spectrum_piece2"] = spectrum_to_json(*report.spec_piece2);
  if (with_timestamp) j["generated_at"] = timestamp_now();
  return j.dump(2);
}

std::string growth_fit_json(const packing::GrowthFit& fit, const packing::CountProfile& profile,
                            bool with_timestamp) {
  ordered_json j;
  j["delta_hat"] = fit.delta_hat;
  j["stderr"] = fit.stderr;
  j["points_used"] = fit.points_used;
  j["root"] = profile.root.k;
  j["max_threshold"] = profile.thresholds.empty() ? 0.0 : profile.thresholds.back();
  j["max_count"] = profile.counts.empty() ? 0 : profile.counts.back();
  if (with_timestamp) j["generated_at"] = timestamp_now();
  return j.dump(2);
}

void write_eigenfunctions_csv(std::ostream& os, const spectral::EigenfunctionSet& efs) {
  os << "x,y";
  for (std::size_t i = 0; i < efs.lambdas.size(); ++i) os << ",u" << i;
  os << '\n';
  os << std::setprecision(17);
  os << "# lambdas";
  for (double l : efs.lambdas) os << ' ' << l;
  os << '\n';
  for (std::size_t v = 0; v < efs.mesh.vertices.size(); ++v) {
    os << efs.mesh.vertices[v][0] << ',' << efs.mesh.vertices[v][1];
    for (int c = 0; c < efs.vertex_values.cols(); ++c)
      os << ',' << efs.vertex_values(static_cast<int>(v), c);
    os << '\n';
  }
}

std::string gap_report_table(const gap::GapReport& report) {
  std::ostringstream os;
  os << "case: " << report.case_id << '\n';
  for (const auto& d : report.delta_estimates)
    os << "  delta (" << d.method << "): " << std::setprecision(6) << d.value << " +- " << d.stderr
       << '\n';
  if (std::isfinite(report.lambda0_fem)) os << "  lambda0: " << report.lambda0_fem << '\n';
  for (const auto& [name, cnt] : report.genuine_counts)
    os << "  genuine(" << name << "): " << cnt << '\n';
  os << "  checks:\n";
  for (const auto& c : report.checks) {
    os << "    " << (c.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(26) << c.name
       << " value=" << std::setprecision(6) << c.value;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << '\n';
  }
  os << (report.all_pass ? "  all checks passed" : "  some checks FAILED");
  if (report.any_unresolved) os << "  [unresolved spectra present]";
  os << '\n';
  return os.str();
}

}  // namespace specgap::io
