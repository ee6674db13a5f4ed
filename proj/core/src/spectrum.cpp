#include "specgap/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specgap::spectral {

std::vector<ScheduleStep> default_schedule(double h0, double eps0, double Y0, int steps) {
  std::vector<ScheduleStep> s;
  double h = h0, eps = eps0, Y = Y0;
  for (int i = 0; i < steps; ++i) {
    s.push_back({h, eps, Y});
    h *= 0.5;
    eps *= 0.5;
    Y *= 2.0;
  }
  return s;
}

const char* to_string(EigTag tag) {
  switch (tag) {
    case EigTag::genuine: return "genuine";
    case EigTag::spurious: return "spurious";
    default: return "unresolved";
  }
}

namespace {

struct StepSolve {
  Mesh mesh;
  AssembledSystem sys;
  EigenSolveResult eig;
};

// Solve enough of the low spectrum to see everything below `resolve_to`.
EigenSolveResult solve_low_spectrum(const AssembledSystem& sys, double resolve_to, int max_pairs) {
  int k = std::min(10, sys.size());
  while (true) {
    EigenSolveResult res = solve_lowest(sys, k);
    if (res.values.back() > resolve_to || k >= std::min(max_pairs, sys.size())) return res;
    k = std::min({2 * k, max_pairs, sys.size()});
  }
}

// One schedule step. Funnel floors get the matched (transparent) condition:
// the exponent starts from `s0` and is updated from the smallest computed
// eigenvalue until self-consistent.
StepSolve run_step(const HyperbolicDomain& domain, const ScheduleStep& step, double resolve_to,
                   int max_pairs, double& s0) {
  StepSolve out;
  out.mesh = build_mesh(domain.with_truncation(step.eps, step.Y), step.h);
  if (!has_funnel_floor(out.mesh)) {
    out.sys = assemble(out.mesh, TruncationTreatment::neumann());
    out.eig = solve_low_spectrum(out.sys, resolve_to, max_pairs);
    return out;
  }
  for (int pass = 0; pass < 6; ++pass) {
    out.sys = assemble(out.mesh, TruncationTreatment::matched(s0));
    out.eig = solve_low_spectrum(out.sys, resolve_to, max_pairs);
    const double lam = out.eig.values.front();
    // engage only when a candidate sits at or just above the threshold; a
    // slightly mismatched exponent can push a near-threshold mode above 1/4,
    // so the window reaches a little past it
    if (!(lam > 0.0) || !(lam < 0.26)) break;
    const double next = 0.5 + std::sqrt(std::max(0.0, 0.25 - lam));
    if (std::abs(next - s0) < 1e-5) break;
    s0 = pass == 0 ? next : 0.5 * (s0 + next);  // damp to avoid oscillation
  }
  return out;
}

std::vector<double> values_below(const EigenSolveResult& eig, double cut) {
  std::vector<double> v;
  for (double lam : eig.values)
    if (lam < cut) v.push_back(lam);
  return v;
}

// nearest value in a sorted list, or nullopt-ish
bool nearest(const std::vector<double>& xs, double target, double& out) {
  if (xs.empty()) return false;
  auto it = std::lower_bound(xs.begin(), xs.end(), target);
  double best = std::numeric_limits<double>::infinity();
  for (auto cand : {it, it == xs.begin() ? it : std::prev(it)}) {
    if (cand != xs.end() && std::abs(*cand - target) < std::abs(best - target)) best = *cand;
  }
  if (!std::isfinite(best)) return false;
  out = best;
  return true;
}

}  // namespace

SpectrumReport spectrum_below(const HyperbolicDomain& domain, double kappa,
                              const std::vector<ScheduleStep>& schedule,
                              const ClassifierConfig& config) {
  if (schedule.size() < 2)
    throw std::invalid_argument("spectrum_below: schedule needs at least two steps");
  const double resolve_to = kappa * config.kappa_margin;

  SpectrumReport report;
  report.domain_name = domain.name;
  report.kappa = kappa;
  report.schedule = schedule;

  std::vector<std::vector<double>> per_step;
  StepSolve finest;
  double s0 = 0.75;  // matched-floor exponent, carried across steps
  for (std::size_t si = 0; si < schedule.size(); ++si) {
    StepSolve s = run_step(domain, schedule[si], resolve_to, config.max_eigenpairs, s0);
    report.mesh_vertices.push_back(static_cast<int>(s.mesh.vertices.size()));
    per_step.push_back(values_below(s.eig, resolve_to));
    if (si + 1 == schedule.size()) finest = std::move(s);
  }
  report.step_values = per_step;

  // Dirichlet-swapped truncation at the finest step (diagnostic)
  std::vector<double> swapped;
  {
    AssembledSystem swap_sys = assemble(finest.mesh, TruncationTreatment::dirichlet());
    if (swap_sys.size() > 0) {
      EigenSolveResult swap_eig =
          solve_low_spectrum(swap_sys, resolve_to, config.max_eigenpairs);
      swapped = values_below(swap_eig, resolve_to);
    }
  }

  const std::vector<double>& prev = per_step[per_step.size() - 2];
  const double eps_f = schedule.back().eps, Y_f = schedule.back().Y;
  const double band_lo = eps_f * std::exp(config.band_width);
  const double band_hi = Y_f * std::exp(-config.band_width);

  int genuine = 0;
  bool any_stable = false;
  for (std::size_t i = 0; i < finest.eig.values.size(); ++i) {
    const double lam = finest.eig.values[i];
    if (lam >= kappa) continue;
    SpectrumReport::Entry e;
    e.lambda = lam;
    e.residual = finest.eig.residuals[i];

    e.matched = nearest(prev, lam, e.prev_lambda);
    const bool stable = e.matched && std::abs(e.prev_lambda - lam) < config.stability_tol;
    if (stable) any_stable = true;

    const Eigen::VectorXd u = finest.sys.to_full(finest.eig.vectors.col(static_cast<int>(i)));
    const double total = weighted_mass(finest.mesh, u, [](double, double) { return true; });
    const double band = weighted_mass(finest.mesh, u, [&](double, double y) {
      return y <= band_lo || y >= band_hi;
    });
    e.boundary_mass = total > 0.0 ? band / total : 1.0;
    const bool interior = e.boundary_mass < config.boundary_mass_tol;

    double swap_lam;
    e.swap_matched = nearest(swapped, lam, swap_lam);
    e.swap_delta = e.swap_matched ? std::abs(swap_lam - lam) : std::numeric_limits<double>::quiet_NaN();

    if (stable && interior)
      e.tag = EigTag::genuine;
    else if (!interior)
      e.tag = EigTag::spurious;
    else
      e.tag = EigTag::unresolved;
    if (e.tag == EigTag::genuine) ++genuine;
    report.eigenvalues.push_back(e);
  }

  if (!any_stable && !report.eigenvalues.empty()) {
    // schedule disagreement across the board: nothing is trustworthy
    for (auto& e : report.eigenvalues) e.tag = EigTag::unresolved;
    report.genuine_count = 0;
    report.all_unresolved = true;
    return report;
  }

  report.genuine_count = genuine;
  return report;
}

EigenfunctionSet eigenfunctions_below(const HyperbolicDomain& domain, double kappa,
                                      const ScheduleStep& step, const ClassifierConfig& config) {
  EigenfunctionSet out;
  double s0 = 0.75;
  StepSolve s = run_step(domain, step, kappa * config.kappa_margin, config.max_eigenpairs, s0);
  out.mesh = std::move(s.mesh);
  std::vector<int> keep;
  for (std::size_t i = 0; i < s.eig.values.size(); ++i)
    if (s.eig.values[i] < kappa) keep.push_back(static_cast<int>(i));
  out.vertex_values.resize(static_cast<int>(out.mesh.vertices.size()), static_cast<int>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    out.lambdas.push_back(s.eig.values[static_cast<std::size_t>(keep[c])]);
    out.vertex_values.col(static_cast<int>(c)) = s.sys.to_full(s.eig.vectors.col(keep[c]));
  }
  return out;
}

}  // namespace specgap::spectral
