#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "specgap/dimension.hpp"
#include "specgap/spectrum.hpp"

// Orchestration of the verifiable claims: the two-wall eigenvalue-free bound,
// the Neumann-cut counting inequality, the Hecke gap computation, and the
// consistency of the Apollonian growth exponent with the eigenvalue and
// error-exponent values it determines.

namespace specgap::gap {

/// True when a region of hyperbolic (n+1)-space bounded by m geodesic
/// hyperplanes is guaranteed eigenvalue-free below (n/2)^2 for the Neumann
/// Laplacian: m <= floor((n+4)/2).
bool eigenvalue_free_bound(int n, int m);

/// Counting inequality for a Neumann cut: eigenvalues of the whole domain
/// below kappa are at most the sum over the two pieces. All three reports
/// must have been run at the same kappa.
bool neumann_cut_check(const spectral::SpectrumReport& whole, const spectral::SpectrumReport& piece1,
                       const spectral::SpectrumReport& piece2, double kappa);

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  std::string detail;
};

struct DeltaEstimate {
  std::string method;  // "box-count" | "growth-fit"
  double value = 0.0;
  double stderr = 0.0;
};

struct GapReport {
  std::string case_id;
  std::vector<DeltaEstimate> delta_estimates;
  double lambda0_fem = std::numeric_limits<double>::quiet_NaN();
  double identity_residual = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::pair<std::string, int>> genuine_counts;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;
  bool all_pass = false;
  bool any_unresolved = false;

  std::optional<spectral::SpectrumReport> spec_whole, spec_piece1, spec_piece2;
};

struct HeckeGapConfig {
  double kappa = 0.25;
  std::vector<spectral::ScheduleStep> schedule = spectral::default_schedule();
  spectral::ClassifierConfig classifier;
  int sample_depth = 12;
  int sample_K = 200;
  double sample_diameter_tol = std::pow(0.5, 17);
  int box_scale_lo = 5, box_scale_hi = 13;
  double identity_tol = 0.02;       // |lambda0 - delta(1-delta)|
  double selberg_lo = 0.01, selberg_hi = 0.24;  // window that must stay empty on the cut piece
};

/// Full pipeline for the Hecke domain at parameter mu: spectra of the domain
/// and its two cut pieces at kappa = 1/4, limit-set box dimension, the
/// eigenvalue-dimension identity, and the counting inequality.
GapReport verify_hecke_gap(double mu, const HeckeGapConfig& config = {});

struct ApollonianConfig {
  double tmin_fit = 1e3;
  int thresholds_per_decade = 4;
  double delta_lo = 1.29, delta_hi = 1.32;
  double lambda_lo = 0.89, lambda_hi = 0.92;
  double eta_lo = 1.17, eta_hi = 1.20;
  packing::DescartesQuadruple root = packing::bounded_root();
};

/// Growth-exponent fit of N(T) up to tmax, with the derived eigenvalue
/// delta(2-delta) and error exponent 3*delta/5 + 2/5 checked against their
/// expected windows. Requires tmax >= 1e4.
GapReport apollonian_report(double tmax, const ApollonianConfig& config = {});

}  // namespace specgap::gap
