#pragma once

#include <string>
#include <vector>

#include "specgap/eigensolve.hpp"

namespace specgap::spectral {

struct ScheduleStep {
  double h = 0.12;
  double eps = 0.05;
  double Y = 8.0;
};

/// Refinement ladder: each step halves h and eps and doubles Y.
std::vector<ScheduleStep> default_schedule(double h0 = 0.12, double eps0 = 0.05, double Y0 = 8.0,
                                           int steps = 3);

struct ClassifierConfig {
  double stability_tol = 5e-3;      // absolute eigenvalue agreement across steps
  double boundary_mass_tol = 0.10;  // max fraction of mass near truncation edges
  double band_width = 0.36;         // hyperbolic width of the band, ~3 base mesh widths
  double kappa_margin = 1.3;        // resolve the spectrum up to kappa * margin
  int max_eigenpairs = 48;
};

enum class EigTag { genuine, spurious, unresolved };

const char* to_string(EigTag tag);

// Discrete eigenvalues below kappa with a truncation-stability classification.
// An eigenvalue is genuine when it agrees across the two finest schedule steps
// and its eigenfunction carries little mass near the artificial truncation
// edges; eigenvalues concentrated at the cuts are truncation artifacts.
struct SpectrumReport {
  struct Entry {
    double lambda = 0.0;
    EigTag tag = EigTag::unresolved;
    double residual = 0.0;             // solver residual at the finest step
    double boundary_mass = 0.0;        // band mass fraction
    double prev_lambda = 0.0;          // matched value on the previous step
    bool matched = false;
    double swap_delta = 0.0;           // |lambda - lambda'| under Dirichlet-swapped cuts
    bool swap_matched = false;
  };

  std::string domain_name;
  double kappa = 0.25;
  std::vector<Entry> eigenvalues;  // ascending, lambda < kappa at finest step
  int genuine_count = 0;
  bool all_unresolved = false;
  std::vector<ScheduleStep> schedule;
  std::vector<int> mesh_vertices;              // per step
  std::vector<std::vector<double>> step_values;  // raw eigenvalues per step (below kappa*margin)
};

/// Run the schedule on `domain` (its truncation is overridden per step) and
/// classify everything below kappa. Truncation edges carry Neumann conditions;
/// the Dirichlet-swapped solve at the finest step is recorded per eigenvalue
/// as a diagnostic.
SpectrumReport spectrum_below(const HyperbolicDomain& domain, double kappa,
                              const std::vector<ScheduleStep>& schedule,
                              const ClassifierConfig& config = {});

/// Eigenfunction values on mesh vertices for export: the finest-step solve,
/// one column per eigenvalue entry of the report.
struct EigenfunctionSet {
  Mesh mesh;
  std::vector<double> lambdas;
  Eigen::MatrixXd vertex_values;  // full mesh vertices x eigenfunctions
};

EigenfunctionSet eigenfunctions_below(const HyperbolicDomain& domain, double kappa,
                                      const ScheduleStep& step, const ClassifierConfig& config = {});

}  // namespace specgap::spectral
