#pragma once

#include <iosfwd>
#include <string>

#include "specgap/dimension.hpp"
#include "specgap/gap.hpp"
#include "specgap/packing.hpp"
#include "specgap/spectrum.hpp"

// File outputs: CSV for bulk data, SVG for renderings, JSON for reports.
// All writers are deterministic; JSON carries a single "generated_at" field
// that is the only run-to-run difference.

namespace specgap::io {

void write_circles_csv(std::ostream& os, const std::vector<geom::InversiveCircle>& circles);
void write_circles_csv(std::ostream& os,
                       const std::vector<geom::InversiveCircleT<std::int64_t>>& circles);

/// Packing rendering; includes the bounding circle of the root.
void write_packing_svg(std::ostream& os, const packing::CirclesQuadrupleT<double>& root,
                       const std::vector<geom::InversiveCircle>& circles, int size_px = 1000);

void write_count_profile_csv(std::ostream& os, const packing::CountProfile& profile);

void write_points_csv(std::ostream& os, const dimension::LimitSetSample& sample);

std::string spectrum_report_json(const spectral::SpectrumReport& report, bool with_timestamp = true);
std::string gap_report_json(const gap::GapReport& report, bool with_timestamp = true);
std::string growth_fit_json(const packing::GrowthFit& fit, const packing::CountProfile& profile,
                            bool with_timestamp = true);

void write_eigenfunctions_csv(std::ostream& os, const spectral::EigenfunctionSet& efs);

/// Plain-text summary table of a gap report (one line per check).
std::string gap_report_table(const gap::GapReport& report);

}  // namespace specgap::io
