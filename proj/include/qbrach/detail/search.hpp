#pragma once

#include <functional>
#include <optional>

namespace qbrach::detail {

/// First-arrival scans: fidelity is sampled on a dense grid, every interior
/// local maximum is sharpened by golden-section, and the earliest peak that
/// clears the threshold is the arrival. Defaults follow the library-wide
/// convention: 10^4 grid points, "reached" means fidelity >= 1 - 1e-9.
struct ScanParams {
    int grid_points = 10000;
    double reach_threshold = 1.0 - 1e-9;
    double relax_threshold = 0.999;
    double refine_width = 1e-12;
};

struct ScanOutcome {
    bool reached = false;
    double time = 0.0;           // arrival time when reached
    double peak_fidelity = 0.0;  // best refined peak seen over the scan
    double peak_time = 0.0;      // where that best peak sits
    bool relaxed = false;        // fidelity ever crossed relax_threshold
    double relaxed_time = 0.0;   // first grid crossing; coarse, for ranking only
};

/// Argmax of f on [a, b] by golden-section, to bracket width `width`.
double golden_max(const std::function<double(double)>& f, double a, double b, double width);

/// Scan f over (0, t_hi]. f must be smooth with O(grid/100) oscillations so
/// the grid cannot step over a peak.
ScanOutcome scan_first_arrival(const std::function<double(double)>& fidelity, double t_hi,
                               const ScanParams& params = {});

/// Convenience wrapper: arrival time or nothing.
std::optional<double> first_arrival(const std::function<double(double)>& fidelity, double t_hi,
                                    const ScanParams& params = {});

/// Runs body(i) for i in [0, n) on a small thread pool. Each index must
/// write only its own slot; iteration order is unspecified.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace qbrach::detail
