#include "qbrach/detail/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace qbrach::detail {

double golden_max(const std::function<double(double)>& f, double a, double b, double width) {
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > width) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

namespace {

// Bisects the threshold crossing between t_in (f >= thr) and t_out (f < thr).
double cross_point(const std::function<double(double)>& f, double thr, double t_in, double t_out) {
    for (int i = 0; i < 60 && std::abs(t_out - t_in) > 1e-13; ++i) {
        const double mid = 0.5 * (t_in + t_out);
        if (f(mid) >= thr) t_in = mid;
        else t_out = mid;
    }
    return 0.5 * (t_in + t_out);
}

// An arrival peak sits on a plateau at double precision (1 - O(dt^2) is
// unresolvable near 1), so the peak location is recovered as the midpoint of
// the two threshold crossings, which sit on steep, well-resolved slopes.
double snap_to_crossing_midpoint(const std::function<double(double)>& f, double thr, double t_peak,
                                 double step, double lo, double hi) {
    double left = t_peak;
    double right = t_peak;
    bool have_left = false;
    bool have_right = false;
    for (int k = 1; k <= 64; ++k) {
        const double t = t_peak - k * step;
        if (t <= lo) break;
        if (f(t) < thr) {
            left = cross_point(f, thr, t_peak - (k - 1) * step, t);
            have_left = true;
            break;
        }
    }
    for (int k = 1; k <= 64; ++k) {
        const double t = t_peak + k * step;
        if (t >= hi) break;
        if (f(t) < thr) {
            right = cross_point(f, thr, t_peak + (k - 1) * step, t);
            have_right = true;
            break;
        }
    }
    if (have_left && have_right) return 0.5 * (left + right);
    return t_peak;
}

}  // namespace

ScanOutcome scan_first_arrival(const std::function<double(double)>& fidelity, double t_hi,
                               const ScanParams& params) {
    const int n = params.grid_points;
    const double dt = t_hi / n;
    std::vector<double> f(n + 1);
    for (int i = 0; i <= n; ++i) f[i] = fidelity(i * dt);

    ScanOutcome out;
    out.peak_fidelity = -1.0;
    for (int i = 1; i <= n; ++i) {
        if (f[i] >= params.relax_threshold) {
            out.relaxed = true;
            out.relaxed_time = i * dt;
            break;
        }
    }

    auto refine = [&](double lo, double hi) {
        double t = golden_max(fidelity, std::max(lo, 0.0), std::min(hi, t_hi), params.refine_width);
        double ft = fidelity(t);
        if (ft >= params.reach_threshold) {
            t = snap_to_crossing_midpoint(fidelity, params.reach_threshold, t, dt, 0.0, t_hi);
            ft = fidelity(t);
        }
        if (ft > out.peak_fidelity) {
            out.peak_fidelity = ft;
            out.peak_time = t;
        }
        if (!out.reached && ft >= params.reach_threshold) {
            out.reached = true;
            out.time = t;
        }
    };

    for (int i = 1; i < n && !out.reached; ++i) {
        // Interior local maxima only; exact plateaus (constant fidelity,
        // e.g. precession about the state's own axis) are not peaks.
        if (f[i] >= f[i - 1] && f[i] >= f[i + 1] && (f[i] > f[i - 1] || f[i] > f[i + 1])) {
            refine((i - 1) * dt, (i + 1) * dt);
        }
    }
    if (!out.reached && f[n] > f[n - 1]) refine((n - 1) * dt, t_hi);

    if (out.peak_fidelity < 0.0) {
        // No structure found (monotone or flat fidelity): report the best grid value.
        const auto it = std::max_element(f.begin(), f.end());
        out.peak_fidelity = *it;
        out.peak_time = static_cast<double>(it - f.begin()) * dt;
    }
    return out;
}

std::optional<double> first_arrival(const std::function<double(double)>& fidelity, double t_hi,
                                    const ScanParams& params) {
    const ScanOutcome out = scan_first_arrival(fidelity, t_hi, params);
    if (!out.reached) return std::nullopt;
    return out.time;
}

void parallel_for(int n, const std::function<void(int)>& body) {
    if (n <= 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const int workers = static_cast<int>(std::min<unsigned>(hw, 16));
    if (workers <= 1 || n < 4) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace qbrach::detail
