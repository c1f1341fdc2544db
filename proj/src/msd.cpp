#include "pbound/msd.hpp"

#include "pbound/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pbound::vacf {

namespace {

// Sum over origins of (x[t+k]-x[t])^2, split into square terms (prefix
// sums) and the cross term (autocorrelation).
std::vector<double> raw_sq_displacement(const std::vector<double>& x, int n_lags) {
    const long n = long(x.size());
    std::vector<double> prefix(n + 1, 0.0);
    for (long t = 0; t < n; ++t) prefix[t + 1] = prefix[t] + x[t] * x[t];
    auto corr = autocorrelation_fft(x, n_lags);
    std::vector<double> out(n_lags);
    for (int k = 0; k < n_lags; ++k) {
        const double sq = prefix[n - k] + (prefix[n] - prefix[k]);
        out[k] = sq - 2.0 * corr[k] * double(n - k);
    }
    return out;
}

std::pair<int, int> group_range(int n, int n_groups, int g) {
    const int base = n / n_groups, rem = n % n_groups;
    const int lo = g * base + std::min(g, rem);
    return {lo, lo + base + (g < rem ? 1 : 0)};
}

} // namespace

MsdCurve estimate_msd(const mdsim::Trajectory& traj, double max_lag, int n_groups) {
    if (!traj.has_positions())
        throw ValidationError("estimate_msd: trajectory has no positions");
    if (traj.n_samples() < 3) throw ValidationError("estimate_msd: too few samples");
    const double spacing = traj.times[1] - traj.times[0];
    const double window = traj.times.back() - traj.times.front();
    if (max_lag <= 0.0) max_lag = 0.5 * window;
    if (max_lag > 0.5 * window + 1e-12 * window)
        throw ValidationError("estimate_msd: max_lag exceeds half the production window");
    const int n_lags = int(std::floor(max_lag / spacing + 1e-9)) + 1;
    const long n_samples = traj.n_samples();
    const int n = traj.n_particles, dim = traj.dimension;
    n_groups = std::max(1, std::min(n_groups, n));

    std::vector<std::vector<double>> group_raw(n_groups);
#pragma omp parallel for schedule(dynamic, 1)
    for (int g = 0; g < n_groups; ++g) {
        auto [lo, hi] = group_range(n, n_groups, g);
        std::vector<double> raw(n_lags, 0.0);
        std::vector<double> series(n_samples);
        for (int i = lo; i < hi; ++i)
            for (int c = 0; c < dim; ++c) {
                for (long t = 0; t < n_samples; ++t)
                    series[t] = traj.positions[(std::size_t(t) * n + i) * dim + c];
                auto d2 = raw_sq_displacement(series, n_lags);
                for (int k = 0; k < n_lags; ++k) raw[k] += d2[k];
            }
        group_raw[g] = raw;
    }

    MsdCurve curve;
    curve.lags.resize(n_lags);
    for (int k = 0; k < n_lags; ++k) curve.lags[k] = k * spacing;

    const long n_series_total = long(n) * dim;
    curve.values.assign(n_lags, 0.0);
    for (const auto& g : group_raw)
        for (int k = 0; k < n_lags; ++k) curve.values[k] += g[k];
    for (int k = 0; k < n_lags; ++k)
        curve.values[k] /= double(n_samples - k) * double(n_series_total);

    curve.group_values.resize(n_groups);
    for (int g = 0; g < n_groups; ++g) {
        auto [lo, hi] = group_range(n, n_groups, g);
        const double ns = double(hi - lo) * dim;
        curve.group_values[g].resize(n_lags);
        for (int k = 0; k < n_lags; ++k)
            curve.group_values[g][k] = group_raw[g][k] / (double(n_samples - k) * ns);
    }
    return curve;
}

ValueWithError msd_diffusion(const mdsim::Trajectory& traj, double eval_time,
                             double max_lag, int n_groups) {
    if (!traj.has_positions())
        throw ValidationError("msd_diffusion: trajectory has no positions");
    const double spacing = traj.times[1] - traj.times[0];
    const double window = traj.times.back() - traj.times.front();
    if (max_lag <= 0.0) max_lag = std::min(0.5 * window, eval_time + 10.0 * spacing);
    const MsdCurve curve = estimate_msd(traj, max_lag, n_groups);

    const int idx = int(std::lround(eval_time / spacing));
    if (idx < 1 || idx + 1 >= int(curve.lags.size()))
        throw ValidationError("msd_diffusion: eval_time outside the central-difference grid");

    auto deriv_half = [&](const std::vector<double>& v) {
        return 0.5 * (v[idx + 1] - v[idx - 1]) / (2.0 * spacing);
    };

    ValueWithError out;
    out.value = deriv_half(curve.values);
    const std::size_t g = curve.group_values.size();
    if (g >= 2) {
        double mean = 0.0;
        std::vector<double> per(g);
        for (std::size_t i = 0; i < g; ++i) {
            per[i] = deriv_half(curve.group_values[i]);
            mean += per[i];
        }
        mean /= double(g);
        double var = 0.0;
        for (double x : per) var += (x - mean) * (x - mean);
        var /= double(g - 1);
        out.error = std::sqrt(var / double(g));
    }
    return out;
}

} // namespace pbound::vacf
