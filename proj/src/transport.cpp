#include "pbound/transport.hpp"

#include "pbound/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pbound::vacf {

namespace {

// Trapezoid over the grid up to `cutoff`, with a linear partial cell when
// the cutoff falls between samples.
double integrate_to(const std::vector<double>& lags, const std::vector<double>& vals,
                    double cutoff) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < lags.size(); ++i) {
        const double t0 = lags[i], t1 = lags[i + 1];
        if (t1 <= cutoff) {
            acc += 0.5 * (vals[i] + vals[i + 1]) * (t1 - t0);
        } else {
            if (cutoff > t0) {
                const double f = (cutoff - t0) / (t1 - t0);
                const double v_cut = vals[i] + f * (vals[i + 1] - vals[i]);
                acc += 0.5 * (vals[i] + v_cut) * (cutoff - t0);
            }
            break;
        }
    }
    return acc;
}

double d_plus_curve(const std::vector<double>& lags, const std::vector<double>& vals,
                    double t_v) {
    if (t_v == kNoZeroCrossing) return integrate_to(lags, vals, lags.back());
    return integrate_to(lags, vals, t_v);
}

double slope_max_curve(const std::vector<double>& lags, const std::vector<double>& vals,
                       double t_v) {
    const double limit = (t_v == kNoZeroCrossing) ? lags.back() : t_v;
    double s_max = 0.0;
    for (std::size_t i = 0; i + 1 < lags.size() && lags[i] < limit; ++i) {
        const double s = std::abs(vals[i + 1] - vals[i]) / (lags[i + 1] - lags[i]);
        if (s > s_max) s_max = s;
    }
    return s_max;
}

ValueWithError with_group_error(double pooled, const std::vector<double>& group_vals) {
    ValueWithError out{pooled, 0.0};
    const std::size_t g = group_vals.size();
    if (g >= 2) {
        double mean = 0.0;
        for (double x : group_vals) mean += x;
        mean /= double(g);
        double var = 0.0;
        for (double x : group_vals) var += (x - mean) * (x - mean);
        var /= double(g - 1);
        out.error = std::sqrt(var / double(g));
    }
    return out;
}

} // namespace

GreenKubo green_kubo_D(const Vacf& v, double cutoff) {
    if (cutoff > v.lags.back() + 1e-12 * std::max(1.0, v.lags.back()))
        throw ValidationError("green_kubo_D: cutoff exceeds the lag window");
    GreenKubo gk;
    gk.cutoff = std::min(cutoff, v.lags.back());
    gk.running.resize(v.lags.size(), 0.0);
    for (std::size_t i = 1; i < v.lags.size(); ++i)
        gk.running[i] = gk.running[i - 1] +
                        0.5 * (v.values[i] + v.values[i - 1]) * (v.lags[i] - v.lags[i - 1]);
    gk.value = integrate_to(v.lags, v.values, gk.cutoff);
    bool conv = false;
    default_gk_cutoff(v, conv);
    gk.plateau_converged = conv;
    return gk;
}

double default_gk_cutoff(const Vacf& v, bool& converged) {
    std::vector<double> running(v.lags.size(), 0.0);
    for (std::size_t i = 1; i < v.lags.size(); ++i)
        running[i] = running[i - 1] +
                     0.5 * (v.values[i] + v.values[i - 1]) * (v.lags[i] - v.lags[i - 1]);

    const double abs_floor = 1e-300;
    for (std::size_t c = 10; c < v.lags.size(); ++c) {
        const std::size_t lo = c / 10;
        const double ref = running[c];
        const double scale = std::max(std::abs(ref), abs_floor);
        double dev = 0.0;
        for (std::size_t i = lo; i <= c; ++i)
            dev = std::max(dev, std::abs(running[i] - ref));
        if (dev <= 0.005 * scale || dev == 0.0) {
            converged = true;
            return v.lags[c];
        }
    }
    converged = false;
    return v.lags.back();
}

double d_plus(const Vacf& v) { return d_plus_curve(v.lags, v.values, first_zero(v)); }

double triangle_bound(const Vacf& v) {
    const double s_max = slope_max_curve(v.lags, v.values, first_zero(v));
    if (s_max <= 0.0)
        throw ValidationError("triangle_bound: measured slope is zero (constant G_v)");
    return v.g0 * v.g0 / (2.0 * s_max);
}

TransportEstimate transport_estimate(const Vacf& v, double gk_cutoff) {
    TransportEstimate est;
    est.t_v = first_zero(v);

    bool conv = false;
    const double auto_cutoff = default_gk_cutoff(v, conv);
    const double cutoff = (gk_cutoff > 0.0) ? gk_cutoff : auto_cutoff;
    est.gk_cutoff = cutoff;
    est.plateau_converged = conv;

    const double d_pooled = integrate_to(v.lags, v.values, cutoff);
    const double dp_pooled = d_plus_curve(v.lags, v.values, est.t_v);
    est.slope_max = slope_max_curve(v.lags, v.values, est.t_v);
    if (est.slope_max <= 0.0)
        throw ValidationError("transport_estimate: measured slope is zero (constant G_v)");
    const double tri_pooled = v.g0 * v.g0 / (2.0 * est.slope_max);

    // Group estimates share the pooled t_v and cutoff so the spread
    // reflects sampling noise, not zero-crossing jitter.
    std::vector<double> d_g, dp_g, tri_g;
    for (const auto& gv : v.group_values) {
        d_g.push_back(integrate_to(v.lags, gv, cutoff));
        dp_g.push_back(d_plus_curve(v.lags, gv, est.t_v));
        const double s = slope_max_curve(v.lags, gv, est.t_v);
        if (s > 0.0) tri_g.push_back(gv[0] * gv[0] / (2.0 * s));
    }
    est.D = with_group_error(d_pooled, d_g);
    est.D_plus = with_group_error(dp_pooled, dp_g);
    est.triangle = with_group_error(tri_pooled, tri_g);
    return est;
}

} // namespace pbound::vacf
