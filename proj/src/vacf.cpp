#include "pbound/vacf.hpp"

#include "pbound/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <mutex>

namespace pbound::vacf {

namespace {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// FFTW planning is not thread-safe; plans are created under a lock and
// executed with the new-array interface.
std::mutex fftw_mutex;

struct PlanPair {
    std::size_t m = 0;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    ~PlanPair() {
        std::lock_guard<std::mutex> lk(fftw_mutex);
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
    }

    void ensure(std::size_t m_new, fftw_complex* buf) {
        if (m == m_new) return;
        std::lock_guard<std::mutex> lk(fftw_mutex);
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        m = m_new;
        fwd = fftw_plan_dft_1d(int(m), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(int(m), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
};

// Accumulates sum over series of |FFT(x)|^2; one inverse transform then
// yields the summed raw correlation.
class CorrAccumulator {
public:
    CorrAccumulator(std::size_t n, int n_lags)
        : n_(n), n_lags_(n_lags), m_(next_pow2(2 * n)) {
        buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m_));
        power_.assign(m_, 0.0);
        plans_.ensure(m_, buf_);
    }
    ~CorrAccumulator() { fftw_free(buf_); }

    CorrAccumulator(const CorrAccumulator&) = delete;
    CorrAccumulator& operator=(const CorrAccumulator&) = delete;

    void add_series(const double* x) {
        for (std::size_t t = 0; t < n_; ++t) {
            buf_[t][0] = x[t];
            buf_[t][1] = 0.0;
        }
        std::memset(buf_ + n_, 0, sizeof(fftw_complex) * (m_ - n_));
        fftw_execute_dft(plans_.fwd, buf_, buf_);
        for (std::size_t k = 0; k < m_; ++k)
            power_[k] += buf_[k][0] * buf_[k][0] + buf_[k][1] * buf_[k][1];
        ++n_series_;
    }

    // Raw correlation sums c[k] = sum_series sum_t x[t] x[t+k], k < n_lags.
    std::vector<double> finish() {
        for (std::size_t k = 0; k < m_; ++k) {
            buf_[k][0] = power_[k];
            buf_[k][1] = 0.0;
        }
        fftw_execute_dft(plans_.bwd, buf_, buf_);
        std::vector<double> out(n_lags_);
        for (int k = 0; k < n_lags_; ++k) out[k] = buf_[k][0] / double(m_);
        return out;
    }

    int n_series() const { return n_series_; }

private:
    std::size_t n_;
    int n_lags_;
    std::size_t m_;
    fftw_complex* buf_;
    std::vector<double> power_;
    PlanPair plans_;
    int n_series_ = 0;
};

struct LagPlan {
    int n_lags;     // including lag 0
    long n_samples;
    double spacing;
};

LagPlan plan_lags(const mdsim::Trajectory& traj, double max_lag) {
    if (traj.n_samples() < 2 || traj.velocities.empty())
        throw ValidationError("estimate_vacf: empty trajectory");
    const double spacing = traj.times[1] - traj.times[0];
    const double window = traj.times.back() - traj.times.front();
    if (max_lag > 0.5 * window + 1e-12 * window)
        throw ValidationError("estimate_vacf: max_lag exceeds half the production window (max " +
                              std::to_string(0.5 * window) + ")");
    const int n_lags = int(std::floor(max_lag / spacing + 1e-9)) + 1;
    return {n_lags, traj.n_samples(), spacing};
}

Vacf assemble(const mdsim::Trajectory& traj, const LagPlan& lp,
              std::vector<std::vector<double>> group_raw) {
    Vacf v;
    v.lags.resize(lp.n_lags);
    for (int k = 0; k < lp.n_lags; ++k) v.lags[k] = k * lp.spacing;
    v.n_origins = lp.n_samples - (lp.n_lags - 1);
    v.per_component = true;

    const int dim = traj.dimension;
    const int n = traj.n_particles;
    const int n_groups = int(group_raw.size());

    std::vector<double> total(lp.n_lags, 0.0);
    for (auto& g : group_raw)
        for (int k = 0; k < lp.n_lags; ++k) total[k] += g[k];

    auto group_series = [&](int g) {
        const int base = n / n_groups, rem = n % n_groups;
        const int members = base + (g < rem ? 1 : 0);
        return members * dim;
    };

    v.values.resize(lp.n_lags);
    const long n_series_total = long(n) * dim;
    for (int k = 0; k < lp.n_lags; ++k)
        v.values[k] = total[k] / (double(lp.n_samples - k) * double(n_series_total));

    v.group_values.resize(n_groups);
    for (int g = 0; g < n_groups; ++g) {
        v.group_values[g].resize(lp.n_lags);
        const double ns = double(group_series(g));
        for (int k = 0; k < lp.n_lags; ++k)
            v.group_values[g][k] = group_raw[g][k] / (double(lp.n_samples - k) * ns);
    }
    v.g0 = v.values[0];
    return v;
}

// Splits particles into contiguous blocks; g < N%G blocks get one extra.
std::pair<int, int> group_range(int n, int n_groups, int g) {
    const int base = n / n_groups, rem = n % n_groups;
    const int lo = g * base + std::min(g, rem);
    const int hi = lo + base + (g < rem ? 1 : 0);
    return {lo, hi};
}

} // namespace

std::vector<double> autocorrelation_fft(const std::vector<double>& x, int n_lags) {
    CorrAccumulator acc(x.size(), n_lags);
    acc.add_series(x.data());
    auto raw = acc.finish();
    for (int k = 0; k < n_lags; ++k) raw[k] /= double(x.size() - k);
    return raw;
}

std::vector<double> autocorrelation_direct(const std::vector<double>& x, int n_lags) {
    const long n = long(x.size());
    std::vector<double> out(n_lags, 0.0);
    for (int k = 0; k < n_lags; ++k) {
        double s = 0.0;
        for (long t = 0; t + k < n; ++t) s += x[t] * x[t + k];
        out[k] = s / double(n - k);
    }
    return out;
}

Vacf estimate_vacf(const mdsim::Trajectory& traj, double max_lag, int n_groups) {
    const LagPlan lp = plan_lags(traj, max_lag);
    const int n = traj.n_particles, dim = traj.dimension;
    n_groups = std::max(1, std::min(n_groups, n));

    std::vector<std::vector<double>> group_raw(n_groups);
    // Groups are independent accumulations; series order within a group is
    // fixed, so results do not depend on the thread count.
#pragma omp parallel for schedule(dynamic, 1)
    for (int g = 0; g < n_groups; ++g) {
        auto [lo, hi] = group_range(n, n_groups, g);
        CorrAccumulator acc(lp.n_samples, lp.n_lags);
        std::vector<double> series(lp.n_samples);
        for (int i = lo; i < hi; ++i)
            for (int c = 0; c < dim; ++c) {
                for (long t = 0; t < lp.n_samples; ++t)
                    series[t] = traj.velocities[(std::size_t(t) * n + i) * dim + c];
                acc.add_series(series.data());
            }
        group_raw[g] = acc.finish();
    }
    return assemble(traj, lp, std::move(group_raw));
}

Vacf estimate_vacf_direct(const mdsim::Trajectory& traj, double max_lag, int n_groups) {
    const LagPlan lp = plan_lags(traj, max_lag);
    const int n = traj.n_particles, dim = traj.dimension;
    n_groups = std::max(1, std::min(n_groups, n));

    std::vector<std::vector<double>> group_raw(n_groups);
#pragma omp parallel for schedule(dynamic, 1)
    for (int g = 0; g < n_groups; ++g) {
        auto [lo, hi] = group_range(n, n_groups, g);
        std::vector<double> raw(lp.n_lags, 0.0);
        std::vector<double> series(lp.n_samples);
        for (int i = lo; i < hi; ++i)
            for (int c = 0; c < dim; ++c) {
                for (long t = 0; t < lp.n_samples; ++t)
                    series[t] = traj.velocities[(std::size_t(t) * n + i) * dim + c];
                for (int k = 0; k < lp.n_lags; ++k) {
                    double s = 0.0;
                    for (long t = 0; t + k < lp.n_samples; ++t) s += series[t] * series[t + k];
                    raw[k] += s;
                }
            }
        group_raw[g] = raw;
    }
    return assemble(traj, lp, std::move(group_raw));
}

double first_zero(const Vacf& v) {
    const std::size_t n = v.values.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = v.values[i], b = v.values[i + 1];
        if (a == 0.0 && i > 0) return v.lags[i];
        if (a > 0.0 && b <= 0.0) {
            if (b == 0.0) return v.lags[i + 1];
            return v.lags[i] + (v.lags[i + 1] - v.lags[i]) * a / (a - b);
        }
    }
    return kNoZeroCrossing;
}

} // namespace pbound::vacf
