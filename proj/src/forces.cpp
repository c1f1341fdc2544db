#include "pbound/forces.hpp"

#include "pbound/errors.hpp"

#include <cmath>

namespace pbound::mdsim {

namespace {

inline double minimum_image(double dx, double box) {
    return dx - box * std::nearbyint(dx / box);
}

inline void lj_pair(double r_sq, double& u, double& f_over_r) {
    const double inv_r2 = 1.0 / r_sq;
    const double inv_r6 = inv_r2 * inv_r2 * inv_r2;
    u = 4.0 * inv_r6 * (inv_r6 - 1.0);
    f_over_r = 24.0 * inv_r6 * (2.0 * inv_r6 - 1.0) * inv_r2;
}

inline void yukawa_pair(double r_sq, double screening, double coupling,
                        double& u, double& f_over_r) {
    const double r = std::sqrt(r_sq);
    const double e = coupling * std::exp(-screening * r) / r;
    u = e;
    f_over_r = e * (screening + 1.0 / r) / r;
}

} // namespace

double yukawa_auto_cutoff(double screening, double coupling) {
    // Pair force magnitude c*exp(-k r)(k/r + 1/r^2); bisect to 1e-6.
    double lo = 1.0, hi = 200.0;
    auto f = [&](double r) {
        return coupling * std::exp(-screening * r) * (screening / r + 1.0 / (r * r));
    };
    if (f(lo) < 1e-6) return lo;
    for (int it = 0; it < 200 && hi - lo > 1e-6; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 1e-6 ? lo : hi) = mid;
    }
    return hi;
}

PairPotential PairPotential::make(const Interaction& inter) {
    PairPotential p{};
    if (std::holds_alternative<LennardJones>(inter)) {
        const auto& lj = std::get<LennardJones>(inter);
        p.kind = Kind::LennardJones;
        p.cutoff = lj.cutoff;
        p.cutoff_sq = lj.cutoff * lj.cutoff;
        double f;
        lj_pair(p.cutoff_sq, p.shift, f);
    } else {
        const auto& yk = std::get<Yukawa>(inter);
        p.kind = Kind::Yukawa;
        p.screening = yk.screening;
        p.coupling = yk.coupling;
        p.cutoff = (yk.cutoff > 0.0) ? yk.cutoff
                                     : yukawa_auto_cutoff(yk.screening, yk.coupling);
        p.cutoff_sq = p.cutoff * p.cutoff;
        double f;
        yukawa_pair(p.cutoff_sq, p.screening, p.coupling, p.shift, f);
    }
    return p;
}

void PairPotential::evaluate(double r_sq, double& u, double& f_over_r) const {
    if (kind == Kind::LennardJones)
        lj_pair(r_sq, u, f_over_r);
    else
        yukawa_pair(r_sq, screening, coupling, u, f_over_r);
    u -= shift;
}

void build_neighbor_list(std::span<const double> pos, int n, int dim,
                         double box, double list_radius, NeighborList& list) {
    const double r_sq = list_radius * list_radius;
    list.list_radius = list_radius;
    list.offsets.assign(std::size_t(n) + 1, 0);

    // Two passes: count, then fill, partners in ascending j order.
    std::vector<int> counts(n, 0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const double* pi = pos.data() + std::size_t(i) * dim;
        int c = 0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double* pj = pos.data() + std::size_t(j) * dim;
            double d2 = 0.0;
            for (int k = 0; k < dim; ++k) {
                const double dx = minimum_image(pi[k] - pj[k], box);
                d2 += dx * dx;
            }
            if (d2 < r_sq) ++c;
        }
        counts[i] = c;
    }
    for (int i = 0; i < n; ++i) list.offsets[i + 1] = list.offsets[i] + counts[i];
    list.partners.resize(list.offsets[n]);

#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const double* pi = pos.data() + std::size_t(i) * dim;
        int w = list.offsets[i];
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double* pj = pos.data() + std::size_t(j) * dim;
            double d2 = 0.0;
            for (int k = 0; k < dim; ++k) {
                const double dx = minimum_image(pi[k] - pj[k], box);
                d2 += dx * dx;
            }
            if (d2 < r_sq) list.partners[w++] = j;
        }
    }
}

void forces_neighbor(std::span<const double> pos, int n, int dim, double box,
                     const PairPotential& pot, const NeighborList& list,
                     std::span<double> force, std::span<double> v_i) {
    const double rc_sq = pot.cutoff_sq;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const double* pi = pos.data() + std::size_t(i) * dim;
        double f[3] = {0.0, 0.0, 0.0};
        double u_sum = 0.0;
        for (int s = list.offsets[i]; s < list.offsets[i + 1]; ++s) {
            const int j = list.partners[s];
            const double* pj = pos.data() + std::size_t(j) * dim;
            double d[3];
            double d2 = 0.0;
            for (int k = 0; k < dim; ++k) {
                d[k] = minimum_image(pi[k] - pj[k], box);
                d2 += d[k] * d[k];
            }
            if (d2 >= rc_sq) continue;
            double u, f_over_r;
            pot.evaluate(d2, u, f_over_r);
            u_sum += u;
            for (int k = 0; k < dim; ++k) f[k] += f_over_r * d[k];
        }
        for (int k = 0; k < dim; ++k) force[std::size_t(i) * dim + k] = f[k];
        v_i[i] = u_sum;
    }
}

void forces_serial(std::span<const double> pos, int n, int dim, double box,
                   const PairPotential& pot, std::span<double> force,
                   std::span<double> v_i, double& u_total) {
    const double rc_sq = pot.cutoff_sq;
    std::fill(force.begin(), force.end(), 0.0);
    std::fill(v_i.begin(), v_i.end(), 0.0);
    u_total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double* pi = pos.data() + std::size_t(i) * dim;
        for (int j = i + 1; j < n; ++j) {
            const double* pj = pos.data() + std::size_t(j) * dim;
            double d[3];
            double d2 = 0.0;
            for (int k = 0; k < dim; ++k) {
                d[k] = minimum_image(pi[k] - pj[k], box);
                d2 += d[k] * d[k];
            }
            if (d2 >= rc_sq) continue;
            double u, f_over_r;
            pot.evaluate(d2, u, f_over_r);
            u_total += u;
            v_i[i] += u;
            v_i[j] += u;
            for (int k = 0; k < dim; ++k) {
                force[std::size_t(i) * dim + k] += f_over_r * d[k];
                force[std::size_t(j) * dim + k] -= f_over_r * d[k];
            }
        }
    }
}

} // namespace pbound::mdsim
