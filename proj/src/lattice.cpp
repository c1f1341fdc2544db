#include "pbound/lattice.hpp"

#include "pbound/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace pbound::mdsim {

namespace {

int cube_cells_for(int n) { // smallest k with 4k^3 >= n
    int k = 1;
    while (4 * k * k * k < n) ++k;
    return k;
}

} // namespace

int nearest_lattice_count(int n_particles, int dimension) {
    if (dimension == 3) {
        const int k = cube_cells_for(n_particles);
        const int hi = 4 * k * k * k;
        const int lo = (k > 1) ? 4 * (k - 1) * (k - 1) * (k - 1) : hi;
        return (n_particles - lo <= hi - n_particles) ? lo : hi;
    }
    const int k = std::max(2, static_cast<int>(std::lround(std::sqrt(double(n_particles)))));
    int best = k * k;
    for (int kk = k - 1; kk <= k + 1; ++kk) {
        if (kk < 2) continue;
        if (std::abs(kk * kk - n_particles) < std::abs(best - n_particles)) best = kk * kk;
    }
    return best;
}

std::vector<double> lattice_positions(int n_particles, int dimension,
                                      double box_length, Rng& rng) {
    std::vector<double> pos(std::size_t(n_particles) * dimension);

    if (dimension == 3) {
        const int k = cube_cells_for(n_particles);
        if (4 * k * k * k != n_particles)
            throw ValidationError("n_particles=" + std::to_string(n_particles) +
                                  " does not fill an fcc lattice (needs 4k^3); nearest valid count: " +
                                  std::to_string(nearest_lattice_count(n_particles, 3)));
        const double a = box_length / k;
        const double nn = a / std::sqrt(2.0); // fcc nearest-neighbor distance
        static const double basis[4][3] = {
            {0.0, 0.0, 0.0}, {0.5, 0.5, 0.0}, {0.5, 0.0, 0.5}, {0.0, 0.5, 0.5}};
        std::size_t idx = 0;
        for (int ix = 0; ix < k; ++ix)
            for (int iy = 0; iy < k; ++iy)
                for (int iz = 0; iz < k; ++iz)
                    for (int b = 0; b < 4; ++b) {
                        pos[idx * 3 + 0] = (ix + basis[b][0]) * a + 0.01 * nn * rng.uniform(-1.0, 1.0);
                        pos[idx * 3 + 1] = (iy + basis[b][1]) * a + 0.01 * nn * rng.uniform(-1.0, 1.0);
                        pos[idx * 3 + 2] = (iz + basis[b][2]) * a + 0.01 * nn * rng.uniform(-1.0, 1.0);
                        ++idx;
                    }
        return pos;
    }

    if (dimension == 2) {
        const int k = static_cast<int>(std::lround(std::sqrt(double(n_particles))));
        if (k * k != n_particles)
            throw ValidationError("n_particles=" + std::to_string(n_particles) +
                                  " does not fill a square lattice (needs k^2); nearest valid count: " +
                                  std::to_string(nearest_lattice_count(n_particles, 2)));
        const double a = box_length / k;
        std::size_t idx = 0;
        for (int ix = 0; ix < k; ++ix)
            for (int iy = 0; iy < k; ++iy) {
                pos[idx * 2 + 0] = (ix + 0.5) * a + 0.01 * a * rng.uniform(-1.0, 1.0);
                pos[idx * 2 + 1] = (iy + 0.5) * a + 0.01 * a * rng.uniform(-1.0, 1.0);
                ++idx;
            }
        return pos;
    }

    throw ValidationError("dimension must be 2 or 3");
}

} // namespace pbound::mdsim
