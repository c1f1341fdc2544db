#ifndef PBOUND_LATTICE_HPP
#define PBOUND_LATTICE_HPP

#include "pbound/rng.hpp"

#include <vector>

namespace pbound::mdsim {

// Initial positions on an FCC lattice (d=3, N = 4k^3) or a square lattice
// (d=2, N = k^2), jittered by at most 1% of the nearest-neighbor spacing.
// Throws ValidationError naming the nearest valid count when N does not
// fit the lattice.
std::vector<double> lattice_positions(int n_particles, int dimension,
                                      double box_length, Rng& rng);

// Nearest N' >= 2 of the form 4k^3 (d=3) or k^2 (d=2).
int nearest_lattice_count(int n_particles, int dimension);

} // namespace pbound::mdsim

#endif
