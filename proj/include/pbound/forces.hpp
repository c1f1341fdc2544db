#ifndef PBOUND_FORCES_HPP
#define PBOUND_FORCES_HPP

#include "pbound/mdsim.hpp"

#include <span>
#include <vector>

namespace pbound::mdsim {

// Truncated-and-shifted pair potentials: U_ts(r) = U(r) - U(rc) for r < rc.
struct PairPotential {
    enum class Kind { LennardJones, Yukawa } kind;
    double cutoff;
    double cutoff_sq;
    double shift;     // U(rc), subtracted from each pair energy
    double screening; // Yukawa only
    double coupling;  // Yukawa only

    static PairPotential make(const Interaction& inter);

    // U(r) - U(rc) and the scalar f(r) with force = f(r) * (ri - rj).
    void evaluate(double r_sq, double& u, double& f_over_r) const;
};

// Resolves Yukawa cutoff = 0 to the radius where the pair force drops
// below 1e-6.
double yukawa_auto_cutoff(double screening, double coupling);

// Full neighbor list in CSR form: each pair appears in both rows, so one
// row gives every interaction partner of its particle. Built at skin
// distance cutoff + skin; rebuild when max displacement > skin/2.
struct NeighborList {
    double list_radius = 0.0;
    std::vector<int> offsets; // n+1
    std::vector<int> partners;
};

void build_neighbor_list(std::span<const double> pos, int n, int dim,
                         double box, double list_radius, NeighborList& list);

// Production kernel: per-particle sums over the neighbor list, each row
// accumulated in partner order by exactly one thread, so results are
// bitwise independent of the thread count. V_i collects the full pair
// energy for both members (sum_i V_i == 2 * U_pot).
void forces_neighbor(std::span<const double> pos, int n, int dim, double box,
                     const PairPotential& pot, const NeighborList& list,
                     std::span<double> force, std::span<double> v_i);

// Reference kernel: direct O(N^2) loop over i<j with Newton's third law.
// Kept for testing and the kernel benchmark.
void forces_serial(std::span<const double> pos, int n, int dim, double box,
                   const PairPotential& pot, std::span<double> force,
                   std::span<double> v_i, double& u_total);

} // namespace pbound::mdsim

#endif
