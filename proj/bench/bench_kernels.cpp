// Kernel benchmark: OpenMP neighbor-list forces against the serial O(N^2)
// reference, and FFT against direct-sum autocorrelation.
//
//   pbound_bench [n_force_steps] [n_series]

#include "pbound/forces.hpp"
#include "pbound/rng.hpp"
#include "pbound/vacf.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

using namespace pbound;
using namespace pbound::mdsim;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void bench_forces(int n, int steps) {
    const double density = 0.85;
    const double box = std::cbrt(n / density);
    Rng rng(n);
    std::vector<double> pos(std::size_t(n) * 3);
    for (auto& x : pos) x = rng.uniform(0.0, box);

    PairPotential pot = PairPotential::make(LennardJones{2.5});
    NeighborList list;
    build_neighbor_list(pos, n, 3, box, pot.cutoff + 0.4, list);

    std::vector<double> force(pos.size()), v_i(n);
    double u_total = 0.0;

    auto t0 = std::chrono::steady_clock::now();
    for (int s = 0; s < steps; ++s) forces_serial(pos, n, 3, box, pot, force, v_i, u_total);
    const double t_serial = seconds_since(t0) / steps;

    t0 = std::chrono::steady_clock::now();
    for (int s = 0; s < steps; ++s) forces_neighbor(pos, n, 3, box, pot, list, force, v_i);
    const double t_neighbor = seconds_since(t0) / steps;

    std::printf("forces   N=%5d   serial %9.3f ms   neighbor+omp %9.3f ms   speedup %5.2fx\n",
                n, 1e3 * t_serial, 1e3 * t_neighbor, t_serial / t_neighbor);
}

void bench_autocorrelation(int len, int reps) {
    Rng rng(len);
    std::vector<double> x(len);
    for (auto& v : x) v = rng.normal();
    const int n_lags = len / 2;

    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) vacf::autocorrelation_direct(x, n_lags);
    const double t_direct = seconds_since(t0) / reps;

    t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) vacf::autocorrelation_fft(x, n_lags);
    const double t_fft = seconds_since(t0) / reps;

    std::printf("autocorr n=%5d   direct %9.3f ms   fft          %9.3f ms   speedup %5.2fx\n",
                len, 1e3 * t_direct, 1e3 * t_fft, t_direct / t_fft);
}

} // namespace

int main(int argc, char** argv) {
    const int force_steps = argc > 1 ? std::atoi(argv[1]) : 20;
    const int series_reps = argc > 2 ? std::atoi(argv[2]) : 10;

#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled\n");
#endif

    for (int n : {256, 500, 864, 2048}) bench_forces(n, force_steps);
    for (int len : {1024, 4096, 16384}) bench_autocorrelation(len, series_reps);
    return 0;
}
