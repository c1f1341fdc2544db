#ifndef PBOUND_RNG_HPP
#define PBOUND_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace pbound {

// mt19937_64 with hand-rolled uniform/normal transforms. The engine's
// output stream is fixed by the standard; std::normal_distribution is
// not, so the transforms live here to keep seeded runs reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { // [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() { // Box-Muller with cached spare
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace pbound

#endif
