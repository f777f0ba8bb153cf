#ifndef CYCLEMLD_RNG_HPP
#define CYCLEMLD_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace cyclemld {

// mt19937_64 with hand-rolled output maps. The engine is fully specified by
// the standard; std::normal_distribution is not, and reports must be
// byte-identical for a given seed regardless of toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Derives an independent stream, e.g. one per Newton start.
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return Rng(z ^ (z >> 31));
    }

    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace cyclemld

#endif
