#pragma once

#include <cmath>
#include <cstdint>

#include "logdecay/complex_matrix.hpp"

namespace logdecay {

// Deterministic splittable RNG on a splitmix64 core. Chosen over <random>
// distributions because their output is not pinned by the standard and the
// report contract requires byte-identical reruns. Not cryptographic.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), state_(scramble(seed)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit mantissa.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller without a cached spare: two uniforms per draw, so the stream
    // position is a pure function of the call count.
    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]: keeps log() finite
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    cplx complex_normal() {
        const double re = normal();
        const double im = normal();
        return cplx(re, im) * 0.7071067811865475244;  // unit variance total
    }

    // Independent substream fixed by (construction seed, stream id); does not
    // advance or depend on this generator's draw history.
    Rng fork(std::uint64_t stream) const {
        return Rng(scramble(seed_ ^ (0x9e3779b97f4a7c15ULL * (stream + 1))));
    }

    ComplexVector unit_vector(int dim) {
        ComplexVector v(static_cast<size_t>(dim));
        for (auto& x : v) x = complex_normal();
        return normalized(v);
    }

    ComplexMatrix complex_matrix(int dim, double scale = 1.0) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) m(i, j) = scale * complex_normal();
        return m;
    }

private:
    static std::uint64_t scramble(std::uint64_t z) {
        z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
        z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
        return z ^ (z >> 33);
    }

    std::uint64_t seed_;
    std::uint64_t state_;
};

}  // namespace logdecay
