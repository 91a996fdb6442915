// Deterministic sampling.  All randomized paths draw from this 64-bit LCG
// (Knuth's MMIX constants) so that a (seed, command) pair reproduces the same
// sample set on any platform and with any worker count:
//
//   s_{i+1} = 6364136223846793005 * s_i + 1442695040888963407   (mod 2^64)
//
// A field-element draw advances once and takes (state >> 33) mod q.  A matrix
// draw fills entries row by row.  Samples are always drawn on a single stream
// before any parallel work starts.

#pragma once

#include <cstdint>

#include "segre/field.hpp"
#include "segre/matrix.hpp"

namespace segre {

class Lcg64 {
public:
    explicit Lcg64(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        s_ = s_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return s_;
    }

    // One draw reduced into [0, bound); bias is negligible for our tiny bounds.
    std::uint64_t next_below(std::uint64_t bound) { return (next() >> 33) % bound; }

    Fe next_element(const Field& f) { return Fe((next() >> 33) % f.q()); }

    Matrix next_matrix(const Field& f, std::uint32_t order) {
        Matrix m(f, order, order);
        for (std::uint32_t i = 0; i < order; i++)
            for (std::uint32_t j = 0; j < order; j++) m(i, j) = next_element(f);
        return m;
    }

    // Rejection sampling; expected O(1) tries.
    Matrix next_invertible(const Field& f, std::uint32_t order) {
        for (;;) {
            Matrix m = next_matrix(f, order);
            if (m.rank() == order) return m;
        }
    }

private:
    std::uint64_t s_;
};

} // namespace segre
