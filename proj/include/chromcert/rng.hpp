#pragma once

#include <cstdint>
#include <random>

#include "chromcert/exact.hpp"

namespace chromcert {

/// Seedable generator: std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. Integer draws use rejection sampling on raw 64-bit outputs
/// (never std:: distributions, which are implementation-defined), so samples
/// are bit-identical across platforms for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw Error("Rng::below with zero bound");
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x > limit);
        return x % bound;
    }

    /// Uniform integer in [lo, hi].
    long between(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    /// Uniform big integer in [0, bound); bound > 0.
    BigInt below(const BigInt& bound) {
        if (bound <= 0) throw Error("Rng::below with non-positive bound");
        if (bound.fits_ulong_p()) return BigInt(below(static_cast<std::uint64_t>(bound.get_ui())));
        const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
        for (;;) {
            BigInt x = 0;
            std::size_t have = 0;
            while (have < bits) {
                std::uint64_t w = next();
                std::size_t take = std::min<std::size_t>(64, bits - have);
                if (take < 64) w &= (std::uint64_t{1} << take) - 1;
                BigInt part;
                mpz_import(part.get_mpz_t(), 1, 1, sizeof(w), 0, 0, &w);
                x = (x << static_cast<mp_bitcnt_t>(take)) + part;
                have += take;
            }
            if (x < bound) return x;
        }
    }

    bool bernoulli_half() { return (next() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

}  // namespace chromcert
