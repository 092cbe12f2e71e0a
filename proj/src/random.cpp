#include "sws/random.hpp"

namespace sws {

u128 SeededSource::next_u128() {
    return (u128(next_u64()) << 64) | next_u64();
}

u128 SeededSource::uniform_index(u128 m) {
    require(m > 0, "uniform_index: empty range");
    if (m == 1) return 0;

    if ((m >> 64) == 0) {
        // One 64-bit word suffices. Reject draws above the largest multiple
        // of m so the remainder is exactly uniform.
        const std::uint64_t m64 = static_cast<std::uint64_t>(m);
        const std::uint64_t limit = std::uint64_t(0) - (std::uint64_t(0) - m64) % m64;  // = 2^64 - (2^64 % m)
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r < limit || limit == 0) return r % m64;
        }
    }

    // Wide range: same rejection scheme over 128 bits. 2^128 mod m computed
    // as (0 - m) mod m in unsigned arithmetic.
    const u128 limit = u128(0) - (u128(0) - m) % m;
    for (;;) {
        const u128 r = next_u128();
        if (r < limit || limit == 0) return r % m;
    }
}

}  // namespace sws
