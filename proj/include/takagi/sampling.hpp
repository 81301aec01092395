#pragma once

#include <cstdint>
#include <vector>

#include "takagi/bit_point.hpp"

namespace takagi {

// A reproducible batch of uniform points on [0,1), each carried to
// `bits` binary digits.  Points are generated lazily and independently:
// point i is a pure function of (seed, i), so any sharding of the index
// range sees identical points.  Batch points are marked truncated: they
// stand for uniform draws whose digits past `bits` were never generated.
class SampleBatch {
public:
    SampleBatch(std::uint64_t seed, long count, int bits);

    std::uint64_t seed() const { return seed_; }
    long count() const { return count_; }
    int bits() const { return bits_; }

    BitPoint point(long i) const;

    // Fills `words` with point i's packed digits (reused buffer form).
    void fill_words(long i, std::vector<std::uint64_t>& words) const;

private:
    std::uint64_t seed_;
    long count_;
    int bits_;
};

} // namespace takagi
