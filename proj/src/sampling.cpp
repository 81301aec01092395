#include "takagi/sampling.hpp"

#include "takagi/errors.hpp"
#include "takagi/philox.hpp"

namespace takagi {

SampleBatch::SampleBatch(std::uint64_t seed, long count, int bits)
    : seed_(seed), count_(count), bits_(bits) {
    if (count < 1) throw DomainError("sample count must be >= 1");
    if (bits < 64) throw DomainError("sample bit length must be >= 64");
}

void SampleBatch::fill_words(long i, std::vector<std::uint64_t>& words) const {
    if (i < 0 || i >= count_) throw DomainError("sample index out of range");
    int nwords = (bits_ + 63) / 64;
    words.assign(nwords, 0);
    std::array<std::uint32_t, 2> key = {(std::uint32_t)seed_,
                                        (std::uint32_t)(seed_ >> 32)};
    std::uint64_t idx = (std::uint64_t)i;
    int nblocks = (nwords + 1) / 2;
    for (int b = 0; b < nblocks; ++b) {
        std::array<std::uint32_t, 4> ctr = {(std::uint32_t)b, (std::uint32_t)idx,
                                            (std::uint32_t)(idx >> 32), 0u};
        auto out = Philox4x32::block(ctr, key);
        for (int w = 0; w < 2; ++w) {
            size_t j = (size_t)b * 2 + w;
            if (j < words.size()) {
                words[j] = ((std::uint64_t)out[2 * w] << 32) | out[2 * w + 1];
            }
        }
    }
    int used = bits_ % 64;
    if (used != 0) words.back() &= ~std::uint64_t(0) << (64 - used);
}

BitPoint SampleBatch::point(long i) const {
    std::vector<std::uint64_t> words;
    fill_words(i, words);
    return BitPoint::from_bits(std::move(words), bits_, false);
}

} // namespace takagi
