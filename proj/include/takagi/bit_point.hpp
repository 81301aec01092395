#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace takagi {

// A value paired with a certified absolute error bound:
// the true quantity lies in [value - abs_error, value + abs_error].
struct CertifiedValue {
    double value = 0.0;
    double abs_error = 0.0;
};

// A point x in [0,1) held as a binary expansion x = sum eps_n 2^{-n},
// n = 1..length().  Two interpretations, recorded by is_exact():
//
//  - exact: x IS the dyadic rational given by the stored bits
//    (terminating expansion; all later digits are zero).
//  - truncated: the stored bits are the first L digits of some point
//    whose later digits are unknown.  Evaluations then carry a
//    truncation error of 2^{-(L-n)} scale.
//
// Bit n is stored MSB-first: word (n-1)/64, bit position 63-((n-1)%64).
// Unused positions of the last word are always zero.
class BitPoint {
public:
    BitPoint() : len_(1), exact_(true) { words_.assign(1, 0); }

    // Takes ownership of packed words; trailing bits are cleared.
    static BitPoint from_bits(std::vector<std::uint64_t> words, int length,
                              bool exact);

    // "0." followed by binary digits.  Exact.
    static BitPoint from_bit_string(std::string_view text);

    // The dyadic rational equal to the double v, 0 <= v < 1.  Exact when
    // v's significand fits in `length` digits, truncated otherwise.
    static BitPoint from_double(double v, int length);

    // num/den with 0 <= num < den.  Exact when the expansion terminates
    // within `length` digits, truncated otherwise.
    static BitPoint from_rational(std::uint64_t num, std::uint64_t den,
                                  int length);

    // Decimal literal such as "0.3", kept as an exact rational before
    // digit extraction (so "0.3" means 3/10, not the nearest double).
    static BitPoint from_decimal(std::string_view text, int length);

    // k / 2^m, exact, stored in terminating form with length m.
    static BitPoint dyadic(std::uint64_t k, int m);

    int length() const { return len_; }
    bool is_exact() const { return exact_; }

    // eps_n for 1 <= n <= length(); digits past the end are zero and may
    // be read only on exact points.
    int bit(int n) const;

    // Nearest double to the stored expansion.
    double value() const;

    // Drops the first k digits: the point 2^k x mod 1.
    BitPoint shifted(int k) const;

    BitPoint as_exact() const;
    BitPoint as_truncated() const;

    std::string to_bit_string() const;

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    std::vector<std::uint64_t> words_;
    int len_;
    bool exact_;
};

} // namespace takagi
