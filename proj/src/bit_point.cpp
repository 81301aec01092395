#include "takagi/bit_point.hpp"

#include <cmath>
#include <cstdio>

#include "takagi/errors.hpp"

namespace takagi {

namespace {

int words_for(int length) { return (length + 63) / 64; }

// Clears any bit past `length` in the last word.
void mask_tail(std::vector<std::uint64_t>& words, int length) {
    int used = length % 64;
    if (used != 0 && !words.empty()) {
        words.back() &= ~std::uint64_t(0) << (64 - used);
    }
}

} // namespace

BitPoint BitPoint::from_bits(std::vector<std::uint64_t> words, int length,
                             bool exact) {
    if (length < 1) throw DomainError("BitPoint length must be >= 1");
    words.resize(words_for(length), 0);
    mask_tail(words, length);
    BitPoint p;
    p.words_ = std::move(words);
    p.len_ = length;
    p.exact_ = exact;
    return p;
}

BitPoint BitPoint::from_bit_string(std::string_view text) {
    if (text.size() < 3 || text[0] != '0' || text[1] != '.') {
        throw ParseError("bit string must look like \"0.0110...\"");
    }
    std::string_view digits = text.substr(2);
    std::vector<std::uint64_t> words(words_for((int)digits.size()), 0);
    for (size_t i = 0; i < digits.size(); ++i) {
        char c = digits[i];
        if (c != '0' && c != '1') {
            throw ParseError("bit string digit must be 0 or 1");
        }
        if (c == '1') words[i / 64] |= std::uint64_t(1) << (63 - i % 64);
    }
    return from_bits(std::move(words), (int)digits.size(), true);
}

BitPoint BitPoint::from_double(double v, int length) {
    if (!(v >= 0.0) || v >= 1.0) throw DomainError("point must be in [0,1)");
    if (length < 1) throw DomainError("BitPoint length must be >= 1");
    std::vector<std::uint64_t> words(words_for(length), 0);
    double rest = v;
    for (int n = 1; n <= length && rest > 0.0; ++n) {
        rest *= 2.0;
        if (rest >= 1.0) {
            rest -= 1.0;
            words[(n - 1) / 64] |= std::uint64_t(1) << (63 - (n - 1) % 64);
        }
    }
    return from_bits(std::move(words), length, rest == 0.0);
}

BitPoint BitPoint::from_rational(std::uint64_t num, std::uint64_t den,
                                 int length) {
    if (den == 0 || num >= den) throw DomainError("need 0 <= num/den < 1");
    if (den > (std::uint64_t(1) << 63)) {
        throw DomainError("denominator too large");
    }
    if (length < 1) throw DomainError("BitPoint length must be >= 1");
    std::vector<std::uint64_t> words(words_for(length), 0);
    std::uint64_t rem = num;
    for (int n = 1; n <= length && rem != 0; ++n) {
        rem <<= 1;
        if (rem >= den) {
            rem -= den;
            words[(n - 1) / 64] |= std::uint64_t(1) << (63 - (n - 1) % 64);
        }
    }
    return from_bits(std::move(words), length, rem == 0);
}

BitPoint BitPoint::from_decimal(std::string_view text, int length) {
    size_t dot = text.find('.');
    std::string_view ip = (dot == std::string_view::npos) ? text : text.substr(0, dot);
    std::string_view fp = (dot == std::string_view::npos) ? "" : text.substr(dot + 1);
    if (ip != "0" && !ip.empty()) throw ParseError("decimal point value must be 0.xxx");
    if (fp.empty()) return dyadic(0, 1);
    if (fp.size() > 18) throw ParseError("at most 18 decimal digits supported");
    std::uint64_t num = 0, den = 1;
    for (char c : fp) {
        if (c < '0' || c > '9') throw ParseError("malformed decimal literal");
        num = num * 10 + std::uint64_t(c - '0');
        den *= 10;
    }
    if (num == 0) return dyadic(0, 1);
    return from_rational(num, den, length);
}

BitPoint BitPoint::dyadic(std::uint64_t k, int m) {
    if (m < 1 || m > 62) throw DomainError("dyadic exponent must be in [1,62]");
    if (k >= (std::uint64_t(1) << m)) throw DomainError("dyadic numerator too large");
    return from_rational(k, std::uint64_t(1) << m, m);
}

int BitPoint::bit(int n) const {
    if (n < 1) throw DomainError("bit index must be >= 1");
    if (n > len_) {
        if (exact_) return 0;
        throw PrecisionError("bit index past stored precision", n);
    }
    return (int)((words_[(n - 1) / 64] >> (63 - (n - 1) % 64)) & 1);
}

double BitPoint::value() const {
    long double v = (long double)words_[0] * 0x1p-64L;
    if (words_.size() > 1) v += (long double)words_[1] * 0x1p-128L;
    return (double)v;
}

BitPoint BitPoint::shifted(int k) const {
    if (k < 0) throw DomainError("shift must be >= 0");
    if (k == 0) return *this;
    if (k >= len_) {
        if (!exact_) throw PrecisionError("shift exceeds stored precision", k + 1);
        return dyadic(0, 1);
    }
    int new_len = len_ - k;
    std::vector<std::uint64_t> out(words_for(new_len), 0);
    int wshift = k / 64, bshift = k % 64;
    for (size_t i = 0; i < out.size(); ++i) {
        std::uint64_t w = words_[i + wshift] << bshift;
        if (bshift != 0 && i + wshift + 1 < words_.size()) {
            w |= words_[i + wshift + 1] >> (64 - bshift);
        }
        out[i] = w;
    }
    return from_bits(std::move(out), new_len, exact_);
}

BitPoint BitPoint::as_exact() const {
    BitPoint p = *this;
    p.exact_ = true;
    return p;
}

BitPoint BitPoint::as_truncated() const {
    BitPoint p = *this;
    p.exact_ = false;
    return p;
}

std::string BitPoint::to_bit_string() const {
    std::string s = "0.";
    s.reserve(2 + len_);
    for (int n = 1; n <= len_; ++n) s.push_back(bit(n) ? '1' : '0');
    return s;
}

} // namespace takagi
