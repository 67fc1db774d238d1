#include "trapdoor/bigint.hpp"

#include "trapdoor/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace trapdoor {

unsigned bit_length(const BigInt& x) {
    if (x == 0) return 0;
    return static_cast<unsigned>(boost::multiprecision::msb(x)) + 1u;
}

unsigned ceil_log2(const BigInt& x) {
    if (x < 1) throw std::invalid_argument("ceil_log2: argument must be >= 1");
    if (x == 1) return 0;
    return bit_length(x - 1);
}

std::string to_hex(const BigInt& x) {
    if (x < 0) throw std::invalid_argument("to_hex: negative value");
    if (x == 0) return "0";
    static const char* digits = "0123456789abcdef";
    std::string out;
    BigInt v = x;
    while (v != 0) {
        out.push_back(digits[static_cast<unsigned>(v & 0xf)]);
        v >>= 4;
    }
    return {out.rbegin(), out.rend()};
}

BigInt from_hex(const std::string& s) {
    if (s.empty()) throw FormatError("hex: empty string");
    if (s.size() > 1 && s[0] == '0') throw FormatError("hex: leading zeros not canonical");
    BigInt v = 0;
    for (char c : s) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = 10 + (c - 'a');
        else throw FormatError(std::string("hex: invalid character '") + c + "'");
        v = (v << 4) | d;
    }
    return v;
}

BigInt Rng::random_bits(unsigned bits) {
    BigInt v = 0;
    unsigned produced = 0;
    while (produced < bits) {
        unsigned take = std::min(64u, bits - produced);
        std::uint64_t word = next_u64();
        if (take < 64) word &= (std::uint64_t(1) << take) - 1;
        v <<= take;
        v |= word;
        produced += take;
    }
    return v;
}

BigInt Rng::random_exact_bits(unsigned bits) {
    if (bits == 0) throw std::invalid_argument("random_exact_bits: bits must be >= 1");
    BigInt v = random_bits(bits);
    boost::multiprecision::bit_set(v, bits - 1);
    return v;
}

BigInt Rng::uniform_below(const BigInt& bound) {
    if (bound < 1) throw std::invalid_argument("uniform_below: bound must be >= 1");
    if (bound == 1) return 0;
    const unsigned bits = bit_length(bound);
    for (;;) {
        BigInt v = random_bits(bits);
        if (v < bound) return v;
    }
}

std::uint64_t Rng::uniform_u64(std::uint64_t n) {
    if (n == std::uint64_t(-1)) return next_u64();
    const std::uint64_t bound = n + 1;
    // Rejection from the smallest power-of-two range covering [0, n].
    unsigned bits = 0;
    while (bits < 64 && (std::uint64_t(1) << bits) < bound) ++bits;
    const std::uint64_t mask = bits == 64 ? std::uint64_t(-1) : (std::uint64_t(1) << bits) - 1;
    for (;;) {
        std::uint64_t v = next_u64() & mask;
        if (v <= n) return v;
    }
}

}  // namespace trapdoor
