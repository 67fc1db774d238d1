#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <string>

namespace trapdoor {

using BigInt = boost::multiprecision::cpp_int;

// Number of bits in the binary representation of x (0 for x == 0).
unsigned bit_length(const BigInt& x);

// Smallest k with x <= 2^k, i.e. ceil(log2 x).  Requires x >= 1.
unsigned ceil_log2(const BigInt& x);

// Lowercase hex without prefix or leading zeros ("0" for zero).
std::string to_hex(const BigInt& x);

// Inverse of to_hex.  Throws FormatError on anything but canonical
// lowercase hex (leading zeros rejected so serialized forms are unique).
BigInt from_hex(const std::string& s);

// Deterministic random source.  All randomness in the library flows through
// this so that a (seed, call sequence) pair pins every artifact bit-for-bit
// across platforms: mt19937_64 is fully specified by the standard and the
// derivation below never consults implementation-defined distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform integer with exactly `bits` bits (top bit forced to 1).
    BigInt random_exact_bits(unsigned bits);

    // Uniform integer in [0, bound) by rejection from bit_length(bound) bits.
    BigInt uniform_below(const BigInt& bound);

    // Uniform integer in [0, n] for small n.
    std::uint64_t uniform_u64(std::uint64_t n);

private:
    BigInt random_bits(unsigned bits);
    std::mt19937_64 gen_;
};

}  // namespace trapdoor
