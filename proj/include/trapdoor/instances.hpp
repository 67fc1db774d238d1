#pragma once

#include "trapdoor/bigint.hpp"
#include "trapdoor/numtheory.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace trapdoor::instances {

// Fixed packing of one labeled example: the squaring chain of the encrypted
// value followed by the modulus and public exponent, every field the same
// width, big-endian within a field.
//
//   field 0 .. ceil(log2 N):   chain entries
//   field ceil(log2 N) + 1:    N
//   field ceil(log2 N) + 2:    e
struct BitLayout {
    unsigned n = 0;                   // field width = bit length of N
    unsigned fields_per_example = 0;  // ceil(log2 N) + 3
    unsigned total_bits = 0;          // n * fields_per_example
    unsigned lsb_of_n_position = 0;   // 1-based index of N's lowest bit

    bool operator==(const BitLayout&) const = default;
};

// Throws when e needs more than n bits.
BitLayout make_layout(const BigInt& N, const BigInt& e);

struct LabeledExample {
    std::string w;               // '0'/'1' string of layout.total_bits
    int b = 0;                   // LSB of the hidden plaintext
    std::optional<BigInt> x;     // hidden plaintext; absent in public form
};

struct LabeledSample {
    BigInt N, e;
    BitLayout layout;
    std::vector<LabeledExample> examples;
};

// m distinct plaintexts drawn seeded from Z_N, encrypted and packed.
// Requires 1 <= m <= N.
LabeledSample generate_sample(const numtheory::RsaKey& key, std::size_t m, std::uint64_t seed);

// Pack a chain plus (N, e) into a bit string of layout.total_bits.
std::string encode_example(const numtheory::PowerChain& chain, const BigInt& N, const BigInt& e,
                           const BitLayout& layout);

// Unpack and validate: field count, digit alphabet, chain entries below N
// and the squaring invariant entry[t] == entry[t-1]^2 mod N.  A single
// flipped bit inside any chain or modulus field trips the validation.
struct DecodedExample {
    numtheory::PowerChain chain;
    BigInt N, e;
};
DecodedExample decode_example(const std::string& w, const BitLayout& layout);

// strip_secrets drops the hidden plaintexts (the "--public" form).
nlohmann::json sample_to_json(const LabeledSample& s, bool strip_secrets);
LabeledSample sample_from_json(const nlohmann::json& j);

}  // namespace trapdoor::instances
