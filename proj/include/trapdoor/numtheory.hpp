#pragma once

#include "trapdoor/bigint.hpp"

#include <json.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace trapdoor::numtheory {

// ==================== key material ====================

struct RsaKey {
    BigInt p, q;  // distinct primes
    BigInt N;     // p * q
    BigInt e;     // smallest public exponent >= 3 coprime to phi(N)
    BigInt d;     // e^-1 mod phi(N), in (1, phi)
    unsigned n = 0;  // bit length of N

    BigInt phi() const { return (p - 1) * (q - 1); }
};

// Deterministic toy keygen: draws candidate primes of exactly
// `bits_per_prime` bits from the seeded generator until it finds a distinct
// pair admitting a public exponent.  Throws std::invalid_argument when
// bits_per_prime < 2 and std::runtime_error when the retry budget runs out
// (the size admits no usable pair, e.g. bits_per_prime == 2).
RsaKey keygen(unsigned bits_per_prime, std::uint64_t seed);

nlohmann::json key_to_json(const RsaKey& key);
// Validates primality, N = p*q, e*d = 1 mod phi and the recorded bit length;
// throws FormatError on any mismatch.
RsaKey key_from_json(const nlohmann::json& j);

// ==================== modular arithmetic ====================

// Square-and-multiply; mod_pow(b, 0, m) == 1 for every b (0^0 == 1 here).
// Negative bases are reduced into [0, mod).  Throws for mod < 2.
BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& mod);

// Bezout coefficients: g = gcd(a, b) with g == s*a + t*b exactly.
struct Egcd {
    BigInt g, s, t;
};
Egcd extended_gcd(const BigInt& a, const BigInt& b);

// Repeated-squaring chain of y modulo N: entries[t] = y^(2^t) mod N with
// ceil(log2 N) + 1 entries, enough to cover any exponent below N.
struct PowerChain {
    std::vector<BigInt> entries;
    BigInt modulus;
};
PowerChain powers(const BigInt& y, const BigInt& N);

// Deterministic Miller-Rabin (fixed base set, exact below 3.3e24 which far
// exceeds anything this library generates).
bool is_prime(const BigInt& x);

// Splits N >= 4 into (p, q), p <= q, p*q == N: trial division below 2^16,
// then Brent's cycle-finding rho with a fixed parameter schedule.  For a
// non-semiprime composite this returns some nontrivial split; the caller is
// expected to validate primality of both halves.  Throws on N < 4 or prime N.
std::pair<BigInt, BigInt> factor_semiprime(const BigInt& N);

// d = e^-1 mod (p-1)(q-1), normalized into (0, phi).  Throws when e is not
// invertible.
BigInt recover_secret_exponent(const BigInt& e, const BigInt& p, const BigInt& q);

// Least significant bit of PROD{ chain.entries[t] : bit t of d set } mod N.
// With chain = powers(x^e mod N, N) and d the matching secret exponent this
// is LSB(x).  Throws when d needs more chain entries than supplied.
int decrypt_lsb(const PowerChain& chain, const BigInt& N, const BigInt& d);

}  // namespace trapdoor::numtheory
