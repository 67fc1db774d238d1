#include "trapdoor/numtheory.hpp"

#include "trapdoor/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>

namespace trapdoor::numtheory {

namespace mp = boost::multiprecision;

// ==================== modular arithmetic ====================

BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& mod) {
    if (mod < 2) throw std::invalid_argument("mod_pow: modulus must be >= 2");
    if (exp < 0) throw std::invalid_argument("mod_pow: negative exponent");
    BigInt b = base % mod;
    if (b < 0) b += mod;
    BigInt result = 1;
    BigInt e = exp;
    while (e != 0) {
        if (mp::bit_test(e, 0)) result = (result * b) % mod;
        b = (b * b) % mod;
        e >>= 1;
    }
    return result;
}

Egcd extended_gcd(const BigInt& a, const BigInt& b) {
    if (a == 0 && b == 0) throw std::invalid_argument("extended_gcd: gcd(0, 0) undefined");
    // Iterative egcd on absolute values, signs patched at the end.
    BigInt old_r = a < 0 ? BigInt(-a) : a, r = b < 0 ? BigInt(-b) : b;
    BigInt old_s = 1, s = 0;
    BigInt old_t = 0, t = 1;
    while (r != 0) {
        BigInt quot = old_r / r;
        BigInt tmp = old_r - quot * r;
        old_r = r;
        r = tmp;
        tmp = old_s - quot * s;
        old_s = s;
        s = tmp;
        tmp = old_t - quot * t;
        old_t = t;
        t = tmp;
    }
    if (a < 0) old_s = -old_s;
    if (b < 0) old_t = -old_t;
    return {old_r, old_s, old_t};
}

PowerChain powers(const BigInt& y, const BigInt& N) {
    if (N < 2) throw std::invalid_argument("powers: modulus must be >= 2");
    const unsigned count = ceil_log2(N) + 1;
    PowerChain chain;
    chain.modulus = N;
    chain.entries.reserve(count);
    BigInt v = y % N;
    if (v < 0) v += N;
    chain.entries.push_back(v);
    for (unsigned t = 1; t < count; ++t) {
        v = (v * v) % N;
        chain.entries.push_back(v);
    }
    return chain;
}

bool is_prime(const BigInt& x) {
    if (x < 2) return false;
    static const std::array<unsigned, 12> bases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (unsigned b : bases) {
        if (x == b) return true;
        if (x % b == 0) return false;
    }
    // x odd and > 37 here; write x-1 = m * 2^r.
    BigInt m = x - 1;
    unsigned r = 0;
    while (!mp::bit_test(m, 0)) {
        m >>= 1;
        ++r;
    }
    for (unsigned b : bases) {
        BigInt y = mod_pow(b, m, x);
        if (y == 1 || y == x - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < r; ++i) {
            y = (y * y) % x;
            if (y == x - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

// Brent's variant of Pollard's rho.  Deterministic: parameters walk a fixed
// schedule, so equal inputs always take the same path.
BigInt pollard_rho_brent(const BigInt& N) {
    if (!mp::bit_test(N, 0)) return 2;
    for (unsigned c = 1;; ++c) {
        BigInt y = c, m = 128, g = 1, r = 1, q = 1;
        BigInt x, ys;
        auto step = [&](BigInt v) { return (v * v + c) % N; };
        while (g == 1) {
            x = y;
            for (BigInt i = 0; i < r; ++i) y = step(y);
            BigInt k = 0;
            while (k < r && g == 1) {
                ys = y;
                BigInt limit = std::min(m, BigInt(r - k));
                for (BigInt i = 0; i < limit; ++i) {
                    y = step(y);
                    BigInt diff = x > y ? x - y : y - x;
                    q = (q * diff) % N;
                }
                g = mp::gcd(q, N);
                k += m;
            }
            r *= 2;
        }
        if (g == N) {
            // Backtrack one step at a time to recover the lost factor.
            g = 1;
            while (g == 1) {
                ys = step(ys);
                BigInt diff = x > ys ? x - ys : ys - x;
                g = mp::gcd(diff, N);
            }
        }
        if (g != N) return g;  // else retry with the next additive constant
    }
}

}  // namespace

std::pair<BigInt, BigInt> factor_semiprime(const BigInt& N) {
    if (N < 4) throw std::invalid_argument("factor_semiprime: N must be >= 4");
    if (is_prime(N)) throw std::invalid_argument("factor_semiprime: N is prime");
    for (std::uint32_t d = 2; d < (1u << 16); ++d) {
        BigInt bd = d;
        if (bd * bd > N) break;
        if (N % bd == 0) {
            BigInt other = N / bd;
            return {bd, other};
        }
    }
    BigInt g = pollard_rho_brent(N);
    BigInt other = N / g;
    if (g > other) std::swap(g, other);
    return {g, other};
}

BigInt recover_secret_exponent(const BigInt& e, const BigInt& p, const BigInt& q) {
    if (p < 2 || q < 2) throw std::invalid_argument("recover_secret_exponent: bad prime");
    const BigInt phi = (p - 1) * (q - 1);
    if (phi == 0) throw std::invalid_argument("recover_secret_exponent: phi is zero");
    Egcd eg = extended_gcd(e, phi);
    if (eg.g != 1) throw std::invalid_argument("recover_secret_exponent: e not invertible mod phi");
    BigInt d = eg.s % phi;
    if (d < 0) d += phi;
    if (d == 0) d = phi;  // unreachable for e coprime to phi > 1; belt and braces
    return d;
}

int decrypt_lsb(const PowerChain& chain, const BigInt& N, const BigInt& d) {
    if (d < 0) throw std::invalid_argument("decrypt_lsb: negative exponent");
    if (N < 2) throw std::invalid_argument("decrypt_lsb: modulus must be >= 2");
    if (bit_length(d) > chain.entries.size())
        throw std::invalid_argument("decrypt_lsb: exponent needs more chain entries than supplied");
    BigInt product = 1;
    const unsigned top = bit_length(d);
    for (unsigned t = 0; t < top; ++t)
        if (mp::bit_test(d, t)) product = (product * chain.entries[t]) % N;
    return static_cast<int>(product & 1);
}

// ==================== key generation ====================

namespace {

// Smallest e >= 3 with e < phi and gcd(e, phi) == 1, or 0 when none exists.
BigInt pick_public_exponent(const BigInt& phi) {
    for (BigInt e = 3; e < phi; ++e)
        if (mp::gcd(e, phi) == 1) return e;
    return 0;
}

}  // namespace

RsaKey keygen(unsigned bits_per_prime, std::uint64_t seed) {
    if (bits_per_prime < 2) throw std::invalid_argument("keygen: bits_per_prime must be >= 2");
    Rng rng(seed);
    auto draw_prime = [&]() -> BigInt {
        // Bounded scan; density of primes makes failure astronomically
        // unlikely at any size this sees.
        for (int attempt = 0; attempt < 40 * static_cast<int>(bits_per_prime) + 400; ++attempt) {
            BigInt c = rng.random_exact_bits(bits_per_prime);
            if (is_prime(c)) return c;
        }
        return 0;
    };
    for (int attempt = 0; attempt < 200; ++attempt) {
        BigInt p = draw_prime();
        if (p == 0) continue;
        BigInt q = 0;
        for (int inner = 0; inner < 200 && q == 0; ++inner) {
            BigInt c = draw_prime();
            if (c != 0 && c != p) q = c;
        }
        if (q == 0) continue;
        const BigInt phi = (p - 1) * (q - 1);
        const BigInt e = pick_public_exponent(phi);
        if (e == 0) continue;
        RsaKey key;
        key.p = p;
        key.q = q;
        key.N = p * q;
        key.e = e;
        key.d = recover_secret_exponent(e, p, q);
        key.n = bit_length(key.N);
        return key;
    }
    throw std::runtime_error(
        "keygen: no usable prime pair within the retry budget (bits_per_prime too small)");
}

nlohmann::json key_to_json(const RsaKey& key) {
    return nlohmann::json{
        {"p", to_hex(key.p)}, {"q", to_hex(key.q)}, {"N", to_hex(key.N)},
        {"e", to_hex(key.e)}, {"d", to_hex(key.d)}, {"n", key.n},
    };
}

RsaKey key_from_json(const nlohmann::json& j) {
    RsaKey key;
    try {
        key.p = from_hex(j.at("p").get<std::string>());
        key.q = from_hex(j.at("q").get<std::string>());
        key.N = from_hex(j.at("N").get<std::string>());
        key.e = from_hex(j.at("e").get<std::string>());
        key.d = from_hex(j.at("d").get<std::string>());
        key.n = j.at("n").get<unsigned>();
    } catch (const nlohmann::json::exception& ex) {
        throw FormatError(std::string("key: ") + ex.what());
    }
    if (!is_prime(key.p) || !is_prime(key.q) || key.p == key.q)
        throw FormatError("key: p, q must be distinct primes");
    if (key.p * key.q != key.N) throw FormatError("key: N != p*q");
    const BigInt phi = key.phi();
    if (key.e < 2 || key.e >= phi || (key.e * key.d) % phi != 1)
        throw FormatError("key: e*d != 1 mod phi");
    if (key.d <= 1 || key.d >= phi) throw FormatError("key: d out of range");
    if (key.n != bit_length(key.N)) throw FormatError("key: recorded bit length wrong");
    return key;
}

}  // namespace trapdoor::numtheory
