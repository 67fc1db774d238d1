#include "trapdoor/instances.hpp"

#include "trapdoor/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <set>

namespace trapdoor::instances {

namespace mp = boost::multiprecision;
using numtheory::PowerChain;

BitLayout make_layout(const BigInt& N, const BigInt& e) {
    if (N < 2) throw std::invalid_argument("make_layout: N must be >= 2");
    if (e < 0) throw std::invalid_argument("make_layout: negative exponent");
    BitLayout layout;
    layout.n = bit_length(N);
    if (bit_length(e) > layout.n)
        throw std::invalid_argument("make_layout: e does not fit in the field width");
    const unsigned chain_len = ceil_log2(N) + 1;
    layout.fields_per_example = chain_len + 2;
    layout.total_bits = layout.n * layout.fields_per_example;
    layout.lsb_of_n_position = layout.n * (chain_len + 1);  // 1-based
    return layout;
}

namespace {

void append_field(std::string& out, const BigInt& value, unsigned width) {
    for (unsigned i = width; i-- > 0;)
        out.push_back(mp::bit_test(value, i) ? '1' : '0');
}

BigInt read_field(const std::string& w, unsigned field, unsigned width) {
    BigInt v = 0;
    const std::size_t off = std::size_t(field) * width;
    for (unsigned i = 0; i < width; ++i) {
        v <<= 1;
        if (w[off + i] == '1') v |= 1;
    }
    return v;
}

}  // namespace

std::string encode_example(const PowerChain& chain, const BigInt& N, const BigInt& e,
                           const BitLayout& layout) {
    if (chain.entries.size() + 2 != layout.fields_per_example)
        throw std::invalid_argument("encode_example: chain length does not match layout");
    std::string out;
    out.reserve(layout.total_bits);
    for (const BigInt& entry : chain.entries) {
        if (bit_length(entry) > layout.n)
            throw std::invalid_argument("encode_example: chain entry wider than field");
        append_field(out, entry, layout.n);
    }
    append_field(out, N, layout.n);
    append_field(out, e, layout.n);
    return out;
}

DecodedExample decode_example(const std::string& w, const BitLayout& layout) {
    if (w.size() != layout.total_bits)
        throw FormatError("decode_example: bit string length does not match layout");
    for (char c : w)
        if (c != '0' && c != '1') throw FormatError("decode_example: non-binary character");

    DecodedExample d;
    const unsigned chain_len = layout.fields_per_example - 2;
    d.N = read_field(w, chain_len, layout.n);
    d.e = read_field(w, chain_len + 1, layout.n);
    if (d.N < 2) throw FormatError("decode_example: decoded modulus below 2");
    d.chain.modulus = d.N;
    d.chain.entries.reserve(chain_len);
    for (unsigned t = 0; t < chain_len; ++t) {
        BigInt entry = read_field(w, t, layout.n);
        if (entry >= d.N)
            throw FormatError("decode_example: chain entry not reduced modulo the modulus");
        d.chain.entries.push_back(std::move(entry));
    }
    for (unsigned t = 1; t < chain_len; ++t)
        if (d.chain.entries[t] != (d.chain.entries[t - 1] * d.chain.entries[t - 1]) % d.N)
            throw FormatError("decode_example: squaring invariant violated (corrupted instance)");
    return d;
}

LabeledSample generate_sample(const numtheory::RsaKey& key, std::size_t m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("generate_sample: need at least one example");
    if (BigInt(static_cast<std::uint64_t>(m)) > key.N)
        throw std::invalid_argument("generate_sample: more examples than residues");

    LabeledSample sample;
    sample.N = key.N;
    sample.e = key.e;
    sample.layout = make_layout(key.N, key.e);

    Rng rng(seed);
    std::set<BigInt> seen;
    while (seen.size() < m) {
        BigInt x = rng.uniform_below(key.N);
        if (!seen.insert(x).second) continue;
        LabeledExample ex;
        ex.x = x;
        ex.b = static_cast<int>(x & 1);
        BigInt y = numtheory::mod_pow(x, key.e, key.N);
        ex.w = encode_example(numtheory::powers(y, key.N), key.N, key.e, sample.layout);
        sample.examples.push_back(std::move(ex));
    }
    return sample;
}

nlohmann::json sample_to_json(const LabeledSample& s, bool strip_secrets) {
    nlohmann::json examples = nlohmann::json::array();
    for (const LabeledExample& ex : s.examples) {
        nlohmann::json je{{"w", ex.w}, {"b", ex.b}};
        if (ex.x && !strip_secrets) je["x"] = to_hex(*ex.x);
        examples.push_back(std::move(je));
    }
    return nlohmann::json{
        {"N", to_hex(s.N)},
        {"e", to_hex(s.e)},
        {"layout",
         {{"n", s.layout.n}, {"total_bits", s.layout.total_bits}, {"repetitions", 1}}},
        {"examples", std::move(examples)},
    };
}

LabeledSample sample_from_json(const nlohmann::json& j) {
    LabeledSample s;
    try {
        s.N = from_hex(j.at("N").get<std::string>());
        s.e = from_hex(j.at("e").get<std::string>());
        const auto& jl = j.at("layout");
        if (jl.at("repetitions").get<int>() != 1)
            throw FormatError("sample: only repetitions == 1 is supported");
        s.layout = make_layout(s.N, s.e);
        if (jl.at("n").get<unsigned>() != s.layout.n ||
            jl.at("total_bits").get<unsigned>() != s.layout.total_bits)
            throw FormatError("sample: layout fields disagree with N and e");
        for (const auto& je : j.at("examples")) {
            LabeledExample ex;
            ex.w = je.at("w").get<std::string>();
            ex.b = je.at("b").get<int>();
            if (ex.b != 0 && ex.b != 1) throw FormatError("sample: label must be 0 or 1");
            if (je.contains("x")) ex.x = from_hex(je.at("x").get<std::string>());
            decode_example(ex.w, s.layout);  // validates length, alphabet, chain
            s.examples.push_back(std::move(ex));
        }
    } catch (const nlohmann::json::exception& ex) {
        throw FormatError(std::string("sample: ") + ex.what());
    }
    if (s.examples.empty()) throw FormatError("sample: no examples");
    return s;
}

}  // namespace trapdoor::instances
