#include "trapdoor/qubo.hpp"

#include "trapdoor/errors.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <variant>

namespace trapdoor::qubo {

namespace {

using boost::multiprecision::cpp_int;

void add_term(BinaryPolynomial& p, std::vector<int> idx, const Rational& c) {
    if (c == 0) return;
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());  // b*b = b
    if (idx.empty()) {
        p.offset += c;
        return;
    }
    const auto it = p.terms.find(idx);
    if (it == p.terms.end()) {
        p.terms.emplace(std::move(idx), c);
    } else {
        it->second += c;
        if (it->second == 0) p.terms.erase(it);
    }
}

template <typename Poly>
void add_plain(Poly& p, std::vector<int> idx, const Rational& c) {
    if (c == 0) return;
    if (idx.empty()) {
        p.offset += c;
        return;
    }
    const auto it = p.terms.find(idx);
    if (it == p.terms.end()) {
        p.terms.emplace(std::move(idx), c);
    } else {
        it->second += c;
        if (it->second == 0) p.terms.erase(it);
    }
}

int vertex_of(const fc::FcUniverse& u, const fc::FcVar& v) {
    return fc::var_index(u, v) + 1;
}

std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

Rational parse_rational(const std::string& s, const char* what) {
    cpp_int num, den = 1;
    try {
        const std::size_t slash = s.find('/');
        num = cpp_int(s.substr(0, slash));
        if (slash != std::string::npos) den = cpp_int(s.substr(slash + 1));
    } catch (const std::exception&) {
        throw FormatError(std::string(what) + ": bad rational '" + s + "'");
    }
    if (den <= 0) throw FormatError(std::string(what) + ": bad rational '" + s + "'");
    const Rational r(num, den);
    if (rational_to_string(r) != s)
        throw FormatError(std::string(what) + ": rational '" + s + "' is not in lowest terms");
    return r;
}

void check_bits(int n, const std::vector<int>& bits, const char* what) {
    if (static_cast<int>(bits.size()) != n)
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(n) +
                                    " bits, got " + std::to_string(bits.size()));
    for (const int b : bits)
        if (b != 0 && b != 1)
            throw std::invalid_argument(std::string(what) + ": bits must be 0 or 1");
}

}  // namespace

std::string var_label(int m, int k, int index) {
    if (k < 1 || m < 1 || index < 0 || index >= m * k + k)
        throw std::invalid_argument("var_label: index out of range");
    if (index < m * k)
        return "b_" + std::to_string(index / k + 1) + "_" + std::to_string(index % k + 1);
    return "w_" + std::to_string(index - m * k + 1);
}

BinaryPolynomial fc_to_hamiltonian(const fc::FcInstance& F, int k, const Rational& A) {
    fc::validate_fc(F);
    const int m = fc::var_count(F.universe);
    if (m < 1) throw std::invalid_argument("fc_to_hamiltonian: empty variable universe");
    if (k < 1) throw std::invalid_argument("fc_to_hamiltonian: color budget must be positive");
    if (A < k + 1)
        throw std::invalid_argument(
            "fc_to_hamiltonian: penalty weight must be at least the color budget plus one");
    if (static_cast<long long>(m) * k + k > 1'000'000)
        throw std::invalid_argument("fc_to_hamiltonian: polynomial would be too large");

    BinaryPolynomial H;
    H.m = m;
    H.k = k;
    const auto b = [&](int v, int c) { return H.b_index(v, c); };

    // Exactly-one-color rows: (1 - sum_c b_{v,c})^2, multilinear.
    for (int v = 1; v <= m; ++v) {
        add_term(H, {}, A);
        for (int c = 1; c <= k; ++c) add_term(H, {b(v, c)}, -A);
        for (int c = 1; c <= k; ++c)
            for (int d = c + 1; d <= k; ++d) add_term(H, {b(v, c), b(v, d)}, 2 * A);
    }
    // Clause penalties.
    for (const fc::FcClause& clause : F.clauses) {
        if (const auto* neq = std::get_if<fc::NeqClause>(&clause)) {
            const int u = vertex_of(F.universe, neq->a);
            const int v = vertex_of(F.universe, neq->b);
            for (int c = 1; c <= k; ++c) add_term(H, {b(u, c), b(v, c)}, A);
        } else {
            const auto& impl = std::get<fc::ImplClause>(clause);
            const int u = vertex_of(F.universe, impl.u);
            const int v = vertex_of(F.universe, impl.v);
            const int p = vertex_of(F.universe, impl.k);
            const int q = vertex_of(F.universe, impl.l);
            for (int c = 1; c <= k; ++c) add_term(H, {b(u, c), b(v, c)}, A);
            for (int c = 1; c <= k; ++c)
                for (int d = 1; d <= k; ++d)
                    add_term(H, {b(u, c), b(v, c), b(p, d), b(q, d)}, -A);
        }
    }
    // Flag coupling b_{v,c} <= w_c and the soft color count.
    for (int v = 1; v <= m; ++v)
        for (int c = 1; c <= k; ++c) {
            add_term(H, {b(v, c)}, A);
            add_term(H, {b(v, c), H.w_index(c)}, -A);
        }
    for (int c = 1; c <= k; ++c) add_term(H, {H.w_index(c)}, 1);
    return H;
}

BinaryPolynomial fc_to_hamiltonian(const fc::FcInstance& F, int k) {
    return fc_to_hamiltonian(F, k, Rational(k) + 1);
}

Rational energy(const BinaryPolynomial& H, const std::vector<int>& bits) {
    check_bits(H.var_count(), bits, "energy");
    Rational total = H.offset;
    for (const auto& [idx, coeff] : H.terms) {
        bool active = true;
        for (const int i : idx)
            if (bits[static_cast<std::size_t>(i)] == 0) {
                active = false;
                break;
            }
        if (active) total += coeff;
    }
    return total;
}

IsingPolynomial to_ising(const BinaryPolynomial& H) {
    IsingPolynomial I;
    I.m = H.m;
    I.k = H.k;
    I.offset = H.offset;
    for (const auto& [idx, coeff] : H.terms) {
        const unsigned n = static_cast<unsigned>(idx.size());
        Rational scaled = coeff;
        for (unsigned i = 0; i < n; ++i) scaled /= 2;
        for (unsigned sub = 0; sub < (1u << n); ++sub) {
            std::vector<int> subset;
            for (unsigned i = 0; i < n; ++i)
                if (sub & (1u << i)) subset.push_back(idx[i]);
            const bool odd = subset.size() % 2 == 1;
            add_plain(I, std::move(subset), odd ? -scaled : scaled);
        }
    }
    return I;
}

BinaryPolynomial ising_to_binary(const IsingPolynomial& I) {
    BinaryPolynomial H;
    H.m = I.m;
    H.k = I.k;
    H.offset = I.offset;
    for (const auto& [idx, coeff] : I.terms) {
        const unsigned n = static_cast<unsigned>(idx.size());
        for (unsigned sub = 0; sub < (1u << n); ++sub) {
            std::vector<int> subset;
            for (unsigned i = 0; i < n; ++i)
                if (sub & (1u << i)) subset.push_back(idx[i]);
            Rational c = coeff;
            for (std::size_t i = 0; i < subset.size(); ++i) c *= -2;
            add_term(H, std::move(subset), c);
        }
    }
    return H;
}

Rational ising_energy(const IsingPolynomial& I, const std::vector<int>& bits) {
    check_bits(I.var_count(), bits, "ising_energy");
    Rational total = I.offset;
    for (const auto& [idx, coeff] : I.terms) {
        int sign = 1;
        for (const int i : idx) sign *= 1 - 2 * bits[static_cast<std::size_t>(i)];
        total += sign * coeff;
    }
    return total;
}

GroundStates ground_states(const BinaryPolynomial& H, int max_vars) {
    const int n = H.var_count();
    if (n > max_vars)
        throw std::invalid_argument("ground_states: " + std::to_string(n) +
                                    " variables exceed the limit of " +
                                    std::to_string(max_vars));
    if (n > 62) throw std::invalid_argument("ground_states: variable count too large");
    for (const auto& [idx, coeff] : H.terms) {
        (void)coeff;
        if (idx.empty() || idx.front() < 0 || idx.back() >= n)
            throw std::invalid_argument("ground_states: malformed term");
    }

    std::vector<std::uint64_t> masks;
    masks.reserve(H.terms.size());
    std::vector<Rational> coeffs;
    coeffs.reserve(H.terms.size());
    for (const auto& [idx, coeff] : H.terms) {
        std::uint64_t mask = 0;
        for (const int i : idx) mask |= std::uint64_t{1} << i;
        masks.push_back(mask);
        coeffs.push_back(coeff);
    }

    // Integer fast path when every coefficient is a modest integer.
    bool integral = denominator(H.offset) == 1;
    long long magnitude_sum = 0;
    const long long cap = std::int64_t{1} << 56;
    std::vector<long long> int_coeffs;
    if (integral) {
        const cpp_int off = numerator(H.offset);
        integral = off > -cap && off < cap;
        if (integral) magnitude_sum = std::abs(off.convert_to<long long>());
    }
    if (integral)
        for (const Rational& c : coeffs) {
            if (denominator(c) != 1) {
                integral = false;
                break;
            }
            const cpp_int num = numerator(c);
            if (num <= -cap || num >= cap) {
                integral = false;
                break;
            }
            magnitude_sum += std::abs(num.convert_to<long long>());
            if (magnitude_sum >= cap) {
                integral = false;
                break;
            }
        }

    const std::uint64_t total = std::uint64_t{1} << n;
    std::vector<std::uint64_t> argmins;
    GroundStates out;
    if (integral) {
        for (const Rational& c : coeffs)
            int_coeffs.push_back(numerator(c).convert_to<long long>());
        const long long off = numerator(H.offset).convert_to<long long>();
        long long best = 0;
        for (std::uint64_t a = 0; a < total; ++a) {
            long long e = off;
            for (std::size_t t = 0; t < masks.size(); ++t)
                if ((a & masks[t]) == masks[t]) e += int_coeffs[t];
            if (argmins.empty() || e < best) {
                best = e;
                argmins.clear();
            }
            if (e == best) argmins.push_back(a);
        }
        out.energy = best;
    } else {
        Rational best = 0;
        for (std::uint64_t a = 0; a < total; ++a) {
            Rational e = H.offset;
            for (std::size_t t = 0; t < masks.size(); ++t)
                if ((a & masks[t]) == masks[t]) e += coeffs[t];
            if (argmins.empty() || e < best) {
                best = e;
                argmins.clear();
            }
            if (e == best) argmins.push_back(a);
        }
        out.energy = best;
    }
    out.states.reserve(argmins.size());
    for (const std::uint64_t a : argmins) {
        std::vector<int> bits(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) bits[static_cast<std::size_t>(i)] = (a >> i) & 1;
        out.states.push_back(std::move(bits));
    }
    return out;
}

std::optional<std::vector<int>> coloring_from_bits(int m, int k,
                                                   const std::vector<int>& bits) {
    if (m < 1 || k < 1) throw std::invalid_argument("coloring_from_bits: bad registry");
    check_bits(m * k + k, bits, "coloring_from_bits");
    std::vector<int> colors(static_cast<std::size_t>(m));
    for (int v = 0; v < m; ++v) {
        int found = -1;
        for (int c = 0; c < k; ++c) {
            if (bits[static_cast<std::size_t>(v * k + c)] == 1) {
                if (found >= 0) return std::nullopt;
                found = c;
            }
        }
        if (found < 0) return std::nullopt;
        colors[static_cast<std::size_t>(v)] = found;
    }
    return colors;
}

namespace {

template <typename Poly>
nlohmann::json poly_to_json(const Poly& p) {
    nlohmann::json j;
    nlohmann::json vars = nlohmann::json::array();
    for (int i = 0; i < p.var_count(); ++i) vars.push_back(var_label(p.m, p.k, i));
    j["vars"] = std::move(vars);
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [idx, coeff] : p.terms)
        terms.push_back({{"vars", idx}, {"coeff", rational_to_string(coeff)}});
    j["terms"] = std::move(terms);
    j["offset"] = rational_to_string(p.offset);
    return j;
}

template <typename Poly>
Poly poly_from_json(const nlohmann::json& j, const char* what) {
    Poly p;
    try {
        const nlohmann::json& vars = j.at("vars");
        if (!vars.is_array() || vars.empty())
            throw FormatError(std::string(what) + ": missing variable registry");
        int k = 0;
        for (const nlohmann::json& name : vars)
            if (name.get<std::string>().rfind("w_", 0) == 0) ++k;
        const int total = static_cast<int>(vars.size());
        if (k < 1 || (total - k) % k != 0 || total - k < k)
            throw FormatError(std::string(what) + ": registry is not (m, k) shaped");
        p.k = k;
        p.m = (total - k) / k;
        for (int i = 0; i < total; ++i)
            if (vars[static_cast<std::size_t>(i)].get<std::string>() != var_label(p.m, p.k, i))
                throw FormatError(std::string(what) + ": registry name " +
                                  std::to_string(i) + " out of order");
        p.offset = parse_rational(j.at("offset").get<std::string>(), what);
        for (const nlohmann::json& tj : j.at("terms")) {
            const nlohmann::json& iv = tj.at("vars");
            std::vector<int> idx;
            for (const nlohmann::json& e : iv) idx.push_back(e.get<int>());
            if (idx.empty()) throw FormatError(std::string(what) + ": empty term");
            for (std::size_t i = 0; i < idx.size(); ++i) {
                if (idx[i] < 0 || idx[i] >= total)
                    throw FormatError(std::string(what) + ": term variable out of range");
                if (i > 0 && idx[i] <= idx[i - 1])
                    throw FormatError(std::string(what) + ": term variables must increase");
            }
            const Rational coeff = parse_rational(tj.at("coeff").get<std::string>(), what);
            if (coeff == 0) throw FormatError(std::string(what) + ": zero coefficient");
            if (!p.terms.emplace(std::move(idx), coeff).second)
                throw FormatError(std::string(what) + ": duplicate term");
        }
    } catch (const nlohmann::json::exception& ex) {
        throw FormatError(std::string(what) + ": " + ex.what());
    }
    return p;
}

}  // namespace

nlohmann::json polynomial_to_json(const BinaryPolynomial& H) { return poly_to_json(H); }

BinaryPolynomial polynomial_from_json(const nlohmann::json& j) {
    return poly_from_json<BinaryPolynomial>(j, "polynomial json");
}

nlohmann::json ising_to_json(const IsingPolynomial& I) { return poly_to_json(I); }

IsingPolynomial ising_from_json(const nlohmann::json& j) {
    return poly_from_json<IsingPolynomial>(j, "spin polynomial json");
}

}  // namespace trapdoor::qubo
