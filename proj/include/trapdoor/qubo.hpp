#pragma once

#include "trapdoor/fc.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace trapdoor::qubo {

using Rational = boost::multiprecision::cpp_rational;

// Multilinear polynomial over binary variables.  The variable registry is
// fixed by (m, k): color indicators b_{v,c} at index (v-1)k + (c-1) for
// v in 1..m, c in 1..k, then color-use flags w_c at index mk + (c-1).
// Term keys are sorted sets of variable indices (no repeats: b^2 = b),
// never empty (the constant lives in `offset`) and never zero-weighted.
struct BinaryPolynomial {
    int m = 0, k = 0;
    Rational offset = 0;
    std::map<std::vector<int>, Rational> terms;

    int var_count() const { return m * k + k; }
    int b_index(int v, int c) const { return (v - 1) * k + (c - 1); }
    int w_index(int c) const { return m * k + (c - 1); }

    friend bool operator==(const BinaryPolynomial&, const BinaryPolynomial&) = default;
};

// Same registry, but terms are coefficients of products of Pauli-Z spins
// (+-1 valued), obtained from a BinaryPolynomial via b = (1 - Z)/2.
struct IsingPolynomial {
    int m = 0, k = 0;
    Rational offset = 0;
    std::map<std::vector<int>, Rational> terms;

    int var_count() const { return m * k + k; }

    friend bool operator==(const IsingPolynomial&, const IsingPolynomial&) = default;
};

// Registry name of a variable index: "b_v_c" or "w_c".
std::string var_label(int m, int k, int index);

// Energy function whose minimum encodes a minimum coloring attempt with at
// most k colors: weight A multiplies the hard block (one-hot rows, equal
// colors across inequality clauses, the quartic implication penalty, and the
// b <= w coupling); the soft objective counts the color flags.  Requires
// A >= k + 1 so one hard violation outweighs any possible flag savings.
BinaryPolynomial fc_to_hamiltonian(const fc::FcInstance& F, int k, const Rational& A);
// Default weight A = k + 1.
BinaryPolynomial fc_to_hamiltonian(const fc::FcInstance& F, int k);

// Exact evaluation; bits must hold exactly var_count() entries, each 0 or 1.
Rational energy(const BinaryPolynomial& H, const std::vector<int>& bits);

// Exact substitution b = (1 - Z)/2 and its inverse Z = 1 - 2b.
IsingPolynomial to_ising(const BinaryPolynomial& H);
BinaryPolynomial ising_to_binary(const IsingPolynomial& I);

// Evaluates the spin polynomial at Z_i = 1 - 2*bits[i]; equals
// energy(H, bits) whenever I = to_ising(H).
Rational ising_energy(const IsingPolynomial& I, const std::vector<int>& bits);

struct GroundStates {
    Rational energy;
    // Every minimizing assignment, ascending when read as an integer with
    // variable 0 in the least significant bit.
    std::vector<std::vector<int>> states;
};
// Exhaustive enumeration of all 2^var_count assignments; refuses
// (std::invalid_argument) polynomials with more than max_vars variables.
GroundStates ground_states(const BinaryPolynomial& H, int max_vars = 20);

// Reads one color per vertex from the indicator block; nullopt unless every
// vertex has exactly one indicator set.  Colors come back 0-based.
std::optional<std::vector<int>> coloring_from_bits(int m, int k, const std::vector<int>& bits);

nlohmann::json polynomial_to_json(const BinaryPolynomial& H);
BinaryPolynomial polynomial_from_json(const nlohmann::json& j);
nlohmann::json ising_to_json(const IsingPolynomial& I);
IsingPolynomial ising_from_json(const nlohmann::json& j);

}  // namespace trapdoor::qubo
