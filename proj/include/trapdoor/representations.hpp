#pragma once

#include "trapdoor/bigint.hpp"
#include "trapdoor/instances.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace trapdoor::representations {

// ==================== boolean circuits ====================

enum class GateKind { And, Or, Not };

struct Gate {
    GateKind kind;
    int a = -1;  // operand wire (always used)
    int b = -1;  // second operand; -1 for Not
};

// Wires 0..inputs-1 are the inputs; gate i drives wire inputs + i.  Operands
// must reference strictly earlier wires, so the list is acyclic by shape.
struct BooleanCircuit {
    int inputs = 0;
    std::vector<Gate> gates;
    int output = 0;

    int wire_count() const { return inputs + static_cast<int>(gates.size()); }
};

// Throws std::invalid_argument on malformed wiring.
void validate_circuit(const BooleanCircuit& c);

// bits[i] is input wire i ('0'/'1' string of length c.inputs).
int eval_circuit(const BooleanCircuit& c, const std::string& bits);

// Longest gate chain from any input to the output (inputs have depth 0).
int circuit_depth(const BooleanCircuit& c);

nlohmann::json circuit_to_json(const BooleanCircuit& c);
BooleanCircuit circuit_from_json(const nlohmann::json& j);

// ==================== boolean formulas ====================

struct BooleanFormula {
    enum class Kind { And, Or, Not, Var, Const } kind = Kind::Const;
    int var = 0;    // for Var
    int value = 0;  // for Const
    std::vector<BooleanFormula> children;
};

// Tree expansion of the circuit from its output wire; shared subcircuits are
// duplicated.  Throws when circuit_depth(c) exceeds depth_cap.
BooleanFormula circuit_to_formula(const BooleanCircuit& c, int depth_cap);

int eval_formula(const BooleanFormula& f, const std::string& bits);
std::size_t formula_size(const BooleanFormula& f);  // node count

// ==================== DFAs over {0, 1} ====================

struct Dfa {
    int states = 0;  // numbered 0..states-1, start state 0
    std::vector<bool> accepting;              // size == states
    std::vector<std::array<int, 2>> delta;    // delta[s][bit]
};

void validate_dfa(const Dfa& d);

struct DfaRun {
    int final_state = 0;
    std::vector<int> trace;  // |w| + 1 states, trace.front() == 0
};
DfaRun run_dfa(const Dfa& d, const std::string& w);
bool dfa_accepts(const Dfa& d, const std::string& w);

// Smallest DFA consistent with the labeled strings: a trie over the sample
// with every absent edge routed to an explicit sink; exactly the positive
// strings are accepted.  Duplicate strings with conflicting labels throw.
Dfa build_prefix_tree_dfa(const std::vector<std::pair<std::string, int>>& sample);

// Hopcroft minimization over reachable states, renumbered canonically by
// breadth-first discovery (start = 0, edges tried in bit order).
Dfa minimize_dfa(const Dfa& d);

nlohmann::json dfa_to_json(const Dfa& d);
Dfa dfa_from_json(const nlohmann::json& j);

// ==================== packed-input hypothesis ====================

// Executable stand-in for the decryption circuit with hardwired key: decodes
// a layout-packed bit string and returns the decrypted label.  The size
// measure counts the multiply stages (popcount of d) plus one decode stage
// per field.
class PackedHypothesis {
public:
    PackedHypothesis(const BigInt& N, const BigInt& e, const BigInt& d);

    int operator()(const std::string& w) const;
    std::size_t size() const;
    const instances::BitLayout& layout() const { return layout_; }

private:
    BigInt N_, d_;
    instances::BitLayout layout_;
};

}  // namespace trapdoor::representations
