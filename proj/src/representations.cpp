#include "trapdoor/representations.hpp"

#include "trapdoor/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace trapdoor::representations {

// ==================== circuits ====================

void validate_circuit(const BooleanCircuit& c) {
    if (c.inputs < 0) throw std::invalid_argument("circuit: negative input count");
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        const int wire = c.inputs + static_cast<int>(i);
        auto check_operand = [&](int op) {
            if (op < 0 || op >= wire)
                throw std::invalid_argument("circuit: operand must reference an earlier wire");
        };
        check_operand(g.a);
        if (g.kind == GateKind::Not) {
            if (g.b != -1) throw std::invalid_argument("circuit: NOT takes one operand");
        } else {
            check_operand(g.b);
        }
    }
    if (c.output < 0 || c.output >= c.wire_count())
        throw std::invalid_argument("circuit: output wire out of range");
}

int eval_circuit(const BooleanCircuit& c, const std::string& bits) {
    validate_circuit(c);
    if (bits.size() != static_cast<std::size_t>(c.inputs))
        throw std::invalid_argument("eval_circuit: wrong input width");
    std::vector<char> value(c.wire_count());
    for (int i = 0; i < c.inputs; ++i) {
        if (bits[i] != '0' && bits[i] != '1')
            throw std::invalid_argument("eval_circuit: non-binary input");
        value[i] = bits[i] == '1';
    }
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        char v;
        switch (g.kind) {
            case GateKind::And: v = value[g.a] && value[g.b]; break;
            case GateKind::Or: v = value[g.a] || value[g.b]; break;
            default: v = !value[g.a]; break;
        }
        value[c.inputs + i] = v;
    }
    return value[c.output];
}

int circuit_depth(const BooleanCircuit& c) {
    validate_circuit(c);
    std::vector<int> depth(c.wire_count(), 0);
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        int d = depth[g.a];
        if (g.kind != GateKind::Not) d = std::max(d, depth[g.b]);
        depth[c.inputs + i] = d + 1;
    }
    return depth[c.output];
}

nlohmann::json circuit_to_json(const BooleanCircuit& c) {
    nlohmann::json gates = nlohmann::json::array();
    for (const Gate& g : c.gates) {
        const char* op = g.kind == GateKind::And ? "and" : g.kind == GateKind::Or ? "or" : "not";
        nlohmann::json jg{{"op", op}, {"a", g.a}};
        if (g.kind != GateKind::Not) jg["b"] = g.b;
        gates.push_back(std::move(jg));
    }
    return nlohmann::json{{"inputs", c.inputs}, {"gates", std::move(gates)}, {"output", c.output}};
}

BooleanCircuit circuit_from_json(const nlohmann::json& j) {
    BooleanCircuit c;
    try {
        c.inputs = j.at("inputs").get<int>();
        c.output = j.at("output").get<int>();
        for (const auto& jg : j.at("gates")) {
            Gate g;
            const std::string op = jg.at("op").get<std::string>();
            if (op == "and") g.kind = GateKind::And;
            else if (op == "or") g.kind = GateKind::Or;
            else if (op == "not") g.kind = GateKind::Not;
            else throw FormatError("circuit: unknown op " + op);
            g.a = jg.at("a").get<int>();
            if (g.kind != GateKind::Not) g.b = jg.at("b").get<int>();
            c.gates.push_back(g);
        }
    } catch (const nlohmann::json::exception& ex) {
        throw FormatError(std::string("circuit: ") + ex.what());
    }
    try {
        validate_circuit(c);
    } catch (const std::invalid_argument& ex) {
        throw FormatError(ex.what());
    }
    return c;
}

// ==================== formulas ====================

namespace {

BooleanFormula expand_wire(const BooleanCircuit& c, int wire) {
    if (wire < c.inputs) {
        BooleanFormula f;
        f.kind = BooleanFormula::Kind::Var;
        f.var = wire;
        return f;
    }
    const Gate& g = c.gates[wire - c.inputs];
    BooleanFormula f;
    switch (g.kind) {
        case GateKind::And: f.kind = BooleanFormula::Kind::And; break;
        case GateKind::Or: f.kind = BooleanFormula::Kind::Or; break;
        default: f.kind = BooleanFormula::Kind::Not; break;
    }
    f.children.push_back(expand_wire(c, g.a));
    if (g.kind != GateKind::Not) f.children.push_back(expand_wire(c, g.b));
    return f;
}

}  // namespace

BooleanFormula circuit_to_formula(const BooleanCircuit& c, int depth_cap) {
    validate_circuit(c);
    if (circuit_depth(c) > depth_cap)
        throw std::invalid_argument("circuit_to_formula: circuit deeper than the cap");
    return expand_wire(c, c.output);
}

int eval_formula(const BooleanFormula& f, const std::string& bits) {
    switch (f.kind) {
        case BooleanFormula::Kind::Const:
            return f.value;
        case BooleanFormula::Kind::Var:
            if (f.var < 0 || static_cast<std::size_t>(f.var) >= bits.size())
                throw std::invalid_argument("eval_formula: variable out of range");
            return bits[f.var] == '1';
        case BooleanFormula::Kind::Not:
            return !eval_formula(f.children.at(0), bits);
        case BooleanFormula::Kind::And:
            return eval_formula(f.children.at(0), bits) && eval_formula(f.children.at(1), bits);
        default:
            return eval_formula(f.children.at(0), bits) || eval_formula(f.children.at(1), bits);
    }
}

std::size_t formula_size(const BooleanFormula& f) {
    std::size_t n = 1;
    for (const BooleanFormula& child : f.children) n += formula_size(child);
    return n;
}

// ==================== DFAs ====================

void validate_dfa(const Dfa& d) {
    if (d.states < 1) throw std::invalid_argument("dfa: need at least one state");
    if (d.accepting.size() != static_cast<std::size_t>(d.states) ||
        d.delta.size() != static_cast<std::size_t>(d.states))
        throw std::invalid_argument("dfa: table sizes disagree with state count");
    for (const auto& row : d.delta)
        for (int t : row)
            if (t < 0 || t >= d.states) throw std::invalid_argument("dfa: transition out of range");
}

DfaRun run_dfa(const Dfa& d, const std::string& w) {
    validate_dfa(d);
    DfaRun run;
    run.trace.reserve(w.size() + 1);
    int state = 0;
    run.trace.push_back(state);
    for (char c : w) {
        if (c != '0' && c != '1') throw std::invalid_argument("run_dfa: non-binary input");
        state = d.delta[state][c - '0'];
        run.trace.push_back(state);
    }
    run.final_state = state;
    return run;
}

bool dfa_accepts(const Dfa& d, const std::string& w) {
    return d.accepting[run_dfa(d, w).final_state];
}

Dfa build_prefix_tree_dfa(const std::vector<std::pair<std::string, int>>& sample) {
    if (sample.empty()) throw std::invalid_argument("prefix tree: empty sample");
    // Trie states first (created in insertion order), sink appended last.
    std::vector<std::array<int, 2>> child{{-1, -1}};
    std::vector<int> label{-1};  // -1 unlabeled, else 0/1 at end-of-string
    for (const auto& [w, b] : sample) {
        if (b != 0 && b != 1) throw std::invalid_argument("prefix tree: label must be 0 or 1");
        int node = 0;
        for (char c : w) {
            if (c != '0' && c != '1')
                throw std::invalid_argument("prefix tree: non-binary string");
            int next = child[node][c - '0'];
            if (next == -1) {
                next = static_cast<int>(child.size());
                child[node][c - '0'] = next;
                child.push_back({-1, -1});
                label.push_back(-1);
            }
            node = next;
        }
        if (label[node] != -1 && label[node] != b)
            throw std::invalid_argument("prefix tree: contradictory labels for one string");
        label[node] = b;
    }
    Dfa d;
    const int sink = static_cast<int>(child.size());
    d.states = sink + 1;
    d.accepting.assign(d.states, false);
    d.delta.assign(d.states, {sink, sink});
    for (int s = 0; s < sink; ++s) {
        for (int bit = 0; bit < 2; ++bit)
            if (child[s][bit] != -1) d.delta[s][bit] = child[s][bit];
        d.accepting[s] = label[s] == 1;
    }
    return d;
}

namespace {

// Canonical breadth-first renumbering from the start state; unreachable
// states are dropped.  Requires old_start reachable-complete tables.
Dfa bfs_renumber(const std::vector<std::array<int, 2>>& delta, const std::vector<bool>& accepting,
                 int start) {
    std::vector<int> order;
    std::vector<int> name(delta.size(), -1);
    std::deque<int> queue{start};
    name[start] = 0;
    order.push_back(start);
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (int bit = 0; bit < 2; ++bit) {
            int t = delta[s][bit];
            if (name[t] == -1) {
                name[t] = static_cast<int>(order.size());
                order.push_back(t);
                queue.push_back(t);
            }
        }
    }
    Dfa out;
    out.states = static_cast<int>(order.size());
    out.accepting.assign(out.states, false);
    out.delta.assign(out.states, {0, 0});
    for (int s = 0; s < out.states; ++s) {
        const int old = order[s];
        out.accepting[s] = accepting[old];
        for (int bit = 0; bit < 2; ++bit) out.delta[s][bit] = name[delta[old][bit]];
    }
    return out;
}

}  // namespace

Dfa minimize_dfa(const Dfa& input) {
    validate_dfa(input);
    // Restrict to reachable states.
    Dfa d = bfs_renumber(input.delta, input.accepting, 0);

    // Hopcroft partition refinement.
    const int n = d.states;
    std::vector<std::vector<int>> preimage[2];
    for (int bit = 0; bit < 2; ++bit) {
        preimage[bit].assign(n, {});
        for (int s = 0; s < n; ++s) preimage[bit][d.delta[s][bit]].push_back(s);
    }
    std::vector<int> block_of(n, 0);
    std::vector<std::vector<int>> blocks;
    {
        std::vector<int> acc, rej;
        for (int s = 0; s < n; ++s) (d.accepting[s] ? acc : rej).push_back(s);
        if (!rej.empty()) {
            for (int s : rej) block_of[s] = static_cast<int>(blocks.size());
            blocks.push_back(std::move(rej));
        }
        if (!acc.empty()) {
            for (int s : acc) block_of[s] = static_cast<int>(blocks.size());
            blocks.push_back(std::move(acc));
        }
    }
    std::set<std::pair<int, int>> work;  // (block index, bit)
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        work.insert({static_cast<int>(b), 0});
        work.insert({static_cast<int>(b), 1});
    }
    while (!work.empty()) {
        auto [splitter, bit] = *work.begin();
        work.erase(work.begin());
        // States leading into the splitter block under `bit`.
        std::vector<char> hits(n, 0);
        std::set<int> touched;
        for (int t : blocks[splitter])
            for (int s : preimage[bit][t]) {
                hits[s] = 1;
                touched.insert(block_of[s]);
            }
        for (int b : touched) {
            std::vector<int> in, out;
            for (int s : blocks[b]) (hits[s] ? in : out).push_back(s);
            if (in.empty() || out.empty()) continue;
            const int nb = static_cast<int>(blocks.size());
            blocks[b] = std::move(in);
            for (int s : blocks[b]) block_of[s] = b;
            blocks.push_back(std::move(out));
            for (int s : blocks[nb]) block_of[s] = nb;
            for (int sym = 0; sym < 2; ++sym) {
                if (work.count({b, sym})) {
                    work.insert({nb, sym});
                } else {
                    // Split the smaller half (classic Hopcroft economy).
                    work.insert({blocks[b].size() <= blocks[nb].size() ? b : nb, sym});
                }
            }
        }
    }

    // Quotient automaton on blocks, then canonical numbering.
    std::vector<std::array<int, 2>> qdelta(blocks.size());
    std::vector<bool> qacc(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const int rep = blocks[b][0];
        qacc[b] = d.accepting[rep];
        for (int bit = 0; bit < 2; ++bit) qdelta[b][bit] = block_of[d.delta[rep][bit]];
    }
    return bfs_renumber(qdelta, qacc, block_of[0]);
}

nlohmann::json dfa_to_json(const Dfa& d) {
    nlohmann::json accepting = nlohmann::json::array();
    for (int s = 0; s < d.states; ++s)
        if (d.accepting[s]) accepting.push_back(s);
    nlohmann::json delta = nlohmann::json::array();
    for (const auto& row : d.delta) delta.push_back({row[0], row[1]});
    return nlohmann::json{{"states", d.states}, {"accepting", std::move(accepting)},
                          {"delta", std::move(delta)}};
}

Dfa dfa_from_json(const nlohmann::json& j) {
    Dfa d;
    try {
        d.states = j.at("states").get<int>();
        d.accepting.assign(std::max(d.states, 0), false);
        for (int s : j.at("accepting")) {
            if (s < 0 || s >= d.states) throw FormatError("dfa: accepting state out of range");
            d.accepting[s] = true;
        }
        for (const auto& row : j.at("delta"))
            d.delta.push_back({row.at(0).get<int>(), row.at(1).get<int>()});
    } catch (const nlohmann::json::exception& ex) {
        throw FormatError(std::string("dfa: ") + ex.what());
    }
    try {
        validate_dfa(d);
    } catch (const std::invalid_argument& ex) {
        throw FormatError(ex.what());
    }
    return d;
}

// ==================== packed-input hypothesis ====================

PackedHypothesis::PackedHypothesis(const BigInt& N, const BigInt& e, const BigInt& d)
    : N_(N), d_(d), layout_(instances::make_layout(N, e)) {
    if (d < 1) throw std::invalid_argument("hypothesis: secret exponent must be positive");
    if (bit_length(d) > layout_.fields_per_example - 2)
        throw std::invalid_argument("hypothesis: secret exponent too wide for the chain");
}

int PackedHypothesis::operator()(const std::string& w) const {
    instances::DecodedExample dec = instances::decode_example(w, layout_);
    return numtheory::decrypt_lsb(dec.chain, N_, d_);
}

std::size_t PackedHypothesis::size() const {
    std::size_t stages = layout_.fields_per_example;  // decode overhead per field
    for (unsigned t = 0; t < bit_length(d_); ++t)
        if (boost::multiprecision::bit_test(d_, t)) ++stages;
    return stages;
}

}  // namespace trapdoor::representations
