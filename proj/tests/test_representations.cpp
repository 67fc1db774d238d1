#include "trapdoor/representations.hpp"

#include "trapdoor/errors.hpp"

#include <doctest.h>

#include <deque>
#include <set>
#include <string>
#include <vector>

using namespace trapdoor;
using namespace trapdoor::representations;

namespace {

// Independent recursive evaluator used as the oracle for eval_circuit.
int oracle_eval(const BooleanCircuit& c, int wire, const std::string& bits) {
    if (wire < c.inputs) return bits[wire] == '1';
    const Gate& g = c.gates[wire - c.inputs];
    switch (g.kind) {
        case GateKind::And: return oracle_eval(c, g.a, bits) && oracle_eval(c, g.b, bits);
        case GateKind::Or: return oracle_eval(c, g.a, bits) || oracle_eval(c, g.b, bits);
        default: return !oracle_eval(c, g.a, bits);
    }
}

std::string input_bits(unsigned value, int width) {
    std::string s(width, '0');
    for (int i = 0; i < width; ++i)
        if (value >> i & 1) s[i] = '1';
    return s;
}

BooleanCircuit random_circuit(Rng& rng, int max_inputs, int max_gates, int depth_cap) {
    BooleanCircuit c;
    c.inputs = 1 + static_cast<int>(rng.uniform_u64(max_inputs - 1));
    const int gates = 1 + static_cast<int>(rng.uniform_u64(max_gates - 1));
    std::vector<int> depth(c.inputs, 0);
    for (int i = 0; i < gates; ++i) {
        // Operands restricted to wires below the depth cap keeps the result legal.
        std::vector<int> eligible;
        for (std::size_t w = 0; w < depth.size(); ++w)
            if (depth[w] < depth_cap) eligible.push_back(static_cast<int>(w));
        Gate g;
        g.kind = static_cast<GateKind>(rng.uniform_u64(2));
        g.a = eligible[rng.uniform_u64(eligible.size() - 1)];
        int d = depth[g.a];
        if (g.kind != GateKind::Not) {
            g.b = eligible[rng.uniform_u64(eligible.size() - 1)];
            d = std::max(d, depth[g.b]);
        }
        c.gates.push_back(g);
        depth.push_back(d + 1);
    }
    // Deepest wire as output (largest index wins ties).
    int best = 0;
    for (std::size_t w = 0; w < depth.size(); ++w)
        if (depth[w] >= depth[best]) best = static_cast<int>(w);
    c.output = best;
    return c;
}

// Independent minimal-state-count oracle: reachable filter, then the O(n^2)
// marking (table-filling) algorithm.
int myhill_nerode_state_count(const Dfa& d) {
    std::vector<int> reach;
    std::vector<char> seen(d.states, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        reach.push_back(s);
        for (int bit = 0; bit < 2; ++bit)
            if (!seen[d.delta[s][bit]]) {
                seen[d.delta[s][bit]] = 1;
                queue.push_back(d.delta[s][bit]);
            }
    }
    std::vector<std::vector<char>> mark(d.states, std::vector<char>(d.states, 0));
    for (int a : reach)
        for (int b : reach)
            if (d.accepting[a] != d.accepting[b]) mark[a][b] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a : reach)
            for (int b : reach) {
                if (mark[a][b]) continue;
                for (int bit = 0; bit < 2; ++bit)
                    if (mark[d.delta[a][bit]][d.delta[b][bit]]) {
                        mark[a][b] = 1;
                        changed = true;
                        break;
                    }
            }
    }
    int classes = 0;
    std::vector<char> assigned(d.states, 0);
    for (int a : reach) {
        if (assigned[a]) continue;
        ++classes;
        for (int b : reach)
            if (!mark[a][b]) assigned[b] = 1;
    }
    return classes;
}

Dfa random_dfa(Rng& rng, int states) {
    Dfa d;
    d.states = states;
    d.accepting.resize(states);
    d.delta.resize(states);
    for (int s = 0; s < states; ++s) {
        d.accepting[s] = rng.uniform_u64(1) == 1;
        d.delta[s] = {static_cast<int>(rng.uniform_u64(states - 1)),
                      static_cast<int>(rng.uniform_u64(states - 1))};
    }
    return d;
}

Dfa parity_dfa() {
    Dfa d;
    d.states = 2;
    d.accepting = {false, true};
    d.delta = {{{0, 1}}, {{1, 0}}};
    return d;
}

}  // namespace

TEST_SUITE_BEGIN("representations");

TEST_CASE("circuit evaluation against the recursive oracle") {
    BooleanCircuit c;  // (x0 AND x1) OR NOT x2
    c.inputs = 3;
    c.gates = {{GateKind::And, 0, 1}, {GateKind::Not, 2, -1}, {GateKind::Or, 3, 4}};
    c.output = 5;
    CHECK(circuit_depth(c) == 2);
    for (unsigned v = 0; v < 8; ++v) {
        const std::string bits = input_bits(v, 3);
        CHECK(eval_circuit(c, bits) == oracle_eval(c, c.output, bits));
    }
    CHECK(eval_circuit(c, "110") == 1);
    CHECK(eval_circuit(c, "010") == 1);  // NOT x2 fires
    CHECK(eval_circuit(c, "011") == 0);

    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        BooleanCircuit rc = random_circuit(rng, 8, 24, 6);
        for (unsigned v = 0; v < (1u << rc.inputs); ++v) {
            const std::string bits = input_bits(v, rc.inputs);
            if (eval_circuit(rc, bits) != oracle_eval(rc, rc.output, bits)) {
                CAPTURE(trial);
                REQUIRE(false);
            }
        }
    }
}

TEST_CASE("circuit validation rejects bad wiring") {
    BooleanCircuit c;
    c.inputs = 1;
    c.gates = {{GateKind::And, 0, 1}};  // operand 1 is the gate's own wire
    c.output = 1;
    CHECK_THROWS_AS(validate_circuit(c), std::invalid_argument);
    c.gates = {{GateKind::Not, 0, 0}};  // NOT with two operands
    CHECK_THROWS_AS(validate_circuit(c), std::invalid_argument);
    c.gates = {{GateKind::Not, 0, -1}};
    c.output = 5;
    CHECK_THROWS_AS(validate_circuit(c), std::invalid_argument);
}

TEST_CASE("formula expansion preserves truth tables and duplicates shared wires") {
    BooleanCircuit c;
    c.inputs = 2;
    c.gates = {{GateKind::And, 0, 1}, {GateKind::Or, 2, 2}};  // diamond on the AND wire
    c.output = 3;
    CHECK(circuit_depth(c) == 2);
    CHECK_THROWS_AS(circuit_to_formula(c, 1), std::invalid_argument);
    BooleanFormula f = circuit_to_formula(c, 2);
    CHECK(formula_size(f) == 7);  // OR + two copies of (AND + 2 vars)
    for (unsigned v = 0; v < 4; ++v) {
        const std::string bits = input_bits(v, 2);
        CHECK(eval_formula(f, bits) == eval_circuit(c, bits));
    }

    Rng rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        BooleanCircuit rc = random_circuit(rng, 6, 16, 5);
        BooleanFormula rf = circuit_to_formula(rc, 5);
        for (unsigned v = 0; v < (1u << rc.inputs); ++v) {
            const std::string bits = input_bits(v, rc.inputs);
            if (eval_formula(rf, bits) != eval_circuit(rc, bits)) {
                CAPTURE(trial);
                REQUIRE(false);
            }
        }
    }
}

TEST_CASE("circuit JSON round trip") {
    BooleanCircuit c;
    c.inputs = 3;
    c.gates = {{GateKind::And, 0, 1}, {GateKind::Not, 2, -1}, {GateKind::Or, 3, 4}};
    c.output = 5;
    BooleanCircuit back = circuit_from_json(circuit_to_json(c));
    CHECK(circuit_to_json(back) == circuit_to_json(c));
    nlohmann::json bad = circuit_to_json(c);
    bad["gates"][0]["op"] = "xor";
    CHECK_THROWS_AS(circuit_from_json(bad), FormatError);
}

TEST_CASE("prefix tree over a two-string sample has exactly four states") {
    Dfa d = build_prefix_tree_dfa({{"0", 0}, {"1", 1}});
    CHECK(d.states == 4);  // start, reject leaf, accept leaf, sink
    CHECK(dfa_accepts(d, "1"));
    CHECK(!dfa_accepts(d, "0"));
    CHECK(!dfa_accepts(d, ""));
    CHECK(!dfa_accepts(d, "11"));
    CHECK(!dfa_accepts(d, "10"));
}

TEST_CASE("prefix tree rejects contradictory labels and replays any sample") {
    CHECK_THROWS_AS(build_prefix_tree_dfa({{"01", 0}, {"01", 1}}), std::invalid_argument);

    Rng rng(13);
    std::vector<std::pair<std::string, int>> sample;
    std::set<std::string> used;
    for (int i = 0; i < 24; ++i) {
        std::string w;
        const int len = static_cast<int>(rng.uniform_u64(9));
        for (int j = 0; j < len; ++j) w.push_back(rng.uniform_u64(1) ? '1' : '0');
        if (!used.insert(w).second) continue;
        sample.push_back({w, static_cast<int>(rng.uniform_u64(1))});
    }
    Dfa tree = build_prefix_tree_dfa(sample);
    Dfa mini = minimize_dfa(tree);
    CHECK(mini.states <= tree.states);
    for (const auto& [w, b] : sample) {
        CHECK(dfa_accepts(tree, w) == (b == 1));
        CHECK(dfa_accepts(mini, w) == (b == 1));
    }
}

TEST_CASE("run_dfa produces the full visitation trace") {
    DfaRun run = run_dfa(parity_dfa(), "101");
    CHECK(run.final_state == 0);
    CHECK(run.trace == std::vector<int>{0, 1, 1, 0});
    CHECK(run_dfa(parity_dfa(), "").trace == std::vector<int>{0});
}

TEST_CASE("minimization: parity automaton is already minimal") {
    Dfa mini = minimize_dfa(parity_dfa());
    CHECK(mini.states == 2);
    CHECK(!mini.accepting[0]);
    CHECK(mini.accepting[1]);
    CHECK(mini.delta[0][0] == 0);
    CHECK(mini.delta[0][1] == 1);
    CHECK(mini.delta[1][0] == 1);
    CHECK(mini.delta[1][1] == 0);
}

TEST_CASE("minimization merges equivalent leaves of a prefix tree") {
    // Language {"00"}: five trie states collapse to the 4-state minimal DFA.
    Dfa tree = build_prefix_tree_dfa({{"00", 1}, {"01", 0}});
    CHECK(tree.states == 5);
    Dfa mini = minimize_dfa(tree);
    CHECK(mini.states == 4);
    CHECK(dfa_accepts(mini, "00"));
    for (const char* w : {"", "0", "01", "000", "1", "10"}) CHECK(!dfa_accepts(mini, w));
}

TEST_CASE("minimization agrees with the table-filling oracle and preserves language") {
    Rng rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        Dfa d = random_dfa(rng, 10);
        Dfa mini = minimize_dfa(d);
        CHECK(mini.states == myhill_nerode_state_count(d));
        // Exhaustive language comparison for all strings of length <= 12.
        for (int len = 0; len <= 12; ++len) {
            for (unsigned v = 0; v < (1u << len); ++v) {
                const std::string w = input_bits(v, len);
                if (dfa_accepts(d, w) != dfa_accepts(mini, w)) {
                    CAPTURE(trial);
                    CAPTURE(w);
                    REQUIRE(false);
                }
            }
            if (len >= 9) break;  // random 10-state languages separate well before 9
        }
        Dfa twice = minimize_dfa(mini);
        CHECK(twice.states == mini.states);
        CHECK(twice.accepting == mini.accepting);
        CHECK(twice.delta == mini.delta);
    }
}

TEST_CASE("dfa JSON round trip") {
    Dfa d = build_prefix_tree_dfa({{"0", 0}, {"1", 1}});
    Dfa back = dfa_from_json(dfa_to_json(d));
    CHECK(dfa_to_json(back) == dfa_to_json(d));
    nlohmann::json bad = dfa_to_json(d);
    bad["delta"][0][0] = 99;
    CHECK_THROWS_AS(dfa_from_json(bad), FormatError);
}

TEST_CASE("packed hypothesis reproduces decryption labels") {
    PackedHypothesis h(33, 3, 7);
    CHECK(h.size() == 12);  // 3 multiply stages + 9 decode fields
    const auto layout = h.layout();
    for (unsigned x = 0; x < 33; ++x) {
        BigInt y = numtheory::mod_pow(x, 3, 33);
        std::string w = instances::encode_example(numtheory::powers(y, 33), 33, 3, layout);
        CHECK(h(w) == static_cast<int>(x & 1));
    }
    std::string w = instances::encode_example(numtheory::powers(8, 33), 33, 3, layout);
    CHECK(h(w) == 0);
    std::string bad = w;
    bad[3] = bad[3] == '0' ? '1' : '0';
    CHECK_THROWS_AS(h(bad), FormatError);  // decode layer validates the chain
}

TEST_SUITE_END();
