#include "trapdoor/ilp.hpp"

#include "trapdoor/errors.hpp"
#include "trapdoor/fc.hpp"
#include "trapdoor/instances.hpp"
#include "trapdoor/numtheory.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

using namespace trapdoor;
using namespace trapdoor::ilp;
using fc::FcClause;
using fc::FcInstance;
using fc::FcVar;
using Kind = IlpVar::Kind;
using Family = RowTag::Family;

namespace {

FcVar V(int id) { return FcVar{0, id}; }

FcInstance flat(int n, std::vector<FcClause> clauses) {
    FcInstance inst;
    inst.universe.count = n;
    inst.clauses = std::move(clauses);
    return inst;
}

FcInstance pair_neq() { return flat(2, {fc::NeqClause{V(0), V(1)}}); }

FcInstance quad_impl() { return flat(4, {fc::ImplClause{V(0), V(1), V(2), V(3)}}); }

std::vector<std::string> row_tags(const IlpModel& m) {
    std::vector<std::string> tags;
    for (const IlpRow& r : m.rows) tags.push_back(tag_to_string(r.tag));
    return tags;
}

std::vector<IlpTerm> row_terms(const IlpModel& m, std::size_t r) {
    const IlpRow& row = m.rows.at(r);
    return {m.pool.begin() + row.offset, m.pool.begin() + row.offset + row.len};
}

long long sum_of_color_flags(const IlpModel& m, const std::vector<long long>& values) {
    long long sum = 0;
    for (long long i = 0; i < m.M; ++i) sum += values[static_cast<std::size_t>(i)];
    return sum;
}

int distinct_count(const std::vector<int>& colors) {
    return static_cast<int>(std::set<int>(colors.begin(), colors.end()).size());
}

// Random instance without repeated endpoints inside any clause, so the
// reduction accepts it.
FcInstance random_instance(std::uint64_t seed, int max_vars, int max_clauses) {
    trapdoor::Rng rng(seed);
    const int n = 2 + static_cast<int>(rng.uniform_u64(static_cast<std::uint64_t>(max_vars - 2)));
    const int clauses = static_cast<int>(rng.uniform_u64(static_cast<std::uint64_t>(max_clauses)));
    const auto pick_pair = [&](int& a, int& b) {
        a = static_cast<int>(rng.uniform_u64(static_cast<std::uint64_t>(n - 1)));
        do {
            b = static_cast<int>(rng.uniform_u64(static_cast<std::uint64_t>(n - 1)));
        } while (b == a);
    };
    std::vector<FcClause> list;
    for (int c = 0; c < clauses; ++c) {
        int a = 0, b = 0;
        if (rng.uniform_u64(1) == 0) {
            pick_pair(a, b);
            list.push_back(fc::NeqClause{V(a), V(b)});
        } else {
            int k = 0, l = 0;
            pick_pair(a, b);
            pick_pair(k, l);
            list.push_back(fc::ImplClause{V(a), V(b), V(k), V(l)});
        }
    }
    return flat(n, std::move(list));
}

const char* kGoldenLp =
    "\\ fc_meta {\"universe\":{\"count\":1,\"kind\":\"flat\"}}\n"
    "Minimize\n"
    " obj: w_1\n"
    "Subject To\n"
    " one_color_1: x_1_1 = 1\n"
    " assign_ub_1_1: zhat_1 + 2 x_1_1 <= 3\n"
    " assign_lb_1_1: zhat_1 - 2 x_1_1 >= -1\n"
    " used_1_1: x_1_1 - w_1 <= 0\n"
    "Bounds\n"
    " 0 <= w_1 <= 1\n"
    " 0 <= x_1_1 <= 1\n"
    " 1 <= zhat_1 <= 1\n"
    "General\n"
    " zhat_1\n"
    "Binary\n"
    " w_1\n"
    " x_1_1\n"
    "End\n";

}  // namespace

TEST_SUITE_BEGIN("ilp");

TEST_CASE("two-vertex inequality model has the frozen shape") {
    const IlpModel m = ilp_from_fc(pair_neq());
    CHECK(m.M == 2);
    CHECK(m.Q == 1);
    CHECK(m.R == 0);
    REQUIRE(m.vars.size() == 8);
    const std::vector<std::string> want_vars = {"w_1", "w_2", "x_1_1", "x_1_2",
                                                "x_2_1", "x_2_2", "zhat_1", "zhat_2"};
    for (std::size_t i = 0; i < want_vars.size(); ++i)
        CHECK(var_name(m.vars[i]) == want_vars[i]);
    CHECK(m.vars[6].lo == 1);
    CHECK(m.vars[6].hi == 2);

    const std::vector<std::string> want_rows = {
        "one_color_1", "one_color_2", "assign_ub_1_1", "assign_lb_1_1", "assign_ub_1_2",
        "assign_lb_1_2", "assign_ub_2_1", "assign_lb_2_1", "assign_ub_2_2", "assign_lb_2_2",
        "used_1_1", "used_1_2", "used_2_1", "used_2_2", "neq_1_1", "neq_1_2"};
    CHECK(row_tags(m) == want_rows);

    // Spot-check exact rows: the color difference constant is 2M = 4.
    CHECK(row_terms(m, 0) == std::vector<IlpTerm>{{2, 1}, {3, 1}});
    CHECK(m.rows[0].sense == RowSense::Eq);
    CHECK(m.rows[0].rhs == 1);
    CHECK(row_terms(m, 4) == std::vector<IlpTerm>{{6, 1}, {3, 4}});  // assign_ub_1_2
    CHECK(m.rows[4].rhs == 6);
    CHECK(row_terms(m, 7) == std::vector<IlpTerm>{{7, 1}, {4, -4}});  // assign_lb_2_1
    CHECK(m.rows[7].sense == RowSense::Ge);
    CHECK(m.rows[7].rhs == -3);
    CHECK(row_terms(m, 12) == std::vector<IlpTerm>{{4, 1}, {0, -1}});  // used_2_1
    CHECK(m.rows[12].rhs == 0);
    CHECK(row_terms(m, 15) == std::vector<IlpTerm>{{3, 1}, {5, 1}});  // neq_1_2
    CHECK(m.rows[15].sense == RowSense::Le);
    CHECK(m.rows[15].rhs == 1);
}

TEST_CASE("two-vertex inequality model solves to the frozen optimum") {
    const IlpModel m = ilp_from_fc(pair_neq());
    const IlpOptimum opt = brute_force_ilp(m);
    REQUIRE(opt.feasible);
    CHECK(opt.objective == 2);
    CHECK(opt.values == std::vector<long long>{1, 1, 0, 1, 1, 0, 2, 1});
    CHECK(coloring_from_assignment(m, opt.values) == std::vector<int>{0, 1});
}

TEST_CASE("single-vertex model prints the golden text and round-trips") {
    const IlpModel m = ilp_from_fc(flat(1, {}));
    CHECK(write_lp(m) == kGoldenLp);
    const IlpModel back = parse_lp(kGoldenLp);
    CHECK(back == m);
    CHECK(write_lp(back) == kGoldenLp);
    const IlpOptimum opt = brute_force_ilp(m);
    REQUIRE(opt.feasible);
    CHECK(opt.objective == 1);
    CHECK(opt.values == std::vector<long long>{1, 1, 1});
}

TEST_CASE("implication model prefers the highest color at the lexicographic optimum") {
    const IlpModel m = ilp_from_fc(quad_impl());
    CHECK(m.vars.size() == 29);
    CHECK(m.rows.size() == 4 * (12 + 0 + 1) + 12);
    const IlpOptimum opt = brute_force_ilp(m);
    REQUIRE(opt.feasible);
    CHECK(opt.objective == 1);
    const std::vector<long long> want = {0, 0, 0, 1,              // color flags
                                         0, 0, 0, 1, 0, 0, 0, 1,  // vertex 1, 2
                                         0, 0, 0, 1, 0, 0, 0, 1,  // vertex 3, 4
                                         4, 4, 4, 4,              // colors
                                         1, 0, 1, 0, 0};          // a, b, s, q, qp
    CHECK(opt.values == want);
    CHECK(coloring_from_assignment(m, opt.values) == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("model sizes follow the closed forms, not the bidirectional tallies") {
    // (M, Q, R) triples with handmade clause sets.
    const std::vector<FcInstance> instances = {
        flat(1, {}),
        pair_neq(),
        flat(2, {fc::ImplClause{V(0), V(1), V(1), V(0)}}),
        flat(3,
             {fc::NeqClause{V(0), V(1)}, fc::NeqClause{V(1), V(2)},
              fc::ImplClause{V(0), V(1), V(1), V(2)}, fc::ImplClause{V(0), V(2), V(0), V(1)}}),
        flat(5,
             {fc::NeqClause{V(0), V(4)}, fc::NeqClause{V(2), V(3)}, fc::NeqClause{V(1), V(2)},
              fc::ImplClause{V(0), V(1), V(2), V(3)}, fc::ImplClause{V(1), V(2), V(3), V(4)},
              fc::ImplClause{V(0), V(2), V(1), V(3)}, fc::ImplClause{V(2), V(3), V(0), V(4)}}),
    };
    for (const FcInstance& inst : instances) {
        const IlpModel m = ilp_from_fc(inst);
        const long long vars = predicted_var_count(m.M, m.R);
        const long long rows = predicted_row_count(m.M, m.Q, m.R);
        CHECK(static_cast<long long>(m.vars.size()) == vars);
        CHECK(static_cast<long long>(m.rows.size()) == rows);
        // Totals under a bidirectional color-indicator encoding; ours is
        // forward-only, so they must differ for every nonempty universe.
        const long long alt_vars = 2 * m.M * (m.M + 1) + 5 * m.R;
        const long long alt_rows = m.M * (4 * m.M + m.Q + 1) + 12 * m.R;
        CHECK(vars != alt_vars);
        CHECK(rows != alt_rows);
    }
}

TEST_CASE("reduction rejects clauses that name a variable twice") {
    CHECK_THROWS_AS((void)ilp_from_fc(flat(2, {fc::NeqClause{V(0), V(0)}})),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)ilp_from_fc(flat(2, {fc::ImplClause{V(0), V(0), V(0), V(1)}})),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)ilp_from_fc(flat(2, {fc::ImplClause{V(0), V(1), V(1), V(1)}})),
                    std::invalid_argument);
}

TEST_CASE("lifted colorings satisfy the model even when not minimal") {
    const FcInstance inst = pair_neq();
    const IlpModel m = ilp_from_fc(inst);

    const std::vector<long long> lift = assignment_from_coloring(inst, {0, 1});
    CHECK(verify_assignment(m, lift).ok);
    CHECK(lift == std::vector<long long>{1, 1, 1, 0, 0, 1, 1, 2});

    // Gap-ridden color names renumber by first appearance.
    const std::vector<long long> gappy = assignment_from_coloring(inst, {5, 3});
    CHECK(gappy == lift);

    // A wasteful but valid coloring of a clause-free instance.
    const FcInstance loose = flat(3, {});
    const IlpModel lm = ilp_from_fc(loose);
    CHECK(verify_assignment(lm, assignment_from_coloring(loose, {0, 1, 2})).ok);

    // An invalid coloring lifts to an assignment the model rejects.
    const AssignmentCheck bad = verify_assignment(m, assignment_from_coloring(inst, {0, 0}));
    CHECK_FALSE(bad.ok);
    CHECK(bad.violation.find("neq_1_1") != std::string::npos);

    CHECK_THROWS_AS((void)assignment_from_coloring(inst, {0}), std::invalid_argument);
}

TEST_CASE("flag sum matches used colors only at the optimum") {
    const FcInstance inst = flat(2, {});
    const IlpModel m = ilp_from_fc(inst);

    // Feasible hand assignment wasting a flag: both vertices on color 1.
    const std::vector<long long> wasteful = {1, 1, 1, 0, 1, 0, 1, 1};
    CHECK(verify_assignment(m, wasteful).ok);
    CHECK(sum_of_color_flags(m, wasteful) == 2);
    CHECK(distinct_count(coloring_from_assignment(m, wasteful)) == 1);

    // At the optimum the two quantities agree.
    const IlpOptimum opt = brute_force_ilp(m);
    REQUIRE(opt.feasible);
    CHECK(opt.objective == 1);
    CHECK(opt.values == std::vector<long long>{0, 1, 0, 1, 0, 1, 2, 2});
    CHECK(distinct_count(coloring_from_assignment(m, opt.values)) == 1);
}

TEST_CASE("search reports infeasibility distinctly") {
    // Force the disjunction flag of the only implication to zero.
    IlpModel m = ilp_from_fc(quad_impl());
    m.vars[static_cast<std::size_t>(m.aux_index(1, 2))].hi = 0;
    const IlpOptimum opt = brute_force_ilp(m);
    CHECK_FALSE(opt.feasible);
    CHECK(opt.objective == 0);
    CHECK(opt.values.empty());

    // Pin the only vertex color outside its reachable band.
    IlpModel one = ilp_from_fc(flat(1, {}));
    one.vars[2].lo = 2;
    one.vars[2].hi = 2;
    const IlpOptimum opt1 = brute_force_ilp(one);
    CHECK_FALSE(opt1.feasible);
}

TEST_CASE("search honors its node budget") {
    const IlpModel m = ilp_from_fc(pair_neq());
    CHECK_THROWS_AS((void)brute_force_ilp(m, 4), std::runtime_error);   // fewer than variables
    CHECK_THROWS_AS((void)brute_force_ilp(m, 10), std::runtime_error);  // mid-search
}

TEST_CASE("assignment checker pinpoints every single-bit mutation") {
    const IlpModel m = ilp_from_fc(pair_neq());
    const std::vector<long long> good = {1, 1, 0, 1, 1, 0, 2, 1};
    REQUIRE(verify_assignment(m, good).ok);
    for (std::size_t i = 0; i < 6; ++i) {  // every binary variable
        std::vector<long long> bad = good;
        bad[i] = 1 - bad[i];
        const AssignmentCheck check = verify_assignment(m, bad);
        CHECK_FALSE(check.ok);
        CHECK_FALSE(check.violation.empty());
    }
    for (std::size_t i = 6; i < 8; ++i) {  // color variables, stay in bounds
        std::vector<long long> bad = good;
        bad[i] = 3 - bad[i];
        CHECK_FALSE(verify_assignment(m, bad).ok);
    }

    std::vector<long long> outside = good;
    outside[6] = 3;
    const AssignmentCheck check = verify_assignment(m, outside);
    CHECK_FALSE(check.ok);
    CHECK(check.violation.find("zhat") != std::string::npos);
    CHECK(check.violation.find("outside") != std::string::npos);

    CHECK_FALSE(verify_assignment(m, {1, 1}).ok);
    CHECK_THROWS_AS((void)coloring_from_assignment(m, outside), VerifyFailure);
}

TEST_CASE("optimum agrees with the exhaustive coloring oracle") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const FcInstance inst = random_instance(seed, 5, 3);
        const fc::MinColoring mc = fc::brute_force_min_coloring(inst);
        REQUIRE(mc.k >= 1);
        const IlpModel m = ilp_from_fc(inst);
        const IlpOptimum opt = brute_force_ilp(m);
        REQUIRE(opt.feasible);
        CHECK(opt.objective == mc.k);

        const std::vector<int> colors = coloring_from_assignment(m, opt.values);
        CHECK(fc::check_coloring(inst, colors).ok);
        CHECK(distinct_count(colors) == mc.k);

        const std::vector<long long> lift = assignment_from_coloring(inst, colors);
        CHECK(verify_assignment(m, lift).ok);
        CHECK(sum_of_color_flags(m, lift) == mc.k);

        CHECK(verify_assignment(m, assignment_from_coloring(inst, mc.colors)).ok);
    }
}

TEST_CASE("reconstruction inverts the reduction") {
    SUBCASE("canonical clause order round-trips exactly") {
        const FcInstance inst = flat(3, {fc::ImplClause{V(0), V(1), V(1), V(2)},
                                         fc::NeqClause{V(0), V(2)}});
        const IlpModel m = ilp_from_fc(inst);
        const FcInstance back = fc_from_ilp(m);
        CHECK(fc::fc_to_json(back) == fc::fc_to_json(inst));
        CHECK(ilp_from_fc(back) == m);
    }
    SUBCASE("inequality-first input comes back implication-first") {
        const FcInstance inst = flat(3, {fc::NeqClause{V(0), V(2)},
                                         fc::ImplClause{V(0), V(1), V(1), V(2)}});
        const IlpModel m = ilp_from_fc(inst);
        const FcInstance back = fc_from_ilp(m);
        CHECK(fc::fc_to_json(back) != fc::fc_to_json(inst));
        REQUIRE(back.clauses.size() == 2);
        CHECK(std::holds_alternative<fc::ImplClause>(back.clauses[0]));
        CHECK(ilp_from_fc(back) == m);  // same model either way
    }
    SUBCASE("grid universe and anchor survive the round trip") {
        FcInstance inst;
        inst.universe.structured = true;
        inst.universe.m = 1;
        inst.universe.L = 2;
        inst.anchor = 2;
        inst.clauses = {fc::ImplClause{FcVar{1, 0}, FcVar{1, 1}, FcVar{1, 1}, FcVar{1, 2}}};
        const IlpModel m = ilp_from_fc(inst);
        CHECK(m.M == 3);
        CHECK(m.fc_anchor == 2);
        const FcInstance back = fc_from_ilp(m);
        CHECK(fc::fc_to_json(back) == fc::fc_to_json(inst));
        CHECK(back.anchor == 2);
        const IlpModel reparsed = parse_lp(write_lp(m));
        CHECK(reparsed == m);
        CHECK(fc::fc_to_json(fc_from_ilp(reparsed)) == fc::fc_to_json(inst));
    }
}

TEST_CASE("reconstruction rejects models the reduction cannot emit") {
    const IlpModel m = ilp_from_fc(pair_neq());
    REQUIRE_NOTHROW((void)fc_from_ilp(m));

    SUBCASE("right-hand side") {
        IlpModel bad = m;
        bad.rows[15].rhs = 2;
        CHECK_THROWS_AS((void)fc_from_ilp(bad), FormatError);
    }
    SUBCASE("coefficient") {
        IlpModel bad = m;
        bad.pool[bad.rows[4].offset + 1].coeff = 3;
        CHECK_THROWS_AS((void)fc_from_ilp(bad), FormatError);
    }
    SUBCASE("term variable") {
        IlpModel bad = m;
        bad.pool[bad.rows[14].offset].var = bad.x_index(1, 2);
        CHECK_THROWS_AS((void)fc_from_ilp(bad), FormatError);
    }
    SUBCASE("sense") {
        IlpModel bad = m;
        bad.rows[0].sense = RowSense::Le;
        CHECK_THROWS_AS((void)fc_from_ilp(bad), FormatError);
    }
    SUBCASE("tag") {
        IlpModel bad = m;
        bad.rows[0].tag.a = 2;
        CHECK_THROWS_AS((void)fc_from_ilp(bad), FormatError);
    }
    SUBCASE("row order") {
        IlpModel bad = m;
        std::swap(bad.rows[14], bad.rows[15]);
        CHECK_THROWS_AS((void)fc_from_ilp(bad), FormatError);
    }
    SUBCASE("variable bounds") {
        IlpModel bad = m;
        bad.vars[7].hi = 3;
        CHECK_THROWS_AS((void)fc_from_ilp(bad), FormatError);
    }
    SUBCASE("universe size") {
        IlpModel bad = m;
        bad.fc_universe.count = 3;
        CHECK_THROWS_AS((void)fc_from_ilp(bad), FormatError);
    }
    SUBCASE("declared clause counts") {
        IlpModel bad = m;
        bad.Q = 0;
        CHECK_THROWS_AS((void)fc_from_ilp(bad), FormatError);
    }
}

TEST_CASE("model text parser rejects off-format documents") {
    const auto reject = [](const std::string& text) {
        CHECK_THROWS_AS((void)parse_lp(text), FormatError);
    };
    const std::string golden = kGoldenLp;

    reject("Minimize\n obj: w_1\nSubject To\nBounds\nGeneral\nBinary\nEnd\n");
    reject(golden + "stray\n");

    const auto replaced = [&](const std::string& from, const std::string& to) {
        std::string text = golden;
        const std::size_t at = text.find(from);
        REQUIRE(at != std::string::npos);
        return text.replace(at, from.size(), to);
    };
    reject(replaced("Binary\n", ""));                                    // missing section
    reject(replaced(" 0 <= w_1 <= 1", " 0 <= y_1 <= 1"));                // unknown family
    reject(replaced(" 0 <= w_1 <= 1", " 00 <= w_1 <= 1"));               // non-canonical int
    reject(replaced(" one_color_1: x_1_1 = 1", " one_color_1: 1 x_1_1 = 1"));  // explicit unit
    reject(replaced(" one_color_1: x_1_1 = 1", " one_color_1: 0 x_1_1 = 1"));  // zero coeff
    reject(replaced(" one_color_1: x_1_1 = 1", " rainbow_1: x_1_1 = 1"));      // unknown tag
    reject(replaced(" one_color_1: x_1_1 = 1", " one_color_1: x_1_1 == 1"));   // bad sense
    reject(replaced(" one_color_1: x_1_1 = 1", " one_color_1: x_9_9 = 1"));    // unknown name
    reject(replaced(" obj: w_1", " obj: x_1_1"));                        // objective shape
    reject(replaced("General\n zhat_1", "General"));                     // missing general entry
    reject(replaced("Binary\n w_1", "Binary"));                          // missing binary entry
    reject(replaced("Subject To\n", "Subject To\n\n"));                  // blank line
    reject(replaced(" 0 <= x_1_1 <= 1", " 0 <= w_1 <= 1"));              // duplicate name
    reject(replaced("\\ fc_meta {\"universe\":{\"count\":1,\"kind\":\"flat\"}}",
                    "\\ note {\"universe\":{\"count\":1,\"kind\":\"flat\"}}"));
    reject(replaced("{\"count\":1,\"kind\":\"flat\"}", "{\"count\":1,\"kind\":\"grid\"}"));

    // A model that internally disagrees with its declared layout: swap the
    // General entry into Binary.
    reject(replaced("General\n zhat_1\nBinary\n", "General\nBinary\n zhat_1\n"));
}

TEST_CASE("names and tags round-trip and never collide") {
    const FcInstance inst = flat(3, {fc::NeqClause{V(0), V(1)},
                                     fc::ImplClause{V(0), V(1), V(1), V(2)},
                                     fc::ImplClause{V(1), V(2), V(0), V(1)}});
    const IlpModel m = ilp_from_fc(inst);

    std::set<std::string> names;
    for (const IlpVar& v : m.vars) {
        const std::string name = var_name(v);
        names.insert(name);
        const IlpVar parsed = var_from_name(name);
        CHECK(parsed.kind == v.kind);
        CHECK(parsed.i1 == v.i1);
        CHECK(parsed.i2 == v.i2);
    }
    CHECK(names.size() == m.vars.size());

    std::set<std::string> tags;
    for (const IlpRow& row : m.rows) {
        const std::string text = tag_to_string(row.tag);
        tags.insert(text);
        CHECK(tag_from_string(text) == row.tag);
    }
    CHECK(tags.size() == m.rows.size());

    CHECK_THROWS_AS((void)var_from_name("zhat"), FormatError);
    CHECK_THROWS_AS((void)var_from_name("w_0"), FormatError);
    CHECK_THROWS_AS((void)var_from_name("x_1"), FormatError);
    CHECK_THROWS_AS((void)tag_from_string("neq_lt_0"), FormatError);
    CHECK_THROWS_AS((void)tag_from_string("one_color"), FormatError);
}

TEST_CASE("json forms round-trip and reject corruption") {
    const IlpModel m = ilp_from_fc(pair_neq());
    const nlohmann::json j = model_to_json(m);
    CHECK(model_from_json(j) == m);

    {
        nlohmann::json bad = j;
        bad["M"] = 3;
        CHECK_THROWS_AS((void)model_from_json(bad), FormatError);
    }
    {
        nlohmann::json bad = j;
        bad["rows"][0]["sense"] = "=>";
        CHECK_THROWS_AS((void)model_from_json(bad), FormatError);
    }
    {
        nlohmann::json bad = j;
        bad["rows"][0]["rhs"] = 1.5;
        CHECK_THROWS_AS((void)model_from_json(bad), FormatError);
    }
    {
        nlohmann::json bad = j;
        bad["rows"][0]["terms"][0][0] = "t_1";
        CHECK_THROWS_AS((void)model_from_json(bad), FormatError);
    }
    {
        nlohmann::json bad = j;
        bad["vars"][1] = bad["vars"][0];
        CHECK_THROWS_AS((void)model_from_json(bad), FormatError);
    }
    {
        nlohmann::json bad = j;
        bad.erase("Q");
        CHECK_THROWS_AS((void)model_from_json(bad), FormatError);
    }

    const std::vector<long long> good = {1, 1, 0, 1, 1, 0, 2, 1};
    const nlohmann::json aj = assignment_to_json(m, good);
    CHECK(assignment_from_json(m, aj) == good);
    {
        nlohmann::json bad = aj;
        bad["values"].erase("w_1");
        CHECK_THROWS_AS((void)assignment_from_json(m, bad), FormatError);
    }
    {
        nlohmann::json bad = aj;
        bad["values"].erase("w_1");
        bad["values"]["w_9"] = 1;
        CHECK_THROWS_AS((void)assignment_from_json(m, bad), FormatError);
    }
    {
        nlohmann::json bad = aj;
        bad["values"]["w_1"] = 0.5;
        CHECK_THROWS_AS((void)assignment_from_json(m, bad), FormatError);
    }
}

TEST_CASE("a reduced trapdoor sample survives both inversions at full size") {
    const numtheory::RsaKey key = numtheory::keygen(4, 7);
    const instances::LabeledSample sample = instances::generate_sample(key, 2, 21);
    const FcInstance inst = fc::fc_from_sample(sample);
    const IlpModel m = ilp_from_fc(inst);
    CHECK(static_cast<long long>(m.vars.size()) == predicted_var_count(m.M, m.R));
    CHECK(static_cast<long long>(m.rows.size()) == predicted_row_count(m.M, m.Q, m.R));

    const FcInstance back = fc_from_ilp(m);
    CHECK(fc::fc_to_json(back) == fc::fc_to_json(inst));

    const IlpModel reparsed = parse_lp(write_lp(m));
    CHECK(reparsed == m);
}

TEST_SUITE_END();
