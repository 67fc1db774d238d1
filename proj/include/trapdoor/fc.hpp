#pragma once

#include "trapdoor/instances.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace trapdoor::fc {

// Variable of a coloring instance.  Structured instances index a grid
// z_i^j (string number i >= 1, prefix length j in 0..L); flat instances
// use i == 0 and j as the plain variable id.
struct FcVar {
    int i = 0;
    int j = 0;

    friend bool operator==(const FcVar&, const FcVar&) = default;
    friend auto operator<=>(const FcVar&, const FcVar&) = default;
};

// Endpoints must receive different colors.
struct NeqClause {
    FcVar a, b;
};

// Equal colors on the premise pair force equal colors on the conclusion pair.
struct ImplClause {
    FcVar u, v;  // premise
    FcVar k, l;  // conclusion
};

using FcClause = std::variant<NeqClause, ImplClause>;

struct FcUniverse {
    bool structured = false;
    int m = 0;      // structured: number of strings
    int L = 0;      // structured: bits per string (grid has L + 1 columns)
    int count = 0;  // flat: number of variables

    friend bool operator==(const FcUniverse&, const FcUniverse&) = default;
};

struct FcInstance {
    FcUniverse universe;
    std::vector<FcClause> clauses;
    // 1-based bit position guaranteed to be 1 in string 1; carried so the
    // instance can be inverted back to the strings that produced it.
    std::optional<int> anchor;
};

int var_count(const FcUniverse& u);
// Dense index in [0, var_count); throws std::invalid_argument out of range.
int var_index(const FcUniverse& u, const FcVar& v);
FcVar var_at(const FcUniverse& u, int index);
std::string var_name(const FcVar& v);  // "z_1^54" / "v7", for diagnostics

// Structural checks: universe shape, variable ranges, anchor range.
void validate_fc(const FcInstance& inst);

// Clause totals the reduction will emit, computed from tallies alone:
// impl pairs every two prefix positions that consume the same bit, neq
// pairs every two strings with different labels.
struct ClauseCounts {
    long long impl = 0;
    long long neq = 0;
};
ClauseCounts predicted_clause_counts(const std::vector<std::pair<std::string, int>>& sample);

// Reduce labeled binary strings (all the same length) to a coloring
// instance over the prefix grid.  `anchor` is a 1-based bit position that
// must read 1 in the first string; it is stored for inversion.
FcInstance fc_from_labeled_strings(const std::vector<std::pair<std::string, int>>& sample,
                                   int anchor);
FcInstance fc_from_sample(const instances::LabeledSample& s);

// Rebuilds every input string from the clause structure alone (plus the
// anchor).  Exact inverse of fc_from_labeled_strings for its outputs.
std::vector<std::string> infer_strings(const FcInstance& inst);

struct ColoringCheck {
    bool ok = true;
    std::string violation;  // first failed clause, empty when ok
};
// Colors are nonnegative ints indexed by var_index order.
ColoringCheck check_coloring(const FcInstance& inst, const std::vector<int>& colors);

struct MinColoring {
    int k = 0;  // 0 means no coloring exists at all
    std::vector<int> colors;
};
// Exhaustive minimum search over canonical (restricted-growth) colorings;
// returns the lexicographically least optimum.  Refuses instances with
// more than max_vars variables.
MinColoring brute_force_min_coloring(const FcInstance& inst, int max_vars = 12);

nlohmann::json universe_to_json(const FcUniverse& u);
FcUniverse universe_from_json(const nlohmann::json& j);

nlohmann::json fc_to_json(const FcInstance& inst);
FcInstance fc_from_json(const nlohmann::json& j);

// Colorings serialize as an object keyed "i,j" (structured) or "id" (flat),
// one entry per variable.
nlohmann::json coloring_to_json(const FcInstance& inst, const std::vector<int>& colors);
std::vector<int> coloring_from_json(const FcInstance& inst, const nlohmann::json& j);

}  // namespace trapdoor::fc
