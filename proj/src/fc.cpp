#include "trapdoor/fc.hpp"

#include "trapdoor/errors.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace trapdoor::fc {

int var_count(const FcUniverse& u) {
    return u.structured ? u.m * (u.L + 1) : u.count;
}

int var_index(const FcUniverse& u, const FcVar& v) {
    if (u.structured) {
        if (v.i < 1 || v.i > u.m || v.j < 0 || v.j > u.L)
            throw std::invalid_argument("variable " + var_name(v) + " outside the grid");
        return (v.i - 1) * (u.L + 1) + v.j;
    }
    if (v.i != 0 || v.j < 0 || v.j >= u.count)
        throw std::invalid_argument("variable " + var_name(v) + " outside the universe");
    return v.j;
}

FcVar var_at(const FcUniverse& u, int index) {
    if (index < 0 || index >= var_count(u))
        throw std::invalid_argument("variable index out of range");
    if (u.structured) return {index / (u.L + 1) + 1, index % (u.L + 1)};
    return {0, index};
}

std::string var_name(const FcVar& v) {
    if (v.i >= 1) return "z_" + std::to_string(v.i) + "^" + std::to_string(v.j);
    return "v" + std::to_string(v.j);
}

namespace {

void for_each_var(const FcClause& c, const std::function<void(const FcVar&)>& f) {
    if (const auto* n = std::get_if<NeqClause>(&c)) {
        f(n->a);
        f(n->b);
    } else {
        const auto& im = std::get<ImplClause>(c);
        f(im.u);
        f(im.v);
        f(im.k);
        f(im.l);
    }
}

}  // namespace

void validate_fc(const FcInstance& inst) {
    const FcUniverse& u = inst.universe;
    if (u.structured) {
        if (u.m < 1 || u.L < 1)
            throw std::invalid_argument("structured universe needs m >= 1 and L >= 1");
    } else if (u.count < 1) {
        throw std::invalid_argument("flat universe needs at least one variable");
    }
    if (inst.anchor) {
        if (!u.structured) throw std::invalid_argument("anchor requires a structured universe");
        if (*inst.anchor < 1 || *inst.anchor > u.L)
            throw std::invalid_argument("anchor outside [1, L]");
    }
    for (std::size_t t = 0; t < inst.clauses.size(); ++t) {
        for_each_var(inst.clauses[t], [&](const FcVar& v) { var_index(u, v); });
    }
}

ClauseCounts predicted_clause_counts(const std::vector<std::pair<std::string, int>>& sample) {
    long long n1 = 0, n0 = 0, ones = 0, zeros = 0;
    for (const auto& [w, b] : sample) {
        for (char c : w) (c == '1' ? n1 : n0) += 1;
        (b == 1 ? ones : zeros) += 1;
    }
    return {n1 * (n1 - 1) / 2 + n0 * (n0 - 1) / 2, ones * zeros};
}

FcInstance fc_from_labeled_strings(const std::vector<std::pair<std::string, int>>& sample,
                                   int anchor) {
    if (sample.empty()) throw std::invalid_argument("reduction: empty sample");
    const int m = static_cast<int>(sample.size());
    const int L = static_cast<int>(sample[0].first.size());
    if (L < 1) throw std::invalid_argument("reduction: empty string");
    for (const auto& [w, b] : sample) {
        if (static_cast<int>(w.size()) != L)
            throw std::invalid_argument("reduction: strings must share one length");
        if (w.find_first_not_of("01") != std::string::npos)
            throw std::invalid_argument("reduction: strings must be binary");
        if (b != 0 && b != 1) throw std::invalid_argument("reduction: labels must be 0 or 1");
    }
    if (anchor < 1 || anchor > L) throw std::invalid_argument("reduction: anchor outside [1, L]");
    if (sample[0].first[anchor - 1] != '1')
        throw std::invalid_argument("reduction: anchor bit of string 1 must be 1");

    FcInstance inst;
    inst.universe = {true, m, L, 0};
    inst.anchor = anchor;

    // Flattened prefix positions (i, j), j < L, in row-major order; the bit
    // consumed at (i, j) is character j of string i.
    const int P = m * L;
    auto row = [L](int p) { return p / L + 1; };
    auto col = [L](int p) { return p % L; };
    auto bit = [&](int p) { return sample[p / L].first[p % L]; };

    for (int p1 = 0; p1 < P; ++p1)
        for (int p2 = p1 + 1; p2 < P; ++p2)
            if (bit(p1) == bit(p2))
                inst.clauses.push_back(ImplClause{{row(p1), col(p1)},
                                                  {row(p2), col(p2)},
                                                  {row(p1), col(p1) + 1},
                                                  {row(p2), col(p2) + 1}});
    long long impl_emitted = static_cast<long long>(inst.clauses.size());
    for (int i1 = 1; i1 <= m; ++i1)
        for (int i2 = i1 + 1; i2 <= m; ++i2)
            if (sample[i1 - 1].second != sample[i2 - 1].second)
                inst.clauses.push_back(NeqClause{{i1, L}, {i2, L}});

    const ClauseCounts predicted = predicted_clause_counts(sample);
    if (impl_emitted != predicted.impl ||
        static_cast<long long>(inst.clauses.size()) - impl_emitted != predicted.neq)
        throw std::logic_error("reduction: emitted clause totals disagree with the closed form");
    return inst;
}

FcInstance fc_from_sample(const instances::LabeledSample& s) {
    std::vector<std::pair<std::string, int>> flat;
    flat.reserve(s.examples.size());
    for (const auto& ex : s.examples) flat.push_back({ex.w, ex.b});
    return fc_from_labeled_strings(flat, static_cast<int>(s.layout.lsb_of_n_position));
}

std::vector<std::string> infer_strings(const FcInstance& inst) {
    validate_fc(inst);
    if (!inst.universe.structured)
        throw std::invalid_argument("inversion needs a structured universe");
    if (!inst.anchor) throw std::invalid_argument("inversion needs the anchor");
    const int m = inst.universe.m;
    const int L = inst.universe.L;
    const int anchor = *inst.anchor;

    std::vector<std::string> strings(m, std::string(L, '0'));
    strings[0][anchor - 1] = '1';

    // Every prefix position that consumes a 1 is paired with the anchor
    // position (1, anchor - 1) by exactly one clause; the conclusion
    // coordinates name the bit to set.  One linear scan recovers all ones.
    const FcVar anchor_pos{1, anchor - 1};
    long long anchored = 0;
    auto mark = [&](const FcVar& conclusion) {
        if (conclusion.j < 1) throw std::invalid_argument("inversion: malformed conclusion");
        strings[conclusion.i - 1][conclusion.j - 1] = '1';
        ++anchored;
    };
    for (const FcClause& c : inst.clauses) {
        const auto* im = std::get_if<ImplClause>(&c);
        if (!im) continue;
        if (im->u == anchor_pos) mark(im->l);
        else if (im->v == anchor_pos) mark(im->k);
    }
    if (anchored == 0)
        throw std::invalid_argument("inversion: no clause touches the anchor position");
    return strings;
}

namespace {

std::string coloring_violation(const FcInstance& inst, const std::vector<int>& colors,
                               std::size_t idx) {
    const FcUniverse& u = inst.universe;
    const FcClause& c = inst.clauses[idx];
    auto color = [&](const FcVar& v) { return colors[var_index(u, v)]; };
    if (const auto* n = std::get_if<NeqClause>(&c)) {
        if (color(n->a) == color(n->b))
            return "clause " + std::to_string(idx) + " (neq): " + var_name(n->a) + " and " +
                   var_name(n->b) + " both have color " + std::to_string(color(n->a));
        return {};
    }
    const auto& im = std::get<ImplClause>(c);
    if (color(im.u) == color(im.v) && color(im.k) != color(im.l))
        return "clause " + std::to_string(idx) + " (impl): premise " + var_name(im.u) + " = " +
               var_name(im.v) + " = " + std::to_string(color(im.u)) + " but conclusions " +
               var_name(im.k) + " = " + std::to_string(color(im.k)) + ", " + var_name(im.l) +
               " = " + std::to_string(color(im.l));
    return {};
}

}  // namespace

ColoringCheck check_coloring(const FcInstance& inst, const std::vector<int>& colors) {
    validate_fc(inst);
    if (static_cast<int>(colors.size()) != var_count(inst.universe))
        throw std::invalid_argument("coloring size disagrees with the variable count");
    for (int c : colors)
        if (c < 0) throw std::invalid_argument("colors must be nonnegative");
    for (std::size_t t = 0; t < inst.clauses.size(); ++t) {
        std::string v = coloring_violation(inst, colors, t);
        if (!v.empty()) return {false, std::move(v)};
    }
    return {true, {}};
}

MinColoring brute_force_min_coloring(const FcInstance& inst, int max_vars) {
    validate_fc(inst);
    const int n = var_count(inst.universe);
    if (n > max_vars)
        throw std::invalid_argument("minimum-coloring search limited to " +
                                    std::to_string(max_vars) + " variables, instance has " +
                                    std::to_string(n));

    // Clauses become checkable once their last variable is assigned.
    std::vector<std::vector<std::size_t>> ready_at(n);
    for (std::size_t t = 0; t < inst.clauses.size(); ++t) {
        int last = 0;
        for_each_var(inst.clauses[t],
                     [&](const FcVar& v) { last = std::max(last, var_index(inst.universe, v)); });
        ready_at[last].push_back(t);
    }

    std::vector<int> colors(n, -1);
    auto clause_ok = [&](std::size_t t) {
        const FcClause& c = inst.clauses[t];
        auto color = [&](const FcVar& v) { return colors[var_index(inst.universe, v)]; };
        if (const auto* q = std::get_if<NeqClause>(&c)) return color(q->a) != color(q->b);
        const auto& im = std::get<ImplClause>(c);
        return color(im.u) != color(im.v) || color(im.k) == color(im.l);
    };
    // Restricted growth: a fresh color may only follow all smaller ones, so
    // each color class pattern is enumerated once and the first hit at the
    // smallest feasible k is the lexicographically least optimum.
    std::function<bool(int, int, int)> dfs = [&](int t, int used, int k) {
        if (t == n) return true;
        const int hi = std::min(used, k - 1);
        for (int c = 0; c <= hi; ++c) {
            colors[t] = c;
            bool ok = true;
            for (std::size_t idx : ready_at[t])
                if (!clause_ok(idx)) {
                    ok = false;
                    break;
                }
            if (ok && dfs(t + 1, std::max(used, c + 1), k)) return true;
        }
        colors[t] = -1;
        return false;
    };
    for (int k = 1; k <= n; ++k)
        if (dfs(0, 0, k)) return {k, colors};
    return {0, {}};
}

namespace {

nlohmann::json var_to_json(const FcVar& v) {
    return nlohmann::json::array({v.i, v.j});
}

FcVar var_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw FormatError("coloring instance: variable must be a pair of ints");
    return {j[0].get<int>(), j[1].get<int>()};
}

std::string var_key(const FcVar& v) {
    if (v.i >= 1) return std::to_string(v.i) + "," + std::to_string(v.j);
    return std::to_string(v.j);
}

}  // namespace

nlohmann::json universe_to_json(const FcUniverse& u) {
    if (u.structured) return {{"kind", "structured"}, {"m", u.m}, {"L", u.L}};
    return {{"kind", "flat"}, {"count", u.count}};
}

FcUniverse universe_from_json(const nlohmann::json& j) {
    try {
        FcUniverse u;
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "structured") {
            u.structured = true;
            u.m = j.at("m").get<int>();
            u.L = j.at("L").get<int>();
        } else if (kind == "flat") {
            u.count = j.at("count").get<int>();
        } else {
            throw FormatError("variable universe: unknown kind " + kind);
        }
        return u;
    } catch (const nlohmann::json::exception& ex) {
        throw FormatError(std::string("variable universe: ") + ex.what());
    }
}

nlohmann::json fc_to_json(const FcInstance& inst) {
    validate_fc(inst);
    nlohmann::json j;
    j["vars"] = universe_to_json(inst.universe);
    j["clauses"] = nlohmann::json::array();
    for (const FcClause& c : inst.clauses) {
        if (const auto* n = std::get_if<NeqClause>(&c))
            j["clauses"].push_back(
                {{"t", "neq"}, {"a", var_to_json(n->a)}, {"b", var_to_json(n->b)}});
        else {
            const auto& im = std::get<ImplClause>(c);
            j["clauses"].push_back({{"t", "impl"},
                                    {"u", var_to_json(im.u)},
                                    {"v", var_to_json(im.v)},
                                    {"k", var_to_json(im.k)},
                                    {"l", var_to_json(im.l)}});
        }
    }
    if (inst.anchor) j["provenance"] = {{"anchor", *inst.anchor}};
    return j;
}

FcInstance fc_from_json(const nlohmann::json& j) {
    try {
        FcInstance inst;
        inst.universe = universe_from_json(j.at("vars"));
        for (const auto& c : j.at("clauses")) {
            const std::string t = c.at("t").get<std::string>();
            if (t == "neq")
                inst.clauses.push_back(
                    NeqClause{var_from_json(c.at("a")), var_from_json(c.at("b"))});
            else if (t == "impl")
                inst.clauses.push_back(ImplClause{var_from_json(c.at("u")),
                                                  var_from_json(c.at("v")),
                                                  var_from_json(c.at("k")),
                                                  var_from_json(c.at("l"))});
            else
                throw FormatError("coloring instance: unknown clause type " + t);
        }
        if (j.contains("provenance")) inst.anchor = j.at("provenance").at("anchor").get<int>();
        validate_fc(inst);
        return inst;
    } catch (const nlohmann::json::exception& ex) {
        throw FormatError(std::string("coloring instance: ") + ex.what());
    } catch (const std::invalid_argument& ex) {
        throw FormatError(std::string("coloring instance: ") + ex.what());
    }
}

nlohmann::json coloring_to_json(const FcInstance& inst, const std::vector<int>& colors) {
    if (static_cast<int>(colors.size()) != var_count(inst.universe))
        throw std::invalid_argument("coloring size disagrees with the variable count");
    nlohmann::json j = nlohmann::json::object();
    for (int idx = 0; idx < var_count(inst.universe); ++idx)
        j[var_key(var_at(inst.universe, idx))] = colors[idx];
    return j;
}

std::vector<int> coloring_from_json(const FcInstance& inst, const nlohmann::json& j) {
    if (!j.is_object()) throw FormatError("coloring: expected an object");
    const int n = var_count(inst.universe);
    if (static_cast<int>(j.size()) != n)
        throw FormatError("coloring: entry count disagrees with the variable count");
    std::vector<int> colors(n, -1);
    for (int idx = 0; idx < n; ++idx) {
        const std::string key = var_key(var_at(inst.universe, idx));
        if (!j.contains(key)) throw FormatError("coloring: missing variable " + key);
        const auto& val = j.at(key);
        if (!val.is_number_integer() || val.get<int>() < 0)
            throw FormatError("coloring: color of " + key + " must be a nonnegative int");
        colors[idx] = val.get<int>();
    }
    return colors;
}

}  // namespace trapdoor::fc
