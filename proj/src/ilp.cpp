#include "trapdoor/ilp.hpp"

#include "trapdoor/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <variant>

namespace trapdoor::ilp {

namespace {

using fc::FcInstance;
using fc::FcUniverse;
using fc::FcVar;
using Kind = IlpVar::Kind;
using Family = RowTag::Family;

// ---------------------------------------------------------------------------
// Strict integer token parsing: the text must be exactly the canonical
// decimal rendering, so serialized models round-trip byte for byte.

long long parse_canonical_int(const std::string& tok, const char* what) {
    if (tok.empty() || tok.size() > 19)
        throw FormatError(std::string(what) + ": bad integer '" + tok + "'");
    errno = 0;
    char* end = nullptr;
    const long long value = std::strtoll(tok.c_str(), &end, 10);
    if (errno != 0 || end != tok.c_str() + tok.size() || std::to_string(value) != tok)
        throw FormatError(std::string(what) + ": bad integer '" + tok + "'");
    return value;
}

int parse_positive_index(const std::string& tok, const char* what) {
    const long long v = parse_canonical_int(tok, what);
    if (v < 1 || v > std::numeric_limits<std::int32_t>::max())
        throw FormatError(std::string(what) + ": index out of range '" + tok + "'");
    return static_cast<int>(v);
}

std::int32_t parse_i32(const std::string& tok, const char* what) {
    const long long v = parse_canonical_int(tok, what);
    if (v < std::numeric_limits<std::int32_t>::min() ||
        v > std::numeric_limits<std::int32_t>::max())
        throw FormatError(std::string(what) + ": value out of range '" + tok + "'");
    return static_cast<std::int32_t>(v);
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

}  // namespace

// ---------------------------------------------------------------------------
// Names and tags

std::string var_name(const IlpVar& v) {
    switch (v.kind) {
        case Kind::W: return "w_" + std::to_string(v.i1);
        case Kind::X: return "x_" + std::to_string(v.i1) + "_" + std::to_string(v.i2);
        case Kind::Zhat: return "zhat_" + std::to_string(v.i1);
        case Kind::A: return "a_" + std::to_string(v.i1);
        case Kind::B: return "b_" + std::to_string(v.i1);
        case Kind::S: return "s_" + std::to_string(v.i1);
        case Kind::Q: return "q_" + std::to_string(v.i1);
        case Kind::Qp: return "qp_" + std::to_string(v.i1);
    }
    throw std::logic_error("var_name: bad kind");
}

IlpVar var_from_name(const std::string& name) {
    const std::vector<std::string> parts = split_on(name, '_');
    IlpVar v;
    const auto one_index = [&](Kind k) {
        if (parts.size() != 2)
            throw FormatError("variable name '" + name + "' malformed");
        v.kind = k;
        v.i1 = parse_positive_index(parts[1], "variable name");
        return v;
    };
    if (parts[0] == "w") return one_index(Kind::W);
    if (parts[0] == "zhat") return one_index(Kind::Zhat);
    if (parts[0] == "a") return one_index(Kind::A);
    if (parts[0] == "b") return one_index(Kind::B);
    if (parts[0] == "s") return one_index(Kind::S);
    if (parts[0] == "q") return one_index(Kind::Q);
    if (parts[0] == "qp") return one_index(Kind::Qp);
    if (parts[0] == "x") {
        if (parts.size() != 3)
            throw FormatError("variable name '" + name + "' malformed");
        v.kind = Kind::X;
        v.i1 = parse_positive_index(parts[1], "variable name");
        v.i2 = parse_positive_index(parts[2], "variable name");
        return v;
    }
    throw FormatError("variable name '" + name + "' has unknown family");
}

std::string tag_to_string(const RowTag& t) {
    const std::string a = std::to_string(t.a);
    const std::string b = std::to_string(t.b);
    switch (t.family) {
        case Family::OneColor: return "one_color_" + a;
        case Family::AssignUb: return "assign_ub_" + a + "_" + b;
        case Family::AssignLb: return "assign_lb_" + a + "_" + b;
        case Family::Used: return "used_" + a + "_" + b;
        case Family::NeqColor: return "neq_" + a + "_" + b;
        case Family::EqFwdUb: return "eq_fwd_ub_" + a;
        case Family::EqFwdLb: return "eq_fwd_lb_" + a;
        case Family::EqBwdLt: return "eq_bwd_lt_" + a;
        case Family::EqBwdGt: return "eq_bwd_gt_" + a;
        case Family::NeqLt: return "neq_lt_" + a;
        case Family::NeqGt: return "neq_gt_" + a;
        case Family::NeqUb: return "neq_ub_" + a;
        case Family::NeqLb: return "neq_lb_" + a;
        case Family::OrA: return "or_a_" + a;
        case Family::OrB: return "or_b_" + a;
        case Family::OrUb: return "or_ub_" + a;
        case Family::Sat: return "sat_" + a;
    }
    throw std::logic_error("tag_to_string: bad family");
}

RowTag tag_from_string(const std::string& s) {
    const std::vector<std::string> parts = split_on(s, '_');
    RowTag t;
    const auto bad = [&]() -> RowTag {
        throw FormatError("row tag '" + s + "' malformed");
    };
    const auto with_a = [&](Family f, const std::string& tok) {
        t.family = f;
        t.a = parse_positive_index(tok, "row tag");
        return t;
    };
    const auto with_ab = [&](Family f, const std::string& ta, const std::string& tb) {
        t.family = f;
        t.a = parse_positive_index(ta, "row tag");
        t.b = parse_positive_index(tb, "row tag");
        return t;
    };
    if (parts[0] == "one")
        return (parts.size() == 3 && parts[1] == "color") ? with_a(Family::OneColor, parts[2])
                                                          : bad();
    if (parts[0] == "assign") {
        if (parts.size() != 4) return bad();
        if (parts[1] == "ub") return with_ab(Family::AssignUb, parts[2], parts[3]);
        if (parts[1] == "lb") return with_ab(Family::AssignLb, parts[2], parts[3]);
        return bad();
    }
    if (parts[0] == "used")
        return parts.size() == 3 ? with_ab(Family::Used, parts[1], parts[2]) : bad();
    if (parts[0] == "neq") {
        if (parts.size() == 3 && all_digits(parts[1]))
            return with_ab(Family::NeqColor, parts[1], parts[2]);
        if (parts.size() != 3) return bad();
        if (parts[1] == "lt") return with_a(Family::NeqLt, parts[2]);
        if (parts[1] == "gt") return with_a(Family::NeqGt, parts[2]);
        if (parts[1] == "ub") return with_a(Family::NeqUb, parts[2]);
        if (parts[1] == "lb") return with_a(Family::NeqLb, parts[2]);
        return bad();
    }
    if (parts[0] == "eq") {
        if (parts.size() != 4) return bad();
        if (parts[1] == "fwd") {
            if (parts[2] == "ub") return with_a(Family::EqFwdUb, parts[3]);
            if (parts[2] == "lb") return with_a(Family::EqFwdLb, parts[3]);
            return bad();
        }
        if (parts[1] == "bwd") {
            if (parts[2] == "lt") return with_a(Family::EqBwdLt, parts[3]);
            if (parts[2] == "gt") return with_a(Family::EqBwdGt, parts[3]);
            return bad();
        }
        return bad();
    }
    if (parts[0] == "or") {
        if (parts.size() != 3) return bad();
        if (parts[1] == "a") return with_a(Family::OrA, parts[2]);
        if (parts[1] == "b") return with_a(Family::OrB, parts[2]);
        if (parts[1] == "ub") return with_a(Family::OrUb, parts[2]);
        return bad();
    }
    if (parts[0] == "sat")
        return parts.size() == 2 ? with_a(Family::Sat, parts[1]) : bad();
    return bad();
}

// ---------------------------------------------------------------------------
// Predicted sizes

long long predicted_var_count(long long M, long long R) { return M * M + 2 * M + 5 * R; }

long long predicted_row_count(long long M, long long Q, long long R) {
    return M * (3 * M + Q + 1) + 12 * R;
}

namespace {

long long predicted_term_count(long long M, long long Q, long long R) {
    return 7 * M * M + 2 * Q * M + 36 * R;
}

// ---------------------------------------------------------------------------
// Canonical row emission.  Both the builder and the reconstruction validator
// walk the same generator, so they can never drift apart.  The sink receives
// (tag, sense, rhs, terms, len) for every row in canonical order.

template <typename Sink>
void for_each_expected_row(const IlpModel& m,
                           const std::vector<std::pair<std::int32_t, std::int32_t>>& neq_pairs,
                           const std::vector<std::array<std::int32_t, 4>>& impl_quads,
                           Sink&& sink) {
    const long long M = m.M;
    const long long big = 2 * M;  // dominates any color difference
    std::vector<IlpTerm> scratch(static_cast<std::size_t>(M));
    IlpTerm t[4];

    for (long long u = 1; u <= M; ++u) {
        for (long long i = 1; i <= M; ++i)
            scratch[static_cast<std::size_t>(i - 1)] = {m.x_index(u, i), 1};
        sink(RowTag{Family::OneColor, static_cast<std::int32_t>(u), 0}, RowSense::Eq, 1,
             scratch.data(), static_cast<int>(M));
    }
    for (long long u = 1; u <= M; ++u) {
        for (long long i = 1; i <= M; ++i) {
            const auto tu = static_cast<std::int32_t>(u);
            const auto ti = static_cast<std::int32_t>(i);
            t[0] = {m.z_index(u), 1};
            t[1] = {m.x_index(u, i), static_cast<std::int32_t>(big)};
            sink(RowTag{Family::AssignUb, tu, ti}, RowSense::Le, i + big, t, 2);
            t[1].coeff = static_cast<std::int32_t>(-big);
            sink(RowTag{Family::AssignLb, tu, ti}, RowSense::Ge, i - big, t, 2);
        }
    }
    for (long long u = 1; u <= M; ++u) {
        for (long long i = 1; i <= M; ++i) {
            t[0] = {m.x_index(u, i), 1};
            t[1] = {m.w_index(i), -1};
            sink(RowTag{Family::Used, static_cast<std::int32_t>(u),
                        static_cast<std::int32_t>(i)},
                 RowSense::Le, 0, t, 2);
        }
    }
    for (std::size_t j = 0; j < neq_pairs.size(); ++j) {
        const auto [u, v] = neq_pairs[j];
        for (long long i = 1; i <= M; ++i) {
            t[0] = {m.x_index(u, i), 1};
            t[1] = {m.x_index(v, i), 1};
            sink(RowTag{Family::NeqColor, static_cast<std::int32_t>(j + 1),
                        static_cast<std::int32_t>(i)},
                 RowSense::Le, 1, t, 2);
        }
    }
    for (std::size_t j = 0; j < impl_quads.size(); ++j) {
        const auto [pu, pv, pk, pl] = impl_quads[j];
        const auto tj = static_cast<std::int32_t>(j + 1);
        const std::int32_t a = m.aux_index(tj, 0), b = m.aux_index(tj, 1),
                           s = m.aux_index(tj, 2), q = m.aux_index(tj, 3),
                           qp = m.aux_index(tj, 4);
        const auto B = static_cast<std::int32_t>(big);

        t[0] = {m.z_index(pk), 1};
        t[1] = {m.z_index(pl), -1};
        t[2] = {a, B};
        sink(RowTag{Family::EqFwdUb, tj, 0}, RowSense::Le, big, t, 3);
        t[2] = {a, -B};
        sink(RowTag{Family::EqFwdLb, tj, 0}, RowSense::Ge, -big, t, 3);
        t[2] = {q, B};
        t[3] = {a, -B};
        sink(RowTag{Family::EqBwdLt, tj, 0}, RowSense::Le, big - 1, t, 4);
        t[3] = {a, B};
        sink(RowTag{Family::EqBwdGt, tj, 0}, RowSense::Ge, 1, t, 4);

        t[0] = {m.z_index(pu), 1};
        t[1] = {m.z_index(pv), -1};
        t[2] = {qp, B};
        t[3] = {b, B};
        sink(RowTag{Family::NeqLt, tj, 0}, RowSense::Le, 2 * big - 1, t, 4);
        t[3] = {b, -B};
        sink(RowTag{Family::NeqGt, tj, 0}, RowSense::Ge, 1 - big, t, 4);
        t[2] = {b, -B};
        sink(RowTag{Family::NeqUb, tj, 0}, RowSense::Le, 0, t, 3);
        t[2] = {b, B};
        sink(RowTag{Family::NeqLb, tj, 0}, RowSense::Ge, 0, t, 3);

        t[0] = {s, 1};
        t[1] = {a, -1};
        sink(RowTag{Family::OrA, tj, 0}, RowSense::Ge, 0, t, 2);
        t[1] = {b, -1};
        sink(RowTag{Family::OrB, tj, 0}, RowSense::Ge, 0, t, 2);
        t[1] = {a, -1};
        t[2] = {b, -1};
        sink(RowTag{Family::OrUb, tj, 0}, RowSense::Le, 0, t, 3);
        sink(RowTag{Family::Sat, tj, 0}, RowSense::Ge, 1, t, 1);
    }
}

int vertex_of(const FcUniverse& u, const FcVar& v) {
    return fc::var_index(u, v) + 1;  // rows refer to vertices 1-based
}

}  // namespace

// ---------------------------------------------------------------------------
// Validation

void validate_model(const IlpModel& model) {
    if (model.M < 1) throw FormatError("model: color count must be at least 1");
    if (model.Q < 0 || model.R < 0) throw FormatError("model: negative clause count");
    const long long V = predicted_var_count(model.M, model.R);
    const long long rows = predicted_row_count(model.M, model.Q, model.R);
    if (V > std::numeric_limits<std::int32_t>::max())
        throw FormatError("model: too many variables");
    if (static_cast<long long>(model.vars.size()) != V)
        throw FormatError("model: variable count " + std::to_string(model.vars.size()) +
                          " does not match expected " + std::to_string(V));
    if (static_cast<long long>(model.rows.size()) != rows)
        throw FormatError("model: row count " + std::to_string(model.rows.size()) +
                          " does not match expected " + std::to_string(rows));
    for (const IlpVar& v : model.vars)
        if (v.lo > v.hi)
            throw FormatError("model: variable " + var_name(v) + " has empty bounds");

    std::vector<std::int64_t> seen_in(model.vars.size(), -1);
    long long offset = 0;
    for (std::size_t r = 0; r < model.rows.size(); ++r) {
        const IlpRow& row = model.rows[r];
        if (row.len < 1) throw FormatError("model: row " + tag_to_string(row.tag) + " is empty");
        if (row.offset != offset)
            throw FormatError("model: row " + tag_to_string(row.tag) + " breaks term layout");
        offset += row.len;
        if (offset > static_cast<long long>(model.pool.size()))
            throw FormatError("model: row " + tag_to_string(row.tag) + " overruns term pool");
        for (std::int32_t k = 0; k < row.len; ++k) {
            const IlpTerm& term = model.pool[static_cast<std::size_t>(row.offset + k)];
            if (term.var < 0 || term.var >= static_cast<std::int32_t>(model.vars.size()))
                throw FormatError("model: row " + tag_to_string(row.tag) +
                                  " references a variable out of range");
            if (term.coeff == 0)
                throw FormatError("model: row " + tag_to_string(row.tag) +
                                  " has a zero coefficient");
            if (seen_in[static_cast<std::size_t>(term.var)] == static_cast<std::int64_t>(r))
                throw FormatError("model: row " + tag_to_string(row.tag) +
                                  " repeats variable " + var_name(model.vars[term.var]));
            seen_in[static_cast<std::size_t>(term.var)] = static_cast<std::int64_t>(r);
        }
    }
    if (offset != static_cast<long long>(model.pool.size()))
        throw FormatError("model: term pool has unused entries");
}

// ---------------------------------------------------------------------------
// Building from a coloring instance

IlpModel ilp_from_fc(const FcInstance& inst) {
    fc::validate_fc(inst);
    const long long M = fc::var_count(inst.universe);
    if (M < 1) throw std::invalid_argument("ilp_from_fc: empty variable universe");

    std::vector<std::pair<std::int32_t, std::int32_t>> neq_pairs;
    std::vector<std::array<std::int32_t, 4>> impl_quads;
    for (const fc::FcClause& clause : inst.clauses) {
        if (const auto* neq = std::get_if<fc::NeqClause>(&clause)) {
            const int a = vertex_of(inst.universe, neq->a);
            const int b = vertex_of(inst.universe, neq->b);
            if (a == b)
                throw std::invalid_argument(
                    "ilp_from_fc: inequality clause names the same variable twice");
            neq_pairs.emplace_back(a, b);
        } else {
            const auto& impl = std::get<fc::ImplClause>(clause);
            const int pu = vertex_of(inst.universe, impl.u);
            const int pv = vertex_of(inst.universe, impl.v);
            const int pk = vertex_of(inst.universe, impl.k);
            const int pl = vertex_of(inst.universe, impl.l);
            if (pu == pv)
                throw std::invalid_argument(
                    "ilp_from_fc: implication premise names the same variable twice");
            if (pk == pl)
                throw std::invalid_argument(
                    "ilp_from_fc: implication conclusion names the same variable twice");
            impl_quads.push_back({static_cast<std::int32_t>(pu), static_cast<std::int32_t>(pv),
                                  static_cast<std::int32_t>(pk), static_cast<std::int32_t>(pl)});
        }
    }
    const long long Q = static_cast<long long>(neq_pairs.size());
    const long long R = static_cast<long long>(impl_quads.size());
    const long long V = predicted_var_count(M, R);
    const long long rows = predicted_row_count(M, Q, R);
    const long long terms = predicted_term_count(M, Q, R);
    if (V > std::numeric_limits<std::int32_t>::max() ||
        rows > std::numeric_limits<std::int32_t>::max() ||
        terms > std::numeric_limits<std::int32_t>::max())
        throw std::invalid_argument("ilp_from_fc: instance too large");

    IlpModel model;
    model.M = M;
    model.Q = Q;
    model.R = R;
    model.fc_universe = inst.universe;
    model.fc_anchor = inst.anchor;

    model.vars.reserve(static_cast<std::size_t>(V));
    const auto Mi = static_cast<std::int32_t>(M);
    for (std::int32_t i = 1; i <= Mi; ++i)
        model.vars.push_back({Kind::W, i, 0, 0, 1});
    for (std::int32_t u = 1; u <= Mi; ++u)
        for (std::int32_t i = 1; i <= Mi; ++i)
            model.vars.push_back({Kind::X, u, i, 0, 1});
    for (std::int32_t u = 1; u <= Mi; ++u)
        model.vars.push_back({Kind::Zhat, u, 0, 1, Mi});
    for (std::int32_t j = 1; j <= static_cast<std::int32_t>(R); ++j) {
        model.vars.push_back({Kind::A, j, 0, 0, 1});
        model.vars.push_back({Kind::B, j, 0, 0, 1});
        model.vars.push_back({Kind::S, j, 0, 0, 1});
        model.vars.push_back({Kind::Q, j, 0, 0, 1});
        model.vars.push_back({Kind::Qp, j, 0, 0, 1});
    }

    model.rows.reserve(static_cast<std::size_t>(rows));
    model.pool.reserve(static_cast<std::size_t>(terms));
    for_each_expected_row(model, neq_pairs, impl_quads,
                          [&](RowTag tag, RowSense sense, long long rhs, const IlpTerm* t,
                              int len) {
                              IlpRow row;
                              row.rhs = rhs;
                              row.offset = static_cast<std::int32_t>(model.pool.size());
                              row.len = len;
                              row.sense = sense;
                              row.tag = tag;
                              model.pool.insert(model.pool.end(), t, t + len);
                              model.rows.push_back(row);
                          });
    validate_model(model);
    return model;
}

// ---------------------------------------------------------------------------
// Reconstruction

fc::FcInstance fc_from_ilp(const IlpModel& model) {
    validate_model(model);
    const long long M = model.M;
    if (fc::var_count(model.fc_universe) != M)
        throw FormatError("model: variable universe does not match color count");

    const long long V = static_cast<long long>(model.vars.size());
    const long long R = (V - M * M - 2 * M) / 5;
    const long long rows = static_cast<long long>(model.rows.size());
    const long long Q = (rows - 3 * M * M - M - 12 * R) / M;
    if (R != model.R || Q != model.Q)
        throw FormatError("model: clause counts do not match layout");

    // Variable block must be exactly the canonical layout.
    const auto expect_var = [&](long long idx, const IlpVar& want) {
        if (model.vars[static_cast<std::size_t>(idx)] != want)
            throw FormatError("model: variable " + std::to_string(idx) +
                              " is not the expected " + var_name(want));
    };
    const auto Mi = static_cast<std::int32_t>(M);
    for (std::int32_t i = 1; i <= Mi; ++i)
        expect_var(model.w_index(i), {Kind::W, i, 0, 0, 1});
    for (std::int32_t u = 1; u <= Mi; ++u)
        for (std::int32_t i = 1; i <= Mi; ++i)
            expect_var(model.x_index(u, i), {Kind::X, u, i, 0, 1});
    for (std::int32_t u = 1; u <= Mi; ++u)
        expect_var(model.z_index(u), {Kind::Zhat, u, 0, 1, Mi});
    for (std::int32_t j = 1; j <= static_cast<std::int32_t>(R); ++j) {
        expect_var(model.aux_index(j, 0), {Kind::A, j, 0, 0, 1});
        expect_var(model.aux_index(j, 1), {Kind::B, j, 0, 0, 1});
        expect_var(model.aux_index(j, 2), {Kind::S, j, 0, 0, 1});
        expect_var(model.aux_index(j, 3), {Kind::Q, j, 0, 0, 1});
        expect_var(model.aux_index(j, 4), {Kind::Qp, j, 0, 0, 1});
    }

    // Read the clause endpoints out of the rows that carry them: the color-1
    // inequality row for each pair, and the first and seventh rows of each
    // implication block for conclusion and premise.
    const auto vertex_from_term = [&](const IlpRow& row, int k) {
        const IlpTerm& term = model.pool[static_cast<std::size_t>(row.offset + k)];
        const IlpVar& v = model.vars[static_cast<std::size_t>(term.var)];
        if (v.kind != Kind::Zhat)
            throw FormatError("model: row " + tag_to_string(row.tag) +
                              " does not start with color variables");
        return v.i1;
    };
    std::vector<std::pair<std::int32_t, std::int32_t>> neq_pairs;
    neq_pairs.reserve(static_cast<std::size_t>(Q));
    const long long neq_base = M + 3 * M * M;
    for (long long j = 0; j < Q; ++j) {
        const IlpRow& row = model.rows[static_cast<std::size_t>(neq_base + j * M)];
        if (row.len != 2)
            throw FormatError("model: row " + tag_to_string(row.tag) +
                              " does not have two terms");
        std::int32_t uv[2];
        for (int k = 0; k < 2; ++k) {
            const IlpTerm& term = model.pool[static_cast<std::size_t>(row.offset + k)];
            const IlpVar& v = model.vars[static_cast<std::size_t>(term.var)];
            if (v.kind != Kind::X || v.i2 != 1)
                throw FormatError("model: row " + tag_to_string(row.tag) +
                                  " is not a first-color inequality row");
            uv[k] = v.i1;
        }
        neq_pairs.emplace_back(uv[0], uv[1]);
    }
    std::vector<std::array<std::int32_t, 4>> impl_quads;
    impl_quads.reserve(static_cast<std::size_t>(R));
    const long long impl_base = neq_base + Q * M;
    for (long long j = 0; j < R; ++j) {
        const IlpRow& conclusion = model.rows[static_cast<std::size_t>(impl_base + 12 * j)];
        const IlpRow& premise = model.rows[static_cast<std::size_t>(impl_base + 12 * j + 6)];
        if (conclusion.len != 3 || premise.len != 3)
            throw FormatError("model: implication block " + std::to_string(j + 1) +
                              " has malformed rows");
        impl_quads.push_back({vertex_from_term(premise, 0), vertex_from_term(premise, 1),
                              vertex_from_term(conclusion, 0), vertex_from_term(conclusion, 1)});
    }

    // Re-derive every row from the recovered clauses and demand an exact match.
    std::size_t cursor = 0;
    for_each_expected_row(
        model, neq_pairs, impl_quads,
        [&](RowTag tag, RowSense sense, long long rhs, const IlpTerm* t, int len) {
            const IlpRow& row = model.rows[cursor];
            if (row.tag != tag || row.sense != sense || row.rhs != rhs || row.len != len)
                throw FormatError("model: row " + std::to_string(cursor + 1) +
                                  " deviates from the canonical encoding (expected " +
                                  tag_to_string(tag) + ")");
            for (int k = 0; k < len; ++k)
                if (model.pool[static_cast<std::size_t>(row.offset + k)] != t[k])
                    throw FormatError("model: row " + tag_to_string(tag) +
                                      " has unexpected terms");
            ++cursor;
        });
    if (cursor != model.rows.size())
        throw std::logic_error("fc_from_ilp: row walk out of sync");

    FcInstance inst;
    inst.universe = model.fc_universe;
    inst.anchor = model.fc_anchor;
    inst.clauses.reserve(static_cast<std::size_t>(Q + R));
    for (const auto& quad : impl_quads)
        inst.clauses.push_back(fc::ImplClause{fc::var_at(inst.universe, quad[0] - 1),
                                              fc::var_at(inst.universe, quad[1] - 1),
                                              fc::var_at(inst.universe, quad[2] - 1),
                                              fc::var_at(inst.universe, quad[3] - 1)});
    for (const auto& [u, v] : neq_pairs)
        inst.clauses.push_back(fc::NeqClause{fc::var_at(inst.universe, u - 1),
                                             fc::var_at(inst.universe, v - 1)});
    fc::validate_fc(inst);
    return inst;
}

// ---------------------------------------------------------------------------
// Checking assignments

AssignmentCheck verify_assignment(const IlpModel& model, const std::vector<long long>& values) {
    if (values.size() != model.vars.size())
        return {false, "assignment has " + std::to_string(values.size()) + " values for " +
                           std::to_string(model.vars.size()) + " variables"};
    for (std::size_t i = 0; i < model.vars.size(); ++i) {
        const IlpVar& v = model.vars[i];
        if (values[i] < v.lo || values[i] > v.hi)
            return {false, var_name(v) + " = " + std::to_string(values[i]) + " outside [" +
                               std::to_string(v.lo) + ", " + std::to_string(v.hi) + "]"};
    }
    for (const IlpRow& row : model.rows) {
        long long lhs = 0;
        for (std::int32_t k = 0; k < row.len; ++k) {
            const IlpTerm& term = model.pool[static_cast<std::size_t>(row.offset + k)];
            lhs += static_cast<long long>(term.coeff) *
                   values[static_cast<std::size_t>(term.var)];
        }
        const char* op = nullptr;
        if (row.sense == RowSense::Le && lhs > row.rhs) op = ">";
        if (row.sense == RowSense::Ge && lhs < row.rhs) op = "<";
        if (row.sense == RowSense::Eq && lhs != row.rhs) op = "!=";
        if (op != nullptr)
            return {false, tag_to_string(row.tag) + ": lhs " + std::to_string(lhs) + " " + op +
                               " rhs " + std::to_string(row.rhs)};
    }
    return {true, ""};
}

// ---------------------------------------------------------------------------
// Exhaustive search

IlpOptimum brute_force_ilp(const IlpModel& model, long long budget) {
    validate_model(model);
    const std::size_t V = model.vars.size();
    if (static_cast<long long>(V) > budget)
        throw std::runtime_error("brute_force_ilp: search budget exhausted");

    // Interval state per row, updated as variables get pinned to values.
    struct Touch {
        std::int32_t row;
        std::int32_t coeff;
        long long cmin, cmax;
    };
    std::vector<std::vector<Touch>> var_rows(V);
    std::vector<long long> lo(model.rows.size(), 0), hi(model.rows.size(), 0);
    for (std::size_t r = 0; r < model.rows.size(); ++r) {
        const IlpRow& row = model.rows[r];
        for (std::int32_t k = 0; k < row.len; ++k) {
            const IlpTerm& term = model.pool[static_cast<std::size_t>(row.offset + k)];
            const IlpVar& v = model.vars[static_cast<std::size_t>(term.var)];
            const long long c = term.coeff;
            const long long a = c * v.lo, b = c * v.hi;
            var_rows[static_cast<std::size_t>(term.var)].push_back(
                {static_cast<std::int32_t>(r), term.coeff, std::min(a, b), std::max(a, b)});
            lo[r] += std::min(a, b);
            hi[r] += std::max(a, b);
        }
    }

    const long long M = model.M;
    std::vector<long long> cur(V), trial(V);
    std::vector<char> applied(V, 0);
    long long partial = 0;  // objective contribution of assigned color flags
    long long nodes = 0;
    bool found = false;
    long long best = 0;
    std::vector<long long> best_values;

    const auto apply = [&](std::size_t d, long long value, int dir) {
        for (const Touch& e : var_rows[d]) {
            const long long c = static_cast<long long>(e.coeff) * value;
            lo[static_cast<std::size_t>(e.row)] += dir * (c - e.cmin);
            hi[static_cast<std::size_t>(e.row)] += dir * (c - e.cmax);
        }
        if (static_cast<long long>(d) < M) partial += dir * value;
    };
    const auto rows_alive = [&](std::size_t d) {
        for (const Touch& e : var_rows[d]) {
            const IlpRow& row = model.rows[static_cast<std::size_t>(e.row)];
            const long long l = lo[static_cast<std::size_t>(e.row)];
            const long long h = hi[static_cast<std::size_t>(e.row)];
            switch (row.sense) {
                case RowSense::Le:
                    if (l > row.rhs) return false;
                    break;
                case RowSense::Ge:
                    if (h < row.rhs) return false;
                    break;
                case RowSense::Eq:
                    if (l > row.rhs || h < row.rhs) return false;
                    break;
            }
        }
        return true;
    };

    if (V == 0) return {true, 0, {}};
    std::size_t d = 0;
    trial[0] = model.vars[0].lo;
    bool done = false;
    while (!done) {
        if (applied[d]) {
            apply(d, cur[d], -1);
            applied[d] = 0;
        }
        if (trial[d] > model.vars[d].hi) {
            if (d == 0) {
                done = true;
            } else {
                --d;
            }
            continue;
        }
        const long long value = trial[d]++;
        if (++nodes > budget)
            throw std::runtime_error("brute_force_ilp: search budget exhausted");
        apply(d, value, +1);
        applied[d] = 1;
        cur[d] = value;
        if (!rows_alive(d)) continue;
        if (found && partial >= best) continue;  // color flags only ever add
        if (d + 1 == V) {
            // Values tried low to high, so the first optimum reached is the
            // lexicographically least one; later ties never replace it.
            if (!found || partial < best) {
                found = true;
                best = partial;
                best_values = cur;
            }
            continue;
        }
        ++d;
        trial[d] = model.vars[d].lo;
        applied[d] = 0;
    }
    if (!found) return {false, 0, {}};
    return {true, best, std::move(best_values)};
}

// ---------------------------------------------------------------------------
// Between colorings and assignments

std::vector<int> coloring_from_assignment(const IlpModel& model,
                                          const std::vector<long long>& values) {
    const AssignmentCheck check = verify_assignment(model, values);
    if (!check.ok) throw VerifyFailure("assignment rejected: " + check.violation);
    const long long M = model.M;
    std::vector<int> renumber(static_cast<std::size_t>(M) + 1, -1);
    int next = 0;
    std::vector<int> colors(static_cast<std::size_t>(M));
    for (long long u = 1; u <= M; ++u) {
        const long long z = values[static_cast<std::size_t>(model.z_index(u))];
        int& slot = renumber[static_cast<std::size_t>(z)];
        if (slot < 0) slot = next++;
        colors[static_cast<std::size_t>(u - 1)] = slot;
    }
    return colors;
}

std::vector<long long> assignment_from_coloring(const FcInstance& inst,
                                                const std::vector<int>& colors) {
    fc::validate_fc(inst);
    const long long M = fc::var_count(inst.universe);
    if (M < 1) throw std::invalid_argument("assignment_from_coloring: empty variable universe");
    if (static_cast<long long>(colors.size()) != M)
        throw std::invalid_argument("assignment_from_coloring: color count mismatch");

    // Colors renumbered by first appearance occupy 1..k.
    std::vector<long long> zhat(static_cast<std::size_t>(M));
    {
        std::vector<std::pair<int, long long>> seen;  // (input color, renumbered)
        for (long long u = 0; u < M; ++u) {
            const int c = colors[static_cast<std::size_t>(u)];
            long long mapped = 0;
            for (const auto& [color, number] : seen)
                if (color == c) {
                    mapped = number;
                    break;
                }
            if (mapped == 0) {
                mapped = static_cast<long long>(seen.size()) + 1;
                seen.emplace_back(c, mapped);
            }
            zhat[static_cast<std::size_t>(u)] = mapped;
        }
    }
    const long long k = *std::max_element(zhat.begin(), zhat.end());

    long long R = 0;
    for (const fc::FcClause& clause : inst.clauses)
        if (std::holds_alternative<fc::ImplClause>(clause)) ++R;

    std::vector<long long> values(static_cast<std::size_t>(predicted_var_count(M, R)), 0);
    IlpModel layout;  // only the index helpers are needed
    layout.M = M;
    for (long long i = 1; i <= M; ++i)
        values[static_cast<std::size_t>(layout.w_index(i))] = (i <= k) ? 1 : 0;
    for (long long u = 1; u <= M; ++u) {
        values[static_cast<std::size_t>(layout.x_index(u, zhat[static_cast<std::size_t>(u - 1)]))] = 1;
        values[static_cast<std::size_t>(layout.z_index(u))] = zhat[static_cast<std::size_t>(u - 1)];
    }
    long long j = 0;
    for (const fc::FcClause& clause : inst.clauses) {
        const auto* impl = std::get_if<fc::ImplClause>(&clause);
        if (impl == nullptr) continue;
        ++j;
        const long long zu = zhat[static_cast<std::size_t>(vertex_of(inst.universe, impl->u) - 1)];
        const long long zv = zhat[static_cast<std::size_t>(vertex_of(inst.universe, impl->v) - 1)];
        const long long zk = zhat[static_cast<std::size_t>(vertex_of(inst.universe, impl->k) - 1)];
        const long long zl = zhat[static_cast<std::size_t>(vertex_of(inst.universe, impl->l) - 1)];
        const long long a = (zk == zl) ? 1 : 0;
        const long long b = (zu != zv) ? 1 : 0;
        values[static_cast<std::size_t>(layout.aux_index(j, 0))] = a;
        values[static_cast<std::size_t>(layout.aux_index(j, 1))] = b;
        values[static_cast<std::size_t>(layout.aux_index(j, 2))] = std::max(a, b);
        values[static_cast<std::size_t>(layout.aux_index(j, 3))] = (zk < zl) ? 1 : 0;
        values[static_cast<std::size_t>(layout.aux_index(j, 4))] = (zu < zv) ? 1 : 0;
    }
    return values;
}

// ---------------------------------------------------------------------------
// LP text

namespace {

void write_term(std::ostream& out, bool first, long long coeff, const std::string& name) {
    if (first) {
        if (coeff < 0) out << "- ";
    } else {
        out << (coeff < 0 ? " - " : " + ");
    }
    const long long mag = coeff < 0 ? -coeff : coeff;
    if (mag != 1) out << mag << ' ';
    out << name;
}

const char* sense_text(RowSense s) {
    switch (s) {
        case RowSense::Le: return "<=";
        case RowSense::Ge: return ">=";
        case RowSense::Eq: return "=";
    }
    throw std::logic_error("sense_text: bad sense");
}

nlohmann::json meta_json(const IlpModel& model) {
    nlohmann::json meta;
    meta["universe"] = fc::universe_to_json(model.fc_universe);
    if (model.fc_anchor.has_value()) meta["anchor"] = *model.fc_anchor;
    return meta;
}

}  // namespace

void write_lp(const IlpModel& model, std::ostream& out) {
    out << "\\ fc_meta " << meta_json(model).dump() << '\n';
    out << "Minimize\n obj:";
    for (long long i = 1; i <= model.M; ++i) {
        out << (i == 1 ? " " : " + ");
        out << "w_" << i;
    }
    out << "\nSubject To\n";
    for (const IlpRow& row : model.rows) {
        out << ' ' << tag_to_string(row.tag) << ':';
        for (std::int32_t k = 0; k < row.len; ++k) {
            const IlpTerm& term = model.pool[static_cast<std::size_t>(row.offset + k)];
            if (k == 0) out << ' ';
            write_term(out, k == 0, term.coeff,
                       var_name(model.vars[static_cast<std::size_t>(term.var)]));
        }
        out << ' ' << sense_text(row.sense) << ' ' << row.rhs << '\n';
    }
    out << "Bounds\n";
    for (const IlpVar& v : model.vars)
        out << ' ' << v.lo << " <= " << var_name(v) << " <= " << v.hi << '\n';
    out << "General\n";
    for (const IlpVar& v : model.vars)
        if (!(v.lo == 0 && v.hi == 1)) out << ' ' << var_name(v) << '\n';
    out << "Binary\n";
    for (const IlpVar& v : model.vars)
        if (v.lo == 0 && v.hi == 1) out << ' ' << var_name(v) << '\n';
    out << "End\n";
}

std::string write_lp(const IlpModel& model) {
    std::ostringstream out;
    write_lp(model, out);
    return out.str();
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ') ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

struct ParsedTerm {
    std::string name;
    long long coeff;
};

// Terms as the writer prints them: optional leading minus on the first term,
// explicit +/- separators between terms, magnitudes omitted when 1.
std::vector<ParsedTerm> parse_terms(const std::vector<std::string>& tokens, std::size_t begin,
                                    std::size_t end, const std::string& where) {
    std::vector<ParsedTerm> terms;
    std::size_t i = begin;
    bool first = true;
    while (i < end) {
        long long sign = 1;
        if (first) {
            if (tokens[i] == "-") {
                sign = -1;
                ++i;
            } else if (tokens[i] == "+") {
                throw FormatError(where + ": leading plus sign");
            }
        } else {
            if (tokens[i] == "+") {
                sign = 1;
            } else if (tokens[i] == "-") {
                sign = -1;
            } else {
                throw FormatError(where + ": expected a sign before '" + tokens[i] + "'");
            }
            ++i;
        }
        if (i >= end) throw FormatError(where + ": dangling sign");
        long long mag = 1;
        if (all_digits(tokens[i])) {
            mag = parse_canonical_int(tokens[i], where.c_str());
            if (mag == 1 || mag == 0)
                throw FormatError(where + ": coefficient '" + tokens[i] +
                                  "' must be spelled implicitly or be nonzero");
            ++i;
            if (i >= end) throw FormatError(where + ": coefficient without a variable");
        }
        terms.push_back({tokens[i], sign * mag});
        ++i;
        first = false;
    }
    if (terms.empty()) throw FormatError(where + ": no terms");
    return terms;
}

}  // namespace

IlpModel parse_lp(const std::string& text) {
    std::vector<std::string> lines = split_on(text, '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    for (const std::string& line : lines)
        if (line.empty()) throw FormatError("lp: blank line");
    if (lines.size() < 2 || lines[0].rfind("\\ fc_meta ", 0) != 0)
        throw FormatError("lp: missing metadata comment");

    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(lines[0].substr(10));
    } catch (const nlohmann::json::exception& ex) {
        throw FormatError(std::string("lp: metadata: ") + ex.what());
    }

    // Locate the section headers (the only lines without a leading space).
    const std::array<std::string, 6> headers = {"Minimize", "Subject To", "Bounds",
                                                "General",  "Binary",     "End"};
    std::array<std::size_t, 6> at{};
    std::size_t cursor = 1;
    for (std::size_t h = 0; h < headers.size(); ++h) {
        std::size_t found = lines.size();
        for (std::size_t i = cursor; i < lines.size(); ++i) {
            if (lines[i] == headers[h]) {
                found = i;
                break;
            }
            if (lines[i][0] != ' ')
                throw FormatError("lp: unexpected line '" + lines[i] + "'");
        }
        if (found == lines.size()) throw FormatError("lp: missing section " + headers[h]);
        at[h] = found;
        cursor = found + 1;
    }
    if (at[5] + 1 != lines.size()) throw FormatError("lp: content after End");
    if (at[0] != 1) throw FormatError("lp: Minimize must follow the metadata comment");
    if (at[1] != at[0] + 2) throw FormatError("lp: objective must be a single line");

    IlpModel model;

    // Bounds section declares every variable, in order.
    for (std::size_t i = at[2] + 1; i < at[3]; ++i) {
        const std::vector<std::string> tokens = tokenize(lines[i]);
        if (tokens.size() != 5 || tokens[1] != "<=" || tokens[3] != "<=")
            throw FormatError("lp: bad bound line '" + lines[i] + "'");
        IlpVar v = var_from_name(tokens[2]);
        v.lo = parse_i32(tokens[0], "lp bound");
        v.hi = parse_i32(tokens[4], "lp bound");
        model.vars.push_back(v);
    }
    std::vector<std::string> names(model.vars.size());
    std::unordered_map<std::string, std::int32_t> index_of;
    index_of.reserve(model.vars.size());
    for (std::size_t i = 0; i < model.vars.size(); ++i) {
        names[i] = var_name(model.vars[i]);
        if (!index_of.emplace(names[i], static_cast<std::int32_t>(i)).second)
            throw FormatError("lp: variable " + names[i] + " declared twice");
    }

    // General and Binary must partition the variables by bound shape, in order.
    {
        std::size_t g = at[3] + 1, b = at[4] + 1;
        for (std::size_t i = 0; i < model.vars.size(); ++i) {
            const bool binary = model.vars[i].lo == 0 && model.vars[i].hi == 1;
            std::size_t& cur = binary ? b : g;
            const std::size_t end = binary ? at[5] : at[4];
            if (cur >= end || lines[cur] != " " + names[i])
                throw FormatError("lp: " + std::string(binary ? "Binary" : "General") +
                                  " section does not list " + names[i]);
            ++cur;
        }
        if (g != at[4] || b != at[5])
            throw FormatError("lp: stray entries in General or Binary");
    }

    // Objective: exactly the color-flag variables, unit coefficients.
    {
        const std::vector<std::string> tokens = tokenize(lines[at[0] + 1]);
        if (tokens.empty() || tokens[0] != "obj:")
            throw FormatError("lp: malformed objective line");
        const std::vector<ParsedTerm> terms = parse_terms(tokens, 1, tokens.size(), "lp objective");
        long long M = 0;
        for (const IlpVar& v : model.vars)
            if (v.kind == Kind::W) ++M;
        if (static_cast<long long>(terms.size()) != M)
            throw FormatError("lp: objective does not cover the color flags");
        for (long long i = 0; i < M; ++i) {
            if (terms[static_cast<std::size_t>(i)].coeff != 1 ||
                terms[static_cast<std::size_t>(i)].name != "w_" + std::to_string(i + 1))
                throw FormatError("lp: objective must be the sum of the color flags");
        }
        model.M = M;
    }

    // Rows.
    long long neq_color_rows = 0;
    for (std::size_t i = at[1] + 1; i < at[2]; ++i) {
        const std::vector<std::string> tokens = tokenize(lines[i]);
        if (tokens.size() < 4 || tokens[0].empty() || tokens[0].back() != ':')
            throw FormatError("lp: bad row line '" + lines[i] + "'");
        IlpRow row;
        row.tag = tag_from_string(tokens[0].substr(0, tokens[0].size() - 1));
        const std::string sense = tokens[tokens.size() - 2];
        if (sense == "<=")
            row.sense = RowSense::Le;
        else if (sense == ">=")
            row.sense = RowSense::Ge;
        else if (sense == "=")
            row.sense = RowSense::Eq;
        else
            throw FormatError("lp: bad sense '" + sense + "'");
        row.rhs = parse_canonical_int(tokens.back(), "lp rhs");
        const std::string where = "lp row " + tokens[0];
        const std::vector<ParsedTerm> terms =
            parse_terms(tokens, 1, tokens.size() - 2, where);
        row.offset = static_cast<std::int32_t>(model.pool.size());
        row.len = static_cast<std::int32_t>(terms.size());
        for (const ParsedTerm& term : terms) {
            const auto it = index_of.find(term.name);
            if (it == index_of.end())
                throw FormatError(where + ": unknown variable '" + term.name + "'");
            if (term.coeff < std::numeric_limits<std::int32_t>::min() ||
                term.coeff > std::numeric_limits<std::int32_t>::max())
                throw FormatError(where + ": coefficient out of range");
            model.pool.push_back({it->second, static_cast<std::int32_t>(term.coeff)});
        }
        model.rows.push_back(row);
        if (row.tag.family == Family::NeqColor) ++neq_color_rows;
    }

    for (const IlpVar& v : model.vars)
        if (v.kind == Kind::A) ++model.R;
    if (neq_color_rows % std::max<long long>(model.M, 1) != 0)
        throw FormatError("lp: inequality rows do not fill color blocks");
    model.Q = model.M >= 1 ? neq_color_rows / model.M : 0;

    try {
        model.fc_universe = fc::universe_from_json(meta.at("universe"));
        if (meta.contains("anchor")) model.fc_anchor = meta.at("anchor").get<int>();
    } catch (const nlohmann::json::exception& ex) {
        throw FormatError(std::string("lp: metadata: ") + ex.what());
    }
    validate_model(model);
    return model;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json model_to_json(const IlpModel& model) {
    nlohmann::json j;
    j["M"] = model.M;
    j["Q"] = model.Q;
    j["R"] = model.R;
    j["fc"] = meta_json(model);
    nlohmann::json vars = nlohmann::json::array();
    for (const IlpVar& v : model.vars)
        vars.push_back({{"name", var_name(v)}, {"lo", v.lo}, {"hi", v.hi}});
    j["vars"] = std::move(vars);
    nlohmann::json rows = nlohmann::json::array();
    for (const IlpRow& row : model.rows) {
        nlohmann::json terms = nlohmann::json::array();
        for (std::int32_t k = 0; k < row.len; ++k) {
            const IlpTerm& term = model.pool[static_cast<std::size_t>(row.offset + k)];
            terms.push_back({var_name(model.vars[static_cast<std::size_t>(term.var)]),
                             term.coeff});
        }
        rows.push_back({{"tag", tag_to_string(row.tag)},
                        {"sense", sense_text(row.sense)},
                        {"rhs", row.rhs},
                        {"terms", std::move(terms)}});
    }
    j["rows"] = std::move(rows);
    return j;
}

IlpModel model_from_json(const nlohmann::json& j) {
    IlpModel model;
    try {
        for (const nlohmann::json& vj : j.at("vars")) {
            IlpVar v = var_from_name(vj.at("name").get<std::string>());
            v.lo = vj.at("lo").get<std::int32_t>();
            v.hi = vj.at("hi").get<std::int32_t>();
            model.vars.push_back(v);
        }
        std::unordered_map<std::string, std::int32_t> index_of;
        index_of.reserve(model.vars.size());
        for (std::size_t i = 0; i < model.vars.size(); ++i)
            if (!index_of
                     .emplace(var_name(model.vars[i]), static_cast<std::int32_t>(i))
                     .second)
                throw FormatError("model json: duplicate variable name");
        long long neq_color_rows = 0;
        for (const nlohmann::json& rj : j.at("rows")) {
            IlpRow row;
            row.tag = tag_from_string(rj.at("tag").get<std::string>());
            const std::string sense = rj.at("sense").get<std::string>();
            if (sense == "<=")
                row.sense = RowSense::Le;
            else if (sense == ">=")
                row.sense = RowSense::Ge;
            else if (sense == "=")
                row.sense = RowSense::Eq;
            else
                throw FormatError("model json: bad sense '" + sense + "'");
            if (!rj.at("rhs").is_number_integer())
                throw FormatError("model json: rhs must be an integer");
            row.rhs = rj.at("rhs").get<long long>();
            row.offset = static_cast<std::int32_t>(model.pool.size());
            const nlohmann::json& terms = rj.at("terms");
            row.len = static_cast<std::int32_t>(terms.size());
            for (const nlohmann::json& tj : terms) {
                if (!tj.is_array() || tj.size() != 2)
                    throw FormatError("model json: term must be [name, coefficient]");
                const auto it = index_of.find(tj.at(0).get<std::string>());
                if (it == index_of.end())
                    throw FormatError("model json: unknown variable in row");
                if (!tj.at(1).is_number_integer())
                    throw FormatError("model json: coefficient must be an integer");
                model.pool.push_back({it->second, tj.at(1).get<std::int32_t>()});
            }
            model.rows.push_back(row);
            if (row.tag.family == Family::NeqColor) ++neq_color_rows;
        }
        for (const IlpVar& v : model.vars) {
            if (v.kind == Kind::W) ++model.M;
            if (v.kind == Kind::A) ++model.R;
        }
        if (model.M >= 1) {
            if (neq_color_rows % model.M != 0)
                throw FormatError("model json: inequality rows do not fill color blocks");
            model.Q = neq_color_rows / model.M;
        }
        if (j.at("M").get<long long>() != model.M || j.at("Q").get<long long>() != model.Q ||
            j.at("R").get<long long>() != model.R)
            throw FormatError("model json: declared sizes disagree with content");
        model.fc_universe = fc::universe_from_json(j.at("fc").at("universe"));
        if (j.at("fc").contains("anchor"))
            model.fc_anchor = j.at("fc").at("anchor").get<int>();
    } catch (const nlohmann::json::exception& ex) {
        throw FormatError(std::string("model json: ") + ex.what());
    }
    validate_model(model);
    return model;
}

nlohmann::json assignment_to_json(const IlpModel& model, const std::vector<long long>& values) {
    if (values.size() != model.vars.size())
        throw std::invalid_argument("assignment_to_json: value count mismatch");
    nlohmann::json vj = nlohmann::json::object();
    for (std::size_t i = 0; i < values.size(); ++i) vj[var_name(model.vars[i])] = values[i];
    return nlohmann::json{{"values", std::move(vj)}};
}

std::vector<long long> assignment_from_json(const IlpModel& model, const nlohmann::json& j) {
    try {
        const nlohmann::json& vj = j.at("values");
        if (!vj.is_object()) throw FormatError("assignment json: values must be an object");
        if (vj.size() != model.vars.size())
            throw FormatError("assignment json: value count mismatch");
        std::unordered_map<std::string, std::size_t> index_of;
        index_of.reserve(model.vars.size());
        for (std::size_t i = 0; i < model.vars.size(); ++i)
            index_of.emplace(var_name(model.vars[i]), i);
        std::vector<long long> values(model.vars.size(), 0);
        for (const auto& [name, value] : vj.items()) {
            const auto it = index_of.find(name);
            if (it == index_of.end())
                throw FormatError("assignment json: unknown variable '" + name + "'");
            if (!value.is_number_integer())
                throw FormatError("assignment json: value for '" + name +
                                  "' must be an integer");
            values[it->second] = value.get<long long>();
        }
        return values;
    } catch (const nlohmann::json::exception& ex) {
        throw FormatError(std::string("assignment json: ") + ex.what());
    }
}

}  // namespace trapdoor::ilp
