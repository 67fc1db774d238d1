#pragma once

#include "trapdoor/fc.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace trapdoor::ilp {

// Integer program produced from a coloring instance with M variables,
// Q neq clauses and R impl clauses.  Variable layout (declaration order):
//
//   w_i      (i = 1..M)          color i is used                  [0, 1]
//   x_{u,i}  (u-major, 1..M^2)   vertex u has color i             [0, 1]
//   zhat_u   (u = 1..M)          color of vertex u                [1, M]
//   per impl clause j = 1..R:    a_j, b_j, s_j, q_j, qp_j         [0, 1]
//
// a_j is 1 exactly when the conclusion colors match, b_j exactly when the
// premise colors differ, s_j = a_j OR b_j must be 1; q_j / qp_j pick the
// strict side when the respective pair differs.  The objective (implicit:
// minimize the sum of the w family) counts the colors used.
struct IlpVar {
    enum class Kind : std::uint8_t { W, X, Zhat, A, B, S, Q, Qp };
    Kind kind = Kind::W;
    std::int32_t i1 = 0, i2 = 0;  // 1-based indices; only X uses i2
    std::int32_t lo = 0, hi = 0;

    friend bool operator==(const IlpVar&, const IlpVar&) = default;
};

std::string var_name(const IlpVar& v);
// Inverse on the name part only (bounds come back zeroed).
IlpVar var_from_name(const std::string& name);

struct IlpTerm {
    std::int32_t var = 0;  // index into IlpModel::vars
    std::int32_t coeff = 0;

    friend bool operator==(const IlpTerm&, const IlpTerm&) = default;
};

enum class RowSense : std::uint8_t { Le, Ge, Eq };

struct RowTag {
    enum class Family : std::uint8_t {
        OneColor,   // one_color_u:   sum_i x_{u,i} = 1
        AssignUb,   // assign_ub_u_i: zhat_u + L x_{u,i} <= i + L
        AssignLb,   // assign_lb_u_i: zhat_u - L x_{u,i} >= i - L
        Used,       // used_u_i:      x_{u,i} - w_i <= 0
        NeqColor,   // neq_j_i:       x_{u,i} + x_{v,i} <= 1
        EqFwdUb,    // eq_fwd_ub_j:   zhat_k - zhat_l + L a_j <= L
        EqFwdLb,    // eq_fwd_lb_j:   zhat_k - zhat_l - L a_j >= -L
        EqBwdLt,    // eq_bwd_lt_j:   zhat_k - zhat_l + L q_j - L a_j <= L - 1
        EqBwdGt,    // eq_bwd_gt_j:   zhat_k - zhat_l + L q_j + L a_j >= 1
        NeqLt,      // neq_lt_j:      zhat_u - zhat_v + L qp_j + L b_j <= 2L - 1
        NeqGt,      // neq_gt_j:      zhat_u - zhat_v + L qp_j - L b_j >= 1 - L
        NeqUb,      // neq_ub_j:      zhat_u - zhat_v - L b_j <= 0
        NeqLb,      // neq_lb_j:      zhat_u - zhat_v + L b_j >= 0
        OrA,        // or_a_j:        s_j - a_j >= 0
        OrB,        // or_b_j:        s_j - b_j >= 0
        OrUb,       // or_ub_j:       s_j - a_j - b_j <= 0
        Sat,        // sat_j:         s_j >= 1
    };
    Family family = Family::OneColor;
    std::int32_t a = 0, b = 0;  // family-specific indices; b unused for most

    friend bool operator==(const RowTag&, const RowTag&) = default;
};

std::string tag_to_string(const RowTag& t);
RowTag tag_from_string(const std::string& s);

struct IlpRow {
    std::int64_t rhs = 0;
    std::int32_t offset = 0;  // into IlpModel::pool
    std::int32_t len = 0;
    RowSense sense = RowSense::Le;
    RowTag tag;

    friend bool operator==(const IlpRow&, const IlpRow&) = default;
};

struct IlpModel {
    std::int64_t M = 0, Q = 0, R = 0;
    std::vector<IlpVar> vars;
    std::vector<IlpTerm> pool;  // row terms, stored back to back
    std::vector<IlpRow> rows;
    // Origin of the model, kept so the coloring instance can be rebuilt.
    fc::FcUniverse fc_universe;
    std::optional<int> fc_anchor;

    std::int32_t w_index(std::int64_t i) const { return static_cast<std::int32_t>(i - 1); }
    std::int32_t x_index(std::int64_t u, std::int64_t i) const {
        return static_cast<std::int32_t>(M + (u - 1) * M + (i - 1));
    }
    std::int32_t z_index(std::int64_t u) const {
        return static_cast<std::int32_t>(M + M * M + (u - 1));
    }
    // t: 0 = a, 1 = b, 2 = s, 3 = q, 4 = qp
    std::int32_t aux_index(std::int64_t j, int t) const {
        return static_cast<std::int32_t>(2 * M + M * M + 5 * (j - 1) + t);
    }

    friend bool operator==(const IlpModel&, const IlpModel&) = default;
};

long long predicted_var_count(long long M, long long R);        // M^2 + 2M + 5R
long long predicted_row_count(long long M, long long Q, long long R);  // M(3M+Q+1) + 12R

// Structural integrity: bounds ordered, term indices valid, no duplicate
// variable within a row, nonzero coefficients, pool fully covered.
void validate_model(const IlpModel& model);

// Build the integer program for a coloring instance.  Rejects clauses whose
// endpoint pair names one variable twice (the difference rows would lose
// their variable terms); no reduction output contains such clauses.
IlpModel ilp_from_fc(const fc::FcInstance& inst);

// Exact inverse on the image of ilp_from_fc: rebuilds the coloring instance
// (impl clauses first, then neq clauses — the builder's canonical order)
// after checking every row against the expected shape.  Throws FormatError
// for any model the builder could not have produced.
fc::FcInstance fc_from_ilp(const IlpModel& model);

struct AssignmentCheck {
    bool ok = true;
    std::string violation;  // first failed bound or row, empty when ok
};
// values indexed like IlpModel::vars; exact integer arithmetic.
AssignmentCheck verify_assignment(const IlpModel& model, const std::vector<long long>& values);

struct IlpOptimum {
    bool feasible = false;
    long long objective = 0;
    std::vector<long long> values;
};
// Depth-first exhaustive search in declared variable order, values low to
// high, with interval propagation and objective pruning; the result is the
// lexicographically least optimal vector.  `budget` caps explored nodes
// (std::runtime_error when exhausted).  Infeasibility is a result, not an
// error.
IlpOptimum brute_force_ilp(const IlpModel& model, long long budget = 50'000'000);

// Colors from equal zhat values, numbered 0.. by first appearance; indexed
// like the coloring instance's variables.  Refuses (VerifyFailure) values
// that do not satisfy the model.
std::vector<int> coloring_from_assignment(const IlpModel& model,
                                          const std::vector<long long>& values);

// The canonical satisfying assignment for a valid coloring: w flags the
// first k colors, zhat takes the (first-appearance renumbered) color,
// x the indicator, and the helper variables their defining values with
// s_j = max(a_j, b_j).
std::vector<long long> assignment_from_coloring(const fc::FcInstance& inst,
                                                const std::vector<int>& colors);

// LP text: Minimize / Subject To / Bounds / General / Binary / End, row
// names = tags, every variable bounded in declaration order, first line a
// comment carrying the coloring-instance metadata.  parse_lp accepts
// exactly this dialect and round-trips byte-identically.
void write_lp(const IlpModel& model, std::ostream& out);
std::string write_lp(const IlpModel& model);
IlpModel parse_lp(const std::string& text);

nlohmann::json model_to_json(const IlpModel& model);
IlpModel model_from_json(const nlohmann::json& j);

nlohmann::json assignment_to_json(const IlpModel& model, const std::vector<long long>& values);
std::vector<long long> assignment_from_json(const IlpModel& model, const nlohmann::json& j);

}  // namespace trapdoor::ilp
