#pragma once

#include <optional>
#include <string>

#include "gk/constructors.hpp"
#include "gk/group.hpp"

namespace gk {

struct ComplementCriterion {
    Subgroup prime_order_subgroup;  // generated by all elements of prime order
    bool has_decomposition = false;
    long long n = 1;         // squarefree cyclic factor order
    std::string h_tag;       // "trivial" | "SL2F3" | "SL2F5"
    bool is_frobenius_complement = false;
};

struct SolvableClassification {
    std::string type;  // "I" | "II" | "III" | "IV"
    std::optional<PresentationParams> params;
};

struct GZReport {
    bool is_z_group = false;
    bool is_gz_group = false;
    std::string solvable_type = "none";     // "I".."IV" or "none"
    std::string nonsolvable_type = "none";  // "NS-I" | "NS-II" | "none"
    std::optional<PresentationParams> params;
    ComplementCriterion complement_criterion;
};

// True iff every subgroup of order exactly p*q is cyclic (vacuously true when
// none exist). Subgroups are enumerated from generator pairs with orders in
// {p, q}; groups of order pq and p^2 are 2-generated, so this is exhaustive.
bool satisfies_pq_condition(const Group& g, long long p, long long q);

// All Sylow subgroups cyclic.
bool is_z_group(const Group& g);

// Odd Sylows cyclic, 2-Sylow cyclic or generalized quaternion; cross-checked
// against the every-abelian-subgroup-is-cyclic test (InternalInconsistency on
// disagreement).
bool is_gz_group(const Group& g);

// Matches a solvable GZ-group to its presentation family with best-effort
// parameter recovery (isomorphism sweep fallback); throws NotSolvableGZ.
SolvableClassification classify_solvable_gz(const Group& g);

// "NS-I" when g is an internal direct product of a Z-group and an SL2(F_p)
// copy, otherwise "NS-II"; throws NotNonsolvableGZ.
std::string classify_nonsolvable_gz(const Group& g);

// E = <elements of prime order>; decides whether E = C_n x H with n
// squarefree, gcd{n, |H|} = 1, and H one of 1, SL2(F3), SL2(F5).
ComplementCriterion frobenius_complement_criterion(const Group& g,
                                                   int cap = Group::kDefaultCap);

GZReport gz_report(const Group& g, int cap = Group::kDefaultCap);

}  // namespace gk
