#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gk/cohomology.hpp"
#include "gk/frobenius.hpp"
#include "gk/group.hpp"

namespace gk {

struct BicyclicSubgroup {
    Subgroup subgroup;
    bool maximal = false;
};

// All subgroups generated by a commuting pair of elements (these are exactly
// the abelian subgroups of rank <= 2), deduplicated by element set.
std::vector<BicyclicSubgroup> bicyclic_subgroups(const Group& g, int cap = Group::kDefaultCap);

struct B0Result {
    AbelianInvariants invariants;
    std::string method;   // "full_cocycle" | "sylow_reduction" | "criterion"
    std::string details;  // bicyclic-subgroup count or criterion chain
    std::vector<CocycleVector> witnesses;  // representatives of nonzero classes
};

// Unramified-Brauer obstruction: the intersection of the restriction kernels
// H^2(G, Q/Z) -> H^2(A, Q/Z) over the (maximal) bicyclic subgroups A.
B0Result b0(const Group& g, int cap = 72, bool maximal_only = true);

// Fast path for a verified Frobenius structure: the restriction chain
// B0(G) -> B0(N) -> direct sum of B0(N_p) over Sylow subgroups of the kernel
// is injective, so trivial Sylow contributions force B0(G) = 0. Returns
// nullopt when some Sylow contribution cannot be shown trivial (the
// implication only runs one way).
std::optional<B0Result> b0_sylow_reduction(const Group& g, const FrobeniusStructure& s,
                                           int cap = 72);

// First matching sufficient condition for B0(h) = 0 on a p-group, or nullopt.
// Throws NotAPGroup unless |h| is a prime power.
std::optional<std::string> b0_zero_criteria(const Group& h);

}  // namespace gk
