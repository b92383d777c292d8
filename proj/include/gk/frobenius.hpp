#pragma once

#include <map>
#include <string>
#include <vector>

#include "gk/group.hpp"

namespace gk {

struct FrobeniusStructure {
    const Group* group = nullptr;
    Subgroup kernel;
    Subgroup complement;
    std::map<std::string, bool> checks;
};

// Exhaustive fixed-point-freeness of the conjugation action of g0 on n.
// Throws NotAComplement unless n is normal and g0 is a complement of n.
bool is_fixed_point_free(const Subgroup& n, const Subgroup& g0);

// All kernel/complement pairs with a fixed-point-free action, one complement
// per conjugacy class; empty result means the group is not Frobenius.
std::vector<FrobeniusStructure> find_frobenius_structures(const Group& g);

// Reconstructs the kernel from a complement alone as
// {1} u (G minus all conjugates of g0\{1}); throws
// NotAFrobeniusComplementInG when the result is not a subgroup of the right
// order.
Subgroup kernel_by_partition(const Group& g, const Subgroup& g0);

// Structural facts that hold for every genuine Frobenius structure; a false
// check indicates an internal bug and raises TheoremViolation.
std::map<std::string, bool> verify_structure_theorems(const FrobeniusStructure& s);

}  // namespace gk
