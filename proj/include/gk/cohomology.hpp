#pragma once

#include <string>
#include <vector>

#include "gk/group.hpp"
#include "gk/zlinalg.hpp"

namespace gk {

// Normalized 2-cochain with values mod n; values[g * |G| + h], zero whenever
// g or h is the identity.
struct CocycleVector {
    const Group* group = nullptr;
    long long n = 0;
    Vec values;

    long long at(int g, int h) const { return values[(std::size_t)g * group->order() + h]; }
    bool is_cocycle() const;
};

CocycleVector add_cocycles(const CocycleVector& a, const CocycleVector& b);
CocycleVector scale_cocycle(const CocycleVector& a, long long c);

// delta of a normalized 1-cochain c (indexed by element, c[0] = 0):
// (delta c)(g,h) = c(g) + c(h) - c(gh).
CocycleVector coboundary(const Group& g, const Vec& c, long long n);

// H^2(G, Z/n) with trivial action, or its quotient modelling H^2(G, Q/Z).
struct CohomologyModule {
    const Group* group = nullptr;
    long long n = 0;
    std::string kind;  // "H2_mod_n" | "H2_QZ_model"
    AbelianInvariants invariants;
    std::vector<CocycleVector> basis;  // one representative per invariant factor

    // per-prime-power reduction machinery, kept for coordinate computations
    struct Component {
        long long p = 0;
        int e = 0;
        long long pk = 0;
        Mat kernel;             // cocycle-space basis in generator-pair coordinates
        Mat usnf;               // row transform of the relation-lattice SNF
        Vec diag;               // full SNF diagonal
        std::vector<int> kept;  // diagonal positions with factor > 1, ascending
    };
    std::vector<Component> components;
};

// Full H^2(G, Z/n) by sparse cocycle elimination in generator-pair
// coordinates; throws CohomologyCapExceeded past the cap and BadModulus for
// n < 2.
CohomologyModule h2_mod_n(const Group& g, long long n, int cap = 72);

// H^2(G, Z/|G|) modulo the image of the connecting map from Hom(G, Z/|G|);
// isomorphic to H^2(G, Q/Z), the Schur multiplier.
CohomologyModule h2_qz(const Group& g, int cap = 72);

// Same model at an explicit coefficient modulus (any multiple of the group
// exponent works and gives an isomorphic module); lets a subgroup's module
// share the modulus of an ambient group so restricted classes can be reduced.
CohomologyModule h2_qz_at(const Group& g, long long n, int cap = 72);

// All homomorphisms G -> Z/n as element-indexed value tables.
std::vector<Vec> hom_to_cyclic(const Group& g, long long n);

// Pointwise restriction to a subgroup realized as its own Group (ag must
// consist of permutations belonging to f's group).
CocycleVector restrict_cocycle(const CocycleVector& f, const Group& ag);

// Coordinates of the class of f in m, one residue per invariant factor.
// Throws RelationOutsideSpan when f is not a cocycle mod m.n.
Vec class_coordinates(const CohomologyModule& m, const CocycleVector& f);

}  // namespace gk
