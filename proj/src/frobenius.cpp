#include "gk/frobenius.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gk/constructors.hpp"

namespace gk {
namespace {

bool trivial_intersection(const Subgroup& a, const Subgroup& b) {
    std::vector<int> common;
    std::set_intersection(a.elements.begin(), a.elements.end(), b.elements.begin(),
                          b.elements.end(), std::back_inserter(common));
    return common.size() == 1;
}

// does any nontrivial element of s centralize a nontrivial element of n?
bool has_fixed_point(const Group& g, const std::vector<int>& s_elems,
                     const std::vector<int>& n_elems) {
    for (int a : s_elems) {
        if (a == 0) continue;
        for (int x : n_elems) {
            if (x == 0) continue;
            if (g.conj(a, x) == x) return true;
        }
    }
    return false;
}

std::vector<int> conjugated_elements(const Group& g, int c, const std::vector<int>& elems) {
    std::vector<int> out;
    out.reserve(elems.size());
    for (int e : elems) out.push_back(g.conj(c, e));
    std::sort(out.begin(), out.end());
    return out;
}

bool are_conjugate_subgroups(const Group& g, const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return false;
    for (int c = 0; c < g.order(); ++c)
        if (conjugated_elements(g, c, a.elements) == b.elements) return true;
    return false;
}

// DFS over subgroups with order dividing `target` and a fixed-point-free
// action on n; collects those of exactly the target order.
void complement_dfs(const Group& g, const Subgroup& n, int target, const Subgroup& cur,
                    int min_next, std::vector<Subgroup>& found) {
    if (cur.order() == target) {
        for (const Subgroup& f : found)
            if (f.same_elements(cur)) return;
        found.push_back(cur);
        return;
    }
    for (int x = min_next; x < g.order(); ++x) {
        if (cur.contains(x) || n.contains(x)) continue;
        std::vector<int> gens = cur.generators;
        gens.push_back(x);
        Subgroup next = subgroup_generated(g, gens);
        if (target % next.order() != 0) continue;
        if (!trivial_intersection(next, n)) continue;
        if (has_fixed_point(g, next.elements, n.elements)) continue;
        complement_dfs(g, n, target, next, x + 1, found);
    }
}

bool is_cyclic_or_generalized_quaternion(const Group& parent, const Subgroup& s) {
    if (subgroup_is_cyclic(s)) return true;
    int o = s.order();
    if (o < 8 || (o & (o - 1)) != 0) return false;
    return is_isomorphic(subgroup_as_group(s), quaternion_generalized(o)).isomorphic;
}

}  // namespace

bool is_fixed_point_free(const Subgroup& n, const Subgroup& g0) {
    const Group& g = *n.parent;
    if (g0.parent != n.parent) throw NotAComplement("subgroups of different groups");
    if (!is_normal(g, n)) throw NotAComplement("kernel candidate is not normal");
    if (!trivial_intersection(n, g0) ||
        (long long)n.order() * g0.order() != (long long)g.order())
        throw NotAComplement("not a complement");
    return !has_fixed_point(g, g0.elements, n.elements);
}

std::vector<FrobeniusStructure> find_frobenius_structures(const Group& g) {
    std::vector<FrobeniusStructure> out;
    if (g.order() == 1) return out;
    // central elements are fixed points of every complement
    if (center(g).order() > 1) return out;

    for (const Subgroup& n : normal_subgroups(g)) {
        if (n.order() == 1 || n.is_whole()) continue;
        int target = g.order() / n.order();
        std::vector<Subgroup> complements;
        complement_dfs(g, n, target, trivial_subgroup(g), 1, complements);

        std::vector<Subgroup> reps;
        for (Subgroup& c : complements) {
            bool seen = false;
            for (const Subgroup& r : reps)
                if (are_conjugate_subgroups(g, r, c)) {
                    seen = true;
                    break;
                }
            if (seen) continue;
            reps.push_back(c);
            FrobeniusStructure s{&g, n, c, {}};
            s.checks["kernel_normal"] = true;
            s.checks["complement_order"] = true;
            s.checks["trivial_intersection"] = true;
            s.checks["fixed_point_free"] = is_fixed_point_free(n, c);
            if (s.checks["fixed_point_free"]) out.push_back(std::move(s));
        }
    }
    return out;
}

Subgroup kernel_by_partition(const Group& g, const Subgroup& g0) {
    std::vector<char> covered(g.order(), 0);
    for (int c = 0; c < g.order(); ++c)
        for (int e : g0.elements) {
            if (e == 0) continue;
            covered[g.conj(c, e)] = 1;
        }
    std::vector<int> k{0};
    for (int i = 1; i < g.order(); ++i)
        if (!covered[i]) k.push_back(i);
    if ((long long)k.size() * g0.order() != (long long)g.order())
        throw NotAFrobeniusComplementInG("complement conjugates do not partition the group");
    // closure check
    std::set<int> kset(k.begin(), k.end());
    for (int a : k)
        for (int b : k)
            if (!kset.count(g.mul(a, b)))
                throw NotAFrobeniusComplementInG("kernel candidate is not closed");
    Subgroup s;
    s.parent = &g;
    s.generators = k;
    s.elements = k;  // sorted by construction
    return s;
}

std::map<std::string, bool> verify_structure_theorems(const FrobeniusStructure& s) {
    const Group& g = *s.group;
    std::map<std::string, bool> checks;
    checks["coprime_orders"] = std::gcd(s.kernel.order(), s.complement.order()) == 1;
    checks["even_complement_implies_abelian_kernel"] =
        s.complement.order() % 2 != 0 || subgroup_is_abelian(s.kernel);
    {
        Group k = subgroup_as_group(s.kernel);
        checks["kernel_nilpotent"] = structural_predicates(k).is_nilpotent;
    }
    {
        Group c = subgroup_as_group(s.complement);
        bool ok = true;
        int o = c.order();
        for (int p = 2; p <= o; ++p) {
            if (!is_prime(p) || o % p != 0) continue;
            Subgroup sp = sylow(c, p);
            if (p == 2)
                ok = ok && is_cyclic_or_generalized_quaternion(c, sp);
            else
                ok = ok && subgroup_is_cyclic(sp);
        }
        checks["complement_sylow_shapes"] = ok;
    }
    for (const auto& [name, pass] : checks)
        if (!pass) throw TheoremViolation("structural check failed: " + name);
    return checks;
}

}  // namespace gk
