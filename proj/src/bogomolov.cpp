#include "gk/bogomolov.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gk/errors.hpp"
#include "gk/zlinalg.hpp"

namespace gk {

namespace {

long long nmod(long long a, long long n) { return ((a % n) + n) % n; }

bool group_is_cyclic(const Group& g) {
    for (int i = 0; i < g.order(); ++i)
        if (g.element_order(i) == g.order()) return true;
    return g.order() == 1;
}

}  // namespace

std::vector<BicyclicSubgroup> bicyclic_subgroups(const Group& g, int cap) {
    if (g.order() > cap) throw OrderCapExceeded("bicyclic_subgroups: group order exceeds cap");
    std::vector<BicyclicSubgroup> out;
    std::set<std::vector<int>> seen;
    for (int x = 0; x < g.order(); ++x)
        for (int y = x; y < g.order(); ++y) {
            if (g.mul(x, y) != g.mul(y, x)) continue;
            Subgroup s = subgroup_generated(g, std::vector<int>{x, y});
            if (seen.insert(s.elements).second) out.push_back({std::move(s), true});
        }
    for (auto& a : out)
        for (const auto& b : out) {
            if (a.subgroup.order() >= b.subgroup.order()) continue;
            if (std::includes(b.subgroup.elements.begin(), b.subgroup.elements.end(),
                              a.subgroup.elements.begin(), a.subgroup.elements.end())) {
                a.maximal = false;
                break;
            }
        }
    return out;
}

B0Result b0(const Group& g, int cap, bool maximal_only) {
    CohomologyModule m = h2_qz(g, cap);
    long long n = m.n;
    int k = static_cast<int>(m.invariants.factors.size());

    auto bics = bicyclic_subgroups(g);
    int used = 0;
    Mat rows;  // constraints on coordinate vectors, scaled into Z/n
    for (const BicyclicSubgroup& bc : bics) {
        if (maximal_only && !bc.maximal) continue;
        ++used;
        if (k == 0) continue;
        if (bc.subgroup.is_whole()) {
            // self-restriction is the identity: every coordinate must vanish
            for (int i = 0; i < k; ++i) {
                Vec row(k, 0);
                row[i] = n / m.invariants.factors[i];
                rows.push_back(std::move(row));
            }
            continue;
        }
        Group a = subgroup_as_group(bc.subgroup);
        if (a.order() == 1) continue;
        CohomologyModule ma = h2_qz_at(a, n, cap);
        if (ma.invariants.factors.empty()) continue;
        Mat coords;  // per basis class of m, its coordinates in ma
        for (int i = 0; i < k; ++i)
            coords.push_back(class_coordinates(ma, restrict_cocycle(m.basis[i], a)));
        for (std::size_t j = 0; j < ma.invariants.factors.size(); ++j) {
            long long scale = n / ma.invariants.factors[j];
            Vec row(k, 0);
            for (int i = 0; i < k; ++i) row[i] = nmod(coords[i][j] * scale, n);
            rows.push_back(std::move(row));
        }
    }

    B0Result result;
    result.method = "full_cocycle";
    result.details = std::to_string(used) + (maximal_only ? " maximal" : "") +
                     " bicyclic subgroups of " + std::to_string(bics.size());
    if (k == 0) return result;

    Mat gens;
    if (rows.empty()) {
        for (int i = 0; i < k; ++i) {
            Vec e(k, 0);
            e[i] = 1;
            gens.push_back(std::move(e));
        }
    } else {
        gens = kernel_mod_n_dense(rows, n);
    }
    Mat rels;  // the basis classes have finite order, so d_i e_i is zero
    for (int i = 0; i < k; ++i) {
        Vec e(k, 0);
        e[i] = m.invariants.factors[i];
        rels.push_back(e);
        gens.push_back(std::move(e));
    }
    result.invariants = quotient_invariants(gens, rels, n);

    if (!result.invariants.trivial())
        for (const Vec& x : gens) {
            bool zero = true;
            for (int i = 0; i < k; ++i)
                if (nmod(x[i], m.invariants.factors[i]) != 0) zero = false;
            if (zero) continue;
            CocycleVector w{m.group, n, Vec(static_cast<std::size_t>(g.order()) * g.order(), 0)};
            for (int i = 0; i < k; ++i)
                w = add_cocycles(w, scale_cocycle(m.basis[i], nmod(x[i], n)));
            result.witnesses.push_back(std::move(w));
        }
    return result;
}

std::optional<B0Result> b0_sylow_reduction(const Group& g, const FrobeniusStructure& s, int cap) {
    if (s.group != &g) throw FormatError("b0_sylow_reduction: structure does not belong to group");
    Group kernel = subgroup_as_group(s.kernel);
    std::string details = "restriction embeds the obstruction into the direct sum over the "
                          "kernel's Sylow subgroups;";
    for (auto [p, e] : factorize(kernel.order())) {
        Group np = subgroup_as_group(sylow(kernel, static_cast<int>(p)));
        std::string tag = " p=" + std::to_string(p) + ":";
        if (auto crit = b0_zero_criteria(np)) {
            details += tag + *crit;
            continue;
        }
        if (np.order() <= cap && b0(np, cap).invariants.trivial()) {
            details += tag + "full_cocycle";
            continue;
        }
        return std::nullopt;  // this direction of the lemma proves nothing here
    }
    B0Result result;
    result.method = "sylow_reduction";
    result.details = details;
    return result;
}

std::optional<std::string> b0_zero_criteria(const Group& h) {
    if (h.order() == 1) return "abelian";
    auto fact = factorize(h.order());
    if (fact.size() != 1) throw NotAPGroup("b0_zero_criteria: order is not a prime power");
    auto [p, e] = fact[0];

    auto preds = structural_predicates(h);
    if (preds.is_abelian) return "abelian";

    auto norms = normal_subgroups(h);
    for (const Subgroup& nsub : norms)
        if (subgroup_is_cyclic(nsub) && group_is_cyclic(quotient(h, nsub).group))
            return "metacyclic";

    if (e >= 2) {
        long long target = h.order() / (p * p);
        for (int i = 0; i < h.order(); ++i)
            if (h.element_order(i) == target) return "cyclic_subgroup_of_index_p2";
    }

    for (const Subgroup& nsub : norms)
        if (subgroup_is_abelian(nsub) && group_is_cyclic(quotient(h, nsub).group))
            return "abelian_normal_with_cyclic_quotient";

    auto bics = bicyclic_subgroups(h);
    for (const Subgroup& nsub : norms) {
        if (!subgroup_is_abelian(nsub)) continue;
        for (const BicyclicSubgroup& bc : bics) {
            if (nsub.order() * bc.subgroup.order() != h.order()) continue;
            std::vector<int> meet;
            std::set_intersection(nsub.elements.begin(), nsub.elements.end(),
                                  bc.subgroup.elements.begin(), bc.subgroup.elements.end(),
                                  std::back_inserter(meet));
            if (meet.size() == 1) return "abelian_normal_with_bicyclic_complement";
        }
    }

    if (p == 2 && h.order() <= 32) return "order_at_most_32";
    if (p > 2 && h.order() <= p * p * p * p) return "order_at_most_p4";
    return std::nullopt;
}

}  // namespace gk
