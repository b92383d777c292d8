#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gk/perm.hpp"

namespace gk {

// Finite permutation group with fully materialized element list.
// Immutable after construction; element 0 is the identity.
class Group {
public:
    static constexpr int kDefaultCap = 20000;

    static Group from_generators(int degree, std::vector<Perm> gens, int cap = kDefaultCap);

    int degree() const { return degree_; }
    int order() const { return static_cast<int>(elements_.size()); }
    const Perm& element(int i) const { return elements_[i]; }
    const std::vector<Perm>& elements() const { return elements_; }
    const std::vector<Perm>& generators() const { return generators_; }
    int generator_index(int i) const { return gen_indices_[i]; }
    int num_generators() const { return static_cast<int>(generators_.size()); }

    // -1 when the permutation is not an element.
    int index_of(const Perm& p) const {
        auto it = index_.find(p);
        return it == index_.end() ? -1 : it->second;
    }

    int mul(int a, int b) const {
        if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * elements_.size() + b];
        return index_.at(elements_[a].after(elements_[b]));
    }
    int inv(int a) const { return inv_[a]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv_[g]); }

    int element_order(int i) const;
    long long exponent() const;

    // Extends a generator assignment to the whole group along BFS words and
    // verifies the homomorphism property f(s·x) = f(s)·f(x). Returns the empty
    // vector when the assignment does not define a homomorphism.
    template <typename T, typename MulFn>
    std::vector<T> extend_hom(const std::vector<T>& gen_images, const T& id, MulFn mulfn) const {
        std::vector<T> f(elements_.size(), id);
        for (std::size_t i = 1; i < elements_.size(); ++i) {
            auto [parent, gen] = bfs_word_[i];
            f[i] = mulfn(gen_images[gen], f[parent]);
        }
        for (std::size_t x = 0; x < elements_.size(); ++x)
            for (int s = 0; s < num_generators(); ++s) {
                int sx = mul(gen_indices_[s], static_cast<int>(x));
                if (!(f[sx] == mulfn(gen_images[s], f[x]))) return {};
            }
        return f;
    }

private:
    int degree_ = 0;
    std::vector<Perm> elements_;
    std::vector<Perm> generators_;
    std::vector<int> gen_indices_;
    std::vector<int> inv_;
    std::vector<int> mul_table_;  // built when the order is small enough
    std::vector<std::pair<int, int>> bfs_word_;  // (parent element, generator) per element
    std::unordered_map<Perm, int, PermHash> index_;
};

// Generating subset of a parent group; elements is a sorted index list.
struct Subgroup {
    const Group* parent = nullptr;
    std::vector<int> generators;  // parent element indices
    std::vector<int> elements;    // sorted parent element indices, always contains 0

    int order() const { return static_cast<int>(elements.size()); }
    bool contains(int idx) const;
    bool same_elements(const Subgroup& other) const { return elements == other.elements; }
    bool is_whole() const { return order() == parent->order(); }
};

Subgroup subgroup_generated(const Group& g, const std::vector<int>& elem_indices);
Subgroup subgroup_generated(const Group& g, const std::vector<Perm>& elems);
Subgroup trivial_subgroup(const Group& g);
Subgroup whole_subgroup(const Group& g);

bool is_normal(const Group& g, const Subgroup& n);
Subgroup sylow(const Group& g, int p);
Subgroup centralizer(const Group& g, const Subgroup& s);
Subgroup center(const Group& g);
Subgroup derived_subgroup(const Group& g);
Subgroup normal_closure(const Group& g, const std::vector<int>& seed);

struct StructuralPredicates {
    bool is_abelian = false;
    bool is_cyclic = false;
    bool is_nilpotent = false;
    bool is_solvable = false;
    bool is_perfect = false;
    Subgroup center;
    Subgroup derived;
};
StructuralPredicates structural_predicates(const Group& g);

bool subgroup_is_abelian(const Subgroup& s);
bool subgroup_is_cyclic(const Subgroup& s);

std::vector<std::vector<int>> conjugacy_classes(const Group& g);
std::vector<Subgroup> normal_subgroups(const Group& g);

struct Quotient {
    Group group;
    std::vector<int> projection;  // parent element index -> quotient element index
};
Quotient quotient(const Group& g, const Subgroup& n);

struct IsoResult {
    bool isomorphic = false;
    std::vector<int> witness;  // g element index -> h element index
};
IsoResult is_isomorphic(const Group& g, const Group& h);

struct Product {
    Group group;
    Subgroup left;
    Subgroup right;
};

// action[i] is the automorphism of n (element-index map) assigned to the i-th
// generator of h; the assignment must respect h's relations.
Product semidirect_product(const Group& n, const Group& h,
                           const std::vector<std::vector<int>>& action,
                           int cap = Group::kDefaultCap);
Product direct_product(const Group& g, const Group& h, int cap = Group::kDefaultCap);

// Realizes a subgroup as a Group on the parent's point set.
Group subgroup_as_group(const Subgroup& s);

// x -> x^e power map as automorphism data when gcd(e, ord) = 1.
std::vector<int> power_automorphism(const Group& g, long long e);

// Invariant factors d1 | d2 | ... of a finite abelian group (largest last).
std::vector<long long> abelian_invariants(const Group& g);

Group cyclic_group(int n);
Group symmetric_group(int n);
Group alternating_group(int n);
Group dihedral_group(int n);  // order 2n
Group abelian_group(const std::vector<int>& orders);

bool is_prime(long long p);

}  // namespace gk
