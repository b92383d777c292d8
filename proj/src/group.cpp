#include "gk/group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "gk/errors.hpp"

namespace gk {

namespace {

constexpr int kMulTableLimit = 1500;

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

std::vector<int> sorted_closure(const Group& g, std::vector<int> seed) {
    std::vector<char> in(g.order(), 0);
    std::vector<int> queue;
    in[0] = 1;
    queue.push_back(0);
    for (int s : seed)
        if (!in[s]) {
            in[s] = 1;
            queue.push_back(s);
        }
    std::vector<int> gens = std::move(seed);
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (int s : gens) {
            int y = g.mul(queue[head], s);
            if (!in[y]) {
                in[y] = 1;
                queue.push_back(y);
            }
        }
    std::sort(queue.begin(), queue.end());
    return queue;
}

bool is_prime_power(long long n, long long p) {
    if (n == 1) return true;
    while (n % p == 0) n /= p;
    return n == 1;
}

}  // namespace

bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Group Group::from_generators(int degree, std::vector<Perm> gens, int cap) {
    if (degree < 1) throw NotAPermutation("degree must be positive");
    for (const auto& p : gens)
        if (p.degree() != degree) throw NotAPermutation("generator degree mismatch");

    Group g;
    g.degree_ = degree;
    g.generators_ = gens;
    g.elements_.push_back(Perm::identity(degree));
    g.index_[g.elements_[0]] = 0;
    g.bfs_word_.emplace_back(-1, -1);
    for (std::size_t head = 0; head < g.elements_.size(); ++head) {
        Perm cur = g.elements_[head];  // copy: elements_ may reallocate
        for (std::size_t s = 0; s < gens.size(); ++s) {
            Perm next = gens[s].after(cur);
            if (g.index_.find(next) == g.index_.end()) {
                if (static_cast<int>(g.elements_.size()) >= cap)
                    throw OrderCapExceeded("group order exceeds cap " + std::to_string(cap));
                g.index_[next] = static_cast<int>(g.elements_.size());
                g.elements_.push_back(std::move(next));
                g.bfs_word_.emplace_back(static_cast<int>(head), static_cast<int>(s));
            }
        }
    }
    g.gen_indices_.resize(gens.size());
    for (std::size_t s = 0; s < gens.size(); ++s) g.gen_indices_[s] = g.index_.at(gens[s]);

    g.inv_.resize(g.elements_.size());
    for (std::size_t i = 0; i < g.elements_.size(); ++i) g.inv_[i] = g.index_.at(g.elements_[i].inverse());

    if (g.order() <= kMulTableLimit) {
        std::size_t n = g.elements_.size();
        g.mul_table_.resize(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                g.mul_table_[a * n + b] = g.index_.at(g.elements_[a].after(g.elements_[b]));
    }
    return g;
}

int Group::element_order(int i) const {
    int ord = 1, cur = i;
    while (cur != 0) {
        cur = mul(cur, i);
        ++ord;
    }
    return ord;
}

long long Group::exponent() const {
    long long e = 1;
    for (int i = 0; i < order(); ++i) e = e / gcd_ll(e, element_order(i)) * element_order(i);
    return e;
}

bool Subgroup::contains(int idx) const {
    return std::binary_search(elements.begin(), elements.end(), idx);
}

Subgroup subgroup_generated(const Group& g, const std::vector<int>& elem_indices) {
    for (int i : elem_indices)
        if (i < 0 || i >= g.order()) throw ElementNotInGroup("element index out of range");
    Subgroup s;
    s.parent = &g;
    s.generators = elem_indices;
    s.elements = sorted_closure(g, elem_indices);
    return s;
}

Subgroup subgroup_generated(const Group& g, const std::vector<Perm>& elems) {
    std::vector<int> idx;
    for (const auto& p : elems) {
        int i = g.index_of(p);
        if (i < 0) throw ElementNotInGroup("permutation is not a group element");
        idx.push_back(i);
    }
    return subgroup_generated(g, idx);
}

Subgroup trivial_subgroup(const Group& g) { return subgroup_generated(g, std::vector<int>{}); }

Subgroup whole_subgroup(const Group& g) {
    std::vector<int> gens;
    for (int i = 0; i < g.num_generators(); ++i) gens.push_back(g.generator_index(i));
    Subgroup s = subgroup_generated(g, gens);
    if (s.order() != g.order()) throw InternalInconsistency("generators do not generate");
    return s;
}

bool is_normal(const Group& g, const Subgroup& n) {
    for (int s = 0; s < g.num_generators(); ++s)
        for (int x : n.generators)
            if (!n.contains(g.conj(g.generator_index(s), x))) return false;
    return true;
}

Subgroup sylow(const Group& g, int p) {
    if (!is_prime(p)) throw NotPrime("p must be prime");
    long long pa = 1;
    long long n = g.order();
    while (n % p == 0) {
        n /= p;
        pa *= p;
    }
    if (pa == 1) return trivial_subgroup(g);

    std::vector<int> pelems;  // nontrivial elements of p-power order
    int best = 0, best_ord = 1;
    for (int i = 1; i < g.order(); ++i) {
        int o = g.element_order(i);
        if (is_prime_power(o, p)) {
            pelems.push_back(i);
            if (o > best_ord) {
                best_ord = o;
                best = i;
            }
        }
    }
    Subgroup cur = subgroup_generated(g, std::vector<int>{best});
    while (cur.order() < pa) {
        bool grew = false;
        for (int y : pelems) {
            if (cur.contains(y)) continue;
            std::vector<int> gens = cur.generators;
            gens.push_back(y);
            Subgroup next = subgroup_generated(g, gens);
            if (next.order() > cur.order() && is_prime_power(next.order(), p)) {
                cur = std::move(next);
                grew = true;
                break;
            }
        }
        if (!grew) throw InternalInconsistency("sylow growth stalled");
    }
    return cur;
}

Subgroup centralizer(const Group& g, const Subgroup& s) {
    std::vector<int> elems;
    for (int x = 0; x < g.order(); ++x) {
        bool ok = true;
        for (int t : s.generators)
            if (g.mul(x, t) != g.mul(t, x)) {
                ok = false;
                break;
            }
        if (ok) elems.push_back(x);
    }
    Subgroup c;
    c.parent = &g;
    c.generators = elems;
    c.elements = elems;  // already closed and sorted
    return c;
}

Subgroup center(const Group& g) { return centralizer(g, whole_subgroup(g)); }

Subgroup normal_closure(const Group& g, const std::vector<int>& seed) {
    std::vector<int> gens = seed;
    Subgroup s = subgroup_generated(g, gens);
    bool stable = false;
    while (!stable) {
        stable = true;
        for (int t = 0; t < g.num_generators() && stable; ++t)
            for (int x : s.elements) {
                int c = g.conj(g.generator_index(t), x);
                if (!s.contains(c)) {
                    gens.push_back(c);
                    s = subgroup_generated(g, gens);
                    stable = false;
                    break;
                }
            }
    }
    return s;
}

Subgroup derived_subgroup(const Group& g) {
    std::vector<int> comms;
    for (int s = 0; s < g.num_generators(); ++s)
        for (int t = 0; t < g.num_generators(); ++t) {
            int a = g.generator_index(s), b = g.generator_index(t);
            comms.push_back(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
        }
    return normal_closure(g, comms);
}

namespace {

// Derived subgroup of a subgroup, as an element set (all-pairs commutators).
std::vector<int> derived_of_set(const Group& g, const std::vector<int>& elems) {
    std::set<int> comms;
    for (int a : elems)
        for (int b : elems) comms.insert(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
    return sorted_closure(g, std::vector<int>(comms.begin(), comms.end()));
}

}  // namespace

bool subgroup_is_abelian(const Subgroup& s) {
    const Group& g = *s.parent;
    for (int a : s.generators)
        for (int b : s.generators)
            if (g.mul(a, b) != g.mul(b, a)) return false;
    return true;
}

bool subgroup_is_cyclic(const Subgroup& s) {
    const Group& g = *s.parent;
    for (int x : s.elements)
        if (g.element_order(x) == s.order()) return true;
    return false;
}

StructuralPredicates structural_predicates(const Group& g) {
    StructuralPredicates r;
    r.center = center(g);
    r.derived = derived_subgroup(g);
    r.is_abelian = r.center.order() == g.order();
    r.is_cyclic = subgroup_is_cyclic(whole_subgroup(g));
    r.is_perfect = r.derived.order() == g.order();

    std::vector<int> series = r.derived.elements;
    while (true) {
        std::vector<int> next = derived_of_set(g, series);
        if (next.size() == series.size()) break;
        series = std::move(next);
    }
    r.is_solvable = series.size() == 1;

    r.is_nilpotent = true;
    long long n = g.order();
    for (long long p = 2; p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            if (!is_normal(g, sylow(g, static_cast<int>(p)))) {
                r.is_nilpotent = false;
                break;
            }
        }
    return r;
}

std::vector<std::vector<int>> conjugacy_classes(const Group& g) {
    std::vector<std::vector<int>> classes;
    std::vector<char> seen(g.order(), 0);
    for (int i = 0; i < g.order(); ++i) {
        if (seen[i]) continue;
        std::vector<int> orbit{i};
        seen[i] = 1;
        for (std::size_t head = 0; head < orbit.size(); ++head)
            for (int s = 0; s < g.num_generators(); ++s) {
                int c = g.conj(g.generator_index(s), orbit[head]);
                if (!seen[c]) {
                    seen[c] = 1;
                    orbit.push_back(c);
                }
            }
        std::sort(orbit.begin(), orbit.end());
        classes.push_back(std::move(orbit));
    }
    return classes;
}

std::vector<Subgroup> normal_subgroups(const Group& g) {
    auto classes = conjugacy_classes(g);
    std::vector<Subgroup> found{trivial_subgroup(g)};
    std::set<std::vector<int>> seen{found[0].elements};
    for (std::size_t head = 0; head < found.size(); ++head) {
        // copy: found may reallocate
        std::vector<int> base = found[head].elements;
        for (const auto& cls : classes) {
            if (std::binary_search(base.begin(), base.end(), cls[0])) continue;
            std::vector<int> seed = base;
            seed.insert(seed.end(), cls.begin(), cls.end());
            Subgroup m = subgroup_generated(g, seed);
            if (seen.insert(m.elements).second) found.push_back(std::move(m));
        }
    }
    std::sort(found.begin(), found.end(),
              [](const Subgroup& a, const Subgroup& b) {
                  return a.order() != b.order() ? a.order() < b.order() : a.elements < b.elements;
              });
    return found;
}

Quotient quotient(const Group& g, const Subgroup& n) {
    if (!is_normal(g, n)) throw NotNormal("subgroup is not normal");
    int num_cosets = g.order() / n.order();

    std::vector<int> coset_id(g.order(), -1);
    std::vector<int> reps;
    for (int x = 0; x < g.order(); ++x) {
        if (coset_id[x] >= 0) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(x);
        for (int e : n.elements) coset_id[g.mul(x, e)] = id;
    }
    if (static_cast<int>(reps.size()) != num_cosets) throw InternalInconsistency("coset count mismatch");

    auto action = [&](int x) {
        std::vector<int> img(num_cosets);
        for (int j = 0; j < num_cosets; ++j) img[j] = coset_id[g.mul(x, reps[j])];
        return Perm(std::move(img));
    };

    std::vector<Perm> qgens;
    for (int s = 0; s < g.num_generators(); ++s) qgens.push_back(action(g.generator_index(s)));
    Quotient q{Group::from_generators(std::max(num_cosets, 1), qgens), {}};
    q.projection.resize(g.order());
    for (int x = 0; x < g.order(); ++x) {
        int idx = q.group.index_of(action(x));
        if (idx < 0) throw InternalInconsistency("projection image missing");
        q.projection[x] = idx;
    }
    return q;
}

namespace {

// Iso-invariant fingerprint: multiset of (element order, conjugacy class size).
std::multiset<std::pair<int, int>> order_class_profile(const Group& g) {
    std::multiset<std::pair<int, int>> prof;
    for (const auto& cls : conjugacy_classes(g)) {
        int o = g.element_order(cls[0]);
        for (std::size_t i = 0; i < cls.size(); ++i) prof.emplace(o, static_cast<int>(cls.size()));
    }
    return prof;
}

std::vector<int> small_generating_sequence(const Group& g) {
    std::vector<int> gens;
    Subgroup cur = trivial_subgroup(g);
    while (cur.order() < g.order()) {
        int best = -1, best_size = cur.order();
        for (int x = 0; x < g.order(); ++x) {
            if (cur.contains(x)) continue;
            std::vector<int> trial = gens;
            trial.push_back(x);
            int sz = subgroup_generated(g, trial).order();
            if (sz > best_size) {
                best_size = sz;
                best = x;
            }
            if (sz == g.order()) break;
        }
        gens.push_back(best);
        cur = subgroup_generated(g, gens);
    }
    return gens;
}

}  // namespace

IsoResult is_isomorphic(const Group& g, const Group& h) {
    if (g.order() != h.order()) return {};
    if (order_class_profile(g) != order_class_profile(h)) return {};

    std::vector<int> gens = small_generating_sequence(g);
    // fingerprint per element of h: (order, class size)
    std::vector<std::pair<int, int>> fph(h.order());
    for (const auto& cls : conjugacy_classes(h)) {
        int o = h.element_order(cls[0]);
        for (int e : cls) fph[e] = {o, static_cast<int>(cls.size())};
    }
    std::vector<std::pair<int, int>> fpg(gens.size());
    for (const auto& cls : conjugacy_classes(g)) {
        int o = g.element_order(cls[0]);
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (std::binary_search(cls.begin(), cls.end(), gens[i]))
                fpg[i] = {o, static_cast<int>(cls.size())};
    }
    std::vector<int> prefix_order(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
        prefix_order[i] =
            subgroup_generated(g, std::vector<int>(gens.begin(), gens.begin() + i + 1)).order();

    std::vector<int> images(gens.size(), -1);
    IsoResult result;

    std::function<bool(std::size_t)> search = [&](std::size_t level) -> bool {
        if (level == gens.size()) {
            // map g's generator list onto a matching generator list of h
            std::vector<Perm> gperm;
            for (int x : gens) gperm.push_back(g.element(x));
            Group gg = Group::from_generators(g.degree(), gperm);
            std::vector<int> f = gg.extend_hom(images, 0, [&](int a, int b) { return h.mul(a, b); });
            if (f.empty()) return false;
            std::vector<char> hit(h.order(), 0);
            for (int v : f) {
                if (hit[v]) return false;
                hit[v] = 1;
            }
            result.isomorphic = true;
            result.witness.resize(g.order());
            for (int x = 0; x < g.order(); ++x) result.witness[x] = f[gg.index_of(g.element(x))];
            return true;
        }
        for (int cand = 0; cand < h.order(); ++cand) {
            if (fph[cand] != fpg[level]) continue;
            images[level] = cand;
            int sz = subgroup_generated(h, std::vector<int>(images.begin(),
                                                            images.begin() + level + 1))
                         .order();
            if (sz != prefix_order[level]) continue;
            if (search(level + 1)) return true;
        }
        return false;
    };
    search(0);
    return result;
}

std::vector<int> power_automorphism(const Group& g, long long e) {
    std::vector<int> f(g.order());
    for (int x = 0; x < g.order(); ++x) {
        int cur = 0;
        long long k = ((e % g.element_order(x)) + g.element_order(x)) % g.element_order(x);
        for (long long i = 0; i < k; ++i) cur = g.mul(cur, x);
        f[x] = cur;
    }
    std::vector<char> hit(g.order(), 0);
    for (int v : f) {
        if (hit[v]) throw NotAnAutomorphism("power map is not bijective");
        hit[v] = 1;
    }
    for (int s = 0; s < g.num_generators(); ++s)
        for (int x = 0; x < g.order(); ++x)
            if (f[g.mul(g.generator_index(s), x)] != g.mul(f[g.generator_index(s)], f[x]))
                throw NotAnAutomorphism("power map is not a homomorphism");
    return f;
}

namespace {

void validate_automorphism(const Group& n, const std::vector<int>& f) {
    if (static_cast<int>(f.size()) != n.order() || f[0] != 0)
        throw NotAnAutomorphism("automorphism map has wrong shape");
    std::vector<char> hit(n.order(), 0);
    for (int v : f) {
        if (v < 0 || v >= n.order() || hit[v]) throw NotAnAutomorphism("map is not bijective");
        hit[v] = 1;
    }
    for (int s = 0; s < n.num_generators(); ++s)
        for (int x = 0; x < n.order(); ++x)
            if (f[n.mul(n.generator_index(s), x)] != n.mul(f[n.generator_index(s)], f[x]))
                throw NotAnAutomorphism("map is not a homomorphism");
}

}  // namespace

Product semidirect_product(const Group& n, const Group& h,
                           const std::vector<std::vector<int>>& action, int cap) {
    if (static_cast<int>(action.size()) != h.num_generators())
        throw NotAnAutomorphism("one automorphism per h-generator required");
    for (const auto& f : action) validate_automorphism(n, f);

    auto compose = [](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> c(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
        return c;
    };
    std::vector<int> id(n.order());
    std::iota(id.begin(), id.end(), 0);
    if (h.extend_hom(action, id, compose).empty())
        throw RelationViolation("assignment violates the relations of the acting group");

    int deg = n.order() + h.order();
    std::vector<Perm> gens;
    std::vector<Perm> left_gens, right_gens;
    for (int s = 0; s < n.num_generators(); ++s) {
        std::vector<int> img(deg);
        for (int x = 0; x < n.order(); ++x) img[x] = n.mul(n.generator_index(s), x);
        for (int y = 0; y < h.order(); ++y) img[n.order() + y] = n.order() + y;
        gens.emplace_back(img);
        left_gens.emplace_back(std::move(img));
    }
    for (int s = 0; s < h.num_generators(); ++s) {
        std::vector<int> img(deg);
        for (int x = 0; x < n.order(); ++x) img[x] = action[s][x];
        for (int y = 0; y < h.order(); ++y) img[n.order() + y] = n.order() + h.mul(h.generator_index(s), y);
        gens.emplace_back(img);
        right_gens.emplace_back(std::move(img));
    }

    Product p{Group::from_generators(deg, gens, cap), {}, {}};
    if (p.group.order() != n.order() * h.order())
        throw RelationViolation("semidirect product order mismatch");
    p.left = subgroup_generated(p.group, left_gens);
    p.right = subgroup_generated(p.group, right_gens);
    return p;
}

Product direct_product(const Group& g, const Group& h, int cap) {
    std::vector<int> id(g.order());
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<int>> trivial(h.num_generators(), id);
    return semidirect_product(g, h, trivial, cap);
}

Group subgroup_as_group(const Subgroup& s) {
    std::vector<Perm> gens;
    for (int i : s.generators) gens.push_back(s.parent->element(i));
    return Group::from_generators(s.parent->degree(), gens);
}

std::vector<long long> abelian_invariants(const Group& g) {
    if (!structural_predicates(g).is_abelian)
        throw InternalInconsistency("abelian_invariants requires an abelian group");
    std::vector<long long> inv;
    Group cur = g;
    while (cur.order() > 1) {
        int best = 1, best_ord = 1;
        for (int x = 1; x < cur.order(); ++x)
            if (cur.element_order(x) > best_ord) {
                best_ord = cur.element_order(x);
                best = x;
            }
        inv.push_back(best_ord);
        cur = quotient(cur, subgroup_generated(cur, std::vector<int>{best})).group;
    }
    std::reverse(inv.begin(), inv.end());  // ascending divisibility chain
    return inv;
}

Group cyclic_group(int n) {
    if (n < 1) throw BadOrder("cyclic group order must be positive");
    if (n == 1) return Group::from_generators(1, {});
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = (i + 1) % n;
    return Group::from_generators(n, {Perm(std::move(img))});
}

Group symmetric_group(int n) {
    if (n <= 1) return Group::from_generators(1, {});
    std::vector<Perm> gens{Perm::from_cycles(n, {{0, 1}})};
    std::vector<int> cyc(n);
    std::iota(cyc.begin(), cyc.end(), 0);
    gens.push_back(Perm::from_cycles(n, {cyc}));
    return Group::from_generators(n, gens);
}

Group alternating_group(int n) {
    if (n <= 2) return Group::from_generators(std::max(n, 1), {});
    std::vector<Perm> gens;
    for (int i = 0; i + 2 < n; ++i) gens.push_back(Perm::from_cycles(n, {{i, i + 1, i + 2}}));
    return Group::from_generators(n, gens);
}

Group dihedral_group(int n) {
    if (n < 1) throw BadOrder("dihedral parameter must be positive");
    if (n == 1) return cyclic_group(2);
    if (n == 2) return abelian_group({2, 2});
    std::vector<int> rot(n), refl(n);
    for (int i = 0; i < n; ++i) {
        rot[i] = (i + 1) % n;
        refl[i] = (n - i) % n;
    }
    return Group::from_generators(n, {Perm(std::move(rot)), Perm(std::move(refl))});
}

Group abelian_group(const std::vector<int>& orders) {
    int deg = 0;
    for (int o : orders) {
        if (o < 1) throw BadOrder("cyclic factor order must be positive");
        if (o > 1) deg += o;
    }
    if (deg == 0) return Group::from_generators(1, {});
    std::vector<Perm> gens;
    int off = 0;
    for (int o : orders) {
        if (o == 1) continue;
        std::vector<int> img(deg);
        std::iota(img.begin(), img.end(), 0);
        for (int i = 0; i < o; ++i) img[off + i] = off + (i + 1) % o;
        gens.emplace_back(std::move(img));
        off += o;
    }
    return Group::from_generators(deg, gens);
}

}  // namespace gk
