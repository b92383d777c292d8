#include "gk/gz_classify.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gk/zlinalg.hpp"

namespace gk {
namespace {

long long mod_pos(long long a, long long m) { return ((a % m) + m) % m; }

long long pow_mod1(long long b, long long e, long long m) {
    if (m == 1) return 0;
    return mod_pow(mod_pos(b, m), e, m);
}

int pow_idx(const Group& g, int x, long long e) {
    int out = 0;
    long long o = g.element_order(x);
    e = mod_pos(e, o);
    for (long long i = 0; i < e; ++i) out = g.mul(out, x);
    return out;
}

bool squarefree(long long n) {
    for (auto [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

std::vector<long long> divisors(long long n) {
    std::vector<long long> out;
    for (long long d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<long long> order_profile(const Group& g) {
    std::vector<long long> out(g.order());
    for (int i = 0; i < g.order(); ++i) out[i] = g.element_order(i);
    std::sort(out.begin(), out.end());
    return out;
}

bool is_cyclic_or_genq(const Subgroup& s) {
    if (subgroup_is_cyclic(s)) return true;
    int o = s.order();
    if (o < 8 || (o & (o - 1)) != 0) return false;
    return is_isomorphic(subgroup_as_group(s), quaternion_generalized(o)).isomorphic;
}

// Sylow-shape form of the GZ predicate.
bool gz_by_sylow_shapes(const Group& g) {
    for (auto [p, e] : factorize(g.order())) {
        Subgroup s = sylow(g, (int)p);
        if (p == 2) {
            if (!is_cyclic_or_genq(s)) return false;
        } else if (!subgroup_is_cyclic(s)) {
            return false;
        }
    }
    return true;
}

// Every abelian subgroup cyclic, via commuting pairs off conjugacy-class
// representatives (conjugating a bad pair keeps it bad).
bool gz_by_abelian_subgroups(const Group& g) {
    for (const auto& cls : conjugacy_classes(g)) {
        int x = cls.front();
        if (x == 0) continue;
        for (int y = 1; y < g.order(); ++y) {
            if (g.mul(x, y) != g.mul(y, x)) continue;
            if (!subgroup_is_cyclic(subgroup_generated(g, std::vector<int>{x, y})))
                return false;
        }
    }
    return true;
}

std::vector<Subgroup> q8_subgroups(const Group& g) {
    std::vector<int> four;
    for (int i = 1; i < g.order(); ++i)
        if (g.element_order(i) == 4) four.push_back(i);
    std::vector<Subgroup> out;
    for (std::size_t a = 0; a < four.size(); ++a)
        for (std::size_t b = a + 1; b < four.size(); ++b) {
            int x = four[a], y = four[b];
            if (g.mul(x, x) != g.mul(y, y)) continue;
            if (g.conj(y, x) != g.inv(x)) continue;
            Subgroup s = subgroup_generated(g, std::vector<int>{x, y});
            if (s.order() != 8) continue;
            bool seen = false;
            for (const Subgroup& o : out)
                if (o.same_elements(s)) {
                    seen = true;
                    break;
                }
            if (!seen) out.push_back(std::move(s));
        }
    return out;
}

// An order-3 element rotating some Q8 subgroup separates families III/IV
// (where the odd part acts on the quaternion core) from family II (where it
// cannot).
bool has_rotated_q8(const Group& g) {
    auto qs = q8_subgroups(g);
    if (qs.empty()) return false;
    for (const Subgroup& q : qs) {
        std::set<int> qset(q.elements.begin(), q.elements.end());
        for (int t = 1; t < g.order(); ++t) {
            if (g.element_order(t) % 3 != 0) continue;
            bool normalizes = true;
            std::vector<int> act(q.elements.size());
            for (std::size_t i = 0; i < q.elements.size(); ++i) {
                int c = g.conj(t, q.elements[i]);
                if (!qset.count(c)) {
                    normalizes = false;
                    break;
                }
                act[i] = c;
            }
            if (!normalizes) continue;
            // rotation present iff the induced automorphism has order
            // divisible by 3 (its 3-part is then the rotation)
            std::vector<int> pos(g.order(), -1);
            for (std::size_t i = 0; i < q.elements.size(); ++i) pos[q.elements[i]] = (int)i;
            std::vector<int> perm(q.elements.size());
            for (std::size_t i = 0; i < q.elements.size(); ++i) perm[i] = pos[act[i]];
            // order of perm
            long long ord = 1;
            std::vector<char> seen(perm.size(), 0);
            for (std::size_t i = 0; i < perm.size(); ++i) {
                if (seen[i]) continue;
                long long len = 0;
                for (std::size_t j = i; !seen[j]; j = (std::size_t)perm[j]) {
                    seen[j] = 1;
                    ++len;
                }
                ord = std::lcm(ord, len);
            }
            if (ord % 3 == 0) return true;
        }
    }
    return false;
}

bool matches(const Group& g, const std::vector<long long>& profile, const Group& cand) {
    if (cand.order() != g.order()) return false;
    if (order_profile(cand) != profile) return false;
    return is_isomorphic(g, cand).isomorphic;
}

std::optional<PresentationParams> sweep_I(const Group& g,
                                          const std::vector<long long>& profile) {
    long long N = g.order();
    for (long long m : divisors(N)) {
        long long n = N / m;
        for (long long r = (m == 1 ? 1 : 0); r < std::max<long long>(m, 2); ++r) {
            if (m > 1 && (pow_mod1(r, n, m) != 1 % m ||
                          std::gcd(m, n * mod_pos(r - 1, m) % m) != 1))
                continue;
            try {
                Group cand = metacyclic(m, n, r);
                if (matches(g, profile, cand))
                    return PresentationParams{.family = "I", .m = m, .n = n, .r = r};
            } catch (const Error&) {
            }
        }
    }
    return std::nullopt;
}

std::optional<PresentationParams> sweep_II(const Group& g,
                                           const std::vector<long long>& profile) {
    long long N = g.order();
    if (N % 8 != 0) return std::nullopt;  // 2mn with 4 | n
    for (long long m : divisors(N)) {
        if (m % 2 == 0) continue;
        long long n = N / (2 * m);
        if (n % 4 != 0) continue;
        long long u = 0, v = n;
        while (v % 2 == 0) v /= 2, ++u;
        for (long long r = (m == 1 ? 1 : 0); r < std::max<long long>(m, 2); ++r) {
            if (m > 1 && (pow_mod1(r, n, m) != 1 % m ||
                          std::gcd(m, n * mod_pos(r - 1, m) % m) != 1))
                continue;
            for (long long k = 0; k < n; ++k) {
                if (mod_pos(k + 1, 1LL << u) != 0 || mod_pos(k * k, n) != 1) continue;
                if (m > 1 && pow_mod1(r, mod_pos(k - 1, n), m) != 1 % m) continue;
                for (long long l = (m == 1 ? 1 : 0); l < std::max<long long>(m, 2); ++l) {
                    if (m > 1 && pow_mod1(l, 2, m) != 1 % m) continue;
                    try {
                        Group cand = gz_type({.family = "II", .m = m, .n = n, .r = r,
                                              .l = l, .k = k});
                        if (matches(g, profile, cand))
                            return PresentationParams{.family = "II", .m = m, .n = n,
                                                      .r = r, .l = l, .k = k};
                    } catch (const Error&) {
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<PresentationParams> sweep_III_IV(const Group& g, bool four,
                                               const std::vector<long long>& profile) {
    long long N = g.order();
    long long denom = four ? 16 : 8;
    if (N % (3 * denom) != 0) return std::nullopt;
    for (long long m : divisors(N)) {
        if (m % 2 == 0 || N % (denom * m) != 0) continue;
        long long n = N / (denom * m);
        if (n % 2 == 0 || n % 3 != 0) continue;
        for (long long r = (m == 1 ? 1 : 0); r < std::max<long long>(m, 2); ++r) {
            if (m > 1 && (pow_mod1(r, n, m) != 1 % m ||
                          std::gcd(m, n * mod_pos(r - 1, m) % m) != 1))
                continue;
            if (!four) {
                try {
                    Group cand = gz_type({.family = "III", .m = m, .n = n, .r = r});
                    if (matches(g, profile, cand))
                        return PresentationParams{.family = "III", .m = m, .n = n, .r = r};
                } catch (const Error&) {
                }
                continue;
            }
            for (long long k = 0; k < n; ++k) {
                if (mod_pos(k + 1, 3) != 0 || mod_pos(k * k, n) != 1) continue;
                if (m > 1 && pow_mod1(r, mod_pos(k - 1, n), m) != 1 % m) continue;
                for (long long t = (m == 1 ? 1 : 0); t < std::max<long long>(m, 2); ++t) {
                    if (m > 1 && pow_mod1(t, 2, m) != 1 % m) continue;
                    try {
                        Group cand = gz_type({.family = "IV", .m = m, .n = n, .r = r,
                                              .k = k, .t = t});
                        if (matches(g, profile, cand))
                            return PresentationParams{.family = "IV", .m = m, .n = n,
                                                      .r = r, .k = k, .t = t};
                    } catch (const Error&) {
                    }
                }
            }
        }
    }
    return std::nullopt;
}

// Direct parameter recovery for Z-groups: m = |G'|, n = [G : G'], r from the
// conjugation action of a complement generator on a generator of G'.
std::optional<PresentationParams> recover_I(const Group& g) {
    long long N = g.order();
    Subgroup d = derived_subgroup(g);
    long long m = d.order(), n = N / m;
    if (m == 1) {
        // abelian Z-group is cyclic
        if (g.element_order(0) == 1 && order_profile(g).back() == N)
            return PresentationParams{.family = "I", .m = 1, .n = N, .r = 1};
        return std::nullopt;
    }
    int sigma = -1;
    for (int e : d.elements)
        if (g.element_order(e) == m) {
            sigma = e;
            break;
        }
    if (sigma < 0) return std::nullopt;
    for (int t = 1; t < g.order(); ++t) {
        if (g.element_order(t) != n) continue;
        Subgroup s = subgroup_generated(g, std::vector<int>{sigma, t});
        if (!s.is_whole()) continue;
        int c = g.conj(t, sigma);
        for (long long r = 1; r < m; ++r)
            if (pow_idx(g, sigma, r) == c) {
                try {
                    if (is_isomorphic(g, metacyclic(m, n, r)).isomorphic)
                        return PresentationParams{.family = "I", .m = m, .n = n, .r = r};
                } catch (const Error&) {
                }
                break;
            }
    }
    return std::nullopt;
}

bool trivial_intersection(const Subgroup& a, const Subgroup& b) {
    std::vector<int> common;
    std::set_intersection(a.elements.begin(), a.elements.end(), b.elements.begin(),
                          b.elements.end(), std::back_inserter(common));
    return common.size() == 1;
}

Subgroup perfect_radical(const Group& g) {
    Subgroup cur = whole_subgroup(g);
    while (true) {
        std::set<int> comms;
        for (int a : cur.elements)
            for (int b : cur.elements) {
                int ab = g.mul(a, b), ba = g.mul(b, a);
                comms.insert(g.mul(ab, g.inv(ba)));
            }
        Subgroup next = subgroup_generated(g, std::vector<int>(comms.begin(), comms.end()));
        if (next.order() == cur.order()) return cur;
        cur = std::move(next);
    }
}

}  // namespace

bool satisfies_pq_condition(const Group& g, long long p, long long q) {
    if (!is_prime(p) || !is_prime(q)) throw NotPrime("p and q must be prime");
    std::vector<int> ep, eq;
    for (int i = 1; i < g.order(); ++i) {
        long long o = g.element_order(i);
        if (o == p) ep.push_back(i);
        if (o == q) eq.push_back(i);
    }
    long long pq = p * q;
    for (int x : ep)
        for (int y : eq) {
            if (p == q && y <= x) continue;
            Subgroup s = subgroup_generated(g, std::vector<int>{x, y});
            if (s.order() == pq && !subgroup_is_cyclic(s)) return false;
        }
    return true;
}

bool is_z_group(const Group& g) {
    for (auto [p, e] : factorize(g.order()))
        if (!subgroup_is_cyclic(sylow(g, (int)p))) return false;
    return true;
}

bool is_gz_group(const Group& g) {
    bool by_sylow = gz_by_sylow_shapes(g);
    bool by_abelian = gz_by_abelian_subgroups(g);
    if (by_sylow != by_abelian)
        throw InternalInconsistency("Sylow-shape and abelian-subgroup GZ tests disagree");
    return by_sylow;
}

SolvableClassification classify_solvable_gz(const Group& g) {
    if (!structural_predicates(g).is_solvable)
        throw NotSolvableGZ("group is not solvable");
    if (!is_gz_group(g)) throw NotSolvableGZ("group is not a GZ-group");

    std::vector<long long> profile = order_profile(g);
    if (is_z_group(g)) {
        if (auto p = recover_I(g)) return {"I", p};
        return {"I", sweep_I(g, profile)};
    }
    // 2-Sylow is generalized quaternion from here on
    if (!has_rotated_q8(g)) return {"II", sweep_II(g, profile)};
    long long s2 = sylow(g, 2).order();
    if (s2 == 8) return {"III", sweep_III_IV(g, false, profile)};
    if (s2 == 16) return {"IV", sweep_III_IV(g, true, profile)};
    // out-of-pattern Sylow size: fall back to a full sweep
    if (auto p = sweep_II(g, profile)) return {"II", p};
    if (auto p = sweep_III_IV(g, false, profile)) return {"III", p};
    if (auto p = sweep_III_IV(g, true, profile)) return {"IV", p};
    throw InternalInconsistency("solvable GZ-group matched no presentation family");
}

std::string classify_nonsolvable_gz(const Group& g) {
    if (structural_predicates(g).is_solvable)
        throw NotNonsolvableGZ("group is solvable");
    if (!is_gz_group(g)) throw NotNonsolvableGZ("group is not a GZ-group");

    Subgroup l = perfect_radical(g);
    long long lo = l.order();
    long long p = 0;
    for (long long c = 2; c * c * c <= lo + c; ++c)
        if (is_prime(c) && c * (c * c - 1) == lo) p = c;

    if (p != 0) {
        Subgroup c = centralizer(g, l);
        std::vector<int> odd;
        for (int e : c.elements)
            if (g.element_order(e) % 2 == 1) odd.push_back(e);
        Subgroup h = odd.empty() ? trivial_subgroup(g) : subgroup_generated(g, odd);
        bool direct = trivial_intersection(h, l) &&
                      (long long)h.order() * l.order() == g.order() &&
                      std::gcd((long long)h.order(), lo) == 1;
        if (direct) {
            std::vector<int> gens = h.generators;
            gens.insert(gens.end(), l.generators.begin(), l.generators.end());
            direct = subgroup_generated(g, gens).is_whole();
        }
        if (direct && is_z_group(subgroup_as_group(h)) &&
            is_isomorphic(subgroup_as_group(l), sl2(p)).isomorphic)
            return "NS-I";
    }

    // NS-II witness: an index-2 normal subgroup containing the perfect core
    std::set<int> lset(l.elements.begin(), l.elements.end());
    for (const Subgroup& n : normal_subgroups(g)) {
        if (2LL * n.order() != g.order()) continue;
        bool contains_l = true;
        for (int e : l.elements)
            if (!n.contains(e)) {
                contains_l = false;
                break;
            }
        if (contains_l) return "NS-II";
    }
    throw InternalInconsistency("non-solvable GZ-group matched neither pattern");
}

ComplementCriterion frobenius_complement_criterion(const Group& g, int cap) {
    if (g.order() > cap) throw OrderCapExceeded("group order exceeds cap");
    std::vector<int> gens;
    for (int i = 1; i < g.order(); ++i)
        if (is_prime(g.element_order(i))) gens.push_back(i);
    ComplementCriterion cc;
    cc.prime_order_subgroup =
        gens.empty() ? trivial_subgroup(g) : subgroup_generated(g, gens);
    Subgroup& e = cc.prime_order_subgroup;
    long long oe = e.order();

    if (squarefree(oe) && subgroup_is_cyclic(e)) {
        cc.has_decomposition = true;
        cc.n = oe;
        cc.h_tag = "trivial";
        cc.is_frobenius_complement = true;
        return cc;
    }

    static const Group ref3 = sl2(3);
    static const Group ref5 = sl2(5);
    Group eg = subgroup_as_group(e);
    std::vector<long long> profile = order_profile(eg);
    const std::pair<const char*, const Group*> refs[] = {{"SL2F3", &ref3},
                                                         {"SL2F5", &ref5}};
    for (auto [tag, ref] : refs) {
        long long ho = ref->order();
        if (oe % ho != 0) continue;
        long long n = oe / ho;
        if (!squarefree(n) || std::gcd(n, ho) != 1) continue;
        Group cand = n == 1 ? *ref : direct_product(cyclic_group((int)n), *ref).group;
        if (order_profile(cand) != profile) continue;
        if (!is_isomorphic(eg, cand).isomorphic) continue;
        cc.has_decomposition = true;
        cc.n = n;
        cc.h_tag = tag;
        cc.is_frobenius_complement = true;
        return cc;
    }
    return cc;
}

GZReport gz_report(const Group& g, int cap) {
    GZReport rep;
    rep.is_z_group = is_z_group(g);
    rep.is_gz_group = is_gz_group(g);
    if (rep.is_gz_group) {
        if (structural_predicates(g).is_solvable) {
            auto cls = classify_solvable_gz(g);
            rep.solvable_type = cls.type;
            rep.params = cls.params;
        } else {
            rep.nonsolvable_type = classify_nonsolvable_gz(g);
        }
    }
    rep.complement_criterion = frobenius_complement_criterion(g, cap);
    return rep;
}

}  // namespace gk
