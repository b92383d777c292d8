#include "gk/rationality.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

#include "gk/constructors.hpp"
#include "gk/errors.hpp"
#include "gk/frobenius.hpp"
#include "gk/gz_classify.hpp"
#include "gk/zlinalg.hpp"

namespace gk {

namespace {

// above this order the engine skips whole-lattice subgroup enumeration and
// relies on the involution-centralizer shortcut for Frobenius detection
constexpr int kHeavyCap = 2000;

const char* kOutRR = "RetractRational";
const char* kOutNRR = "NotRetractRational";
const char* kOutUnknown = "Unknown";

std::string str(long long v) { return std::to_string(v); }

bool is_abelian_group(const Group& g) {
    for (int a = 0; a < g.num_generators(); ++a)
        for (int b = a + 1; b < g.num_generators(); ++b) {
            int x = g.generator_index(a), y = g.generator_index(b);
            if (g.mul(x, y) != g.mul(y, x)) return false;
        }
    return true;
}

int two_adic_valuation(long long e) {
    int r = 0;
    while (e % 2 == 0) {
        e /= 2;
        ++r;
    }
    return r;
}

long long pow3(int l) {
    long long v = 1;
    while (l-- > 0) v *= 3;
    return v;
}

int three_adic_valuation(long long e) {
    int l = 0;
    while (e % 3 == 0) {
        e /= 3;
        ++l;
    }
    return l;
}

// ---- rule statements (fixed strings keep traces byte-stable) ----

const char* kStmtAB =
    "for a finite abelian group of exponent 2^r*s with s odd, k(G) is retract k-rational "
    "if and only if char k = 2 or k(zeta_{2^r}) is a cyclic extension of k (Saltman)";
const char* kStmtDesc =
    "if k(G) is retract k-rational for G = N x| G0, then so is k(G0) (Saltman); a complement "
    "chain ending in a certified negative obstructs G";
const char* kStmtSerre =
    "Serre's cohomological obstruction: Q(G) is not retract Q-rational when G is the order-240 "
    "double cover of S5 whose transpositions lift to order 4, or the generalized quaternion "
    "group of order 16";
const char* kStmtZK =
    "a Frobenius group with Z-group complement and abelian kernel has retract k-rational k(G) "
    "when char k = 2 or k(zeta_{2^r}) is cyclic over k, 2^r the 2-part of exp(G)";
const char* kStmtSL25 =
    "in characteristic 0, a Frobenius group whose complement is a direct product of a Z-group "
    "and the binary icosahedral group SL2(F5) has retract k-rational k(G)";
const char* kStmtNSolv =
    "a non-solvable Frobenius group has retract k-rational k(G) when char k is 0 or 2 and "
    "k(zeta_8) is a cyclic extension of k";
const char* kStmtSolv =
    "a solvable Frobenius group with abelian kernel and exponent 2^u*3^l*n has retract "
    "k-rational k(G) when char k is neither 2 nor 3 and zeta_{2^max(u,3)}, zeta_{3^l} lie in k";
const char* kStmtGZ =
    "a solvable GZ-group of exponent 2^u*3^l*t has retract k-rational k(G) when char k is "
    "neither 2 nor 3 and zeta_{2^max(u,3)}, zeta_{3^l} lie in k";
const char* kStmtProd =
    "if k(G1) and k(G2) are retract k-rational, so is k(G1 x G2) (Saltman)";
const char* kStmtSemi =
    "for G = N x| G0 with N abelian and gcd{|N|, |G0|} = 1, retract k-rationality of k(N) and "
    "k(G0) implies that of k(G) (Saltman)";

TraceStep make_step(const std::string& rule, const char* stmt,
                    std::vector<std::pair<std::string, std::string>> bindings) {
    return TraceStep{rule, stmt, std::move(bindings)};
}

// ---- group-shape helpers ----

Subgroup perfect_radical_of(const Group& g) {
    Subgroup cur = whole_subgroup(g);
    while (cur.order() > 1) {
        Group cg = subgroup_as_group(cur);
        Subgroup d = derived_subgroup(cg);
        if (d.order() == cur.order()) return cur;
        std::vector<int> idx;
        for (int e : d.elements) idx.push_back(g.index_of(cg.element(e)));
        cur = subgroup_generated(g, idx);
    }
    return cur;
}

// complement isomorphic to Z-group x SL2(F5)?
bool zgroup_times_sl25(const Group& h) {
    if (h.order() % 120 != 0) return false;
    Subgroup l = perfect_radical_of(h);
    if (l.order() != 120) return false;
    static const Group ref = sl2(5);
    Group lg = subgroup_as_group(l);
    if (!is_isomorphic(lg, ref).isomorphic) return false;
    Subgroup c = centralizer(h, l);
    std::vector<int> coprime;
    for (int e : c.elements)
        if (std::gcd((long long)h.element_order(e), 120LL) == 1) coprime.push_back(e);
    Subgroup z = subgroup_generated(h, coprime);
    if ((long long)z.order() * l.order() != h.order()) return false;
    std::vector<int> meet;
    std::set_intersection(z.elements.begin(), z.elements.end(), l.elements.begin(),
                          l.elements.end(), std::back_inserter(meet));
    if (meet.size() != 1) return false;
    std::vector<int> gens = z.generators;
    gens.insert(gens.end(), l.generators.begin(), l.generators.end());
    if (!subgroup_generated(h, gens).is_whole()) return false;
    return is_z_group(subgroup_as_group(z));
}

std::optional<FrobeniusStructure> detect_frobenius(const Group& g) {
    if (g.order() <= kHeavyCap) {
        auto found = find_frobenius_structures(g);
        if (found.empty()) return std::nullopt;
        return found.front();
    }
    // large order: an even-order Frobenius complement has a unique involution,
    // central in the complement, whose centralizer is exactly the complement
    for (int i = 1; i < g.order(); ++i) {
        if (g.element_order(i) != 2) continue;
        Subgroup z = subgroup_generated(g, std::vector<int>{i});
        Subgroup g0 = centralizer(g, z);
        if (g0.is_whole() || g.order() % g0.order() != 0) return std::nullopt;
        try {
            Subgroup n = kernel_by_partition(g, g0);
            if ((long long)n.order() * g0.order() != g.order()) return std::nullopt;
            if (!is_fixed_point_free(n, g0)) return std::nullopt;
            FrobeniusStructure s;
            s.group = &g;
            s.kernel = std::move(n);
            s.complement = std::move(g0);
            return s;
        } catch (const Error&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

// coprime-index normal subgroups paired with the complement's isomorphism
// type (the quotient; a complement exists by Schur-Zassenhaus)
std::vector<std::pair<int, Group>> coprime_decompositions(const Group& g) {
    std::vector<std::pair<int, Group>> out;
    if (g.order() > kHeavyCap) {
        if (auto fs = detect_frobenius(g))
            out.emplace_back(fs->kernel.order(), subgroup_as_group(fs->complement));
        return out;
    }
    for (const Subgroup& n : normal_subgroups(g)) {
        if (n.order() == 1 || n.is_whole()) continue;
        long long m = g.order() / n.order();
        if (std::gcd((long long)n.order(), m) != 1) continue;
        out.emplace_back(n.order(), quotient(g, n).group);
    }
    return out;
}

// ---- negative rules ----

std::optional<std::vector<TraceStep>> negative_base(const Group& h, const FieldModel& k) {
    if (is_abelian_group(h)) {
        int r = two_adic_valuation(h.exponent());
        if (k.characteristic != 2 && k.cyclic_cyclotomic_ext(r) == Tri::no)
            return std::vector<TraceStep>{make_step(
                "N-AB", kStmtAB,
                {{"group_order", str(h.order())},
                 {"exponent", str(h.exponent())},
                 {"r", str(r)},
                 {"cyclic_cyclotomic_ext", "no"}})};
        return std::nullopt;
    }
    if (k.kind == "Q") {
        if (h.order() == 16) {
            static const Group q16 = quaternion_generalized(16);
            if (is_isomorphic(h, q16).isomorphic)
                return std::vector<TraceStep>{make_step(
                    "N-SERRE", kStmtSerre,
                    {{"group", "generalized quaternion of order 16"}})};
        }
        if (h.order() == 240) {
            static const Group s5hat = g_plus(25).model.group;
            if (is_isomorphic(h, s5hat).isomorphic)
                return std::vector<TraceStep>{make_step(
                    "N-SERRE", kStmtSerre,
                    {{"group", "double cover of S5 with order-4 transposition lifts"}})};
        }
    }
    return std::nullopt;
}

std::optional<std::vector<TraceStep>> descend(const Group& g, const FieldModel& k, int depth) {
    if (depth == 0) return std::nullopt;
    for (auto& [norder, comp] : coprime_decompositions(g)) {
        std::optional<std::vector<TraceStep>> hit = negative_base(comp, k);
        if (!hit) hit = descend(comp, k, depth - 1);
        if (hit) {
            hit->push_back(make_step("N-DESC", kStmtDesc,
                                     {{"normal_order", str(norder)},
                                      {"complement_order", str(g.order() / norder)},
                                      {"group_order", str(g.order())}}));
            return hit;
        }
    }
    return std::nullopt;
}

Verdict certify_impl(const Group& g, const FieldModel& k, int cap, int depth) {
    Verdict v;
    auto miss = [&](const std::string& rule, const std::string& why) {
        v.attempts.emplace_back(rule, why);
    };

    long long e = g.exponent();
    int u = two_adic_valuation(e);
    int l3 = three_adic_valuation(e);
    int uprime = std::max(u, 3);

    // abelian groups: the criterion is an equivalence, decide both ways
    if (is_abelian_group(g)) {
        std::vector<std::pair<std::string, std::string>> b = {
            {"group_order", str(g.order())}, {"exponent", str(e)}, {"r", str(u)}};
        if (k.characteristic == 2) {
            b.emplace_back("char", "2");
            v.outcome = kOutRR;
            v.trace.push_back(make_step("R-AB", kStmtAB, std::move(b)));
            return v;
        }
        Tri c = k.cyclic_cyclotomic_ext(u);
        if (c == Tri::yes) {
            b.emplace_back("cyclic_cyclotomic_ext", "yes");
            v.outcome = kOutRR;
            v.trace.push_back(make_step("R-AB", kStmtAB, std::move(b)));
            return v;
        }
        if (c == Tri::no) {
            b.emplace_back("cyclic_cyclotomic_ext", "no");
            v.outcome = kOutNRR;
            v.trace.push_back(make_step("R-AB", kStmtAB, std::move(b)));
            return v;
        }
        miss("R-AB", "cyclicity of k(zeta_{2^r})/k is unknown for this field model");
        v.outcome = kOutUnknown;
        return v;
    }

    // negative rules first: Serre obstruction on G itself, then descent
    if (auto hit = negative_base(g, k)) {
        v.outcome = kOutNRR;
        v.trace = std::move(*hit);
        return v;
    }
    if (auto hit = descend(g, k, 3)) {
        v.outcome = kOutNRR;
        v.trace = std::move(*hit);
        return v;
    }
    miss("N-DESC", "no semidirect complement chain reaches a certified negative");

    // positive Frobenius rules, most specific first
    std::optional<FrobeniusStructure> fs = detect_frobenius(g);
    if (fs) {
        Group comp = subgroup_as_group(fs->complement);
        bool kernel_abelian = subgroup_is_abelian(fs->kernel);
        // the kernel is nilpotent, so G is solvable iff the complement is
        bool solvable = structural_predicates(comp).is_solvable;
        std::vector<std::pair<std::string, std::string>> fb = {
            {"kernel_order", str(fs->kernel.order())},
            {"complement_order", str(fs->complement.order())}};

        if (kernel_abelian && is_z_group(comp)) {
            if (k.characteristic == 2 || k.cyclic_cyclotomic_ext(u) == Tri::yes) {
                auto b = fb;
                b.emplace_back("r", str(u));
                b.emplace_back(k.characteristic == 2 ? "char" : "cyclic_cyclotomic_ext",
                               k.characteristic == 2 ? "2" : "yes");
                v.outcome = kOutRR;
                v.trace.push_back(make_step("R-ZK", kStmtZK, std::move(b)));
                return v;
            }
            miss("R-ZK", "k(zeta_{2^r})/k is not cyclic and char k is not 2");
        } else {
            miss("R-ZK", kernel_abelian ? "complement is not a Z-group"
                                        : "Frobenius kernel is not abelian");
        }

        if (k.characteristic == 0 && zgroup_times_sl25(comp)) {
            auto b = fb;
            b.emplace_back("complement", "Z-group x SL2(F5)");
            v.outcome = kOutRR;
            v.trace.push_back(make_step("R-SL25", kStmtSL25, std::move(b)));
            return v;
        }
        miss("R-SL25", k.characteristic != 0 ? "char k is not 0"
                                             : "complement is not Z-group x SL2(F5)");

        if (!solvable) {
            if ((k.characteristic == 0 || k.characteristic == 2) &&
                k.cyclic_cyclotomic_ext(3) == Tri::yes) {
                auto b = fb;
                b.emplace_back("cyclic_cyclotomic_ext_8", "yes");
                v.outcome = kOutRR;
                v.trace.push_back(make_step("R-NSOLV", kStmtNSolv, std::move(b)));
                return v;
            }
            miss("R-NSOLV", "needs char k in {0, 2} and k(zeta_8)/k cyclic");
        } else {
            miss("R-NSOLV", "group is solvable");
        }

        if (solvable && kernel_abelian) {
            if (k.characteristic != 2 && k.characteristic != 3 &&
                k.contains_zeta(1LL << uprime) == Tri::yes &&
                k.contains_zeta(pow3(l3)) == Tri::yes) {
                auto b = fb;
                b.emplace_back("u'", str(uprime));
                b.emplace_back("l", str(l3));
                v.outcome = kOutRR;
                v.trace.push_back(make_step("R-SOLV", kStmtSolv, std::move(b)));
                return v;
            }
            miss("R-SOLV", "needs char k outside {2, 3} with zeta_{2^u'} and zeta_{3^l} in k");
        } else {
            miss("R-SOLV", solvable ? "Frobenius kernel is not abelian" : "group is not solvable");
        }
    } else {
        miss("R-ZK", "no Frobenius structure detected");
        miss("R-SL25", "no Frobenius structure detected");
        miss("R-NSOLV", "no Frobenius structure detected");
        miss("R-SOLV", "no Frobenius structure detected");
    }

    if (g.order() <= kHeavyCap && structural_predicates(g).is_solvable && is_gz_group(g)) {
        if (k.characteristic != 2 && k.characteristic != 3 &&
            k.contains_zeta(1LL << uprime) == Tri::yes &&
            k.contains_zeta(pow3(l3)) == Tri::yes) {
            v.outcome = kOutRR;
            v.trace.push_back(make_step(
                "R-GZ", kStmtGZ,
                {{"group_order", str(g.order())}, {"u'", str(uprime)}, {"l", str(l3)}}));
            return v;
        }
        miss("R-GZ", "needs char k outside {2, 3} with zeta_{2^u'} and zeta_{3^l} in k");
    } else {
        miss("R-GZ", "group is not a solvable GZ-group within the enumeration cap");
    }

    if (g.order() <= kHeavyCap && depth < 2) {
        auto norms = normal_subgroups(g);
        bool fired = false;
        for (std::size_t i = 0; i < norms.size() && !fired; ++i)
            for (std::size_t j = 0; j < norms.size() && !fired; ++j) {
                const Subgroup &n1 = norms[i], &n2 = norms[j];
                if (n1.order() == 1 || n2.order() == 1) continue;
                if ((long long)n1.order() * n2.order() != g.order()) continue;
                std::vector<int> meet;
                std::set_intersection(n1.elements.begin(), n1.elements.end(),
                                      n2.elements.begin(), n2.elements.end(),
                                      std::back_inserter(meet));
                if (meet.size() != 1) continue;
                Group f1 = subgroup_as_group(n1), f2 = subgroup_as_group(n2);
                Verdict v1 = certify_impl(f1, k, cap, depth + 1);
                if (v1.outcome != kOutRR) continue;
                Verdict v2 = certify_impl(f2, k, cap, depth + 1);
                if (v2.outcome != kOutRR) continue;
                v.trace = std::move(v1.trace);
                for (auto& s : v2.trace) v.trace.push_back(std::move(s));
                v.trace.push_back(make_step("R-PROD", kStmtProd,
                                            {{"factor_orders", str(n1.order()) + " x " +
                                                                   str(n2.order())}}));
                v.outcome = kOutRR;
                fired = true;
            }
        if (fired) return v;
        miss("R-PROD", "no internal direct factorization with both factors certified");
    } else {
        miss("R-PROD", "direct-factor search skipped (order cap or recursion depth)");
    }

    if (g.order() <= kHeavyCap && depth < 2) {
        for (const Subgroup& n : normal_subgroups(g)) {
            if (n.order() == 1 || n.is_whole()) continue;
            long long m = g.order() / n.order();
            if (std::gcd((long long)n.order(), m) != 1) continue;
            if (!subgroup_is_abelian(n)) continue;
            Group ng = subgroup_as_group(n);
            Group comp = quotient(g, n).group;  // a complement exists (Schur-Zassenhaus)
            Verdict vn = certify_impl(ng, k, cap, depth + 1);
            if (vn.outcome != kOutRR) continue;
            Verdict vc = certify_impl(comp, k, cap, depth + 1);
            if (vc.outcome != kOutRR) continue;
            v.trace = std::move(vn.trace);
            for (auto& s : vc.trace) v.trace.push_back(std::move(s));
            v.trace.push_back(make_step(
                "R-SEMI", kStmtSemi,
                {{"normal_order", str(n.order())}, {"complement_order", str(m)}}));
            v.outcome = kOutRR;
            return v;
        }
        miss("R-SEMI", "no coprime abelian normal subgroup with both parts certified");
    } else {
        miss("R-SEMI", "semidirect search skipped (order cap or recursion depth)");
    }

    v.outcome = kOutUnknown;
    return v;
}

}  // namespace

Tri FieldModel::contains_zeta(long long n) const {
    if (n <= 1) return Tri::yes;
    if (characteristic > 0) {
        if (n % characteristic == 0) return Tri::no;
        if (kind == "Fq") return (level - 1) % n == 0 ? Tri::yes : Tri::no;
        return Tri::yes;  // CharP model: all roots of unity of order prime to p
    }
    if (kind == "C") return Tri::yes;
    long long nn = (n % 2 == 1) ? 2 * n : n;
    return level % nn == 0 ? Tri::yes : Tri::no;
}

Tri FieldModel::cyclic_cyclotomic_ext(int r) const {
    if (r <= 1) return Tri::yes;
    long long n = 1LL << r;
    if (contains_zeta(n) == Tri::yes) return Tri::yes;
    if (characteristic > 0) return Tri::yes;  // trivial (char 2) or finite-field cyclic
    if (kind == "C") return Tri::yes;
    // Gal(k(zeta_{2^r})/k) = kernel of (Z/L)^x -> (Z/level)^x, L = lcm(level, 2^r)
    long long L = std::lcm(level, n);
    std::vector<long long> kernel;
    for (long long a = 1; a < L; ++a)
        if (std::gcd(a, L) == 1 && a % level == 1) kernel.push_back(a);
    auto order_of = [&](long long a) {
        long long x = a;
        int o = 1;
        while (x != 1) {
            x = (x * a) % L;
            ++o;
        }
        return o;
    };
    for (long long a : kernel)
        if (order_of(a) == (int)kernel.size()) return Tri::yes;
    return Tri::no;
}

FieldModel builtin_field(const std::string& spec) {
    FieldModel f;
    auto num_after = [&](std::size_t pos) {
        long long v = 0;
        if (pos >= spec.size()) throw BadFieldSpec("missing numeric parameter: " + spec);
        for (std::size_t i = pos; i < spec.size(); ++i) {
            if (spec[i] < '0' || spec[i] > '9')
                throw BadFieldSpec("malformed field spec: " + spec);
            v = v * 10 + (spec[i] - '0');
        }
        return v;
    };
    if (spec == "Q") {
        f.name = "Q";
        f.kind = "Q";
        f.level = 2;
        f.is_number_field = true;
        return f;
    }
    if (spec == "C") {
        f.name = "C";
        f.kind = "C";
        return f;
    }
    if (spec.rfind("Qzeta:", 0) == 0) {
        long long m = num_after(6);
        if (m < 1) throw BadFieldSpec("cyclotomic level must be positive");
        if (m % 2 == 1) m *= 2;  // Q(zeta_m) = Q(zeta_2m) for odd m
        f.kind = "Qzeta";
        f.level = m;
        f.name = "Q(zeta_" + std::to_string(m) + ")";
        f.is_number_field = true;
        return f;
    }
    if (spec.rfind("Fq:", 0) == 0) {
        long long q = num_after(3);
        auto fact = factorize(q);
        if (q < 2 || fact.size() != 1) throw BadFieldSpec("Fq needs a prime-power order");
        f.kind = "Fq";
        f.characteristic = fact[0].first;
        f.level = q;
        f.name = "F_" + std::to_string(q);
        f.is_infinite = false;
        return f;
    }
    if (spec.rfind("charp:", 0) == 0) {
        long long p = num_after(6);
        if (!is_prime(p)) throw BadFieldSpec("charp needs a prime characteristic");
        f.kind = "CharP";
        f.characteristic = p;
        f.level = p;
        f.name = "char" + std::to_string(p) + "_infinite";
        return f;
    }
    throw BadFieldSpec("unrecognized field spec: " + spec);
}

Verdict certify(const Group& g, const FieldModel& k, int cap) {
    if (!k.is_infinite)
        throw FieldNotInfinite("retract rationality needs an infinite ground field");
    if (g.order() > cap) throw OrderCapExceeded("certify: group order exceeds cap");
    Verdict v = certify_impl(g, k, cap, 0);
    if (v.outcome == kOutRR && k.is_number_field)
        v.corollaries.push_back(
            "inverse Galois note: over the number field " + k.name +
            " Hilbert irreducibility applies, so retract rationality yields a Galois "
            "extension K/" + k.name + " with group G");
    return v;
}

std::string explain(const Verdict& v) {
    std::ostringstream os;
    os << "verdict: " << v.outcome << "\n";
    if (!v.trace.empty()) {
        os << "trace:\n";
        int i = 1;
        for (const TraceStep& s : v.trace) {
            os << "  " << i++ << ". [" << s.rule << "] " << s.statement << "\n";
            for (const auto& [key, val] : s.bindings)
                os << "       " << key << " = " << val << "\n";
        }
    }
    for (const std::string& c : v.corollaries) os << "note: " << c << "\n";
    if (v.outcome == kOutUnknown && !v.attempts.empty()) {
        os << "rules attempted:\n";
        for (const auto& [rule, why] : v.attempts)
            os << "  " << rule << ": " << why << "\n";
    }
    return os.str();
}

}  // namespace gk
