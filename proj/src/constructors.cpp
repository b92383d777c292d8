#include "gk/constructors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace gk {
namespace {

long long mod_pos(long long x, long long m) {
    long long r = x % m;
    return r < 0 ? r + m : r;
}

long long pow_mod(long long b, long long e, long long m) {
    long long r = 1 % m;
    b = mod_pos(b, m);
    while (e > 0) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

int pow_idx(const Group& g, int x, long long e) {
    long long o = g.element_order(x);
    e = mod_pos(e, o);
    int r = 0;
    while (e-- > 0) r = g.mul(r, x);
    return r;
}

bool is_central(const Group& g, int z) {
    for (int x = 0; x < g.order(); ++x)
        if (g.mul(z, x) != g.mul(x, z)) return false;
    return true;
}

}  // namespace

Group metacyclic(long long m, long long n, long long r, int cap) {
    if (m < 1 || n < 1) throw ParameterCongruenceViolated("m and n must be positive");
    r = mod_pos(r, m == 1 ? 1 : m);
    if (m > 1 && pow_mod(r, n, m) != 1) throw ParameterCongruenceViolated("r^n must be 1 mod m");
    if (std::gcd(m, n * (r - 1)) != 1) throw ParameterCongruenceViolated("gcd{m, n(r-1)} must be 1");
    Group cm = cyclic_group((int)m), cn = cyclic_group((int)n);
    auto p = semidirect_product(cm, cn, std::vector<std::vector<int>>(cn.num_generators(), power_automorphism(cm, r)), cap);
    return p.group;
}

std::vector<int> automorphism_from_gen_images(const Group& g, const std::vector<int>& images) {
    if ((int)images.size() != g.num_generators())
        throw NotAnAutomorphism("one image per generator required");
    auto f = g.extend_hom<int>(images, 0, [&](int a, int b) { return g.mul(a, b); });
    if (f.empty()) throw NotAnAutomorphism("generator images violate the relations");
    std::vector<char> hit(g.order(), 0);
    for (int v : f) hit[v] = 1;
    if (std::count(hit.begin(), hit.end(), (char)1) != g.order())
        throw NotAnAutomorphism("generator images do not define a bijection");
    return f;
}

Extension2 extend_by_order2(const Group& g0, const std::vector<int>& aut, int z, int cap) {
    if ((int)aut.size() != g0.order()) throw NotAnAutomorphism("automorphism size mismatch");
    if (!is_central(g0, z) || g0.mul(z, z) != 0)
        throw RelationViolation("designated square must be central of order dividing 2");
    if (aut[z] != z) throw RelationViolation("automorphism must fix the designated square");
    for (int x = 0; x < g0.order(); ++x)
        if (aut[aut[x]] != g0.conj(z, x))
            throw RelationViolation("automorphism squared must be conjugation by the square");

    auto s = semidirect_product(g0, cyclic_group(4), {aut}, cap);
    std::vector<int> gi(s.left.generators.begin(), s.left.generators.end());
    auto embed0 = g0.extend_hom<int>(gi, 0, [&](int a, int b) { return s.group.mul(a, b); });
    if (embed0.empty()) throw InternalInconsistency("base embedding failed");
    int t0 = s.right.generators[0];
    int w = s.group.mul(s.group.inv(embed0[z]), s.group.mul(t0, t0));
    if (!is_central(s.group, w) || s.group.element_order(w) != 2)
        throw InternalInconsistency("extension kernel is not central of order 2");

    Quotient q = quotient(s.group, subgroup_generated(s.group, std::vector<int>{w}));
    Extension2 out{std::move(q.group), {}, q.projection[t0]};
    out.embed.resize(g0.order());
    std::set<int> image;
    for (int i = 0; i < g0.order(); ++i) {
        out.embed[i] = q.projection[embed0[i]];
        image.insert(out.embed[i]);
    }
    if ((int)image.size() != g0.order() || out.group.order() != 2 * g0.order())
        throw RelationViolation("central extension collapsed");
    if (out.group.mul(out.t, out.t) != out.embed[z]) throw InternalInconsistency("square relation failed");
    for (int x = 0; x < g0.order(); ++x)
        if (out.group.conj(out.t, out.embed[x]) != out.embed[aut[x]])
            throw InternalInconsistency("conjugation relation failed");
    return out;
}

Group quaternion_generalized(long long order) {
    if (order < 8 || (order & (order - 1)) != 0) throw BadOrder("order must be a 2-power >= 8");
    Group base = cyclic_group((int)(order / 2));
    int x = base.generator_index(0);
    Extension2 e2 = extend_by_order2(base, power_automorphism(base, -1), pow_idx(base, x, order / 4));
    int involutions = 0;
    for (int i = 1; i < e2.group.order(); ++i)
        if (e2.group.element_order(i) == 2) ++involutions;
    if (involutions != 1) throw InternalInconsistency("generalized quaternion needs a unique involution");
    return e2.group;
}

Group gz_type(const PresentationParams& prm, int cap) {
    long long m = prm.m, n = prm.n, r = prm.r;
    if (m < 1 || n < 1) throw ParameterCongruenceViolated("m and n must be positive");
    long long mm = std::max<long long>(m, 1);
    auto need = [](bool ok, const char* msg) {
        if (!ok) throw ParameterCongruenceViolated(msg);
    };
    need(pow_mod(r, n, mm) == 1 % mm, "r^n must be 1 mod m");
    need(std::gcd(m, n * (mod_pos(r, mm) - 1)) == 1, "gcd{m, n(r-1)} must be 1");
    Group cm = cyclic_group((int)m);

    if (prm.family == "II") {
        long long u = 0, v = n;
        while (v % 2 == 0) {
            v /= 2;
            ++u;
        }
        need(u >= 2, "n must be divisible by 4");
        need(pow_mod(prm.l, 2, mm) == 1 % mm, "l^2 must be 1 mod m");
        need(pow_mod(r, mod_pos(prm.k - 1, n), mm) == 1 % mm, "r^(k-1) must be 1 mod m");
        need(mod_pos(prm.k + 1, 1LL << u) == 0, "k must be -1 mod 2^u");
        need(mod_pos(prm.k * prm.k, n) == 1, "k^2 must be 1 mod n");

        Group cn = cyclic_group((int)n);
        Extension2 h = extend_by_order2(cn, power_automorphism(cn, prm.k),
                                        pow_idx(cn, cn.generator_index(0), n / 2), cap);
        // h generators: (tau, lambda)
        auto p = semidirect_product(cm, h.group,
                                    m == 1 ? std::vector<std::vector<int>>(h.group.num_generators(),
                                                                           power_automorphism(cm, 1))
                                           : std::vector<std::vector<int>>{power_automorphism(cm, r),
                                                                           power_automorphism(cm, prm.l)},
                                    cap);
        if (p.group.order() != 2 * m * n) throw RelationViolation("order mismatch");
        return p.group;
    }

    if (prm.family == "III" || prm.family == "IV") {
        need(n % 2 == 1, "n must be odd");
        need(n % 3 == 0, "n must be divisible by 3");
        Group q8 = quaternion_generalized(8);
        int lam = q8.generator_index(0), rho = q8.generator_index(1);
        // order-3 rotation lambda -> rho -> lambda*rho
        std::vector<int> rot = automorphism_from_gen_images(q8, {rho, q8.mul(lam, rho)});
        Group cn = cyclic_group((int)n);
        auto h = semidirect_product(q8, cn, {rot}, cap);
        // h generators: (lambda, rho, tau)
        std::vector<std::vector<int>> act;
        for (int i = 0; i < h.group.num_generators(); ++i)
            act.push_back(power_automorphism(cm, i == 2 ? r : 1));
        auto g3 = semidirect_product(cm, h.group, act, cap);
        if (g3.group.order() != 8 * m * n) throw RelationViolation("order mismatch");
        if (prm.family == "III") return g3.group;

        // family IV: adjoin nu with nu^2 = lambda^2
        long long k = prm.k, t = prm.t;
        need(pow_mod(t, 2, mm) == 1 % mm, "t^2 must be 1 mod m");
        need(pow_mod(r, mod_pos(k - 1, n), mm) == 1 % mm, "r^(k-1) must be 1 mod m");
        need(mod_pos(k + 1, 3) == 0, "k must be -1 mod 3");
        need(mod_pos(k * k, n) == 1, "k^2 must be 1 mod n");

        const Group& g = g3.group;
        // generators of g: (sigma?, lambda, rho, tau) with sigma absent when m = 1
        int base = m == 1 ? 0 : 1;
        int glam = g.generator_index(base), grho = g.generator_index(base + 1),
            gtau = g.generator_index(base + 2);
        std::vector<int> images(g.num_generators());
        if (m > 1) images[0] = pow_idx(g, g.generator_index(0), t);
        images[base] = g.mul(grho, glam);
        images[base + 1] = g.inv(grho);
        images[base + 2] = pow_idx(g, gtau, k);
        std::vector<int> alpha = automorphism_from_gen_images(g, images);
        Extension2 e2 = extend_by_order2(g, alpha, g.mul(glam, glam), cap);
        if (e2.group.order() != 16 * m * n) throw RelationViolation("order mismatch");
        return e2.group;
    }

    throw FormatError("unknown presentation family: " + prm.family);
}

Group sl2(long long p, int cap) {
    if (!is_prime(p)) throw NotPrime("p must be prime");
    long long order = p * (p * p - 1);
    if (order > cap) throw OrderCapExceeded("sl2 order exceeds cap");
    int deg = (int)(p * p - 1);
    auto point = [&](long long x, long long y) { return (int)(x * p + y - 1); };
    auto act = [&](const std::vector<std::vector<long long>>& mat) {
        std::vector<int> img(deg);
        for (long long x = 0; x < p; ++x)
            for (long long y = 0; y < p; ++y) {
                if (x == 0 && y == 0) continue;
                long long nx = mod_pos(mat[0][0] * x + mat[0][1] * y, p);
                long long ny = mod_pos(mat[1][0] * x + mat[1][1] * y, p);
                img[point(x, y)] = point(nx, ny);
            }
        return Perm(img);
    };
    Group g = Group::from_generators(deg, {act({{1, 1}, {0, 1}}), act({{1, 0}, {1, 1}})}, cap);
    if (g.order() != order) throw InternalInconsistency("sl2 order mismatch");
    return g;
}

int MatrixGroupModel::index_of_matrix(const FqMat& m) const {
    for (std::size_t i = 0; i < element_matrices.size(); ++i)
        if (fq_mat_eq(element_matrices[i], m)) return (int)i;
    return -1;
}

MatrixGroupModel matrix_group(const Fq& field, const std::vector<FqMat>& gens, int cap) {
    MatrixGroupModel model{field, gens, {}, {}};
    int n = gens.empty() ? 1 : gens[0].n;
    std::map<std::vector<long long>, int> idx;
    std::vector<FqMat> elems{FqMat::identity(field, n)};
    idx[fq_mat_key(elems[0])] = 0;
    for (std::size_t head = 0; head < elems.size(); ++head) {
        FqMat cur = elems[head];
        for (const FqMat& g : gens) {
            FqMat next = fq_mat_mul(field, g, cur);
            auto key = fq_mat_key(next);
            if (idx.emplace(key, (int)elems.size()).second) {
                elems.push_back(next);
                if ((int)elems.size() > cap) throw OrderCapExceeded("matrix group exceeds cap");
            }
        }
    }
    int order = (int)elems.size();
    std::vector<Perm> perms;
    for (const FqMat& g : gens) {
        std::vector<int> img(order);
        for (int i = 0; i < order; ++i) img[i] = idx.at(fq_mat_key(fq_mat_mul(field, g, elems[i])));
        perms.emplace_back(img);
    }
    model.group = Group::from_generators(order, perms, cap);
    if (model.group.order() != order) throw InternalInconsistency("matrix closure mismatch");
    model.element_matrices.resize(order, elems[0]);
    for (int j = 0; j < order; ++j) model.element_matrices[j] = elems[model.group.element(j)(0)];
    return model;
}

MatrixGroupModel binary_icosahedral(long long q) {
    Fq field = Fq::from_order(q);
    if (field.p() == 2 || field.p() == 5) throw BadCharacteristic("characteristic must not be 2 or 5");
    Fq::El z = field.root_of_unity(5);  // throws NoFifthRoot when absent
    Fq::El zi = field.inv(z);
    auto zp = [&](int e) { return field.pow(z, e); };

    FqMat a;
    a.n = 2;
    a.a = {field.neg(zp(3)), field.zero(), field.zero(), field.neg(zp(2))};
    FqMat b = FqMat::from_ints(field, {{0, 1}, {-1, 0}});
    Fq::El s = field.inv(field.sub(zp(2), field.pow(zi, 2)));
    Fq::El tr = field.add(z, zi);
    FqMat c;
    c.n = 2;
    c.a = {field.mul(s, tr), s, s, field.mul(s, field.neg(tr))};

    MatrixGroupModel model = matrix_group(field, {a, b, c});
    if (model.group.order() != 120) throw InternalInconsistency("binary icosahedral order mismatch");
    return model;
}

bool VerificationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

void VerificationReport::add(const std::string& name, bool pass, const std::string& detail) {
    checks.push_back({name, pass, detail});
}

VerificationReport verify_binary_icosahedral(long long q) {
    VerificationReport rep;
    MatrixGroupModel h = binary_icosahedral(q);
    const Group& hg = h.group;
    int ga = hg.generator_index(0), gb = hg.generator_index(1), gc = hg.generator_index(2);
    int eps = pow_idx(hg, ga, 5);

    rep.add("group order is 120", hg.order() == 120);
    rep.add("eps squares to 1 and is not 1", eps != 0 && hg.mul(eps, eps) == 0);
    {
        Subgroup zc = center(hg);
        rep.add("center is {1, eps}", zc.order() == 2 && zc.contains(eps));
    }
    rep.add("a^5 = b^2 = c^2 = eps",
            pow_idx(hg, ga, 5) == eps && hg.mul(gb, gb) == eps && hg.mul(gc, gc) == eps);
    rep.add("b a b^-1 = a^-1", hg.conj(gb, ga) == hg.inv(ga));
    rep.add("b c b^-1 = eps c", hg.conj(gb, gc) == hg.mul(eps, gc));
    rep.add("c a c = a c b a",
            hg.mul(hg.mul(gc, ga), gc) == hg.mul(hg.mul(ga, gc), hg.mul(gb, ga)));
    {
        int a2 = hg.mul(ga, ga), ai2 = hg.inv(a2);
        rep.add("c a^2 c = a^-2 c a^-2",
                hg.mul(hg.mul(gc, a2), gc) == hg.mul(hg.mul(ai2, gc), ai2));
    }

    // 2x2 special linear group over F5 generated by the explicit A, B, C
    Fq f5(5, 1);
    FqMat A = FqMat::from_ints(f5, {{-1, 1}, {0, -1}});
    FqMat B = FqMat::from_ints(f5, {{2, 1}, {0, -2}});
    FqMat C = FqMat::from_ints(f5, {{2, 0}, {2, -2}});
    MatrixGroupModel sl = matrix_group(f5, {A, B, C});
    rep.add("A, B, C generate a group of order 120", sl.group.order() == 120);

    auto phi = sl.group.extend_hom<int>({ga, gb, gc}, 0, [&](int x, int y) { return hg.mul(x, y); });
    bool phi_iso = false;
    if (!phi.empty()) {
        std::set<int> im(phi.begin(), phi.end());
        phi_iso = (int)im.size() == hg.order();
    }
    rep.add("A -> a, B -> b, C -> c extends to an isomorphism", phi_iso);

    // degree-5 projection
    Group a5 = alternating_group(5);
    int pa = a5.index_of(Perm::from_cycles(5, {{0, 1, 2, 3, 4}}));
    int pb = a5.index_of(Perm::from_cycles(5, {{0, 3}, {1, 2}}));
    int pc = a5.index_of(Perm::from_cycles(5, {{0, 2}, {1, 3}}));
    auto pi = hg.extend_hom<int>({pa, pb, pc}, 0, [&](int x, int y) { return a5.mul(x, y); });
    rep.add("a, b, c map homomorphically onto 5-point even permutations", !pi.empty());
    if (!pi.empty()) {
        std::set<int> image(pi.begin(), pi.end());
        rep.add("projection image has order 60", (int)image.size() == 60);
        std::vector<int> kernel;
        for (int i = 0; i < hg.order(); ++i)
            if (pi[i] == 0) kernel.push_back(i);
        rep.add("projection kernel is {1, eps}",
                kernel.size() == 2 && kernel[0] == 0 && kernel[1] == eps);
        rep.add("eps maps to the identity", pi[eps] == 0);
        bool compose = phi_iso;
        if (compose)
            compose = pi[phi[sl.group.generator_index(0)]] == pa &&
                      pi[phi[sl.group.generator_index(1)]] == pb &&
                      pi[phi[sl.group.generator_index(2)]] == pc;
        rep.add("projection composed with the matrix isomorphism is consistent", compose);
    }

    // conjugation by [[0,-1],[2,0]] acts as the explicit word formulas
    FqMat M = FqMat::from_ints(f5, {{0, -1}, {2, 0}});
    FqMat Mi = fq_mat_inv(f5, M);
    auto tw = [&](const FqMat& x) { return fq_mat_mul(f5, fq_mat_mul(f5, M, x), Mi); };
    FqMat A3CA = fq_mat_mul(f5, fq_mat_mul(f5, fq_mat_mul(f5, A, A), fq_mat_mul(f5, A, C)), A);
    rep.add("twist(A) = -A^3 C A", fq_mat_eq(tw(A), fq_mat_neg(f5, A3CA)));
    rep.add("twist(B) = -C", fq_mat_eq(tw(B), fq_mat_neg(f5, C)));
    rep.add("twist(C) = -B", fq_mat_eq(tw(C), fq_mat_neg(f5, B)));
    return rep;
}

GPlusModel g_plus(long long q) {
    Fq field = Fq::from_order(q);
    if (field.p() != 5)
        throw BadCharacteristic("the double-cover matrix model lives in characteristic 5");
    // lambda = c * [[0,-1],[w,0]] with w = 2 generating F5* and c^2 = 1/w
    Fq::El c = field.sqrt(field.inv(field.from_int(2)));  // NoSuchScalar when absent
    FqMat M = FqMat::from_ints(field, {{0, -1}, {2, 0}});
    FqMat lam = fq_mat_scale(field, c, M);
    FqMat A = FqMat::from_ints(field, {{-1, 1}, {0, -1}});
    FqMat B = FqMat::from_ints(field, {{2, 1}, {0, -2}});
    FqMat C = FqMat::from_ints(field, {{2, 0}, {2, -2}});

    GPlusModel out;
    out.model = matrix_group(field, {A, B, C, lam});
    const Group& g = out.model.group;
    if (g.order() != 240) throw InternalInconsistency("double cover order mismatch");
    out.lambda = g.generator_index(3);
    Subgroup l = subgroup_generated(
        g, std::vector<int>{g.generator_index(0), g.generator_index(1), g.generator_index(2)});
    if (l.order() != 120) throw InternalInconsistency("embedded subgroup order mismatch");
    out.l_elements = l.elements;

    int eps = out.model.index_of_matrix(FqMat::from_ints(field, {{-1, 0}, {0, -1}}));
    if (g.element_order(out.lambda) != 4 || g.mul(out.lambda, out.lambda) != eps)
        throw InternalInconsistency("lambda must have order 4 with square -1");
    FqMat Mi = fq_mat_inv(field, M);
    for (int i : l.elements) {
        const FqMat& x = out.model.element_matrices[i];
        FqMat want = fq_mat_mul(field, fq_mat_mul(field, M, x), Mi);
        int j = g.conj(out.lambda, i);
        if (!fq_mat_eq(out.model.element_matrices[j], want))
            throw InternalInconsistency("lambda conjugation disagrees with the twist");
    }
    return out;
}

DoubleCoverTag double_cover_type(const Group& g, int z, const std::vector<Perm>& proj) {
    if (z <= 0 || z >= g.order() || g.element_order(z) != 2 || !is_central(g, z))
        throw NotACentralExtension("z must be a central element of order 2");
    if ((int)proj.size() != g.order()) throw NotACentralExtension("projection size mismatch");
    int n = proj[0].degree();
    for (int s = 0; s < g.num_generators(); ++s) {
        int gi = g.generator_index(s);
        for (int x = 0; x < g.order(); ++x)
            if (!(proj[g.mul(gi, x)] == proj[gi].after(proj[x])))
                throw NotACentralExtension("projection is not a homomorphism");
    }
    std::vector<int> kernel;
    for (int i = 0; i < g.order(); ++i)
        if (proj[i].is_identity()) kernel.push_back(i);
    if (kernel.size() != 2 || kernel[0] != 0 || kernel[1] != z)
        throw NotACentralExtension("kernel must be {1, z}");
    std::set<Perm> image(proj.begin(), proj.end());
    long long fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    if ((long long)image.size() != fact)
        throw NotACentralExtension("image must be the full symmetric group");

    auto two_cycles = [&](const Perm& p) {
        int moved = 0;
        for (int i = 0; i < n; ++i)
            if (p(i) != i) ++moved;
        bool involution = p.after(p).is_identity();
        if (!involution) return -1;
        return moved / 2;  // number of transposed pairs
    };
    int transposition_order = 0;
    for (int i = 0; i < g.order(); ++i) {
        int tc = two_cycles(proj[i]);
        if (tc == 2 && g.element_order(i) != 4)
            throw NotACentralExtension("a double transposition fails to lift to order 4");
        if (tc == 1) {
            int o = g.element_order(i);
            if (transposition_order == 0) transposition_order = o;
            if (transposition_order != o)
                throw NotACentralExtension("inconsistent transposition lift orders");
        }
    }
    if (transposition_order == 4) return DoubleCoverTag::hat;
    if (transposition_order == 2) return DoubleCoverTag::tilde;
    throw NotACentralExtension("no transposition lifts found");
}

namespace {

long long three_pow(int l) {
    long long r = 1;
    while (l-- > 0) r *= 3;
    return r;
}

struct CycloData {
    Fq field;
    Fq::El zeta;   // order 3^l
    Fq::El eta;    // order 8
    Fq::El i;      // eta^2
    Fq::El sqrt2;  // eta + eta^-1
};

CycloData cyclo_setup(int l, long long q) {
    if (l < 1) throw BadModulus("l must be at least 1");
    Fq field = Fq::from_order(q);
    long long need = std::lcm(8LL, three_pow(l));
    if ((field.q() - 1) % need != 0)
        throw BadModulus("field lacks the required roots of unity");
    CycloData d{field, field.root_of_unity(three_pow(l)), field.root_of_unity(8), {}, {}};
    d.i = field.mul(d.eta, d.eta);
    d.sqrt2 = field.add(d.eta, field.inv(d.eta));
    if (!(field.mul(d.sqrt2, d.sqrt2) == field.from_int(2)))
        throw InternalInconsistency("square root of 2 check failed");
    return d;
}

void check_faithful(RepModel& rm, const Group& abstract, const std::vector<int>& gen_map,
                    MatrixGroupModel& mg) {
    rm.report.add("matrix group order matches the presentation order",
                  mg.group.order() == abstract.order());
    auto f = abstract.extend_hom<int>(gen_map, 0,
                                      [&](int x, int y) { return mg.group.mul(x, y); });
    bool iso = false;
    if (!f.empty()) {
        std::set<int> im(f.begin(), f.end());
        iso = (int)im.size() == mg.group.order() && mg.group.order() == abstract.order();
    }
    rm.faithful = iso;
    rm.report.add("generator images extend to an isomorphism", iso);
}

}  // namespace

RepModel rep_phi(int l, long long q) {
    CycloData d = cyclo_setup(l, q);
    const Fq& f = d.field;
    FqMat lam;
    lam.n = 2;
    lam.a = {d.i, f.zero(), f.zero(), f.neg(d.i)};
    FqMat rho = FqMat::from_ints(f, {{0, -1}, {1, 0}});
    Fq::El s = f.mul(d.zeta, f.inv(d.sqrt2));
    Fq::El eta3 = f.pow(d.eta, 3);
    FqMat tau;
    tau.n = 2;
    tau.a = {f.mul(s, f.neg(d.eta)), f.mul(s, d.eta), f.mul(s, eta3), f.mul(s, eta3)};

    RepModel rm{d.field, {lam, rho, tau}, {}, false, {}};
    MatrixGroupModel mg = matrix_group(f, {lam, rho, tau});
    rm.group = mg.group;
    long long n3 = three_pow(l);

    int il = mg.group.generator_index(0), ir = mg.group.generator_index(1),
        it = mg.group.generator_index(2);
    rm.report.add("tau^(3^l) = 1", pow_idx(mg.group, it, n3) == 0);
    rm.report.add("lambda^4 = 1", pow_idx(mg.group, il, 4) == 0);
    int l2 = mg.group.mul(il, il);
    rm.report.add("lambda^2 = rho^2 = (lambda rho)^2",
                  l2 == mg.group.mul(ir, ir) &&
                      l2 == pow_idx(mg.group, mg.group.mul(il, ir), 2));
    rm.report.add("tau lambda tau^-1 = rho", mg.group.conj(it, il) == ir);
    rm.report.add("tau rho tau^-1 = lambda rho", mg.group.conj(it, ir) == mg.group.mul(il, ir));

    Group abstract = gz_type({.family = "III", .m = 1, .n = n3, .r = 1});
    check_faithful(rm, abstract, {il, ir, it}, mg);
    rm.report.notes.push_back(
        "irreducibility of the 2-dimensional module is not certified over the finite-field model");
    return rm;
}

RepModel rep_psi(int l, long long q) {
    CycloData d = cyclo_setup(l, q);
    const Fq& f = d.field;
    Fq::El half = f.inv(f.from_int(2));
    Fq::El sm2 = f.add(f.pow(d.eta, 3), d.eta);  // a square root of -2
    if (!(f.mul(sm2, sm2) == f.from_int(-2)))
        throw InternalInconsistency("square root of -2 check failed");
    Fq::El ism2 = f.inv(sm2);
    auto z4 = [&](const Fq::El& a00, const Fq::El& a01, const Fq::El& a10, const Fq::El& a11,
                  const Fq::El& b00, const Fq::El& b01, const Fq::El& b10, const Fq::El& b11) {
        FqMat m;
        m.n = 4;
        m.a.assign(16, f.zero());
        m.a[0] = a00;
        m.a[1] = a01;
        m.a[4] = a10;
        m.a[5] = a11;
        m.a[10] = b00;
        m.a[11] = b01;
        m.a[14] = b10;
        m.a[15] = b11;
        return m;
    };
    Fq::El one = f.one(), zero = f.zero();
    FqMat lam = z4(d.i, zero, zero, f.neg(d.i), one, zero, zero, one);
    FqMat rho = z4(zero, f.from_int(-1), one, zero, one, zero, zero, one);
    Fq::El mi = f.neg(d.i);
    FqMat tau = z4(f.mul(half, f.sub(mi, one)), f.mul(half, f.add(one, d.i)),
                   f.mul(half, f.sub(d.i, one)), f.mul(half, f.sub(d.i, one)),
                   d.zeta, zero, zero, f.inv(d.zeta));
    FqMat nu = z4(ism2, ism2, ism2, f.neg(ism2), zero, one, one, zero);

    RepModel rm{d.field, {lam, rho, tau, nu}, {}, false, {}};
    MatrixGroupModel mg = matrix_group(f, {lam, rho, tau, nu});
    rm.group = mg.group;
    long long n3 = three_pow(l);
    long long k = n3 - 1;  // k = -1 mod 3^l, so k^2 = 1 mod 3^l and 3 | k+1

    int il = mg.group.generator_index(0), ir = mg.group.generator_index(1),
        it = mg.group.generator_index(2), in = mg.group.generator_index(3);
    rm.report.add("nu^2 = lambda^2", mg.group.mul(in, in) == mg.group.mul(il, il));
    rm.report.add("nu lambda nu^-1 = rho lambda",
                  mg.group.conj(in, il) == mg.group.mul(ir, il));
    rm.report.add("nu rho nu^-1 = rho^-1", mg.group.conj(in, ir) == mg.group.inv(ir));
    rm.report.add("nu tau nu^-1 = tau^-1", mg.group.conj(in, it) == mg.group.inv(it));

    Group abstract = gz_type({.family = "IV", .m = 1, .n = n3, .r = 1, .k = k, .t = 1});
    check_faithful(rm, abstract, {il, ir, it, in}, mg);
    return rm;
}

}  // namespace gk
