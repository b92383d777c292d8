#include "gk/cohomology.hpp"

#include <algorithm>
#include <numeric>

namespace gk {
namespace {

long long nmodn(long long a, long long m) { return ((a % m) + m) % m; }

// spanning tree: word[i] = (parent, generator) with element_i = gen * parent
std::vector<std::pair<int, int>> bfs_tree(const Group& g) {
    std::vector<std::pair<int, int>> word(g.order(), {-1, -1});
    std::vector<int> queue{0};
    std::vector<char> seen(g.order(), 0);
    seen[0] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int x = queue[qi];
        for (int s = 0; s < g.num_generators(); ++s) {
            int y = g.mul(g.generator_index(s), x);
            if (seen[y]) continue;
            seen[y] = 1;
            word[y] = {x, s};
            queue.push_back(y);
        }
    }
    return word;
}

// u-coordinate of the cochain value f(gen_s, x); x != identity
inline int uidx(const Group& g, int s, int x) { return s * (g.order() - 1) + (x - 1); }

// expands generator-pair values u into a full normalized table mod m via the
// cocycle recursion f(s*g0, h) = f(g0, h) + f(s, g0*h) - f(s, g0)
Vec expand_u(const Group& g, const std::vector<std::pair<int, int>>& word, const Vec& u,
             long long m) {
    int o = g.order();
    Vec table((std::size_t)o * o, 0);
    auto uval = [&](int s, int x) { return x == 0 ? 0LL : u[uidx(g, s, x)]; };
    // process in an order where parents come first
    std::vector<int> by_depth;
    {
        std::vector<int> depth(o, 0);
        for (int i = 1; i < o; ++i) {
            int d = 0;
            for (int j = i; j != 0; j = word[j].first) ++d;
            depth[i] = d;
        }
        for (int i = 1; i < o; ++i) by_depth.push_back(i);
        std::sort(by_depth.begin(), by_depth.end(),
                  [&](int a, int b) { return depth[a] < depth[b]; });
    }
    for (int gidx : by_depth) {
        auto [g0, s] = word[gidx];
        for (int h = 1; h < o; ++h) {
            long long v = table[(std::size_t)g0 * o + h] + uval(s, g.mul(g0, h)) - uval(s, g0);
            table[(std::size_t)gidx * o + h] = nmodn(v, m);
        }
    }
    return table;
}

Vec extract_u(const Group& g, const Vec& table, long long m) {
    int o = g.order();
    Vec u((std::size_t)g.num_generators() * (o - 1), 0);
    for (int s = 0; s < g.num_generators(); ++s)
        for (int x = 1; x < o; ++x)
            u[uidx(g, s, x)] = nmodn(table[(std::size_t)g.generator_index(s) * o + x], m);
    return u;
}

long long crt_pair(long long a, long long ma, long long b, long long mb) {
    // x = a mod ma, x = b mod mb with gcd(ma, mb) = 1
    if (mb == 1) return a;
    if (ma == 1) return b;
    long long inv = mod_inverse(nmodn(ma, mb), mb);
    long long t = nmodn((b - a) % mb * inv % mb, mb);
    return a + ma * t;
}

struct SolveCtx {
    PkDiag d;
    int rows, cols;
};

std::optional<Vec> solve_with(const SolveCtx& ctx, const Vec& rhs) {
    const long long pk = ctx.d.pk;
    int rows = ctx.rows, cols = ctx.cols;
    int m = (int)ctx.d.diagonal.size();
    Vec w(rows, 0);
    for (int i = 0; i < rows; ++i) {
        __int128 s = 0;
        for (int j = 0; j < rows; ++j) s += (__int128)ctx.d.U[i][j] * nmodn(rhs[j], pk);
        w[i] = (long long)nmodn((long long)(s % pk), pk);
    }
    Vec zp(cols, 0);
    for (int i = 0; i < rows; ++i) {
        long long di = i < m ? ctx.d.diagonal[i] : 0;
        if (di == 0) {
            if (w[i] != 0) return std::nullopt;
        } else {
            if (w[i] % di != 0) return std::nullopt;
            if (i < cols) zp[i] = w[i] / di;
        }
    }
    Vec z(cols, 0);
    for (int r = 0; r < cols; ++r) {
        __int128 s = 0;
        for (int t = 0; t < cols; ++t) s += (__int128)ctx.d.V[r][t] * zp[t];
        z[r] = nmodn((long long)(s % pk), pk);
    }
    return z;
}

// kernel generators as a U x k column matrix for coefficient solving
Mat columns_of(const Mat& rows_mat, int dim) {
    Mat g(dim, Vec(rows_mat.size(), 0));
    for (std::size_t j = 0; j < rows_mat.size(); ++j)
        for (int i = 0; i < dim; ++i) g[i][j] = rows_mat[j][i];
    return g;
}

CohomologyModule::Component build_component(const Group& g,
                                            const std::vector<std::pair<int, int>>& word,
                                            long long p, int e, const Mat& extra_relations) {
    CohomologyModule::Component comp;
    comp.p = p;
    comp.e = e;
    comp.pk = 1;
    for (int i = 0; i < e; ++i) comp.pk *= p;
    const long long pk = comp.pk;
    const int o = g.order(), ng = g.num_generators();
    const int U = ng * (o - 1);

    // symbolic table: F[g*o+h] expresses f(g, h) over the u-coordinates
    std::vector<Vec> F((std::size_t)o * o, Vec());
    auto fvec = [&](int a, int b) -> const Vec& { return F[(std::size_t)a * o + b]; };
    Vec zero(U, 0);
    for (int i = 0; i < o; ++i) F[(std::size_t)i * o] = zero, F[i] = zero;
    {
        std::vector<int> by_depth;
        std::vector<int> depth(o, 0);
        for (int i = 1; i < o; ++i) {
            int d = 0;
            for (int j = i; j != 0; j = word[j].first) ++d;
            depth[i] = d;
            by_depth.push_back(i);
        }
        std::sort(by_depth.begin(), by_depth.end(),
                  [&](int a, int b) { return depth[a] < depth[b]; });
        for (int gi : by_depth) {
            auto [g0, s] = word[gi];
            for (int h = 1; h < o; ++h) {
                Vec v = fvec(g0, h);
                int gh = g.mul(g0, h);
                if (gh != 0) v[uidx(g, s, gh)] = nmodn(v[uidx(g, s, gh)] + 1, pk);
                if (g0 != 0) v[uidx(g, s, g0)] = nmodn(v[uidx(g, s, g0)] - 1, pk);
                F[(std::size_t)gi * o + h] = std::move(v);
            }
        }
    }

    // cocycle constraints for generator first arguments; the simplicial
    // identity propagates them to arbitrary first arguments
    RowEchelonModPk ech(U, p, e);
    for (int s = 0; s < ng; ++s) {
        int gs = g.generator_index(s);
        for (int h = 1; h < o; ++h) {
            int sh = g.mul(gs, h);
            for (int k = 1; k < o; ++k) {
                Vec row = fvec(sh, k);
                for (int i = 0; i < U; ++i) row[i] = nmodn(row[i] - fvec(h, k)[i], pk);
                row[uidx(g, s, h)] = nmodn(row[uidx(g, s, h)] + 1, pk);
                int hk = g.mul(h, k);
                if (hk != 0) row[uidx(g, s, hk)] = nmodn(row[uidx(g, s, hk)] - 1, pk);
                ech.add_row(std::move(row));
            }
        }
    }
    Mat constraints = ech.take_rows();
    if (constraints.empty()) constraints.push_back(Vec(U, 0));
    comp.kernel = kernel_mod_pk(constraints, p, e);
    int k = (int)comp.kernel.size();
    if (k == 0) return comp;

    // relation lattice: coboundaries (and extra relations) in kernel
    // coefficients, over Z/pk
    Mat gmat = columns_of(comp.kernel, U);
    SolveCtx ctx{diagonalize_mod_pk(gmat, p, e), U, k};
    Mat lcols;
    for (int y = 1; y < o; ++y) {
        Vec rel(U, 0);
        for (int s = 0; s < ng; ++s) {
            int gs = g.generator_index(s);
            for (int x = 1; x < o; ++x) {
                long long v = (gs == y ? 1 : 0) + (x == y ? 1 : 0) - (g.mul(gs, x) == y ? 1 : 0);
                rel[uidx(g, s, x)] = nmodn(v, pk);
            }
        }
        auto c = solve_with(ctx, rel);
        if (!c) throw InternalInconsistency("coboundary outside cocycle space");
        lcols.push_back(std::move(*c));
    }
    for (const Vec& table : extra_relations) {
        Vec u(U, 0);
        for (int s = 0; s < ng; ++s)
            for (int x = 1; x < o; ++x)
                u[uidx(g, s, x)] = nmodn(table[(std::size_t)g.generator_index(s) * o + x], pk);
        auto c = solve_with(ctx, u);
        if (!c) throw InternalInconsistency("connecting-map image outside cocycle space");
        lcols.push_back(std::move(*c));
    }
    for (Vec& z : kernel_mod_pk(gmat, p, e)) lcols.push_back(std::move(z));

    Mat l(k, Vec(lcols.size(), 0));
    for (std::size_t j = 0; j < lcols.size(); ++j)
        for (int i = 0; i < k; ++i) l[i][j] = lcols[j][i];
    PkDiag ld = diagonalize_mod_pk(l, p, e);
    comp.usnf = ld.U;
    comp.diag.resize(k);
    for (int i = 0; i < k; ++i) {
        long long d = i < (int)ld.diagonal.size() ? ld.diagonal[i] : 0;
        comp.diag[i] = d == 0 ? pk : d;  // effective quotient factor
        if (comp.diag[i] > 1) comp.kept.push_back(i);
    }
    return comp;
}

// representative u-vector generating the quotient factor at `pos`
Vec component_rep(const CohomologyModule::Component& comp, int pos) {
    int k = (int)comp.kernel.size();
    Vec e(k, 0);
    e[pos] = 1;
    auto y = solve_mod_pk(comp.usnf, e, comp.p, comp.e);  // usnf is invertible mod pk
    if (!y) throw InternalInconsistency("SNF transform not invertible");
    int U = (int)comp.kernel[0].size();
    Vec u(U, 0);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < U; ++i)
            u[i] = nmodn(u[i] + (__int128)(*y)[j] * comp.kernel[j][i] % comp.pk, comp.pk);
    return u;
}

CohomologyModule assemble(const Group& g, long long n, const std::string& kind,
                          const Mat& extra_relations) {
    CohomologyModule m;
    m.group = &g;
    m.n = n;
    m.kind = kind;
    if (g.order() == 1 || n == 1) return m;

    auto word = bfs_tree(g);
    for (auto [p, e] : factorize(n))
        m.components.push_back(build_component(g, word, p, e, extra_relations));

    // align per-component factor chains at the large end and CRT-combine
    std::size_t len = 0;
    for (const auto& c : m.components) len = std::max(len, c.kept.size());
    for (std::size_t j = 0; j < len; ++j) {
        long long d = 1;
        Vec table((std::size_t)g.order() * g.order(), 0);
        long long built = 1;
        for (const auto& c : m.components) {
            long long pad = (long long)len - (long long)c.kept.size();
            long long fac = 1;
            Vec ctab((std::size_t)g.order() * g.order(), 0);
            if ((long long)j >= pad) {
                int pos = c.kept[j - pad];
                fac = c.diag[pos];
                ctab = expand_u(g, word, component_rep(c, pos), c.pk);
            }
            d *= fac;
            for (std::size_t i = 0; i < table.size(); ++i)
                table[i] = crt_pair(table[i], built, ctab[i], c.pk);
            built *= c.pk;
        }
        if (d > 1) {
            m.invariants.factors.push_back(d);
            CocycleVector rep;
            rep.group = &g;
            rep.n = n;
            rep.values = std::move(table);
            m.basis.push_back(std::move(rep));
        }
    }
    return m;
}

}  // namespace

bool CocycleVector::is_cocycle() const {
    const Group& g = *group;
    int o = g.order();
    for (int a = 0; a < o; ++a)
        for (int b = 0; b < o; ++b)
            for (int c = 0; c < o; ++c) {
                long long lhs = at(a, b) + at(g.mul(a, b), c);
                long long rhs = at(b, c) + at(a, g.mul(b, c));
                if (nmodn(lhs - rhs, n) != 0) return false;
            }
    return true;
}

CocycleVector add_cocycles(const CocycleVector& a, const CocycleVector& b) {
    CocycleVector out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = nmodn(out.values[i] + b.values[i], a.n);
    return out;
}

CocycleVector scale_cocycle(const CocycleVector& a, long long c) {
    CocycleVector out = a;
    for (auto& v : out.values) v = nmodn(v * c, a.n);
    return out;
}

CocycleVector coboundary(const Group& g, const Vec& c, long long n) {
    CocycleVector out;
    out.group = &g;
    out.n = n;
    int o = g.order();
    out.values.assign((std::size_t)o * o, 0);
    for (int a = 1; a < o; ++a)
        for (int b = 1; b < o; ++b)
            out.values[(std::size_t)a * o + b] = nmodn(c[a] + c[b] - c[g.mul(a, b)], n);
    return out;
}

CohomologyModule h2_mod_n(const Group& g, long long n, int cap) {
    if (g.order() > cap) throw CohomologyCapExceeded("group order exceeds cohomology cap");
    if (n < 2) throw BadModulus("coefficient modulus must be at least 2");
    return assemble(g, g.order() == 1 ? 1 : n, "H2_mod_n", {});
}

CohomologyModule h2_qz(const Group& g, int cap) { return h2_qz_at(g, g.order(), cap); }

CohomologyModule h2_qz_at(const Group& g, long long n, int cap) {
    if (g.order() > cap) throw CohomologyCapExceeded("group order exceeds cohomology cap");
    if (g.order() == 1) return assemble(g, n, "H2_QZ_model", {});
    if (n % g.exponent() != 0)
        throw BadModulus("coefficient modulus must be a multiple of the group exponent");
    // connecting-map images: the carry cocycle of each hom G -> (1/n)Z/Z
    Mat extra;
    int o = g.order();
    for (const Vec& phi : hom_to_cyclic(g, n)) {
        Vec table((std::size_t)o * o, 0);
        bool zero = true;
        for (int a = 1; a < o; ++a)
            for (int b = 1; b < o; ++b) {
                long long v = (phi[a] + phi[b] - phi[g.mul(a, b)]) / n;
                table[(std::size_t)a * o + b] = v;
                zero = zero && v == 0;
            }
        if (!zero) extra.push_back(std::move(table));
    }
    return assemble(g, n, "H2_QZ_model", extra);
}

std::vector<Vec> hom_to_cyclic(const Group& g, long long n) {
    std::vector<Vec> out;
    int ng = g.num_generators();
    std::vector<std::vector<long long>> choices(ng);
    for (int s = 0; s < ng; ++s) {
        long long ord = g.element_order(g.generator_index(s));
        long long d = std::gcd(n, ord);
        for (long long t = 0; t < d; ++t) choices[s].push_back(t * (n / d));
    }
    std::vector<long long> images(ng, 0);
    std::vector<std::size_t> pick(ng, 0);
    while (true) {
        for (int s = 0; s < ng; ++s) images[s] = choices[s][pick[s]];
        auto f = g.extend_hom(images, 0LL,
                              [&](long long a, long long b) { return nmodn(a + b, n); });
        if (!f.empty()) out.push_back(std::move(f));
        int s = 0;
        while (s < ng && ++pick[s] == choices[s].size()) pick[s++] = 0;
        if (s == ng) break;
    }
    return out;
}

CocycleVector restrict_cocycle(const CocycleVector& f, const Group& ag) {
    const Group& g = *f.group;
    CocycleVector out;
    out.group = &ag;
    out.n = f.n;
    int oa = ag.order();
    out.values.assign((std::size_t)oa * oa, 0);
    std::vector<int> up(oa);
    for (int i = 0; i < oa; ++i) {
        up[i] = g.index_of(ag.element(i));
        if (up[i] < 0) throw ElementNotInGroup("subgroup element not in the cocycle's group");
    }
    for (int a = 0; a < oa; ++a)
        for (int b = 0; b < oa; ++b)
            out.values[(std::size_t)a * oa + b] = f.at(up[a], up[b]);
    return out;
}

Vec class_coordinates(const CohomologyModule& m, const CocycleVector& f) {
    if (f.group != m.group || f.n != m.n)
        throw FormatError("cocycle does not live over this module");
    std::size_t len = m.invariants.factors.size();
    Vec coords(len, 0);
    if (len == 0) {
        // still validate membership in the cocycle space
        if (!m.components.empty()) {
            const auto& c = m.components[0];
            if (!c.kernel.empty()) {
                Mat gmat = columns_of(c.kernel, (int)c.kernel[0].size());
                Vec u = extract_u(*m.group, f.values, c.pk);
                if (!solve_mod_pk(gmat, u, c.p, c.e))
                    throw RelationOutsideSpan("not a cocycle");
            }
        }
        return coords;
    }
    Vec built(len, 1);
    for (const auto& c : m.components) {
        Vec u = extract_u(*m.group, f.values, c.pk);
        Mat gmat = columns_of(c.kernel, (int)u.size());
        auto a = solve_mod_pk(gmat, u, c.p, c.e);
        if (!a) throw RelationOutsideSpan("not a cocycle");
        // transformed coordinates
        int k = (int)c.kernel.size();
        Vec w(k, 0);
        for (int i = 0; i < k; ++i) {
            __int128 s = 0;
            for (int j = 0; j < k; ++j) s += (__int128)c.usnf[i][j] * (*a)[j];
            w[i] = nmodn((long long)(s % c.pk), c.pk);
        }
        long long pad = (long long)len - (long long)c.kept.size();
        for (std::size_t j = 0; j < len; ++j) {
            long long fac = 1, val = 0;
            if ((long long)j >= pad) {
                int pos = c.kept[j - pad];
                fac = c.diag[pos];
                val = w[pos] % fac;
            }
            coords[j] = crt_pair(coords[j], built[j], val, fac);
            built[j] *= fac;
        }
    }
    return coords;
}

}  // namespace gk
