#include "gk/zlinalg.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace gk {
namespace {

using boost::multiprecision::cpp_int;

struct OverflowSignal {};

// int64 wrapper whose arithmetic throws OverflowSignal instead of wrapping,
// so the SNF driver can restart with arbitrary precision.
struct C64 {
    long long v = 0;
    C64() = default;
    C64(long long x) : v(x) {}
    friend C64 operator+(C64 a, C64 b) {
        long long r;
        if (__builtin_add_overflow(a.v, b.v, &r)) throw OverflowSignal{};
        return {r};
    }
    friend C64 operator-(C64 a, C64 b) {
        long long r;
        if (__builtin_sub_overflow(a.v, b.v, &r)) throw OverflowSignal{};
        return {r};
    }
    friend C64 operator*(C64 a, C64 b) {
        long long r;
        if (__builtin_mul_overflow(a.v, b.v, &r)) throw OverflowSignal{};
        return {r};
    }
    friend C64 operator/(C64 a, C64 b) { return {a.v / b.v}; }  // truncated
    friend C64 operator%(C64 a, C64 b) { return {a.v % b.v}; }
    C64 operator-() const {
        if (v == LLONG_MIN) throw OverflowSignal{};
        return {-v};
    }
    friend bool operator==(C64, C64) = default;
    friend auto operator<=>(C64, C64) = default;
};

C64 abs_of(C64 a) { return a.v < 0 ? -a : a; }
cpp_int abs_of(const cpp_int& a) { return abs(a); }

long long narrow(C64 a) { return a.v; }
long long narrow(const cpp_int& a) {
    if (a > cpp_int(LLONG_MAX) || a < cpp_int(LLONG_MIN)) throw OverflowError("SNF result exceeds 64 bits");
    return a.convert_to<long long>();
}

template <typename I>
struct SnfCore {
    int rows, cols;
    std::vector<std::vector<I>> a, U, Uinv, V;
    bool want;

    SnfCore(const Mat& m, bool transforms) : rows((int)m.size()), cols(m.empty() ? 0 : (int)m[0].size()), want(transforms) {
        a.assign(rows, std::vector<I>(cols, I(0)));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) a[i][j] = I(m[i][j]);
        if (want) {
            U.assign(rows, std::vector<I>(rows, I(0)));
            Uinv = U;
            V.assign(cols, std::vector<I>(cols, I(0)));
            for (int i = 0; i < rows; ++i) U[i][i] = Uinv[i][i] = I(1);
            for (int j = 0; j < cols; ++j) V[j][j] = I(1);
        }
    }

    void row_swap(int i, int j) {
        std::swap(a[i], a[j]);
        if (!want) return;
        std::swap(U[i], U[j]);
        for (int r = 0; r < rows; ++r) std::swap(Uinv[r][i], Uinv[r][j]);
    }
    void col_swap(int i, int j) {
        for (int r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
        if (want)
            for (int r = 0; r < cols; ++r) std::swap(V[r][i], V[r][j]);
    }
    // row_i -= q * row_j
    void row_sub(int i, int j, const I& q) {
        for (int c = 0; c < cols; ++c) a[i][c] = a[i][c] - q * a[j][c];
        if (!want) return;
        for (int c = 0; c < rows; ++c) U[i][c] = U[i][c] - q * U[j][c];
        for (int r = 0; r < rows; ++r) Uinv[r][j] = Uinv[r][j] + q * Uinv[r][i];
    }
    // col_i -= q * col_j
    void col_sub(int i, int j, const I& q) {
        for (int r = 0; r < rows; ++r) a[r][i] = a[r][i] - q * a[r][j];
        if (want)
            for (int r = 0; r < cols; ++r) V[r][i] = V[r][i] - q * V[r][j];
    }
    void row_neg(int i) {
        for (int c = 0; c < cols; ++c) a[i][c] = -a[i][c];
        if (!want) return;
        for (int c = 0; c < rows; ++c) U[i][c] = -U[i][c];
        for (int r = 0; r < rows; ++r) Uinv[r][i] = -Uinv[r][i];
    }

    void run() {
        int m = std::min(rows, cols);
        int t = 0;
        while (t < m) {
            int pi = -1, pj = -1;
            for (int i = t; i < rows; ++i)
                for (int j = t; j < cols; ++j)
                    if (!(a[i][j] == I(0)) && (pi < 0 || abs_of(a[i][j]) < abs_of(a[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) break;
            if (pi != t) row_swap(t, pi);
            if (pj != t) col_swap(t, pj);

            bool again = true;
            while (again) {
                again = false;
                for (int i = t + 1; i < rows && !again; ++i) {
                    if (a[i][t] == I(0)) continue;
                    row_sub(i, t, a[i][t] / a[t][t]);
                    if (!(a[i][t] == I(0))) {
                        row_swap(t, i);
                        again = true;
                    }
                }
                if (again) continue;
                for (int j = t + 1; j < cols && !again; ++j) {
                    if (a[t][j] == I(0)) continue;
                    col_sub(j, t, a[t][j] / a[t][t]);
                    if (!(a[t][j] == I(0))) {
                        col_swap(t, j);
                        again = true;
                    }
                }
            }

            bool redo = false;
            for (int i = t + 1; i < rows && !redo; ++i)
                for (int j = t + 1; j < cols; ++j)
                    if (!(a[i][j] % a[t][t] == I(0))) {
                        row_sub(t, i, I(-1));  // row_t += row_i, then re-pivot
                        redo = true;
                        break;
                    }
            if (redo) continue;
            if (a[t][t] < I(0)) row_neg(t);
            ++t;
        }
    }

    IntSnf result() const {
        IntSnf out;
        int m = std::min(rows, cols);
        out.diagonal.resize(m);
        for (int i = 0; i < m; ++i) out.diagonal[i] = narrow(a[i][i]);
        out.have_transforms = want;
        if (want) {
            auto conv = [](const std::vector<std::vector<I>>& src) {
                Mat d(src.size());
                for (std::size_t i = 0; i < src.size(); ++i) {
                    d[i].resize(src[i].size());
                    for (std::size_t j = 0; j < src[i].size(); ++j) d[i][j] = narrow(src[i][j]);
                }
                return d;
            };
            out.U = conv(U);
            out.Uinv = conv(Uinv);
            out.V = conv(V);
        }
        return out;
    }
};

bool prime_ll(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

long long nmod(long long x, long long n) {
    long long r = x % n;
    return r < 0 ? r + n : r;
}

long long pk_pow(long long p, int e) {
    long long r = 1;
    while (e-- > 0) r *= p;
    return r;
}

int valuation(long long x, long long p, int e) {
    if (x == 0) return e;
    int v = 0;
    while (x % p == 0 && v < e) {
        x /= p;
        ++v;
    }
    return v;
}

}  // namespace

void SparseIntMatrix::add(int r, int c, long long v) {
    if (r < 0 || r >= rows || c < 0 || c >= cols) throw FormatError("sparse matrix index out of range");
    entries.emplace_back(r, c, v);
}

Mat SparseIntMatrix::to_dense() const {
    Mat d(rows, Vec(cols, 0));
    for (auto& [r, c, v] : entries) d[r][c] += v;
    return d;
}

SparseIntMatrix SparseIntMatrix::from_dense(const Mat& a) {
    SparseIntMatrix m((int)a.size(), a.empty() ? 0 : (int)a[0].size());
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (a[i][j] != 0) m.entries.emplace_back(i, j, a[i][j]);
    return m;
}

IntSnf snf_dense(const Mat& a, bool want_transforms) {
    try {
        SnfCore<C64> core(a, want_transforms);
        core.run();
        return core.result();
    } catch (const OverflowSignal&) {
        SnfCore<cpp_int> core(a, want_transforms);
        core.run();
        return core.result();
    }
}

IntSnf smith_normal_form(const SparseIntMatrix& m, bool want_transforms) {
    return snf_dense(m.to_dense(), want_transforms);
}

AbelianInvariants cokernel_invariants(const SparseIntMatrix& m) {
    IntSnf s = smith_normal_form(m);
    AbelianInvariants inv;
    int rank = 0;
    for (long long d : s.diagonal) {
        if (d == 0) continue;
        ++rank;
        if (d > 1) inv.factors.push_back(d);
    }
    inv.free_rank = m.rows - rank;
    return inv;
}

std::vector<std::pair<long long, int>> factorize(long long n) {
    if (n < 1) throw BadModulus("modulus must be positive");
    std::vector<std::pair<long long, int>> out;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

long long mod_pow(long long b, long long e, long long m) {
    long long r = 1 % m;
    b = nmod(b, m);
    while (e > 0) {
        if (e & 1) r = (__int128)r * b % m;
        b = (__int128)b * b % m;
        e >>= 1;
    }
    return r;
}

long long mod_inverse(long long a, long long m) {
    long long g = m, x = 0, x1 = 1, a1 = nmod(a, m);
    while (a1 != 0) {
        long long q = g / a1;
        x -= q * x1;
        std::swap(x, x1);
        g -= q * a1;
        std::swap(g, a1);
    }
    if (g != 1) throw BadModulus("element not invertible");
    return nmod(x, m);
}

PkDiag diagonalize_mod_pk(const Mat& a0, long long p, int e) {
    if (!prime_ll(p) || e < 1) throw BadModulus("need a prime power modulus");
    PkDiag out;
    out.p = p;
    out.e = e;
    out.pk = pk_pow(p, e);
    const long long pk = out.pk;
    int rows = (int)a0.size(), cols = rows ? (int)a0[0].size() : 0;
    Mat a(rows, Vec(cols, 0));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a[i][j] = nmod(a0[i][j], pk);
    Mat U(rows, Vec(rows, 0)), V(cols, Vec(cols, 0));
    for (int i = 0; i < rows; ++i) U[i][i] = 1;
    for (int j = 0; j < cols; ++j) V[j][j] = 1;

    int m = std::min(rows, cols);
    out.diagonal.assign(m, 0);
    for (int t = 0; t < m; ++t) {
        int pi = -1, pj = -1, best = e;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                int v = valuation(a[i][j], p, e);
                if (v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        std::swap(a[t], a[pi]);
        std::swap(U[t], U[pi]);
        for (int r = 0; r < rows; ++r) std::swap(a[r][t], a[r][pj]);
        for (int r = 0; r < cols; ++r) std::swap(V[r][t], V[r][pj]);

        long long pv = pk_pow(p, best);
        long long unit = a[t][t] / pv;
        long long ui = mod_inverse(unit, pk);
        for (int j = 0; j < cols; ++j) a[t][j] = (__int128)a[t][j] * ui % pk;
        for (int j = 0; j < rows; ++j) U[t][j] = (__int128)U[t][j] * ui % pk;

        for (int i = t + 1; i < rows; ++i) {
            if (a[i][t] == 0) continue;
            long long q = a[i][t] / pv;
            for (int j = 0; j < cols; ++j) a[i][j] = nmod(a[i][j] - (__int128)q * a[t][j] % pk, pk);
            for (int j = 0; j < rows; ++j) U[i][j] = nmod(U[i][j] - (__int128)q * U[t][j] % pk, pk);
        }
        for (int j = t + 1; j < cols; ++j) {
            if (a[t][j] == 0) continue;
            long long q = a[t][j] / pv;
            for (int r = 0; r < rows; ++r) a[r][j] = nmod(a[r][j] - (__int128)q * a[r][t] % pk, pk);
            for (int r = 0; r < cols; ++r) V[r][j] = nmod(V[r][j] - (__int128)q * V[r][t] % pk, pk);
        }
        out.diagonal[t] = pv;
    }
    out.U = std::move(U);
    out.V = std::move(V);
    return out;
}

Mat kernel_mod_pk(const Mat& a, long long p, int e) {
    PkDiag d = diagonalize_mod_pk(a, p, e);
    const long long pk = d.pk;
    int cols = a.empty() ? 0 : (int)a[0].size();
    int m = (int)d.diagonal.size();
    Mat gens;
    for (int t = 0; t < cols; ++t) {
        long long scale;
        if (t < m && d.diagonal[t] != 0) {
            if (d.diagonal[t] == 1) continue;  // unit pivot: no kernel contribution
            scale = pk / d.diagonal[t];
        } else {
            scale = 1;  // free column
        }
        Vec z(cols, 0);
        for (int r = 0; r < cols; ++r) z[r] = (__int128)d.V[r][t] * scale % pk;
        gens.push_back(std::move(z));
    }
    return gens;
}

std::optional<Vec> solve_mod_pk(const Mat& a, const Vec& rhs, long long p, int e) {
    PkDiag d = diagonalize_mod_pk(a, p, e);
    const long long pk = d.pk;
    int rows = (int)a.size(), cols = rows ? (int)a[0].size() : 0;
    int m = (int)d.diagonal.size();
    Vec w(rows, 0);
    for (int i = 0; i < rows; ++i) {
        __int128 s = 0;
        for (int j = 0; j < rows; ++j) s += (__int128)d.U[i][j] * nmod(rhs[j], pk);
        w[i] = (long long)(s % pk);
    }
    Vec zp(cols, 0);
    for (int i = 0; i < rows; ++i) {
        long long di = i < m ? d.diagonal[i] : 0;
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
        for (int t = 0; t < cols; ++t) s += (__int128)d.V[r][t] * zp[t];
        z[r] = nmod((long long)(s % pk), pk);
    }
    return z;
}

std::optional<Vec> solve_mod_n(const Mat& a, const Vec& rhs, long long n) {
    int cols = a.empty() ? 0 : (int)a[0].size();
    if (n == 1) return Vec(cols, 0);
    auto pf = factorize(n);
    Vec z(cols, 0);
    for (auto [p, e] : pf) {
        auto zp = solve_mod_pk(a, rhs, p, e);
        if (!zp) return std::nullopt;
        long long pe = pk_pow(p, e);
        long long rest = n / pe;
        // y ≡ zp mod p^e, y ≡ z mod rest (z built up over previous components)
        long long r = mod_inverse(rest % pe, pe);
        for (int j = 0; j < cols; ++j) {
            long long diff = nmod((*zp)[j] - z[j], pe);
            z[j] = nmod(z[j] + (__int128)diff * r % n * rest % n, n);
        }
    }
    return z;
}

Mat kernel_mod_n_dense(const Mat& a, long long n) {
    int cols = a.empty() ? 0 : (int)a[0].size();
    if (n == 1) return {};
    Mat gens;
    for (auto [p, e] : factorize(n)) {
        long long pe = pk_pow(p, e);
        long long rest = n / pe;
        long long lift = rest == 1 ? 1 : (__int128)rest * mod_inverse(rest % pe, pe) % n;
        for (Vec& g : kernel_mod_pk(a, p, e)) {
            Vec y(cols, 0);
            for (int j = 0; j < cols; ++j) y[j] = (__int128)g[j] * lift % n;
            bool nonzero = false;
            for (long long x : y) nonzero |= x != 0;
            if (nonzero) gens.push_back(std::move(y));
        }
    }
    return gens;
}

Mat kernel_mod_n(const SparseIntMatrix& m, long long n) {
    if (n < 2) throw BadModulus("modulus must be at least 2");
    return kernel_mod_n_dense(m.to_dense(), n);
}

AbelianInvariants quotient_invariants(const Mat& generators, const Mat& relations, long long n) {
    if (n < 1) throw BadModulus("modulus must be positive");
    int s = (int)generators.size();
    if (s == 0) {
        for (const Vec& r : relations)
            for (long long x : r)
                if (nmod(x, n) != 0) throw RelationOutsideSpan("relation outside generator span");
        return {};
    }
    int dim = (int)generators[0].size();
    Mat g(dim, Vec(s, 0));
    for (int j = 0; j < s; ++j)
        for (int i = 0; i < dim; ++i) g[i][j] = generators[j][i];

    Mat lcols;  // columns of the relation lattice in Z^s
    for (const Vec& r : relations) {
        auto c = solve_mod_n(g, r, n);
        if (!c) throw RelationOutsideSpan("relation outside generator span");
        lcols.push_back(*c);
    }
    if (n > 1)
        for (Vec& k : kernel_mod_n_dense(g, n)) lcols.push_back(std::move(k));
    for (int i = 0; i < s; ++i) {
        Vec e(s, 0);
        e[i] = n;
        lcols.push_back(std::move(e));
    }
    Mat l(s, Vec(lcols.size(), 0));
    for (std::size_t j = 0; j < lcols.size(); ++j)
        for (int i = 0; i < s; ++i) l[i][j] = lcols[j][i];

    IntSnf snf = snf_dense(l);
    AbelianInvariants inv;
    for (long long d : snf.diagonal)
        if (d > 1) inv.factors.push_back(d);
    return inv;
}

RowEchelonModPk::RowEchelonModPk(int cols, long long p, int e) : cols_(cols), p_(p), e_(e) {
    if (!prime_ll(p) || e < 1) throw BadModulus("need a prime power modulus");
    pk_ = pk_pow(p, e);
    pivot_.assign(cols, -1);
}

void RowEchelonModPk::add_row(Vec row) {
    if ((int)row.size() != cols_) throw FormatError("row length mismatch");
    for (long long& x : row) x = nmod(x, pk_);
    int c = 0;
    while (c < cols_) {
        if (row[c] == 0) {
            ++c;
            continue;
        }
        int v = valuation(row[c], p_, e_);
        auto normalize = [&](Vec& r, int vv) {
            long long ui = mod_inverse(r[c] / pk_pow(p_, vv), pk_);
            for (long long& x : r) x = (__int128)x * ui % pk_;
        };
        if (pivot_[c] < 0) {
            normalize(row, v);
            pivot_[c] = (int)rows_.size();
            rows_.push_back(std::move(row));
            return;
        }
        Vec& pr = rows_[pivot_[c]];
        int pv = valuation(pr[c], p_, e_);
        if (pv > v) {
            normalize(row, v);
            std::swap(row, pr);  // smaller valuation becomes the pivot row
            std::swap(pv, v);
        }
        long long q = row[c] / pk_pow(p_, pv);
        for (int j = c; j < cols_; ++j) row[j] = nmod(row[j] - (__int128)q * pr[j] % pk_, pk_);
    }
}

}  // namespace gk
