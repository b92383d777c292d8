#include "gk/fq.hpp"

#include <algorithm>
#include <stdexcept>

namespace gk {
namespace {

bool prime_ll(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// polynomial arithmetic over F_p, little-endian coefficients
using Poly = std::vector<long long>;

Poly poly_trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, long long p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return poly_trim(c);
}

Poly poly_mod(Poly a, const Poly& m, long long p) {
    a = poly_trim(std::move(a));
    long long lead_inv = 1;
    {  // m is monic in our usage, but stay general
        long long lead = m.back(), t = 1, x = lead % p;
        for (long long e = p - 2; e > 0; e >>= 1, x = x * x % p)
            if (e & 1) t = t * x % p;
        lead_inv = t;
    }
    while (a.size() >= m.size()) {
        long long c = a.back() * lead_inv % p;
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
        a = poly_trim(std::move(a));
    }
    return a;
}

bool poly_irreducible(const Poly& m, long long p) {
    int d = (int)m.size() - 1;
    if (d <= 1) return d == 1;
    // trial division by all monic polynomials of degree <= d/2
    for (int e = 1; e <= d / 2; ++e) {
        long long count = 1;
        for (int i = 0; i < e; ++i) count *= p;
        for (long long code = 0; code < count; ++code) {
            Poly f(e + 1, 0);
            long long c = code;
            for (int i = 0; i < e; ++i) {
                f[i] = c % p;
                c /= p;
            }
            f[e] = 1;
            if (poly_mod(m, f, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace

Fq::Fq(long long p, int k) : p_(p), k_(k) {
    if (!prime_ll(p) || k < 1) throw BadFieldSpec("field order must be a prime power");
    q_ = 1;
    for (int i = 0; i < k; ++i) {
        q_ *= p;
        if (q_ > 100000000) throw BadFieldSpec("field too large");
    }
    if (k == 1) {
        modpoly_ = {0, 1};
        return;
    }
    long long count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
        Poly m(k + 1, 0);
        long long c = code;
        for (int i = 0; i < k; ++i) {
            m[i] = c % p;
            c /= p;
        }
        m[k] = 1;
        if (poly_irreducible(m, p)) {
            modpoly_ = m;
            return;
        }
    }
    throw BadFieldSpec("no irreducible polynomial found");  // unreachable
}

Fq Fq::from_order(long long q) {
    if (q < 2) throw BadFieldSpec("field order must be a prime power");
    for (long long p = 2; p * p <= q; ++p) {
        if (q % p) continue;
        int k = 0;
        long long m = q;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        if (m != 1) throw BadFieldSpec("field order must be a prime power");
        return Fq(p, k);
    }
    return Fq(q, 1);
}

Fq::El Fq::from_int(long long v) const {
    El a(k_, 0);
    a[0] = ((v % p_) + p_) % p_;
    return a;
}

bool Fq::is_zero(const El& a) const {
    return std::all_of(a.begin(), a.end(), [](long long x) { return x == 0; });
}

Fq::El Fq::add(const El& a, const El& b) const {
    El c(k_);
    for (int i = 0; i < k_; ++i) c[i] = (a[i] + b[i]) % p_;
    return c;
}

Fq::El Fq::sub(const El& a, const El& b) const {
    El c(k_);
    for (int i = 0; i < k_; ++i) c[i] = ((a[i] - b[i]) % p_ + p_) % p_;
    return c;
}

Fq::El Fq::neg(const El& a) const { return sub(zero(), a); }

Fq::El Fq::mul(const El& a, const El& b) const {
    Poly r = poly_mod(poly_mul(a, b, p_), modpoly_, p_);
    r.resize(k_, 0);
    return r;
}

Fq::El Fq::pow(El a, long long e) const {
    e %= (q_ - 1);
    if (e < 0) e += q_ - 1;
    El r = one();
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Fq::El Fq::inv(const El& a) const {
    if (is_zero(a)) throw BadFieldSpec("division by zero");
    return pow(a, q_ - 2);
}

long long Fq::el_order(const El& a) const {
    if (is_zero(a)) throw BadFieldSpec("zero has no multiplicative order");
    long long ord = 1;
    El x = a;
    while (!(x == one())) {
        x = mul(x, a);
        ++ord;
    }
    return ord;
}

Fq::El Fq::generator() const {
    for (long long code = 1; code < q_; ++code) {
        El a(k_, 0);
        long long c = code;
        for (int i = 0; i < k_; ++i) {
            a[i] = c % p_;
            c /= p_;
        }
        if (el_order(a) == q_ - 1) return a;
    }
    throw BadFieldSpec("no multiplicative generator");  // unreachable
}

Fq::El Fq::root_of_unity(long long n) const {
    if (n < 1 || (q_ - 1) % n != 0) {
        if (n == 5) throw NoFifthRoot("field has no primitive 5th root of unity");
        throw BadModulus("field has no root of unity of the requested order");
    }
    if (n == 1) return one();
    // prefer the smallest prime-field representative when one exists
    if (k_ == 1) {
        for (long long v = 2; v < q_; ++v) {
            El a = from_int(v);
            if (el_order(a) == n) return a;
        }
    }
    El z = pow(generator(), (q_ - 1) / n);
    if (el_order(z) != n) throw InternalInconsistency("root of unity has wrong order");
    return z;
}

Fq::El Fq::sqrt(const El& a) const {
    if (is_zero(a)) return a;
    for (long long code = 1; code < q_; ++code) {
        El x(k_, 0);
        long long c = code;
        for (int i = 0; i < k_; ++i) {
            x[i] = c % p_;
            c /= p_;
        }
        if (mul(x, x) == a) return x;
    }
    throw NoSuchScalar("element is not a square in the field");
}

std::string Fq::show(const El& a) const {
    if (k_ == 1) return std::to_string(a[0]);
    std::string s = "[";
    for (int i = 0; i < k_; ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + "]";
}

FqMat FqMat::identity(const Fq& f, int n) {
    FqMat m;
    m.n = n;
    m.a.assign((std::size_t)n * n, f.zero());
    for (int i = 0; i < n; ++i) m.a[(std::size_t)i * n + i] = f.one();
    return m;
}

FqMat FqMat::from_ints(const Fq& f, const std::vector<std::vector<long long>>& rows) {
    FqMat m;
    m.n = (int)rows.size();
    for (auto& r : rows) {
        if ((int)r.size() != m.n) throw FormatError("matrix must be square");
        for (long long v : r) m.a.push_back(f.from_int(v));
    }
    return m;
}

FqMat fq_mat_mul(const Fq& f, const FqMat& x, const FqMat& y) {
    FqMat z;
    z.n = x.n;
    z.a.assign((std::size_t)x.n * x.n, f.zero());
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            const Fq::El& xik = x.a[(std::size_t)i * x.n + k];
            if (f.is_zero(xik)) continue;
            for (int j = 0; j < x.n; ++j)
                z.a[(std::size_t)i * x.n + j] =
                    f.add(z.a[(std::size_t)i * x.n + j], f.mul(xik, y.a[(std::size_t)k * x.n + j]));
        }
    return z;
}

FqMat fq_mat_scale(const Fq& f, const Fq::El& c, const FqMat& x) {
    FqMat z = x;
    for (auto& e : z.a) e = f.mul(c, e);
    return z;
}

FqMat fq_mat_neg(const Fq& f, const FqMat& x) {
    FqMat z = x;
    for (auto& e : z.a) e = f.neg(e);
    return z;
}

Fq::El fq_mat_det(const Fq& f, const FqMat& x) {
    int n = x.n;
    std::vector<Fq::El> a = x.a;
    Fq::El det = f.one();
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (!f.is_zero(a[(std::size_t)r * n + c])) {
                piv = r;
                break;
            }
        if (piv < 0) return f.zero();
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(a[(std::size_t)piv * n + j], a[(std::size_t)c * n + j]);
            det = f.neg(det);
        }
        det = f.mul(det, a[(std::size_t)c * n + c]);
        Fq::El pi = f.inv(a[(std::size_t)c * n + c]);
        for (int r = c + 1; r < n; ++r) {
            Fq::El factor = f.mul(a[(std::size_t)r * n + c], pi);
            for (int j = c; j < n; ++j)
                a[(std::size_t)r * n + j] =
                    f.sub(a[(std::size_t)r * n + j], f.mul(factor, a[(std::size_t)c * n + j]));
        }
    }
    return det;
}

FqMat fq_mat_inv(const Fq& f, const FqMat& x) {
    int n = x.n;
    std::vector<Fq::El> a = x.a;
    FqMat inv = FqMat::identity(f, n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (!f.is_zero(a[(std::size_t)r * n + c])) {
                piv = r;
                break;
            }
        if (piv < 0) throw BadFieldSpec("matrix is singular");
        if (piv != c)
            for (int j = 0; j < n; ++j) {
                std::swap(a[(std::size_t)piv * n + j], a[(std::size_t)c * n + j]);
                std::swap(inv.a[(std::size_t)piv * n + j], inv.a[(std::size_t)c * n + j]);
            }
        Fq::El pi = f.inv(a[(std::size_t)c * n + c]);
        for (int j = 0; j < n; ++j) {
            a[(std::size_t)c * n + j] = f.mul(pi, a[(std::size_t)c * n + j]);
            inv.a[(std::size_t)c * n + j] = f.mul(pi, inv.a[(std::size_t)c * n + j]);
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || f.is_zero(a[(std::size_t)r * n + c])) continue;
            Fq::El factor = a[(std::size_t)r * n + c];
            for (int j = 0; j < n; ++j) {
                a[(std::size_t)r * n + j] =
                    f.sub(a[(std::size_t)r * n + j], f.mul(factor, a[(std::size_t)c * n + j]));
                inv.a[(std::size_t)r * n + j] =
                    f.sub(inv.a[(std::size_t)r * n + j], f.mul(factor, inv.a[(std::size_t)c * n + j]));
            }
        }
    }
    return inv;
}

bool fq_mat_eq(const FqMat& x, const FqMat& y) { return x.n == y.n && x.a == y.a; }

std::vector<long long> fq_mat_key(const FqMat& x) {
    std::vector<long long> key;
    for (const auto& e : x.a) key.insert(key.end(), e.begin(), e.end());
    return key;
}

}  // namespace gk
