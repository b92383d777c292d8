#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "gk/errors.hpp"

namespace gk {

using Vec = std::vector<long long>;
using Mat = std::vector<Vec>;  // row-major dense

struct SparseIntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::tuple<int, int, long long>> entries;

    SparseIntMatrix() = default;
    SparseIntMatrix(int r, int c) : rows(r), cols(c) {}

    void add(int r, int c, long long v);  // accumulates, drops zeros on to_dense
    Mat to_dense() const;
    static SparseIntMatrix from_dense(const Mat& a);
};

// Invariant factors d1 | d2 | ... (each > 1, ascending) plus free rank.
struct AbelianInvariants {
    Vec factors;
    int free_rank = 0;

    long long order() const {
        long long o = 1;
        for (long long d : factors) o *= d;
        return o;
    }
    bool trivial() const { return factors.empty() && free_rank == 0; }
    friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

// U * m * V = diag; diagonal includes leading 1s, length min(rows, cols).
struct IntSnf {
    Vec diagonal;
    bool have_transforms = false;
    Mat U, Uinv, V;
};

IntSnf smith_normal_form(const SparseIntMatrix& m, bool want_transforms = false);
IntSnf snf_dense(const Mat& a, bool want_transforms = false);
AbelianInvariants cokernel_invariants(const SparseIntMatrix& m);

std::vector<std::pair<long long, int>> factorize(long long n);
long long mod_inverse(long long a, long long m);
long long mod_pow(long long b, long long e, long long m);

// Diagonal form over Z/p^e: row/column ops only, entries reduced mod p^e.
// diagonal entries are p-powers p^v (v < e) in ascending valuation, zeros last.
struct PkDiag {
    long long p = 0;
    int e = 0;
    long long pk = 0;
    Vec diagonal;  // length min(rows, cols)
    Mat U, V;      // U*m*V = diag over Z/p^e
};
PkDiag diagonalize_mod_pk(const Mat& a, long long p, int e);

Mat kernel_mod_pk(const Mat& a, long long p, int e);
std::optional<Vec> solve_mod_pk(const Mat& a, const Vec& rhs, long long p, int e);

Mat kernel_mod_n_dense(const Mat& a, long long n);
std::optional<Vec> solve_mod_n(const Mat& a, const Vec& rhs, long long n);

// Spec surface: generating set for {x : m x = 0 mod n}.
Mat kernel_mod_n(const SparseIntMatrix& m, long long n);

// Invariant factors of span(generators)/span(relations) inside (Z/n)^dim.
// Throws RelationOutsideSpan when a relation is not in the generator span.
AbelianInvariants quotient_invariants(const Mat& generators, const Mat& relations, long long n);

// Incremental row reduction over Z/p^e; keeps a generating set of the row
// module in echelon form (pivot entries are p-powers).
class RowEchelonModPk {
public:
    RowEchelonModPk(int cols, long long p, int e);
    void add_row(Vec row);
    Mat take_rows() { return std::move(rows_); }
    const Mat& rows() const { return rows_; }

private:
    int cols_;
    long long p_, pk_;
    int e_;
    Mat rows_;                 // one pivot row per pivot column
    std::vector<int> pivot_;   // column -> row index or -1
};

}  // namespace gk
