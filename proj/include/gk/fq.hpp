#pragma once

#include <string>
#include <vector>

#include "gk/errors.hpp"

namespace gk {

// Finite field F_{p^k}; elements are coefficient vectors (little-endian) of
// polynomial residues mod a monic irreducible of degree k.
class Fq {
public:
    using El = std::vector<long long>;

    Fq(long long p, int k);
    static Fq from_order(long long q);  // factors q = p^k

    long long p() const { return p_; }
    int deg() const { return k_; }
    long long q() const { return q_; }

    El zero() const { return El(k_, 0); }
    El one() const { return from_int(1); }
    El from_int(long long v) const;
    bool is_zero(const El& a) const;

    El add(const El& a, const El& b) const;
    El sub(const El& a, const El& b) const;
    El neg(const El& a) const;
    El mul(const El& a, const El& b) const;
    El inv(const El& a) const;
    El pow(El a, long long e) const;

    long long el_order(const El& a) const;  // multiplicative order
    El generator() const;                   // smallest-indexed primitive element
    // element of exact multiplicative order n; throws NoFifthRoot for n = 5,
    // BadModulus otherwise, when n does not divide q - 1
    El root_of_unity(long long n) const;
    El sqrt(const El& a) const;  // throws NoSuchScalar when a is a non-square

    std::string show(const El& a) const;

private:
    long long p_;
    int k_;
    long long q_;
    std::vector<long long> modpoly_;  // monic, degree k, length k+1
};

struct FqMat {
    int n = 0;
    std::vector<Fq::El> a;  // row-major, n*n entries

    static FqMat identity(const Fq& f, int n);
    static FqMat from_ints(const Fq& f, const std::vector<std::vector<long long>>& rows);
};

FqMat fq_mat_mul(const Fq& f, const FqMat& x, const FqMat& y);
FqMat fq_mat_scale(const Fq& f, const Fq::El& c, const FqMat& x);
FqMat fq_mat_inv(const Fq& f, const FqMat& x);
FqMat fq_mat_neg(const Fq& f, const FqMat& x);
Fq::El fq_mat_det(const Fq& f, const FqMat& x);
bool fq_mat_eq(const FqMat& x, const FqMat& y);
std::vector<long long> fq_mat_key(const FqMat& x);

}  // namespace gk
