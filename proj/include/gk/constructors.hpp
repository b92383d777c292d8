#pragma once

#include <string>
#include <vector>

#include "gk/fq.hpp"
#include "gk/group.hpp"

namespace gk {

// Parameters for the solvable presentation families; which fields are used
// depends on the family tag.
struct PresentationParams {
    std::string family;  // "II" | "III" | "IV"
    long long m = 1;
    long long n = 1;
    long long r = 1;
    long long l = 1;  // exponent of the sigma-action of the extra involution (family II)
    long long k = 1;  // exponent of the tau-action (families II and IV)
    long long t = 1;  // exponent of the sigma-action (family IV)
};

// <s, t | s^m = t^n = 1, t s t^-1 = s^r>, split metacyclic of order m*n.
Group metacyclic(long long m, long long n, long long r, int cap = Group::kDefaultCap);

Group gz_type(const PresentationParams& params, int cap = Group::kDefaultCap);

// Generalized quaternion group of the given 2-power order (>= 8).
Group quaternion_generalized(long long order);

// SL2(F_p) acting on the p^2 - 1 nonzero column vectors.
Group sl2(long long p, int cap = Group::kDefaultCap);

// Central extension adjoining t with t^2 = z and t g t^-1 = aut(g).
// Requires aut(z) = z and aut^2 = conjugation by z.
struct Extension2 {
    Group group;
    std::vector<int> embed;  // base element index -> index in group
    int t = 0;
};
Extension2 extend_by_order2(const Group& g0, const std::vector<int>& aut, int z,
                            int cap = Group::kDefaultCap);

// Automorphism of g determined by generator images; throws NotAnAutomorphism.
std::vector<int> automorphism_from_gen_images(const Group& g, const std::vector<int>& images);

// Matrix group materialized by closure, with its right-regular permutation
// model; group element i corresponds to element_matrices[i].
struct MatrixGroupModel {
    Fq field{2, 1};
    std::vector<FqMat> gen_matrices;
    std::vector<FqMat> element_matrices;
    Group group;

    int index_of_matrix(const FqMat& m) const;
};
MatrixGroupModel matrix_group(const Fq& field, const std::vector<FqMat>& gens,
                              int cap = Group::kDefaultCap);

// Binary icosahedral group <a, b, c> over F_q (5 | q-1, q odd), built from a
// primitive 5th root of unity; generator order is (a, b, c).
MatrixGroupModel binary_icosahedral(long long q = 11);

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};
struct VerificationReport {
    std::vector<CheckLine> checks;
    std::vector<std::string> notes;
    bool all_pass() const;
    void add(const std::string& name, bool pass, const std::string& detail = "");
};

// Machine-checks the explicit binary icosahedral data: the defining relations
// of <a, b, c>, the isomorphism from SL2(F5) sending A, B, C to a, b, c, the
// degree-5 projection with kernel {1, eps}, and the order-2 twisting
// automorphism given by conjugation with [[0,-1],[2,0]].
VerificationReport verify_binary_icosahedral(long long q = 11);

// <lambda, L> with L = SL2(F5) and lambda = c*[[0,-1],[w,0]] where w generates
// F5* and c^2 = 1/w; a double cover of S5 of order 240.
struct GPlusModel {
    MatrixGroupModel model;
    int lambda = 0;
    std::vector<int> l_elements;  // sorted group indices of the embedded L
};
GPlusModel g_plus(long long q = 25);

enum class DoubleCoverTag { hat, tilde };

// Classifies a double cover of a symmetric group by transposition lift order.
// proj[i] is the image of group element i in S_n; kernel must be {1, z}.
DoubleCoverTag double_cover_type(const Group& g, int z, const std::vector<Perm>& proj);

// 2- and 4-dimensional matrix models of the order-8*3^l and order-16*3^l
// groups built from quaternion-by-cyclic presentations, realized over F_q.
struct RepModel {
    Fq field{2, 1};
    std::vector<FqMat> matrices;  // images of the presentation generators
    Group group;
    bool faithful = false;
    VerificationReport report;
};
RepModel rep_phi(int l, long long q = 73);
RepModel rep_psi(int l, long long q = 73);

}  // namespace gk
