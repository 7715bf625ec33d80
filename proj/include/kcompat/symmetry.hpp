#ifndef KCOMPAT_SYMMETRY_HPP
#define KCOMPAT_SYMMETRY_HPP

#include <vector>

#include "kcompat/observables.hpp"
#include "kcompat/operator_core.hpp"

namespace kc {

/// Unitary permutation matrix on H^{(x)k} for base dimension d, acting on
/// decomposable vectors as psi_1 (x) ... (x) psi_k |-> psi_{p^-1(1)} (x) ...
/// perm is 0-based: position t of the image holds factor perm_inverse(t).
Matrix permutation_unitary(int d, const std::vector<int>& perm);

/// Symmetrizer channel: (1/k!) sum over S_k of sigma(p) A sigma(p)^*.
/// Idempotent, unital, positive, HS-self-adjoint.
HermitianOperator symmetrizer(int d, int k, const HermitianOperator& a);

/// Symmetric product A (.) B = Sigma_{k1+k2}(A (x) B) for A on k1 copies
/// and B on k2 copies of a d-dimensional space.
HermitianOperator sym_product(int d, const HermitianOperator& a,
                              const HermitianOperator& b);

/// Symmetrized product of a whole list of single-copy operators.
HermitianOperator sym_product_list(int d, const std::vector<HermitianOperator>& ops);

/// (1/k!) sum over p of tr[A_1 B_p(1)] ... tr[A_k B_p(k)]; equals the HS
/// inner product of the corresponding symmetric products.
double hs_sym_formula(const std::vector<HermitianOperator>& as,
                      const std::vector<HermitianOperator>& bs);

/// Lift an observable to k copies: each effect becomes I^{(x)(k-1)} (.) A(x).
/// k = 1 returns the input unchanged.
Observable symmetrize_observable(const Observable& obs, int k);

/// Orthonormal basis of Sym(k, L(H)) for base dimension d, built from the
/// multinomial-weighted symmetric products of the identity and the
/// traceless basis. Ordered lexicographically in (j, j_1, ..., j_D).
std::vector<HermitianOperator> sym_basis(int d, int k);

/// The explicit symmetric 2-copy joint observable of two 2-outcome
/// observables: G(+,+) = (A1 (x) A2 + A2 (x) A1) / 2 and so on.
Observable symmetric_two_copy_joint(const Observable& a1, const Observable& a2);

}  // namespace kc

#endif
