#include "kcompat/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace kc {

namespace {

int pow_int(int base, int exp) {
    int r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

// Number of copies k with d^k = dim.
int copies_of(int d, int dim) {
    int k = 0, acc = 1;
    while (acc < dim) {
        acc *= d;
        ++k;
    }
    if (acc != dim)
        throw std::invalid_argument("operator dimension is not a power of the base dimension");
    return k;
}

std::vector<std::vector<int>> all_permutations(int k) {
    std::vector<int> p(static_cast<std::size_t>(k));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

}  // namespace

Matrix permutation_unitary(int d, const std::vector<int>& perm) {
    const int k = static_cast<int>(perm.size());
    const int dim = pow_int(d, k);
    std::vector<int> inv(perm.size());
    for (int t = 0; t < k; ++t) inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(t)])] = t;
    Matrix u = Matrix::Zero(dim, dim);
    std::vector<int> digits(static_cast<std::size_t>(k));
    for (int col = 0; col < dim; ++col) {
        int rest = col;
        for (int t = k - 1; t >= 0; --t) {
            digits[static_cast<std::size_t>(t)] = rest % d;
            rest /= d;
        }
        // image basis vector: digit at slot t comes from slot inv[t]
        int row = 0;
        for (int t = 0; t < k; ++t)
            row = row * d + digits[static_cast<std::size_t>(inv[static_cast<std::size_t>(t)])];
        u(row, col) = 1.0;
    }
    return u;
}

HermitianOperator symmetrizer(int d, int k, const HermitianOperator& a) {
    if (a.dim() != pow_int(d, k))
        throw std::invalid_argument("symmetrizer: dimension is not d^k");
    if (k == 1) return a;
    Matrix sum = Matrix::Zero(a.dim(), a.dim());
    const auto perms = all_permutations(k);
    for (const auto& p : perms) {
        const Matrix u = permutation_unitary(d, p);
        sum += u * a.matrix() * u.adjoint();
    }
    return HermitianOperator(sum / factorial(k));
}

HermitianOperator sym_product(int d, const HermitianOperator& a,
                              const HermitianOperator& b) {
    const int k1 = copies_of(d, a.dim());
    const int k2 = copies_of(d, b.dim());
    return symmetrizer(d, k1 + k2, tensor(a, b));
}

HermitianOperator sym_product_list(int d, const std::vector<HermitianOperator>& ops) {
    if (ops.empty()) throw std::invalid_argument("sym_product_list: empty list");
    HermitianOperator prod = ops.front();
    for (std::size_t i = 1; i < ops.size(); ++i) prod = tensor(prod, ops[i]);
    return symmetrizer(d, copies_of(d, prod.dim()), prod);
}

double hs_sym_formula(const std::vector<HermitianOperator>& as,
                      const std::vector<HermitianOperator>& bs) {
    if (as.size() != bs.size())
        throw std::invalid_argument("hs_sym_formula: length mismatch");
    const int k = static_cast<int>(as.size());
    double sum = 0.0;
    for (const auto& p : all_permutations(k)) {
        double term = 1.0;
        for (int i = 0; i < k; ++i)
            term *= hs_inner(as[static_cast<std::size_t>(i)],
                             bs[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])]);
        sum += term;
    }
    return sum / factorial(k);
}

Observable symmetrize_observable(const Observable& obs, int k) {
    if (k < 1) throw std::invalid_argument("symmetrize_observable: k must be >= 1");
    if (k == 1) return obs;
    const int d = obs.space_dim();
    const HermitianOperator id = HermitianOperator::identity(d);
    std::vector<HermitianOperator> effects;
    for (const auto& a : obs.effects()) {
        std::vector<HermitianOperator> ops(static_cast<std::size_t>(k - 1), id);
        ops.push_back(a);
        effects.push_back(sym_product_list(d, ops));
    }
    return Observable(pow_int(d, k), obs.outcomes(), std::move(effects));
}

namespace {

// Multi-indices (j_1,...,j_D) with sum j, in lexicographic order.
void enumerate_multi_indices(int D, int j, std::vector<int>& cur,
                             std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == D - 1) {
        cur.push_back(j);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int v = 0; v <= j; ++v) {
        cur.push_back(v);
        enumerate_multi_indices(D, j - v, cur, out);
        cur.pop_back();
    }
}

double multinomial(const std::vector<int>& js) {
    int total = 0;
    for (int v : js) total += v;
    double r = factorial(total);
    for (int v : js) r /= factorial(v);
    return r;
}

}  // namespace

std::vector<HermitianOperator> sym_basis(int d, int k) {
    if (d < 2 || k < 1) throw std::invalid_argument("sym_basis: need d >= 2, k >= 1");
    const int D = d * d - 1;
    const auto ts = traceless_basis(d);
    const HermitianOperator id = HermitianOperator::identity(d);
    std::vector<HermitianOperator> basis;
    for (int j = 0; j <= k; ++j) {
        std::vector<std::vector<int>> multis;
        std::vector<int> cur;
        enumerate_multi_indices(D, j, cur, multis);
        for (const auto& js : multis) {
            std::vector<HermitianOperator> ops(static_cast<std::size_t>(k - j), id);
            for (int r = 0; r < D; ++r)
                for (int rep = 0; rep < js[static_cast<std::size_t>(r)]; ++rep)
                    ops.push_back(ts[static_cast<std::size_t>(r)]);
            // Full multinomial over all k slots (identity slots included);
            // this is what makes the family orthonormal.
            double denom = factorial(k - j);
            for (int v : js) denom *= factorial(v);
            const double weight = std::sqrt(factorial(k) / denom) *
                                  std::pow(static_cast<double>(d), 0.5 * (j - k));
            basis.push_back(sym_product_list(d, ops).scaled(weight));
        }
    }
    return basis;
}

Observable symmetric_two_copy_joint(const Observable& a1, const Observable& a2) {
    if (a1.outcome_count() != 2 || a2.outcome_count() != 2)
        throw std::invalid_argument("symmetric_two_copy_joint: both observables must have 2 outcomes");
    if (a1.space_dim() != a2.space_dim())
        throw std::invalid_argument("symmetric_two_copy_joint: dimension mismatch");
    std::vector<std::string> outcomes;
    std::vector<HermitianOperator> effects;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            outcomes.push_back(a1.outcomes()[static_cast<std::size_t>(x)] + "|" +
                               a2.outcomes()[static_cast<std::size_t>(y)]);
            effects.push_back(
                (tensor(a1.effect(x), a2.effect(y)) + tensor(a2.effect(y), a1.effect(x)))
                    .scaled(0.5));
        }
    }
    return Observable(a1.space_dim() * a1.space_dim(), std::move(outcomes),
                      std::move(effects), {a1.outcomes(), a2.outcomes()});
}

}  // namespace kc
