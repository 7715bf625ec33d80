#include "kcompat/kcompat.hpp"

#include <stdexcept>

#include "kcompat/symmetry.hpp"

namespace kc {

namespace {

int pow_int(int base, int exp) {
    int r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

}  // namespace

FeasibilityReport is_k_compatible(const ObservableSet& set, int k,
                                  const KCompatConfig& config) {
    if (k < 1) throw std::invalid_argument("is_k_compatible: k must be >= 1");
    const int n = set.size();
    const int d = set.space_dim();
    if (k >= n) {
        // n-compatibility holds constructively via the product joint.
        FeasibilityReport report;
        report.verdict = Verdict::Feasible;
        Observable witness = product_joint(set);
        if (k > n) {
            // pad with identity factors up to k copies
            const int pad = pow_int(d, k - n);
            Observable identity_factor(pad, {"*"}, {HermitianOperator::identity(pad)});
            witness = combine_disjoint_joints(witness, identity_factor);
        }
        report.witness = std::move(witness);
        return report;
    }
    if (pow_int(d, k) > config.dim_cap)
        throw std::invalid_argument("is_k_compatible: d^k exceeds dimension cap");

    FeasibilityProblem problem;
    problem.space_dim = pow_int(d, k);
    for (int i = 0; i < n; ++i)
        problem.targets.push_back(symmetrize_observable(set.member(i), k));
    return solve_symmetric(problem, d, k, config.solver);
}

IndexResult index_of_incompatibility(const ObservableSet& set,
                                     const KCompatConfig& config) {
    IndexResult result{0, {}};
    for (int k = 1; k <= set.size(); ++k) {
        FeasibilityReport report = is_k_compatible(set, k, config);
        const Verdict verdict = report.verdict;
        result.per_k.push_back(std::move(report));
        if (verdict == Verdict::Feasible) {
            result.index = k;
            return result;
        }
        if (verdict == Verdict::Undecided)
            throw std::runtime_error("index_of_incompatibility: Undecided verdict at k = " +
                                     std::to_string(k));
    }
    throw std::logic_error("index_of_incompatibility: no feasible k up to n");
}

StackBuildResult build_stack(const ObservableSet& set, const KCompatConfig& config,
                             const Decider& decider) {
    const int n = set.size();
    const Decider decide = decider ? decider : Decider([&](const std::vector<int>& subset, int k) {
        return is_k_compatible(set.subset(subset), k, config).verdict;
    });

    StackBuildResult out;
    out.stack.vertices = set.names();
    out.stack.levels.assign(static_cast<std::size_t>(n), 0);

    const stacks::SubsetMask full = static_cast<stacks::SubsetMask>((1u << n) - 1u);
    std::vector<int> index_of(static_cast<std::size_t>(full) + 1, 0);

    // subsets in increasing size, then value
    std::vector<stacks::SubsetMask> order;
    for (stacks::SubsetMask s = 1; s <= full; ++s) order.push_back(s);
    std::sort(order.begin(), order.end(), [](stacks::SubsetMask a, stacks::SubsetMask b) {
        if (stacks::popcount(a) != stacks::popcount(b))
            return stacks::popcount(a) < stacks::popcount(b);
        return a < b;
    });

    for (stacks::SubsetMask s : order) {
        const int size = stacks::popcount(s);
        std::vector<int> members;
        for (int v = 0; v < n; ++v)
            if ((s >> v) & 1u) members.push_back(v);

        // The index of a superset is at least the index of every subset.
        int lower = 1;
        for (int v : members) {
            const stacks::SubsetMask sub = s & ~(1u << v);
            if (sub != 0) lower = std::max(lower, index_of[sub]);
        }

        int index = size;  // k >= |S| is feasible via the product joint
        for (int k = lower; k < size; ++k) {
            const Verdict verdict = decide(members, k);
            if (verdict == Verdict::Undecided)
                throw std::runtime_error("build_stack: Undecided verdict at a deciding level");
            out.provenance[{s, k}] = "solved";
            if (verdict == Verdict::Feasible) {
                index = k;
                break;
            }
        }
        index_of[s] = index;
        for (int k = index; k <= n; ++k) {
            out.stack.levels[static_cast<std::size_t>(k - 1)] |= 1u << s;
            if (out.provenance.find({s, k}) == out.provenance.end())
                out.provenance[{s, k}] = "implied";
        }
        for (int k = 1; k < lower; ++k) out.provenance[{s, k}] = "implied";
    }
    return out;
}

}  // namespace kc
