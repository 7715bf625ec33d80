#include "kcompat/stacks.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace kc::stacks {

int popcount(SubsetMask s) { return __builtin_popcount(s); }

namespace {

// Iterate non-empty subsets present in a family.
template <typename F>
void for_each_edge(EdgeFamily family, int n, F&& f) {
    const SubsetMask full = static_cast<SubsetMask>((1u << n) - 1u);
    for (SubsetMask s = 1; s <= full; ++s)
        if ((family >> s) & 1u) f(s);
}

}  // namespace

StackValidation validate_stack(const CompatibilityStack& stack) {
    StackValidation report;
    const int n = stack.order();
    if (static_cast<int>(stack.levels.size()) != n)
        throw std::invalid_argument("validate_stack: need exactly n levels");
    const SubsetMask full = stack.full_mask();

    // (S1): each level downward closed
    for (int k = 1; k <= n; ++k) {
        const EdgeFamily fam = stack.levels[static_cast<std::size_t>(k - 1)];
        for_each_edge(fam, n, [&](SubsetMask s) {
            for (int v = 0; v < n; ++v) {
                const SubsetMask sub = s & ~(1u << v);
                if (sub != 0 && sub != s && !((fam >> sub) & 1u))
                    report.violations.push_back({"S1", s, sub, k});
            }
        });
    }
    // (S2): singletons at level 1, everything at level n
    for (int v = 0; v < n; ++v)
        if (!stack.member(1, 1u << v))
            report.violations.push_back({"S2", static_cast<SubsetMask>(1u << v), 0, 1});
    for (SubsetMask s = 1; s <= full; ++s)
        if (!stack.member(n, s)) report.violations.push_back({"S2", s, 0, n});
    // (S3): unions across levels (k + l capped at n, where E_n is complete)
    for (int k = 1; k <= n; ++k) {
        for (int l = k; l <= n; ++l) {
            const int kl = std::min(k + l, n);
            for_each_edge(stack.levels[static_cast<std::size_t>(k - 1)], n, [&](SubsetMask a) {
                for_each_edge(stack.levels[static_cast<std::size_t>(l - 1)], n, [&](SubsetMask b) {
                    if (!stack.member(kl, a | b))
                        report.violations.push_back({"S3", a, b, kl});
                });
            });
        }
    }
    return report;
}

EdgeIndex edge_index(const CompatibilityStack& stack, SubsetMask subset) {
    if (subset == 0 || subset > stack.full_mask())
        throw std::invalid_argument("edge_index: subset out of range");
    for (int k = 1; k <= stack.order(); ++k)
        if (stack.member(k, subset)) return {subset, k};
    throw std::invalid_argument("edge_index: subset missing from every level (invalid stack)");
}

bool check_monotone_levels(const CompatibilityStack& stack) {
    for (std::size_t k = 1; k < stack.levels.size(); ++k)
        if ((stack.levels[k - 1] & ~stack.levels[k]) != 0) return false;
    return true;
}

namespace {

EdgeFamily permute_family(EdgeFamily family, const std::vector<int>& perm, int n) {
    EdgeFamily out = 0;
    for_each_edge(family, n, [&](SubsetMask s) {
        SubsetMask t = 0;
        for (int v = 0; v < n; ++v)
            if ((s >> v) & 1u) t |= 1u << perm[static_cast<std::size_t>(v)];
        out |= 1u << t;
    });
    return out;
}

}  // namespace

CanonicalStack canonicalize(const CompatibilityStack& stack) {
    const int n = stack.order();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<EdgeFamily> best = stack.levels;
    std::vector<int> best_perm = perm;
    do {
        std::vector<EdgeFamily> cand;
        cand.reserve(stack.levels.size());
        for (EdgeFamily f : stack.levels) cand.push_back(permute_family(f, perm, n));
        if (cand < best) {
            best = cand;
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    CanonicalStack out;
    out.stack = CompatibilityStack{stack.vertices, best};
    out.relabeling = best_perm;
    return out;
}

namespace {

// All downward-closed edge families on n vertices that contain every
// subset of size <= min_size and are contained in `within`.
void collect_families(int n, EdgeFamily within, int min_size,
                      std::vector<EdgeFamily>& out) {
    const SubsetMask full = static_cast<SubsetMask>((1u << n) - 1u);
    // subsets ordered by size so downward closure can be checked incrementally
    std::vector<SubsetMask> order;
    for (SubsetMask s = 1; s <= full; ++s) order.push_back(s);
    std::sort(order.begin(), order.end(), [](SubsetMask a, SubsetMask b) {
        if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
        return a < b;
    });

    std::vector<EdgeFamily> partial{0};
    for (SubsetMask s : order) {
        std::vector<EdgeFamily> next;
        const bool forced = popcount(s) <= min_size;
        const bool allowed = (within >> s) & 1u;
        if (forced && !allowed) return;  // inconsistent request
        for (EdgeFamily f : partial) {
            bool closed = true;
            for (int v = 0; v < n && closed; ++v) {
                const SubsetMask sub = s & ~(1u << v);
                if (sub != 0 && sub != s && !((f >> sub) & 1u)) closed = false;
            }
            if (allowed && closed) next.push_back(f | (1u << s));
            if (!forced) next.push_back(f);
        }
        partial = std::move(next);
    }
    out = std::move(partial);
}

// Incremental (S3) check for the already chosen prefix of levels.
bool s3_consistent(const std::vector<EdgeFamily>& levels, int n) {
    const int chosen = static_cast<int>(levels.size());
    for (int k = 1; k <= chosen; ++k) {
        for (int l = k; l <= chosen; ++l) {
            if (k + l > n) continue;
            if (k + l > chosen) continue;  // target level not chosen yet
            const EdgeFamily target = levels[static_cast<std::size_t>(k + l - 1)];
            bool ok = true;
            for_each_edge(levels[static_cast<std::size_t>(k - 1)], n, [&](SubsetMask a) {
                for_each_edge(levels[static_cast<std::size_t>(l - 1)], n, [&](SubsetMask b) {
                    if (!((target >> (a | b)) & 1u)) ok = false;
                });
            });
            if (!ok) return false;
        }
    }
    return true;
}

void extend_levels(int n, const std::vector<std::vector<EdgeFamily>>& by_min_size,
                   std::vector<EdgeFamily>& levels,
                   std::vector<std::vector<EdgeFamily>>& out) {
    const int k = static_cast<int>(levels.size()) + 1;
    if (k == n) {
        levels.push_back(static_cast<EdgeFamily>((1ull << (1u << n)) - 2u));  // all non-empty
        if (s3_consistent(levels, n)) out.push_back(levels);
        levels.pop_back();
        return;
    }
    for (EdgeFamily f : by_min_size[static_cast<std::size_t>(k)]) {
        // Prop 6(1): levels grow monotonically
        if (!levels.empty() && (levels.back() & ~f) != 0) continue;
        levels.push_back(f);
        if (s3_consistent(levels, n)) extend_levels(n, by_min_size, levels, out);
        levels.pop_back();
    }
}

}  // namespace

std::vector<CompatibilityStack> enumerate_stacks(int n) {
    if (n < 1 || n > 5) throw std::invalid_argument("enumerate_stacks: need 1 <= n <= 5");
    std::vector<std::string> vertices;
    for (int v = 0; v < n; ++v) vertices.push_back(std::string(1, static_cast<char>('A' + v)));

    const EdgeFamily everything = static_cast<EdgeFamily>((1ull << (1u << n)) - 2u);
    // Families per level k must contain all subsets of size <= k (Prop 6(2)).
    std::vector<std::vector<EdgeFamily>> by_min_size(static_cast<std::size_t>(n));
    for (int k = 1; k < n; ++k)
        collect_families(n, everything, k, by_min_size[static_cast<std::size_t>(k)]);

    std::vector<std::vector<EdgeFamily>> sequences;
    std::vector<EdgeFamily> levels;
    extend_levels(n, by_min_size, levels, sequences);

    std::vector<std::vector<EdgeFamily>> canon;
    for (const auto& seq : sequences) {
        CompatibilityStack s{vertices, seq};
        if (!validate_stack(s).ok()) continue;
        canon.push_back(canonicalize(s).stack.levels);
    }
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());

    std::vector<CompatibilityStack> out;
    out.reserve(canon.size());
    for (auto& seq : canon) out.push_back(CompatibilityStack{vertices, std::move(seq)});
    return out;
}

bool reciprocal_rule_check(const CompatibilityStack& stack) {
    if (stack.order() != 4)
        throw std::invalid_argument("reciprocal_rule_check: requires exactly 4 vertices");
    const SubsetMask full = stack.full_mask();
    for (SubsetMask pair = 1; pair <= full; ++pair) {
        if (popcount(pair) != 2) continue;
        const SubsetMask reciprocal = full & ~pair;
        if (edge_index(stack, pair).index == 1 && edge_index(stack, reciprocal).index == 1 &&
            edge_index(stack, full).index > 2)
            return false;
    }
    return true;
}

StackSummary summarize(const CompatibilityStack& stack) {
    StackSummary s{edge_index(stack, stack.full_mask()).index, 0};
    for (SubsetMask pair = 1; pair <= stack.full_mask(); ++pair)
        if (popcount(pair) == 2 && edge_index(stack, pair).index == 2) ++s.index2_pairs;
    return s;
}

std::map<std::pair<int, int>, int> classification_table(
    const std::vector<CompatibilityStack>& stacks) {
    std::map<std::pair<int, int>, int> table;
    for (const auto& s : stacks) {
        const StackSummary sum = summarize(s);
        ++table[{sum.bulk_index, sum.index2_pairs}];
    }
    return table;
}

}  // namespace kc::stacks
