#ifndef KCOMPAT_STACKS_HPP
#define KCOMPAT_STACKS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace kc::stacks {

/// Subsets of up to 5 vertices are bitmasks; an edge family is a bitmask
/// over subset masks (bit s set iff subset s is an edge).
using SubsetMask = std::uint32_t;
using EdgeFamily = std::uint32_t;

int popcount(SubsetMask s);

/// A compatibility stack: vertex names plus edge families E_1..E_n.
struct CompatibilityStack {
    std::vector<std::string> vertices;
    std::vector<EdgeFamily> levels;

    int order() const { return static_cast<int>(vertices.size()); }
    SubsetMask full_mask() const {
        return static_cast<SubsetMask>((1u << vertices.size()) - 1u);
    }
    bool member(int k, SubsetMask subset) const {
        return (levels[static_cast<std::size_t>(k - 1)] >> subset) & 1u;
    }
};

struct StackViolation {
    std::string condition;  // "S1", "S2" or "S3"
    SubsetMask subset_a = 0;
    SubsetMask subset_b = 0;
    int level = 0;
};

struct StackValidation {
    std::vector<StackViolation> violations;
    bool ok() const { return violations.empty(); }
};

struct EdgeIndex {
    SubsetMask subset;
    int index;
};

/// Checks (S1) downward closure per level, (S2) singletons in E_1 and
/// E_n complete, (S3) union subadditivity across levels.
StackValidation validate_stack(const CompatibilityStack& stack);

/// Smallest level containing the subset.
EdgeIndex edge_index(const CompatibilityStack& stack, SubsetMask subset);

/// E_1 subseteq ... subseteq E_n; a theorem for valid stacks, kept as a
/// redundant cross-check.
bool check_monotone_levels(const CompatibilityStack& stack);

struct CanonicalStack {
    CompatibilityStack stack;
    std::vector<int> relabeling;  // position i holds the original vertex index
};

/// Lexicographically minimal level encoding over all vertex permutations.
CanonicalStack canonicalize(const CompatibilityStack& stack);

/// Exhaustive enumeration of all canonical compatibility stacks on n
/// vertices (1 <= n <= 5), deterministic order.
std::vector<CompatibilityStack> enumerate_stacks(int n);

/// For n = 4: whenever two reciprocal pairs both have index 1, the full
/// vertex set has index <= 2.
bool reciprocal_rule_check(const CompatibilityStack& stack);

/// Bulk index and count of pair-edges with index exactly 2, the two
/// coordinates of the four-vertex classification table.
struct StackSummary {
    int bulk_index;
    int index2_pairs;
};

StackSummary summarize(const CompatibilityStack& stack);

/// (bulk index, index-2 pair count) -> number of canonical stacks.
std::map<std::pair<int, int>, int> classification_table(
    const std::vector<CompatibilityStack>& stacks);

}  // namespace kc::stacks

#endif
