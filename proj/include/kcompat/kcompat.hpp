#ifndef KCOMPAT_KCOMPAT_HPP
#define KCOMPAT_KCOMPAT_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kcompat/feasibility.hpp"
#include "kcompat/observables.hpp"
#include "kcompat/stacks.hpp"

namespace kc {

struct KCompatConfig {
    int dim_cap = 16;  // largest allowed d^k
    SolverConfig solver;
};

/// Decides k-compatibility of a set by reducing to ordinary compatibility
/// of the symmetrized observables on H^{(x)k}. k >= n short-circuits to
/// the explicit product joint observable.
FeasibilityReport is_k_compatible(const ObservableSet& set, int k,
                                  const KCompatConfig& config = {});

struct IndexResult {
    int index;
    std::vector<FeasibilityReport> per_k;  // verdicts for k = 1..index
};

/// Ascending search k = 1, 2, ...; terminates at k = n. Throws on an
/// Undecided verdict at the deciding level.
IndexResult index_of_incompatibility(const ObservableSet& set,
                                     const KCompatConfig& config = {});

/// Verdict provider for build_stack; called only for 1 <= k < |subset|.
/// The default provider runs is_k_compatible on the subset.
using Decider = std::function<Verdict(const std::vector<int>& subset, int k)>;

struct StackBuildResult {
    stacks::CompatibilityStack stack;
    // (subset mask, level) -> "solved" | "implied"
    std::map<std::pair<stacks::SubsetMask, int>, std::string> provenance;
};

/// Builds the full compatibility stack of the set, evaluating subsets in
/// increasing size and increasing k, with monotonicity-based pruning.
StackBuildResult build_stack(const ObservableSet& set, const KCompatConfig& config = {},
                             const Decider& decider = {});

}  // namespace kc

#endif
