#ifndef KCOMPAT_OBSERVABLES_HPP
#define KCOMPAT_OBSERVABLES_HPP

#include <optional>
#include <string>
#include <vector>

#include "kcompat/operator_core.hpp"

namespace kc {

// Validation tolerances, looser than construction tolerances because
// solver outputs carry iteration noise.
inline constexpr double tol_psd = 1e-9;
inline constexpr double tol_norm = 1e-9;

/// Outcome of a product observable: one label per factor, serialized
/// as "x1|x2|...|xn".
struct ProductOutcome {
    std::vector<std::string> components;

    std::string label() const;
    static ProductOutcome parse(const std::string& label);
};

/// A POVM on a finite outcome set: one positive effect per outcome,
/// effects summing to the identity. Joint observables additionally
/// carry the factor outcome sets and use ProductOutcome labels.
class Observable {
public:
    Observable(int space_dim, std::vector<std::string> outcomes,
               std::vector<HermitianOperator> effects,
               std::vector<std::vector<std::string>> factors = {});

    int space_dim() const { return space_dim_; }
    int outcome_count() const { return static_cast<int>(outcomes_.size()); }
    const std::vector<std::string>& outcomes() const { return outcomes_; }
    const std::vector<HermitianOperator>& effects() const { return effects_; }
    const HermitianOperator& effect(int i) const { return effects_[i]; }
    const HermitianOperator& effect(const std::string& outcome) const;
    int outcome_index(const std::string& outcome) const;

    bool is_joint() const { return !factors_.empty(); }
    const std::vector<std::vector<std::string>>& factors() const { return factors_; }

private:
    int space_dim_;
    std::vector<std::string> outcomes_;
    std::vector<HermitianOperator> effects_;
    std::vector<std::vector<std::string>> factors_;
};

struct Violation {
    std::string what;      // "positivity" or "normalization"
    std::string outcome;   // offending outcome, empty for normalization
    double magnitude;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// An ordered collection of observables on a common Hilbert space.
class ObservableSet {
public:
    explicit ObservableSet(std::vector<Observable> members,
                           std::vector<std::string> names = {});

    int size() const { return static_cast<int>(members_.size()); }
    int space_dim() const { return members_.front().space_dim(); }
    const Observable& member(int i) const { return members_[i]; }
    const std::vector<Observable>& members() const { return members_; }
    const std::vector<std::string>& names() const { return names_; }

    ObservableSet subset(const std::vector<int>& indices) const;

private:
    std::vector<Observable> members_;
    std::vector<std::string> names_;
};

ValidationReport validate(const Observable& obs);

/// A(X) = sum over x in X of A(x).
HermitianOperator effect_of_subset(const Observable& obs,
                                   const std::vector<std::string>& subset);

/// i-th marginal of a joint observable (0-based factor index).
Observable marginal(const Observable& joint, int i);

/// G(x1,...,xn) = A1(x1) (x) ... (x) An(xn) on H^{(x)n}.
Observable product_joint(const ObservableSet& set);

/// Effect-wise convex combination of observables on a common outcome set.
Observable mix(const std::vector<Observable>& observables,
               const std::vector<double>& weights);

/// Tensor two joint observables on disjoint factor groups into a joint
/// observable on the combined copy space.
Observable combine_disjoint_joints(const Observable& g1, const Observable& g3);

}  // namespace kc

#endif
