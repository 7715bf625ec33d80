#ifndef KCOMPAT_FEASIBILITY_HPP
#define KCOMPAT_FEASIBILITY_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kcompat/observables.hpp"

namespace kc {

enum class Verdict { Feasible, Infeasible, Undecided };

std::string to_string(Verdict v);

/// Joint-observable feasibility with marginal-equality constraints:
/// find an observable G on the product outcome set with G^[i] = targets[i].
struct FeasibilityProblem {
    int space_dim;
    std::vector<Observable> targets;
};

struct SolverConfig {
    int budget = 20000;
    double tol_marg = 1e-7;     // per-effect HS distance of witness marginals
    double tol_infeas = 1e-4;   // residual floor for the Infeasible verdict
    double tol_psd_accept = 1e-9;
    int stagnation_window = 500;
    double stagnation_rel = 1e-6;
    int outcome_cap = 64;
    int check_every = 25;
};

struct FeasibilityReport {
    Verdict verdict = Verdict::Undecided;
    std::optional<Observable> witness;  // present iff Feasible
    double residual = 0.0;              // final HS distance to the affine set
    int iterations = 0;
};

/// Dykstra alternating projections between the product PSD cone and the
/// affine set of Hermitian effect tuples with the prescribed marginals.
/// Infeasible verdicts are heuristic (residual stagnation above tol_infeas).
FeasibilityReport solve(const FeasibilityProblem& problem,
                        const SolverConfig& config = {});

/// As solve, with every joint effect additionally constrained to the
/// symmetric subspace Sym(k, L(H)) for base dimension d (space_dim = d^k).
FeasibilityReport solve_symmetric(const FeasibilityProblem& problem, int d, int k,
                                  const SolverConfig& config = {});

struct ThresholdResult {
    double threshold;   // midpoint of the final bracket
    double bracket_lo;
    double bracket_hi;
    int solver_calls;
    long total_iterations;
};

/// Bisection on solver verdicts over a monotone family: feasible at lo,
/// infeasible at hi (checked). Undecided verdicts retry once with a
/// doubled budget, then abort.
ThresholdResult threshold_bisect(
    const std::function<FeasibilityReport(double, const SolverConfig&)>& probe,
    double lo, double hi, double tol, const SolverConfig& config = {});

}  // namespace kc

#endif
