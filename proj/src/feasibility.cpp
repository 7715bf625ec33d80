#include "kcompat/feasibility.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include "kcompat/symmetry.hpp"

namespace kc {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Feasible: return "Feasible";
        case Verdict::Infeasible: return "Infeasible";
        default: return "Undecided";
    }
}

namespace {

// HS-isometric real parametrization of Hermitian m x m matrices:
// diagonal entries, then sqrt(2) * (Re, Im) of the upper triangle.
int param_count(int m) { return m * m; }

void vec_hermitian(const Matrix& a, Eigen::Ref<Eigen::VectorXd> out) {
    const int m = static_cast<int>(a.rows());
    int c = 0;
    for (int i = 0; i < m; ++i) out(c++) = a(i, i).real();
    const double s = std::sqrt(2.0);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            out(c++) = s * a(i, j).real();
            out(c++) = s * a(i, j).imag();
        }
    }
}

Matrix unvec_hermitian(const Eigen::Ref<const Eigen::VectorXd>& v, int m) {
    Matrix a(m, m);
    int c = 0;
    for (int i = 0; i < m; ++i) a(i, i) = v(c++);
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const double re = v(c++) * s;
            const double im = v(c++) * s;
            a(i, j) = Complex(re, im);
            a(j, i) = Complex(re, -im);
        }
    }
    return a;
}

struct JointLayout {
    int space_dim;
    int n;                                   // number of targets
    std::vector<int> outcome_counts;         // per target
    int joint_count;                         // product of outcome counts
    std::vector<std::vector<std::string>> factors;

    // component of joint outcome y for target i (row-major, last fastest)
    int component(int y, int i) const {
        int rest = y;
        for (int j = n - 1; j > i; --j) rest /= outcome_counts[static_cast<std::size_t>(j)];
        return rest % outcome_counts[static_cast<std::size_t>(i)];
    }

    std::string label(int y) const {
        ProductOutcome po;
        for (int i = 0; i < n; ++i)
            po.components.push_back(
                factors[static_cast<std::size_t>(i)][static_cast<std::size_t>(component(y, i))]);
        return po.label();
    }
};

JointLayout make_layout(const FeasibilityProblem& problem) {
    JointLayout lay;
    lay.space_dim = problem.space_dim;
    lay.n = static_cast<int>(problem.targets.size());
    lay.joint_count = 1;
    for (const auto& t : problem.targets) {
        if (t.space_dim() != problem.space_dim)
            throw std::invalid_argument("feasibility: target dimension mismatch");
        lay.outcome_counts.push_back(t.outcome_count());
        lay.factors.push_back(t.outcomes());
        lay.joint_count *= t.outcome_count();
    }
    return lay;
}

// Orthogonal projection onto an affine set {v : M v = c}, precomputed once.
struct AffineProjector {
    Eigen::VectorXd particular;   // least-squares solution of M v = c
    Eigen::MatrixXd null_proj;    // projector onto null(M)
    double inconsistency;         // ||M particular - c||; > 0 means empty set

    Eigen::VectorXd apply(const Eigen::VectorXd& w) const {
        return particular + null_proj * (w - particular);
    }
};

AffineProjector build_affine_projector(const Eigen::MatrixXd& m_mat,
                                       const Eigen::VectorXd& c) {
    AffineProjector proj;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(m_mat);
    const Eigen::MatrixXd pinv = cod.pseudoInverse();
    proj.particular = pinv * c;
    proj.null_proj = Eigen::MatrixXd::Identity(m_mat.cols(), m_mat.cols()) - pinv * m_mat;
    proj.inconsistency = (m_mat * proj.particular - c).norm();
    return proj;
}

FeasibilityReport run_dykstra(const FeasibilityProblem& problem,
                              const SolverConfig& config, int sym_d, int sym_k) {
    if (problem.targets.empty())
        throw std::invalid_argument("feasibility: at least one target required");
    const JointLayout lay = make_layout(problem);
    if (lay.joint_count > config.outcome_cap)
        throw std::invalid_argument("feasibility: joint outcome count exceeds cap");
    for (const auto& t : problem.targets) {
        if (!validate(t).ok())
            throw std::invalid_argument("feasibility: invalid target observable");
    }

    const int m = lay.space_dim;
    const int pc = param_count(m);
    const int nvars = lay.joint_count * pc;

    // Marginal-equality rows: sum over joint outcomes with fixed i-th
    // component equals the target effect, componentwise.
    int nrows = 0;
    for (int cnt : lay.outcome_counts) nrows += cnt * pc;
    const bool symmetric = sym_k > 1;
    if (symmetric) nrows += lay.joint_count * pc;

    Eigen::MatrixXd m_mat = Eigen::MatrixXd::Zero(nrows, nvars);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(nrows);
    int row0 = 0;
    for (int i = 0; i < lay.n; ++i) {
        for (int x = 0; x < lay.outcome_counts[static_cast<std::size_t>(i)]; ++x) {
            for (int y = 0; y < lay.joint_count; ++y)
                if (lay.component(y, i) == x)
                    for (int p = 0; p < pc; ++p) m_mat(row0 + p, y * pc + p) = 1.0;
            Eigen::VectorXd t(pc);
            vec_hermitian(problem.targets[static_cast<std::size_t>(i)].effect(x).matrix(), t);
            c.segment(row0, pc) = t;
            row0 += pc;
        }
    }
    if (symmetric) {
        // (I - S) vec = 0 per effect, where S is the symmetrizer channel in
        // the real parametrization.
        Eigen::MatrixXd s_mat(pc, pc);
        Eigen::VectorXd basis_vec = Eigen::VectorXd::Zero(pc);
        for (int p = 0; p < pc; ++p) {
            basis_vec.setZero();
            basis_vec(p) = 1.0;
            const HermitianOperator e(unvec_hermitian(basis_vec, m));
            Eigen::VectorXd img(pc);
            vec_hermitian(symmetrizer(sym_d, sym_k, e).matrix(), img);
            s_mat.col(p) = img;
        }
        for (int y = 0; y < lay.joint_count; ++y)
            m_mat.block(row0 + y * pc, y * pc, pc, pc) =
                Eigen::MatrixXd::Identity(pc, pc) - s_mat;
    }

    const AffineProjector aff = build_affine_projector(m_mat, c);

    FeasibilityReport report;
    if (aff.inconsistency > 1e-8) {
        // The affine constraint set itself is empty.
        report.verdict = Verdict::Infeasible;
        report.residual = aff.inconsistency;
        return report;
    }

    // Start from the maximally mixed joint observable.
    Eigen::VectorXd x(nvars);
    {
        const Matrix init = Matrix::Identity(m, m) / static_cast<double>(lay.joint_count);
        Eigen::VectorXd iv(pc);
        vec_hermitian(init, iv);
        for (int y = 0; y < lay.joint_count; ++y) x.segment(y * pc, pc) = iv;
    }
    Eigen::VectorXd p_corr = Eigen::VectorXd::Zero(nvars);

    auto cone_project = [&](const Eigen::VectorXd& w) {
        Eigen::VectorXd out(nvars);
        for (int y = 0; y < lay.joint_count; ++y) {
            const HermitianOperator e(unvec_hermitian(w.segment(y * pc, pc), m));
            Eigen::VectorXd v(pc);
            vec_hermitian(psd_project(e).matrix(), v);
            out.segment(y * pc, pc) = v;
        }
        return out;
    };

    auto min_effect_eig = [&](const Eigen::VectorXd& w) {
        double lo = 0.0;
        for (int y = 0; y < lay.joint_count; ++y) {
            const HermitianOperator e(unvec_hermitian(w.segment(y * pc, pc), m));
            lo = std::min(lo, min_eigenvalue(e));
        }
        return lo;
    };

    auto emit_feasible = [&](const Eigen::VectorXd& w, int iters, double residual) {
        std::vector<std::string> outcomes;
        std::vector<HermitianOperator> effects;
        for (int y = 0; y < lay.joint_count; ++y) {
            outcomes.push_back(lay.label(y));
            effects.emplace_back(unvec_hermitian(w.segment(y * pc, pc), m));
        }
        Observable witness(m, std::move(outcomes), std::move(effects), lay.factors);
        // Independent re-validation before the verdict is emitted.
        if (!validate(witness).ok()) return false;
        for (int i = 0; i < lay.n; ++i) {
            const Observable marg = marginal(witness, i);
            for (int xo = 0; xo < marg.outcome_count(); ++xo) {
                const double dist =
                    (marg.effect(xo) - problem.targets[static_cast<std::size_t>(i)].effect(xo))
                        .hs_norm();
                if (dist > config.tol_marg) return false;
            }
        }
        report.verdict = Verdict::Feasible;
        report.witness = std::move(witness);
        report.residual = residual;
        report.iterations = iters;
        return true;
    };

    std::deque<double> history;
    double residual = 0.0;
    for (int iter = 1; iter <= config.budget; ++iter) {
        const Eigen::VectorXd y = cone_project(x + p_corr);
        p_corr = x + p_corr - y;
        x = aff.apply(y);
        residual = (y - x).norm();

        history.push_back(residual);
        if (static_cast<int>(history.size()) > config.stagnation_window + 1)
            history.pop_front();

        if (iter % config.check_every == 0 || iter == config.budget) {
            if (min_effect_eig(x) >= -config.tol_psd_accept &&
                emit_feasible(x, iter, residual))
                return report;
            if (residual > config.tol_infeas &&
                static_cast<int>(history.size()) > config.stagnation_window) {
                const double old = history.front();
                if ((old - residual) / std::max(old, 1e-300) < config.stagnation_rel) {
                    report.verdict = Verdict::Infeasible;
                    report.residual = residual;
                    report.iterations = iter;
                    return report;
                }
            }
        }
    }
    report.verdict = Verdict::Undecided;
    report.residual = residual;
    report.iterations = config.budget;
    return report;
}

}  // namespace

FeasibilityReport solve(const FeasibilityProblem& problem, const SolverConfig& config) {
    return run_dykstra(problem, config, 0, 1);
}

FeasibilityReport solve_symmetric(const FeasibilityProblem& problem, int d, int k,
                                  const SolverConfig& config) {
    int dim = 1;
    for (int i = 0; i < k; ++i) dim *= d;
    if (dim != problem.space_dim)
        throw std::invalid_argument("solve_symmetric: space_dim must equal d^k");
    return run_dykstra(problem, config, d, k);
}

namespace {

FeasibilityReport probe_decided(
    const std::function<FeasibilityReport(double, const SolverConfig&)>& probe, double t,
    const SolverConfig& config, long& total_iterations) {
    FeasibilityReport r = probe(t, config);
    total_iterations += r.iterations;
    if (r.verdict == Verdict::Undecided) {
        SolverConfig doubled = config;
        doubled.budget *= 2;
        r = probe(t, doubled);
        total_iterations += r.iterations;
        if (r.verdict == Verdict::Undecided)
            throw std::runtime_error("threshold_bisect: persistent Undecided at t = " +
                                     std::to_string(t));
    }
    return r;
}

}  // namespace

ThresholdResult threshold_bisect(
    const std::function<FeasibilityReport(double, const SolverConfig&)>& probe,
    double lo, double hi, double tol, const SolverConfig& config) {
    if (tol < 1e-4) throw std::invalid_argument("threshold_bisect: tol must be >= 1e-4");
    ThresholdResult res{0.0, lo, hi, 0, 0};
    auto decided = [&](double t) {
        ++res.solver_calls;
        return probe_decided(probe, t, config, res.total_iterations).verdict;
    };
    if (decided(lo) != Verdict::Feasible || decided(hi) != Verdict::Infeasible)
        throw std::runtime_error("threshold_bisect: family is not monotone on [lo, hi]");
    while (res.bracket_hi - res.bracket_lo > tol) {
        const double mid = 0.5 * (res.bracket_lo + res.bracket_hi);
        if (decided(mid) == Verdict::Feasible)
            res.bracket_lo = mid;
        else
            res.bracket_hi = mid;
    }
    res.threshold = 0.5 * (res.bracket_lo + res.bracket_hi);
    return res;
}

}  // namespace kc
