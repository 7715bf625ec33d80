#include "kcompat/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace kc {

std::string ProductOutcome::label() const {
    std::string out;
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (i) out += '|';
        out += components[i];
    }
    return out;
}

ProductOutcome ProductOutcome::parse(const std::string& label) {
    ProductOutcome po;
    std::stringstream ss(label);
    std::string part;
    while (std::getline(ss, part, '|')) po.components.push_back(part);
    return po;
}

Observable::Observable(int space_dim, std::vector<std::string> outcomes,
                       std::vector<HermitianOperator> effects,
                       std::vector<std::vector<std::string>> factors)
    : space_dim_(space_dim),
      outcomes_(std::move(outcomes)),
      effects_(std::move(effects)),
      factors_(std::move(factors)) {
    if (outcomes_.empty()) throw std::invalid_argument("Observable: empty outcome set");
    if (outcomes_.size() != effects_.size())
        throw std::invalid_argument("Observable: outcome/effect count mismatch");
    for (const auto& e : effects_)
        if (e.dim() != space_dim_)
            throw std::invalid_argument("Observable: effect dimension mismatch");
    if (!factors_.empty()) {
        std::size_t expected = 1;
        for (const auto& f : factors_) expected *= f.size();
        if (expected != outcomes_.size())
            throw std::invalid_argument("Observable: factor structure inconsistent");
    }
}

const HermitianOperator& Observable::effect(const std::string& outcome) const {
    return effects_[static_cast<std::size_t>(outcome_index(outcome))];
}

int Observable::outcome_index(const std::string& outcome) const {
    auto it = std::find(outcomes_.begin(), outcomes_.end(), outcome);
    if (it == outcomes_.end())
        throw std::invalid_argument("Observable: unknown outcome label '" + outcome + "'");
    return static_cast<int>(it - outcomes_.begin());
}

ObservableSet::ObservableSet(std::vector<Observable> members,
                             std::vector<std::string> names)
    : members_(std::move(members)), names_(std::move(names)) {
    if (members_.empty()) throw std::invalid_argument("ObservableSet: empty");
    for (const auto& m : members_)
        if (m.space_dim() != members_.front().space_dim())
            throw std::invalid_argument("ObservableSet: mixed space dimensions");
    if (names_.empty())
        for (std::size_t i = 0; i < members_.size(); ++i)
            names_.push_back("A" + std::to_string(i + 1));
    if (names_.size() != members_.size())
        throw std::invalid_argument("ObservableSet: name count mismatch");
}

ObservableSet ObservableSet::subset(const std::vector<int>& indices) const {
    std::vector<Observable> sub;
    std::vector<std::string> names;
    for (int i : indices) {
        sub.push_back(members_.at(static_cast<std::size_t>(i)));
        names.push_back(names_.at(static_cast<std::size_t>(i)));
    }
    return ObservableSet(std::move(sub), std::move(names));
}

ValidationReport validate(const Observable& obs) {
    ValidationReport report;
    for (int i = 0; i < obs.outcome_count(); ++i) {
        const double lo = min_eigenvalue(obs.effect(i));
        if (lo < -tol_psd)
            report.violations.push_back({"positivity", obs.outcomes()[static_cast<std::size_t>(i)], lo});
    }
    Matrix sum = Matrix::Zero(obs.space_dim(), obs.space_dim());
    for (const auto& e : obs.effects()) sum += e.matrix();
    const double dev = (sum - Matrix::Identity(obs.space_dim(), obs.space_dim())).norm();
    if (dev > tol_norm) report.violations.push_back({"normalization", "", dev});
    return report;
}

HermitianOperator effect_of_subset(const Observable& obs,
                                   const std::vector<std::string>& subset) {
    HermitianOperator sum = HermitianOperator::zero(obs.space_dim());
    for (const auto& x : subset) sum = sum + obs.effect(x);
    return sum;
}

Observable marginal(const Observable& joint, int i) {
    if (!joint.is_joint()) {
        if (i != 0) throw std::out_of_range("marginal: index out of range");
        return joint;
    }
    const auto& factors = joint.factors();
    if (i < 0 || i >= static_cast<int>(factors.size()))
        throw std::out_of_range("marginal: index out of range");
    const auto& omega = factors[static_cast<std::size_t>(i)];
    std::vector<HermitianOperator> effects(
        omega.size(), HermitianOperator::zero(joint.space_dim()));
    for (int j = 0; j < joint.outcome_count(); ++j) {
        const auto po = ProductOutcome::parse(joint.outcomes()[static_cast<std::size_t>(j)]);
        if (po.components.size() != factors.size())
            throw std::invalid_argument("marginal: inconsistent product structure");
        const auto& comp = po.components[static_cast<std::size_t>(i)];
        auto it = std::find(omega.begin(), omega.end(), comp);
        if (it == omega.end())
            throw std::invalid_argument("marginal: outcome component not in factor set");
        const auto idx = static_cast<std::size_t>(it - omega.begin());
        effects[idx] = effects[idx] + joint.effect(j);
    }
    return Observable(joint.space_dim(), omega, std::move(effects));
}

Observable product_joint(const ObservableSet& set) {
    const int n = set.size();
    if (n == 1) return set.member(0);
    std::vector<std::vector<std::string>> factors;
    for (int i = 0; i < n; ++i) factors.push_back(set.member(i).outcomes());

    std::vector<std::string> outcomes;
    std::vector<HermitianOperator> effects;
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        ProductOutcome po;
        HermitianOperator eff = set.member(0).effect(idx[0]);
        po.components.push_back(set.member(0).outcomes()[static_cast<std::size_t>(idx[0])]);
        for (int i = 1; i < n; ++i) {
            po.components.push_back(set.member(i).outcomes()[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
            eff = tensor(eff, set.member(i).effect(idx[static_cast<std::size_t>(i)]));
        }
        outcomes.push_back(po.label());
        effects.push_back(std::move(eff));
        int pos = n - 1;
        while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] ==
                               set.member(pos).outcome_count()) {
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    int dim = 1;
    for (int i = 0; i < n; ++i) dim *= set.member(i).space_dim();
    return Observable(dim, std::move(outcomes), std::move(effects), std::move(factors));
}

Observable mix(const std::vector<Observable>& observables,
               const std::vector<double>& weights) {
    if (observables.empty() || observables.size() != weights.size())
        throw std::invalid_argument("mix: shape mismatch");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("mix: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("mix: weights must sum to 1");
    const Observable& first = observables.front();
    for (const auto& o : observables) {
        if (o.space_dim() != first.space_dim() || o.outcomes() != first.outcomes())
            throw std::invalid_argument("mix: observables must share outcome set and space");
    }
    std::vector<HermitianOperator> effects;
    for (int x = 0; x < first.outcome_count(); ++x) {
        HermitianOperator e = HermitianOperator::zero(first.space_dim());
        for (std::size_t j = 0; j < observables.size(); ++j)
            e = e + observables[j].effect(x).scaled(weights[j]);
        effects.push_back(std::move(e));
    }
    return Observable(first.space_dim(), first.outcomes(), std::move(effects),
                      first.factors());
}

namespace {
std::vector<std::vector<std::string>> factors_of(const Observable& g) {
    if (g.is_joint()) return g.factors();
    return {g.outcomes()};
}
}  // namespace

Observable combine_disjoint_joints(const Observable& g1, const Observable& g3) {
    auto f1 = factors_of(g1);
    auto f3 = factors_of(g3);
    std::vector<std::vector<std::string>> factors = f1;
    factors.insert(factors.end(), f3.begin(), f3.end());

    std::vector<std::string> outcomes;
    std::vector<HermitianOperator> effects;
    for (int i = 0; i < g1.outcome_count(); ++i) {
        for (int j = 0; j < g3.outcome_count(); ++j) {
            outcomes.push_back(g1.outcomes()[static_cast<std::size_t>(i)] + "|" +
                               g3.outcomes()[static_cast<std::size_t>(j)]);
            effects.push_back(tensor(g1.effect(i), g3.effect(j)));
        }
    }
    return Observable(g1.space_dim() * g3.space_dim(), std::move(outcomes),
                      std::move(effects), std::move(factors));
}

}  // namespace kc
