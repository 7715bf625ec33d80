#include "kcompat/json_io.hpp"

#include <stdexcept>

namespace kc::io {

json matrix_to_json(const HermitianOperator& op) {
    const int d = op.dim();
    json re = json::array(), im = json::array();
    for (int i = 0; i < d; ++i) {
        json rrow = json::array(), irow = json::array();
        for (int j = 0; j < d; ++j) {
            rrow.push_back(op.entry(i, j).real());
            irow.push_back(op.entry(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return json{{"dim", d}, {"re", std::move(re)}, {"im", std::move(im)}};
}

HermitianOperator matrix_from_json(const json& j) {
    const int d = j.at("dim").get<int>();
    Matrix m(d, d);
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
            m(i, k) = Complex(re.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<double>(),
                              im.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<double>());
    return HermitianOperator(m);
}

json observable_to_json(const Observable& obs) {
    json effects = json::array();
    for (const auto& e : obs.effects()) effects.push_back(matrix_to_json(e));
    json out{{"space_dim", obs.space_dim()},
             {"outcomes", obs.outcomes()},
             {"effects", std::move(effects)}};
    if (obs.is_joint()) out["factors"] = obs.factors();
    return out;
}

Observable observable_from_json(const json& j) {
    std::vector<HermitianOperator> effects;
    for (const auto& e : j.at("effects")) effects.push_back(matrix_from_json(e));
    std::vector<std::vector<std::string>> factors;
    if (j.contains("factors"))
        factors = j.at("factors").get<std::vector<std::vector<std::string>>>();
    return Observable(j.at("space_dim").get<int>(),
                      j.at("outcomes").get<std::vector<std::string>>(), std::move(effects),
                      std::move(factors));
}

json set_to_json(const ObservableSet& set) {
    json members = json::array();
    for (int i = 0; i < set.size(); ++i) {
        json m = observable_to_json(set.member(i));
        m["name"] = set.names()[static_cast<std::size_t>(i)];
        members.push_back(std::move(m));
    }
    return json{{"observables", std::move(members)}};
}

ObservableSet set_from_json(const json& j) {
    std::vector<Observable> members;
    std::vector<std::string> names;
    for (const auto& m : j.at("observables")) {
        members.push_back(observable_from_json(m));
        if (m.contains("name")) names.push_back(m.at("name").get<std::string>());
    }
    if (!names.empty() && names.size() != members.size())
        throw std::invalid_argument("set_from_json: either all or no observables may be named");
    return ObservableSet(std::move(members), std::move(names));
}

json report_to_json(const FeasibilityReport& report, bool include_witness) {
    json out{{"verdict", to_string(report.verdict)},
             {"residual", report.residual},
             {"iterations", report.iterations}};
    if (include_witness && report.witness) out["witness"] = observable_to_json(*report.witness);
    return out;
}

json index_result_to_json(const IndexResult& result) {
    json per_k = json::array();
    for (std::size_t k = 0; k < result.per_k.size(); ++k) {
        json r = report_to_json(result.per_k[k], false);
        r["k"] = static_cast<int>(k) + 1;
        per_k.push_back(std::move(r));
    }
    return json{{"index", result.index}, {"per_k", std::move(per_k)}};
}

namespace {

json edges_to_json(const stacks::CompatibilityStack& stack, stacks::EdgeFamily family) {
    json edges = json::array();
    for (stacks::SubsetMask s = 1; s <= stack.full_mask(); ++s) {
        if (!((family >> s) & 1u)) continue;
        json edge = json::array();
        for (int v = 0; v < stack.order(); ++v)
            if ((s >> v) & 1u) edge.push_back(stack.vertices[static_cast<std::size_t>(v)]);
        edges.push_back(std::move(edge));
    }
    return edges;
}

}  // namespace

json stack_to_json(const stacks::CompatibilityStack& stack,
                   const std::map<std::pair<stacks::SubsetMask, int>, std::string>* provenance) {
    json levels = json::array();
    for (int k = 1; k <= stack.order(); ++k)
        levels.push_back(json{{"k", k},
                              {"edges", edges_to_json(stack, stack.levels[static_cast<std::size_t>(k - 1)])}});
    json out{{"vertices", stack.vertices}, {"levels", std::move(levels)}};
    if (provenance) {
        json prov = json::object();
        for (const auto& [key, value] : *provenance) {
            std::string name;
            for (int v = 0; v < stack.order(); ++v)
                if ((key.first >> v) & 1u) {
                    if (!name.empty()) name += ",";
                    name += stack.vertices[static_cast<std::size_t>(v)];
                }
            prov[name + "@" + std::to_string(key.second)] = value;
        }
        out["provenance"] = std::move(prov);
    }
    return out;
}

stacks::CompatibilityStack stack_from_json(const json& j) {
    stacks::CompatibilityStack stack;
    stack.vertices = j.at("vertices").get<std::vector<std::string>>();
    stack.levels.assign(stack.vertices.size(), 0);
    for (const auto& level : j.at("levels")) {
        const int k = level.at("k").get<int>();
        if (k < 1 || k > stack.order())
            throw std::invalid_argument("stack_from_json: level out of range");
        stacks::EdgeFamily family = 0;
        for (const auto& edge : level.at("edges")) {
            stacks::SubsetMask s = 0;
            for (const auto& name : edge) {
                const auto it = std::find(stack.vertices.begin(), stack.vertices.end(),
                                          name.get<std::string>());
                if (it == stack.vertices.end())
                    throw std::invalid_argument("stack_from_json: unknown vertex in edge");
                s |= 1u << (it - stack.vertices.begin());
            }
            family |= 1u << s;
        }
        stack.levels[static_cast<std::size_t>(k - 1)] = family;
    }
    return stack;
}

}  // namespace kc::io
