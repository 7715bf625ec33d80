#ifndef KCOMPAT_JSON_IO_HPP
#define KCOMPAT_JSON_IO_HPP

#include <nlohmann/json.hpp>

#include "kcompat/feasibility.hpp"
#include "kcompat/kcompat.hpp"
#include "kcompat/observables.hpp"
#include "kcompat/stacks.hpp"

namespace kc::io {

using nlohmann::json;

// Matrix encoding: {"dim": d, "re": [[...]], "im": [[...]]}
json matrix_to_json(const HermitianOperator& op);
HermitianOperator matrix_from_json(const json& j);

// Observable: {"space_dim": d, "outcomes": [...], "effects": [...]};
// joint observables add "factors": [[...], ...].
json observable_to_json(const Observable& obs);
Observable observable_from_json(const json& j);

// Set: {"observables": [{"name": ..., ...observable...}, ...]}
json set_to_json(const ObservableSet& set);
ObservableSet set_from_json(const json& j);

json report_to_json(const FeasibilityReport& report, bool include_witness = true);

json index_result_to_json(const IndexResult& result);

// Stack: {"vertices": [...], "levels": [{"k": 1, "edges": [["A"], ...]}, ...],
// "provenance": {...}} with edges listed as sorted vertex-name lists.
json stack_to_json(const stacks::CompatibilityStack& stack,
                   const std::map<std::pair<stacks::SubsetMask, int>, std::string>*
                       provenance = nullptr);
stacks::CompatibilityStack stack_from_json(const json& j);

}  // namespace kc::io

#endif
