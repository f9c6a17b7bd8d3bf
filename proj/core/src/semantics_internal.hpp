#pragma once

#include "epsk/semantics.hpp"

namespace epsk::detail {

// validate_model against a caller-supplied evaluator; with a resolving
// evaluator this forces every value the conditions look at.
ValidationReport check_model(const KripkeModel& m, Evaluator& ev, const ValidationOptions& opts);

// Replaces every closed epsilon-subterm of the body of `t` via `f`.
Term map_closed_eps_in_body(const Term& t, const std::function<Term(const Term&)>& f);

}  // namespace epsk::detail
