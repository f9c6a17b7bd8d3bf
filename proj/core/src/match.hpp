#pragma once

#include <optional>

#include "epsk/syntax.hpp"

namespace epsk {

// Whether `target` is q.instantiate(t) for some closed t. On success `t` is
// the term, or empty when the bound variable does not occur in the body.
bool match_instance(const Formula& q, const Formula& target, std::optional<Term>& t);

}  // namespace epsk
