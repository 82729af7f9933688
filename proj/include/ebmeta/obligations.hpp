#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ebmeta/model.hpp"

namespace ebmeta
{

enum class ObligationStatus
{
    Holds,
    Fails,
};

// Invariant preservation for one event:
//   inv n guard n action  is included in  inv with every variable primed.
// A counterexample binds vars, primed vars and the event parameters.
struct ObligationResult
{
    std::string machine;
    std::string event;
    ObligationStatus status = ObligationStatus::Holds;
    std::optional<Valuation> counterexample;
};

// Throws UnknownEvent.
ObligationResult po_inv_preservation( const Machine& m, const std::string& event );

// One result per (machine, event), machines then events in name order.
std::vector<ObligationResult> po_all( const Project& p );

std::string to_string( ObligationStatus s );

} // namespace ebmeta
