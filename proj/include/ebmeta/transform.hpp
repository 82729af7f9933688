#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ebmeta/model.hpp"

namespace ebmeta
{

struct SplitBlock
{
    std::string name; // name of the submachine built for this block
    IdentSet vars;
};

// Partition of a machine's variables into named blocks.
struct SplitPlan
{
    std::string name;
    std::string source;
    std::vector<SplitBlock> blocks;
};

class CrossBlockError : public Error
{
    std::string _event;
    std::string _conjunct;
    std::vector<std::string> _blocks;

public:
    CrossBlockError( ErrorCode code, std::string event, std::string conjunct, std::vector<std::string> blocks,
                     const std::string& message )
            : Error{ code, message }, _event{ std::move( event ) }, _conjunct{ std::move( conjunct ) },
              _blocks{ std::move( blocks ) }
    {
    }

    // Empty for CrossBlockInvariant.
    [[nodiscard]] const std::string& event() const { return _event; }
    // Empty when the event is rejected because separate conjuncts touch different blocks.
    [[nodiscard]] const std::string& conjunct() const { return _conjunct; }
    [[nodiscard]] const std::vector<std::string>& blocks() const { return _blocks; }
};

// Builds one submachine per block and adds them to the project; the source
// machine stays. Invariant conjuncts go to the block holding their
// variables. Each event goes to the single block its guard and action
// conjuncts touch (the first block if they touch none); identity conjuncts
// `v' = v` do not count as touching. Throws UnknownMachine, InvalidPlan,
// StaticViolationError, DuplicateMachine, or CrossBlockError.
Project split_machine( const Project& p, const SplitPlan& plan );

// The submachines split_machine would add, without adding them.
std::vector<Machine> split_submachines( const Project& p, const SplitPlan& plan );

// Product of machines with pairwise disjoint variables: union of variables,
// intersection of invariants, and every event padded with `v' = v` for the
// variables of the other machines. Throws OverlappingVars, DuplicateEvent.
Machine compose_oracle( const std::vector<Machine>& subs );

// A transition (state, event, parameters, next state) present on one side only.
struct TransitionWitness
{
    std::string event;
    Valuation state;
    Valuation params;
    Valuation next;
    bool in_source = false; // otherwise only in the composition
};

struct EquivalenceReport
{
    bool equal = true;
    // "variables", "invariant", "events", "parameters" or "transition".
    std::string difference;
    std::string detail;
    std::optional<Valuation> state_witness; // for "invariant"
    std::optional<TransitionWitness> transition;
};

// Compares the transition relations of `source` and compose_oracle(subs),
// restricted to states satisfying the source invariant, by exhaustive
// enumeration; reports the first difference in canonical order.
EquivalenceReport check_split_equivalence( const Machine& source, const std::vector<Machine>& subs );

// Transitions of one event over vars, vars', pars restricted to `inv`.
Predicate transition_relation( const Machine& m, const std::string& event, const Predicate& inv );

} // namespace ebmeta
