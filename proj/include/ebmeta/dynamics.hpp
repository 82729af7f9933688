#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ebmeta/model.hpp"

namespace ebmeta
{

namespace state_rules
{
inline constexpr const char* typing = "@state_ty";        // decomposable
inline constexpr const char* invariant = "@state_dync";   // state within mInv
inline constexpr const char* free_vars = "@free_state";   // free(state) within mVars
inline constexpr const char* satisfiable = "satisfiable"; // non-empty
} // namespace state_rules

class InitViolation : public Error
{
    std::string _machine;
    std::string _rule;

public:
    InitViolation( std::string machine, std::string rule, const std::string& message )
            : Error{ ErrorCode::InitViolation, message }, _machine{ std::move( machine ) }, _rule{ std::move( rule ) }
    {
    }

    [[nodiscard]] const std::string& machine() const { return _machine; }
    [[nodiscard]] const std::string& rule() const { return _rule; }
};

using ProjectPtr = std::shared_ptr<const Project>;

// Active machines and their current (decomposable) state predicates.
struct RunState
{
    ProjectPtr project;
    std::map<std::string, Predicate> active;

    [[nodiscard]] bool is_active( const std::string& m ) const { return active.count( m ) > 0; }
};

// A post-step state that breaks a RunState invariant. The step formula does
// not guarantee these when obligations fail or actions correlate variables,
// so they are surfaced rather than rejected.
struct StepWarning
{
    std::string machine;
    std::string rule;
    std::string message;
};

struct StepResult
{
    RunState state;
    std::vector<StepWarning> warnings;
};

// Throws InitViolation (or UnknownMachine) unless every supplied state is
// satisfiable, decomposable, free within the machine's vars and inside its
// invariant.
RunState init_run( ProjectPtr project, const std::map<std::string, Predicate>& initial );

// state(m) := unprime(proj(vars(m)', state(m) n p n action(e))).
// Throws InactiveMachine, UnknownEvent, NonParamPredicate, GuardNotEntailed
// (WitnessError) or EmptySuccessor.
StepResult step( const RunState& rs, const std::string& machine, const std::string& event, const Predicate& params );

struct EnabledEvent
{
    std::string event;
    Predicate witness; // lexicographically smallest enabling parameter point
};

std::vector<EnabledEvent> enabled( const RunState& rs, const std::string& machine );

// Every parameter point of `event` enabling it from the current state, in
// lexicographic order.
std::vector<Predicate> enabling_params( const RunState& rs, const std::string& machine, const std::string& event );

// Hot replacement: retire some active machines, activate inactive ones. The
// intersection of the retired states must equal that of the new states.
// Throws NotActive, AlreadyActive, UnknownMachine, InitViolation or
// TransparencyViolation (WitnessError).
RunState replace_active( const RunState& rs, const std::set<std::string>& retire,
                         const std::map<std::string, Predicate>& activate );

// --- traces ---

struct ScriptStep
{
    std::string machine;
    std::string event;
    Valuation params;
};

struct TraceRecord
{
    std::size_t index = 0;
    std::string machine;
    std::string event;
    Valuation params;
    std::map<std::string, Predicate> snapshot; // active states after the step
    std::vector<StepWarning> warnings;
};

enum class TraceOutcome
{
    Completed,
    Deadlock,
    StepError,
};

struct Trace
{
    std::vector<TraceRecord> records;
    TraceOutcome outcome = TraceOutcome::Completed;
    std::optional<ErrorCode> error;
    std::size_t error_index = 0;
    std::string message;
    std::optional<Valuation> witness;
    RunState final_state;

    [[nodiscard]] bool has_warnings() const;
};

// Deterministic uniform choice in [0, n) from a 64-bit Mersenne Twister using
// rejection sampling; independent of the standard library's distributions.
class TraceRng
{
    std::mt19937_64 _engine;

public:
    explicit TraceRng( std::uint64_t seed ) : _engine{ seed } {}
    std::size_t below( std::size_t n );
};

Trace run_script( const RunState& rs, const std::vector<ScriptStep>& script );

// Each step picks uniformly among all enabled (machine, event, parameter
// point) triples whose successor is non-empty; stops with Deadlock when there
// are none.
Trace run_random( const RunState& rs, std::uint64_t seed, std::size_t steps );

std::string to_string( TraceOutcome o );

} // namespace ebmeta
