#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ebmeta/error.hpp"
#include "ebmeta/predicate.hpp"

namespace ebmeta
{

// An event is the triple (parameters, guard, action). The action is a
// before-after predicate over variables, primed variables and parameters.
struct EventDef
{
    IdentSet pars;
    Predicate guard;
    Predicate action;
};

struct Machine
{
    std::string name;
    IdentSet vars;
    Predicate inv;
    std::map<std::string, EventDef> events;

    [[nodiscard]] const EventDef& event( const std::string& e ) const;
};

// A set of machines over one shared universe. Variables are global by base
// name: two machines that both list `x` talk about the same variable.
class Project
{
    UniversePtr _universe;
    std::map<std::string, Machine> _machines;

public:
    explicit Project( UniversePtr u ) : _universe{ std::move( u ) } {}

    [[nodiscard]] const UniversePtr& universe() const { return _universe; }
    [[nodiscard]] const std::map<std::string, Machine>& machines() const { return _machines; }
    [[nodiscard]] std::size_t size() const { return _machines.size(); }
    [[nodiscard]] bool contains( const std::string& name ) const { return _machines.count( name ) > 0; }

    // Map-level insertion with no well-formedness check. Throws DuplicateMachine.
    [[nodiscard]] Project with( Machine m ) const;
    [[nodiscard]] Project without( const std::string& name ) const;

    bool operator==( const Project& other ) const;
};

namespace rules
{
inline constexpr const char* inv = "@mInv_ctr";
inline constexpr const char* guards = "@mGuards_ctr";
inline constexpr const char* actions = "@mActions_ctr";
} // namespace rules

struct Violation
{
    std::string machine;
    std::optional<std::string> event;
    std::string rule;
    IdentSet offending;
    std::optional<SourceLocation> where;

    bool operator==( const Violation& ) const = default;
};

struct StaticReport
{
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const { return violations.empty(); }
};

class StaticViolationError : public Error
{
    StaticReport _report;

public:
    explicit StaticViolationError( StaticReport report );

    [[nodiscard]] const StaticReport& report() const { return _report; }
};

// Visibility constraints: free(inv) within vars; free(guard) within vars and
// the event's parameters; free(action) within vars, primed vars and parameters.
StaticReport check_machine( const Machine& m );
StaticReport check_static( const Project& p );

// Adds one machine; only well-formed machines are accepted.
// Throws DuplicateMachine or StaticViolationError.
Project new_machine( const Project& p, Machine m );

// All-or-nothing batch version of new_machine.
Project add_machines( const Project& p, std::vector<Machine> ms );

// Throws UnknownMachine.
Project remove_machine( const Project& p, const std::string& name );
const Machine& get_machine( const Project& p, const std::string& name );

bool equivalent( const Machine& a, const Machine& b );

} // namespace ebmeta
