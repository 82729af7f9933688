#include "ebmeta/dynamics.hpp"

#include <algorithm>

namespace ebmeta
{

namespace
{

void check_state( const Machine& m, const Predicate& s )
{
    if ( s.unsatisfiable() )
        throw InitViolation{ m.name, state_rules::satisfiable, "state of '" + m.name + "' is empty" };
    const auto free = free_idents( s );
    if ( !std::includes( m.vars.begin(), m.vars.end(), free.begin(), free.end() ) )
        throw InitViolation{ m.name, state_rules::free_vars,
                             "state of '" + m.name + "' depends on " + to_string( free ) + " outside its variables" };
    if ( !decomposable( s ) )
        throw InitViolation{ m.name, state_rules::typing, "state of '" + m.name + "' is not decomposable" };
    if ( !entails( s, m.inv ) )
        throw InitViolation{ m.name, state_rules::invariant,
                             "state of '" + m.name + "' is not inside its invariant" };
}

Renaming unprime_map( const IdentSet& vars )
{
    Renaming r;
    for ( const auto& v : vars )
        r.emplace( prime( v ), v );
    return r;
}

const Machine& active_machine( const RunState& rs, const std::string& machine )
{
    if ( !rs.is_active( machine ) )
        throw Error{ ErrorCode::InactiveMachine, "machine '" + machine + "' is not active" };
    return get_machine( *rs.project, machine );
}

std::vector<StepWarning> audit( const Machine& m, const Predicate& s )
{
    std::vector<StepWarning> out;
    const auto free = free_idents( s );
    if ( !std::includes( m.vars.begin(), m.vars.end(), free.begin(), free.end() ) )
        out.push_back( { m.name, state_rules::free_vars, "state depends on " + to_string( free ) } );
    if ( !decomposable( s ) )
        out.push_back( { m.name, state_rules::typing, "state is not decomposable: " + to_text( s ) } );
    if ( !entails( s, m.inv ) )
    {
        auto w = entailment_witness( s, m.inv );
        out.push_back( { m.name, state_rules::invariant,
                         "state leaves the invariant at " + to_string( *s.universe(), *w ) } );
    }
    return out;
}

} // namespace

RunState init_run( ProjectPtr project, const std::map<std::string, Predicate>& initial )
{
    RunState rs{ std::move( project ), {} };
    for ( const auto& [name, s] : initial )
    {
        check_state( get_machine( *rs.project, name ), s );
        rs.active.emplace( name, s );
    }
    return rs;
}

StepResult step( const RunState& rs, const std::string& machine, const std::string& event, const Predicate& params )
{
    const auto& m = active_machine( rs, machine );
    const auto& e = m.event( event );

    for ( const auto& i : free_idents( params ) )
        if ( !i.is_param() )
            throw Error{ ErrorCode::NonParamPredicate,
                         "parameter predicate depends on " + to_string( i.kind ) + " '" + i.str() + "'" };

    const auto current = intersect( rs.active.at( machine ), params );
    if ( !entails( current, e.guard ) )
        throw WitnessError{ ErrorCode::GuardNotEntailed,
                            "guard of " + machine + "." + event + " does not hold in the current state",
                            *entailment_witness( current, e.guard ) };

    const auto primed = prime_set( m.vars );
    auto next = subst( unprime_map( m.vars ), proj( primed, intersect( current, e.action ) ) );
    if ( next.unsatisfiable() )
        throw Error{ ErrorCode::EmptySuccessor, "action of " + machine + "." + event + " has no successor" };

    StepResult out{ rs, audit( m, next ) };
    out.state.active.insert_or_assign( machine, std::move( next ) );
    return out;
}

std::vector<Predicate> enabling_params( const RunState& rs, const std::string& machine, const std::string& event )
{
    const auto& m = active_machine( rs, machine );
    const auto& e = m.event( event );
    const auto& u = rs.project->universe();
    const auto& state = rs.active.at( machine );

    std::vector<Predicate> out;
    const auto points = Predicate::full( u, e.pars );
    for ( std::size_t r = 0; r < points.size(); ++r )
    {
        auto p = Predicate::point( u, points.valuation( r ) );
        if ( entails( intersect( state, p ), e.guard ) )
            out.push_back( std::move( p ) );
    }
    return out;
}

std::vector<EnabledEvent> enabled( const RunState& rs, const std::string& machine )
{
    const auto& m = active_machine( rs, machine );
    std::vector<EnabledEvent> out;
    for ( const auto& [name, e] : m.events )
    {
        auto ps = enabling_params( rs, machine, name );
        if ( !ps.empty() )
            out.push_back( { name, std::move( ps.front() ) } );
    }
    return out;
}

RunState replace_active( const RunState& rs, const std::set<std::string>& retire,
                         const std::map<std::string, Predicate>& activate )
{
    const auto& u = rs.project->universe();
    std::vector<Predicate> old_states, new_states;
    for ( const auto& name : retire )
    {
        if ( !rs.is_active( name ) )
            throw Error{ ErrorCode::NotActive, "machine '" + name + "' is not active" };
        old_states.push_back( rs.active.at( name ) );
    }
    for ( const auto& [name, s] : activate )
    {
        const auto& m = get_machine( *rs.project, name );
        if ( rs.is_active( name ) )
            throw Error{ ErrorCode::AlreadyActive, "machine '" + name + "' is already active" };
        check_state( m, s );
        new_states.push_back( s );
    }

    const auto before = intersect_all( u, old_states );
    const auto after = intersect_all( u, new_states );
    if ( auto w = difference_witness( before, after ) )
        throw WitnessError{ ErrorCode::TransparencyViolation,
                            "retired and activated states differ at " + to_string( *u, *w ), *w };

    RunState out = rs;
    for ( const auto& name : retire )
        out.active.erase( name );
    for ( const auto& [name, s] : activate )
        out.active.emplace( name, s );
    return out;
}

bool Trace::has_warnings() const
{
    return std::any_of( records.begin(), records.end(), []( const auto& r ) { return !r.warnings.empty(); } );
}

std::size_t TraceRng::below( std::size_t n )
{
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do
        x = _engine();
    while ( x >= limit );
    return static_cast<std::size_t>( x % bound );
}

Trace run_script( const RunState& rs, const std::vector<ScriptStep>& script )
{
    Trace trace;
    trace.final_state = rs;
    for ( std::size_t i = 0; i < script.size(); ++i )
    {
        const auto& s = script[i];
        try
        {
            auto params = Predicate::point( rs.project->universe(), s.params );
            auto result = step( trace.final_state, s.machine, s.event, params );
            trace.records.push_back( { i, s.machine, s.event, s.params, result.state.active, result.warnings } );
            trace.final_state = std::move( result.state );
        }
        catch ( const Error& e )
        {
            trace.outcome = TraceOutcome::StepError;
            trace.error = e.code();
            trace.error_index = i;
            trace.message = e.what();
            if ( auto* w = dynamic_cast<const WitnessError*>( &e ) )
                trace.witness = w->witness();
            break;
        }
    }
    return trace;
}

Trace run_random( const RunState& rs, std::uint64_t seed, std::size_t steps )
{
    struct Candidate
    {
        std::string machine;
        std::string event;
        Valuation params;
        StepResult result;
    };

    TraceRng rng{ seed };
    Trace trace;
    trace.final_state = rs;
    for ( std::size_t i = 0; i < steps; ++i )
    {
        std::vector<Candidate> candidates;
        for ( const auto& [name, state] : trace.final_state.active )
        {
            const auto& m = get_machine( *rs.project, name );
            for ( const auto& [event, def] : m.events )
            {
                for ( const auto& p : enabling_params( trace.final_state, name, event ) )
                {
                    try
                    {
                        auto result = step( trace.final_state, name, event, p );
                        candidates.push_back( { name, event, p.valuation( 0 ), std::move( result ) } );
                    }
                    catch ( const Error& e )
                    {
                        if ( e.code() != ErrorCode::EmptySuccessor )
                            throw;
                    }
                }
            }
        }
        if ( candidates.empty() )
        {
            trace.outcome = TraceOutcome::Deadlock;
            break;
        }
        auto& pick = candidates[rng.below( candidates.size() )];
        trace.records.push_back(
                { i, pick.machine, pick.event, pick.params, pick.result.state.active, pick.result.warnings } );
        trace.final_state = std::move( pick.result.state );
    }
    return trace;
}

std::string to_string( TraceOutcome o )
{
    switch ( o )
    {
    case TraceOutcome::Completed: return "Completed";
    case TraceOutcome::Deadlock: return "Deadlock";
    case TraceOutcome::StepError: return "StepError";
    }
    return "?";
}

} // namespace ebmeta
