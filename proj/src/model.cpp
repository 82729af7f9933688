#include "ebmeta/model.hpp"

#include <algorithm>

namespace ebmeta
{

namespace
{

IdentSet outside( const IdentSet& used, const IdentSet& allowed )
{
    IdentSet out;
    std::set_difference( used.begin(), used.end(), allowed.begin(), allowed.end(),
                         std::inserter( out, out.end() ) );
    return out;
}

std::string describe( const StaticReport& report )
{
    std::string out = "machine is not well formed: ";
    for ( std::size_t i = 0; i < report.violations.size(); ++i )
    {
        const auto& v = report.violations[i];
        out += ( i ? "; " : "" ) + v.rule + " in " + v.machine;
        if ( v.event )
            out += "." + *v.event;
        out += " uses " + to_string( v.offending );
    }
    return out;
}

} // namespace

const EventDef& Machine::event( const std::string& e ) const
{
    auto it = events.find( e );
    if ( it == events.end() )
        throw Error{ ErrorCode::UnknownEvent, "machine '" + name + "' has no event '" + e + "'" };
    return it->second;
}

Project Project::with( Machine m ) const
{
    if ( contains( m.name ) )
        throw Error{ ErrorCode::DuplicateMachine, "machine '" + m.name + "' already exists" };
    Project out = *this;
    auto name = m.name;
    out._machines.emplace( std::move( name ), std::move( m ) );
    return out;
}

Project Project::without( const std::string& name ) const
{
    if ( !contains( name ) )
        throw Error{ ErrorCode::UnknownMachine, "no machine named '" + name + "'" };
    Project out = *this;
    out._machines.erase( name );
    return out;
}

bool Project::operator==( const Project& other ) const
{
    if ( _machines.size() != other._machines.size() )
        return false;
    for ( const auto& [name, m] : _machines )
    {
        auto it = other._machines.find( name );
        if ( it == other._machines.end() || !equivalent( m, it->second ) )
            return false;
    }
    return true;
}

StaticViolationError::StaticViolationError( StaticReport report )
        : Error{ ErrorCode::StaticViolation, describe( report ) }, _report{ std::move( report ) }
{
}

StaticReport check_machine( const Machine& m )
{
    StaticReport report;
    if ( auto bad = outside( free_idents( m.inv ), m.vars ); !bad.empty() )
        report.violations.push_back( { m.name, std::nullopt, rules::inv, std::move( bad ), std::nullopt } );

    const auto primed = prime_set( m.vars );
    for ( const auto& [name, e] : m.events )
    {
        IdentSet guard_ok = m.vars;
        guard_ok.insert( e.pars.begin(), e.pars.end() );
        if ( auto bad = outside( free_idents( e.guard ), guard_ok ); !bad.empty() )
            report.violations.push_back( { m.name, name, rules::guards, std::move( bad ), std::nullopt } );

        IdentSet action_ok = guard_ok;
        action_ok.insert( primed.begin(), primed.end() );
        if ( auto bad = outside( free_idents( e.action ), action_ok ); !bad.empty() )
            report.violations.push_back( { m.name, name, rules::actions, std::move( bad ), std::nullopt } );
    }
    return report;
}

StaticReport check_static( const Project& p )
{
    StaticReport report;
    for ( const auto& [name, m] : p.machines() )
    {
        auto r = check_machine( m );
        report.violations.insert( report.violations.end(), r.violations.begin(), r.violations.end() );
    }
    return report;
}

Project new_machine( const Project& p, Machine m )
{
    if ( p.contains( m.name ) )
        throw Error{ ErrorCode::DuplicateMachine, "machine '" + m.name + "' already exists" };
    for ( const auto& v : m.vars )
        if ( !v.is_var() )
            throw Error{ ErrorCode::KindError, "'" + v.str() + "' listed as a machine variable" };
    for ( const auto& [name, e] : m.events )
        for ( const auto& q : e.pars )
            if ( !q.is_param() )
                throw Error{ ErrorCode::KindError, "'" + q.str() + "' listed as a parameter of " + name };
    if ( auto report = check_machine( m ); !report.ok() )
        throw StaticViolationError{ std::move( report ) };
    return p.with( std::move( m ) );
}

Project add_machines( const Project& p, std::vector<Machine> ms )
{
    Project out = p;
    for ( auto& m : ms )
        out = new_machine( out, std::move( m ) );
    return out;
}

Project remove_machine( const Project& p, const std::string& name )
{
    return p.without( name );
}

const Machine& get_machine( const Project& p, const std::string& name )
{
    auto it = p.machines().find( name );
    if ( it == p.machines().end() )
        throw Error{ ErrorCode::UnknownMachine, "no machine named '" + name + "'" };
    return it->second;
}

bool equivalent( const Machine& a, const Machine& b )
{
    if ( a.name != b.name || a.vars != b.vars || !equivalent( a.inv, b.inv ) )
        return false;
    if ( a.events.size() != b.events.size() )
        return false;
    for ( const auto& [name, e] : a.events )
    {
        auto it = b.events.find( name );
        if ( it == b.events.end() )
            return false;
        const auto& f = it->second;
        if ( e.pars != f.pars || !equivalent( e.guard, f.guard ) || !equivalent( e.action, f.action ) )
            return false;
    }
    return true;
}

} // namespace ebmeta
