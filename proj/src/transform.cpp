#include "ebmeta/transform.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ebmeta
{

namespace
{

Predicate identity( const UniversePtr& u, const Ident& v )
{
    const auto p = prime( v );
    return Predicate::tabulate( u, { v, p }, [&]( const Valuation& s ) { return s.at( v ) == s.at( p ); } );
}

bool is_identity( const Predicate& c )
{
    const auto free = free_idents( c );
    if ( free.size() != 2 )
        return false;
    const auto& v = *free.begin();
    if ( !v.is_var() || !free.count( prime( v ) ) )
        return false;
    return equivalent( c, identity( c.universe(), v ) );
}

class BlockIndex
{
    std::map<std::string, std::size_t> _of;
    const SplitPlan& _plan;

public:
    explicit BlockIndex( const SplitPlan& plan ) : _plan{ plan }
    {
        for ( std::size_t b = 0; b < plan.blocks.size(); ++b )
            for ( const auto& v : plan.blocks[b].vars )
                _of[v.base] = b;
    }

    // Blocks whose variables (primed or not) are free in c.
    [[nodiscard]] std::set<std::size_t> touched( const Predicate& c ) const
    {
        std::set<std::size_t> out;
        for ( const auto& i : free_idents( c ) )
            if ( !i.is_param() )
                if ( auto it = _of.find( i.base ); it != _of.end() )
                    out.insert( it->second );
        return out;
    }

    [[nodiscard]] std::vector<std::string> names( const std::set<std::size_t>& bs ) const
    {
        std::vector<std::string> out;
        for ( auto b : bs )
            out.push_back( _plan.blocks[b].name );
        return out;
    }
};

std::string join( const std::vector<std::string>& xs, const std::string& sep )
{
    std::string out;
    for ( std::size_t i = 0; i < xs.size(); ++i )
        out += ( i ? sep : "" ) + xs[i];
    return out;
}

void validate_plan( const Project& p, const Machine& source, const SplitPlan& plan )
{
    if ( plan.blocks.empty() )
        throw Error{ ErrorCode::InvalidPlan, "plan '" + plan.name + "' has no blocks" };
    IdentSet seen;
    std::set<std::string> names;
    for ( const auto& b : plan.blocks )
    {
        if ( b.vars.empty() )
            throw Error{ ErrorCode::InvalidPlan, "block '" + b.name + "' is empty" };
        if ( !names.insert( b.name ).second )
            throw Error{ ErrorCode::InvalidPlan, "block name '" + b.name + "' is used twice" };
        if ( p.contains( b.name ) )
            throw Error{ ErrorCode::DuplicateMachine, "machine '" + b.name + "' already exists" };
        for ( const auto& v : b.vars )
        {
            if ( !source.vars.count( v ) )
                throw Error{ ErrorCode::InvalidPlan,
                             "'" + v.str() + "' is not a variable of '" + source.name + "'" };
            if ( !seen.insert( v ).second )
                throw Error{ ErrorCode::InvalidPlan, "'" + v.str() + "' appears in two blocks" };
        }
    }
    if ( seen != source.vars )
        throw Error{ ErrorCode::InvalidPlan, "plan '" + plan.name + "' does not cover every variable of '"
                                                     + source.name + "'" };
}

} // namespace

std::vector<Machine> split_submachines( const Project& p, const SplitPlan& plan )
{
    const auto& source = get_machine( p, plan.source );
    validate_plan( p, source, plan );
    if ( auto report = check_machine( source ); !report.ok() )
        throw StaticViolationError{ std::move( report ) };

    const auto& u = p.universe();
    const BlockIndex index{ plan };
    const auto nblocks = plan.blocks.size();

    std::vector<std::vector<Predicate>> inv_parts( nblocks );
    for ( const auto& c : conjuncts( source.inv ) )
    {
        const auto t = index.touched( c );
        if ( t.size() > 1 )
            throw CrossBlockError{ ErrorCode::CrossBlockInvariant, "", to_text( c ), index.names( t ),
                                   "invariant conjunct '" + to_text( c ) + "' spans blocks "
                                           + join( index.names( t ), ", " ) };
        for ( std::size_t b = 0; b < nblocks; ++b )
            if ( t.empty() || t.count( b ) )
                inv_parts[b].push_back( c );
    }

    std::vector<Machine> subs;
    for ( std::size_t b = 0; b < nblocks; ++b )
        subs.push_back( { plan.blocks[b].name, plan.blocks[b].vars, intersect_all( u, inv_parts[b] ), {} } );

    for ( const auto& [name, e] : source.events )
    {
        std::set<std::size_t> target;
        auto visit = [&, &name = name]( const Predicate& c ) {
            const auto t = index.touched( c );
            if ( t.size() > 1 )
                throw CrossBlockError{ ErrorCode::CrossBlockEvent, name, to_text( c ), index.names( t ),
                                       "conjunct '" + to_text( c ) + "' of event '" + name + "' spans blocks "
                                               + join( index.names( t ), ", " ) };
            target.insert( t.begin(), t.end() );
        };
        for ( const auto& c : conjuncts( e.guard ) )
            visit( c );
        const auto action_parts = conjuncts( e.action );
        for ( const auto& c : action_parts )
            if ( !is_identity( c ) )
                visit( c );
        if ( target.size() > 1 )
            throw CrossBlockError{ ErrorCode::CrossBlockEvent, name, "", index.names( target ),
                                   "event '" + name + "' touches blocks " + join( index.names( target ), ", " ) };

        const std::size_t b = target.empty() ? 0 : *target.begin();
        std::vector<Predicate> kept;
        for ( const auto& c : action_parts )
        {
            const auto t = index.touched( c );
            if ( t.empty() || t.count( b ) )
                kept.push_back( c );
        }
        subs[b].events.emplace( name, EventDef{ e.pars, minimize( e.guard ), intersect_all( u, kept ) } );
    }
    return subs;
}

Project split_machine( const Project& p, const SplitPlan& plan )
{
    return add_machines( p, split_submachines( p, plan ) );
}

Machine compose_oracle( const std::vector<Machine>& subs )
{
    if ( subs.empty() )
        throw Error{ ErrorCode::InvalidArgument, "nothing to compose" };
    const auto& u = subs.front().inv.universe();

    Machine out{ "", {}, Predicate::truth( u ), {} };
    std::vector<std::string> names;
    for ( const auto& s : subs )
    {
        for ( const auto& v : s.vars )
            if ( !out.vars.insert( v ).second )
                throw Error{ ErrorCode::OverlappingVars, "'" + v.str() + "' belongs to two submachines" };
        out.inv = intersect( out.inv, s.inv );
        names.push_back( s.name );
    }
    out.name = "compose(" + join( names, "," ) + ")";

    for ( const auto& s : subs )
    {
        std::vector<Predicate> stutter;
        for ( const auto& v : out.vars )
            if ( !s.vars.count( v ) )
                stutter.push_back( identity( u, v ) );
        for ( const auto& [name, e] : s.events )
        {
            EventDef padded{ e.pars, e.guard, intersect( e.action, intersect_all( u, stutter ) ) };
            if ( !out.events.emplace( name, std::move( padded ) ).second )
                throw Error{ ErrorCode::DuplicateEvent, "event '" + name + "' occurs in two submachines" };
        }
    }
    return out;
}

Predicate transition_relation( const Machine& m, const std::string& event, const Predicate& inv )
{
    const auto& e = m.event( event );
    IdentSet scope = m.vars;
    for ( const auto& v : m.vars )
        scope.insert( prime( v ) );
    scope.insert( e.pars.begin(), e.pars.end() );
    return extend( intersect( intersect( inv, e.guard ), e.action ), scope );
}

EquivalenceReport check_split_equivalence( const Machine& source, const std::vector<Machine>& subs )
{
    const auto composed = compose_oracle( subs );
    EquivalenceReport report;
    auto differ = [&]( std::string kind, std::string detail ) {
        report.equal = false;
        report.difference = std::move( kind );
        report.detail = std::move( detail );
        return report;
    };

    if ( composed.vars != source.vars )
        return differ( "variables", to_string( source.vars ) + " vs " + to_string( composed.vars ) );

    if ( auto w = difference_witness( extend( source.inv, source.vars ), composed.inv ) )
    {
        report.state_witness = w;
        return differ( "invariant", to_string( *source.inv.universe(), *w ) );
    }

    std::vector<std::string> only;
    for ( const auto& [name, e] : source.events )
        if ( !composed.events.count( name ) )
            only.push_back( name + " (source only)" );
    for ( const auto& [name, e] : composed.events )
        if ( !source.events.count( name ) )
            only.push_back( name + " (composition only)" );
    if ( !only.empty() )
        return differ( "events", join( only, ", " ) );

    for ( const auto& [name, e] : source.events )
    {
        const auto& f = composed.events.at( name );
        if ( e.pars != f.pars )
            return differ( "parameters", name + ": " + to_string( e.pars ) + " vs " + to_string( f.pars ) );

        const auto rs = transition_relation( source, name, source.inv );
        const auto rc = transition_relation( composed, name, source.inv );
        if ( auto w = difference_witness( rs, rc ) )
        {
            TransitionWitness t;
            t.event = name;
            for ( const auto& [i, v] : *w )
            {
                if ( i.is_var() )
                    t.state[i] = v;
                else if ( i.is_prime() )
                    t.next[unprime( i )] = v;
                else
                    t.params[i] = v;
            }
            t.in_source = rs.contains( *w );
            report.transition = t;
            return differ( "transition", name + ": " + to_string( *source.inv.universe(), *w )
                                                 + ( t.in_source ? " (source only)" : " (composition only)" ) );
        }
    }
    return report;
}

} // namespace ebmeta
