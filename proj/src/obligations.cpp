#include "ebmeta/obligations.hpp"

namespace ebmeta
{

namespace
{

Renaming next_map( const IdentSet& vars )
{
    Renaming r;
    for ( const auto& v : vars )
        r.emplace( v, prime( v ) );
    return r;
}

} // namespace

ObligationResult po_inv_preservation( const Machine& m, const std::string& event )
{
    const auto& e = m.event( event );
    const auto before = intersect( intersect( m.inv, e.guard ), e.action );
    const auto after = subst( next_map( m.vars ), m.inv );

    ObligationResult result{ m.name, event, ObligationStatus::Holds, std::nullopt };
    if ( entails( before, after ) )
        return result;

    // Enumerate over vars u vars' u pars(e) only; the static constraints make
    // this equivalent to the inclusion over the whole cylinder.
    IdentSet scope = m.vars;
    for ( const auto& v : m.vars )
        scope.insert( prime( v ) );
    scope.insert( e.pars.begin(), e.pars.end() );
    result.status = ObligationStatus::Fails;
    result.counterexample = entailment_witness( extend( before, scope ), after );
    return result;
}

std::vector<ObligationResult> po_all( const Project& p )
{
    std::vector<ObligationResult> out;
    for ( const auto& [name, m] : p.machines() )
        for ( const auto& [e, def] : m.events )
            out.push_back( po_inv_preservation( m, e ) );
    return out;
}

std::string to_string( ObligationStatus s )
{
    return s == ObligationStatus::Holds ? "Holds" : "Fails";
}

} // namespace ebmeta
