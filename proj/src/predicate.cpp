#include "ebmeta/predicate.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ebmeta
{

namespace
{

void sort_unique( std::vector<Row>& rows )
{
    std::sort( rows.begin(), rows.end() );
    rows.erase( std::unique( rows.begin(), rows.end() ), rows.end() );
}

// Idents of q's scope must agree with p's universe on their domains.
void check_compatible( const Predicate& p, const Predicate& q )
{
    if ( p.universe() == q.universe() )
        return;
    for ( const auto& i : q.scope() )
    {
        if ( !p.universe()->knows( i ) )
            throw Error{ ErrorCode::DomainMismatch, "'" + i.str() + "' is not declared on the left-hand side" };
        if ( !( p.universe()->domain_of( i ) == q.universe()->domain_of( i ) ) )
            throw Error{ ErrorCode::DomainMismatch, "'" + i.str() + "' has different domains" };
    }
}

std::vector<std::size_t> columns_of( const std::vector<Ident>& scope, const IdentSet& which )
{
    std::vector<std::size_t> out;
    for ( std::size_t c = 0; c < scope.size(); ++c )
        if ( which.count( scope[c] ) )
            out.push_back( c );
    return out;
}

Row pick( const Row& row, const std::vector<std::size_t>& cols )
{
    Row out;
    out.reserve( cols.size() );
    for ( auto c : cols )
        out.push_back( row[c] );
    return out;
}

std::size_t distinct_count( const std::vector<Row>& rows, const std::vector<std::size_t>& cols )
{
    std::vector<Row> picked;
    picked.reserve( rows.size() );
    for ( const auto& r : rows )
        picked.push_back( pick( r, cols ) );
    sort_unique( picked );
    return picked.size();
}

} // namespace

Predicate::Predicate( UniversePtr u, std::vector<Ident> scope, std::vector<Row> rows, Trusted )
        : _universe{ std::move( u ) }, _scope{ std::move( scope ) }, _rows{ std::move( rows ) }
{
}

Predicate Predicate::from_rows( UniversePtr u, std::vector<Ident> scope, std::vector<Row> rows )
{
    if ( !u )
        throw Error{ ErrorCode::InvalidArgument, "predicate without a universe" };

    std::vector<std::size_t> order( scope.size() );
    std::iota( order.begin(), order.end(), 0 );
    std::sort( order.begin(), order.end(), [&]( auto a, auto b ) { return scope[a] < scope[b]; } );

    std::vector<Ident> sorted_scope;
    std::vector<std::uint32_t> sizes;
    for ( auto c : order )
    {
        if ( !sorted_scope.empty() && sorted_scope.back() == scope[c] )
            throw Error{ ErrorCode::InvalidArgument, "duplicate scope ident '" + scope[c].str() + "'" };
        sorted_scope.push_back( scope[c] );
        sizes.push_back( u->domain_of( scope[c] ).size() );
    }

    std::vector<Row> sorted_rows;
    sorted_rows.reserve( rows.size() );
    for ( const auto& r : rows )
    {
        if ( r.size() != scope.size() )
            throw Error{ ErrorCode::InvalidArgument, "row width does not match scope" };
        Row out = pick( r, order );
        for ( std::size_t c = 0; c < out.size(); ++c )
            if ( out[c] >= sizes[c] )
                throw Error{ ErrorCode::DomainMismatch,
                             "value index out of the domain of '" + sorted_scope[c].str() + "'" };
        sorted_rows.push_back( std::move( out ) );
    }
    sort_unique( sorted_rows );
    return Predicate{ std::move( u ), std::move( sorted_scope ), std::move( sorted_rows ), Trusted{} };
}

Predicate Predicate::truth( UniversePtr u )
{
    return Predicate{ std::move( u ), {}, { Row{} }, Trusted{} };
}

Predicate Predicate::falsity( UniversePtr u )
{
    return Predicate{ std::move( u ), {}, {}, Trusted{} };
}

Predicate Predicate::full( UniversePtr u, const IdentSet& scope )
{
    return tabulate( std::move( u ), scope, []( const Valuation& ) { return true; } );
}

Predicate Predicate::point( UniversePtr u, const Valuation& state )
{
    std::vector<Ident> scope;
    Row row;
    for ( const auto& [i, v] : state )
    {
        scope.push_back( i );
        row.push_back( v );
    }
    return from_rows( std::move( u ), std::move( scope ), { std::move( row ) } );
}

Predicate Predicate::tabulate( UniversePtr u, const IdentSet& scope,
                               const std::function<bool( const Valuation& )>& test )
{
    std::vector<Ident> cols( scope.begin(), scope.end() );
    std::vector<std::uint32_t> sizes;
    for ( const auto& i : cols )
        sizes.push_back( u->domain_of( i ).size() );

    // Odometer over the columns, last column fastest: rows come out sorted.
    std::vector<Row> rows;
    Row cur( cols.size(), 0 );
    Valuation state;
    for ( const auto& i : cols )
        state[i] = 0;
    bool done = false;
    while ( !done )
    {
        if ( test( state ) )
            rows.push_back( cur );
        done = true;
        for ( std::size_t c = cols.size(); c-- > 0; )
        {
            if ( ++cur[c] < sizes[c] )
            {
                state[cols[c]] = cur[c];
                done = false;
                break;
            }
            cur[c] = 0;
            state[cols[c]] = 0;
        }
    }
    return Predicate{ std::move( u ), std::move( cols ), std::move( rows ), Trusted{} };
}

std::optional<std::size_t> Predicate::column( const Ident& i ) const
{
    auto it = std::lower_bound( _scope.begin(), _scope.end(), i );
    if ( it == _scope.end() || *it != i )
        return std::nullopt;
    return static_cast<std::size_t>( it - _scope.begin() );
}

Valuation Predicate::valuation( std::size_t row ) const
{
    Valuation out;
    for ( std::size_t c = 0; c < _scope.size(); ++c )
        out[_scope[c]] = _rows.at( row )[c];
    return out;
}

bool Predicate::contains( const Valuation& state ) const
{
    Row key;
    key.reserve( _scope.size() );
    for ( const auto& i : _scope )
    {
        auto it = state.find( i );
        if ( it == state.end() )
            throw Error{ ErrorCode::InvalidArgument, "state does not bind '" + i.str() + "'" };
        key.push_back( it->second );
    }
    return std::binary_search( _rows.begin(), _rows.end(), key );
}

IdentSet free_idents( const Predicate& p )
{
    IdentSet out;
    const auto& scope = p.scope();
    for ( std::size_t c = 0; c < scope.size(); ++c )
    {
        const auto dsize = p.universe()->domain_of( scope[c] ).size();
        // Group rows by every other column; c is free iff some group misses
        // a value of c.
        std::map<Row, std::uint32_t> groups;
        for ( const auto& r : p.rows() )
        {
            Row key = r;
            key.erase( key.begin() + static_cast<std::ptrdiff_t>( c ) );
            ++groups[key];
        }
        for ( const auto& [key, count] : groups )
        {
            if ( count < dsize )
            {
                out.insert( scope[c] );
                break;
            }
        }
    }
    return out;
}

Predicate proj( const IdentSet& keep, const Predicate& p )
{
    const auto cols = columns_of( p.scope(), keep );
    if ( cols.size() == p.scope().size() )
        return p;
    std::vector<Ident> scope;
    for ( auto c : cols )
        scope.push_back( p.scope()[c] );
    std::vector<Row> rows;
    rows.reserve( p.size() );
    for ( const auto& r : p.rows() )
        rows.push_back( pick( r, cols ) );
    sort_unique( rows );
    return Predicate::from_rows( p.universe(), std::move( scope ), std::move( rows ) );
}

Predicate minimize( const Predicate& p )
{
    return proj( free_idents( p ), p );
}

Predicate subst( const Renaming& r, const Predicate& p )
{
    const auto m = minimize( p );
    const auto& u = *m.universe();

    std::vector<Ident> renamed;
    std::map<Ident, Ident> origin; // target -> source
    for ( const auto& i : m.scope() )
    {
        auto it = r.find( i );
        const Ident target = it == r.end() ? i : it->second;
        if ( it != r.end() )
        {
            if ( !u.knows( target ) )
                throw Error{ ErrorCode::DomainMismatch, "'" + target.str() + "' is not declared" };
            if ( !( u.domain_of( target ) == u.domain_of( i ) ) )
                throw Error{ ErrorCode::DomainMismatch,
                             "'" + i.str() + "' and '" + target.str() + "' have different domains" };
        }
        auto [pos, fresh] = origin.emplace( target, i );
        if ( !fresh )
        {
            const bool both_renamed = r.count( pos->second ) && r.count( i );
            throw Error{ both_renamed ? ErrorCode::NonInjective : ErrorCode::CaptureError,
                         "renaming maps '" + pos->second.str() + "' and '" + i.str() + "' onto '"
                                 + target.str() + "'" };
        }
        renamed.push_back( target );
    }
    return Predicate::from_rows( m.universe(), std::move( renamed ), m.rows() );
}

Predicate intersect( const Predicate& p, const Predicate& q )
{
    check_compatible( p, q );

    std::vector<std::size_t> p_common, q_common, q_only;
    for ( std::size_t c = 0; c < q.scope().size(); ++c )
    {
        if ( auto pc = p.column( q.scope()[c] ) )
        {
            p_common.push_back( *pc );
            q_common.push_back( c );
        }
        else
        {
            q_only.push_back( c );
        }
    }

    std::map<Row, std::vector<Row>> index;
    for ( const auto& r : q.rows() )
        index[pick( r, q_common )].push_back( pick( r, q_only ) );

    std::vector<Ident> scope = p.scope();
    for ( auto c : q_only )
        scope.push_back( q.scope()[c] );

    std::vector<Row> rows;
    for ( const auto& r : p.rows() )
    {
        auto it = index.find( pick( r, p_common ) );
        if ( it == index.end() )
            continue;
        for ( const auto& rest : it->second )
        {
            Row joined = r;
            joined.insert( joined.end(), rest.begin(), rest.end() );
            rows.push_back( std::move( joined ) );
        }
    }
    return Predicate::from_rows( p.universe(), std::move( scope ), std::move( rows ) );
}

Predicate intersect_all( const UniversePtr& u, const std::vector<Predicate>& ps )
{
    auto acc = Predicate::truth( u );
    for ( const auto& p : ps )
        acc = intersect( acc, p );
    return acc;
}

Predicate extend( const Predicate& p, const IdentSet& scope )
{
    IdentSet missing;
    for ( const auto& i : scope )
        if ( !p.column( i ) )
            missing.insert( i );
    if ( missing.empty() )
        return p;
    return intersect( p, Predicate::full( p.universe(), missing ) );
}

Predicate complement( const Predicate& p )
{
    return Predicate::tabulate( p.universe(), p.scope_set(),
                                [&]( const Valuation& s ) { return !p.contains( s ); } );
}

bool entails( const Predicate& p, const Predicate& q )
{
    check_compatible( p, q );
    // p n q is a subset of the cylinder extension of p; compare sizes.
    std::size_t extension = p.size();
    for ( const auto& i : q.scope() )
        if ( !p.column( i ) )
            extension *= p.universe()->domain_of( i ).size();
    return intersect( p, q ).size() == extension;
}

std::optional<Valuation> entailment_witness( const Predicate& p, const Predicate& q )
{
    check_compatible( p, q );
    auto all = p.scope_set();
    all.insert( q.scope().begin(), q.scope().end() );
    const auto ep = extend( p, all );
    for ( std::size_t r = 0; r < ep.size(); ++r )
    {
        auto state = ep.valuation( r );
        if ( !q.contains( state ) )
            return state;
    }
    return std::nullopt;
}

bool equivalent( const Predicate& p, const Predicate& q )
{
    check_compatible( p, q );
    // free() is a semantic property, so minimal tables are canonical.
    return minimize( p ) == minimize( q );
}

std::optional<Valuation> difference_witness( const Predicate& p, const Predicate& q )
{
    check_compatible( p, q );
    auto all = p.scope_set();
    all.insert( q.scope().begin(), q.scope().end() );
    const auto ep = extend( p, all );
    const auto eq = extend( q, all );
    const auto& a = ep.rows();
    const auto& b = eq.rows();
    std::size_t i = 0, j = 0;
    while ( i < a.size() || j < b.size() )
    {
        if ( j == b.size() || ( i < a.size() && a[i] < b[j] ) )
            return ep.valuation( i );
        if ( i == a.size() || b[j] < a[i] )
            return eq.valuation( j );
        ++i;
        ++j;
    }
    return std::nullopt;
}

bool lossless( const Predicate& p, const std::vector<IdentSet>& blocks )
{
    const auto m = minimize( p );
    if ( m.unsatisfiable() )
        return blocks.empty();
    // m is contained in the product of its projections; equal sizes mean equal sets.
    std::size_t product = 1;
    for ( const auto& b : blocks )
        product *= distinct_count( m.rows(), columns_of( m.scope(), b ) );
    return product == m.size();
}

std::vector<IdentSet> conjunct_blocks( const Predicate& p )
{
    auto rel = minimize( p );
    std::vector<Ident> remaining = rel.scope();
    std::vector<IdentSet> blocks;
    if ( rel.unsatisfiable() )
        return blocks;

    // Sets A with rel = proj(A) x proj(complement A) are closed under
    // intersection and complement, so the smallest such set containing the
    // least remaining ident is its prime factor. Peel factors off one by one.
    while ( !remaining.empty() )
    {
        const Ident lead = remaining.front();
        const std::vector<Ident> others( remaining.begin() + 1, remaining.end() );
        const std::size_t n = others.size();

        std::optional<IdentSet> found;
        for ( std::size_t k = 0; k <= n && !found; ++k )
        {
            // k-combinations of `others` in lexicographic order.
            std::vector<bool> mask( n, false );
            std::fill( mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>( k ), true );
            do
            {
                IdentSet block{ lead };
                IdentSet rest;
                for ( std::size_t i = 0; i < n; ++i )
                    ( mask[i] ? block : rest ).insert( others[i] );
                const auto left = distinct_count( rel.rows(), columns_of( rel.scope(), block ) );
                const auto right = distinct_count( rel.rows(), columns_of( rel.scope(), rest ) );
                if ( left * right == rel.size() )
                {
                    found = std::move( block );
                    break;
                }
            } while ( std::prev_permutation( mask.begin(), mask.end() ) );
        }

        IdentSet rest;
        for ( const auto& i : remaining )
            if ( !found->count( i ) )
                rest.insert( i );
        blocks.push_back( *found );
        rel = proj( rest, rel );
        remaining.assign( rest.begin(), rest.end() );
    }
    return blocks;
}

std::vector<Predicate> conjuncts( const Predicate& p )
{
    const auto blocks = conjunct_blocks( p );
    if ( blocks.empty() )
        return { p };
    std::vector<Predicate> out;
    out.reserve( blocks.size() );
    for ( const auto& b : blocks )
        out.push_back( proj( b, p ) );
    return out;
}

bool decomposable( const Predicate& p )
{
    const auto blocks = conjunct_blocks( p );
    return std::all_of( blocks.begin(), blocks.end(), []( const auto& b ) { return b.size() == 1; } );
}

namespace
{

std::string atom( const Ident& i, const Value& v )
{
    return i.str() + " = " + v.str();
}

std::string render_conjunct( const Predicate& c )
{
    const auto& u = *c.universe();
    std::vector<std::string> disjuncts;
    for ( const auto& row : c.rows() )
    {
        std::string term;
        for ( std::size_t col = 0; col < c.scope().size(); ++col )
        {
            if ( !term.empty() )
                term += " & ";
            term += atom( c.scope()[col], u.domain_of( c.scope()[col] ).at( row[col] ) );
        }
        disjuncts.push_back( c.scope().size() > 1 && c.size() > 1 ? "(" + term + ")" : term );
    }
    if ( disjuncts.size() == 1 )
        return disjuncts.front();
    std::string out = "(";
    for ( std::size_t i = 0; i < disjuncts.size(); ++i )
        out += ( i ? " | " : "" ) + disjuncts[i];
    return out + ")";
}

} // namespace

std::string to_text( const Predicate& p )
{
    const auto m = minimize( p );
    if ( m.scope().empty() )
        return m.unsatisfiable() ? "false" : "true";
    std::string out;
    for ( const auto& c : conjuncts( m ) )
        out += ( out.empty() ? "" : " & " ) + render_conjunct( c );
    return out;
}

} // namespace ebmeta
