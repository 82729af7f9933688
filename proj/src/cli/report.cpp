#include "report.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <memory>
#include <sstream>

namespace ebmeta::cli
{

std::string sha256_hex( const std::string& bytes )
{
    std::unique_ptr<EVP_MD_CTX, decltype( &EVP_MD_CTX_free )> ctx{ EVP_MD_CTX_new(), &EVP_MD_CTX_free };
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if ( !ctx || EVP_DigestInit_ex( ctx.get(), EVP_sha256(), nullptr ) != 1
         || EVP_DigestUpdate( ctx.get(), bytes.data(), bytes.size() ) != 1
         || EVP_DigestFinal_ex( ctx.get(), digest, &len ) != 1 )
        throw Error{ ErrorCode::InvalidArgument, "sha256 failed" };
    std::ostringstream out;
    out << std::hex << std::setfill( '0' );
    for ( unsigned int i = 0; i < len; ++i )
        out << std::setw( 2 ) << static_cast<int>( digest[i] );
    return out.str();
}

Json value_json( const Value& v )
{
    switch ( v.kind )
    {
    case Value::Kind::Bool: return v.number != 0;
    case Value::Kind::Int: return v.number;
    case Value::Kind::Symbol: return v.symbol;
    }
    return nullptr;
}

Json valuation_json( const Universe& u, const Valuation& v )
{
    Json out = Json::object();
    for ( const auto& [ident, index] : v )
        out[ident.str()] = value_json( u.domain_of( ident ).at( index ) );
    return out;
}

Json idents_json( const IdentSet& s )
{
    Json out = Json::array();
    for ( const auto& i : s )
        out.push_back( i.str() );
    return out;
}

Json predicate_json( const Predicate& p )
{
    const auto free = free_idents( p );
    Json out{ { "text", to_text( p ) }, { "free", idents_json( free ) } };
    if ( decomposable( p ) && !p.unsatisfiable() )
    {
        Json values = Json::object();
        for ( const auto& i : free )
        {
            const auto col = proj( { i }, p );
            Json vs = Json::array();
            for ( const auto& row : col.rows() )
                vs.push_back( value_json( p.universe()->domain_of( i ).at( row[0] ) ) );
            values[i.str()] = std::move( vs );
        }
        out["values"] = std::move( values );
    }
    return out;
}

Json states_json( const std::map<std::string, Predicate>& active )
{
    Json out = Json::object();
    for ( const auto& [name, state] : active )
        out[name] = predicate_json( state );
    return out;
}

Json violation_json( const Violation& v )
{
    Json out{ { "machine", v.machine },
              { "event", v.event ? Json( *v.event ) : Json( nullptr ) },
              { "rule", v.rule },
              { "offending", idents_json( v.offending ) } };
    if ( v.where )
        out["location"] = { { "line", v.where->line }, { "column", v.where->column } };
    return out;
}

Json warning_json( const StepWarning& w )
{
    return { { "machine", w.machine }, { "rule", w.rule }, { "message", w.message } };
}

} // namespace ebmeta::cli
