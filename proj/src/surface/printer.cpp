#include "ebmeta/surface/parser.hpp"

#include <sstream>

namespace ebmeta::surface
{

namespace
{

int precedence( Expr::Kind k )
{
    switch ( k )
    {
    case Expr::Kind::Or: return 1;
    case Expr::Kind::And: return 2;
    case Expr::Kind::Not: return 3;
    case Expr::Kind::Eq:
    case Expr::Kind::Ne:
    case Expr::Kind::Lt:
    case Expr::Kind::Le:
    case Expr::Kind::Gt:
    case Expr::Kind::Ge: return 4;
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 5;
    case Expr::Kind::Neg: return 6;
    default: return 7;
    }
}

const char* symbol( Expr::Kind k )
{
    switch ( k )
    {
    case Expr::Kind::Or: return " | ";
    case Expr::Kind::And: return " & ";
    case Expr::Kind::Eq: return " = ";
    case Expr::Kind::Ne: return " != ";
    case Expr::Kind::Lt: return " < ";
    case Expr::Kind::Le: return " <= ";
    case Expr::Kind::Gt: return " > ";
    case Expr::Kind::Ge: return " >= ";
    case Expr::Kind::Add: return " + ";
    case Expr::Kind::Sub: return " - ";
    default: return "?";
    }
}

std::string render( const Expr& e, int context )
{
    const int prec = precedence( e.kind );
    std::string s;
    switch ( e.kind )
    {
    case Expr::Kind::BoolLit: s = e.truth ? "true" : "false"; break;
    case Expr::Kind::IntLit: s = std::to_string( e.number ); break;
    case Expr::Kind::Name: s = e.name + ( e.primed ? "'" : "" ); break;
    case Expr::Kind::Not: s = "!" + render( e.args[0], prec ); break;
    case Expr::Kind::Neg: s = "-" + render( e.args[0], prec ); break;
    default:
    {
        // Left-associative chains; comparisons do not chain at all.
        const bool relational = prec == 4;
        s = render( e.args[0], relational ? prec + 1 : prec ) + symbol( e.kind ) + render( e.args[1], prec + 1 );
        break;
    }
    }
    return prec < context ? "(" + s + ")" : s;
}

std::string domain( const DomainDecl& d )
{
    switch ( d.kind )
    {
    case DomainDecl::Kind::Bool: return "BOOL";
    case DomainDecl::Kind::Range: return std::to_string( d.low ) + ".." + std::to_string( d.high );
    case DomainDecl::Kind::Enum:
    {
        std::string out = "enum {";
        for ( std::size_t i = 0; i < d.symbols.size(); ++i )
            out += ( i ? ", " : " " ) + d.symbols[i];
        return out + " }";
    }
    }
    return "?";
}

std::string names( const std::vector<NameRef>& ns )
{
    std::string out;
    for ( std::size_t i = 0; i < ns.size(); ++i )
        out += ( i ? ", " : "" ) + ns[i].name;
    return out;
}

} // namespace

std::string print( const Expr& e )
{
    return render( e, 0 );
}

std::string print( const SourceModel& m )
{
    std::ostringstream out;
    if ( !m.declarations.empty() )
    {
        out << "universe\n";
        for ( const auto& d : m.declarations )
            out << "  " << ( d.role == IdentKind::Param ? "param " : "var " ) << d.name << " : " << domain( d.domain )
                << "\n";
        out << "end\n";
    }
    for ( const auto& mach : m.machines )
    {
        out << "\nmachine " << mach.name << "\n";
        if ( !mach.vars.empty() )
            out << "  variables " << names( mach.vars ) << "\n";
        if ( mach.invariant )
            out << "  invariant " << print( *mach.invariant ) << "\n";
        for ( const auto& e : mach.events )
        {
            out << "  event " << e.name << "\n";
            if ( !e.params.empty() )
                out << "    any " << names( e.params ) << "\n";
            if ( e.guard )
                out << "    where " << print( *e.guard ) << "\n";
            if ( e.action )
                out << "    then " << print( *e.action ) << "\n";
            out << "  end\n";
        }
        out << "end\n";
    }
    if ( !m.inits.empty() )
        out << "\n";
    for ( const auto& i : m.inits )
        out << "init " << i.machine << " : " << print( i.state ) << "\n";
    for ( const auto& s : m.splits )
    {
        out << "\nsplit " << s.name << " of " << s.source << "\n";
        for ( const auto& b : s.blocks )
            out << "  " << b.name << " : " << names( b.vars ) << "\n";
        out << "end\n";
    }
    return out.str();
}

} // namespace ebmeta::surface
