#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "ebmeta/surface/compiler.hpp"
#include "ebmeta/surface/parser.hpp"

namespace ebmeta::test
{

inline std::string corpus( const std::string& name )
{
    return std::string{ EBMETA_CORPUS_DIR } + "/" + name;
}

inline std::string slurp( const std::string& path )
{
    std::ifstream in{ path, std::ios::binary };
    if ( !in )
        throw std::runtime_error{ "cannot read " + path };
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// A universe written in the surface syntax plus a way to compile
// expressions against it.
class Vocabulary
{
    std::vector<surface::Declaration> _decls;
    UniversePtr _u;

public:
    explicit Vocabulary( std::string_view universe_text )
            : _decls{ surface::parse( universe_text ).declarations }, _u{ surface::build_universe( _decls ) }
    {
    }

    [[nodiscard]] const UniversePtr& universe() const { return _u; }
    [[nodiscard]] const std::vector<surface::Declaration>& declarations() const { return _decls; }

    Predicate operator()( std::string_view expr ) const
    {
        return surface::compile_expr( surface::parse_expression( expr, _decls ), _u, _decls );
    }
};

inline surface::CompiledModel compile_text( std::string_view text, bool check_static = true )
{
    surface::CompileOptions options;
    options.check_static = check_static;
    return surface::compile( surface::parse( text ), options );
}

inline surface::CompiledModel compile_file( const std::string& name, bool check_static = true )
{
    return compile_text( slurp( corpus( name ) ), check_static );
}

inline Ident V( const std::string& n )
{
    return Ident::var( n );
}

inline Ident P( const std::string& n )
{
    return Ident::primed( n );
}

inline Ident Q( const std::string& n )
{
    return Ident::param( n );
}

} // namespace ebmeta::test
