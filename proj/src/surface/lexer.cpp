#include "lexer.hpp"

#include <cctype>
#include <limits>
#include <utility>

namespace ebmeta::surface
{

namespace
{

struct Spelling
{
    std::string_view text;
    Tok kind;
};

// Longest spellings first.
constexpr Spelling operators[] = {
    { "\xE2\x89\xA0", Tok::Ne }, // U+2260
    { "\xE2\x89\xA4", Tok::Le }, // U+2264
    { "\xE2\x89\xA5", Tok::Ge }, // U+2265
    { "\xE2\x88\xA7", Tok::And }, // U+2227
    { "\xE2\x88\xA8", Tok::Or }, // U+2228
    { "\xE2\x88\x92", Tok::Minus }, // U+2212
    { "\xC2\xAC", Tok::Not }, // U+00AC
    { "!=", Tok::Ne },
    { "/=", Tok::Ne },
    { "<=", Tok::Le },
    { ">=", Tok::Ge },
    { "..", Tok::DotDot },
    { "&&", Tok::And },
    { "||", Tok::Or },
    { "=", Tok::Eq },
    { "<", Tok::Lt },
    { ">", Tok::Gt },
    { "+", Tok::Plus },
    { "-", Tok::Minus },
    { "&", Tok::And },
    { "|", Tok::Or },
    { "!", Tok::Not },
    { ":", Tok::Colon },
    { "{", Tok::LBrace },
    { "}", Tok::RBrace },
    { ",", Tok::Comma },
    { "(", Tok::LParen },
    { ")", Tok::RParen },
};

bool name_start( char c )
{
    return std::isalpha( static_cast<unsigned char>( c ) ) || c == '_';
}

bool name_char( char c )
{
    return std::isalnum( static_cast<unsigned char>( c ) ) || c == '_';
}

} // namespace

std::vector<Token> tokenize( std::string_view text )
{
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1, column = 1;

    auto advance = [&]( std::size_t n ) {
        for ( std::size_t k = 0; k < n && i < text.size(); ++k, ++i )
        {
            const auto c = static_cast<unsigned char>( text[i] );
            if ( c == '\n' )
            {
                ++line;
                column = 1;
            }
            else if ( ( c & 0xC0 ) != 0x80 )
            {
                ++column;
            }
        }
    };

    while ( i < text.size() )
    {
        const char c = text[i];
        if ( std::isspace( static_cast<unsigned char>( c ) ) )
        {
            advance( 1 );
            continue;
        }
        if ( c == '#' || text.substr( i, 2 ) == "//" )
        {
            while ( i < text.size() && text[i] != '\n' )
                advance( 1 );
            continue;
        }

        Token tok;
        tok.where = { line, column };
        if ( name_start( c ) )
        {
            std::size_t j = i;
            while ( j < text.size() && name_char( text[j] ) )
                ++j;
            tok.text = std::string{ text.substr( i, j - i ) };
            advance( j - i );
            if ( tok.text == "and" )
                tok.kind = Tok::And;
            else if ( tok.text == "or" )
                tok.kind = Tok::Or;
            else if ( tok.text == "not" )
                tok.kind = Tok::Not;
            else
                tok.kind = Tok::Name;
            if ( tok.kind == Tok::Name && i < text.size() && text[i] == '\'' )
            {
                tok.primed = true;
                advance( 1 );
            }
            out.push_back( std::move( tok ) );
            continue;
        }
        if ( std::isdigit( static_cast<unsigned char>( c ) ) )
        {
            std::size_t j = i;
            std::int64_t n = 0;
            while ( j < text.size() && std::isdigit( static_cast<unsigned char>( text[j] ) ) )
            {
                const int d = text[j] - '0';
                if ( n > ( std::numeric_limits<std::int64_t>::max() - d ) / 10 )
                    throw SourceError{ ErrorCode::SyntaxError, "integer literal too large", tok.where };
                n = n * 10 + d;
                ++j;
            }
            tok.kind = Tok::Int;
            tok.number = n;
            tok.text = std::string{ text.substr( i, j - i ) };
            advance( j - i );
            out.push_back( std::move( tok ) );
            continue;
        }

        bool matched = false;
        for ( const auto& op : operators )
        {
            if ( text.substr( i, op.text.size() ) == op.text )
            {
                tok.kind = op.kind;
                tok.text = std::string{ op.text };
                advance( op.text.size() );
                out.push_back( std::move( tok ) );
                matched = true;
                break;
            }
        }
        if ( !matched )
            throw SourceError{ ErrorCode::SyntaxError, std::string{ "unexpected character '" } + c + "'", tok.where };
    }

    Token eof;
    eof.kind = Tok::Eof;
    eof.where = { line, column };
    out.push_back( eof );
    return out;
}

std::string describe( const Token& t )
{
    switch ( t.kind )
    {
    case Tok::Eof: return "end of input";
    case Tok::Name: return "'" + t.text + ( t.primed ? "'" : "" ) + "'";
    default: return "'" + t.text + "'";
    }
}

} // namespace ebmeta::surface
