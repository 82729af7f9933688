#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ebmeta/error.hpp"

namespace ebmeta::surface
{

enum class Tok
{
    Name,
    Int,
    Colon,
    DotDot,
    LBrace,
    RBrace,
    Comma,
    LParen,
    RParen,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    And,
    Or,
    Not,
    Eof,
};

struct Token
{
    Tok kind = Tok::Eof;
    std::string text;
    bool primed = false; // Name immediately followed by '
    std::int64_t number = 0;
    SourceLocation where;
};

// ASCII and Unicode spellings of the operators are both accepted; `//` and
// `#` start comments. Throws SourceError(SyntaxError).
std::vector<Token> tokenize( std::string_view text );

std::string describe( const Token& t );

} // namespace ebmeta::surface
