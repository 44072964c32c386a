#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cvf {

// Shared tokenizer for the query grammar, triple files, technique files and
// scene files. Keywords are plain Name tokens; the parsers match by value.
struct Token {
  enum class Kind {
    LBrace, RBrace, LParen, RParen, LBracket, RBracket,
    Dot, Semicolon, Comma, Plus, Minus, Star, Slash, Equals,
    Iri,      // <...> with brackets stripped
    Pname,    // prefix:local, text holds the raw form
    Var,      // ?name, text holds name
    Blank,    // _:label, text holds label
    Number,
    String,   // text holds unescaped content
    Name,     // bare identifier, may contain '-'
    End,
  };
  Kind kind;
  std::string text;
  double number = 0;
  int line = 1;
  int col = 1;
};

// Tokenizes the whole input. '#' starts a comment running to end of line.
// Throws Error(Input) with line/column on malformed input.
std::vector<Token> tokenize(std::string_view text);

const char* token_kind_name(Token::Kind kind);

}  // namespace cvf
