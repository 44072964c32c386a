#include "cvf/lexer.hpp"

#include <cctype>
#include <charconv>

#include "cvf/errors.hpp"

namespace cvf {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char peek2() const { return pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0'; }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  int line() const { return line_; }
  int col() const { return col_; }
  size_t pos() const { return pos_; }
  std::string_view text() const { return text_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw_input("lex error at line " + std::to_string(line_) + ", col " +
                std::to_string(col_) + ": " + what);
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  Cursor cur(text);
  std::vector<Token> out;

  auto push = [&](Token::Kind kind, std::string tok_text, int line, int col) {
    Token t;
    t.kind = kind;
    t.text = std::move(tok_text);
    t.line = line;
    t.col = col;
    out.push_back(std::move(t));
  };

  while (!cur.done()) {
    char c = cur.peek();
    int line = cur.line(), col = cur.col();

    if (std::isspace(static_cast<unsigned char>(c))) {
      cur.advance();
      continue;
    }
    if (c == '#') {
      while (!cur.done() && cur.peek() != '\n') cur.advance();
      continue;
    }

    switch (c) {
      case '{': cur.advance(); push(Token::Kind::LBrace, "{", line, col); continue;
      case '}': cur.advance(); push(Token::Kind::RBrace, "}", line, col); continue;
      case '(': cur.advance(); push(Token::Kind::LParen, "(", line, col); continue;
      case ')': cur.advance(); push(Token::Kind::RParen, ")", line, col); continue;
      case '[': cur.advance(); push(Token::Kind::LBracket, "[", line, col); continue;
      case ']': cur.advance(); push(Token::Kind::RBracket, "]", line, col); continue;
      case ';': cur.advance(); push(Token::Kind::Semicolon, ";", line, col); continue;
      case ',': cur.advance(); push(Token::Kind::Comma, ",", line, col); continue;
      case '+': cur.advance(); push(Token::Kind::Plus, "+", line, col); continue;
      case '-': cur.advance(); push(Token::Kind::Minus, "-", line, col); continue;
      case '*': cur.advance(); push(Token::Kind::Star, "*", line, col); continue;
      case '/': cur.advance(); push(Token::Kind::Slash, "/", line, col); continue;
      case '=': cur.advance(); push(Token::Kind::Equals, "=", line, col); continue;
      default: break;
    }

    if (c == '<') {
      cur.advance();
      std::string iri;
      while (!cur.done() && cur.peek() != '>') {
        char d = cur.advance();
        if (d == '\n') cur.fail("unterminated IRI");
        iri.push_back(d);
      }
      if (cur.done()) cur.fail("unterminated IRI");
      cur.advance();  // '>'
      if (iri.empty()) cur.fail("empty IRI");
      push(Token::Kind::Iri, iri, line, col);
      continue;
    }

    if (c == '"') {
      cur.advance();
      std::string s;
      while (true) {
        if (cur.done()) cur.fail("unterminated string");
        char d = cur.advance();
        if (d == '"') break;
        if (d == '\\') {
          if (cur.done()) cur.fail("unterminated escape");
          char e = cur.advance();
          switch (e) {
            case 'n': s.push_back('\n'); break;
            case 't': s.push_back('\t'); break;
            case 'r': s.push_back('\r'); break;
            case '"': s.push_back('"'); break;
            case '\\': s.push_back('\\'); break;
            default: cur.fail(std::string("unknown escape \\") + e);
          }
        } else {
          s.push_back(d);
        }
      }
      push(Token::Kind::String, s, line, col);
      continue;
    }

    if (c == '?') {
      cur.advance();
      std::string name;
      while (!cur.done() && is_name_char(cur.peek()) && cur.peek() != '-') name.push_back(cur.advance());
      if (name.empty()) cur.fail("empty variable name");
      push(Token::Kind::Var, name, line, col);
      continue;
    }

    if (c == '_' && cur.peek2() == ':') {
      cur.advance();
      cur.advance();
      std::string label;
      while (!cur.done() && is_name_char(cur.peek())) label.push_back(cur.advance());
      if (label.empty()) cur.fail("empty blank node label");
      push(Token::Kind::Blank, label, line, col);
      continue;
    }

    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek())))
        num.push_back(cur.advance());
      if (!cur.done() && cur.peek() == '.' &&
          std::isdigit(static_cast<unsigned char>(cur.peek2()))) {
        num.push_back(cur.advance());
        while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek())))
          num.push_back(cur.advance());
      }
      if (!cur.done() && (cur.peek() == 'e' || cur.peek() == 'E')) {
        size_t mark = num.size();
        num.push_back(cur.advance());
        if (!cur.done() && (cur.peek() == '+' || cur.peek() == '-')) num.push_back(cur.advance());
        if (cur.done() || !std::isdigit(static_cast<unsigned char>(cur.peek())))
          cur.fail("malformed exponent in number");
        while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek())))
          num.push_back(cur.advance());
        (void)mark;
      }
      double value = 0;
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
      if (ec != std::errc() || ptr != num.data() + num.size())
        cur.fail("malformed number '" + num + "'");
      Token t;
      t.kind = Token::Kind::Number;
      t.text = num;
      t.number = value;
      t.line = line;
      t.col = col;
      out.push_back(std::move(t));
      continue;
    }

    // Prefixed name with explicit prefix (name:local) or default prefix (:local).
    if (c == ':' || is_name_start(c)) {
      std::string word;
      if (is_name_start(c)) {
        while (!cur.done() && is_name_char(cur.peek())) word.push_back(cur.advance());
      }
      if (!cur.done() && cur.peek() == ':') {
        cur.advance();
        std::string local;
        while (!cur.done() && is_name_char(cur.peek())) local.push_back(cur.advance());
        if (local.empty()) cur.fail("prefixed name '" + word + ":' lacks a local part");
        push(Token::Kind::Pname, word + ":" + local, line, col);
      } else {
        if (word.empty()) cur.fail("stray ':'");
        push(Token::Kind::Name, word, line, col);
      }
      continue;
    }

    if (c == '.') {
      cur.advance();
      push(Token::Kind::Dot, ".", line, col);
      continue;
    }

    cur.fail(std::string("unexpected character '") + c + "'");
  }

  Token end;
  end.kind = Token::Kind::End;
  end.line = cur.line();
  end.col = cur.col();
  out.push_back(end);
  return out;
}

const char* token_kind_name(Token::Kind kind) {
  switch (kind) {
    case Token::Kind::LBrace: return "'{'";
    case Token::Kind::RBrace: return "'}'";
    case Token::Kind::LParen: return "'('";
    case Token::Kind::RParen: return "')'";
    case Token::Kind::LBracket: return "'['";
    case Token::Kind::RBracket: return "']'";
    case Token::Kind::Dot: return "'.'";
    case Token::Kind::Semicolon: return "';'";
    case Token::Kind::Comma: return "','";
    case Token::Kind::Plus: return "'+'";
    case Token::Kind::Minus: return "'-'";
    case Token::Kind::Star: return "'*'";
    case Token::Kind::Slash: return "'/'";
    case Token::Kind::Equals: return "'='";
    case Token::Kind::Iri: return "IRI";
    case Token::Kind::Pname: return "prefixed name";
    case Token::Kind::Var: return "variable";
    case Token::Kind::Blank: return "blank node";
    case Token::Kind::Number: return "number";
    case Token::Kind::String: return "string";
    case Token::Kind::Name: return "name";
    case Token::Kind::End: return "end of input";
  }
  return "?";
}

}  // namespace cvf
