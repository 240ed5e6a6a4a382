#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "rnaicgf/cgf.hpp"

namespace rnaicgf {
namespace {

enum class Tok { Name, Int, Number, Sym, End };

struct Token {
  Tok type = Tok::End;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token tok{Tok::Sym, {}, line, col};
    std::size_t start = i;
    if (is_name_start(c)) {
      std::size_t j = i;
      while (j < text.size() && is_name_char(text[j])) ++j;
      tok.type = Tok::Name;
      tok.text = std::string(text.substr(start, j - start));
      advance(j - i);
    } else if (is_digit(c)) {
      std::size_t j = i;
      while (j < text.size() && is_digit(text[j])) ++j;
      bool real = false;
      if (j + 1 < text.size() && text[j] == '.' && is_digit(text[j + 1])) {
        real = true;
        ++j;
        while (j < text.size() && is_digit(text[j])) ++j;
      }
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && is_digit(text[k])) {
          real = true;
          j = k;
          while (j < text.size() && is_digit(text[j])) ++j;
        }
      }
      tok.type = real ? Tok::Number : Tok::Int;
      tok.text = std::string(text.substr(start, j - start));
      advance(j - i);
    } else if (std::string_view("=.+()|*@?![]").find(c) != std::string_view::npos) {
      tok.text = std::string(1, c);
      advance(1);
    } else {
      throw CgfError(CgfErrorKind::Syntax, std::string("unexpected character '") + c + "'",
                     line, col);
    }
    out.push_back(std::move(tok));
  }
  out.push_back(Token{Tok::End, {}, line, col});
  return out;
}

bool is_keyword(const std::string& s) { return s == "tau" || s == "init" || s == "fix"; }

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  CgfProgram parse() {
    while (!(peek().type == Tok::Name && peek().text == "init")) {
      if (peek().type == Tok::End) fail(peek(), "missing 'init' line");
      parse_definition();
    }
    next();  // init
    program_.init = parse_solution();
    if (peek().type != Tok::End) fail(peek(), "unexpected '" + peek().text + "' after init");
    resolve();
    return std::move(program_);
  }

 private:
  struct Use {
    std::string name;
    std::size_t line;
    std::size_t column;
  };

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool at_sym(char c) const { return peek().type == Tok::Sym && peek().text[0] == c; }
  bool at_name(const char* s) const { return peek().type == Tok::Name && peek().text == s; }

  [[noreturn]] void fail(const Token& t, const std::string& msg,
                         CgfErrorKind kind = CgfErrorKind::Syntax) const {
    throw CgfError(kind, msg, t.line, t.column);
  }

  void expect_sym(char c) {
    if (!at_sym(c)) {
      fail(peek(), std::string("expected '") + c + "' but found " + describe(peek()));
    }
    next();
  }

  static std::string describe(const Token& t) {
    return t.type == Tok::End ? "end of input" : "'" + t.text + "'";
  }

  const Token& expect_species_name() {
    const Token& t = peek();
    if (t.type != Tok::Name) fail(t, "expected a species name but found " + describe(t));
    if (is_keyword(t.text)) fail(t, "'" + t.text + "' is reserved");
    return next();
  }

  void define(const Token& name_tok, Molecule molecule) {
    if (program_.env.contains(name_tok.text)) {
      fail(name_tok, "'" + name_tok.text + "' is defined more than once",
           CgfErrorKind::DuplicateDefinition);
    }
    program_.env.emplace(name_tok.text, std::move(molecule));
  }

  void parse_definition() {
    const Token& name = expect_species_name();
    expect_sym('=');
    define(name, parse_molecule());
  }

  Molecule parse_molecule() {
    Molecule m;
    if (peek().type == Tok::Int && peek().text == "0") {
      next();
      return m;
    }
    m.choices.push_back(parse_choice());
    while (at_sym('+')) {
      next();
      m.choices.push_back(parse_choice());
    }
    return m;
  }

  Choice parse_choice() {
    Choice choice;
    const Token& head = peek();
    if (at_name("tau")) {
      next();
      choice.prefix = Prefix::tau(parse_rate());
    } else if (at_sym('?') || at_sym('!')) {
      bool input = at_sym('?');
      next();
      const Token& ch = peek();
      if (ch.type != Tok::Name || is_keyword(ch.text)) {
        fail(ch, "expected a channel name but found " + describe(ch));
      }
      next();
      Rate rate = parse_rate();
      choice.prefix = input ? Prefix::input(ch.text, rate) : Prefix::output(ch.text, rate);
      note_channel(ch, rate);
    } else {
      fail(head, "expected a prefix (tau, ?chan or !chan) but found " + describe(head));
    }
    expect_sym('.');
    choice.continuation = parse_continuation();
    return choice;
  }

  Rate parse_rate() {
    if (!at_sym('@')) return Rate{};
    next();
    const Token& t = peek();
    if (t.type != Tok::Int && t.type != Tok::Number) {
      fail(t, "expected a rate after '@' but found " + describe(t));
    }
    next();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size() || !std::isfinite(v) ||
        v <= 0.0) {
      fail(t, "rate '" + t.text + "' is not a positive finite number", CgfErrorKind::InvalidRate);
    }
    return Rate{v};
  }

  void note_channel(const Token& ch, Rate rate) {
    auto [it, inserted] = channel_rates_.emplace(ch.text, rate.value());
    if (!inserted && it->second != rate.value()) {
      fail(ch, "channel '" + ch.text + "' already carries a different rate",
           CgfErrorKind::InconsistentChannelRate);
    }
  }

  void reject_nested_choice() const {
    if (at_name("tau") || at_sym('?') || at_sym('!')) {
      fail(peek(), "a continuation must be a solution of species names; introduce a named reagent",
           CgfErrorKind::NestedChoice);
    }
  }

  Solution parse_continuation() {
    reject_nested_choice();
    if (at_sym('(')) {
      next();
      Solution s = parse_solution();
      expect_sym(')');
      return s;
    }
    Solution s;
    parse_item(s);
    return s;
  }

  Solution parse_solution() {
    Solution s;
    parse_item(s);
    while (at_sym('|')) {
      next();
      parse_item(s);
    }
    return s;
  }

  void parse_item(Solution& into) {
    reject_nested_choice();
    if (at_sym('(')) fail(peek(), "unexpected '(' inside a solution");
    Count multiplicity = 1;
    if (peek().type == Tok::Int) {
      const Token& t = next();
      Count n = 0;
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), n);
      if (ec != std::errc{}) fail(t, "count '" + t.text + "' out of range");
      if (!at_sym('*')) {
        if (n == 0) return;  // the empty solution "0"
        fail(t, "expected '*' after count " + t.text);
      }
      next();
      multiplicity = n;
    }
    if (at_name("fix")) {
      const Token& name = parse_fix();
      into.add(name.text, multiplicity);
      return;
    }
    const Token& name = expect_species_name();
    uses_.push_back(Use{name.text, name.line, name.column});
    into.add(name.text, multiplicity);
  }

  // fix X.[M] defines reagent X = M and stands for one X.
  const Token& parse_fix() {
    next();
    const Token& name = expect_species_name();
    expect_sym('.');
    expect_sym('[');
    Molecule m = parse_molecule();
    expect_sym(']');
    define(name, std::move(m));
    return name;
  }

  void resolve() const {
    for (const auto& use : uses_) {
      if (!program_.env.contains(use.name)) {
        throw CgfError(CgfErrorKind::UndefinedSpecies,
                       "species '" + use.name + "' has no definition", use.line, use.column);
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  CgfProgram program_;
  std::map<std::string, double> channel_rates_;
  std::vector<Use> uses_;
};

}  // namespace

CgfProgram parse_cgf(std::string_view text) { return Parser(tokenize(text)).parse(); }

}  // namespace rnaicgf
