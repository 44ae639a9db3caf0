#include "convexa/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

#include "convexa/errors.hpp"

namespace convexa {

Term Term::var(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::variable, std::move(name), {}, 1}));
}

Term Term::meet(Term l, Term r) {
  std::size_t n = 1 + l.node_count() + r.node_count();
  return Term(std::make_shared<const Node>(Node{Kind::meet, {}, {std::move(l), std::move(r)}, n}));
}

Term Term::join(Term l, Term r) {
  std::size_t n = 1 + l.node_count() + r.node_count();
  return Term(std::make_shared<const Node>(Node{Kind::join, {}, {std::move(l), std::move(r)}, n}));
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind() || node_count() != other.node_count()) return false;
  if (is_variable()) return name() == other.name();
  return left() == other.left() && right() == other.right();
}

Term meet_all(const std::vector<Term>& ts) {
  if (ts.empty()) throw RangeError("meet of no terms");
  Term acc = ts.front();
  for (std::size_t i = 1; i < ts.size(); ++i) acc = Term::meet(acc, ts[i]);
  return acc;
}

Term join_all(const std::vector<Term>& ts) {
  if (ts.empty()) throw RangeError("join of no terms");
  Term acc = ts.front();
  for (std::size_t i = 1; i < ts.size(); ++i) acc = Term::join(acc, ts[i]);
  return acc;
}

namespace {

void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (t.is_variable()) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    return;
  }
  collect_vars(t.left(), out);
  collect_vars(t.right(), out);
}

}  // namespace

std::vector<std::string> variables_of(const Term& t) {
  std::vector<std::string> out;
  collect_vars(t, out);
  return out;
}

std::vector<std::string> variables_of(const Term& s, const Term& t) {
  std::vector<std::string> out;
  collect_vars(s, out);
  collect_vars(t, out);
  return out;
}

std::size_t occurrences(const Term& t, std::string_view var) {
  if (t.is_variable()) return t.name() == var ? 1 : 0;
  return occurrences(t.left(), var) + occurrences(t.right(), var);
}

Term rename_variables(const Term& t, const std::vector<std::pair<std::string, std::string>>& map) {
  if (t.is_variable()) {
    for (auto& [from, to] : map)
      if (from == t.name()) return Term::var(to);
    return t;
  }
  Term l = rename_variables(t.left(), map), r = rename_variables(t.right(), map);
  return t.kind() == Term::Kind::meet ? Term::meet(l, r) : Term::join(l, r);
}

std::string to_sexpr(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::variable:
      return "(var " + t.name() + ")";
    case Term::Kind::meet:
      return "(meet " + to_sexpr(t.left()) + " " + to_sexpr(t.right()) + ")";
    case Term::Kind::join:
      return "(join " + to_sexpr(t.left()) + " " + to_sexpr(t.right()) + ")";
  }
  return {};
}

std::string to_infix(const Term& t) {
  if (t.is_variable()) return t.name();
  auto side = [&](const Term& c) {
    if (c.is_variable() || c.kind() == t.kind()) return to_infix(c);
    return "(" + to_infix(c) + ")";
  };
  // Right operands of the same kind still need parentheses to keep the
  // tree shape visible.
  std::string r = t.right().is_variable() ? to_infix(t.right()) : "(" + to_infix(t.right()) + ")";
  return side(t.left()) + (t.kind() == Term::Kind::meet ? " & " : " | ") + r;
}

namespace {

struct Token {
  enum Kind { open, close, atom, end } kind;
  std::string text;
  std::size_t line;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  Token next() {
    skip();
    if (pos_ >= text_.size()) return {Token::end, {}, line_};
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      return {Token::open, "(", line_};
    }
    if (c == ')') {
      ++pos_;
      return {Token::close, ")", line_};
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident(text_[pos_])) ++pos_;
    if (start == pos_) throw ParseError(source_, line_, std::string("unexpected character '") + c + "'");
    return {Token::atom, std::string(text_.substr(start, pos_ - start)), line_};
  }

  Token peek() {
    auto save_pos = pos_;
    auto save_line = line_;
    Token t = next();
    pos_ = save_pos;
    line_ = save_line;
    return t;
  }

  const std::string& source() const { return source_; }

 private:
  static bool is_ident(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '-' || c == '.';
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';' || c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::string source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, std::string source) : lex_(text, std::move(source)) {}

  Term term() {
    Token t = lex_.next();
    if (t.kind == Token::atom) return Term::var(t.text);
    if (t.kind != Token::open) fail(t, "expected a term");
    Token head = expect_atom();
    if (head.text == "var") {
      Token name = expect_atom();
      expect_close();
      return Term::var(name.text);
    }
    if (head.text != "join" && head.text != "meet") fail(head, "unknown operator '" + head.text + "'");
    std::vector<Term> args;
    while (lex_.peek().kind != Token::close) {
      if (lex_.peek().kind == Token::end) fail(lex_.peek(), "unterminated term");
      args.push_back(term());
    }
    lex_.next();
    if (args.size() < 2) fail(head, head.text + " needs at least two operands");
    return head.text == "join" ? join_all(args) : meet_all(args);
  }

  Inequality inequality() {
    expect_open();
    Token head = expect_atom();
    if (head.text != "leq") fail(head, "expected 'leq'");
    Term s = term();
    Term t = term();
    expect_close();
    return {s, t};
  }

  QuasiIdentity quasi() {
    QuasiIdentity q{"", {}, {}, {Term::var("x"), Term::var("x")}};
    Token open = lex_.peek();
    expect_open();
    Token head = expect_atom();
    if (head.text == "leq") {
      Term s = term();
      Term t = term();
      expect_close();
      q.conclusion = {s, t};
    } else if (head.text == "implies") {
      // Premises: (and ...) or a single (leq ...).
      Token p = lex_.peek();
      if (p.kind != Token::open) fail(p, "expected premises");
      expect_open();
      Token ph = expect_atom();
      if (ph.text == "and") {
        while (lex_.peek().kind != Token::close) q.premises.push_back(inequality());
        lex_.next();
      } else if (ph.text == "leq") {
        Term s = term();
        Term t = term();
        expect_close();
        q.premises.push_back({s, t});
      } else {
        fail(ph, "expected 'and' or 'leq'");
      }
      q.conclusion = inequality();
      expect_close();
    } else {
      fail(open, "expected 'implies' or 'leq'");
    }
    std::vector<std::string> vars;
    for (auto& ineq : q.premises) {
      collect_vars(ineq.lhs, vars);
      collect_vars(ineq.rhs, vars);
    }
    collect_vars(q.conclusion.lhs, vars);
    collect_vars(q.conclusion.rhs, vars);
    q.variables = std::move(vars);
    return q;
  }

  void finish() {
    Token t = lex_.next();
    if (t.kind != Token::end) fail(t, "trailing input '" + t.text + "'");
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(lex_.source(), t.line, msg);
  }
  Token expect_atom() {
    Token t = lex_.next();
    if (t.kind != Token::atom) fail(t, "expected a name");
    return t;
  }
  void expect_open() {
    Token t = lex_.next();
    if (t.kind != Token::open) fail(t, "expected '('");
  }
  void expect_close() {
    Token t = lex_.next();
    if (t.kind != Token::close) fail(t, "expected ')'");
  }

  Lexer lex_;
};

}  // namespace

Term parse_term(std::string_view text, std::string_view source) {
  Parser p(text, std::string(source));
  Term t = p.term();
  p.finish();
  return t;
}

QuasiIdentity parse_quasi_identity(std::string_view text, std::string_view source) {
  Parser p(text, std::string(source));
  QuasiIdentity q = p.quasi();
  p.finish();
  return q;
}

std::string to_sexpr(const QuasiIdentity& q) {
  auto leq = [](const Inequality& i) { return "(leq " + to_sexpr(i.lhs) + " " + to_sexpr(i.rhs) + ")"; };
  if (q.premises.empty()) return leq(q.conclusion);
  std::string out = "(implies (and";
  for (auto& p : q.premises) out += "\n  " + leq(p);
  out += ")\n  " + leq(q.conclusion) + ")";
  return out;
}

}  // namespace convexa
