#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace convexa {

// Lattice term over named variables with binary meet and join.
// Terms are immutable and share subtrees.
class Term {
 public:
  enum class Kind { variable, meet, join };

  static Term var(std::string name);
  static Term meet(Term l, Term r);
  static Term join(Term l, Term r);

  Kind kind() const;
  bool is_variable() const;
  const std::string& name() const;
  const Term& left() const;
  const Term& right() const;

  // Variables plus operation symbols.
  std::size_t node_count() const;

  bool operator==(const Term& other) const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Kind kind;
  std::string name;
  std::vector<Term> children;
  std::size_t nodes;
};

inline Term::Kind Term::kind() const { return node_->kind; }
inline bool Term::is_variable() const { return node_->kind == Kind::variable; }
inline const std::string& Term::name() const { return node_->name; }
inline const Term& Term::left() const { return node_->children[0]; }
inline const Term& Term::right() const { return node_->children[1]; }
inline std::size_t Term::node_count() const { return node_->nodes; }

inline Term operator&(Term a, Term b) { return Term::meet(std::move(a), std::move(b)); }
inline Term operator|(Term a, Term b) { return Term::join(std::move(a), std::move(b)); }

// Left-associated fold; at least one operand.
Term meet_all(const std::vector<Term>& ts);
Term join_all(const std::vector<Term>& ts);

// Distinct variables in order of first occurrence (left to right).
std::vector<std::string> variables_of(const Term& t);
std::vector<std::string> variables_of(const Term& s, const Term& t);

// Number of occurrences of each variable.
std::size_t occurrences(const Term& t, std::string_view var);

// Same shape, variables renamed through `rename(old) -> new`.
Term rename_variables(const Term& t, const std::vector<std::pair<std::string, std::string>>& map);

// S-expression syntax: (join t1 t2), (meet t1 t2), (var x).
// join/meet also accept more than two operands, folded to the left.
std::string to_sexpr(const Term& t);
Term parse_term(std::string_view text, std::string_view source = "<term>");

// Infix rendering for humans, e.g. "x & (y | z)".
std::string to_infix(const Term& t);

struct Identity {
  std::string name;
  std::vector<std::string> variables;
  Term lhs, rhs;
};

// lhs <= rhs
struct Inequality {
  Term lhs, rhs;
};

struct QuasiIdentity {
  std::string name;
  std::vector<std::string> variables;
  std::vector<Inequality> premises;
  Inequality conclusion;
};

// Quasi-identity syntax:
//   (implies (and (leq s1 t1) (leq s2 t2) ...) (leq s t))
// `(and)` may be omitted for a single premise; `(leq s t)` alone is an
// inequality with no premises.  Variables are ordered by first occurrence.
QuasiIdentity parse_quasi_identity(std::string_view text, std::string_view source = "<quasi>");
std::string to_sexpr(const QuasiIdentity& q);

}  // namespace convexa
