#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isolat/errors.hpp"
#include "isolat/lattice.hpp"

namespace isolat {

// Lattice terms over an indexed generator set.  Meet/join nodes are n-ary
// (at least two arguments); complement nodes only make sense in Boolean
// contexts and are rejected by the free-lattice routines.
struct LatticeTerm {
  enum class Kind { gen, meet, join, negation };
  Kind kind;
  int gen = -1;
  std::vector<std::shared_ptr<const LatticeTerm>> args;
};

using TermPtr = std::shared_ptr<const LatticeTerm>;

inline TermPtr make_gen(int i) { return std::make_shared<LatticeTerm>(LatticeTerm{LatticeTerm::Kind::gen, i, {}}); }
inline TermPtr make_node(LatticeTerm::Kind k, std::vector<TermPtr> args) {
  if (args.size() < 2) fail(Errc::invalid_input, "meet/join nodes take at least two arguments");
  return std::make_shared<LatticeTerm>(LatticeTerm{k, -1, std::move(args)});
}
inline TermPtr make_meet(std::vector<TermPtr> args) { return make_node(LatticeTerm::Kind::meet, std::move(args)); }
inline TermPtr make_join(std::vector<TermPtr> args) { return make_node(LatticeTerm::Kind::join, std::move(args)); }
inline TermPtr make_compl(TermPtr arg) {
  return std::make_shared<LatticeTerm>(LatticeTerm{LatticeTerm::Kind::negation, -1, {std::move(arg)}});
}

inline bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind || a->gen != b->gen || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!term_equal(a->args[i], b->args[i])) return false;
  return true;
}

// swap every meet with a join (complements and generators stay put)
inline TermPtr term_dual(const TermPtr& t) {
  using K = LatticeTerm::Kind;
  if (t->kind == K::gen) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(term_dual(a));
  if (t->kind == K::negation) return make_compl(args[0]);
  return std::make_shared<LatticeTerm>(
      LatticeTerm{t->kind == K::meet ? K::join : K::meet, -1, std::move(args)});
}

inline bool has_complement(const TermPtr& t) {
  if (t->kind == LatticeTerm::Kind::negation) return true;
  for (const auto& a : t->args)
    if (has_complement(a)) return true;
  return false;
}

// fixed total order used to sort canonical argument lists: generators first
// (by label), then meets, then joins, then complements; composite nodes
// compare lexicographically by argument list
inline int term_compare(const TermPtr& a, const TermPtr& b, const std::vector<std::string>& gens) {
  auto rank = [](LatticeTerm::Kind k) {
    switch (k) {
      case LatticeTerm::Kind::gen: return 0;
      case LatticeTerm::Kind::meet: return 1;
      case LatticeTerm::Kind::join: return 2;
      case LatticeTerm::Kind::negation: return 3;
    }
    return 4;
  };
  if (rank(a->kind) != rank(b->kind)) return rank(a->kind) < rank(b->kind) ? -1 : 1;
  if (a->kind == LatticeTerm::Kind::gen) {
    const std::string& la = gens[a->gen];
    const std::string& lb = gens[b->gen];
    return la == lb ? 0 : (la < lb ? -1 : 1);
  }
  const std::size_t n = std::min(a->args.size(), b->args.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = term_compare(a->args[i], b->args[i], gens)) return c;
  if (a->args.size() != b->args.size()) return a->args.size() < b->args.size() ? -1 : 1;
  return 0;
}

// ---- parsing ----------------------------------------------------------
//
//   term  :=  or
//   or    :=  and  (("∨" | "|")  and)*
//   and   :=  unary (("∧" | "&") unary)*
//   unary :=  ("~" | "¬") unary  |  ident  |  "(" term ")"
//
// The ASCII aliases are accepted on input only; rendering always emits the
// canonical symbols.

namespace detail {

struct TermLexer {
  std::string_view src;
  std::size_t pos = 0;
  const std::vector<std::string>& gens;

  void skip_ws() {
    while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t' || src[pos] == '\n' || src[pos] == '\r')) ++pos;
  }
  bool eat(std::string_view tok) {
    skip_ws();
    if (src.substr(pos, tok.size()) == tok) {
      pos += tok.size();
      return true;
    }
    return false;
  }
  bool at_end() {
    skip_ws();
    return pos >= src.size();
  }
};

inline TermPtr parse_or(TermLexer& lx);

inline TermPtr parse_unary(TermLexer& lx) {
  if (lx.eat("~") || lx.eat("¬")) return make_compl(parse_unary(lx));
  if (lx.eat("(")) {
    TermPtr t = parse_or(lx);
    if (!lx.eat(")")) fail(Errc::syntax_error, "expected ')'");
    return t;
  }
  lx.skip_ws();
  std::size_t start = lx.pos;
  while (lx.pos < lx.src.size()) {
    const char c = lx.src[lx.pos];
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_') ++lx.pos;
    else break;
  }
  if (lx.pos == start) fail(Errc::syntax_error, "expected a generator name at position " + std::to_string(start));
  std::string name(lx.src.substr(start, lx.pos - start));
  for (std::size_t i = 0; i < lx.gens.size(); ++i)
    if (lx.gens[i] == name) return make_gen(static_cast<int>(i));
  fail(Errc::unknown_generator, "generator '" + name + "' not declared");
}

inline TermPtr parse_and(TermLexer& lx) {
  std::vector<TermPtr> args{parse_unary(lx)};
  while (lx.eat("∧") || lx.eat("&")) args.push_back(parse_unary(lx));
  return args.size() == 1 ? args[0] : make_meet(std::move(args));
}

inline TermPtr parse_or(TermLexer& lx) {
  std::vector<TermPtr> args{parse_and(lx)};
  while (lx.eat("∨") || lx.eat("|")) args.push_back(parse_and(lx));
  return args.size() == 1 ? args[0] : make_join(std::move(args));
}

}  // namespace detail

inline TermPtr parse_term(std::string_view src, const std::vector<std::string>& gens) {
  detail::TermLexer lx{src, 0, gens};
  TermPtr t = detail::parse_or(lx);
  if (!lx.at_end()) fail(Errc::syntax_error, "unexpected input at position " + std::to_string(lx.pos));
  return t;
}

inline std::string render_term(const TermPtr& t, const std::vector<std::string>& gens) {
  switch (t->kind) {
    case LatticeTerm::Kind::gen:
      return gens[t->gen];
    case LatticeTerm::Kind::negation: {
      const TermPtr& a = t->args[0];
      const bool simple = a->kind == LatticeTerm::Kind::gen || a->kind == LatticeTerm::Kind::negation;
      return simple ? "¬" + render_term(a, gens) : "¬(" + render_term(a, gens) + ")";
    }
    case LatticeTerm::Kind::meet:
    case LatticeTerm::Kind::join: {
      const bool is_meet = t->kind == LatticeTerm::Kind::meet;
      std::string out;
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) out += is_meet ? "∧" : "∨";
        const TermPtr& a = t->args[i];
        // meets bind tighter than joins: a join inside a meet needs parens,
        // same-kind children (possible in raw unflattened terms) do too
        const bool parens = a->kind == LatticeTerm::Kind::join || (is_meet && a->kind == LatticeTerm::Kind::meet) ||
                            (!is_meet && a->kind == LatticeTerm::Kind::join);
        out += parens ? "(" + render_term(a, gens) + ")" : render_term(a, gens);
      }
      return out;
    }
  }
  return "";
}

// ---- the word problem -------------------------------------------------

namespace detail {

struct FlMemo {
  std::map<std::pair<const LatticeTerm*, const LatticeTerm*>, bool> cache;
};

inline bool fl_leq_rec(const TermPtr& s, const TermPtr& t, FlMemo& memo) {
  using K = LatticeTerm::Kind;
  const auto key = std::make_pair(s.get(), t.get());
  if (auto it = memo.cache.find(key); it != memo.cache.end()) return it->second;
  bool r = false;
  if (s->kind == K::join) {
    r = true;
    for (const auto& si : s->args)
      if (!fl_leq_rec(si, t, memo)) { r = false; break; }
  } else if (t->kind == K::meet) {
    r = true;
    for (const auto& tj : t->args)
      if (!fl_leq_rec(s, tj, memo)) { r = false; break; }
  } else if (s->kind == K::gen && t->kind == K::gen) {
    r = s->gen == t->gen;
  } else if (s->kind == K::gen) {  // t is a join
    for (const auto& tj : t->args)
      if (fl_leq_rec(s, tj, memo)) { r = true; break; }
  } else if (t->kind == K::gen) {  // s is a meet
    for (const auto& si : s->args)
      if (fl_leq_rec(si, t, memo)) { r = true; break; }
  } else {  // s meet, t join
    for (const auto& si : s->args)
      if (fl_leq_rec(si, t, memo)) { r = true; break; }
    if (!r)
      for (const auto& tj : t->args)
        if (fl_leq_rec(s, tj, memo)) { r = true; break; }
  }
  memo.cache.emplace(key, r);
  return r;
}

}  // namespace detail

// Decides s <= t in the free lattice on the shared generator set.
inline bool fl_leq(const TermPtr& s, const TermPtr& t) {
  if (has_complement(s) || has_complement(t))
    fail(Errc::complement_outside_boolean, "free-lattice order is complement-free");
  detail::FlMemo memo;
  return detail::fl_leq_rec(s, t, memo);
}

inline bool fl_eq(const TermPtr& s, const TermPtr& t) { return fl_leq(s, t) && fl_leq(t, s); }

enum class TermTag { generator, meet_reducible, join_reducible };

struct CanonicalTerm {
  TermPtr term;
  TermTag tag;
};

// Shortest normal form: flatten same-kind nodes, drop absorbed arguments,
// promote an argument's piece when that piece already lies under (over) the
// whole node, and sort argument lists by the fixed term order.  Two terms
// name the same free-lattice element exactly when their canonical forms are
// structurally identical.
inline CanonicalTerm canonical_form(const TermPtr& t, const std::vector<std::string>& gens) {
  using K = LatticeTerm::Kind;
  if (has_complement(t)) fail(Errc::complement_outside_boolean, "canonical form is complement-free");

  auto rec = [&gens](auto&& self, const TermPtr& u) -> TermPtr {
    if (u->kind == K::gen) return u;
    const K kind = u->kind;
    const K other = kind == K::meet ? K::join : K::meet;
    std::vector<TermPtr> args;
    for (const auto& a : u->args) {
      TermPtr c = self(self, a);
      if (c->kind == kind)
        args.insert(args.end(), c->args.begin(), c->args.end());
      else
        args.push_back(c);
    }
    // For a meet node, x "covers" y when x <= y (the larger argument y is
    // redundant); for a join node, when y <= x.
    auto covers = [&](const TermPtr& x, const TermPtr& y) {
      return kind == K::meet ? fl_leq(x, y) : fl_leq(y, x);
    };
    bool changed = true;
    while (changed) {
      changed = false;
      // structural dedupe
      for (std::size_t i = 0; i < args.size(); ++i)
        for (std::size_t j = args.size(); j-- > i + 1;)
          if (term_equal(args[i], args[j])) {
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(j));
            changed = true;
          }
      // absorption: drop any argument made redundant by another
      for (std::size_t i = 0; i < args.size() && args.size() > 1; ++i)
        for (std::size_t j = args.size(); j-- > 0 && args.size() > 1;)
          if (i != j && i < args.size() && covers(args[i], args[j]) && !covers(args[j], args[i])) {
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(j));
            changed = true;
          }
      if (args.size() <= 1) break;
      // promotion: an other-kind argument with a piece comparable to the
      // whole node can be replaced by that piece
      TermPtr whole = args.size() == 1 ? args[0] : make_node(kind, args);
      bool promoted = false;
      for (std::size_t i = 0; i < args.size() && !promoted; ++i) {
        if (args[i]->kind != other) continue;
        for (const auto& piece : args[i]->args) {
          const bool fits = kind == K::join ? fl_leq(piece, whole) : fl_leq(whole, piece);
          if (fits) {
            TermPtr p = piece;
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            if (p->kind == kind)
              args.insert(args.end(), p->args.begin(), p->args.end());
            else
              args.push_back(p);
            promoted = true;
            changed = true;
            break;
          }
        }
      }
    }
    if (args.size() == 1) return args[0];
    std::sort(args.begin(), args.end(),
              [&](const TermPtr& a, const TermPtr& b) { return term_compare(a, b, gens) < 0; });
    return make_node(kind, std::move(args));
  };

  TermPtr c = rec(rec, t);
  TermTag tag = c->kind == K::gen ? TermTag::generator
                                  : (c->kind == K::meet ? TermTag::meet_reducible : TermTag::join_reducible);
  return {c, tag};
}

// Evaluate in a finite lattice under a generator assignment.
inline int eval_term(const TermPtr& t, const FiniteLattice& l, const std::vector<int>& assignment) {
  using K = LatticeTerm::Kind;
  switch (t->kind) {
    case K::gen:
      if (t->gen < 0 || t->gen >= static_cast<int>(assignment.size()))
        fail(Errc::unknown_generator, "assignment missing generator " + std::to_string(t->gen));
      return assignment[t->gen];
    case K::meet: {
      int acc = eval_term(t->args[0], l, assignment);
      for (std::size_t i = 1; i < t->args.size(); ++i) acc = l.meet(acc, eval_term(t->args[i], l, assignment));
      return acc;
    }
    case K::join: {
      int acc = eval_term(t->args[0], l, assignment);
      for (std::size_t i = 1; i < t->args.size(); ++i) acc = l.join(acc, eval_term(t->args[i], l, assignment));
      return acc;
    }
    case K::negation:
      fail(Errc::complement_outside_boolean, "cannot evaluate a complement in a plain lattice");
  }
  fail(Errc::invalid_input, "malformed term");
}

}  // namespace isolat
