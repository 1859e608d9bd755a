#pragma once

#include <cctype>
#include <sstream>

#include "ppg/formula.hpp"
#include "ppg/type_triple.hpp"

namespace ppg {

/// Torsion group as its p-primary components.
struct TorsionGroupSpec {
  std::map<i64, GroupSpec> components;
  bool operator==(const TorsionGroupSpec&) const = default;
};

namespace detail {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip();
    return i_ >= s_.size();
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(std::string_view t) {
    skip();
    if (s_.substr(i_, t.size()) == t) {
      i_ += t.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view t) {
    if (!accept(t)) fail("expected '" + std::string(t) + "'");
  }
  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
  i64 integer() {
    skip();
    std::size_t j = i_;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    if (j == i_) fail("expected an integer");
    i64 v = 0;
    for (std::size_t k = i_; k < j; ++k) v = checked_add(checked_mul(v, 10), s_[k] - '0');
    i_ = j;
    return v;
  }
  i64 signed_integer() {
    bool neg = accept("-");
    if (!neg) accept("+");
    i64 v = integer();
    return neg ? -v : v;
  }
  std::string identifier() {
    skip();
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
    if (j == i_ || std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected an identifier");
    std::string out(s_.substr(i_, j - i_));
    i_ = j;
    return out;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, what + " at position " + std::to_string(i_));
  }
  std::size_t pos() const { return i_; }
  void reset(std::size_t pos) { i_ = pos; }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

/// One term of a group expression.
struct ParsedTerm {
  i64 p = 0;
  Summand summand;
  bool universal = false;
};

inline ParsedTerm parse_term(Cursor& c) {
  ParsedTerm t;
  if (c.accept("Z(")) {
    t.p = c.integer();
    if (c.accept(")")) {
      t.summand.atom = Atom::cyclic(1);  // Z(p) = Z(p^1)
    } else if (!c.accept("^")) {
      c.fail("expected '^' or ')'");
    } else if (c.accept("inf")) {
      t.summand.atom = Atom::pruefer();
      c.expect(")");
    } else {
      const i64 k = c.integer();
      if (k < 1) c.fail("cyclic exponent must be at least 1");
      t.summand.atom = Atom::cyclic(static_cast<int>(k));
      c.expect(")");
    }
  } else if (c.accept("H(")) {
    t.p = c.integer();
    c.expect(",");
    c.expect("w");
    c.expect("+");
    const i64 n = c.integer();
    if (n < 1) c.fail("length parameter must be at least 1");
    t.summand.atom = Atom::gen_pruefer(static_cast<int>(n));
    c.expect(")");
  } else if (c.accept("U(")) {
    t.p = c.integer();
    t.universal = true;
    c.expect(")");
    return t;
  } else if (c.accept("0(")) {
    t.p = c.integer();
    t.summand.mult = 0;
    c.expect(")");
    return t;
  } else {
    c.fail("expected Z(, H(, U( or 0(");
  }
  t.summand.mult = 1;
  if (c.accept("^")) {
    if (c.accept("aleph0")) {
      t.summand.mult = kAleph0;
    } else {
      const i64 m = c.integer();
      if (m < 1) c.fail("multiplicity must be at least 1");
      t.summand.mult = static_cast<Mult>(m);
    }
  }
  if (!is_prime(t.p)) c.fail("not a prime: " + std::to_string(t.p));
  return t;
}

inline std::vector<ParsedTerm> parse_terms(std::string_view text) {
  Cursor c(text);
  std::vector<ParsedTerm> terms{parse_term(c)};
  while (c.accept("+")) terms.push_back(parse_term(c));
  if (!c.done()) c.fail("unexpected trailing input");
  return terms;
}

inline GroupSpec assemble(i64 p, const std::vector<ParsedTerm>& terms) {
  std::vector<Summand> sums;
  bool universal = false;
  for (const auto& t : terms) {
    if (t.p != p) continue;
    if (t.universal) universal = true;
    else if (t.summand.mult > 0) sums.push_back(t.summand);
  }
  return GroupSpec(p, sums, universal);
}

}  // namespace detail

inline GroupSpec parse_group(std::string_view text) {
  auto terms = detail::parse_terms(text);
  const i64 p = terms.front().p;
  for (const auto& t : terms)
    if (t.p != p) throw Error(ErrorKind::MixedPrimeError, "group mixes primes; use the torsion form");
  return detail::assemble(p, terms);
}

inline TorsionGroupSpec parse_torsion_group(std::string_view text) {
  auto terms = detail::parse_terms(text);
  TorsionGroupSpec out;
  std::set<i64> primes;
  for (const auto& t : terms) primes.insert(t.p);
  for (i64 p : primes) out.components.emplace(p, detail::assemble(p, terms));
  return out;
}

inline std::string print_mult(Mult m) {
  if (m == 1) return "";
  if (m == kAleph0) return "^aleph0";
  return "^" + std::to_string(m);
}

inline std::string print_group(const GroupSpec& g) {
  std::vector<std::string> parts;
  const std::string p = std::to_string(g.p);
  for (const auto& s : g.summands) {
    switch (s.atom.kind) {
      case Atom::Kind::Cyclic: parts.push_back("Z(" + p + "^" + std::to_string(s.atom.param) + ")" + print_mult(s.mult)); break;
      case Atom::Kind::GenPruefer: parts.push_back("H(" + p + ",w+" + std::to_string(s.atom.param) + ")" + print_mult(s.mult)); break;
      case Atom::Kind::Pruefer: parts.push_back("Z(" + p + "^inf)" + print_mult(s.mult)); break;
    }
  }
  if (g.universal) parts.push_back("U(" + p + ")");
  if (parts.empty()) return "0(" + p + ")";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

inline std::string print_torsion_group(const TorsionGroupSpec& t) {
  std::string out;
  for (const auto& [p, g] : t.components) out += (out.empty() ? "" : " + ") + print_group(g);
  return out;
}

namespace detail {

/// Raw value for one coordinate: integer, a/b (Pruefer), or c_m a_m sums.
inline AtomValue parse_value(Cursor& c, const GroupSpec& g, Atom a) {
  switch (a.kind) {
    case Atom::Kind::Cyclic:
      return cyclic_value(c.signed_integer());
    case Atom::Kind::Pruefer: {
      const i64 num = c.signed_integer();
      if (!c.accept("/")) {
        if (num != 0) c.fail("Pruefer values are written a/p^k");
        return pruefer_value(0, 0);
      }
      i64 den = c.integer();
      int k = 0;
      while (den % g.p == 0) {
        den /= g.p;
        ++k;
      }
      if (den != 1) c.fail("denominator is not a power of p");
      return pruefer_value(num, k);
    }
    case Atom::Kind::GenPruefer: {
      std::vector<i64> coeffs(1, 0);
      bool first = true;
      for (;;) {
        bool neg = false;
        if (c.accept("-")) neg = true;
        else if (!first && !c.accept("+")) break;
        i64 coef = 1;
        if (c.at_digit()) coef = c.integer();
        if (c.accept("a")) {
          const i64 m = c.integer();
          if (m > 64) c.fail("generator index too large");
          if (coeffs.size() <= static_cast<std::size_t>(m)) coeffs.resize(static_cast<std::size_t>(m) + 1, 0);
          coeffs[static_cast<std::size_t>(m)] += neg ? -coef : coef;
        } else if (coef == 0) {
          // literal 0
        } else {
          c.fail("GenPruefer values are sums of c a_m terms");
        }
        first = false;
        const char n = c.peek();
        if (n != '+' && n != '-') break;
      }
      return gen_pruefer_value(coeffs);
    }
  }
  c.fail("unknown atom");
}

inline std::vector<Coord> flat_coords(const GroupSpec& g) {
  std::vector<Coord> out;
  if (g.universal) return out;
  for (std::uint32_t s = 0; s < g.summands.size(); ++s) {
    if (g.summands[s].mult == kAleph0) return {};
    for (Mult c = 0; c < g.summands[s].mult; ++c) out.push_back({s, c});
  }
  return out;
}

inline bool has_flat_form(const GroupSpec& g) {
  if (g.universal) return false;
  for (const auto& s : g.summands)
    if (s.mult == kAleph0) return false;
  return true;
}

inline Element parse_element_at(Cursor& c, const GroupRef& g) {
  std::vector<std::pair<Coord, AtomValue>> raw;
  if (c.accept("{")) {
    if (!c.accept("}")) {
      do {
        const i64 s = c.integer();
        c.expect(".");
        const i64 k = c.integer();
        c.expect(":");
        const Coord co{static_cast<std::uint32_t>(s), static_cast<std::uint64_t>(k)};
        if (!g->has_summand(co.summand)) c.fail("no such summand");
        raw.push_back({co, parse_value(c, *g, g->atom_at(co.summand))});
      } while (c.accept(","));
      c.expect("}");
    }
  } else if (c.accept("(")) {
    const auto coords = flat_coords(*g);
    if (!has_flat_form(*g)) c.fail("dense form needs finite multiplicities");
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i > 0) c.expect(",");
      raw.push_back({coords[i], parse_value(c, *g, g->atom_at(coords[i].summand))});
    }
    c.expect(")");
  } else {
    const auto coords = flat_coords(*g);
    if (coords.size() != 1) {
      if (c.accept("0")) return Element(g);
      c.fail("bare values need a group with one coordinate");
    }
    raw.push_back({coords[0], parse_value(c, *g, g->atom_at(coords[0].summand))});
  }
  return make_element(g, raw);
}

}  // namespace detail

inline Element parse_element(std::string_view text, const GroupRef& g) {
  detail::Cursor c(text);
  Element x = detail::parse_element_at(c, g);
  if (!c.done()) c.fail("unexpected trailing input");
  return x;
}

/// "[e1, e2, ...]"
inline std::vector<Element> parse_tuple(std::string_view text, const GroupRef& g) {
  detail::Cursor c(text);
  std::vector<Element> out;
  c.expect("[");
  if (!c.accept("]")) {
    do out.push_back(detail::parse_element_at(c, g));
    while (c.accept(","));
    c.expect("]");
  }
  if (!c.done()) c.fail("unexpected trailing input");
  return out;
}

inline std::string print_value(const GroupSpec& g, Atom a, const AtomValue* v) {
  if (!v) return "0";
  switch (a.kind) {
    case Atom::Kind::Cyclic: return std::to_string(v->c[0]);
    case Atom::Kind::Pruefer: return std::to_string(v->c[0]) + "/" + std::to_string(ipow(g.p, v->exp));
    case Atom::Kind::GenPruefer: {
      std::string out;
      for (std::size_t m = v->c.size(); m-- > 0;) {
        if (v->c[m] == 0) continue;
        if (!out.empty()) out += "+";
        if (v->c[m] != 1) out += std::to_string(v->c[m]);
        out += "a" + std::to_string(m);
      }
      return out;
    }
  }
  return "?";
}

inline std::string print_element(const Element& x) {
  const GroupSpec& g = x.spec();
  const auto coords = detail::flat_coords(g);
  if (detail::has_flat_form(g) && coords.size() == 1) return print_value(g, g.atom_at(0), x.at(coords[0]));
  if (detail::has_flat_form(g) && !coords.empty() && coords.size() <= 16) {
    std::string out = "(";
    for (std::size_t i = 0; i < coords.size(); ++i)
      out += (i ? ", " : "") + print_value(g, g.atom_at(coords[i].summand), x.at(coords[i]));
    return out + ")";
  }
  std::string out = "{";
  bool first = true;
  for (const auto& [c, v] : x.coords()) {
    out += (first ? "" : ", ") + std::to_string(c.summand) + "." + std::to_string(c.copy) + ": " +
           print_value(g, g.atom_at(c.summand), &v);
    first = false;
  }
  return out + "}";
}

inline std::string print_tuple(const std::vector<Element>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + print_element(xs[i]);
  return out + "]";
}

namespace detail {

using Linear = std::map<std::string, i64>;

inline bool is_free_var(const std::string& v) {
  return v.size() >= 2 && v[0] == 'x' && std::all_of(v.begin() + 1, v.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
}

inline Linear parse_linear(Cursor& c) {
  Linear out;
  bool first = true;
  for (;;) {
    int sign = 1;
    if (c.accept("-")) sign = -1;
    else if (!first && !c.accept("+")) break;
    i64 coef = 1;
    bool had_int = false;
    if (c.at_digit()) {
      coef = c.integer();
      had_int = true;
      c.accept("*");
    }
    const char n = c.peek();
    if (std::isalpha(static_cast<unsigned char>(n))) {
      out[c.identifier()] += sign * coef;
    } else if (!had_int || coef != 0) {
      c.fail("linear terms need a variable");
    }
    first = false;
    const char nx = c.peek();
    if (nx != '+' && nx != '-') break;
  }
  return out;
}

inline Linear subtract(Linear a, const Linear& b) {
  for (const auto& [v, k] : b) a[v] -= k;
  return a;
}

struct RawAtom {
  i64 modulus = 0;  // 0: equation lin = 0
  Linear lin;
};

inline RawAtom parse_raw_atom(Cursor& c) {
  const std::size_t start = c.pos();
  if (c.at_digit()) {
    i64 m = c.integer();
    if (c.accept("^")) {
      const i64 e = c.integer();
      m = ipow(m, static_cast<int>(e));
      c.expect("|");
      return {m, parse_linear(c)};
    }
    if (c.accept("|")) return {m, parse_linear(c)};
    c.reset(start);
  }
  Linear lhs = parse_linear(c);
  c.expect("=");
  return {0, subtract(std::move(lhs), parse_linear(c))};
}

inline std::size_t var_index(const std::string& v) { return static_cast<std::size_t>(std::stoul(v.substr(1))); }

}  // namespace detail

/// Conjunctions of "m | lin" and "lin = lin" over x1..xn, optionally under
/// "E w1, w2: ...". arity 0 infers n from the largest index used.
inline PpFormula parse_formula(std::string_view text, std::size_t arity = 0) {
  detail::Cursor c(text);
  std::vector<std::string> bound;
  bool quantified = false;
  if (c.accept("E")) {
    if (std::isalnum(static_cast<unsigned char>(c.peek())) && c.peek() != 'x') {
      quantified = true;
    } else if (c.peek() == ':') {
      quantified = true;
    } else {
      c.fail("expected bound variables after E");
    }
    if (c.peek() != ':') {
      do bound.push_back(c.identifier());
      while (c.accept(","));
    }
    c.expect(":");
  }
  std::vector<detail::RawAtom> atoms;
  if (c.accept("true")) {
    if (!c.done()) c.fail("unexpected trailing input");
  } else {
    do atoms.push_back(detail::parse_raw_atom(c));
    while (c.accept("&"));
    if (!c.done()) c.fail("unexpected trailing input");
  }
  std::size_t n = arity;
  for (const auto& a : atoms)
    for (const auto& [v, k] : a.lin) {
      if (detail::is_free_var(v)) {
        const std::size_t idx = detail::var_index(v);
        if (idx == 0) c.fail("free variables start at x1");
        if (arity != 0 && idx > arity) throw Error(ErrorKind::ArityError, "variable " + v + " exceeds arity");
        n = std::max(n, idx);
      } else if (std::find(bound.begin(), bound.end(), v) == bound.end()) {
        c.fail("unknown variable " + v);
      }
    }
  auto coeff_of = [](const detail::Linear& l, const std::string& v) {
    auto it = l.find(v);
    return it == l.end() ? i64{0} : it->second;
  };
  if (!quantified) {
    Simplified s{n, {}};
    for (const auto& a : atoms) {
      DivAtom d{a.modulus, std::vector<i64>(n, 0)};
      for (std::size_t i = 0; i < n; ++i) d.coeffs[i] = coeff_of(a.lin, "x" + std::to_string(i + 1));
      detail::normalize_sign(d);
      s.conjuncts.push_back(std::move(d));
    }
    return s;
  }
  // divisibility atoms get a fresh bound variable each
  std::size_t extra = 0;
  for (const auto& a : atoms)
    if (a.modulus != 0) ++extra;
  Quantified q{IntMatrix(atoms.size(), n), IntMatrix(atoms.size(), bound.size() + extra)};
  std::size_t fresh = bound.size();
  for (std::size_t r = 0; r < atoms.size(); ++r) {
    for (std::size_t i = 0; i < n; ++i) q.A(r, i) = coeff_of(atoms[r].lin, "x" + std::to_string(i + 1));
    for (std::size_t k = 0; k < bound.size(); ++k) q.B(r, k) = coeff_of(atoms[r].lin, bound[k]);
    if (atoms[r].modulus != 0) q.B(r, fresh++) = -atoms[r].modulus;
  }
  return q;
}

namespace detail {

inline std::string print_linear(const std::vector<std::pair<std::string, i64>>& terms) {
  std::string out;
  for (const auto& [v, k] : terms) {
    if (k == 0) continue;
    const i64 a = k < 0 ? -k : k;
    if (out.empty()) out += k < 0 ? "-" : "";
    else out += k < 0 ? " - " : " + ";
    out += (a == 1 ? "" : std::to_string(a) + " ") + v;
  }
  return out.empty() ? "0" : out;
}

inline std::string print_modulus(i64 m) {
  if (m <= 1) return std::to_string(m);
  i64 q = 2;
  while (m % q != 0) ++q;
  int k = 0;
  i64 r = m;
  while (r % q == 0) {
    r /= q;
    ++k;
  }
  if (r == 1 && k >= 2) return std::to_string(q) + "^" + std::to_string(k);
  return std::to_string(m);
}

inline std::vector<std::pair<std::string, i64>> x_terms(const std::vector<i64>& c) {
  std::vector<std::pair<std::string, i64>> out;
  for (std::size_t i = 0; i < c.size(); ++i) out.push_back({"x" + std::to_string(i + 1), c[i]});
  return out;
}

}  // namespace detail

inline std::string print_atom(const DivAtom& d) {
  const std::string lin = detail::print_linear(detail::x_terms(d.coeffs));
  if (d.is_zero()) return lin + " = 0";
  return detail::print_modulus(d.modulus) + " | " + lin;
}

inline std::string print_formula(const PpFormula& f) {
  if (const auto* s = std::get_if<Simplified>(&f)) {
    if (s->conjuncts.empty()) return "true";
    std::string out;
    for (const auto& d : s->conjuncts) out += (out.empty() ? "" : " & ") + print_atom(d);
    return out;
  }
  const auto& q = std::get<Quantified>(f);
  std::string out = "E";
  for (std::size_t k = 0; k < q.B.cols; ++k) out += (k ? ", w" : " w") + std::to_string(k + 1);
  out += ":";
  if (q.A.rows == 0) return out + " true";
  for (std::size_t r = 0; r < q.A.rows; ++r) {
    std::vector<std::pair<std::string, i64>> terms;
    for (std::size_t i = 0; i < q.A.cols; ++i) terms.push_back({"x" + std::to_string(i + 1), q.A(r, i)});
    for (std::size_t k = 0; k < q.B.cols; ++k) terms.push_back({"w" + std::to_string(k + 1), q.B(r, k)});
    out += (r ? " & " : " ") + detail::print_linear(terms) + " = 0";
  }
  return out;
}

}  // namespace ppg
