#include "ocasync/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_set>

#include "ocasync/errors.hpp"

namespace ocasync {

const char* op_name(Op op) {
  switch (op) {
    case Op::kTrue: return "TRUE";
    case Op::kAtom: return "ATOM";
    case Op::kNot: return "NOT";
    case Op::kAnd: return "AND";
    case Op::kEX: return "EX";
    case Op::kEU: return "EU";
    case Op::kAU: return "AU";
    case Op::kUA: return "UA";
    case Op::kUE: return "UE";
  }
  return "?";
}

bool is_binary(Op op) {
  return op == Op::kAnd || op == Op::kEU || op == Op::kAU || op == Op::kUA || op == Op::kUE;
}

bool is_temporal(Op op) {
  return op == Op::kEX || op == Op::kEU || op == Op::kAU || op == Op::kUA || op == Op::kUE;
}

namespace {

std::string render(Op op, const std::string& atom, const std::vector<Formula>& c) {
  switch (op) {
    case Op::kTrue: return "true";
    case Op::kAtom: return atom;
    case Op::kNot: return "!" + c[0].text();
    case Op::kAnd: return "(" + c[0].text() + " & " + c[1].text() + ")";
    case Op::kEX: return "EX " + c[0].text();
    case Op::kEU: return "E " + c[0].text() + " U " + c[1].text();
    case Op::kAU: return "A " + c[0].text() + " U " + c[1].text();
    case Op::kUA: return "(" + c[0].text() + " UA " + c[1].text() + ")";
    case Op::kUE: return "(" + c[0].text() + " UE " + c[1].text() + ")";
  }
  return {};
}

std::size_t arity(Op op) {
  if (op == Op::kTrue || op == Op::kAtom) return 0;
  return is_binary(op) ? 2 : 1;
}

}  // namespace

Formula Formula::make(Op op, std::vector<Formula> children, std::string atom) {
  if (children.size() != arity(op)) throw std::invalid_argument("formula arity mismatch");
  if (op == Op::kAtom && atom.empty()) throw std::invalid_argument("atom without a name");
  auto n = std::make_shared<Node>();
  n->op = op;
  n->text = render(op, atom, children);
  n->atom = std::move(atom);
  n->children = std::move(children);
  return Formula(std::move(n));
}

Formula Formula::truth() { return make(Op::kTrue, {}); }
Formula Formula::atom(std::string name) { return make(Op::kAtom, {}, std::move(name)); }
Formula Formula::negation(Formula f) { return make(Op::kNot, {std::move(f)}); }
Formula Formula::conjunction(Formula a, Formula b) {
  return make(Op::kAnd, {std::move(a), std::move(b)});
}
Formula Formula::ex(Formula f) { return make(Op::kEX, {std::move(f)}); }
Formula Formula::eu(Formula a, Formula b) { return make(Op::kEU, {std::move(a), std::move(b)}); }
Formula Formula::au(Formula a, Formula b) { return make(Op::kAU, {std::move(a), std::move(b)}); }
Formula Formula::ua(Formula a, Formula b) { return make(Op::kUA, {std::move(a), std::move(b)}); }
Formula Formula::ue(Formula a, Formula b) { return make(Op::kUE, {std::move(a), std::move(b)}); }

namespace {

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"true", "false", "EX", "AX", "EF", "AF", "EG", "AG",
                                          "FA",   "FE",    "GA", "GE", "E",  "A",  "U",  "UA",
                                          "UE"};
  return k;
}

struct Token {
  enum class Kind { kWord, kSymbol, kEnd } kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Kind::kWord, s.substr(i, j - i), line, col});
      advance(j - i);
      continue;
    }
    for (const char* sym : {"&&", "||", "&", "|", "!", "~", "(", ")", "[", "]"}) {
      std::string t(sym);
      if (s.compare(i, t.size(), t) == 0) {
        out.push_back({Token::Kind::kSymbol, t == "&&" ? "&" : (t == "||" ? "|" : (t == "~" ? "!" : t)),
                       line, col});
        advance(t.size());
        goto next;
      }
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col,
                     {"identifier", "(", "!"});
  next:;
  }
  out.push_back({Token::Kind::kEnd, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse_all() {
    Formula f = sync();
    if (peek().kind != Token::Kind::kEnd) {
      fail({"end of input", "&", "|", "UA", "UE"});
    }
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool is_word(const std::string& w) const {
    return peek().kind == Token::Kind::kWord && peek().text == w;
  }
  bool is_sym(const std::string& w) const {
    return peek().kind == Token::Kind::kSymbol && peek().text == w;
  }
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == Token::Kind::kEnd ? "end of input" : "'" + t.text + "'";
    throw ParseError("unexpected " + found, t.line, t.column, std::move(expected));
  }
  void expect_word(const std::string& w) {
    if (!is_word(w)) fail({w});
    ++pos_;
  }
  void expect_sym(const std::string& w) {
    if (!is_sym(w)) fail({w});
    ++pos_;
  }

  Formula sync() {
    Formula left = disj();
    if (is_word("UA")) {
      ++pos_;
      return Formula::ua(left, sync());
    }
    if (is_word("UE")) {
      ++pos_;
      return Formula::ue(left, sync());
    }
    return left;
  }

  Formula disj() {
    Formula f = conj();
    while (is_sym("|")) {
      ++pos_;
      Formula g = conj();
      f = Formula::negation(Formula::conjunction(Formula::negation(f), Formula::negation(g)));
    }
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (is_sym("&")) {
      ++pos_;
      f = Formula::conjunction(f, unary());
    }
    return f;
  }

  Formula until_body(bool existential) {
    Formula a = Formula::truth();
    Formula b = Formula::truth();
    if (is_sym("[")) {
      ++pos_;
      a = sync();
      expect_word("U");
      b = sync();
      expect_sym("]");
    } else {
      a = sync();
      expect_word("U");
      b = unary();
    }
    return existential ? Formula::eu(a, b) : Formula::au(a, b);
  }

  Formula unary() {
    using F = Formula;
    const Token& t = peek();
    if (is_sym("!")) {
      ++pos_;
      return F::negation(unary());
    }
    if (is_sym("(")) {
      ++pos_;
      Formula f = sync();
      expect_sym(")");
      return f;
    }
    if (t.kind == Token::Kind::kWord) {
      const std::string w = t.text;
      if (w == "true") {
        ++pos_;
        return F::truth();
      }
      if (w == "false") {
        ++pos_;
        return F::negation(F::truth());
      }
      if (w == "E" || w == "A") {
        ++pos_;
        return until_body(w == "E");
      }
      static const std::set<std::string> prefix = {"EX", "AX", "EF", "AF", "EG",
                                                    "AG", "FA", "FE", "GA", "GE"};
      if (prefix.count(w)) {
        ++pos_;
        F f = unary();
        F top = F::truth();
        if (w == "EX") return F::ex(f);
        if (w == "AX") return F::negation(F::ex(F::negation(f)));
        if (w == "EF") return F::eu(top, f);
        if (w == "AF") return F::au(top, f);
        if (w == "EG") return F::negation(F::au(top, F::negation(f)));
        if (w == "AG") return F::negation(F::eu(top, F::negation(f)));
        if (w == "FA") return F::ua(top, f);
        if (w == "FE") return F::ue(top, f);
        if (w == "GA") return F::negation(F::ue(top, F::negation(f)));
        return F::negation(F::ua(top, F::negation(f)));  // GE
      }
      if (!keywords().count(w)) {
        ++pos_;
        return F::atom(w);
      }
    }
    fail({"true", "false", "identifier", "(", "!", "EX", "AX", "EF", "AF", "EG", "AG", "FA",
          "FE", "GA", "GE", "E", "A"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(const std::string& text) { return Parser(tokenize(text)).parse_all(); }

int nesting_depth(const Formula& f) {
  int d = 0;
  for (const Formula& c : f.children()) d = std::max(d, nesting_depth(c));
  return is_temporal(f.op()) ? d + 1 : d;
}

namespace {

void collect(const Formula& f, std::unordered_set<std::string>& seen, std::vector<Formula>& out) {
  if (seen.count(f.text())) return;
  for (const Formula& c : f.children()) collect(c, seen, out);
  seen.insert(f.text());
  out.push_back(f);
}

}  // namespace

std::vector<Formula> subformulas(const Formula& f) {
  std::unordered_set<std::string> seen;
  std::vector<Formula> out;
  collect(f, seen, out);
  return out;
}

std::vector<std::string> atoms_of(const Formula& f) {
  std::set<std::string> names;
  for (const Formula& g : subformulas(f)) {
    if (g.op() == Op::kAtom) names.insert(g.atom_name());
  }
  return {names.begin(), names.end()};
}

void bind_check(const Formula& f, const std::vector<std::string>& declared) {
  for (const std::string& a : atoms_of(f)) {
    if (std::find(declared.begin(), declared.end(), a) == declared.end()) {
      throw InputError("formula uses undeclared atom '" + a + "'");
    }
  }
}

bool is_state_formula(const Formula& f) {
  if (is_temporal(f.op())) return false;
  for (const Formula& c : f.children()) {
    if (!is_state_formula(c)) return false;
  }
  return true;
}

}  // namespace ocasync
