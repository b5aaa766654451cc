#include "ocasync/oca_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "ocasync/errors.hpp"

namespace ocasync {

ParseError::ParseError(std::string message, int line, int column,
                       std::vector<std::string> expected)
    : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      detail_(std::move(message)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class LineCursor {
 public:
  LineCursor(const std::string& line, int line_no) : s_(line), line_(line_no) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  int column() const { return static_cast<int>(pos_) + 1; }

  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
    throw ParseError(msg, line_, column(), std::move(expected));
  }

  std::string ident() {
    skip_ws();
    if (pos_ >= s_.size() || !ident_start(s_[pos_])) fail("expected identifier", {"identifier"});
    std::size_t b = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return s_.substr(b, pos_ - b);
  }

  bool try_lit(const std::string& lit) {
    skip_ws();
    if (s_.compare(pos_, lit.size(), lit) == 0) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }

  void expect(const std::string& lit) {
    if (!try_lit(lit)) fail("expected '" + lit + "'", {lit});
  }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing input", {"end of line"});
  }

  // Comma-separated identifiers, possibly empty.
  std::vector<std::string> ident_list(const std::string& closer) {
    std::vector<std::string> out;
    if (closer.empty() ? at_end() : (skip_ws(), s_.compare(pos_, closer.size(), closer) == 0)) {
      return out;
    }
    out.push_back(ident());
    while (try_lit(",")) out.push_back(ident());
    return out;
  }

 private:
  const std::string& s_;
  int line_;
  std::size_t pos_ = 0;
};

}  // namespace

Oca parse_oca_dsl(const std::string& text) {
  std::vector<std::string> states;
  std::vector<std::string> atoms;
  bool have_states = false;
  bool have_atoms = false;
  struct PendingLabel {
    std::string state;
    std::vector<std::string> atoms;
    int line;
  };
  struct PendingTransition {
    std::string src;
    Guard guard;
    int effect;
    std::string dst;
    int line;
  };
  std::vector<PendingLabel> labels;
  std::vector<PendingTransition> transitions;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    LineCursor cur(line, line_no);
    if (cur.at_end()) continue;
    if (cur.try_lit("states:")) {
      if (have_states) cur.fail("duplicate 'states:' header", {});
      states = cur.ident_list("");
      have_states = true;
      cur.expect_end();
      continue;
    }
    if (cur.try_lit("atoms:")) {
      if (have_atoms) cur.fail("duplicate 'atoms:' header", {});
      atoms = cur.ident_list("");
      have_atoms = true;
      cur.expect_end();
      continue;
    }
    std::string first = cur.ident();
    if (first == "label") {
      PendingLabel l{cur.ident(), {}, line_no};
      cur.expect("=");
      cur.expect("{");
      l.atoms = cur.ident_list("}");
      cur.expect("}");
      cur.expect_end();
      labels.push_back(std::move(l));
      continue;
    }
    PendingTransition t{first, Guard::kZero, 0, "", line_no};
    cur.expect("-[");
    if (cur.try_lit("=0")) {
      t.guard = Guard::kZero;
    } else if (cur.try_lit(">0")) {
      t.guard = Guard::kPositive;
    } else {
      cur.fail("expected guard", {"=0", ">0"});
    }
    cur.expect(",");
    if (cur.try_lit("+1") || cur.try_lit("1")) {
      t.effect = 1;
    } else if (cur.try_lit("-1")) {
      t.effect = -1;
    } else if (cur.try_lit("0")) {
      t.effect = 0;
    } else {
      cur.fail("expected effect", {"+1", "-1", "0"});
    }
    cur.expect("]->");
    t.dst = cur.ident();
    cur.expect_end();
    transitions.push_back(std::move(t));
  }
  if (!have_states) throw ParseError("missing 'states:' header", line_no + 1, 1, {"states:"});

  std::map<std::string, StateId> sid;
  for (std::size_t i = 0; i < states.size(); ++i) sid[states[i]] = static_cast<StateId>(i);
  std::map<std::string, AtomId> aid;
  for (std::size_t i = 0; i < atoms.size(); ++i) aid[atoms[i]] = static_cast<AtomId>(i);

  auto state_of = [&](const std::string& name, int line) {
    auto it = sid.find(name);
    if (it == sid.end()) throw ParseError("unknown state '" + name + "'", line, 1, states);
    return it->second;
  };
  std::vector<std::vector<AtomId>> lab(states.size());
  for (const PendingLabel& l : labels) {
    StateId s = state_of(l.state, l.line);
    for (const std::string& a : l.atoms) {
      auto it = aid.find(a);
      if (it == aid.end()) throw ParseError("undeclared atom '" + a + "'", l.line, 1, atoms);
      lab[s].push_back(it->second);
    }
  }
  std::vector<Transition> ts;
  for (const PendingTransition& t : transitions) {
    ts.push_back({state_of(t.src, t.line), t.guard, t.effect, state_of(t.dst, t.line)});
  }
  return Oca(std::move(states), std::move(atoms), std::move(lab), std::move(ts));
}

namespace {

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

std::string guard_text(Guard g) { return g == Guard::kZero ? "=0" : ">0"; }
std::string effect_text(int e) { return e > 0 ? "+1" : (e < 0 ? "-1" : "0"); }

}  // namespace

std::string print_oca_dsl(const Oca& oca) {
  std::string out = "states: " + join(oca.state_names(), ", ") + "\n";
  out += "atoms: " + join(oca.atoms(), ", ") + "\n";
  for (StateId s = 0; s < oca.num_states(); ++s) {
    std::vector<std::string> names;
    for (AtomId a : oca.label(s)) names.push_back(oca.atoms()[a]);
    if (!names.empty()) out += "label " + oca.state_name(s) + " = {" + join(names, ", ") + "}\n";
  }
  for (const Transition& t : oca.transitions()) {
    out += oca.state_name(t.src) + " -[" + guard_text(t.guard) + "," + effect_text(t.effect) +
           "]-> " + oca.state_name(t.dst) + "\n";
  }
  return out;
}

Oca oca_from_json(const nlohmann::json& j) {
  try {
    auto states = j.at("states").get<std::vector<std::string>>();
    auto atoms = j.value("atoms", std::vector<std::string>{});
    std::map<std::string, StateId> sid;
    for (std::size_t i = 0; i < states.size(); ++i) sid[states[i]] = static_cast<StateId>(i);
    std::map<std::string, AtomId> aid;
    for (std::size_t i = 0; i < atoms.size(); ++i) aid[atoms[i]] = static_cast<AtomId>(i);
    auto state_of = [&](const std::string& n) {
      auto it = sid.find(n);
      if (it == sid.end()) throw InputError("unknown state '" + n + "'");
      return it->second;
    };
    std::vector<std::vector<AtomId>> lab(states.size());
    if (j.contains("labels")) {
      for (auto& [name, list] : j.at("labels").items()) {
        for (const std::string& a : list.get<std::vector<std::string>>()) {
          auto it = aid.find(a);
          if (it == aid.end()) throw InputError("undeclared atom '" + a + "'");
          lab[state_of(name)].push_back(it->second);
        }
      }
    }
    std::vector<Transition> ts;
    for (const auto& t : j.value("transitions", nlohmann::json::array())) {
      std::string g = t.at("guard").get<std::string>();
      if (g != "=0" && g != ">0") throw InputError("guard must be \"=0\" or \">0\"");
      ts.push_back({state_of(t.at("src").get<std::string>()),
                    g == "=0" ? Guard::kZero : Guard::kPositive, t.at("effect").get<int>(),
                    state_of(t.at("dst").get<std::string>())});
    }
    return Oca(std::move(states), std::move(atoms), std::move(lab), std::move(ts));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed OCA JSON: ") + e.what());
  }
}

nlohmann::json oca_to_json(const Oca& oca) {
  nlohmann::json j;
  j["states"] = oca.state_names();
  j["atoms"] = oca.atoms();
  nlohmann::json labels = nlohmann::json::object();
  for (StateId s = 0; s < oca.num_states(); ++s) {
    std::vector<std::string> names;
    for (AtomId a : oca.label(s)) names.push_back(oca.atoms()[a]);
    if (!names.empty()) labels[oca.state_name(s)] = names;
  }
  j["labels"] = labels;
  nlohmann::json ts = nlohmann::json::array();
  for (const Transition& t : oca.transitions()) {
    ts.push_back({{"src", oca.state_name(t.src)},
                  {"guard", guard_text(t.guard)},
                  {"effect", t.effect},
                  {"dst", oca.state_name(t.dst)}});
  }
  j["transitions"] = ts;
  return j;
}

Oca parse_oca(const std::string& text) {
  std::size_t i = text.find_first_not_of(" \t\r\n");
  if (i != std::string::npos && text[i] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      int line = 1;
      int col = 1;
      for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      throw ParseError(e.what(), line, col, {});
    }
    return oca_from_json(j);
  }
  return parse_oca_dsl(text);
}

Oca load_oca_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open OCA file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_oca(ss.str());
}

}  // namespace ocasync
