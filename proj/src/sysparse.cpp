#include "daeidx/sysparse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <tuple>

namespace daeidx {

namespace {

enum class Tok { Num, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  size_t pos = 0;       // 1-based position in the input
  Rat value;            // Num
  bool plain_int = false;  // Num written as bare digits (valid exponent form)
  std::string text;     // Ident
  int apostrophes = 0;  // Ident
};

[[noreturn]] void fail(size_t pos, const std::string& msg) {
  throw InputError("position " + std::to_string(pos) + ": " + msg);
}

class Lexer {
public:
  explicit Lexer(const std::string& s) : s_(s) {}

  Token next() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    Token t;
    t.pos = i_ + 1;
    if (i_ >= s_.size()) return t;
    char c = s_[i_];
    switch (c) {
      case '+': ++i_; t.kind = Tok::Plus; return t;
      case '-': ++i_; t.kind = Tok::Minus; return t;
      case '*': ++i_; t.kind = Tok::Star; return t;
      case '^': ++i_; t.kind = Tok::Caret; return t;
      case '(': ++i_; t.kind = Tok::LParen; return t;
      case ')': ++i_; t.kind = Tok::RParen; return t;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      std::string num = s_.substr(start, i_ - start);
      t.kind = Tok::Num;
      t.plain_int = true;
      if (i_ < s_.size() && s_[i_] == '/') {
        size_t slash = i_;
        ++i_;
        size_t dstart = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ == dstart) fail(slash + 1, "expected denominator digits after '/'");
        std::string den = s_.substr(dstart, i_ - dstart);
        if (mpz_class(den) == 0) fail(dstart + 1, "zero denominator in rational literal");
        t.value = Rat(mpz_class(num), mpz_class(den));
        t.value.canonicalize();
        t.plain_int = false;
      } else {
        t.value = Rat(mpz_class(num));
      }
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = i_;
      ++i_;
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
        ++i_;
      t.kind = Tok::Ident;
      t.text = s_.substr(start, i_ - start);
      while (i_ < s_.size() && s_[i_] == '\'') {
        ++t.apostrophes;
        ++i_;
      }
      return t;
    }
    fail(i_ + 1, std::string("unexpected character '") + c + "'");
  }

private:
  const std::string& s_;
  size_t i_ = 0;
};

class Parser {
public:
  Parser(const std::string& text, const DaeSystem& sys, bool allow_y)
      : sys_(sys), allow_y_(allow_y), lex_(text) {
    cur_ = lex_.next();
    ahead_ = lex_.next();
  }

  DiffPoly parse() {
    if (cur_.kind == Tok::End) fail(cur_.pos, "empty expression");
    DiffPoly p = expr();
    if (cur_.kind != Tok::End) fail(cur_.pos, "unexpected trailing input");
    return p;
  }

  JetVar parse_single_jet() {
    if (cur_.kind != Tok::Ident) fail(cur_.pos, "expected a variable");
    JetVar v = jet_atom_var();
    if (cur_.kind != Tok::End) fail(cur_.pos, "unexpected trailing input");
    return v;
  }

private:
  void advance() {
    cur_ = ahead_;
    ahead_ = lex_.next();
  }

  DiffPoly expr() {
    DiffPoly p = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      bool plus = cur_.kind == Tok::Plus;
      advance();
      DiffPoly q = term();
      p = plus ? p + q : p - q;
    }
    return p;
  }

  DiffPoly term() {
    DiffPoly p = unary();
    while (cur_.kind == Tok::Star) {
      advance();
      p = p * unary();
    }
    return p;
  }

  DiffPoly unary() {
    if (cur_.kind == Tok::Minus) {
      advance();
      return -unary();
    }
    return power();
  }

  int exponent_literal() {
    if (cur_.kind == Tok::Minus) fail(cur_.pos, "negative exponent");
    if (cur_.kind != Tok::Num || !cur_.plain_int)
      fail(cur_.pos, "exponent must be a non-negative integer");
    if (!cur_.value.get_num().fits_sint_p()) fail(cur_.pos, "exponent too large");
    int e = static_cast<int>(cur_.value.get_num().get_si());
    advance();
    return e;
  }

  DiffPoly power() {
    DiffPoly base = atom();
    if (cur_.kind == Tok::Caret) {
      size_t cpos = cur_.pos;
      advance();
      if (cur_.kind == Tok::LParen)
        fail(cpos, "exponent must be a non-negative integer (derivative suffixes attach to variables)");
      base = base.pow(exponent_literal());
    }
    return base;
  }

  // consumes IDENT plus an optional derivative suffix; returns (token, deriv,
  // suffix-present). '^(k)' only counts as a suffix when no apostrophes came first.
  std::tuple<Token, int, bool> ident_with_suffix() {
    Token id = cur_;
    advance();
    int deriv = id.apostrophes;
    bool suffixed = deriv > 0;
    if (cur_.kind == Tok::Caret && ahead_.kind == Tok::LParen) {
      if (suffixed) fail(cur_.pos, "malformed derivative suffix: mixing apostrophes with ^(k)");
      advance();  // ^
      advance();  // (
      if (cur_.kind != Tok::Num || !cur_.plain_int)
        fail(cur_.pos, "malformed derivative suffix: expected a non-negative integer");
      if (!cur_.value.get_num().fits_sint_p()) fail(cur_.pos, "derivative order too large");
      deriv = static_cast<int>(cur_.value.get_num().get_si());
      advance();
      if (cur_.kind != Tok::RParen) fail(cur_.pos, "malformed derivative suffix: expected ')'");
      advance();
      suffixed = true;
    }
    return {id, deriv, suffixed};
  }

  JetVar resolve(const Token& id, int deriv) {
    auto vid = sys_.id_of(id.text);
    if (!vid) fail(id.pos, "unknown variable '" + id.text + "'");
    if (sys_.kind(*vid) == VarKind::Y && !allow_y_)
      fail(id.pos, "right-hand-side name '" + id.text + "' cannot appear here");
    return JetVar{*vid, deriv};
  }

  JetVar jet_atom_var() {
    auto [id, deriv, suffixed] = ident_with_suffix();
    if (id.text == "t") fail(id.pos, "'t' is not a jet variable");
    return resolve(id, deriv);
  }

  DiffPoly atom() {
    switch (cur_.kind) {
      case Tok::Num: {
        DiffPoly p = DiffPoly::constant(Qt(cur_.value));
        advance();
        return p;
      }
      case Tok::LParen: {
        advance();
        DiffPoly p = expr();
        if (cur_.kind != Tok::RParen) fail(cur_.pos, "expected ')'");
        advance();
        return p;
      }
      case Tok::Ident: {
        auto [id, deriv, suffixed] = ident_with_suffix();
        if (id.text == "t") {
          if (suffixed) fail(id.pos, "'t' cannot carry a derivative suffix");
          if (sys_.field != FieldTag::Qt) fail(id.pos, "'t' is reserved over Q");
          return DiffPoly::constant(Qt::t());
        }
        return DiffPoly::var(resolve(id, deriv));
      }
      default:
        fail(cur_.pos, "expected a number, variable or '('");
    }
  }

  const DaeSystem& sys_;
  bool allow_y_;
  Lexer lex_;
  Token cur_, ahead_;
};

}  // namespace

DiffPoly parse_expression(const std::string& text, const DaeSystem& sys, bool allow_y) {
  return Parser(text, sys, allow_y).parse();
}

JetVar parse_jetvar(const std::string& text, const DaeSystem& sys, bool allow_y) {
  return Parser(text, sys, allow_y).parse_single_jet();
}

namespace {

std::vector<std::string> string_list(const nlohmann::json& j, const std::string& key) {
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw InputError("'" + key + "' must be a list of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

DaeSystem load_system(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("invalid JSON: ") + ex.what());
  }
  if (!j.is_object()) throw InputError("system file must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key != "format_version" && key != "field" && key != "x" && key != "u" &&
        key != "f" && key != "g" && key != "parameters")
      throw InputError("unknown key '" + key + "' in system file");
  }
  if (!j.contains("format_version") || !j["format_version"].is_number_integer() ||
      j["format_version"].get<long>() != 1)
    throw InputError("missing or unsupported format_version (expected 1)");
  if (!j.contains("field") || !j["field"].is_string())
    throw InputError("missing 'field' (\"Q\" or \"Q(t)\")");
  std::string fs = j["field"].get<std::string>();
  FieldTag field;
  if (fs == "Q") {
    field = FieldTag::Q;
  } else if (fs == "Q(t)") {
    field = FieldTag::Qt;
  } else {
    throw InputError("field must be \"Q\" or \"Q(t)\", got \"" + fs + "\"");
  }
  if (!j.contains("u") || !j["u"].is_array() || j["u"].empty())
    throw InputError("'u' must be a non-empty list of variable names");
  if (!j.contains("g") || !j["g"].is_array())
    throw InputError("'g' must be a list of constraint polynomials");

  auto x_names = j.contains("x") ? string_list(j["x"], "x") : std::vector<std::string>{};
  auto u_names = string_list(j["u"], "u");
  auto params =
      j.contains("parameters") ? string_list(j["parameters"], "parameters") : std::vector<std::string>{};
  auto f_texts = j.contains("f") ? string_list(j["f"], "f") : std::vector<std::string>{};
  auto g_texts = string_list(j["g"], "g");
  if (f_texts.size() != x_names.size())
    throw InputError("f list length does not match the x list");

  DaeSystem sys = make_skeleton(field, x_names, u_names, static_cast<int>(g_texts.size()), params);
  for (size_t i = 0; i < f_texts.size(); ++i) {
    try {
      sys.f.push_back(parse_expression(f_texts[i], sys));
    } catch (const InputError& ex) {
      throw InputError("f[" + std::to_string(i) + "]: " + ex.what());
    }
  }
  for (size_t jx = 0; jx < g_texts.size(); ++jx) {
    try {
      sys.g.push_back(parse_expression(g_texts[jx], sys));
    } catch (const InputError& ex) {
      throw InputError("g[" + std::to_string(jx) + "]: " + ex.what());
    }
  }
  validate(sys);
  return sys;
}

DaeSystem load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_system(ss.str());
}

nlohmann::ordered_json emit_system(const DaeSystem& sys) {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["field"] = sys.field == FieldTag::Q ? "Q" : "Q(t)";
  auto names = [&](auto first, int count) {
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i) out.push_back(sys.name_of(first(i)));
    return out;
  };
  j["x"] = names([&](int i) { return sys.x_id(i); }, sys.n);
  j["u"] = names([&](int i) { return sys.u_id(i); }, sys.m);
  j["f"] = [&] {
    std::vector<std::string> out;
    for (const auto& p : sys.f) out.push_back(sys.poly_str(p));
    return out;
  }();
  j["g"] = [&] {
    std::vector<std::string> out;
    for (const auto& p : sys.g) out.push_back(sys.poly_str(p));
    return out;
  }();
  if (sys.param_count() > 0)
    j["parameters"] = names([&](int p) { return sys.param_id(p); }, sys.param_count());
  return j;
}

}  // namespace daeidx
