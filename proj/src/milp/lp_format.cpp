// SPDX-License-Identifier: Apache-2.0

#include "reluplan/lp_format.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

#include "reluplan/errors.hpp"

namespace reluplan {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string bound_token(double v) {
  if (v == kInf) return "+inf";
  if (v == -kInf) return "-inf";
  return fmt(v);
}

void write_linear_expr(std::ostringstream& out,
                       const std::vector<std::pair<int, double>>& terms,
                       const Model& m, bool& first) {
  for (const auto& [j, a] : terms) {
    if (a == 0.0) continue;
    if (first) {
      out << (a < 0 ? "- " : "");
      first = false;
    } else {
      out << (a < 0 ? " - " : " + ");
    }
    const double mag = std::abs(a);
    if (mag != 1.0) out << fmt(mag) << ' ';
    out << m.vars[j].name;
  }
}

}  // namespace

std::string write_lp(const Model& model) {
  std::ostringstream out;
  out << (model.objective_sense == ObjectiveSense::Maximize ? "Maximize"
                                                            : "Minimize")
      << "\n obj:";

  bool first = true;
  std::vector<std::pair<int, double>> lin;
  for (int j = 0; j < model.num_vars(); ++j)
    if (model.obj_linear[j] != 0.0) lin.emplace_back(j, model.obj_linear[j]);
  out << ' ';
  write_linear_expr(out, lin, model, first);

  if (model.has_quadratic()) {
    out << (first ? "" : " + ") << "[ ";
    bool qfirst = true;
    for (int j = 0; j < model.num_vars(); ++j) {
      const double q = model.obj_quad[j];
      if (q == 0.0) continue;
      if (!qfirst) out << (q < 0 ? " - " : " + ");
      else if (q < 0) out << "- ";
      qfirst = false;
      out << fmt(std::abs(2.0 * q)) << ' ' << model.vars[j].name << " ^ 2";
    }
    out << " ] / 2";
    first = false;
  }
  if (model.obj_constant != 0.0) {
    out << (first ? "" : (model.obj_constant < 0 ? " -" : " +")) << ' '
        << fmt(first ? model.obj_constant : std::abs(model.obj_constant));
    first = false;
  }
  if (first) {
    out << "0";
    if (!model.vars.empty()) out << ' ' << model.vars[0].name;
  }
  out << '\n';

  out << "Subject To\n";
  for (int i = 0; i < model.num_cons(); ++i) {
    const auto& c = model.cons[i];
    out << ' ' << (c.name.empty() ? "c" + std::to_string(i) : c.name) << ": ";
    bool cfirst = true;
    write_linear_expr(out, c.coeffs, model, cfirst);
    if (cfirst) {
      out << "0";
      if (!model.vars.empty()) out << ' ' << model.vars[0].name;
    }
    switch (c.sense) {
      case ConstraintSense::LessEqual:
        out << " <= ";
        break;
      case ConstraintSense::GreaterEqual:
        out << " >= ";
        break;
      case ConstraintSense::Equal:
        out << " = ";
        break;
    }
    out << fmt(c.rhs) << '\n';
  }

  out << "Bounds\n";
  for (const auto& v : model.vars) {
    if (v.lo == -kInf && v.hi == kInf) {
      out << ' ' << v.name << " free\n";
    } else {
      out << ' ' << bound_token(v.lo) << " <= " << v.name << " <= "
          << bound_token(v.hi) << '\n';
    }
  }

  bool any_bin = false;
  for (const auto& v : model.vars)
    if (v.kind == VarKind::Binary) {
      if (!any_bin) out << "Binary\n";
      any_bin = true;
      out << ' ' << v.name << '\n';
    }

  out << "End\n";
  return out.str();
}

namespace {

enum class TokKind { Name, Number, Op, Eof };

struct Token {
  TokKind kind = TokKind::Eof;
  std::string text;
  double value = 0.0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) {}

  const Token& peek() {
    if (!has_) {
      cur_ = lex();
      has_ = true;
    }
    return cur_;
  }

  Token next() {
    Token t = peek();
    has_ = false;
    return t;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
  Token cur_;
  bool has_ = false;

  Token lex() {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '\\') {  // comment to end of line
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ >= s_.size()) return {};

    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t end = pos_;
      while (end < s_.size()) {
        const char d = s_[end];
        if (std::isdigit(static_cast<unsigned char>(d)) || d == '.') {
          ++end;
        } else if ((d == 'e' || d == 'E') && end + 1 < s_.size() &&
                   (std::isdigit(static_cast<unsigned char>(s_[end + 1])) ||
                    ((s_[end + 1] == '+' || s_[end + 1] == '-') &&
                     end + 2 < s_.size() &&
                     std::isdigit(static_cast<unsigned char>(s_[end + 2]))))) {
          end += 2;
        } else {
          break;
        }
      }
      Token t;
      t.kind = TokKind::Number;
      t.text = s_.substr(pos_, end - pos_);
      t.value = std::stod(t.text);
      pos_ = end;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[end])) ||
              s_[end] == '_' || s_[end] == '.'))
        ++end;
      Token t;
      t.kind = TokKind::Name;
      t.text = s_.substr(pos_, end - pos_);
      pos_ = end;
      return t;
    }
    // Operators, possibly two characters.
    Token t;
    t.kind = TokKind::Op;
    if ((c == '<' || c == '>' || c == '=') && pos_ + 1 < s_.size()) {
      const char d = s_[pos_ + 1];
      if ((c == '<' && d == '=') || (c == '>' && d == '=') ||
          (c == '=' && (d == '<' || d == '>'))) {
        t.text = s_.substr(pos_, 2);
        pos_ += 2;
        return t;
      }
    }
    t.text = std::string(1, c);
    ++pos_;
    return t;
  }
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

class LpParser {
 public:
  explicit LpParser(const std::string& text) : lex_(text) {}

  Model parse() {
    parse_objective_header();
    parse_objective();
    for (;;) {
      const std::string section = next_section();
      if (section == "subject to") {
        parse_constraints();
      } else if (section == "bounds") {
        parse_bounds();
      } else if (section == "binary") {
        parse_binaries();
      } else if (section == "end" || section.empty()) {
        break;
      } else {
        throw IoError("lp parse: unsupported section '" + section + "'");
      }
    }
    for (int j = 0; j < model_.num_vars(); ++j) {
      auto& v = model_.vars[j];
      if (v.kind == VarKind::Binary) {
        if (!explicit_bounds_[j]) {
          v.lo = 0.0;
          v.hi = 1.0;
        } else {
          v.lo = std::max(v.lo, 0.0);
          v.hi = std::min(v.hi, 1.0);
        }
      }
    }
    model_.validate();
    return std::move(model_);
  }

 private:
  Lexer lex_;
  Model model_;
  std::map<std::string, int> ids_;
  std::vector<char> explicit_bounds_;
  std::string pending_section_;

  int var_id(const std::string& name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    const int id = model_.add_var(name, VarKind::Continuous, 0.0, kInf);
    explicit_bounds_.push_back(0);
    ids_[name] = id;
    return id;
  }

  // Names that open a new section. "subject" and "such" consume a following
  // word ("to"/"that").
  bool is_section_word(const std::string& w) const {
    static const char* words[] = {"subject", "such",   "st",  "s.t.",
                                  "bounds",  "binary", "bin", "binaries",
                                  "general", "end",    "max", "maximize",
                                  "min",     "minimize"};
    for (const char* s : words)
      if (w == s) return true;
    return false;
  }

  std::string next_section() {
    if (!pending_section_.empty()) {
      std::string s = pending_section_;
      pending_section_.clear();
      return s;
    }
    if (lex_.peek().kind == TokKind::Eof) return "";
    if (lex_.peek().kind != TokKind::Name)
      throw IoError("lp parse: expected a section keyword, got '" +
                    lex_.peek().text + "'");
    std::string w = lower(lex_.next().text);
    if (w == "subject" || w == "such") {
      lex_.next();  // to / that
      return "subject to";
    }
    if (w == "st" || w == "s.t.") return "subject to";
    if (w == "bin" || w == "binaries") return "binary";
    return w;
  }

  void parse_objective_header() {
    std::string w = lower(lex_.next().text);
    if (w == "maximize" || w == "maximise" || w == "max")
      model_.objective_sense = ObjectiveSense::Maximize;
    else if (w == "minimize" || w == "minimise" || w == "min")
      model_.objective_sense = ObjectiveSense::Minimize;
    else
      throw IoError("lp parse: expected objective sense, got '" + w + "'");
  }

  // Returns false when the expression ended at a section keyword or a
  // relational operator (which is left for the caller).
  struct Expr {
    std::vector<std::pair<int, double>> terms;
    double constant = 0.0;
  };

  // Parses a linear (plus optionally bracketed quadratic) expression.
  // Consumes a pushed-back leading variable left over from label detection.
  Expr parse_expr(bool allow_quad) {
    Expr e;
    double sign = 1.0;
    bool have_sign = false;
    if (has_pushback_) {
      has_pushback_ = false;
      add_term(e, var_id(pushed_back_.text), 1.0);
    }
    for (;;) {
      const Token& t = lex_.peek();
      if (t.kind == TokKind::Eof) break;
      if (t.kind == TokKind::Op) {
        if (t.text == "+" || t.text == "-") {
          sign *= t.text == "-" ? -1.0 : 1.0;
          have_sign = true;
          lex_.next();
          continue;
        }
        if (t.text == "[" && allow_quad) {
          lex_.next();
          parse_quad_bracket(sign);
          sign = 1.0;
          have_sign = false;
          continue;
        }
        break;  // relational operator or other delimiter
      }
      if (t.kind == TokKind::Name) {
        if (!have_sign && is_section_word(lower(t.text))) break;
        const std::string name = lex_.next().text;
        // Label? ("name:" prefix inside constraint handled by caller.)
        const int j = var_id(name);
        add_term(e, j, sign);
        sign = 1.0;
        have_sign = false;
        continue;
      }
      // Number: coefficient (if followed by a name) or constant.
      const double num = lex_.next().value;
      if (lex_.peek().kind == TokKind::Op && lex_.peek().text == "*")
        lex_.next();
      if (lex_.peek().kind == TokKind::Name &&
          !is_section_word(lower(lex_.peek().text))) {
        const int j = var_id(lex_.next().text);
        add_term(e, j, sign * num);
      } else {
        e.constant += sign * num;
      }
      sign = 1.0;
      have_sign = false;
    }
    return e;
  }

  static void add_term(Expr& e, int j, double coeff) {
    for (auto& [id, a] : e.terms)
      if (id == j) {
        a += coeff;
        return;
      }
    e.terms.emplace_back(j, coeff);
  }

  void parse_quad_bracket(double outer_sign) {
    std::vector<std::pair<int, double>> quads;
    double sign = 1.0;
    for (;;) {
      Token t = lex_.next();
      if (t.kind == TokKind::Eof) throw IoError("lp parse: unterminated [");
      if (t.kind == TokKind::Op) {
        if (t.text == "+") continue;
        if (t.text == "-") {
          sign = -sign;
          continue;
        }
        if (t.text == "]") break;
        throw IoError("lp parse: unexpected '" + t.text + "' in [ ]");
      }
      double coeff = 1.0;
      if (t.kind == TokKind::Number) {
        coeff = t.value;
        if (lex_.peek().kind == TokKind::Op && lex_.peek().text == "*")
          lex_.next();
        t = lex_.next();
      }
      if (t.kind != TokKind::Name)
        throw IoError("lp parse: expected variable in [ ]");
      const int j = var_id(t.text);
      Token caret = lex_.next();
      if (caret.text != "^" || lex_.next().value != 2.0)
        throw IoError("lp parse: only squared terms are supported in [ ]");
      quads.emplace_back(j, sign * coeff);
      sign = 1.0;
    }
    double divisor = 1.0;
    if (lex_.peek().kind == TokKind::Op && lex_.peek().text == "/") {
      lex_.next();
      divisor = lex_.next().value;
    }
    for (const auto& [j, q] : quads)
      model_.obj_quad[j] += outer_sign * q / divisor;
  }

  void parse_objective() {
    // Optional "obj:" label.
    skip_label();
    Expr e = parse_expr(true);
    for (const auto& [j, a] : e.terms) model_.obj_linear[j] += a;
    model_.obj_constant += e.constant;
  }

  void skip_label() {
    if (lex_.peek().kind != TokKind::Name) return;
    // Lookahead for ':' requires a second token; emulate by trying.
    Token name = lex_.next();
    if (lex_.peek().kind == TokKind::Op && lex_.peek().text == ":") {
      lex_.next();
      last_label_ = name.text;
    } else {
      pushed_back_ = name;
      has_pushback_ = true;
    }
  }

  std::string last_label_;
  Token pushed_back_;
  bool has_pushback_ = false;

  void parse_constraints() {
    for (;;) {
      if (lex_.peek().kind == TokKind::Eof) break;
      if (lex_.peek().kind == TokKind::Name &&
          is_section_word(lower(lex_.peek().text)) && !has_pushback_)
        break;
      last_label_.clear();
      if (!has_pushback_) skip_label();
      Expr e = parse_expr(false);
      Token op = lex_.next();
      ConstraintSense sense;
      if (op.text == "<=" || op.text == "=<" || op.text == "<")
        sense = ConstraintSense::LessEqual;
      else if (op.text == ">=" || op.text == "=>" || op.text == ">")
        sense = ConstraintSense::GreaterEqual;
      else if (op.text == "=")
        sense = ConstraintSense::Equal;
      else
        throw IoError("lp parse: expected constraint sense, got '" + op.text +
                      "'");
      const double rhs = parse_signed_number();
      std::string name = last_label_.empty()
                             ? "c" + std::to_string(model_.num_cons())
                             : last_label_;
      model_.add_constraint(std::move(name), std::move(e.terms), sense,
                            rhs - e.constant);
    }
  }

  double parse_signed_number() {
    double sign = 1.0;
    Token t = lex_.next();
    while (t.kind == TokKind::Op && (t.text == "+" || t.text == "-")) {
      if (t.text == "-") sign = -sign;
      t = lex_.next();
    }
    if (t.kind != TokKind::Number)
      throw IoError("lp parse: expected a number, got '" + t.text + "'");
    return sign * t.value;
  }

  double bound_value(const Token& t, double sign) {
    if (t.kind == TokKind::Number) return sign * t.value;
    const std::string w = lower(t.text);
    if (w == "inf" || w == "infinity") return sign * kInf;
    throw IoError("lp parse: expected a bound, got '" + t.text + "'");
  }

  void parse_bounds() {
    for (;;) {
      const Token& t = lex_.peek();
      if (t.kind == TokKind::Eof) break;
      if (t.kind == TokKind::Name && is_section_word(lower(t.text))) break;

      if (t.kind == TokKind::Number || t.text == "+" || t.text == "-") {
        // lo <= x <= hi
        double sign = 1.0;
        Token tok = lex_.next();
        while (tok.kind == TokKind::Op) {
          if (tok.text == "-") sign = -sign;
          tok = lex_.next();
        }
        const double lo = bound_value(tok, sign);
        expect_op("<=");
        const int j = var_id(lex_.next().text);
        expect_op("<=");
        sign = 1.0;
        tok = lex_.next();
        while (tok.kind == TokKind::Op) {
          if (tok.text == "-") sign = -sign;
          tok = lex_.next();
        }
        model_.vars[j].lo = lo;
        model_.vars[j].hi = bound_value(tok, sign);
        explicit_bounds_[j] = 1;
        continue;
      }

      const int j = var_id(lex_.next().text);
      const Token& op = lex_.peek();
      if (op.kind == TokKind::Name && lower(op.text) == "free") {
        lex_.next();
        model_.vars[j].lo = -kInf;
        model_.vars[j].hi = kInf;
        explicit_bounds_[j] = 1;
        continue;
      }
      Token o = lex_.next();
      double sign = 1.0;
      Token v = lex_.next();
      while (v.kind == TokKind::Op) {
        if (v.text == "-") sign = -sign;
        v = lex_.next();
      }
      const double val = bound_value(v, sign);
      if (o.text == "<=" || o.text == "=<")
        model_.vars[j].hi = val;
      else if (o.text == ">=" || o.text == "=>")
        model_.vars[j].lo = val;
      else if (o.text == "=")
        model_.vars[j].lo = model_.vars[j].hi = val;
      else
        throw IoError("lp parse: bad bound line near '" + o.text + "'");
      explicit_bounds_[j] = 1;
    }
  }

  void expect_op(const std::string& op) {
    Token t = lex_.next();
    if (t.text != op && !(op == "<=" && t.text == "=<"))
      throw IoError("lp parse: expected '" + op + "', got '" + t.text + "'");
  }

  void parse_binaries() {
    for (;;) {
      const Token& t = lex_.peek();
      if (t.kind == TokKind::Eof) break;
      if (t.kind != TokKind::Name) throw IoError("lp parse: bad Binary section");
      if (is_section_word(lower(t.text))) break;
      model_.vars[var_id(lex_.next().text)].kind = VarKind::Binary;
    }
  }
};

}  // namespace

Model parse_lp(const std::string& text) {
  LpParser parser(text);
  return parser.parse();
}

}  // namespace reluplan
