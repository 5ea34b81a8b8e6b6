#include "qhs/parse.hpp"

#include <cctype>
#include <json.hpp>
#include <sstream>
#include <utility>

#include "qhs/error.hpp"

namespace qhs {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(long line, long column, const std::string& what) {
  std::ostringstream msg;
  msg << "line " << line << ", column " << column << ": " << what;
  fail(Err::ParseError, msg.str());
}

// parse_rational with position context attached to the failure message.
Rational rational_at(const std::string& text, long line, long column) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    parse_fail(line, column, e.what());
  }
}

// --- EXPR format -----------------------------------------------------------

struct ExprScanner {
  const std::string& text;
  long line;
  size_t pos = 0;

  long column() const { return static_cast<long>(pos) + 1; }
  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  void skip_space() {
    while (!done() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
};

long scan_exponent(ExprScanner& s) {
  if (!s.done() && s.peek() == '^') {
    ++s.pos;
    const size_t start = s.pos;
    while (!s.done() && std::isdigit(static_cast<unsigned char>(s.peek())))
      ++s.pos;
    if (s.pos == start)
      parse_fail(s.line, s.column(), "expected an exponent after '^'");
    return std::stol(s.text.substr(start, s.pos - start));
  }
  return 1;
}

// poly := term (("+"|"-") term)*, with an optional sign before the first
// term; term := coeff? mono?; mono := ("x" ("^" int)?)? ("y" ("^" int)?)?
std::vector<DocTerm> parse_expression(const std::string& text, long line) {
  ExprScanner s{text, line};
  std::vector<DocTerm> terms;
  s.skip_space();
  if (s.done()) parse_fail(line, s.column(), "empty polynomial expression");
  bool first = true;
  while (true) {
    int sign = 1;
    s.skip_space();
    if (!s.done() && (s.peek() == '+' || s.peek() == '-')) {
      if (s.peek() == '-') sign = -1;
      ++s.pos;
    } else if (!first) {
      if (s.done()) break;
      parse_fail(line, s.column(), "expected '+' or '-' between terms");
    }
    s.skip_space();

    const long col = s.column();
    Rational coeff = 1;
    bool saw_anything = false;
    if (!s.done() && std::isdigit(static_cast<unsigned char>(s.peek()))) {
      const size_t start = s.pos;
      while (!s.done() && std::isdigit(static_cast<unsigned char>(s.peek())))
        ++s.pos;
      std::string number = s.text.substr(start, s.pos - start);
      if (!s.done() && s.peek() == '/') {
        ++s.pos;
        const size_t den_start = s.pos;
        while (!s.done() && std::isdigit(static_cast<unsigned char>(s.peek())))
          ++s.pos;
        if (s.pos == den_start)
          parse_fail(line, s.column(), "expected a denominator after '/'");
        number += '/' + s.text.substr(den_start, s.pos - den_start);
      }
      coeff = rational_at(number, line, col);
      saw_anything = true;
    }

    DocTerm term;
    if (!s.done() && s.peek() == 'x') {
      ++s.pos;
      term.i = scan_exponent(s);
      saw_anything = true;
    }
    if (!s.done() && s.peek() == 'y') {
      ++s.pos;
      term.j = scan_exponent(s);
      saw_anything = true;
    }
    if (!saw_anything)
      parse_fail(line, s.column(), "expected a coefficient or monomial");
    term.coeff = sign * coeff;
    terms.push_back(std::move(term));

    s.skip_space();
    if (s.done()) break;
    if (s.peek() != '+' && s.peek() != '-')
      parse_fail(line, s.column(), "unexpected character in expression");
    first = false;
  }
  return terms;
}

FieldDocument parse_expr_document(const std::string& text) {
  FieldDocument doc;
  std::istringstream in(text);
  std::string raw;
  long line_no = 0;
  int stage = 0;  // 0 = header, 1 = P line, 2 = Q line, 3 = done
  while (std::getline(in, raw)) {
    ++line_no;
    std::string lineText = raw;
    const size_t hash = lineText.find('#');
    if (hash != std::string::npos) lineText.erase(hash);
    const size_t begin = lineText.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const size_t end = lineText.find_last_not_of(" \t\r");
    lineText = lineText.substr(begin, end - begin + 1);

    if (stage == 0) {
      std::istringstream header(lineText);
      long p = 0, q = 0, m = 0;
      if (!(header >> p >> q) || p < 1 || q < 1)
        parse_fail(line_no, 1, "header must be 'p q [m]' with positive p, q");
      doc.p = p;
      doc.q = q;
      if (header >> m) {
        if (m < 1) parse_fail(line_no, 1, "m must be positive");
        doc.m = m;
      }
      std::string rest;
      if (header >> rest)
        parse_fail(line_no, 1, "unexpected trailing header text");
      stage = 1;
    } else if (stage == 1) {
      doc.p_terms = parse_expression(lineText, line_no);
      stage = 2;
    } else if (stage == 2) {
      doc.q_terms = parse_expression(lineText, line_no);
      stage = 3;
    } else {
      parse_fail(line_no, 1, "unexpected extra line");
    }
  }
  if (stage != 3)
    parse_fail(line_no + 1, 1,
               "expected a header line and two component expressions");
  return doc;
}

// --- JSON format -----------------------------------------------------------

long json_positive(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    fail(Err::ParseError, std::string("missing integer key '") + key + "'");
  const long value = j[key].get<long>();
  if (value < 1)
    fail(Err::ParseError, std::string("'") + key + "' must be positive");
  return value;
}

std::vector<DocTerm> json_terms(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    fail(Err::ParseError, std::string("missing term array '") + key + "'");
  std::vector<DocTerm> terms;
  for (const json& entry : j[key]) {
    if (!entry.is_array() || entry.size() != 3 ||
        !entry[0].is_number_integer() || !entry[1].is_number_integer() ||
        !entry[2].is_string())
      fail(Err::ParseError,
           std::string("terms of '") + key + "' must be [i, j, \"coeff\"]");
    DocTerm term;
    term.i = entry[0].get<long>();
    term.j = entry[1].get<long>();
    if (term.i < 0 || term.j < 0)
      fail(Err::ParseError, "exponents must be non-negative");
    term.coeff = rational_at(entry[2].get<std::string>(), 1, 1);
    terms.push_back(std::move(term));
  }
  return terms;
}

FieldDocument parse_json_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Err::ParseError, e.what());
  }
  if (!j.is_object()) fail(Err::ParseError, "top level must be an object");
  FieldDocument doc;
  doc.p = json_positive(j, "p");
  doc.q = json_positive(j, "q");
  if (j.contains("m")) doc.m = json_positive(j, "m");
  doc.p_terms = json_terms(j, "P");
  doc.q_terms = json_terms(j, "Q");
  return doc;
}

// Weighted level p*i + q*j - weight + 1, which must be the same for every
// monomial of a component; nullopt for an empty component.
std::optional<long> component_level(const std::vector<DocTerm>& terms, long p,
                                    long q, long weight) {
  std::optional<long> level;
  for (const DocTerm& t : terms) {
    if (t.coeff == 0) continue;
    const long value = p * t.i + q * t.j - weight + 1;
    if (!level)
      level = value;
    else if (*level != value)
      fail(Err::DegreeInferenceError,
           "component mixes weighted degrees; cannot infer m");
  }
  return level;
}

}  // namespace

DocFormat detect_format(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? DocFormat::JSON : DocFormat::EXPR;
  }
  return DocFormat::EXPR;
}

FieldDocument parse_field(const std::string& text, DocFormat format) {
  return format == DocFormat::JSON ? parse_json_document(text)
                                   : parse_expr_document(text);
}

std::string render_field(const FieldDocument& doc) {
  json j;
  j["p"] = doc.p;
  j["q"] = doc.q;
  if (doc.m) j["m"] = *doc.m;
  auto dump_terms = [](const std::vector<DocTerm>& terms) {
    json list = json::array();
    for (const DocTerm& t : terms)
      list.push_back(json::array({t.i, t.j, to_string(t.coeff)}));
    return list;
  };
  j["P"] = dump_terms(doc.p_terms);
  j["Q"] = dump_terms(doc.q_terms);
  return j.dump(2) + "\n";
}

QHField to_field(const FieldDocument& doc) {
  QHField X;
  X.w.p = doc.p;
  X.w.q = doc.q;
  for (const DocTerm& t : doc.p_terms)
    X.P.set_coeff(t.i, t.j, X.P.coeff(t.i, t.j) + t.coeff);
  for (const DocTerm& t : doc.q_terms)
    X.Q.set_coeff(t.i, t.j, X.Q.coeff(t.i, t.j) + t.coeff);
  if (doc.m) {
    X.w.m = *doc.m;
    return X;
  }
  const std::optional<long> from_p =
      component_level(doc.p_terms, doc.p, doc.q, doc.p);
  const std::optional<long> from_q =
      component_level(doc.q_terms, doc.p, doc.q, doc.q);
  if (from_p && from_q && *from_p != *from_q)
    fail(Err::DegreeInferenceError,
         "the components imply different values of m");
  if (!from_p && !from_q)
    fail(Err::DegreeInferenceError,
         "cannot infer m from a field with no terms");
  X.w.m = from_p ? *from_p : *from_q;
  return X;
}

FieldDocument to_document(const QHField& X) {
  FieldDocument doc;
  doc.p = X.w.p;
  doc.q = X.w.q;
  doc.m = X.w.m;
  for (const auto& [exps, coeff] : X.P.terms())
    doc.p_terms.push_back({exps.first, exps.second, coeff});
  for (const auto& [exps, coeff] : X.Q.terms())
    doc.q_terms.push_back({exps.first, exps.second, coeff});
  return doc;
}

}  // namespace qhs
