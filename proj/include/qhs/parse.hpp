#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhs/field.hpp"

namespace qhs {

enum class DocFormat { JSON, EXPR };

// One monomial coeff * x^i y^j of a serialized field component.
struct DocTerm {
  long i = 0;
  long j = 0;
  Rational coeff;

  friend bool operator==(const DocTerm&, const DocTerm&) = default;
};

// Serialized planar field. The JSON shape is
//   {"p": 1, "q": 2, "m": 2, "P": [[i, j, "coeff"], ...], "Q": [...]}
// with m optional, and coefficients written as integer or num/den strings.
// The EXPR shape is a small text file: '#' comment lines, then a header
// line "p q [m]", then one polynomial expression line for each component.
struct FieldDocument {
  long p = 1;
  long q = 1;
  std::optional<long> m;
  std::vector<DocTerm> p_terms;
  std::vector<DocTerm> q_terms;

  friend bool operator==(const FieldDocument&, const FieldDocument&) = default;
};

// ParseError carries a line/column (EXPR) or byte offset (JSON) message.
FieldDocument parse_field(const std::string& text, DocFormat format);

// JSON when the first non-space byte is '{', EXPR otherwise.
DocFormat detect_format(const std::string& text);

// Canonical JSON rendering; parse_field(render_field(d), JSON) == d.
std::string render_field(const FieldDocument& doc);

// Realizes the document as a field. A missing m is inferred from the
// supports (weighted degree of P minus p + 1, cross-checked against Q);
// DegreeInferenceError when the supports are mixed or disagree.
QHField to_field(const FieldDocument& doc);

FieldDocument to_document(const QHField& X);

}  // namespace qhs
