#include "fcpm/io.hpp"

#include <cctype>
#include <cstdlib>

#include "fcpm/errors.hpp"

namespace fcpm {

namespace {

enum class Kind { neutral, exact, floating };

Kind kind_of(const Json& v) {
  if (v.is_string()) return Kind::exact;
  if (v.is_number_integer() || v.is_number_unsigned()) return Kind::neutral;
  if (v.is_number_float() || v.is_array()) return Kind::floating;
  throw ValidationError("malformed parameter document", {"scalar " + v.dump() + " is neither a string, a number nor a pair"});
}

GaussRational exact_scalar(const Json& v) {
  if (v.is_string()) {
    try {
      return parse_gauss_rational(v.get<std::string>());
    } catch (const std::exception& e) {
      throw ValidationError("malformed parameter document", {"cannot parse scalar " + v.dump() + ": " + e.what()});
    }
  }
  return GaussRational(Rational(v.dump()));
}

Complex float_scalar(const Json& v) {
  if (v.is_array()) {
    if (v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw ValidationError("malformed parameter document", {"complex scalar " + v.dump() + " must be [re, im]"});
    }
    return {v[0].get<double>(), v[1].get<double>()};
  }
  if (v.is_string()) return to_complex(exact_scalar(v));
  return {v.get<double>(), 0.0};
}

int required_int(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    throw ValidationError("malformed parameter document", {std::string("\"") + key + "\" must be an integer"});
  }
  return doc[key].get<int>();
}

template <class S, class F>
ParameterSet<S> build(const Json& doc, int p, int m, F&& scalar) {
  std::vector<S> a;
  for (const auto& v : doc["a"]) a.push_back(scalar(v));
  std::vector<std::vector<S>> rows;
  for (const auto& row : doc["B"]) {
    if (!row.is_array()) throw ValidationError("malformed parameter document", {"every row of \"B\" must be an array"});
    auto& out = rows.emplace_back();
    for (const auto& v : row) out.push_back(scalar(v));
  }
  try {
    return ParameterSet<S>(p, m, std::move(a), std::move(rows));
  } catch (const std::invalid_argument& e) {
    throw ValidationError("malformed parameter document", {e.what()});
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

// Splits the inside of "[...]" at top-level commas.
std::vector<std::string_view> split_list(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw ValidationError("malformed point", {"expected a bracketed list, got " + std::string(text)});
  }
  text = text.substr(1, text.size() - 2);
  std::vector<std::string_view> parts;
  if (trim(text).empty()) return parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(trim(text.substr(start)));
  return parts;
}

Rational exact_token(std::string_view tok) {
  try {
    return parse_rational(unquote(tok));
  } catch (const std::exception& e) {
    throw ValidationError("malformed point", {"cannot parse coordinate " + std::string(tok) + ": " + e.what()});
  }
}

double float_token(std::string_view tok) {
  std::string s = unquote(tok);
  if (s.find('/') != std::string::npos) return exact_token(s).get_d();
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ValidationError("malformed point", {"cannot parse coordinate " + s});
  }
  return v;
}

}  // namespace

AnyParameterSet parse_params(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("malformed parameter document", {"the document must be a JSON object"});
  const int p = required_int(doc, "p");
  const int m = required_int(doc, "m");
  if (!doc.contains("a") || !doc["a"].is_array()) {
    throw ValidationError("malformed parameter document", {"\"a\" must be an array"});
  }
  if (!doc.contains("B") || !doc["B"].is_array()) {
    throw ValidationError("malformed parameter document", {"\"B\" must be an array of rows"});
  }
  bool exact = false;
  bool floating = false;
  auto note = [&](const Json& v) {
    Kind k = kind_of(v);
    exact = exact || k == Kind::exact;
    floating = floating || k == Kind::floating;
  };
  for (const auto& v : doc["a"]) note(v);
  for (const auto& row : doc["B"]) {
    if (row.is_array()) {
      for (const auto& v : row) note(v);
    }
  }
  if (exact && floating) {
    throw ValidationError("malformed parameter document",
                          {"exact (\"num/den\") and float ([re,im]) scalars cannot be mixed"});
  }
  if (floating) return build<Complex>(doc, p, m, float_scalar);
  return build<GaussRational>(doc, p, m, exact_scalar);
}

AnyParameterSet parse_params(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError("malformed parameter document", {std::string("invalid JSON: ") + e.what()});
  }
  return parse_params(doc);
}

ScalarMode mode_of(const AnyParameterSet& ps) {
  return std::holds_alternative<ParameterSet<GaussRational>>(ps) ? ScalarMode::exact : ScalarMode::floating;
}

AnyParameterSet coerce(AnyParameterSet ps, ScalarMode mode) {
  if (mode_of(ps) == mode) return ps;
  if (mode == ScalarMode::floating) return std::get<ParameterSet<GaussRational>>(ps).to_float();
  throw ModeError("float parameters cannot be used in exact mode");
}

Json to_json(const GaussRational& z) { return to_string(z); }
Json to_json(const Rational& q) { return to_string(q); }
Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

template <Scalar S>
Json params_to_json(const ParameterSet<S>& ps) {
  Json doc;
  doc["p"] = ps.p();
  doc["m"] = ps.m();
  Json a = Json::array();
  for (const auto& v : ps.a()) a.push_back(to_json(v));
  doc["a"] = std::move(a);
  Json rows = Json::array();
  for (const auto& row : ps.rows()) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_json(v));
    rows.push_back(std::move(r));
  }
  doc["B"] = std::move(rows);
  return doc;
}

template Json params_to_json(const ParameterSet<GaussRational>&);
template Json params_to_json(const ParameterSet<Complex>&);

Json params_to_json(const AnyParameterSet& ps) {
  return std::visit([](const auto& v) { return params_to_json(v); }, ps);
}

std::vector<GaussRational> parse_exact_point(std::string_view text) {
  std::vector<GaussRational> out;
  for (auto part : split_list(text)) {
    if (!part.empty() && part.front() == '[') {
      auto pair = split_list(part);
      if (pair.size() != 2) throw ValidationError("malformed point", {"complex coordinate " + std::string(part) + " must be [re, im]"});
      out.emplace_back(exact_token(pair[0]), exact_token(pair[1]));
      continue;
    }
    try {
      out.push_back(parse_gauss_rational(unquote(part)));
    } catch (const std::exception& e) {
      throw ValidationError("malformed point", {"cannot parse coordinate " + std::string(part) + ": " + e.what()});
    }
  }
  return out;
}

std::vector<Complex> parse_complex_point(std::string_view text) {
  std::vector<Complex> out;
  for (auto part : split_list(text)) {
    if (!part.empty() && part.front() == '[') {
      auto pair = split_list(part);
      if (pair.size() != 2) throw ValidationError("malformed point", {"complex coordinate " + std::string(part) + " must be [re, im]"});
      out.emplace_back(float_token(pair[0]), float_token(pair[1]));
      continue;
    }
    std::string s = unquote(part);
    if (s.find('i') != std::string::npos) {
      out.push_back(to_complex(parse_gauss_rational(s)));
    } else {
      out.emplace_back(float_token(s), 0.0);
    }
  }
  return out;
}

Json poly_to_json(const RationalPoly& r, const std::string& var) {
  Json terms = Json::array();
  for (const auto& [e, c] : r.terms()) {
    Json t;
    t["exp"] = e;
    t["coef"] = to_string(c);
    terms.push_back(std::move(t));
  }
  Json doc;
  doc["terms"] = std::move(terms);
  doc["string"] = format_poly(r, var);
  return doc;
}

}  // namespace fcpm
