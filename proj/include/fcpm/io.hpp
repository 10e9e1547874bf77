#pragma once

// JSON reading and writing of parameters, points and polynomials.
// Exact scalars travel as strings "num/den" (or "re+imi"), float scalars as
// [re, im] pairs.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fcpm/params.hpp"
#include "fcpm/scalar.hpp"
#include "fcpm/singular.hpp"

namespace fcpm {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

using AnyParameterSet = std::variant<ParameterSet<GaussRational>, ParameterSet<Complex>>;

/// {"p":..,"m":..,"a":[..],"B":[[..]]}. Strings and integers are exact,
/// pairs and non-integral numbers are float; a document mixing strings with
/// float scalars is rejected. Throws ValidationError on malformed input.
AnyParameterSet parse_params(const Json& doc);
AnyParameterSet parse_params(std::string_view text);
inline AnyParameterSet parse_params(const char* text) { return parse_params(std::string_view(text)); }

/// Converts to the requested mode; float to exact throws ModeError.
AnyParameterSet coerce(AnyParameterSet ps, ScalarMode mode);
ScalarMode mode_of(const AnyParameterSet& ps);

Json to_json(const GaussRational& z);
Json to_json(const Rational& q);
Json to_json(const Complex& z);

template <Scalar S>
Json params_to_json(const ParameterSet<S>& ps);
Json params_to_json(const AnyParameterSet& ps);

/// Point lists such as "[1/3,1/5]", "[0.04,0.04]", "[[0.1,0.2],\"1/7\"]".
std::vector<GaussRational> parse_exact_point(std::string_view text);
std::vector<Complex> parse_complex_point(std::string_view text);

/// {"terms":[{"exp":[..],"coef":"num/den"}], "string":"..."}.
Json poly_to_json(const RationalPoly& r, const std::string& var = "x");

}  // namespace fcpm
