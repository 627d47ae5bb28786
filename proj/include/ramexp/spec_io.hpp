#pragma once

#include <string>

#include <json.hpp>

#include "ramexp/arith.hpp"
#include "ramexp/coefficients.hpp"

namespace ramexp {

using Json = nlohmann::json;

// Complex values in files: a number, a string ("-3/4", "0.25"), or a [re, im] pair of either.
// Parse errors carry the file name and a JSON pointer to the offending node.
template <class T> T parse_value(const Json& j, const std::string& where);

template <class T> CoefficientSpec<T> parse_spec(const Json& j, const std::string& source);
template <class T> CoefficientSpec<T> load_spec(const std::string& path);

// {"values": [...]} or {"function": "id|phi|sigma|one|unit|divisor_reciprocal_sum", "a_max": N}
template <class T> TabulatedFunction<T> parse_function(const Json& j, const std::string& source);
template <class T> TabulatedFunction<T> load_function(const std::string& path);

Json read_json_file(const std::string& path);

// Floats as [re, im] numbers; exact values as [re, im] strings.
Json value_to_json(const Complex& z);
Json value_to_json(const QComplex& z);

template <class T> Json spec_to_json(const CoefficientSpec<T>& g);
Json index_to_json(unsigned idx);  // "inf" for kInfinite

}  // namespace ramexp
