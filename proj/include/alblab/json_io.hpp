#pragma once

#include "alblab/bar_words.hpp"
#include "alblab/rational.hpp"
#include "alblab/tensor_series.hpp"

#include <complex>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace alblab {

using Complex = std::complex<double>;
using TruncatedSeries = TensorSeries<Complex>;
using ExactSeries = TensorSeries<Rational>;

/// Accepts [re, im], a bare number, or a string such as "1.5-2i", "3i", "-0.25".
Complex parse_complex(nlohmann::json const &j);
Complex parse_complex(std::string_view text);
nlohmann::json complex_to_json(Complex z);

/// {"word-string": "p/q", ...}, zero coefficients omitted.
nlohmann::json to_json(ShuffleElement const &s);
ShuffleElement shuffle_element_from_json(nlohmann::json const &j);

/// {"word-string": "p/q", ...} over the support; level stored separately.
nlohmann::json to_json(ExactSeries const &s);
/// Level is the given one, or the longest key when level < 0.
ExactSeries exact_series_from_json(nlohmann::json const &j, int level = -1);

/// [{"word": "10", "value": [re, im]}, ...] in shortlex order.
nlohmann::json to_json(TruncatedSeries const &s);
/// Accepts the array form above or an object {"word": value}; missing words
/// are zero.  Level as for exact_series_from_json.
TruncatedSeries truncated_series_from_json(nlohmann::json const &j, int level = -1);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double x);

} // namespace alblab
