#include "alblab/json_io.hpp"

#include "alblab/errors.hpp"

#include <charconv>
#include <cmath>

namespace alblab {

namespace {

double parse_real(std::string_view s, std::string_view whole)
{
	if (s.empty() || s == "+")
		return 1.0;
	if (s == "-")
		return -1.0;
	if (s.front() == '+')
		s.remove_prefix(1);
	double v = 0.0;
	auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
	if (ec != std::errc{} || ptr != s.data() + s.size())
		throw DomainError("bad complex number '" + std::string(whole) + "'");
	return v;
}

} // namespace

Complex parse_complex(std::string_view text)
{
	std::string s;
	for (char c : text)
		if (c != ' ')
			s.push_back(c);
	if (s.empty())
		throw DomainError("empty complex number");
	if (s.back() != 'i' && s.back() != 'j')
		return {parse_real(s, text), 0.0};
	s.pop_back();
	// split at the last sign that is not part of an exponent and not leading
	std::size_t split = std::string::npos;
	for (std::size_t k = s.size(); k-- > 1;) {
		if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
			split = k;
			break;
		}
	}
	if (split == std::string::npos)
		return {0.0, parse_real(s, text)};
	return {parse_real(std::string_view(s).substr(0, split), text),
	        parse_real(std::string_view(s).substr(split), text)};
}

Complex parse_complex(nlohmann::json const &j)
{
	if (j.is_number())
		return {j.get<double>(), 0.0};
	if (j.is_string())
		return parse_complex(std::string_view(j.get_ref<std::string const &>()));
	if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
		return {j[0].get<double>(), j[1].get<double>()};
	throw DomainError("expected a complex number, got " + j.dump());
}

nlohmann::json complex_to_json(Complex z)
{
	// normalize -0.0 so output is byte-stable
	auto clean = [](double v) { return v == 0.0 ? 0.0 : v; };
	return nlohmann::json::array({clean(z.real()), clean(z.imag())});
}

nlohmann::json to_json(ShuffleElement const &s)
{
	auto j = nlohmann::json::object();
	for (auto const &[w, c] : s.terms())
		j[w.str()] = format_rational(c);
	return j;
}

ShuffleElement shuffle_element_from_json(nlohmann::json const &j)
{
	if (!j.is_object())
		throw DomainError("shuffle element must be a JSON object");
	ShuffleElement s;
	for (auto const &[key, value] : j.items())
		s.add(Word(key), value.is_string() ? parse_rational(value.get<std::string>())
		                                   : parse_rational(value.dump()));
	return s;
}

nlohmann::json to_json(ExactSeries const &s)
{
	auto j = nlohmann::json::object();
	for (std::size_t i = 0; i < s.size(); ++i)
		if (!is_zero(s[i]))
			j[Word::from_index(i).str()] = format_rational(s[i]);
	return j;
}

ExactSeries exact_series_from_json(nlohmann::json const &j, int level)
{
	if (!j.is_object())
		throw DomainError("series must be a JSON object");
	int longest = 0;
	for (auto const &[key, value] : j.items())
		longest = std::max(longest, static_cast<int>(Word(key).size()));
	if (level < 0)
		level = longest;
	if (longest > level)
		throw DomainError("series has words longer than the truncation level");
	ExactSeries s(level);
	for (auto const &[key, value] : j.items())
		s[Word(key)] = value.is_string() ? parse_rational(value.get<std::string>())
		                                 : parse_rational(value.dump());
	return s;
}

nlohmann::json to_json(TruncatedSeries const &s)
{
	auto j = nlohmann::json::array();
	for (std::size_t i = 0; i < s.size(); ++i)
		j.push_back({{"word", Word::from_index(i).str()}, {"value", complex_to_json(s[i])}});
	return j;
}

TruncatedSeries truncated_series_from_json(nlohmann::json const &j, int level)
{
	std::vector<std::pair<Word, Complex>> terms;
	if (j.is_array()) {
		for (auto const &t : j) {
			if (!t.is_object() || !t.contains("word") || !t.contains("value"))
				throw DomainError("series entries need \"word\" and \"value\"");
			terms.emplace_back(Word(t["word"].get<std::string>()), parse_complex(t["value"]));
		}
	} else if (j.is_object()) {
		for (auto const &[key, value] : j.items())
			terms.emplace_back(Word(key), parse_complex(value));
	} else {
		throw DomainError("series must be a JSON array or object");
	}
	int longest = 0;
	for (auto const &[w, v] : terms)
		longest = std::max(longest, static_cast<int>(w.size()));
	if (level < 0)
		level = longest;
	if (longest > level)
		throw DomainError("series has words longer than the truncation level");
	TruncatedSeries s(level);
	for (auto const &[w, v] : terms)
		s[w] = v;
	return s;
}

std::string format_double(double x)
{
	char buf[64];
	auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
	return std::string(buf, ptr);
}

} // namespace alblab
