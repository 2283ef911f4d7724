#include "alblab/rational.hpp"

#include "alblab/errors.hpp"

#include <string>

namespace alblab {

Rational parse_rational(std::string_view text)
{
	std::string s(text);
	if (s.empty())
		throw DomainError("empty rational");
	try {
		if (auto dot = s.find('.'); dot != std::string::npos) {
			if (s.find('/') != std::string::npos)
				throw DomainError("bad rational '" + s + "'");
			std::string digits = s.substr(0, dot) + s.substr(dot + 1);
			if (digits.empty() || digits == "-" || digits == "+")
				throw DomainError("bad rational '" + s + "'");
			if (digits[0] == '+')
				digits.erase(0, 1);
			mpz_class denom = 1;
			for (std::size_t i = dot + 1; i < s.size(); ++i)
				denom *= 10;
			Rational q(mpz_class(digits), denom);
			q.canonicalize();
			return q;
		}
		if (s[0] == '+')
			s.erase(0, 1);
		Rational q(s);
		if (q.get_den() == 0)
			throw DomainError("zero denominator in '" + s + "'");
		q.canonicalize();
		return q;
	} catch (std::invalid_argument const &) {
		throw DomainError("bad rational '" + std::string(text) + "'");
	}
}

std::string format_rational(Rational const &q)
{
	return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace alblab
