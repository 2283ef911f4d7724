#include "alblab/group_word.hpp"

#include "alblab/errors.hpp"

#include <sstream>

namespace alblab {

GroupWord::GroupWord(std::vector<GroupLetter> letters)
{
	for (auto const &l : letters) {
		if ((l.generator != 0 && l.generator != 1) || (l.exponent != 1 && l.exponent != -1))
			throw DomainError("group letters are gamma_0^{+-1} or gamma_1^{+-1}");
		if (!letters_.empty() && letters_.back().generator == l.generator &&
		    letters_.back().exponent == -l.exponent)
			letters_.pop_back();
		else
			letters_.push_back(l);
	}
}

GroupWord GroupWord::parse(std::string_view text)
{
	std::vector<GroupLetter> letters;
	std::istringstream in{std::string(text)};
	std::string tok;
	while (in >> tok) {
		int gen = -1;
		int power = 1;
		auto caret = tok.find('^');
		std::string base = tok.substr(0, caret);
		if (base == "0" || base == "g0" || base == "gamma0")
			gen = 0;
		else if (base == "1" || base == "g1" || base == "gamma1")
			gen = 1;
		else
			throw DomainError("bad group word token '" + tok + "'");
		if (caret != std::string::npos) {
			try {
				std::size_t used = 0;
				power = std::stoi(tok.substr(caret + 1), &used);
				if (used != tok.size() - caret - 1)
					throw std::invalid_argument(tok);
			} catch (std::exception const &) {
				throw DomainError("bad exponent in '" + tok + "'");
			}
		}
		for (int k = 0; k < std::abs(power); ++k)
			letters.push_back({gen, power > 0 ? 1 : -1});
	}
	return GroupWord(std::move(letters));
}

GroupWord GroupWord::inverse() const
{
	std::vector<GroupLetter> out(letters_.rbegin(), letters_.rend());
	for (auto &l : out)
		l.exponent = -l.exponent;
	return GroupWord(std::move(out));
}

GroupWord operator*(GroupWord const &a, GroupWord const &b)
{
	auto letters = a.letters_;
	letters.insert(letters.end(), b.letters_.begin(), b.letters_.end());
	return GroupWord(std::move(letters));
}

std::string GroupWord::str() const
{
	std::string out;
	for (auto const &l : letters_) {
		if (!out.empty())
			out += ' ';
		out += std::to_string(l.generator);
		if (l.exponent < 0)
			out += "^-1";
	}
	return out;
}

} // namespace alblab
