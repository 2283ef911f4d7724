#include "alblab/word.hpp"

#include "alblab/errors.hpp"

namespace alblab {

Word::Word(std::string_view letters) : letters_(letters)
{
	for (char c : letters_)
		if (c != '0' && c != '1')
			throw DomainError("word letters must be '0' or '1', got '" + std::string(letters) + "'");
}

Word Word::from_index(std::size_t index)
{
	int len = 0;
	while (level_offset(len + 1) <= index)
		++len;
	std::size_t value = index - level_offset(len);
	std::string s(len, '0');
	for (int i = len - 1; i >= 0; --i, value >>= 1)
		s[i] = static_cast<char>('0' + (value & 1));
	return Word(std::move(s), Trusted{});
}

std::size_t Word::index() const
{
	std::size_t value = 0;
	for (char c : letters_)
		value = (value << 1) | static_cast<std::size_t>(c - '0');
	return level_offset(static_cast<int>(letters_.size())) + value;
}

Word Word::with_letter(int letter) const
{
	return Word(letters_ + static_cast<char>('0' + letter), Trusted{});
}

std::strong_ordering operator<=>(Word const &a, Word const &b)
{
	if (auto c = a.size() <=> b.size(); c != 0)
		return c;
	return a.letters_ <=> b.letters_;
}

} // namespace alblab
