#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace alblab {

/// A letter of a word in the free group on gamma_0, gamma_1.
struct GroupLetter {
	int generator = 0; // 0 or 1
	int exponent = 1;  // +1 or -1
	friend bool operator==(GroupLetter const &, GroupLetter const &) = default;
};

/// Freely reduced word in gamma_0^{+-1}, gamma_1^{+-1}.
class GroupWord {
public:
	GroupWord() = default;
	/// Reduces the given letters.
	explicit GroupWord(std::vector<GroupLetter> letters);

	/// Parses space-separated tokens "0", "1", "0^-1", "1^-1" (also "0^1", "0^-2", ...).
	static GroupWord parse(std::string_view text);

	std::vector<GroupLetter> const &letters() const { return letters_; }
	std::size_t size() const { return letters_.size(); }
	bool empty() const { return letters_.empty(); }

	GroupWord inverse() const;
	friend GroupWord operator*(GroupWord const &a, GroupWord const &b);
	friend bool operator==(GroupWord const &, GroupWord const &) = default;

	/// Inverse of parse(), tokens separated by single spaces.
	std::string str() const;

	static GroupWord generator(int g, int exponent = 1) { return GroupWord({{g, exponent}}); }
	static GroupWord commutator(GroupWord const &a, GroupWord const &b)
	{
		return a * b * a.inverse() * b.inverse();
	}

private:
	std::vector<GroupLetter> letters_;
};

} // namespace alblab
