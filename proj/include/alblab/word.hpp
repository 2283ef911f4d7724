#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace alblab {

/// A word over the two-letter alphabet {0, 1}.  Letter 0 stands for
/// dx/x (or e0), letter 1 for dx/(1-x) (or e1).  Words are ordered
/// shortlex: by length, then lexicographically with 0 < 1.
class Word {
public:
	Word() = default;
	explicit Word(std::string_view letters);

	static Word from_index(std::size_t index);

	std::size_t size() const { return letters_.size(); }
	bool empty() const { return letters_.empty(); }
	int operator[](std::size_t i) const { return letters_[i] - '0'; }

	/// Position in the dense shortlex enumeration: 2^len - 1 + binary value.
	std::size_t index() const;

	Word prefix(std::size_t n) const { return Word(letters_.substr(0, n), Trusted{}); }
	Word suffix_from(std::size_t n) const { return Word(letters_.substr(n), Trusted{}); }
	Word operator+(Word const &other) const { return Word(letters_ + other.letters_, Trusted{}); }
	Word with_letter(int letter) const;

	std::string const &str() const { return letters_; }

	friend bool operator==(Word const &, Word const &) = default;
	friend std::strong_ordering operator<=>(Word const &a, Word const &b);

private:
	struct Trusted {};
	Word(std::string letters, Trusted) : letters_(std::move(letters)) {}

	std::string letters_;
};

/// Number of words of length <= r, i.e. 2^(r+1) - 1.
constexpr std::size_t series_size(int level) { return (std::size_t{2} << level) - 1; }

/// Offset of the first word of length len in the shortlex enumeration.
constexpr std::size_t level_offset(int len) { return (std::size_t{1} << len) - 1; }

} // namespace alblab
