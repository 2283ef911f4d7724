#pragma once

#include "alblab/group_word.hpp"
#include "alblab/json_io.hpp"
#include "alblab/rational.hpp"
#include "alblab/tensor_series.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace alblab {

/// exp and log in the truncated group ring Q<<e0, e1>> / (degree > r).
ExactSeries exp_trunc(ExactSeries const &h);
ExactSeries log_trunc(ExactSeries const &g);

enum class CoproductClass { primitive, grouplike, neither };
std::string_view to_string(CoproductClass c);

/// Classifies h under the coproduct with e0, e1 primitive (the one induced
/// by Delta(gamma) = gamma (x) gamma on the group ring).  The coefficient of
/// u (x) v in Delta(h) is <u sh v, h>, so h is primitive iff h(empty) = 0 and
/// <u sh v, h> = 0 for all nonempty u, v, and grouplike iff h(empty) = 1 and
/// <u sh v, h> = h(u) h(v).
CoproductClass classify_coproduct(ExactSeries const &h);

/// log(exp(A) exp(B)) for primitive A, B of equal level.
ExactSeries bch(ExactSeries const &a, ExactSeries const &b);

/// Commutator ab - ba.
ExactSeries bracket(ExactSeries const &a, ExactSeries const &b);

/// Lyndon words of length 1..r in shortlex order; they index a Hall basis of
/// the free Lie algebra on e0, e1 through their standard bracketing.
std::vector<Word> lyndon_words(int r);

/// Tensor expansion of the standard bracketing of a Lyndon word, e.g.
/// "01" -> [e0, e1], "001" -> [e0, [e0, e1]].
ExactSeries lyndon_bracket(Word const &lyndon, int level);

/// Bracket expression of a Lyndon word, e.g. "[0,[0,1]]".
std::string lyndon_bracket_string(Word const &lyndon);

struct HallDimensions {
	std::vector<int> per_degree;          // entry k-1 is the dimension in degree k
	std::vector<std::vector<Word>> words; // Lyndon representatives per degree
	int total() const;
};

/// Graded dimensions of the free Lie algebra on two generators through
/// degree r, with Lyndon-word representatives.
HallDimensions hall_dims(int r);

/// Dimension of the space of primitives of degree exactly k, by exact
/// linear algebra on the shuffle pairing.
int primitive_dimension(int degree);

/// A primitive element with its coordinates in the Lyndon-bracket basis.
struct LieCoordinates {
	ExactSeries element;
	std::vector<std::pair<Word, Rational>> hall; // nonzero coordinates only
};

/// Expresses a primitive element in the Lyndon-bracket basis by exact
/// Gaussian elimination.  Throws DomainError for non-primitive input.
LieCoordinates hall_coordinates(ExactSeries const &primitive);

/// log of the image of w under gamma_i -> exp(e_i), truncated at level r.
LieCoordinates malcev_coordinates(GroupWord const &w, int r);

/// F^0 of the unipotent group for the thrice-punctured line example: the
/// trivial group, so the higher Albanese manifold is Gamma \ G(C).
inline constexpr bool f0_group_is_trivial = true;

} // namespace alblab
