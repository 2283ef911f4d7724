#pragma once

#include "alblab/group_word.hpp"

#include <complex>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace alblab {

using Complex = std::complex<double>;

/// Line segment or circular arc, parametrized by u in [0, 1].  An optional
/// warp applies the monotone reparametrization u + warp/pi * sin(pi u).
class Segment {
public:
	enum class Kind { line, arc };

	static Segment line(Complex from, Complex to);
	/// Arc of the circle |z - center| = radius from angle theta0 to theta1
	/// (counterclockwise when theta1 > theta0).
	static Segment arc(Complex center, double radius, double theta0, double theta1);

	Kind kind() const { return kind_; }
	Complex point(double u) const;
	Complex derivative(double u) const;
	Complex start() const { return point(0.0); }
	Complex end() const { return point(1.0); }
	Segment reversed() const;
	Segment warped(double warp) const;
	/// Piece [u0, u1] of this segment as a segment of its own (warp must be 0).
	Segment sub(double u0, double u1) const;

	Complex center() const { return a_; }
	double radius() const { return radius_; }
	double theta0() const { return theta0_; }
	double theta1() const { return theta1_; }
	double warp() const { return warp_; }

	/// Smallest distance from p to the points of the segment.
	double distance_to(Complex p) const;

private:
	Segment() = default;
	double reparam(double u) const;
	double reparam_derivative(double u) const;

	Kind kind_ = Kind::line;
	Complex a_{}, b_{};
	double radius_ = 0.0, theta0_ = 0.0, theta1_ = 0.0;
	double warp_ = 0.0;
};

/// Tangential base point at a puncture (0 or 1) with a nonzero tangent vector.
struct TangentialAnchor {
	int puncture = 0;
	Complex vector{1.0, 0.0};
	friend bool operator==(TangentialAnchor const &, TangentialAnchor const &) = default;
};

/// Piecewise-smooth path in C minus {0, 1}.  A tangential start anchor at p
/// requires the first segment to be a line leaving p along p + vector * R_{>0};
/// a tangential end anchor requires the last segment to arrive the same way.
class Path {
public:
	/// Validates connectivity and puncture avoidance.
	Path(std::vector<Segment> segments, std::optional<TangentialAnchor> start = std::nullopt,
	     std::optional<TangentialAnchor> end = std::nullopt);

	/// Constant path at a tangential base point.
	static Path constant_tangential(TangentialAnchor at);
	static Path polyline(std::vector<Complex> const &waypoints);
	/// Loop at the tangential base point (0, v = 1) circling 0 `turns` times.
	static Path gamma0(int turns = 1);
	/// Loop at (0, v = 1): out along [0, 1/2], `turns` times around 1, back.
	static Path gamma1(int turns = 1);
	/// Concatenation of the loops gamma0, gamma1 spelled by the word.
	static Path loop_word(GroupWord const &word);
	/// Path from (0, v = 1) to x: along the positive real axis, around 0 on a
	/// circle to arg x in (-pi, pi], then radially out to x, passing above 1
	/// when x is real and greater than 1.
	static Path standard(Complex x);

	std::vector<Segment> const &segments() const { return segments_; }
	std::optional<TangentialAnchor> const &start_anchor() const { return start_; }
	std::optional<TangentialAnchor> const &end_anchor() const { return end_; }
	bool has_tangential_anchor() const { return start_.has_value() || end_.has_value(); }
	bool is_constant() const { return segments_.empty(); }

	Complex start_point() const;
	Complex end_point() const;

	Path reversed() const;
	Path with_warp(std::vector<double> const &warps) const;
	/// Composite path: first this, then other.  Joins at a tangential base
	/// point merge the two ray segments.
	Path then(Path const &other) const;

private:
	void validate() const;

	std::vector<Segment> segments_;
	std::optional<TangentialAnchor> start_, end_;
};

Path compose_paths(std::vector<Path> const &paths);

/// Builds a path from its JSON description:
///   {"waypoints": [[re, im], ...]}, optionally with "tangential_start" and/or
///   "tangential_end": {"at": 0|1, "vector": [re, im]};
///   {"loop": "gamma0"|"gamma1", "turns": k};
///   {"arc": {"center": [re, im], "radius": r, "from": t0, "to": t1}};
///   {"standard": [re, im]}  (the standard path from (0, v = 1));
///   {"compose": [desc, ...]}.
Path make_path(nlohmann::json const &desc);

} // namespace alblab
