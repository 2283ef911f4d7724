#include "alblab/path.hpp"

#include "alblab/errors.hpp"
#include "alblab/json_io.hpp"

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

namespace alblab {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double join_tol = 1e-12;
constexpr double puncture_tol = 1e-12;

Complex puncture_point(int p) { return {static_cast<double>(p), 0.0}; }

bool close(Complex a, Complex b) { return std::abs(a - b) <= join_tol * (1.0 + std::abs(a)); }

/// True when z lies on the open ray p + v * R_{>0}.
bool on_ray(Complex p, Complex v, Complex z)
{
	Complex const t = (z - p) / v;
	return t.real() > 0.0 && std::abs(t.imag()) <= 1e-9 * std::abs(t);
}

} // namespace

// ---------------------------------------------------------------------------
// Segment

Segment Segment::line(Complex from, Complex to)
{
	Segment s;
	s.kind_ = Kind::line;
	s.a_ = from;
	s.b_ = to;
	return s;
}

Segment Segment::arc(Complex center, double radius, double theta0, double theta1)
{
	if (!(radius > 0.0))
		throw DomainError("arc radius must be positive");
	Segment s;
	s.kind_ = Kind::arc;
	s.a_ = center;
	s.radius_ = radius;
	s.theta0_ = theta0;
	s.theta1_ = theta1;
	return s;
}

double Segment::reparam(double u) const
{
	return warp_ == 0.0 ? u : u + warp_ / pi * std::sin(pi * u);
}

double Segment::reparam_derivative(double u) const
{
	return warp_ == 0.0 ? 1.0 : 1.0 + warp_ * std::cos(pi * u);
}

Complex Segment::point(double u) const
{
	double const t = reparam(u);
	if (kind_ == Kind::line) {
		if (t == 0.0)
			return a_;
		if (t == 1.0)
			return b_;
		return a_ + (b_ - a_) * t;
	}
	return a_ + std::polar(radius_, theta0_ + (theta1_ - theta0_) * t);
}

Complex Segment::derivative(double u) const
{
	double const dt = reparam_derivative(u);
	if (kind_ == Kind::line)
		return (b_ - a_) * dt;
	double const theta = theta0_ + (theta1_ - theta0_) * reparam(u);
	return Complex(0.0, 1.0) * std::polar(radius_, theta) * ((theta1_ - theta0_) * dt);
}

Segment Segment::reversed() const
{
	Segment s = *this;
	if (kind_ == Kind::line)
		std::swap(s.a_, s.b_);
	else
		std::swap(s.theta0_, s.theta1_);
	s.warp_ = -warp_; // u -> 1-u conjugates the warp's sine term into -warp
	return s;
}

Segment Segment::warped(double warp) const
{
	if (!(std::abs(warp) < 1.0))
		throw DomainError("warp must lie in (-1, 1) to stay monotone");
	Segment s = *this;
	s.warp_ = warp;
	return s;
}

Segment Segment::sub(double u0, double u1) const
{
	if (warp_ != 0.0)
		throw DomainError("sub-segments of warped segments are not supported");
	if (kind_ == Kind::line)
		return line(point(u0), point(u1));
	return arc(a_, radius_, theta0_ + (theta1_ - theta0_) * u0, theta0_ + (theta1_ - theta0_) * u1);
}

double Segment::distance_to(Complex p) const
{
	if (kind_ == Kind::line) {
		Complex const d = b_ - a_;
		double const len2 = std::norm(d);
		if (len2 == 0.0)
			return std::abs(p - a_);
		double t = std::real((p - a_) * std::conj(d)) / len2;
		t = std::clamp(t, 0.0, 1.0);
		return std::abs(p - (a_ + d * t));
	}
	double const to_circle = std::abs(std::abs(p - a_) - radius_);
	double const lo = std::min(theta0_, theta1_);
	double const hi = std::max(theta0_, theta1_);
	if (hi - lo >= 2.0 * pi || p == a_)
		return p == a_ ? radius_ : to_circle;
	double phi = std::arg(p - a_);
	while (phi < lo)
		phi += 2.0 * pi;
	while (phi - 2.0 * pi >= lo)
		phi -= 2.0 * pi;
	if (phi <= hi)
		return to_circle;
	return std::min(std::abs(p - start()), std::abs(p - end()));
}

// ---------------------------------------------------------------------------
// Path

Path::Path(std::vector<Segment> segments, std::optional<TangentialAnchor> start,
           std::optional<TangentialAnchor> end)
    : segments_(std::move(segments)), start_(start), end_(end)
{
	validate();
}

void Path::validate() const
{
	for (auto const *anchor : {&start_, &end_}) {
		if (!anchor->has_value())
			continue;
		if ((*anchor)->puncture != 0 && (*anchor)->puncture != 1)
			throw DomainError("tangential anchors sit at the punctures 0 or 1");
		if ((*anchor)->vector == Complex(0.0))
			throw DomainError("tangent vector must be nonzero");
	}
	if (segments_.empty()) {
		if (!start_ || start_ != end_)
			throw DomainError("an empty path must be a constant path at a tangential base point");
		return;
	}
	for (std::size_t i = 0; i + 1 < segments_.size(); ++i)
		if (!close(segments_[i].end(), segments_[i + 1].start()))
			throw DomainError("path segments are disconnected");

	std::size_t const last = segments_.size() - 1;
	for (std::size_t i = 0; i <= last; ++i) {
		Segment const &seg = segments_[i];
		for (int q = 0; q <= 1; ++q) {
			bool const starts_here = i == 0 && start_ && start_->puncture == q;
			bool const ends_here = i == last && end_ && end_->puncture == q;
			Complex const p = puncture_point(q);
			if (starts_here || ends_here) {
				if (seg.kind() != Segment::Kind::line)
					throw DomainError("a segment at a tangential anchor must be a line");
				if (starts_here && (!close(seg.start(), p) || !on_ray(p, start_->vector, seg.end())))
					throw DomainError("first segment must leave the puncture along the tangent vector");
				if (ends_here && (!close(seg.end(), p) || !on_ray(p, end_->vector, seg.start())))
					throw DomainError("last segment must reach the puncture along the tangent vector");
				if (starts_here && ends_here)
					throw DomainError("a single segment cannot start and end at the same puncture");
				continue;
			}
			if (seg.distance_to(p) <= puncture_tol)
				throw DomainError("path passes through the puncture " + std::to_string(q));
		}
	}
}

Complex Path::start_point() const
{
	return segments_.empty() ? puncture_point(start_->puncture) : segments_.front().start();
}

Complex Path::end_point() const
{
	return segments_.empty() ? puncture_point(end_->puncture) : segments_.back().end();
}

Path Path::constant_tangential(TangentialAnchor at) { return Path({}, at, at); }

Path Path::polyline(std::vector<Complex> const &waypoints)
{
	if (waypoints.empty())
		throw DomainError("a path needs at least one waypoint");
	std::vector<Segment> segs;
	if (waypoints.size() == 1)
		segs.push_back(Segment::line(waypoints[0], waypoints[0]));
	for (std::size_t i = 0; i + 1 < waypoints.size(); ++i)
		segs.push_back(Segment::line(waypoints[i], waypoints[i + 1]));
	return Path(std::move(segs));
}

namespace {

constexpr double gamma0_radius = 0.25;
constexpr double gamma1_radius = 0.5;
TangentialAnchor const base_anchor{0, {1.0, 0.0}};

} // namespace

Path Path::gamma0(int turns)
{
	if (turns == 0)
		return constant_tangential(base_anchor);
	double const rho = gamma0_radius;
	return Path({Segment::line(0.0, rho), Segment::arc(0.0, rho, 0.0, 2.0 * pi * turns), Segment::line(rho, 0.0)},
	            base_anchor, base_anchor);
}

Path Path::gamma1(int turns)
{
	if (turns == 0)
		return constant_tangential(base_anchor);
	double const rho = gamma1_radius;
	return Path({Segment::line(0.0, 1.0 - rho), Segment::arc(1.0, rho, pi, pi + 2.0 * pi * turns),
	             Segment::line(1.0 - rho, 0.0)},
	            base_anchor, base_anchor);
}

Path Path::loop_word(GroupWord const &word)
{
	Path out = constant_tangential(base_anchor);
	for (auto const &l : word.letters())
		out = out.then(l.generator == 0 ? gamma0(l.exponent) : gamma1(l.exponent));
	return out;
}

Path Path::standard(Complex x)
{
	if (std::abs(x) <= puncture_tol || std::abs(x - 1.0) <= puncture_tol)
		throw DomainError("the standard path needs x away from 0 and 1");
	double const r = std::abs(x);
	double const theta = std::arg(x);
	double const rho = std::min(r, 0.5);
	std::vector<Segment> segs{Segment::line(0.0, rho)};
	if (theta != 0.0)
		segs.push_back(Segment::arc(0.0, rho, 0.0, theta));
	if (r > rho) {
		Complex const from = std::polar(rho, theta);
		if (theta == 0.0 && x.real() > 1.0) {
			Complex const above{1.0, 0.5};
			segs.push_back(Segment::line(from, above));
			segs.push_back(Segment::line(above, x));
		} else {
			segs.push_back(Segment::line(from, x));
		}
	}
	return Path(std::move(segs), base_anchor);
}

Path Path::reversed() const
{
	std::vector<Segment> segs;
	for (auto it = segments_.rbegin(); it != segments_.rend(); ++it)
		segs.push_back(it->reversed());
	return Path(std::move(segs), end_, start_);
}

Path Path::with_warp(std::vector<double> const &warps) const
{
	if (warps.size() != segments_.size())
		throw DomainError("one warp per segment required");
	auto segs = segments_;
	for (std::size_t i = 0; i < segs.size(); ++i)
		segs[i] = segs[i].warped(warps[i]);
	return Path(std::move(segs), start_, end_);
}

Path Path::then(Path const &other) const
{
	if (is_constant()) {
		if (other.start_ != start_)
			throw DomainError("paths do not meet at the same tangential base point");
		return other;
	}
	if (other.is_constant()) {
		if (end_ != other.start_)
			throw DomainError("paths do not meet at the same tangential base point");
		return *this;
	}
	if (end_.has_value() != other.start_.has_value() || (end_ && end_ != other.start_))
		throw DomainError("paths do not meet at the same base point");

	std::vector<Segment> segs = segments_;
	if (!end_) {
		if (!close(end_point(), other.start_point()))
			throw DomainError("paths do not meet: end point differs from start point");
		segs.insert(segs.end(), other.segments_.begin(), other.segments_.end());
		return Path(std::move(segs), start_, other.end_);
	}
	// Both pieces run along the same ray into and out of the puncture; replace
	// them by the segment between their far ends.
	Complex const from = segs.back().start();
	segs.pop_back();
	Complex const to = other.segments_.front().end();
	if (!close(from, to))
		segs.push_back(Segment::line(from, to));
	segs.insert(segs.end(), other.segments_.begin() + 1, other.segments_.end());
	if (segs.empty())
		return constant_tangential(*start_);
	return Path(std::move(segs), start_, other.end_);
}

Path compose_paths(std::vector<Path> const &paths)
{
	if (paths.empty())
		throw DomainError("compose needs at least one path");
	Path out = paths.front();
	for (std::size_t i = 1; i < paths.size(); ++i)
		out = out.then(paths[i]);
	return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

std::optional<TangentialAnchor> anchor_from_json(nlohmann::json const &desc, char const *key)
{
	if (!desc.contains(key))
		return std::nullopt;
	auto const &a = desc.at(key);
	TangentialAnchor anchor;
	anchor.puncture = a.value("at", 0);
	anchor.vector = a.contains("vector") ? parse_complex(a.at("vector")) : Complex(1.0, 0.0);
	return anchor;
}

} // namespace

Path make_path(nlohmann::json const &desc)
{
	if (!desc.is_object())
		throw DomainError("path description must be a JSON object");
	if (desc.contains("compose")) {
		std::vector<Path> parts;
		for (auto const &s : desc.at("compose"))
			parts.push_back(make_path(s));
		return compose_paths(parts);
	}
	if (desc.contains("loop")) {
		auto const name = desc.at("loop").get<std::string>();
		int const turns = desc.value("turns", 1);
		if (name == "gamma0")
			return Path::gamma0(turns);
		if (name == "gamma1")
			return Path::gamma1(turns);
		throw DomainError("unknown loop '" + name + "'");
	}
	if (desc.contains("loop_word"))
		return Path::loop_word(GroupWord::parse(desc.at("loop_word").get<std::string>()));
	if (desc.contains("standard"))
		return Path::standard(parse_complex(desc.at("standard")));
	if (desc.contains("arc")) {
		auto const &a = desc.at("arc");
		return Path({Segment::arc(parse_complex(a.at("center")), a.at("radius").get<double>(),
		                          a.at("from").get<double>(), a.at("to").get<double>())});
	}
	auto start = anchor_from_json(desc, "tangential_start");
	auto end = anchor_from_json(desc, "tangential_end");
	if (!desc.contains("waypoints")) {
		if (start && !end)
			return Path::constant_tangential(*start);
		throw DomainError("path desc needs waypoints, loop, arc, standard or compose");
	}
	std::vector<Complex> pts;
	for (auto const &w : desc.at("waypoints"))
		pts.push_back(parse_complex(w));
	if (pts.empty())
		throw DomainError("empty waypoint list");

	// Prepend/append the anchored puncture, stepping out along its ray first
	// when the nearest waypoint is off the ray.
	auto attach = [](std::vector<Complex> &v, TangentialAnchor const &a, bool front) {
		Complex const p = puncture_point(a.puncture);
		Complex const near = front ? v.front() : v.back();
		if (close(near, p))
			return;
		std::vector<Complex> extra{p};
		if (!on_ray(p, a.vector, near)) {
			double const step = std::min(0.1, std::abs(near - p) / 2.0) / std::abs(a.vector);
			extra.push_back(p + a.vector * step);
		}
		if (front)
			v.insert(v.begin(), extra.begin(), extra.end());
		else
			v.insert(v.end(), extra.rbegin(), extra.rend());
	};
	if (start)
		attach(pts, *start, true);
	if (end)
		attach(pts, *end, false);
	if (pts.size() == 1 && (start || end))
		throw DomainError("anchored path needs at least one waypoint besides the puncture");
	std::vector<Segment> segs;
	if (pts.size() == 1)
		segs.push_back(Segment::line(pts[0], pts[0]));
	for (std::size_t i = 0; i + 1 < pts.size(); ++i)
		segs.push_back(Segment::line(pts[i], pts[i + 1]));
	return Path(std::move(segs), start, end);
}

} // namespace alblab
