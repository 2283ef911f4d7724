#include "cli.hpp"

#include "alblab/acceptance.hpp"
#include "alblab/albanese.hpp"
#include "alblab/bar_words.hpp"
#include "alblab/errors.hpp"
#include "alblab/hodge.hpp"
#include "alblab/malcev.hpp"
#include "alblab/path_integrals.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <atomic>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

namespace alblab::cli {

using json = nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// argument parsing helpers

json parse_json_arg(std::string const &text) { return json::parse(text); }

Complex complex_arg(std::string const &text)
{
	auto const first = text.find_first_not_of(' ');
	if (first != std::string::npos && text[first] == '[')
		return parse_complex(parse_json_arg(text));
	return parse_complex(std::string_view(text));
}

std::vector<std::string> split(std::string const &text, char sep)
{
	std::vector<std::string> out;
	std::string cur;
	int depth = 0;
	for (char c : text) {
		if (c == '[')
			++depth;
		if (c == ']')
			--depth;
		if (c == sep && depth == 0) {
			out.push_back(cur);
			cur.clear();
		} else {
			cur.push_back(c);
		}
	}
	out.push_back(cur);
	return out;
}

bool looks_complex(std::string const &s)
{
	return s.find('i') != std::string::npos || s.find('j') != std::string::npos || s.find('[') != std::string::npos;
}

std::vector<std::string> triple(std::string const &text, char const *what)
{
	auto parts = split(text, ',');
	if (parts.size() != 3)
		throw DomainError(fmt::format("{} needs three comma-separated entries", what));
	return parts;
}

NilpotentEndo endo_arg(std::string const &text)
{
	auto const p = triple(text, "--N");
	return {parse_rational(p[0]), parse_rational(p[1]), parse_rational(p[2])};
}

ExactSeries exact_arg(std::string const &text, int level)
{
	auto const j = parse_json_arg(text);
	return exact_series_from_json(j, level);
}

ShuffleElement shuffle_arg(std::string const &text)
{
	// a bare word ("01", or "" for the empty word) or a JSON object
	if (text.find('{') == std::string::npos) {
		std::string w;
		for (char c : text)
			if (c != '"' && c != ' ')
				w.push_back(c);
		return ShuffleElement(Word(w));
	}
	return shuffle_element_from_json(parse_json_arg(text));
}

RationalMatrix matrix_arg(std::string const &text)
{
	auto const j = parse_json_arg(text);
	if (!j.is_array() || j.empty())
		throw DomainError("--matrix must be a nonempty JSON array of rows");
	RationalMatrix m;
	for (auto const &row : j) {
		if (!row.is_array() || row.size() != j.size())
			throw DomainError("--matrix must be square");
		linalg::Vec<Rational> r;
		for (auto const &x : row)
			r.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : parse_rational(x.dump()));
		m.push_back(std::move(r));
	}
	return m;
}

// [w1, ..., wn] gives W_k = span{e_i : w_i <= k}; {"k": [[...], ...]} lists
// spanning vectors of each jump
RationalFiltration weights_arg(std::string const &text, std::size_t dim)
{
	auto const j = parse_json_arg(text);
	if (j.is_array()) {
		if (j.size() != dim)
			throw DomainError("--weights needs one weight per basis vector");
		std::vector<int> w;
		for (auto const &x : j)
			w.push_back(x.get<int>());
		auto const e = linalg::identity<Rational>(dim);
		std::map<int, linalg::Subspace<Rational>> jumps;
		for (int k : w) {
			linalg::Mat<Rational> span;
			for (std::size_t i = 0; i < dim; ++i)
				if (w[i] <= k)
					span.push_back(e[i]);
			jumps.insert_or_assign(k, linalg::Subspace<Rational>(dim, span));
		}
		return RationalFiltration(dim, std::move(jumps));
	}
	if (!j.is_object())
		throw DomainError("--weights must be an array or an object");
	std::map<int, linalg::Subspace<Rational>> jumps;
	for (auto const &[key, vecs] : j.items()) {
		linalg::Mat<Rational> span;
		for (auto const &v : vecs) {
			linalg::Vec<Rational> r;
			for (auto const &x : v)
				r.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : parse_rational(x.dump()));
			span.push_back(std::move(r));
		}
		jumps.emplace(std::stoi(key), linalg::Subspace<Rational>(dim, span));
	}
	return RationalFiltration(dim, std::move(jumps));
}

std::vector<double> epsilons_arg(std::string const &text)
{
	std::vector<double> out;
	for (auto const &p : split(text, ','))
		out.push_back(complex_arg(p).real());
	return out;
}

// ---------------------------------------------------------------------------
// output helpers

json rational_json(Rational const &q) { return format_rational(q); }

json vec_json(linalg::Vec<Rational> const &v)
{
	json out = json::array();
	for (auto const &x : v)
		out.push_back(rational_json(x));
	return out;
}

json vec_json(linalg::Vec<Complex> const &v)
{
	json out = json::array();
	for (auto const &x : v)
		out.push_back(complex_to_json(x));
	return out;
}

json filtration_json(RationalFiltration const &f)
{
	json out = json::object();
	for (auto const &[k, s] : f.jumps()) {
		json basis = json::array();
		for (auto const &v : s.basis())
			basis.push_back(vec_json(v));
		out[std::to_string(k)] = basis;
	}
	return out;
}

json int_matrix_json(IntHeisenberg const &g)
{
	json m = json::array();
	for (auto const &row : g.matrix())
		m.push_back(json(row));
	return {{"a", g.a}, {"b", g.b}, {"c", g.c}, {"matrix", m}};
}

json point_json(Heisenberg<Complex> const &p)
{
	return {{"alpha", complex_to_json(p.a)}, {"beta", complex_to_json(p.b)}, {"lambda", complex_to_json(p.c)}};
}

json albanese_json(AlbanesePoint const &p)
{
	json out = point_json(p.reduced.point);
	out["reduction_matrix"] = int_matrix_json(p.reduced.matrix);
	out["raw"] = point_json(p.raw);
	out["homotopy_class"] = p.homotopy_class.str();
	out["x"] = complex_to_json(p.x);
	out["abs_err_est"] = p.abs_err_est;
	return out;
}

json lie_json(LieCoordinates const &c)
{
	json hall = json::array();
	for (auto const &[w, q] : c.hall)
		hall.push_back({{"lyndon", w.str()}, {"bracket", lyndon_bracket_string(w)}, {"coefficient", rational_json(q)}});
	return {{"element", to_json(c.element)}, {"hall", hall}, {"level", c.element.level()}};
}

template <class T> json orbit_json(OrbitReport<T> const &r)
{
	json residual;
	if constexpr (std::is_same_v<T, Rational>)
		residual = rational_json(r.criterion_residual);
	else
		residual = complex_to_json(r.criterion_residual);
	return {{"generates", r.generates},
	        {"criterion_residual", residual},
	        {"transversal", r.transversal},
	        {"admissible", r.admissible},
	        {"positivity", r.positivity},
	        {"agrees_with_transversality", r.agrees_with_transversality},
	        {"reason", r.reason}};
}

template <class T> json hodge_json(HodgeFiltration<T> const &f)
{
	return {{"F0", json::array({vec_json(f.f0)})}, {"F-1", json::array({vec_json(f.f1[0]), vec_json(f.f1[1])})}};
}

json criterion_json(CriterionResult const &r)
{
	return {{"id", r.id},       {"name", r.name},         {"passed", r.passed}, {"seconds", r.seconds},
	        {"budget_seconds", r.budget_seconds},     {"checks", r.checks}, {"failures", r.failures},
	        {"worst", r.worst}, {"detail", r.detail}};
}

json mhs_json(MhsMorphismReport const &r)
{
	json failures = json::array();
	for (auto const &f : r.failures)
		failures.push_back({{"element", f.element}, {"vector", f.basis_vector}, {"weight_ok", f.weight_ok},
		                    {"hodge_ok", f.hodge_ok}});
	return {{"table", r.table},        {"weight_ok", r.weight_ok}, {"hodge_ok", r.hodge_ok},
	        {"nilpotent_class_ok", r.nilpotent_class_ok}, {"passed", r.passed()}, {"failures", failures}};
}

json symbolic_json(SymbolicSum const &s)
{
	json terms = json::array();
	for (auto const &[w, c] : s)
		terms.push_back({{"word", w}, {"coefficient", rational_json(c)}});
	return terms;
}

SymbolicFormTable table_arg(std::string const &text)
{
	// {"forms": {"a": {"degree": 1, "d": {"eta": "1"}}, ...},
	//  "wedges": [{"left": "a", "right": "b", "value": {"theta": "1"}}]}
	auto const j = parse_json_arg(text);
	SymbolicFormTable t;
	auto coeffs = [](json const &m) {
		std::map<Symbol, Rational> out;
		for (auto const &[k, v] : m.items())
			out[k] = v.is_string() ? parse_rational(v.get<std::string>()) : parse_rational(v.dump());
		return out;
	};
	for (auto const &[name, form] : j.at("forms").items())
		t.set_form(name, form.value("degree", 1), coeffs(form.value("d", json::object())));
	if (j.contains("wedges"))
		for (auto const &w : j["wedges"])
			t.set_wedge(w.at("left").get<std::string>(), w.at("right").get<std::string>(), coeffs(w.at("value")));
	return t;
}

// ---------------------------------------------------------------------------

std::vector<CommandInfo> const table{
    {"bar basis", "word_basis"},
    {"bar shuffle", "shuffle_product"},
    {"bar coproduct", "deconcat_coproduct"},
    {"bar differential", "bar_differential"},
    {"ii eval", "iterated_integral"},
    {"ii signature", "signature"},
    {"ii compose", "compose_signatures"},
    {"ii regularized", "regularized_signature"},
    {"ii tangential", "tangential_series"},
    {"ii monodromy", "monodromy_matrix"},
    {"malcev exp", "exp_trunc"},
    {"malcev log", "log_trunc"},
    {"malcev classify", "classify_coproduct"},
    {"malcev bch", "bch"},
    {"malcev hall", "hall_dims"},
    {"malcev coords", "malcev_coordinates"},
    {"hodge filtration", "hodge_filtration_from"},
    {"hodge transversal", "griffiths_transversal"},
    {"hodge orbit", "generates_nilpotent_orbit"},
    {"hodge rmf", "relative_monodromy_filtration"},
    {"hodge mf", "monodromy_filtration"},
    {"hodge chart", "boundary_chart_point"},
    {"hodge reduce", "reduce_mod_integral"},
    {"alb map", "albanese_point"},
    {"alb alt", "albanese_point_alt"},
    {"alb extend", "extended_albanese"},
    {"alb monodromy", "monodromy_action"},
    {"alb mhs", "lie_action_is_mhs_morphism"},
    {"alb diff", "differential_residual"},
    {"selftest", "run_acceptance"},
};

struct Settings {
	double abs_tol = 0.0; // 0: not given
	int max_subdivisions = 0;
	std::string epsilons;
	std::optional<std::string> tol_env;

	QuadratureConfig config() const
	{
		QuadratureConfig cfg;
		if (tol_env && !tol_env->empty()) {
			char *end = nullptr;
			double const v = std::strtod(tol_env->c_str(), &end);
			if (end == tol_env->c_str() || *end != '\0')
				throw DomainError("ALBLAB_TOL is not a number: " + *tol_env);
			cfg.abs_tol = v;
		}
		if (abs_tol != 0.0)
			cfg.abs_tol = abs_tol;
		if (max_subdivisions != 0)
			cfg.max_subdivisions = max_subdivisions;
		if (!epsilons.empty())
			cfg.regularization_epsilons = epsilons_arg(epsilons);
		cfg.validate();
		return cfg;
	}
};

Outcome error_outcome(int code, std::string const &kind, std::string const &message)
{
	return {code, {{"error", message}, {"kind", kind}}, {}};
}

Outcome dispatch(std::vector<std::string> const &args, Settings settings)
{
	CLI::App app{"alblab: unipotent periods of P^1 minus three points"};
	app.require_subcommand(1);
	app.add_option("--abs-tol", settings.abs_tol, "absolute tolerance (default 1e-10, or ALBLAB_TOL)");
	app.add_option("--max-subdivisions", settings.max_subdivisions, "adaptive subdivision budget");
	app.add_option("--epsilons", settings.epsilons, "comma-separated regularization split points");

	std::function<json()> action;
	auto leaf = [&](CLI::App *parent, std::string const &name, std::string const &desc) {
		return parent->add_subcommand(name, desc);
	};

	// ---- bar
	auto *bar = app.add_subcommand("bar", "exact word algebra")->require_subcommand(1);
	int level = 2;
	std::string word, a_text, b_text, table_text, path_text, x_text, loop_prefix, at_text, vector_text;
	{
		auto *c = leaf(bar, "basis", "words of length <= level");
		c->add_option("--level", level)->required();
		c->callback([&] {
			action = [&] {
				json words = json::array();
				for (auto const &w : word_basis(level))
					words.push_back(w.str());
				return json{{"count", words.size()}, {"words", words}};
			};
		});
	}
	{
		auto *c = leaf(bar, "shuffle", "shuffle product of two elements");
		c->add_option("--a", a_text)->required();
		c->add_option("--b", b_text)->required();
		c->callback([&] { action = [&] { return to_json(shuffle_product(shuffle_arg(a_text), shuffle_arg(b_text))); }; });
	}
	{
		auto *c = leaf(bar, "coproduct", "deconcatenation splittings");
		c->add_option("--word", word)->required();
		c->callback([&] {
			action = [&] {
				json out = json::array();
				for (auto const &[p, s] : deconcat_coproduct(Word(word)))
					out.push_back(json::array({p.str(), s.str()}));
				return json{{"splittings", out}};
			};
		});
	}
	{
		auto *c = leaf(bar, "differential", "symbolic bar differential");
		c->add_option("--word", word, "word over 0/1, or a JSON array of symbols")->required();
		c->add_option("--table", table_text, "form table (default: the curve, all zero)");
		c->callback([&] {
			action = [&] {
				auto const table = table_text.empty() ? SymbolicFormTable::curve_default() : table_arg(table_text);
				SymbolWord w;
				if (!word.empty() && word.front() == '[')
					w = parse_json_arg(word).get<SymbolWord>();
				else
					w = to_symbols(Word(word));
				return json{{"terms", symbolic_json(bar_differential(w, table))}};
			};
		});
	}

	// ---- ii
	auto *ii = app.add_subcommand("ii", "iterated integrals and signatures")->require_subcommand(1);
	std::string base_x = "0.5", loop_text;
	double s_value = 0.0;
	{
		auto *c = leaf(ii, "eval", "one iterated integral along a path");
		c->add_option("--word", word)->required();
		c->add_option("--path", path_text, "path JSON")->required();
		c->callback([&] {
			action = [&] {
				auto const r = iterated_integral(Word(word), make_path(parse_json_arg(path_text)), settings.config());
				return json{{"word", word}, {"value", complex_to_json(r.value)}, {"abs_err_est", r.abs_err_est}};
			};
		});
	}
	{
		auto *c = leaf(ii, "signature", "truncated signature of a path");
		c->add_option("--path", path_text, "path JSON")->required();
		c->add_option("--level", level);
		c->callback([&] {
			action = [&] {
				auto const r = signature_with_error(make_path(parse_json_arg(path_text)), level, settings.config());
				return json{{"level", level}, {"series", to_json(r.series)}, {"abs_err_est", r.abs_err_est},
				            {"pieces", r.pieces}};
			};
		});
	}
	{
		auto *c = leaf(ii, "compose", "product of two signatures");
		c->add_option("--a", a_text)->required();
		c->add_option("--b", b_text)->required();
		c->add_option("--level", level);
		c->callback([&] {
			action = [&] {
				auto const a = truncated_series_from_json(parse_json_arg(a_text), level);
				auto const b = truncated_series_from_json(parse_json_arg(b_text), level);
				return json{{"level", level}, {"series", to_json(compose_signatures(a, b))}};
			};
		});
	}
	{
		auto *c = leaf(ii, "regularized", "signature from the tangential base point to x");
		c->add_option("--x", x_text)->required();
		c->add_option("--level", level);
		c->add_option("--loop-prefix", loop_prefix, "loop word traversed first");
		c->callback([&] {
			action = [&] {
				auto const r = regularized_signature(complex_arg(x_text), level, settings.config(),
				                                     GroupWord::parse(loop_prefix));
				return json{{"level", level}, {"series", to_json(r.series)}, {"abs_err_est", r.abs_err_est}};
			};
		});
	}
	{
		auto *c = leaf(ii, "tangential", "local solution at a tangential base point");
		c->add_option("--at", at_text, "puncture 0 or 1")->required();
		c->add_option("--vector", vector_text, "tangent vector")->default_val("1");
		c->add_option("--s", s_value, "parameter: endpoint is puncture + vector * s")->required();
		c->add_option("--level", level);
		c->callback([&] {
			action = [&] {
				int const p = at_text == "0" ? 0 : at_text == "1" ? 1 : -1;
				if (p < 0)
					throw DomainError("--at must be 0 or 1");
				auto const s = tangential_series({p, complex_arg(vector_text)}, s_value, level);
				return json{{"level", level}, {"series", to_json(s)}};
			};
		});
	}
	{
		auto *c = leaf(ii, "monodromy", "integer matrix of a loop acting on the period matrix");
		c->add_option("--loop", loop_text, "loop path JSON")->required();
		c->add_option("--base-x", base_x, "period matrix is continued from the standard path to this point");
		c->callback([&] {
			action = [&] {
				auto const cfg = settings.config();
				auto const base = regularized_signature(complex_arg(base_x), 2, cfg).series;
				return int_matrix_json(monodromy_matrix(make_path(parse_json_arg(loop_text)), base, cfg));
			};
		});
	}

	// ---- malcev
	auto *mal = app.add_subcommand("malcev", "truncated group ring and free Lie algebra")->require_subcommand(1);
	std::string h_text, group_word;
	int mlevel = -1;
	{
		auto *c = leaf(mal, "exp", "exponential of a series without constant term");
		c->add_option("--series", h_text)->required();
		c->add_option("--level", mlevel);
		c->callback([&] { action = [&] { return to_json(exp_trunc(exact_arg(h_text, mlevel))); }; });
	}
	{
		auto *c = leaf(mal, "log", "logarithm of a series with constant term 1");
		c->add_option("--g", h_text)->required();
		c->add_option("--level", mlevel);
		c->callback([&] { action = [&] { return to_json(log_trunc(exact_arg(h_text, mlevel))); }; });
	}
	{
		auto *c = leaf(mal, "classify", "primitive, grouplike or neither");
		c->add_option("--series", h_text)->required();
		c->add_option("--level", mlevel);
		c->callback([&] {
			action = [&] { return json{{"class", std::string(to_string(classify_coproduct(exact_arg(h_text, mlevel))))}}; };
		});
	}
	{
		auto *c = leaf(mal, "bch", "log(exp(A) exp(B))");
		c->add_option("--a", a_text)->required();
		c->add_option("--b", b_text)->required();
		c->add_option("--level", mlevel)->required();
		c->callback([&] {
			action = [&] { return lie_json(hall_coordinates(bch(exact_arg(a_text, mlevel), exact_arg(b_text, mlevel)))); };
		});
	}
	{
		auto *c = leaf(mal, "hall", "graded dimensions and Lyndon basis of the free Lie algebra");
		c->add_option("--level", mlevel)->required();
		c->callback([&] {
			action = [&] {
				auto const h = hall_dims(mlevel);
				json basis = json::array();
				for (auto const &deg : h.words)
					for (auto const &w : deg)
						basis.push_back({{"lyndon", w.str()}, {"bracket", lyndon_bracket_string(w)}});
				json prim = json::array();
				for (int k = 1; k <= mlevel; ++k)
					prim.push_back(primitive_dimension(k));
				return json{{"per_degree", h.per_degree}, {"total", h.total()}, {"basis", basis},
				            {"primitive_dimensions", prim}, {"f0_group_trivial", f0_group_is_trivial}};
			};
		});
	}
	{
		auto *c = leaf(mal, "coords", "Malcev coordinates of a group word");
		c->add_option("--word", group_word, "e.g. \"0 1 0^-1 1^-1\"")->required();
		c->add_option("--level", mlevel)->required();
		c->callback([&] { action = [&] { return lie_json(malcev_coordinates(GroupWord::parse(group_word), mlevel)); }; });
	}

	// ---- hodge
	auto *hod = app.add_subcommand("hodge", "the rank-3 period domain")->require_subcommand(1);
	std::string n_text, f_text, matrix_text, weights_text, q_text, beta_text, lambda_text;
	int center = 0, branch = 0;
	auto with_f = [&](auto &&fn) -> json {
		auto const p = triple(f_text, "--F");
		if (looks_complex(p[0]) || looks_complex(p[1]) || looks_complex(p[2]))
			return fn(hodge_filtration_from(complex_arg(p[0]), complex_arg(p[1]), complex_arg(p[2])));
		return fn(hodge_filtration_from(parse_rational(p[0]), parse_rational(p[1]), parse_rational(p[2])));
	};
	{
		auto *c = leaf(hod, "filtration", "the flag F(alpha, beta, lambda)");
		c->add_option("--F", f_text, "alpha,beta,lambda")->required();
		c->callback([&] { action = [&] { return with_f([](auto const &f) { return hodge_json(f); }); }; });
	}
	{
		auto *c = leaf(hod, "transversal", "N F^p in F^(p-1)");
		c->add_option("--N", n_text, "a,b,c")->required();
		c->add_option("--F", f_text, "alpha,beta,lambda")->required();
		c->callback([&] {
			action = [&] {
				return with_f([&](auto const &f) { return json{{"transversal", griffiths_transversal(endo_arg(n_text), f)}}; });
			};
		});
	}
	{
		auto *c = leaf(hod, "orbit", "does (N, F) generate a nilpotent orbit");
		c->add_option("--N", n_text, "a,b,c")->required();
		c->add_option("--F", f_text, "alpha,beta,lambda")->required();
		c->callback([&] {
			action = [&] {
				return with_f([&](auto const &f) { return orbit_json(generates_nilpotent_orbit(endo_arg(n_text), f)); });
			};
		});
	}
	{
		auto *c = leaf(hod, "rmf", "relative monodromy filtration M(N, W)");
		c->add_option("--matrix", matrix_text, "N as JSON rows")->required();
		c->add_option("--weights", weights_text, "weights per basis vector, or {k: [vectors]}")->required();
		c->callback([&] {
			action = [&] {
				auto const n = matrix_arg(matrix_text);
				auto const m = relative_monodromy_filtration(n, weights_arg(weights_text, n.size()));
				if (!m)
					return json{{"exists", false}, {"filtration", "none"}};
				return json{{"exists", true}, {"filtration", filtration_json(*m)}};
			};
		});
	}
	{
		auto *c = leaf(hod, "mf", "monodromy filtration of a nilpotent matrix");
		c->add_option("--matrix", matrix_text, "N as JSON rows")->required();
		c->add_option("--center", center);
		c->callback([&] {
			action = [&] { return json{{"filtration", filtration_json(monodromy_filtration(matrix_arg(matrix_text), center))}}; };
		});
	}
	{
		auto *c = leaf(hod, "chart", "class of a point of the boundary chart");
		c->add_option("--q", q_text)->required();
		c->add_option("--beta", beta_text)->required();
		c->add_option("--lambda", lambda_text)->required();
		c->add_option("--branch", branch, "alpha = log(q)/(2 pi i) + branch");
		c->callback([&] {
			action = [&] {
				auto const cls =
				    boundary_chart_point({complex_arg(q_text), complex_arg(beta_text), complex_arg(lambda_text)}, branch);
				if (auto const *in = std::get_if<InteriorClass>(&cls)) {
					json out = point_json(in->reduced.point);
					out["kind"] = "interior";
					out["reduction_matrix"] = int_matrix_json(in->reduced.matrix);
					return out;
				}
				auto const &orb = std::get<OrbitClass>(cls);
				return json{{"kind", "nilpotent_orbit"},
				            {"N", json::array({rational_json(orb.cone_generator.a), rational_json(orb.cone_generator.b),
				                               rational_json(orb.cone_generator.c)})},
				            {"lambda", complex_to_json(orb.lambda)}};
			};
		});
	}
	{
		auto *c = leaf(hod, "reduce", "representative with real parts in [0, 1)");
		c->add_option("--point", f_text, "alpha,beta,lambda")->required();
		c->callback([&] {
			action = [&] {
				auto const p = triple(f_text, "--point");
				auto const r = reduce_mod_integral({complex_arg(p[0]), complex_arg(p[1]), complex_arg(p[2])});
				json out = point_json(r.point);
				out["reduction_matrix"] = int_matrix_json(r.matrix);
				return out;
			};
		});
	}

	// ---- alb
	auto *alb = app.add_subcommand("alb", "the second higher Albanese map")->require_subcommand(1);
	std::string table_name = "all", direction_text = "1";
	double h_step = 1e-4;
	{
		auto *c = leaf(alb, "map", "Albanese point of x");
		c->add_option("--x", x_text)->required();
		c->add_option("--loop-prefix", loop_prefix, "homotopy class: loop word traversed first");
		c->callback([&] {
			action = [&] {
				return albanese_json(albanese_point(complex_arg(x_text), GroupWord::parse(loop_prefix), settings.config()));
			};
		});
	}
	{
		auto *c = leaf(alb, "alt", "Albanese point in the dilogarithm-sheaf coordinates");
		c->add_option("--x", x_text)->required();
		c->add_option("--loop-prefix", loop_prefix, "homotopy class: loop word traversed first");
		c->callback([&] {
			action = [&] {
				return albanese_json(
				    albanese_point_alt(complex_arg(x_text), GroupWord::parse(loop_prefix), settings.config()));
			};
		});
	}
	{
		auto *c = leaf(alb, "extend", "extended map into the boundary chart, |x| < 1/2");
		c->add_option("--x", x_text)->required();
		c->callback([&] {
			action = [&] {
				auto const y = extended_albanese(complex_arg(x_text), settings.config());
				return json{{"q", complex_to_json(y.q)}, {"beta", complex_to_json(y.beta)},
				            {"lambda", complex_to_json(y.lambda)}};
			};
		});
	}
	{
		auto *c = leaf(alb, "monodromy", "integer matrix of a loop word");
		c->add_option("--word", group_word, "e.g. \"0 1 0^-1 1^-1\"")->required();
		c->add_option("--base-x", base_x);
		c->callback([&] {
			action = [&] {
				auto const m = monodromy_action(GroupWord::parse(group_word), settings.config(), complex_arg(base_x));
				json out = int_matrix_json(m.matrix);
				out["max_deviation"] = m.max_deviation;
				return out;
			};
		});
	}
	{
		auto *c = leaf(alb, "mhs", "weight and Hodge compatibility of the Lie(G) action");
		c->add_option("--table", table_name, "e23, e24, perturbed or all");
		c->callback([&] {
			action = [&] {
				std::vector<LieActionTable> tables;
				if (table_name == "e23" || table_name == "all")
					tables.push_back(LieActionTable::e23());
				if (table_name == "e24" || table_name == "all")
					tables.push_back(LieActionTable::e24());
				if (table_name == "perturbed" || table_name == "all")
					tables.push_back(LieActionTable::perturbed());
				if (tables.empty())
					throw DomainError("unknown table " + table_name);
				json out = json::array();
				for (auto const &t : tables)
					out.push_back(mhs_json(lie_action_is_mhs_morphism(t)));
				return json{{"reports", out}};
			};
		});
	}
	{
		auto *c = leaf(alb, "diff", "finite-difference check of d alpha, d beta, d lambda");
		c->add_option("--x", x_text)->required();
		c->add_option("--direction", direction_text);
		c->add_option("--step", h_step);
		c->callback([&] {
			action = [&] {
				auto const r = differential_residual(complex_arg(x_text), complex_arg(direction_text), h_step,
				                                     settings.config());
				return json{{"d_alpha", r.d_alpha}, {"d_beta", r.d_beta}, {"d_lambda", r.d_lambda},
				            {"d_lambda_alpha_dbeta", r.d_lambda_swapped}, {"max", r.max()}};
			};
		});
	}

	// ---- selftest
	auto *st = app.add_subcommand("selftest", "run the acceptance suite");
	std::string mode = "quick", only;
	st->add_option("mode", mode, "quick or full")->check(CLI::IsMember({"quick", "full"}));
	st->add_option("--only", only, "comma-separated criterion ids");
	st->callback([&] {
		action = [&] {
			AcceptanceOptions o;
			o.full = mode == "full";
			o.cfg = settings.config();
			if (!only.empty())
				for (auto const &p : split(only, ','))
					o.only.push_back(std::stoi(p));
			auto const results = run_acceptance(o, [](CriterionResult const &r) {
				std::cerr << fmt::format("[{}] {:2d} {} ({:.2f} s)\n", r.passed ? "PASS" : "FAIL", r.id, r.name, r.seconds);
			});
			json list = json::array();
			long failed = 0, failures = 0;
			for (auto const &r : results) {
				list.push_back(criterion_json(r));
				failed += r.passed ? 0 : 1;
				failures += r.failures;
			}
			return json{{"mode", mode}, {"passed", failed == 0}, {"failed_criteria", failed},
			            {"failed_checks", failures}, {"criteria", list}};
		};
	});

	try {
		std::vector<std::string> reversed(args.rbegin(), args.rend());
		app.parse(reversed);
	} catch (CLI::CallForHelp const &) {
		Outcome o;
		o.help = app.help();
		return o;
	} catch (CLI::CallForAllHelp const &) {
		Outcome o;
		o.help = app.help("", CLI::AppFormatMode::All);
		return o;
	} catch (CLI::ParseError const &e) {
		return error_outcome(exit_usage, "usage", e.what());
	}
	if (!action)
		return error_outcome(exit_usage, "usage", "no command given");
	return {exit_ok, action(), {}};
}

} // namespace

std::vector<CommandInfo> const &command_table() { return table; }

Outcome run(std::vector<std::string> const &args, std::optional<std::string> const &tol_env)
{
	Settings settings;
	if (tol_env)
		settings.tol_env = tol_env;
	else if (char const *e = std::getenv("ALBLAB_TOL"))
		settings.tol_env = std::string(e);
	try {
		return dispatch(args, settings);
	} catch (json::exception const &e) {
		return error_outcome(exit_bad_json, "malformed_json", e.what());
	} catch (DomainError const &e) {
		return error_outcome(exit_domain, "domain", e.what());
	} catch (ConvergenceError const &e) {
		return error_outcome(exit_convergence, "convergence", e.what());
	} catch (std::invalid_argument const &e) {
		return error_outcome(exit_domain, "domain", e.what());
	} catch (std::out_of_range const &e) {
		return error_outcome(exit_domain, "domain", e.what());
	}
}

namespace {

std::vector<std::string> request_argv(json const &req)
{
	if (!req.is_object() || !req.contains("command"))
		throw json::other_error::create(501, "request needs a \"command\"", &req);
	std::vector<std::string> argv;
	std::istringstream words(req["command"].get<std::string>());
	for (std::string w; words >> w;)
		argv.push_back(w);
	if (req.contains("args")) {
		for (auto const &[key, value] : req["args"].items()) {
			if (value.is_null())
				continue;
			argv.push_back(key.rfind('-', 0) == 0 ? key : "--" + key);
			argv.push_back(value.is_string() ? value.get<std::string>() : value.dump());
		}
	}
	return argv;
}

} // namespace

Outcome run_batch(std::string const &text, std::optional<std::string> const &tol_env, int workers)
{
	json doc;
	try {
		doc = json::parse(text);
	} catch (json::exception const &e) {
		return error_outcome(exit_bad_json, "malformed_json", e.what());
	}
	bool single = false;
	json requests;
	if (doc.is_array()) {
		requests = doc;
	} else if (doc.is_object() && doc.contains("batch")) {
		requests = doc["batch"];
		workers = doc.value("workers", workers);
	} else {
		requests = json::array({doc});
		single = true;
	}

	std::vector<Outcome> results(requests.size());
	std::atomic<std::size_t> next{0};
	auto work = [&] {
		for (std::size_t i; (i = next++) < requests.size();) {
			try {
				results[i] = run(request_argv(requests[i]), tol_env);
			} catch (json::exception const &e) {
				results[i] = error_outcome(exit_bad_json, "malformed_json", e.what());
			}
		}
	};
	int const n = std::max(1, std::min<int>(workers, static_cast<int>(requests.size())));
	std::vector<std::thread> pool;
	for (int t = 1; t < n; ++t)
		pool.emplace_back(work);
	work();
	for (auto &t : pool)
		t.join();

	if (single)
		return results[0];
	Outcome out;
	out.output = json::array();
	for (auto const &r : results) {
		out.output.push_back({{"exit_code", r.exit_code}, {"result", r.output}});
		if (out.exit_code == exit_ok)
			out.exit_code = r.exit_code;
	}
	return out;
}

} // namespace alblab::cli
