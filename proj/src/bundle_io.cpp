#include "qmckay/bundle_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace qmckay {

namespace {

const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object())
        throw SyntaxError(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw SyntaxError(path + ": missing field \"" + std::string(key) + "\"");
    return *it;
}

std::string string_field(const Json& j, const char* key, const std::string& path) {
    const Json& v = field(j, key, path);
    if (!v.is_string()) throw SyntaxError(path + "/" + key + ": expected a string");
    return v.get<std::string>();
}

long long int_field(const Json& j, const char* key, const std::string& path) {
    const Json& v = field(j, key, path);
    if (!v.is_number_integer()) throw SyntaxError(path + "/" + key + ": expected an integer");
    return v.get<long long>();
}

Rational rational_from_json(const Json& j, const std::string& path) {
    if (!j.is_string()) throw SyntaxError(path + ": rationals are \"p/q\" strings");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const SyntaxError& e) {
        throw SyntaxError(path + ": " + e.what());
    } catch (const SemanticError& e) {
        throw SemanticError(path + ": " + e.what());
    }
}

} // namespace

FramedRational framed_from_json(const Json& j, const std::string& path) {
    if (j.is_string()) return FramedRational(rational_from_json(j, path));
    if (j.is_object()) {
        FramedRational v;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.key() == "c0")
                v.c0 = rational_from_json(it.value(), path + "/c0");
            else if (it.key() == "c1")
                v.c1 = rational_from_json(it.value(), path + "/c1");
            else
                throw SyntaxError(path + ": unknown key \"" + it.key() + "\"");
        }
        return v;
    }
    throw SyntaxError(path + ": expected \"p/q\" or {\"c0\", \"c1\"}");
}

Json framed_to_json(const FramedRational& v) {
    if (v.framing_free()) return v.c0.to_string();
    return Json{{"c0", v.c0.to_string()}, {"c1", v.c1.to_string()}};
}

Json cyclotomic_to_json(const Cyclotomic& x) {
    Json coords = Json::array();
    for (const Rational& c : x.coords()) coords.push_back(c.to_string());
    return Json{{"order", x.order()}, {"coords", std::move(coords)}};
}

Json monomial_to_json(const Monomial& m) {
    Json j = Json::object();
    for (const auto& [var, e] : m.exponents()) j[var] = e.to_string();
    return j;
}

Json series_to_json(const PuiseuxSeries& s) {
    Json terms = Json::array();
    for (const auto& [monomial, coeff] : s.terms())
        terms.push_back(Json{{"monomial", monomial_to_json(monomial)},
                             {"coeff", cyclotomic_to_json(coeff)}});
    Json vars = Json::array();
    for (const std::string& v : s.region().variables) vars.push_back(v);
    return Json{{"region", Json{{"m0_max", s.region().m0_max}, {"variables", std::move(vars)}}},
                {"terms", std::move(terms)}};
}

namespace {

FramedLinearForm form_from_json(const Json& j, const std::string& path,
                                const std::set<std::string>& index_vars) {
    if (!j.is_object()) throw SyntaxError(path + ": expected a linear-form object");
    FramedLinearForm form;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "constant") {
            form.constant = framed_from_json(it.value(), path + "/constant");
        } else if (it.key() == "coeffs") {
            const Json& coeffs = it.value();
            if (!coeffs.is_object()) throw SyntaxError(path + "/coeffs: expected an object");
            for (auto ct = coeffs.begin(); ct != coeffs.end(); ++ct) {
                if (!index_vars.count(ct.key()))
                    throw SemanticError(path + "/coeffs: unknown index variable \"" + ct.key() +
                                        "\"");
                form.coeffs[ct.key()] =
                    framed_from_json(ct.value(), path + "/coeffs/" + ct.key());
            }
        } else {
            throw SyntaxError(path + ": unknown key \"" + it.key() + "\"");
        }
    }
    return form;
}

SuperpotentialSpec spec_from_json(const Json& j, const std::string& path, int root_order) {
    SuperpotentialSpec spec;

    const Json& vars = field(j, "variables", path);
    if (!vars.is_array()) throw SyntaxError(path + "/variables: expected an array");
    for (const Json& v : vars) spec.variables.push_back(v.get<std::string>());

    const Json& ivars = field(j, "index_vars", path);
    if (!ivars.is_array()) throw SyntaxError(path + "/index_vars: expected an array");
    for (const Json& v : ivars) spec.index_vars.push_back(v.get<std::string>());
    const std::set<std::string> index_set(spec.index_vars.begin(), spec.index_vars.end());
    const std::set<std::string> var_set(spec.variables.begin(), spec.variables.end());

    spec.brane_index = string_field(j, "brane_index", path);
    if (!index_set.count(spec.brane_index))
        throw SemanticError(path + "/brane_index: \"" + spec.brane_index +
                            "\" is not an index variable");

    const Json& constraints = field(j, "constraints", path);
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        FramedLinearForm form = form_from_json(
            constraints[i], path + "/constraints/" + std::to_string(i), index_set);
        if (!form.framing_free())
            throw SemanticError(path + "/constraints/" + std::to_string(i) +
                                ": constraints must be framing-free");
        spec.constraints.push_back(std::move(form));
    }

    spec.prefactor = form_from_json(field(j, "prefactor", path), path + "/prefactor", index_set);
    const Json& facts = field(j, "factorial_factors", path);
    for (std::size_t i = 0; i < facts.size(); ++i)
        spec.factorial_factors.push_back(form_from_json(
            facts[i], path + "/factorial_factors/" + std::to_string(i), index_set));
    spec.ratio_num = form_from_json(field(j, "ratio_num", path), path + "/ratio_num", index_set);
    spec.ratio_den = form_from_json(field(j, "ratio_den", path), path + "/ratio_den", index_set);

    const Json& sign = field(j, "sign", path);
    spec.sign.linear =
        form_from_json(field(sign, "linear", path + "/sign"), path + "/sign/linear", index_set);
    const Json& floors = field(sign, "floors", path + "/sign");
    for (std::size_t i = 0; i < floors.size(); ++i)
        spec.sign.floors.push_back(
            form_from_json(floors[i], path + "/sign/floors/" + std::to_string(i), index_set));

    const Json& mmap = field(j, "monomial_map", path);
    if (!mmap.is_object()) throw SyntaxError(path + "/monomial_map: expected an object");
    for (auto it = mmap.begin(); it != mmap.end(); ++it) {
        if (!index_set.count(it.key()))
            throw SemanticError(path + "/monomial_map: unknown index variable \"" + it.key() +
                                "\"");
        if (!it.value().is_object())
            throw SyntaxError(path + "/monomial_map/" + it.key() + ": expected an object");
        for (auto qt = it.value().begin(); qt != it.value().end(); ++qt) {
            if (!var_set.count(qt.key()))
                throw SemanticError(path + "/monomial_map/" + it.key() +
                                    ": unknown variable \"" + qt.key() + "\"");
            spec.monomial_map[it.key()][qt.key()] = rational_from_json(
                qt.value(), path + "/monomial_map/" + it.key() + "/" + qt.key());
        }
    }

    if (j.contains("root_order")) {
        const long long n = int_field(j, "root_order", path);
        if (root_order != 0 && n != root_order)
            throw SemanticError(path + "/root_order: differs from the bundle root_order");
        root_order = static_cast<int>(n);
    }
    if (root_order <= 0)
        throw SemanticError(path + ": root_order missing (required outside a bundle)");
    spec.root_order = root_order;
    return spec;
}

Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SyntaxError(std::string("not valid JSON: ") + e.what());
    }
}

} // namespace

SuperpotentialSpec parse_spec(const std::string& text) {
    return spec_from_json(parse_text(text), "/", 0);
}

GeometryBundle parse_bundle(const std::string& text) {
    const Json j = parse_text(text);
    GeometryBundle bundle;
    bundle.name = string_field(j, "name", "/");

    const Json& rays = field(j, "rays", "/");
    if (!rays.is_array()) throw SyntaxError("/rays: expected an array");
    for (std::size_t i = 0; i < rays.size(); ++i) {
        const Json& ray = rays[i];
        if (!ray.is_array() || ray.size() != 3)
            throw SyntaxError("/rays/" + std::to_string(i) + ": expected [x, y, z]");
        std::array<std::int64_t, 3> r{ray[0].get<std::int64_t>(), ray[1].get<std::int64_t>(),
                                      ray[2].get<std::int64_t>()};
        if (r[2] != 1)
            throw SemanticError("/rays/" + std::to_string(i) +
                                ": Calabi-Yau rays must have last coordinate 1");
        bundle.toric.rays.push_back(r);
    }

    if (j.contains("glsm_rows")) {
        const Json& rows = j["glsm_rows"];
        if (!rows.is_array()) throw SyntaxError("/glsm_rows: expected an array");
        for (const Json& row : rows) {
            std::vector<std::int64_t> r;
            for (const Json& v : row) r.push_back(v.get<std::int64_t>());
            bundle.glsm_rows.push_back(std::move(r));
        }
    }

    const int root_order = static_cast<int>(int_field(j, "root_order", "/"));
    if (root_order < 1) throw SemanticError("/root_order: must be a positive integer");

    ChargeVectorSystem& sys = bundle.system;
    sys.framing_symbol = string_field(j, "framing_symbol", "/");
    sys.root_order = root_order;
    sys.n_toric = static_cast<int>(int_field(j, "n_toric", "/"));
    sys.brane_row = static_cast<int>(int_field(j, "brane_row", "/"));

    const Json& rows = field(j, "charge_rows", "/");
    if (!rows.is_array() || rows.empty()) throw SyntaxError("/charge_rows: expected rows");
    const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
    const Eigen::Index c = static_cast<Eigen::Index>(rows[0].size());
    if (c != sys.n_toric + 2)
        throw SemanticError("/charge_rows: rows have " + std::to_string(c) +
                            " entries, expected n_toric + 2 = " + std::to_string(sys.n_toric + 2));
    sys.coeff0 = RationalMatrix::Constant(r, c, Rational(0));
    sys.coeff1 = RationalMatrix::Constant(r, c, Rational(0));
    for (Eigen::Index i = 0; i < r; ++i) {
        const Json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c)
            throw SemanticError("/charge_rows/" + std::to_string(i) + ": ragged row");
        for (Eigen::Index k = 0; k < c; ++k) {
            FramedRational v =
                framed_from_json(row[static_cast<std::size_t>(k)],
                                 "/charge_rows/" + std::to_string(i) + "/" + std::to_string(k));
            sys.coeff0(i, k) = std::move(v.c0);
            sys.coeff1(i, k) = std::move(v.c1);
        }
    }
    if (sys.brane_row < 0 || sys.brane_row >= r)
        throw SemanticError("/brane_row: out of range");

    bundle.spec = spec_from_json(field(j, "spec", "/"), "/spec", root_order);

    // Variable names tie the parts together: one q-variable per charge row,
    // with the brane variable sitting on the brane row.
    if (static_cast<Eigen::Index>(bundle.spec.variables.size()) != r)
        throw SemanticError("/spec/variables: expected one variable per charge row");
    if (bundle.spec.brane_variable() !=
        bundle.spec.variables[static_cast<std::size_t>(sys.brane_row)])
        throw SemanticError("/spec/monomial_map: brane index must map to the brane-row variable");

    return bundle;
}

GeometryBundle load_bundle(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw SyntaxError("cannot open bundle file " + file.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_bundle(buffer.str());
}

} // namespace qmckay
