#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qmckay/potential.hpp"
#include "qmckay/series.hpp"

namespace qmckay {

using Json = nlohmann::ordered_json;

// Framed rationals accept "p/q" (framing-free) or {"c0": "p/q", "c1": "p/q"}.
FramedRational framed_from_json(const Json& j, const std::string& path);
Json framed_to_json(const FramedRational& v);

Json cyclotomic_to_json(const Cyclotomic& x);
Json monomial_to_json(const Monomial& m);
Json series_to_json(const PuiseuxSeries& s);

// Superpotential data alone; the document must carry root_order when it is
// parsed outside a bundle.
SuperpotentialSpec parse_spec(const std::string& text);

// One geometry file: name, rays, glsm_rows, framing_symbol, root_order,
// n_toric, brane_row, charge_rows, spec. All rationals "p/q". Malformed
// documents raise SyntaxError with a field path; well-formed nonsense
// (zero denominators, unknown variables, framed constraints, inconsistent
// naming) raises SemanticError.
GeometryBundle parse_bundle(const std::string& text);
GeometryBundle load_bundle(const std::filesystem::path& file);

} // namespace qmckay
