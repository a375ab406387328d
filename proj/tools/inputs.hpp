#pragma once

// JSON input files. Rationals may be {"num": .., "den": ..} (integers or
// strings), a string such as "3/4" or "-0.25", or a JSON integer.

#include "report.hpp"
#include "schurlab/free_space.hpp"
#include "schurlab/spaces.hpp"

#include <string>
#include <vector>

namespace schurlab::cli {

Json load_json(const std::string& path);

Rational parse_rational_json(const Json& j);

/// [{"re": r, "im": r}, ...] or [[re, im], ...]; a missing "im" means 0.
std::vector<spaces::ComplexRational> parse_complex_list(const Json& j);

/// {"labels": [...], "distances": [[r, ...], ...], "base": index or label}.
free_space::FiniteMetricSpace parse_space(const Json& j);

/// {"label": r, ...}; labels absent from the map get 0.
free_space::FreeVector parse_free_vector(const Json& j, const free_space::FiniteMetricSpace& space);

}  // namespace schurlab::cli
