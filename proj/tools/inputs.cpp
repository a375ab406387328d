#include "inputs.hpp"

#include <fstream>
#include <stdexcept>

namespace schurlab::cli {

namespace {

Rational integer_part(const Json& j) {
    if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
    if (j.is_string()) return Rational(j.get<std::string>());
    throw std::invalid_argument("expected an integer, got " + j.dump());
}

}  // namespace

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

Rational parse_rational_json(const Json& j) {
    if (j.is_object()) {
        if (!j.contains("num")) throw std::invalid_argument("rational object without \"num\": " + j.dump());
        Rational num = integer_part(j.at("num"));
        Rational den = j.contains("den") ? integer_part(j.at("den")) : Rational(1);
        if (sgn(den) == 0) throw std::invalid_argument("zero denominator in " + j.dump());
        Rational out = num / den;
        out.canonicalize();
        return out;
    }
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
    throw std::invalid_argument("not a rational: " + j.dump() + " (use {\"num\", \"den\"} or a string)");
}

std::vector<spaces::ComplexRational> parse_complex_list(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected a JSON array of complex numbers");
    std::vector<spaces::ComplexRational> out;
    for (const auto& z : j) {
        if (z.is_array()) {
            if (z.size() != 2) throw std::invalid_argument("complex pair must have two entries: " + z.dump());
            out.push_back({parse_rational_json(z[0]), parse_rational_json(z[1])});
        } else if (z.is_object() && z.contains("re")) {
            out.push_back({parse_rational_json(z.at("re")), z.contains("im") ? parse_rational_json(z.at("im")) : 0});
        } else {
            out.push_back({parse_rational_json(z), 0});
        }
    }
    return out;
}

free_space::FiniteMetricSpace parse_space(const Json& j) {
    free_space::FiniteMetricSpace s;
    for (const auto& l : j.at("labels")) s.labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    const auto& rows = j.at("distances");
    if (rows.size() != s.labels.size()) throw std::invalid_argument("distance matrix size does not match labels");
    for (const auto& row : rows) {
        if (row.size() != s.labels.size()) throw std::invalid_argument("distance matrix is not square");
        std::vector<Rational> r;
        for (const auto& d : row) r.push_back(parse_rational_json(d));
        s.distance.push_back(std::move(r));
    }
    if (j.contains("base")) {
        const auto& b = j.at("base");
        if (b.is_number_integer()) {
            s.base = b.get<std::size_t>();
        } else {
            auto idx = s.index_of(b.get<std::string>());
            if (!idx) throw std::invalid_argument("base label '" + b.get<std::string>() + "' not in the space");
            s.base = *idx;
        }
        if (s.base >= s.size()) throw std::invalid_argument("base index out of range");
    }
    s.validate();
    return s;
}

free_space::FreeVector parse_free_vector(const Json& j, const free_space::FiniteMetricSpace& space) {
    if (!j.is_object()) throw std::invalid_argument("vector must be a label -> rational map");
    free_space::FreeVector x{std::vector<Rational>(space.size())};
    for (const auto& [label, value] : j.items()) {
        auto idx = space.index_of(label);
        if (!idx) throw std::invalid_argument("label '" + label + "' not in the space");
        x.coefficients[*idx] = parse_rational_json(value);
    }
    if (sgn(x.coefficients[space.base]) != 0)
        throw std::invalid_argument("coefficient on the base point '" + space.labels[space.base] +
                                    "' must be zero (delta(base) = 0)");
    return x;
}

}  // namespace schurlab::cli
