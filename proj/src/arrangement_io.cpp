#include "hypermw/arrangement_io.hpp"

#include <fstream>

#include "hypermw/expression.hpp"
#include "hypermw/presentation.hpp"

namespace hypermw {

using nlohmann::json;

namespace {

Scalar entry(const Field& f, const json& v, std::size_t row, std::size_t col) {
    std::string where = "hyperplane " + std::to_string(row + 1) + " entry " + std::to_string(col);
    if (v.is_string()) {
        try {
            return Scalar::parse(f, v.get<std::string>());
        } catch (const Error& e) {
            throw Error(where + ": " + e.what());
        }
    }
    if (v.is_number_integer()) return Scalar(f, v.get<long>());
    throw Error(where + ": expected a decimal string or an integer");
}

json index_list(const IndexSet& s) {
    json out = json::array();
    for (int i : s) out.push_back(i + 1);
    return out;
}

json nf_json(const NormalForm& x, const Arrangement& a) {
    json terms = json::array();
    for (const auto& [s, c] : x) {
        terms.push_back({{"monomial", index_list(s)}, {"coefficient", c.to_string()}});
    }
    return {{"text", format_nf(x, a)}, {"terms", terms}};
}

} // namespace

Arrangement arrangement_from_json(const json& j) {
    if (!j.is_object()) throw Error("arrangement document must be a JSON object");
    if (j.contains("arrangement")) return arrangement_from_json(j.at("arrangement"));
    for (const char* key : {"field", "dim", "hyperplanes"})
        if (!j.contains(key)) throw Error(std::string("arrangement document lacks \"") + key + "\"");
    if (!j.at("field").is_string()) throw Error("\"field\" must be a string");
    Field f = Field::parse(j.at("field").get<std::string>());
    if (!j.at("dim").is_number_integer() || j.at("dim").get<long>() < 0)
        throw Error("\"dim\" must be a non-negative integer");
    std::size_t dim = j.at("dim").get<std::size_t>();
    const json& hs = j.at("hyperplanes");
    if (!hs.is_array()) throw Error("\"hyperplanes\" must be an array");
    std::vector<Row> rows;
    for (std::size_t r = 0; r < hs.size(); ++r) {
        const json& h = hs[r];
        if (!h.is_array() || h.size() != dim + 1)
            throw Error("hyperplane " + std::to_string(r + 1) + " must list " + std::to_string(dim + 1) +
                        " coefficients");
        Row row;
        for (std::size_t c = 0; c < h.size(); ++c) row.push_back(entry(f, h[c], r, c));
        rows.push_back(std::move(row));
    }
    return Arrangement::from_rows(f, dim, rows);
}

Arrangement load_arrangement(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw Error(path + ": " + e.what());
    }
    return arrangement_from_json(j);
}

json arrangement_to_json(const Arrangement& a) {
    json hs = json::array();
    for (const auto& h : a.hyperplanes()) {
        json row = json::array();
        for (const auto& c : h.coeffs()) row.push_back(c.to_string());
        hs.push_back(row);
    }
    return {{"field", a.field().to_string()}, {"dim", a.dim()}, {"hyperplanes", hs}};
}

void save_arrangement(const Arrangement& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << arrangement_to_json(a).dump(2) << "\n";
}

json export_json(const Arrangement& a) {
    json out;
    out["arrangement"] = arrangement_to_json(a);

    std::vector<IndexSet> b = basis(a);
    json basis_json = json::array();
    for (const auto& s : b) basis_json.push_back({{"monomial", index_list(s)}, {"word", format_basis_word(s, a)}});
    out["basis"] = basis_json;
    out["ranks"] = rank(a);

    json circuits = json::array();
    for (const auto& c : a.circuits()) {
        json lambda = json::array();
        for (const auto& l : c.lambda) lambda.push_back(l.to_string());
        circuits.push_back({{"members", index_list(c.members)},
                            {"lambda", lambda},
                            {"lambda0", c.lambda0.to_string()},
                            {"central", c.central()},
                            {"rpoly", format_element(circuit_r_polynomial(a, c), a)}});
    }
    out["circuits"] = circuits;

    Presentation p(a);
    json products = json::array();
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            auto x = PresElement::generator(Unit::hyperplane(a.field(), static_cast<int>(i)));
            auto y = PresElement::generator(Unit::hyperplane(a.field(), static_cast<int>(j)));
            products.push_back({{"left", i + 1}, {"right", j + 1}, {"product", nf_json(p.multiply(x, y), a)}});
        }
    out["products"] = products;
    return out;
}

} // namespace hypermw
