//
// wstar : finite W*-algebra commutator toolkit
// module: io -- JSON schemas for elements, central elements, and reports
//
// Element files: {"shape": [n1, n2, ...],
//                 "blocks": [ [[entry, ...], ...], ... ]}
// where entry is [re, im] (a bare number is accepted as a real entry).
// Central elements: {"scalars": [[re, im], ...]}. Lambda lists are flat
// arrays of positive reals.
//

#pragma once

#include <string>

#include <json.hpp>

#include "wstar/algebra.hpp"
#include "wstar/commutator.hpp"

namespace wstar {

using Json = nlohmann::json;

namespace detail {

inline Complex parse_entry(const Json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    throw ParseError("matrix entry must be a number or an [re, im] pair");
}

} // namespace detail

inline AlgebraShape parse_shape(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("\"shape\" must be a nonempty array");
    std::vector<int> dims;
    for (const Json& v : j) {
        if (!v.is_number_integer() || v.get<int>() < 1)
            throw ParseError("block dimensions must be positive integers");
        dims.push_back(v.get<int>());
    }
    return make_shape(std::move(dims));
}

inline BlockElement parse_element(const Json& j, double tol = default_tol) {
    if (!j.is_object() || !j.contains("shape") || !j.contains("blocks"))
        throw ParseError("element file needs \"shape\" and \"blocks\"");
    AlgebraShape shape = parse_shape(j["shape"]);
    const Json& jb = j["blocks"];
    if (!jb.is_array() || static_cast<int>(jb.size()) != shape.num_blocks())
        throw ParseError("\"blocks\" must list one matrix per block");
    std::vector<Matrix> blocks;
    for (int k = 0; k < shape.num_blocks(); ++k) {
        const Json& jm = jb[static_cast<std::size_t>(k)];
        int n = shape.dim(k);
        if (!jm.is_array() || static_cast<int>(jm.size()) != n)
            throw ParseError("block " + std::to_string(k) + " must have " + std::to_string(n) + " rows");
        Matrix m(n, n);
        for (int r = 0; r < n; ++r) {
            const Json& row = jm[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<int>(row.size()) != n)
                throw ParseError("block " + std::to_string(k) + " row " + std::to_string(r) +
                                 " must have " + std::to_string(n) + " entries");
            for (int c = 0; c < n; ++c) m(r, c) = detail::parse_entry(row[static_cast<std::size_t>(c)]);
        }
        blocks.push_back(std::move(m));
    }
    return make_element(shape, std::move(blocks), tol);
}

inline CentralElement parse_central(const Json& j, const AlgebraShape& shape) {
    const Json* js = nullptr;
    if (j.is_object() && j.contains("scalars"))
        js = &j["scalars"];
    else if (j.is_array())
        js = &j;
    else
        throw ParseError("central element needs a \"scalars\" array");
    std::vector<Complex> scalars;
    for (const Json& v : *js) scalars.push_back(detail::parse_entry(v));
    return make_central(shape, std::move(scalars));
}

inline std::vector<double> parse_lambdas(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("lambdas must be a nonempty array");
    std::vector<double> out;
    for (const Json& v : j) {
        if (!v.is_number()) throw ParseError("lambdas must be numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

inline Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const AlgebraShape& s) { return Json(s.block_dims); }

inline Json to_json(const BlockElement& x) {
    Json blocks = Json::array();
    for (const Matrix& b : x.blocks) blocks.push_back(to_json(b));
    return Json{{"shape", to_json(x.shape)}, {"blocks", std::move(blocks)}};
}

inline Json to_json(const CentralElement& c) {
    Json scalars = Json::array();
    for (const Complex& s : c.scalars) scalars.push_back(Json::array({s.real(), s.imag()}));
    return Json{{"scalars", std::move(scalars)}};
}

} // namespace wstar
