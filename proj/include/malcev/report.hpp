#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "malcev/algebra.hpp"
#include "malcev/derivations.hpp"
#include "malcev/lie.hpp"

namespace malcev {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

inline Json vec_json(const Vec& v) {
    Json out = Json::array();
    for (const Rational& r : v) out.push_back(r.str());
    return out;
}

inline Json matrix_json(const Matrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        out.push_back(row);
    }
    return out;
}

inline Json map_tuple_json(const MapTuple& t) {
    Json out = Json::array();
    for (const LinearMap& m : t.maps) out.push_back(matrix_json(m.mat));
    return out;
}

inline Json witness_json(const IdentityWitness& w) {
    Json out;
    out["description"] = w.description;
    Json args = Json::array();
    for (const Vec& a : w.args) args.push_back(vec_json(a));
    out["args"] = args;
    out["residual"] = vec_json(w.residual);
    return out;
}

inline Json identity_report_json(const IdentityReport& rep) {
    Json out;
    out["identity"] = rep.identity;
    out["holds"] = rep.holds;
    out["checked_count"] = rep.checked_count;
    if (rep.witness) out["witness"] = witness_json(*rep.witness);
    return out;
}

inline Json tuple_space_json(const TupleSpace& ts, bool emit_basis) {
    Json out;
    out["algebra"] = ts.algebra_name;
    out["profile"] = ts.profile.tag;
    out["dim"] = ts.dim();
    if (emit_basis) {
        Json basis = Json::array();
        for (std::size_t k = 0; k < ts.dim(); ++k)
            basis.push_back(map_tuple_json(ts.tuple_at(k)));
        out["basis"] = basis;
    }
    return out;
}

inline Json map_space_json(const MapSpace& ms, bool emit_basis) {
    Json out;
    out["algebra"] = ms.algebra_name;
    out["profile"] = ms.tag;
    out["dim"] = ms.dim();
    if (emit_basis) {
        Json basis = Json::array();
        for (std::size_t k = 0; k < ms.dim(); ++k)
            basis.push_back(matrix_json(ms.map_at(k).mat));
        out["basis"] = basis;
    }
    return out;
}

inline Json triviality_json(const TrivialityReport& rep) {
    Json out;
    out["algebra"] = rep.algebra;
    out["trivial"] = rep.trivial;
    out["nary_dim"] = rep.nary_dim;
    out["trivial_dim"] = rep.trivial_dim;
    out["sum_dim"] = rep.sum_dim;
    if (rep.witness) out["witness"] = map_tuple_json(*rep.witness);
    return out;
}

inline Json delta_report_json(const DeltaQuotientReport& rep) {
    Json out;
    out["algebra"] = rep.algebra;
    out["gder_dim"] = rep.gder_dim;
    out["ann_dim"] = rep.ann_dim;
    out["delta_dim"] = rep.delta_dim;
    out["killing_rank"] = rep.killing_rank;
    out["rank_estimate"] = rep.rank_est;
    out["semisimple"] = rep.semisimple;
    out["ann_contains_identity"] = rep.ann_contains_identity;
    return out;
}

/// Flat "key.path = value" rendering that mirrors the JSON field-for-field.
inline void render_text(const Json& j, std::ostream& os, const std::string& prefix = "") {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            render_text(value, os, prefix.empty() ? key : prefix + "." + key);
    } else if (j.is_array()) {
        std::size_t i = 0;
        for (const auto& value : j) {
            render_text(value, os, prefix + "[" + std::to_string(i) + "]");
            ++i;
        }
        if (j.empty()) os << prefix << " = []\n";
    } else {
        os << prefix << " = " << j.dump() << "\n";
    }
}

}  // namespace malcev
