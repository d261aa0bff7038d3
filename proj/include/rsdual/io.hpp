#pragma once

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rsdual/double.hpp"
#include "rsdual/projective.hpp"

namespace rsdual {

using json = nlohmann::json;

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw DomainViolation("complex number must be a [re, im] pair");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

inline json vector_to_json(const CVector& v) {
    json a = json::array();
    for (int k = 0; k < v.size(); ++k) a.push_back(complex_to_json(v(k)));
    return a;
}

inline json real_vector_to_json(const RVector& v) {
    json a = json::array();
    for (int k = 0; k < v.size(); ++k) a.push_back(v(k));
    return a;
}

inline json matrix_to_json(const CMatrix& M) {
    json rows = json::array();
    for (int r = 0; r < M.rows(); ++r) rows.push_back(vector_to_json(M.row(r).transpose()));
    return rows;
}

inline json point_to_json(const ProjectivePoint& u) { return vector_to_json(u.u()); }

// Accepts a bare [[re, im], ...] array or an object carrying it under "point".
inline CVector point_vector_from_json(const json& j) {
    const json& arr = j.is_object() ? j.at("point") : j;
    if (!arr.is_array()) throw DomainViolation("point must be an array of [re, im] pairs");
    CVector v(static_cast<Eigen::Index>(arr.size()));
    for (std::size_t k = 0; k < arr.size(); ++k) v(Eigen::Index(k)) = complex_from_json(arr[k]);
    return v;
}

inline ProjectivePoint point_from_json(const json& j, const Coupling& c, bool* was_canonical = nullptr) {
    const CVector v = point_vector_from_json(j);
    ProjectivePoint p = ProjectivePoint::canonical(v, c);
    if (was_canonical) *was_canonical = (p.u() - v).norm() <= 1e-9 * std::max(1.0, v.norm());
    return p;
}

inline std::string format_double(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

}  // namespace rsdual
